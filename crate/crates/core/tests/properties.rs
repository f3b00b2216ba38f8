//! Property tests against brute-force oracles and round trips.

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sigrefine::corpus::{random_game, CorpusShape};
use sigrefine::feasibility::grid_search;
use sigrefine::format::scenario::Scenario;
use sigrefine::format::{parse_game, parse_profile, write_game, write_profile};
use sigrefine::learning::{gittins_index, DirichletBelief, LearningModel, PriorMode, RegularPriorSpec, SimParams};
use sigrefine::rational::{q, qf, to_f64};
use sigrefine::{is_feasible, more_compatible, BeliefPolytope, LinearSystem, SenderStrategy, SignalingGame, SimplexBlock, StrategyProfile, Q};

fn game(seed: u64, shape: CorpusShape) -> SignalingGame {
    random_game(&mut ChaCha8Rng::seed_from_u64(seed), shape)
}

fn small() -> CorpusShape {
    CorpusShape { max_types: 3, max_signals: 2, max_actions: 3, payoff_bound: 5 }
}

/// Random distribution with denominators up to 12.
fn distribution(n: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(0i64..=4, n).prop_map(|w| {
        let tot: i64 = w.iter().sum();
        if tot == 0 {
            let mut v = vec![Q::zero(); w.len()];
            v[0] = Q::one();
            v
        } else {
            w.iter().map(|&x| qf(x, tot)).collect()
        }
    })
}

fn system() -> impl Strategy<Value = (LinearSystem, Vec<(Vec<i64>, i64)>)> {
    (1usize..=2, 2usize..=3).prop_flat_map(|(blocks, dim)| {
        let n = blocks * dim;
        prop::collection::vec((prop::collection::vec(-3i64..=3, n), -2i64..=2), 1..=3).prop_map(move |rows| {
            let mut sys = LinearSystem::new((0..blocks).map(|b| SimplexBlock::new(format!("b{b}"), dim)).collect());
            for (c, k) in &rows {
                sys.ge(c.iter().map(|&x| q(x)).collect(), qf(*k, 2));
            }
            (sys, rows)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn grid_points_certify_feasibility((sys, _) in system()) {
        let exact = is_feasible(&sys).unwrap();
        if let Some(w) = exact.witness() {
            prop_assert!(sys.satisfied_by(w));
        }
        let coarse = grid_search(&sys, 16);
        let fine = grid_search(&sys, 32);
        if let Some(p) = &coarse {
            prop_assert!(sys.satisfied_by(p));
            prop_assert!(fine.is_some());
        }
        if fine.is_some() {
            prop_assert!(exact.is_feasible());
        }
    }

    #[test]
    fn extra_constraints_never_restore_feasibility((sys, rows) in system(), extra in prop::collection::vec(-3i64..=3, 6), k in -2i64..=2) {
        let before = is_feasible(&sys).unwrap().is_feasible();
        let mut more = sys.clone();
        let n = more.num_vars();
        more.ge(extra[..n].iter().map(|&x| q(x)).collect(), q(k));
        let after = is_feasible(&more).unwrap().is_feasible();
        prop_assert!(!after || before, "rows {:?}", rows);
    }

    #[test]
    fn posteriors_are_distributions(seed in any::<u64>(), rows in prop::collection::vec(distribution(3), 3)) {
        let g = game(seed, CorpusShape::default());
        let rows: Vec<Vec<Q>> = rows.into_iter().take(g.n_types()).map(|r| {
            let mut r: Vec<Q> = r.into_iter().take(g.n_signals()).collect();
            let tot: Q = r.iter().sum();
            if tot.is_zero() { r[0] = Q::one(); r } else { r.into_iter().map(|x| x / &tot).collect() }
        }).collect();
        let sender = SenderStrategy::new(&g, rows).unwrap();
        for s in 0..g.n_signals() {
            match g.bayes_posterior(&sender, s) {
                Ok(p) => prop_assert_eq!(p.probs().iter().sum::<Q>(), Q::one()),
                Err(_) => prop_assert!(!g.is_on_path(&sender, s)),
            }
        }
    }

    #[test]
    fn mbr_family_closed_under_subsets(seed in any::<u64>()) {
        let g = game(seed, CorpusShape::default());
        for s in 0..g.n_signals() {
            let fam = g.mbr_support_sets(s).unwrap();
            for set in &fam {
                for drop in 0..set.len() {
                    let sub: Vec<usize> = set.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, a)| *a).collect();
                    prop_assert!(sub.is_empty() || fam.contains(&sub), "{:?} in {:?}", sub, fam);
                }
            }
            let singles: Vec<usize> = fam.iter().filter(|f| f.len() == 1).map(|f| f[0]).collect();
            prop_assert_eq!(singles, g.conditionally_undominated_actions(s).to_vec());
        }
    }

    #[test]
    fn undominated_signals_match_pure_receiver_search(seed in any::<u64>()) {
        let g = game(seed, CorpusShape::default());
        let (ns, na) = (g.n_signals(), g.n_actions());
        for t in 0..g.n_types() {
            let mut brute = vec![false; ns];
            for code in 0..na.pow(ns as u32) {
                let acts: Vec<usize> = (0..ns).map(|s| code / na.pow(s as u32) % na).collect();
                let v: Vec<&Q> = (0..ns).map(|s| g.u1(t, s, acts[s])).collect();
                let best = v.iter().max().unwrap();
                for s in 0..ns {
                    brute[s] |= v[s] == *best;
                }
            }
            let closed: Vec<usize> = (0..ns).filter(|&s| brute[s]).collect();
            prop_assert_eq!(closed, g.undominated_signals(t).to_vec());
        }
    }

    #[test]
    fn conditionally_undominated_actions_match_grid(seed in any::<u64>()) {
        let g = game(seed, CorpusShape::default());
        let nt = g.n_types();
        let full = BeliefPolytope::simplex(nt);
        for s in 0..g.n_signals() {
            let abr = g.conditionally_undominated_actions(s);
            for &a in abr {
                let w = g.best_response_witness(&full, s, &[a]).unwrap().unwrap();
                prop_assert!(g.best_responses_to_belief(&w, s).contains(&a));
            }
            for i in 0..=32i64 {
                for j in 0..=(32 - i) {
                    if nt == 2 && j > 0 { break; }
                    let mut p = vec![qf(i, 32), qf(32 - i - j, 32)];
                    if nt == 3 { p.push(qf(j, 32)); }
                    let b = sigrefine::Belief::new(p).unwrap();
                    for a in g.best_responses_to_belief(&b, s) {
                        prop_assert!(abr.contains(&a));
                    }
                }
            }
        }
    }

    #[test]
    fn game_files_round_trip(seed in any::<u64>()) {
        let g = game(seed, CorpusShape::default());
        prop_assert_eq!(parse_game(&write_game(&g)).unwrap(), g);
    }

    #[test]
    fn profile_files_round_trip(seed in any::<u64>(), rows in prop::collection::vec(distribution(4), 6)) {
        let g = game(seed, CorpusShape::default());
        let fit = |r: &Vec<Q>, n: usize| -> Vec<Q> {
            let r: Vec<Q> = r.iter().take(n).cloned().collect();
            let tot: Q = r.iter().sum();
            if tot.is_zero() { let mut v = vec![Q::zero(); n]; v[n - 1] = Q::one(); v } else { r.into_iter().map(|x| x / &tot).collect() }
        };
        let sender = SenderStrategy::new(&g, (0..g.n_types()).map(|t| fit(&rows[t], g.n_signals())).collect()).unwrap();
        let receiver = sigrefine::ReceiverStrategy::new(&g, (0..g.n_signals()).map(|s| fit(&rows[3 + s], g.n_actions())).collect()).unwrap();
        let p = StrategyProfile::new(sender, receiver);
        prop_assert_eq!(parse_profile(&write_profile(&p, &g), &g).unwrap(), p);
    }

    #[test]
    fn scenario_files_round_trip(
        deltas in prop::collection::vec(0.0f64..0.99, 1..4),
        agents in 1usize..100_000,
        seed in any::<u64>(),
        weights in prop::collection::vec(0.1f64..20.0, 3),
        full in any::<bool>(),
        t_max in prop::option::of(2000usize..5000),
    ) {
        let mut deltas = deltas;
        deltas.sort_by(f64::total_cmp);
        deltas.dedup();
        let mut src = format!(
            "game = \"builtin:entry\"\nmode = \"{}\"\ndeltas = {:?}\ngammas = [0.9]\nagents = {agents}\nseed = {seed}\n",
            if full { "full-support" } else { "payoff-knowledge" }, deltas
        );
        if let Some(t) = t_max { src.push_str(&format!("t_max = {t}\n")); }
        src.push_str(&format!("[sender_prior.In]\nUp = {:?}\nDown = {:?}\nX = {:?}\n", weights[0], weights[1], weights[2]));
        let sc = Scenario::parse(&src).unwrap();
        prop_assert_eq!(Scenario::parse(&sc.to_toml()).unwrap(), sc.clone());
        prop_assert!(sc.prior(&sigrefine::suite::entry_game()).is_ok());
    }

    #[test]
    fn gittins_bounds_and_bad_news(
        payoffs in prop::collection::vec(-5i32..=5, 2..=3),
        weights in prop::collection::vec(0.5f64..4.0, 3),
        beta in 0.0f64..0.8,
    ) {
        let k = payoffs.len();
        let pay: Vec<f64> = payoffs.iter().map(|&x| x as f64).collect();
        let b = DirichletBelief::new((0..k).collect(), weights[..k].to_vec()).unwrap();
        let g = gittins_index(&pay, &b, beta, 1e-6).unwrap();
        let mean = b.expected(&pay);
        let max = pay.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(g >= mean - 1e-9 && g <= max + 1e-9);
        let worst = (0..k).min_by(|&i, &j| pay[i].total_cmp(&pay[j])).unwrap();
        let mut counts = vec![0u64; k];
        counts[worst] = 1;
        let after = gittins_index(&pay, &b.clone().with_counts(counts).unwrap(), beta, 1e-6).unwrap();
        prop_assert!(after <= g + 1e-5);
    }
}

/// A certified pair admits no counterexample receiver strategy on the grid of
/// step 1/32 over conditionally undominated responses. Returns pairs checked.
fn grid_check_compatibility(g: &SignalingGame) -> usize {
    let rows: Vec<Vec<Vec<Q>>> = (0..g.n_signals()).map(|s| {
        let sup = g.conditionally_undominated_actions(s);
        let mut out = Vec::new();
        let n = sup.len();
        for i in 0..=32i64 {
            for j in 0..=(32 - i) {
                if n < 3 && j > 0 { break; }
                if n == 1 && i < 32 { continue; }
                let mut row = vec![Q::zero(); g.n_actions()];
                row[sup[0]] = qf(i, 32);
                if n >= 2 { row[sup[1]] = qf(32 - i - j, 32); }
                if n == 3 { row[sup[2]] = qf(j, 32); }
                out.push(row);
            }
        }
        out
    }).collect();
    // Grid weights are dyadic and payoffs small integers, so f64 is exact here.
    let value = |t: usize, s: usize, row: &[Q]| -> f64 { (0..g.n_actions()).map(|a| to_f64(&(g.u1(t, s, a) * &row[a]))).sum() };
    let values: Vec<Vec<Vec<f64>>> = (0..g.n_types()).map(|t| (0..2).map(|s| rows[s].iter().map(|r| value(t, s, r)).collect()).collect()).collect();
    let mut checked = 0;
    for s in 0..2 {
        let o = 1 - s;
        for more in 0..g.n_types() {
            for less in 0..g.n_types() {
                if more == less || !more_compatible(g, s, more, less, true).unwrap() { continue; }
                checked += 1;
                for i in 0..rows[s].len() {
                    for j in 0..rows[o].len() {
                        let less_weak = values[less][s][i] >= values[less][o][j];
                        let more_strict = values[more][s][i] > values[more][o][j];
                        assert!(!less_weak || more_strict, "signal {s}: {more} > {less}");
                    }
                }
            }
        }
    }
checked
}

#[test]
fn compatibility_agrees_with_grid_on_small_games() {
    let checked: usize = (0..150).map(|seed| grid_check_compatibility(&game(seed, small()))).sum();
    assert!(checked > 0);
}

#[test]
fn aggregates_do_not_depend_on_thread_count() {
    let g = sigrefine::suite::entry_game();
    let model = LearningModel::new(&g, RegularPriorSpec::uniform(&g, PriorMode::PayoffKnowledge)).unwrap();
    let params = SimParams::with(0.8, 0.95, 300, 9);
    let pi2 = vec![vec![0.3, 0.7, 0.0], vec![0.0, 0.0, 1.0]];
    let pi1 = vec![vec![0.6, 0.4], vec![0.2, 0.8]];
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| (model.aggregate_sender_response(&params, &pi2).unwrap(), model.aggregate_receiver_response(&params, &pi1).unwrap()))
    };
    assert_eq!(run(1), run(4));
}
