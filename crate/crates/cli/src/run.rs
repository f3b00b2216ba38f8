//! Subcommand bodies.

use std::fmt;

use anyhow::Result;
use serde_json::{json, Value};
use sigrefine::enumerate::pure_nash_equilibria;
use sigrefine::format::SCHEMA_VERSION;
use sigrefine::learning::{LearningModel, MixedProfile, SimParams, StartKind, SteadyStateResult};
use sigrefine::refine::RefinementReport;
use sigrefine::{compatibility_order, suite, Analysis, Error, SignalingGame, StrategyProfile};

use crate::inputs::{self, LoadedScenario};
use crate::render::{fmt_row, table, Report};
use crate::{Output, SimArgs};

/// Raised after the report is written when some bundled check fails.
#[derive(Debug)]
pub struct VerifyFailed(pub usize);

impl fmt::Display for VerifyFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bundled check(s) failed", self.0)
    }
}

impl std::error::Error for VerifyFailed {}

/// 1 for I/O, 2 for malformed input, 3 for contract violations, 4 for a failed `verify`.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<VerifyFailed>().is_some() {
        return 4;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::Scenario(_) | Error::InvalidGame(_) | Error::InvalidStrategy(_) | Error::Dimension { .. }) => 2,
        Some(_) => 3,
        None => 1,
    }
}

fn names(list: &[String], idx: impl IntoIterator<Item = usize>) -> Vec<String> {
    idx.into_iter().map(|i| list[i].clone()).collect()
}

fn braces(v: &[String]) -> String {
    format!("{{{}}}", v.join(", "))
}

fn pure_labels(g: &SignalingGame, p: &StrategyProfile) -> (String, String) {
    let sender: Vec<String> = (0..g.n_types())
        .map(|t| format!("{}:{}", g.types()[t], p.sender.pure_signal(t).map_or("mixed", |s| g.signals()[s].as_str())))
        .collect();
    let receiver: Vec<String> = (0..g.n_signals())
        .map(|s| match p.receiver.support(s).as_slice() {
            [a] => format!("{}:{}", g.signals()[s], g.actions()[*a]),
            _ => format!("{}:mixed", g.signals()[s]),
        })
        .collect();
    (sender.join(" "), receiver.join(" "))
}

fn verdict_table(rep: &RefinementReport, report: &mut Report) {
    let rows: Vec<Vec<String>> = rep.verdicts().iter().map(|(n, v)| vec![n.to_string(), v.to_string()]).collect();
    report.table.push_str(&table(&rows));
}

pub fn analyze(game_spec: &str, profile_spec: Option<&str>, enumerate: bool, out: &Output) -> Result<()> {
    let g = inputs::game(game_spec, None)?;
    let analysis = Analysis::new(&g)?;
    let verdict_names: Vec<&str> = RefinementReport::verdict_names().to_vec();
    let mut cols = vec!["sender", "receiver"];
    cols.extend(&verdict_names);

    if enumerate {
        let mut items = Vec::new();
        let mut report = Report::new(Value::Null);
        report.header(&cols);
        let mut rows = vec![cols.iter().map(|c| c.to_string()).collect::<Vec<_>>()];
        for p in pure_nash_equilibria(&g) {
            let rep = analysis.report(&p)?;
            let (sender, receiver) = pure_labels(&g, &p);
            let mut cells = vec![sender.clone(), receiver.clone()];
            cells.extend(rep.verdicts().iter().map(|(_, v)| v.to_string()));
            rows.push(cells.clone());
            report.row(cells);
            items.push(json!({ "sender": sender, "receiver": receiver, "report": rep }));
        }
        report.line(format!("{} pure Nash equilibria", items.len()));
        report.table.push_str(&table(&rows));
        report.json = json!({ "schema_version": SCHEMA_VERSION, "command": "analyze", "game": game_spec, "equilibria": items });
        return report.emit(out);
    }

    let spec = profile_spec.expect("clap requires --profile without --enumerate");
    let p = inputs::profile(spec, &g, None)?;
    let rep = analysis.report(&p)?;
    let mut report = Report::new(json!({ "schema_version": SCHEMA_VERSION, "command": "analyze", "game": game_spec, "profile": spec, "report": rep }));
    let (sender, receiver) = pure_labels(&g, &p);
    report.header(&cols);
    let mut cells = vec![sender, receiver];
    cells.extend(rep.verdicts().iter().map(|(_, v)| v.to_string()));
    report.row(cells);

    verdict_table(&rep, &mut report);
    report.line("");
    let mut rows = vec![["signal", "on path", "posterior", "J~", "P~", "BR(P~)", "P^", "BR(P^)"].map(String::from).to_vec()];
    for s in &rep.signals {
        rows.push(vec![
            s.signal.clone(),
            s.on_path.to_string(),
            s.posterior.as_ref().map_or("-".into(), |p| format!("({})", p.join(", "))),
            braces(&s.equilibrium_undominated_types),
            s.rationality_compatible_beliefs.clone(),
            braces(&s.rationality_compatible_best_responses),
            s.uniform_beliefs.clone(),
            braces(&s.uniform_best_responses),
        ]);
    }
    report.table.push_str(&table(&rows));
    if !rep.failures.is_empty() {
        report.line("");
        report.line("failures:");
        for f in &rep.failures {
            let at: Vec<String> = [("signal", &f.signal), ("type", &f.type_), ("action", &f.action)]
                .iter()
                .filter_map(|(k, v)| v.as_ref().map(|v| format!("{k} {v}")))
                .collect();
            report.line(format!("  {} [{}] {}", f.check, at.join(", "), f.detail));
        }
    }
    for t in &rep.divine_trace {
        for r in &t.rounds {
            if !r.deleted_actions.is_empty() {
                report.line(format!("divine {} round {}: deletes {}", t.signal, r.round, braces(&r.deleted_actions)));
            }
        }
    }
    report.emit(out)
}

pub fn compat(game_spec: &str, restricted: bool, out: &Output) -> Result<()> {
    let g = inputs::game(game_spec, None)?;
    let order = compatibility_order(&g, restricted)?;
    let edges = order.edges(&g);
    let mut report = Report::new(json!({
        "schema_version": SCHEMA_VERSION,
        "command": "compat",
        "game": game_spec,
        "restricted": restricted,
        "edges": edges,
    }));
    report.header(&["signal", "more", "less"]);
    for e in &edges {
        report.row(vec![e.signal.clone(), e.more.clone(), e.less.clone()]);
    }
    for s in 0..g.n_signals() {
        let pairs: Vec<String> = order.pairs_at(s).into_iter().map(|(m, l)| format!("{} > {}", g.types()[m], g.types()[l])).collect();
        let shown = if pairs.is_empty() { "(none)".to_string() } else { pairs.join(", ") };
        report.line(format!("{}: {shown}", g.signals()[s]));
    }
    report.emit(out)
}

pub fn verify(out: &Output) -> Result<()> {
    let checks = suite::verify_all()?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    let mut report = Report::new(json!({
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "passed": checks.len() - failed,
        "failed": failed,
        "checks": checks,
    }));
    report.header(&["example", "check", "expected", "actual", "pass"]);
    let mut rows = vec![["", "example", "check", "expected", "actual"].map(String::from).to_vec()];
    for c in &checks {
        report.row(vec![c.example.clone(), c.check.clone(), c.expected.clone(), c.actual.clone(), c.pass.to_string()]);
        rows.push(vec![if c.pass { "ok" } else { "FAIL" }.into(), c.example.clone(), c.check.clone(), c.expected.clone(), c.actual.clone()]);
    }
    report.table.push_str(&table(&rows));
    report.line(format!("{} of {} checks passed", checks.len() - failed, checks.len()));
    report.emit(out)?;
    if failed > 0 {
        return Err(VerifyFailed(failed).into());
    }
    Ok(())
}

/// Scenario with command-line overrides applied.
fn load(args: &SimArgs) -> Result<LoadedScenario> {
    let mut l = inputs::scenario(&args.scenario)?;
    let sc = &mut l.scenario;
    if let Some(seed) = args.seed {
        sc.seed = seed;
    }
    if let Some(agents) = args.agents {
        sc.agents = agents;
    }
    if let Some(d) = &args.grid_delta {
        sc.deltas = d.clone();
    }
    if let Some(g) = &args.grid_gamma {
        sc.gammas = g.clone();
    }
    for &d in &sc.deltas {
        for &g in &sc.gammas {
            sc.params(d, g).validate()?;
        }
    }
    Ok(l)
}

fn labelled(rows: &[Vec<f64>], row_names: &[String], col_names: &[String]) -> Value {
    let mut m = serde_json::Map::new();
    for (r, name) in rows.iter().zip(row_names) {
        let inner: serde_json::Map<String, Value> = r.iter().zip(col_names).map(|(x, c)| (c.clone(), json!(x))).collect();
        m.insert(name.clone(), Value::Object(inner));
    }
    Value::Object(m)
}

fn push_rows(report: &mut Report, lead: &[String], role: &str, rows: &[Vec<f64>], se: &[Vec<f64>], rn: &[String], cn: &[String]) {
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            let mut cells = lead.to_vec();
            cells.extend([role.to_string(), rn[i].clone(), cn[j].clone(), x.to_string(), se[i][j].to_string()]);
            report.row(cells);
        }
    }
}

fn steady_json(g: &SignalingGame, r: &SteadyStateResult) -> Value {
    json!({
        "delta": r.delta,
        "gamma": r.gamma,
        "start": r.start.name(),
        "sender": labelled(&r.profile.sender, g.types(), g.signals()),
        "receiver": labelled(&r.profile.receiver, g.signals(), g.actions()),
        "sender_se": r.sender_se,
        "receiver_se": r.receiver_se,
        "residual": r.residual,
        "converged": r.converged,
        "iterations": r.iterations,
        "trajectory": r.trajectory,
    })
}

fn steady_lines(g: &SignalingGame, r: &SteadyStateResult, report: &mut Report) {
    report.line(format!(
        "delta {} gamma {} start {}: residual {:.2e}, {} after {} iterations",
        r.delta,
        r.gamma,
        r.start.name(),
        r.residual,
        if r.converged { "converged" } else { "not converged" },
        r.iterations
    ));
    for (t, row) in r.profile.sender.iter().enumerate() {
        report.line(format!("  sender   {:<10} {}  over {}", g.types()[t], fmt_row(row), braces(g.signals())));
    }
    for (s, row) in r.profile.receiver.iter().enumerate() {
        report.line(format!("  receiver {:<10} {}  over {}", g.signals()[s], fmt_row(row), braces(g.actions())));
    }
}

fn params_json(sc: &sigrefine::format::scenario::Scenario) -> Value {
    let p: SimParams = sc.params(0.0, 0.0);
    json!({
        "mode": sc.mode,
        "agents": p.agents,
        "seed": p.seed,
        "t_max": p.t_max,
        "mass_tolerance": p.mass_tol,
        "gittins_tolerance": p.gittins_tol,
        "damping": p.damping,
        "tolerance": p.tolerance,
        "max_iter": p.max_iter,
        "off_path_threshold": p.off_path_threshold,
    })
}

pub fn simulate(args: &SimArgs, out: &Output) -> Result<()> {
    let LoadedScenario { scenario: sc, game: g, init } = load(args)?;
    let model = LearningModel::new(&g, sc.prior(&g)?)?;
    let probe = sc.probe(&g)?;
    let custom = init.as_ref().map(MixedProfile::from_exact);
    let mut points = Vec::new();
    let mut report = Report::new(Value::Null);
    report.header(&["delta", "gamma", "start", "role", "row", "column", "frequency", "se"]);
    for &delta in &sc.deltas {
        for &gamma in &sc.gammas {
            let params = sc.params(delta, gamma);
            if out.verbose {
                eprintln!("delta {delta} gamma {gamma}");
            }
            if let Some(probe) = &probe {
                let est = model.aggregate_sender_response(&params, probe)?;
                report.line(format!("delta {delta} gamma {gamma}: sender response to the probe (horizon {})", est.horizon));
                for (t, row) in est.rows.iter().enumerate() {
                    report.line(format!("  {:<10} {}  over {}", g.types()[t], fmt_row(row), braces(g.signals())));
                }
                let lead = [delta.to_string(), gamma.to_string(), "probe".into()];
                push_rows(&mut report, &lead, "sender", &est.rows, &est.se, g.types(), g.signals());
                points.push(json!({
                    "delta": delta,
                    "gamma": gamma,
                    "start": "probe",
                    "sender": labelled(&est.rows, g.types(), g.signals()),
                    "sender_se": est.se,
                    "horizon": est.horizon,
                    "truncated_mass": est.truncated_mass,
                }));
                continue;
            }
            let starts = if custom.is_some() { vec![StartKind::Custom] } else { LearningModel::starts(None) };
            for kind in starts {
                let res = model.steady_state(&params, &model.start_profile(kind, custom.as_ref())?, kind)?;
                steady_lines(&g, &res, &mut report);
                let lead = [delta.to_string(), gamma.to_string(), kind.name().to_string()];
                push_rows(&mut report, &lead, "sender", &res.profile.sender, &res.sender_se, g.types(), g.signals());
                push_rows(&mut report, &lead, "receiver", &res.profile.receiver, &res.receiver_se, g.signals(), g.actions());
                points.push(steady_json(&g, &res));
            }
        }
    }
    report.json = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "simulate",
        "scenario": args.scenario,
        "description": sc.description,
        "params": params_json(&sc),
        "points": points,
    });
    report.emit(out)
}

pub fn sweep(args: &SimArgs, out: &Output) -> Result<()> {
    let LoadedScenario { scenario: sc, game: g, init } = load(args)?;
    let model = LearningModel::new(&g, sc.prior(&g)?)?;
    let custom = init.as_ref().map(MixedProfile::from_exact);
    let params = sc.params(sc.deltas[0], sc.gammas[0]);
    let rep = model.patient_stability_sweep(&sc.deltas, &sc.gammas, &params, custom.as_ref(), &LearningModel::starts(custom.as_ref()))?;

    let mut report = Report::new(Value::Null);
    report.header(&["delta", "start", "gamma", "iteration", "change"]);
    for c in &rep.chains {
        for p in &c.points {
            for (i, x) in p.trajectory.iter().enumerate() {
                report.row(vec![c.delta.to_string(), c.start.name().into(), p.gamma.to_string(), (i + 1).to_string(), x.to_string()]);
            }
        }
    }
    let mut rows = vec![["delta", "start", "stable", "last change", "on-path signals", "sender", "receiver"].map(String::from).to_vec()];
    for c in &rep.chains {
        rows.push(vec![
            c.delta.to_string(),
            c.start.name().into(),
            c.stable.to_string(),
            format!("{:.4}", c.last_change),
            braces(&names(g.signals(), c.on_path_signals.iter().copied())),
            c.candidate.sender.iter().map(|r| fmt_row(r)).collect::<Vec<_>>().join(" "),
            c.candidate.receiver.iter().map(|r| fmt_row(r)).collect::<Vec<_>>().join(" "),
        ]);
    }
    report.table.push_str(&table(&rows));
    report.line(format!("{} of {} chains stable at gamma {}", rep.candidates().count(), rep.chains.len(), rep.gammas.last().unwrap()));
    for t in &rep.trend {
        report.line(format!("trend {}: {}", t.start.name(), fmt_row(&t.distances)));
    }
    let mut json = serde_json::to_value(&rep)?;
    json["command"] = json!("sweep");
    json["scenario"] = json!(args.scenario);
    json["types"] = json!(g.types());
    json["signals"] = json!(g.signals());
    json["actions"] = json!(g.actions());
    report.json = json;
    report.emit(out)
}
