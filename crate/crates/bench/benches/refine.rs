use criterion::{criterion_group, criterion_main, Criterion};
use sigrefine::enumerate::strict_pure_nash_equilibria;
use sigrefine::{compatibility_order, suite, Analysis, BeliefPolytope};
use sigrefine_bench::bench_corpus;
use std::hint::black_box;

fn examples(c: &mut Criterion) {
    let g = suite::education_game();
    let pool = suite::profile("education", "pool_c");
    c.bench_function("education compatibility order", |b| b.iter(|| compatibility_order(black_box(&g), true).unwrap()));
    c.bench_function("education full report", |b| {
        b.iter(|| {
            let a = Analysis::new(&g).unwrap();
            a.report(black_box(&pool)).unwrap()
        })
    });
    c.bench_function("verify bundled examples", |b| b.iter(|| suite::verify_all().unwrap()));
}

fn corpus(c: &mut Criterion) {
    let games = bench_corpus(20);
    c.bench_function("corpus rce over strict equilibria", |b| {
        b.iter(|| {
            let mut n = 0;
            for g in &games {
                let a = Analysis::new(g).unwrap();
                for p in strict_pure_nash_equilibria(g) {
                    n += a.is_rce(&p).unwrap() as usize;
                }
            }
            n
        })
    });
    let g = suite::entry_game();
    let full = BeliefPolytope::simplex(2);
    c.bench_function("entry best-response witness", |b| b.iter(|| g.best_response_witness(black_box(&full), 0, &[0, 1]).unwrap()));
}

criterion_group!(benches, examples, corpus);
criterion_main!(benches);
