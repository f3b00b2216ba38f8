use criterion::{criterion_group, criterion_main, Criterion};
use sigrefine::learning::{gittins_index, DirichletBelief, GittinsCache, GittinsConfig, LearningModel, PriorMode, RegularPriorSpec, SimParams};
use sigrefine::suite;
use std::hint::black_box;

fn gittins(c: &mut Criterion) {
    let belief = DirichletBelief::new(vec![0, 1, 2], vec![1.0, 4.0, 1.0]).unwrap();
    let pay = [1.0, -1.0, 3.0];
    for beta in [0.6, 0.9] {
        c.bench_function(&format!("gittins three outcomes beta {beta}"), |b| b.iter(|| gittins_index(black_box(&pay), &belief, beta, 1e-6).unwrap()));
    }
    let cache = GittinsCache::new();
    let cfg = GittinsConfig::default();
    cache.get(&pay, &belief, 0.9, &cfg).unwrap();
    c.bench_function("gittins cache hit", |b| b.iter(|| cache.get(black_box(&pay), &belief, 0.9, &cfg).unwrap()));
}

fn aggregates(c: &mut Criterion) {
    let g = suite::entry_game();
    let model = LearningModel::new(&g, RegularPriorSpec::uniform(&g, PriorMode::PayoffKnowledge)).unwrap();
    let params = SimParams::with(0.9, 0.9, 2000, 1);
    let receiver = vec![vec![0.5, 0.5, 0.0], vec![0.0, 0.0, 1.0]];
    let sender = vec![vec![0.8, 0.2], vec![0.4, 0.6]];
    model.aggregate_sender_response(&params, &receiver).unwrap();
    let mut group = c.benchmark_group("entry aggregates");
    group.sample_size(10);
    group.bench_function("sender response", |b| b.iter(|| model.aggregate_sender_response(&params, black_box(&receiver)).unwrap()));
    group.bench_function("receiver response", |b| b.iter(|| model.aggregate_receiver_response(&params, black_box(&sender)).unwrap()));
    group.finish();
}

criterion_group!(benches, gittins, aggregates);
criterion_main!(benches);
