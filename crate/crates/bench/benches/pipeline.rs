use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use nilgraph::gassmann::{intertwiner_basis, orthogonal_intertwiner};
use nilgraph::isometry::{fingerprint, search_isometry, SearchConfig};
use nilgraph::lie::{central_series, three_step, two_step, verify_jacobi};
use nilgraph::schreier::{build_schreier, digraph_isomorphic, IsoMode};
use nilgraph::spec::fixtures;

fn construction(c: &mut Criterion) {
    let s = fixtures::sl32();
    let h1 = &s.subgroups[0];
    let t = s.t_assignment.clone().unwrap();
    c.bench_function("schreier_sl32", |b| {
        b.iter(|| {
            build_schreier(
                &s.group,
                black_box(&h1.generators),
                &s.labels,
                h1.layout.as_ref(),
            )
            .unwrap()
        })
    });
    c.bench_function("three_step_sl32", |b| {
        b.iter(|| three_step(black_box(&h1.graph), &t).unwrap())
    });
    let a = three_step(&h1.graph, &t).unwrap();
    c.bench_function("jacobi_sl32", |b| b.iter(|| verify_jacobi(black_box(&a))));
    c.bench_function("central_series_sl32", |b| {
        b.iter(|| central_series(black_box(&a)))
    });
    c.bench_function("fingerprint_sl32", |b| {
        b.iter(|| fingerprint(black_box(&a)))
    });
}

fn gassmann(c: &mut Criterion) {
    let s = fixtures::sl32();
    let (g1, g2) = (&s.subgroups[0].graph, &s.subgroups[1].graph);
    c.bench_function("almost_conjugate_sl32", |b| {
        b.iter(|| {
            s.group
                .almost_conjugate(&s.subgroups[0].generators, &s.subgroups[1].generators)
        })
    });
    c.bench_function("digraph_isomorphic_sl32", |b| {
        b.iter(|| digraph_isomorphic(black_box(g1), g2, IsoMode::AllowLabelPermutation))
    });
    c.bench_function("orthogonal_intertwiner_sl32", |b| {
        b.iter(|| orthogonal_intertwiner(&intertwiner_basis(black_box(g1), g2).unwrap()).unwrap())
    });
}

fn search(c: &mut Criterion) {
    let s = fixtures::sl32();
    let (g1, g2) = (&s.subgroups[0].graph, &s.subgroups[1].graph);
    let t = s.t_assignment.clone().unwrap();
    let (a1, a2) = (three_step(g1, &t).unwrap(), three_step(g2, &t).unwrap());
    let (b1, b2) = (two_step(g1), two_step(g2));
    let cfg = SearchConfig {
        restarts: 4,
        seed: 1,
        ..SearchConfig::default()
    };
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("three_step_4_restarts", |b| {
        b.iter(|| search_isometry(&a1, &a2, &cfg))
    });
    group.bench_function("two_step_4_restarts", |b| {
        b.iter(|| search_isometry(&b1, &b2, &cfg))
    });
    group.finish();
}

criterion_group!(benches, construction, gassmann, search);
criterion_main!(benches);
