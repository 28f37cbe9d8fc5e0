//! Benchmarks for the hot paths: exhaustive structure checks, brute-force
//! optimization, expectation evaluation, and equilibrium enumeration.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use eqbound_bench::{coverage_fixture, spectrum_fixture};
use eqbound_core::bounds::brute_force_opt;
use eqbound_core::curvature::total_curvature;
use eqbound_core::equilibria::{enumerate_equilibria, EquilibriumKind};
use eqbound_core::expectation::expected_social;
use eqbound_core::game::{MixedStrategy, StrategyProfile};
use eqbound_core::structure::{check_submodular, check_validity_private};
use eqbound_core::DEFAULT_TOL;

fn bench_structure(c: &mut Criterion) {
    let game = spectrum_fixture(3, 4, 3);
    c.bench_function("check_submodular/spectrum_n4_m3", |b| {
        b.iter(|| check_submodular(black_box(&game), DEFAULT_TOL).unwrap())
    });
    c.bench_function("check_validity_private/spectrum_n4_m3", |b| {
        b.iter(|| check_validity_private(black_box(&game), DEFAULT_TOL).unwrap())
    });
}

fn bench_optimum(c: &mut Criterion) {
    let game = spectrum_fixture(5, 5, 3);
    c.bench_function("brute_force_opt/spectrum_n5_m3", |b| {
        b.iter(|| brute_force_opt(black_box(&game)).unwrap())
    });
    let coverage = coverage_fixture(5, 4);
    let (omega, _) = brute_force_opt(&coverage).unwrap();
    c.bench_function("total_curvature/coverage_n4", |b| {
        b.iter(|| total_curvature(black_box(&coverage), &omega, DEFAULT_TOL).unwrap())
    });
}

fn bench_expectation(c: &mut Criterion) {
    let game = spectrum_fixture(7, 5, 3);
    let s = StrategyProfile::new(
        (0..5)
            .map(|u| {
                let n = game.space(u).len();
                MixedStrategy::new(u, vec![1.0 / n as f64; n]).unwrap()
            })
            .collect(),
    )
    .unwrap();
    c.bench_function("expected_social/uniform_mix_n5_m3", |b| {
        b.iter(|| expected_social(black_box(&game), black_box(&s)).unwrap())
    });
}

fn bench_equilibria(c: &mut Criterion) {
    let game = spectrum_fixture(9, 4, 3);
    c.bench_function("enumerate_equilibria/nash_n4_m3", |b| {
        b.iter(|| enumerate_equilibria(black_box(&game), EquilibriumKind::Nash, DEFAULT_TOL).unwrap())
    });
}

criterion_group!(
    benches,
    bench_structure,
    bench_optimum,
    bench_expectation,
    bench_equilibria
);
criterion_main!(benches);
