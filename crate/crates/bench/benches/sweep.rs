//! Benchmarks for the kernels that dominate a sweep: Hermitian
//! eigendecomposition, single-time analysis (theta sweep included), state
//! propagation, and the entropy path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spinsqueeze::{
    coherent_state, collective_operator, eig_hermitian, evolve, scenario_uniform,
    secular_hamiltonian, Axis, SqueezingAnalyzer, SweepGrid,
};

fn bench_eig(c: &mut Criterion) {
    let mut group = c.benchmark_group("eig_hermitian");
    group.sample_size(10);
    for n in [4usize, 6, 8] {
        let h = secular_hamiltonian(&scenario_uniform(n, 1.0).unwrap());
        group.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| {
            b.iter(|| eig_hermitian(h.matrix()).unwrap())
        });
    }
    group.finish();
}

fn bench_evolve(c: &mut Criterion) {
    let mut group = c.benchmark_group("evolve");
    group.sample_size(20);
    for n in [6usize, 8, 10] {
        let psi0 = coherent_state(n);
        let eig = secular_hamiltonian(&scenario_uniform(n, 1.0).unwrap()).eig();
        group.bench_with_input(BenchmarkId::from_parameter(n), &(psi0, eig), |b, (psi0, eig)| {
            b.iter(|| evolve(psi0, eig, 89.0).unwrap())
        });
    }
    group.finish();
}

fn bench_analyze_tau(c: &mut Criterion) {
    let mut group = c.benchmark_group("analyze_tau");
    group.sample_size(10);
    for n in [4usize, 6, 8] {
        let analyzer =
            SqueezingAnalyzer::new(scenario_uniform(n, 1.0).unwrap(), SweepGrid::default())
                .unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &analyzer, |b, analyzer| {
            b.iter(|| analyzer.analyze_tau(89.0).unwrap())
        });
    }
    group.finish();
}

fn bench_theta_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("theta_sweep");
    group.sample_size(10);
    for n in [6usize, 8, 10] {
        let analyzer =
            SqueezingAnalyzer::new(scenario_uniform(n, 1.0).unwrap(), SweepGrid::default())
                .unwrap();
        let psi = analyzer.state_at(89.0).unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(n),
            &(analyzer, psi),
            |b, (analyzer, psi)| b.iter(|| analyzer.theta_sweep(psi).unwrap()),
        );
    }
    group.finish();
}

fn bench_collective_operator(c: &mut Criterion) {
    c.bench_function("collective_jx_n8", |b| b.iter(|| collective_operator(8, Axis::X)));
}

criterion_group!(
    benches,
    bench_eig,
    bench_evolve,
    bench_analyze_tau,
    bench_theta_sweep,
    bench_collective_operator
);
criterion_main!(benches);
