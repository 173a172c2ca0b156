use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qgoa_bench::{qaoa_mvc, qgoa_portfolio};
use qgoa_core::problems::gen_portfolio;
use qgoa_core::{adjoint_gradient, brute_force, finite_diff_gradient, run_circuit, GateKind, StateVector};
use std::hint::black_box;

fn gates(c: &mut Criterion) {
    let mut group = c.benchmark_group("gate");
    for n in [8, 12, 16] {
        let state = StateVector::plus(n).unwrap();
        for (name, kind) in [("ry", GateKind::RY(n / 2)), ("rz", GateKind::RZ(n / 2)), ("xx", GateKind::XX(0, n - 1)), ("yy", GateKind::YY(1, n - 2))] {
            group.bench_with_input(BenchmarkId::new(name, n), &kind, |b, &kind| {
                let mut s = state.clone();
                b.iter(|| s.apply(kind, black_box(0.37)).unwrap());
            });
        }
    }
    group.finish();
}

fn circuits(c: &mut Criterion) {
    let mut group = c.benchmark_group("circuit");
    group.sample_size(20);
    for n in [6, 9, 12] {
        let w = qgoa_portfolio(n, 2);
        group.bench_function(BenchmarkId::new("qgoa_forward", n), |b| {
            b.iter(|| run_circuit(&w.circuit, black_box(&w.params)).unwrap())
        });
        group.bench_function(BenchmarkId::new("qgoa_adjoint", n), |b| {
            b.iter(|| adjoint_gradient(&w.circuit, &w.observable, black_box(&w.params)).unwrap())
        });
        let q = qaoa_mvc(n, 4);
        group.bench_function(BenchmarkId::new("qaoa_adjoint", n), |b| {
            b.iter(|| adjoint_gradient(&q.circuit, &q.observable, black_box(&q.params)).unwrap())
        });
    }
    let w = qgoa_portfolio(9, 2);
    group.bench_function("qgoa_finite_difference/9", |b| {
        b.iter(|| finite_diff_gradient(&w.circuit, &w.observable, black_box(&w.params), 1e-5).unwrap())
    });
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force");
    group.sample_size(10);
    for n in [12, 16, 20] {
        let inst = gen_portfolio(n, 2 * n, 0.5, 0).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| b.iter(|| brute_force(inst).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, gates, circuits, oracle);
criterion_main!(benches);
