use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use isingdrive::linalg::expm_unitary;
use isingdrive::{
    local_equivalence_fidelity, makhlin_invariants, propagate, rotary_echo, AnalyticGateKind, IntegratorConfig,
    LocalSearch, NamedGate, RunConfig, Unitary4,
};

fn bundled() -> RunConfig {
    RunConfig::from_json_str(include_str!("../../../configs/nichol2016.json")).unwrap()
}

fn linalg(c: &mut Criterion) {
    let m = bundled().model().unwrap();
    let h = m.hamiltonian_lab(1.3e-9);
    c.bench_function("expm_unitary_4x4", |b| b.iter(|| expm_unitary(black_box(&h), black_box(5e-12)).unwrap()));
}

fn invariants(c: &mut Criterion) {
    let m = bundled().model().unwrap();
    let u = rotary_echo(AnalyticGateKind::TwoRwaZz, &m, 615.7e-9).unwrap();
    c.bench_function("makhlin_invariants", |b| b.iter(|| makhlin_invariants(black_box(&u))));
    c.bench_function("rotary_echo_gate", |b| {
        b.iter(|| rotary_echo(AnalyticGateKind::TwoRwaZz, &m, black_box(615.7e-9)).unwrap())
    });
}

fn propagation(c: &mut Criterion) {
    let m = bundled().model().unwrap();
    let cfg = IntegratorConfig::default_for(&m);
    let mut g = c.benchmark_group("propagate");
    g.sample_size(20);
    g.bench_function("10ns_default_dt", |b| b.iter(|| propagate(&m, black_box(10e-9), &cfg).unwrap()));
    g.finish();
}

fn tomography(c: &mut Criterion) {
    let m = bundled().model().unwrap();
    let u = rotary_echo(AnalyticGateKind::TwoRwaZz, &m, 615.7e-9).unwrap();
    let cz = Unitary4::named(NamedGate::Cphase);
    let mut g = c.benchmark_group("local_equivalence");
    g.sample_size(10);
    g.bench_function("cphase_single_restart", |b| {
        let search = LocalSearch { restarts: 1, ..LocalSearch::default() };
        b.iter(|| local_equivalence_fidelity(black_box(&u), &cz, &search))
    });
    g.bench_function("cphase_default_search", |b| {
        b.iter(|| local_equivalence_fidelity(black_box(&u), &cz, &LocalSearch::default()))
    });
    g.finish();
}

criterion_group!(benches, linalg, invariants, propagation, tomography);
criterion_main!(benches);
