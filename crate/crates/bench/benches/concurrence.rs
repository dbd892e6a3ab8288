use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use dmxyz_bench::batch;
use dmxyz_core::linalg4::hermitian_eigensystem;
use dmxyz_core::{
    build_hamiltonian, concurrence_closed_form, concurrence_oracle_at, critical_temperature,
    figure_preset, sweep, DmAxis, ModelSpec,
};

fn closed_form_vs_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("concurrence");
    for axis in DmAxis::ALL {
        let points = batch(axis, 64);
        group.bench_function(format!("closed_form/{axis}"), |b| {
            b.iter(|| {
                for p in &points {
                    black_box(concurrence_closed_form(&p.spec, p.temperature).unwrap());
                }
            })
        });
        group.bench_function(format!("oracle/{axis}"), |b| {
            b.iter(|| {
                for p in &points {
                    black_box(concurrence_oracle_at(&p.spec, p.temperature).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn eigensolver(c: &mut Criterion) {
    let hamiltonians: Vec<_> = batch(DmAxis::Z, 64)
        .iter()
        .map(|p| build_hamiltonian(&p.spec))
        .collect();
    c.bench_function("hermitian_eigensystem/64", |b| {
        b.iter_batched(
            || hamiltonians.clone(),
            |hs| {
                for h in &hs {
                    black_box(hermitian_eigensystem(h).unwrap());
                }
            },
            BatchSize::SmallInput,
        )
    });
}

fn analysis(c: &mut Criterion) {
    let preset = figure_preset(1).unwrap();
    c.bench_function("sweep/fig1a_201", |b| {
        b.iter(|| black_box(sweep(&preset.dm_panel).unwrap()))
    });

    let spec = ModelSpec::from_values(0.2, -1.0, -0.5, DmAxis::X, 3.0).unwrap();
    c.bench_function("critical_temperature/fig1", |b| {
        b.iter(|| black_box(critical_temperature(&spec, 0.05, 50.0, 1e-10).unwrap()))
    });
}

criterion_group!(benches, closed_form_vs_oracle, eigensolver, analysis);
criterion_main!(benches);
