use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use discorr_bench::{circuit_register, coherent_input, lossy_hom};
use discorr_core::oracle::{simulate_discorrelation_circuit, CircuitConfig, CircuitInput};
use discorr_core::optics::beam_splitter;
use discorr_core::{logarithmic_negativity, BeamSplitterParams, CoherentAmplitude};
use std::hint::black_box;

fn four_mode_beam_splitter(c: &mut Criterion) {
    let bs = BeamSplitterParams::new((2.0f64 / 30.0).sqrt()).unwrap();
    let mut g = c.benchmark_group("beam_splitter_4mode");
    for dim in [8, 12, 16] {
        let reg = circuit_register(1.5, dim).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(dim), &reg, |b, reg| {
            b.iter(|| beam_splitter(black_box(reg), (0, 2), bs).unwrap())
        });
    }
    g.finish();
}

fn full_circuit(c: &mut Criterion) {
    let alpha = CoherentAmplitude::new(8f64.sqrt(), 0.0).unwrap();
    let bs = BeamSplitterParams::new((2.0f64 / 30.0).sqrt()).unwrap();
    let cfg = CircuitConfig::new(CircuitInput::coherent_pair(alpha, alpha), bs, 40);
    c.bench_function("circuit_dim40", |b| b.iter(|| simulate_discorrelation_circuit(black_box(&cfg)).unwrap()));
}

fn log_negativity(c: &mut Criterion) {
    let mut g = c.benchmark_group("log_negativity");
    g.sample_size(10);
    for dim in [6, 12, 20] {
        let rho = lossy_hom(dim).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(dim), &rho, |b, rho| {
            b.iter(|| logarithmic_negativity(black_box(rho)).unwrap())
        });
    }
    g.finish();
}

fn analytic_grid(c: &mut Criterion) {
    let amps = coherent_input(8f64.sqrt(), 40).unwrap().amps().to_vec();
    let bs = BeamSplitterParams::new((2.0f64 / 30.0).sqrt()).unwrap();
    c.bench_function("heralded_grid_dim40", |b| {
        b.iter(|| discorr_analytic::heralded_grid(black_box(&amps), &amps, bs, (41, 41)))
    });
}

criterion_group!(benches, four_mode_beam_splitter, full_circuit, log_negativity, analytic_grid);
criterion_main!(benches);
