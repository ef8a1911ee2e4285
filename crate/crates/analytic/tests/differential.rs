use discorr_analytic::{
    coherent_output_coeff, displaced_photon_coeff, entangled_grid, herald_probability, heralded_grid, heralded_support,
};
use discorr_core::analysis::phase_aligned_deviation;
use discorr_core::oracle::{
    displaced_photon_amplitudes, simulate_discorrelation_circuit, simulate_displaced_photon, CircuitConfig,
    CircuitInput, CircuitState, ModeInput,
};
use discorr_core::states::{coherent_amplitude, SqueezingParameter};
use discorr_core::{BeamSplitterParams, CoherentAmplitude, SingleModeState, TwoModeState, C64};
use ndarray::{Array1, Array2};

fn bs(t: f64) -> BeamSplitterParams {
    BeamSplitterParams::new(t).unwrap()
}

fn alpha(m: f64, p: f64) -> CoherentAmplitude {
    CoherentAmplitude::new(m, p).unwrap()
}

fn pure(state: &CircuitState) -> &TwoModeState {
    match state {
        CircuitState::Pure(s) => s,
        CircuitState::Mixed(_) => panic!("expected a pure output"),
    }
}

fn raw_coherent(a: CoherentAmplitude, dim: usize) -> SingleModeState {
    let amps = Array1::from_shape_fn(dim, |k| coherent_amplitude(a.value(), k));
    SingleModeState::from_amplitudes_unnormalized(amps).unwrap()
}

#[test]
fn displaced_photon_grid_matches_oracle() {
    let a = alpha(8f64.sqrt(), 0.0);
    let dim = 40;
    let oracle = displaced_photon_amplitudes(&raw_coherent(a, dim)).unwrap().to_two_mode().unwrap().coeffs().clone();
    let analytic = Array2::from_shape_fn(oracle.dim(), |(n, m)| displaced_photon_coeff(n, m, a));
    let dev = phase_aligned_deviation(&analytic, &oracle, |n, m| n + m <= dim);
    assert!(dev < 1e-10, "{dev}");
}

#[test]
fn displaced_photon_normalized_state_matches_oracle_everywhere() {
    let a = alpha(1.5, 0.9);
    let s = simulate_displaced_photon(a, 40).unwrap();
    let analytic = Array2::from_shape_fn(s.dims(), |(n, m)| displaced_photon_coeff(n, m, a));
    assert!(phase_aligned_deviation(&analytic, s.coeffs(), |_, _| true) < 1e-10);
}

fn separable_case(a: ModeInput, b: ModeInput, t: f64, dim: usize) -> (f64, f64) {
    let input = CircuitInput::Separable { a, b };
    let prepared = input.prepare(dim).unwrap();
    let ca: Vec<C64> = prepared.coeffs().column(0).to_vec();
    let cb: Vec<C64> = prepared.coeffs().row(0).to_vec();
    // The product grid is ca ⊗ cb; recover the factors from one row and column.
    let scale = prepared.coeffs()[[0, 0]];
    let cb: Vec<C64> = cb.iter().map(|c| c / scale).collect();
    let out = simulate_discorrelation_circuit(&CircuitConfig::new(input, bs(t), dim)).unwrap();
    let p = herald_probability(&ca, &cb, bs(t), dim + 2);
    let grid = heralded_grid(&ca, &cb, bs(t), heralded_support(&ca, &cb)).mapv(|c| c / p.sqrt());
    let dev = phase_aligned_deviation(&grid, pure(&out.state).coeffs(), |_, _| true);
    (dev, (p - out.herald_probability).abs())
}

#[test]
fn heralded_grid_matches_oracle_for_equal_coherent_inputs() {
    let (dev, dp) = separable_case(ModeInput::Coherent(alpha(1.0, 0.0)), ModeInput::Coherent(alpha(1.0, 0.0)), 0.5, 20);
    assert!(dev < 1e-9, "{dev}");
    assert!(dp < 1e-12, "{dp}");
}

#[test]
fn heralded_grid_matches_oracle_for_mixed_input_types() {
    let l = SqueezingParameter::new(C64::new(0.3, -0.2)).unwrap();
    let (dev, dp) = separable_case(ModeInput::Coherent(alpha(0.8, 2.2)), ModeInput::Squeezed(l), 0.63, 16);
    assert!(dev < 1e-9, "{dev}");
    assert!(dp < 1e-12, "{dp}");
}

#[test]
fn herald_probability_matches_oracle_for_figure_parameters() {
    let a = ModeInput::Coherent(alpha(8f64.sqrt(), 0.0));
    let (dev, dp) = separable_case(a.clone(), a, (2.0f64 / 30.0).sqrt(), 40);
    assert!(dev < 1e-9, "{dev}");
    assert!(dp < 1e-8, "{dp}");
}

#[test]
fn coherent_closed_form_matches_oracle_on_exact_region() {
    let a = alpha(8f64.sqrt(), 0.0);
    let dim = 30;
    let raw = raw_coherent(a, dim);
    let t = (2.0f64 / 15.0).sqrt();
    let input = CircuitInput::Separable { a: ModeInput::State(raw.clone()), b: ModeInput::State(raw) };
    let out = simulate_discorrelation_circuit(&CircuitConfig::new(input, bs(t), dim)).unwrap();
    let p = out.herald_probability;
    // Undo the oracle's normalization of the truncated input pair as well.
    let norm_in: f64 = (0..dim).map(|k| coherent_amplitude(a.value(), k).norm_sqr()).sum();
    let oracle = pure(&out.state).coeffs().mapv(|c| c * p.sqrt() * norm_in);
    let analytic = Array2::from_shape_fn(oracle.dim(), |(n, m)| coherent_output_coeff(n, m, a, bs(t)));
    let dev = phase_aligned_deviation(&analytic, &oracle, |n, m| n + 2 <= dim && m + 2 <= dim);
    assert!(dev < 1e-9, "{dev}");
}

#[test]
fn entangled_grid_matches_oracle_for_tmsv() {
    let l = SqueezingParameter::new(C64::new(0.5, 0.0)).unwrap();
    let t = 1.0 / 2f64.sqrt();
    let input = CircuitInput::Tmsv(l);
    let c_in = input.prepare(25).unwrap().coeffs().clone();
    let out = simulate_discorrelation_circuit(&CircuitConfig::new(input, bs(t), 25)).unwrap();
    let grid = entangled_grid(&c_in, bs(t)).unwrap();
    let p: f64 = grid.iter().map(|c| c.norm_sqr()).sum();
    assert!((p - out.herald_probability).abs() < 1e-12);
    let dev = phase_aligned_deviation(&grid.mapv(|c| c / p.sqrt()), pure(&out.state).coeffs(), |_, _| true);
    assert!(dev < 1e-9, "{dev}");
}
