//! Differential check of the closed-form coefficients against the circuit
//! simulation for one scenario.

use discorr_core::analysis::phase_aligned_deviation;
use discorr_core::oracle::{
    displaced_photon_amplitudes, simulate_discorrelation_circuit, CircuitConfig, CircuitInput, CircuitState, ModeInput,
};
use discorr_core::states::coherent_amplitude;
use discorr_core::{BeamSplitterParams, CoherentAmplitude, Result as CoreResult, SingleModeState, TwoModeState, C64};
use ndarray::{Array1, Array2};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::scenario::{Kind, Parameters, Resolved};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub coefficient: f64,
    pub probability: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { coefficient: 1e-9, probability: 1e-8 }
    }
}

/// The formulas under test. Swappable so a deliberately wrong formula can
/// demonstrate that the harness fails.
#[derive(Clone, Copy)]
pub struct Formulas {
    pub displaced_photon: fn(usize, usize, CoherentAmplitude) -> C64,
    pub heralded: fn(&[C64], &[C64], BeamSplitterParams, usize, usize) -> C64,
    pub coherent: fn(usize, usize, CoherentAmplitude, BeamSplitterParams) -> C64,
    pub entangled: fn(&Array2<C64>, BeamSplitterParams, usize, usize) -> CoreResult<C64>,
}

impl Default for Formulas {
    fn default() -> Self {
        Self {
            displaced_photon: discorr_analytic::displaced_photon_coeff,
            heralded: discorr_analytic::heralded_coeff,
            coherent: discorr_analytic::coherent_output_coeff,
            entangled: discorr_analytic::entangled_output_coeff,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffCheck {
    pub formula: &'static str,
    pub coefficient_deviation: f64,
    pub herald_probability_deviation: Option<f64>,
    pub compared_entries: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffReport {
    pub scenario: &'static str,
    pub parameters: Parameters,
    pub tolerances: Tolerances,
    pub checks: Vec<DiffCheck>,
    pub pass: bool,
}

pub fn run_diff(r: &Resolved, tol: Tolerances) -> CliResult<DiffReport> {
    run_diff_with(r, tol, &Formulas::default())
}

fn raw_coherent(a: CoherentAmplitude, dim: usize) -> CliResult<SingleModeState> {
    let amps = Array1::from_shape_fn(dim, |k| coherent_amplitude(a.value(), k));
    Ok(SingleModeState::from_amplitudes_unnormalized(amps)?)
}

fn pure(state: CircuitState) -> TwoModeState {
    match state {
        CircuitState::Pure(s) => s,
        CircuitState::Mixed(_) => unreachable!("lossless circuits are pure"),
    }
}

fn check(
    formula: &'static str,
    dev: f64,
    dp: Option<f64>,
    entries: usize,
    tol: Tolerances,
) -> DiffCheck {
    let pass = dev <= tol.coefficient && dp.is_none_or(|d| d <= tol.probability);
    DiffCheck { formula, coefficient_deviation: dev, herald_probability_deviation: dp, compared_entries: entries, pass }
}

fn count(shape: (usize, usize), region: impl Fn(usize, usize) -> bool) -> usize {
    (0..shape.0).flat_map(|n| (0..shape.1).map(move |m| (n, m))).filter(|&(n, m)| region(n, m)).count()
}

pub fn run_diff_with(r: &Resolved, tol: Tolerances, f: &Formulas) -> CliResult<DiffReport> {
    if r.loss != 0.0 {
        return Err(CliError::spec("the closed-form coefficients describe lossless states; drop --loss"));
    }
    let mut checks = Vec::new();
    match &r.kind {
        Kind::DisplacedPhoton { alpha } => {
            // Raw truncated amplitudes keep every entry with n + m <= dim exact.
            let oracle = displaced_photon_amplitudes(&raw_coherent(*alpha, r.dim)?)?.to_two_mode()?;
            let oracle = oracle.coeffs();
            let analytic = Array2::from_shape_fn(oracle.dim(), |(n, m)| (f.displaced_photon)(n, m, *alpha));
            let region = |n: usize, m: usize| n + m <= r.dim;
            let dev = phase_aligned_deviation(&analytic, oracle, region);
            checks.push(check("displaced-photon", dev, None, count(oracle.dim(), region), tol));
        }
        Kind::Circuit { input, t } => {
            let bs = BeamSplitterParams::new(*t)?;
            let out = simulate_discorrelation_circuit(&CircuitConfig::new(input.clone(), bs, r.dim))?;
            let p_oracle = out.herald_probability;
            let oracle = pure(out.state);
            match input {
                CircuitInput::Separable { a, b } => {
                    let ca = a.prepare(r.dim)?.amps().to_vec();
                    let cb = b.prepare(r.dim)?.amps().to_vec();
                    let shape = oracle.dims();
                    let grid = Array2::from_shape_fn(shape, |(n, m)| (f.heralded)(&ca, &cb, bs, n, m));
                    let p: f64 = grid.iter().map(|c| c.norm_sqr()).sum();
                    let normalized = grid.mapv(|c| c / p.sqrt());
                    let dev = phase_aligned_deviation(&normalized, oracle.coeffs(), |_, _| true);
                    checks.push(check("heralded", dev, Some((p - p_oracle).abs()), shape.0 * shape.1, tol));
                    if let (ModeInput::Coherent(x), ModeInput::Coherent(y)) = (a, b) {
                        if x == y {
                            checks.push(coherent_check(*x, bs, r.dim, tol, f)?);
                        }
                    }
                }
                CircuitInput::Tmsv(_) | CircuitInput::Entangled(_) => {
                    let c_in = input.prepare(r.dim)?.coeffs().clone();
                    let shape = oracle.dims();
                    let mut grid = Array2::zeros(shape);
                    for ((n, m), v) in grid.indexed_iter_mut() {
                        *v = (f.entangled)(&c_in, bs, n, m)?;
                    }
                    let p: f64 = grid.iter().map(|c: &C64| c.norm_sqr()).sum();
                    let normalized = grid.mapv(|c| c / p.sqrt());
                    let dev = phase_aligned_deviation(&normalized, oracle.coeffs(), |_, _| true);
                    checks.push(check("entangled", dev, Some((p - p_oracle).abs()), shape.0 * shape.1, tol));
                }
            }
        }
        Kind::Hom | Kind::Input(_) => {
            return Err(CliError::spec(format!(
                "scenario {} has no closed-form output to compare against",
                r.scenario
            )))
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(DiffReport { scenario: r.scenario.name(), parameters: r.parameters(), tolerances: tol, checks, pass })
}

/// The equal-amplitude coherent closed form against the circuit fed with
/// raw truncated amplitudes; entries with `n, m <= dim - 2` are exact.
fn coherent_check(
    alpha: CoherentAmplitude,
    bs: BeamSplitterParams,
    dim: usize,
    tol: Tolerances,
    f: &Formulas,
) -> CliResult<DiffCheck> {
    let raw = raw_coherent(alpha, dim)?;
    let norm_in: f64 = raw.amps().iter().map(|c| c.norm_sqr()).sum();
    let input = CircuitInput::Separable { a: ModeInput::State(raw.clone()), b: ModeInput::State(raw) };
    let out = simulate_discorrelation_circuit(&CircuitConfig::new(input, bs, dim))?;
    let scale = out.herald_probability.sqrt() * norm_in;
    let oracle = pure(out.state).coeffs().mapv(|c| c * scale);
    let analytic = Array2::from_shape_fn(oracle.dim(), |(n, m)| (f.coherent)(n, m, alpha, bs));
    let region = |n: usize, m: usize| n + 2 <= dim && m + 2 <= dim;
    let dev = phase_aligned_deviation(&analytic, &oracle, region);
    Ok(check("coherent-closed-form", dev, None, count(oracle.dim(), region), tol))
}
