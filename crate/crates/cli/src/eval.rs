//! Evaluating a resolved scenario into a distribution and summary.

use discorr_core::analysis::{
    discorrelation_metric, joint_distribution, logarithmic_negativity, logarithmic_negativity_pure,
    uncorrelated_reference, JointDistribution,
};
use discorr_core::oracle::{
    lossy_two_mode, simulate_discorrelation_circuit, simulate_displaced_photon, simulate_with_loss, CircuitConfig,
    CircuitState,
};
use discorr_core::states::hom_state;
use discorr_core::{BeamSplitterParams, LossPoint, TwoModeState};
use serde::Serialize;

use crate::error::CliResult;
use crate::scenario::{Kind, Parameters, Resolved};

/// Levels whose marginal population is below this are trimmed before
/// density-operator eigensolves.
pub const COMPACT_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceInfo {
    pub mean_a: f64,
    pub mean_b: f64,
    pub same_count_probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridShape {
    pub rows: usize,
    pub cols: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub scenario: &'static str,
    pub caption: &'static str,
    pub parameters: Parameters,
    pub herald_probability: Option<f64>,
    pub same_count_probability: f64,
    pub discorrelation: f64,
    pub reference: ReferenceInfo,
    pub log_negativity: f64,
    pub discarded_weight: f64,
    pub total_probability: f64,
    pub grid: GridShape,
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub distribution: JointDistribution,
    pub state: CircuitState,
    pub summary: Summary,
}

fn circuit_config(r: &Resolved) -> CliResult<Option<CircuitConfig>> {
    Ok(match &r.kind {
        Kind::Circuit { input, t } => Some(CircuitConfig::new(input.clone(), BeamSplitterParams::new(*t)?, r.dim)),
        _ => None,
    })
}

/// The lossless state, its herald probability and truncated weight.
fn lossless(r: &Resolved) -> CliResult<(TwoModeState, Option<f64>, f64)> {
    Ok(match &r.kind {
        Kind::DisplacedPhoton { alpha } => {
            let s = simulate_displaced_photon(*alpha, r.dim)?;
            let d = s.discarded();
            (s, None, d)
        }
        Kind::Hom => (hom_state(r.dim.max(3))?, None, 0.0),
        Kind::Input(input) => {
            let s = input.prepare(r.dim)?;
            let d = s.discarded();
            (s, None, d)
        }
        Kind::Circuit { .. } => {
            let cfg = circuit_config(r)?.expect("circuit kind");
            let out = simulate_discorrelation_circuit(&cfg)?;
            match out.state {
                CircuitState::Pure(s) => (s, Some(out.herald_probability), out.input_discarded),
                CircuitState::Mixed(_) => unreachable!("lossless configuration"),
            }
        }
    })
}

pub fn evaluate(r: &Resolved) -> CliResult<Evaluation> {
    let (base, herald, discarded) = lossless(r)?;
    let base_jd = joint_distribution(&base)?;
    let reference = uncorrelated_reference(base_jd.mean_a(), base_jd.mean_b())?;

    let (state, herald) = if r.loss == 0.0 {
        (CircuitState::Pure(base), herald)
    } else if r.loss_point == LossPoint::AfterDiscorrelation {
        let rho = lossy_two_mode(&base.compact(COMPACT_TOL)?, 1.0 - r.loss)?;
        (CircuitState::Mixed(rho), herald)
    } else {
        let cfg = circuit_config(r)?.expect("loss points are validated against the scenario kind");
        let out = simulate_with_loss(&cfg.with_loss(r.loss_point, 1.0 - r.loss))?;
        (out.state, Some(out.herald_probability))
    };

    let (distribution, log_negativity) = match &state {
        CircuitState::Pure(s) => (joint_distribution(s)?, logarithmic_negativity_pure(s)),
        CircuitState::Mixed(rho) => (joint_distribution(rho)?, logarithmic_negativity(&rho.compact(COMPACT_TOL)?)?),
    };
    let score = discorrelation_metric(&distribution, &reference)?;
    let (rows, cols) = distribution.probs().dim();
    let summary = Summary {
        scenario: r.scenario.name(),
        caption: r.scenario.caption(),
        parameters: r.parameters(),
        herald_probability: herald,
        same_count_probability: distribution.same_count_prob(),
        discorrelation: score.value,
        reference: ReferenceInfo {
            mean_a: base_jd.mean_a(),
            mean_b: base_jd.mean_b(),
            same_count_probability: score.reference_same_prob,
        },
        log_negativity,
        discarded_weight: discarded,
        total_probability: distribution.probs().sum(),
        grid: GridShape { rows, cols },
    };
    Ok(Evaluation { distribution, state, summary })
}
