//! Parameter sweeps. Grid points are evaluated concurrently and written in
//! grid order.

use std::io::Write;
use std::str::FromStr;

use discorr_core::oracle::{CircuitInput, ModeInput};
use discorr_core::CoherentAmplitude;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::eval::evaluate;
use crate::scenario::{Kind, Resolved};

pub const MAX_POINTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    Loss,
    T,
    /// Phase of the second coherent amplitude.
    Phase,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Loss => "loss",
            SweepParam::T => "t",
            SweepParam::Phase => "phase",
        }
    }
}

impl FromStr for SweepParam {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s.to_ascii_lowercase().as_str() {
            "loss" => Ok(SweepParam::Loss),
            "t" => Ok(SweepParam::T),
            "phase" => Ok(SweepParam::Phase),
            _ => Err(CliError::spec(format!("unknown sweep parameter {s:?}; expected loss, t or phase"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    pub param: SweepParam,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

impl SweepGrid {
    pub fn points(&self) -> CliResult<Vec<f64>> {
        if self.steps == 0 || self.steps > MAX_POINTS {
            return Err(CliError::spec(format!("--steps must lie in 1..={MAX_POINTS}, got {}", self.steps)));
        }
        if self.steps == 1 {
            return Ok(vec![self.from]);
        }
        let span = self.to - self.from;
        let last = (self.steps - 1) as f64;
        Ok((0..self.steps).map(|k| if k + 1 == self.steps { self.to } else { self.from + span * k as f64 / last }).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub value: f64,
    pub log_negativity: f64,
    pub discorrelation: f64,
    pub herald_probability: Option<f64>,
    pub same_count_probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub scenario: &'static str,
    pub param: SweepParam,
    pub records: Vec<SweepRecord>,
}

/// `base` with the swept parameter set to `value`.
pub fn apply(base: &Resolved, param: SweepParam, value: f64) -> CliResult<Resolved> {
    let mut r = base.clone();
    match param {
        SweepParam::Loss => {
            if !(0.0..=1.0).contains(&value) {
                return Err(CliError::spec(format!("loss must lie in [0, 1], got {value}")));
            }
            r.loss = value;
        }
        SweepParam::T => {
            let Kind::Circuit { t, .. } = &mut r.kind else {
                return Err(CliError::spec(format!("scenario {} has no heralding transmissivity to sweep", base.scenario)));
            };
            if !(0.0..=1.0).contains(&value) {
                return Err(CliError::spec(format!("t must lie in [0, 1], got {value}")));
            }
            *t = value;
        }
        SweepParam::Phase => {
            let Kind::Circuit { input: CircuitInput::Separable { b: ModeInput::Coherent(beta), .. }, .. } = &mut r.kind
            else {
                return Err(CliError::spec(format!("scenario {} has no second coherent amplitude to rotate", base.scenario)));
            };
            *beta = CoherentAmplitude::new(beta.magnitude(), value)?;
        }
    }
    Ok(r)
}

pub fn run_sweep(base: &Resolved, grid: SweepGrid) -> CliResult<SweepResult> {
    if grid.param == SweepParam::Loss && base.loss != 0.0 {
        return Err(CliError::spec("--loss cannot be combined with a loss sweep"));
    }
    let configs: Vec<Resolved> =
        grid.points()?.into_iter().map(|v| apply(base, grid.param, v)).collect::<CliResult<_>>()?;
    let results: Vec<CliResult<SweepRecord>> = configs
        .par_iter()
        .zip(grid.points()?)
        .map(|(r, value)| {
            let s = evaluate(r)?.summary;
            Ok(SweepRecord {
                value,
                log_negativity: s.log_negativity,
                discorrelation: s.discorrelation,
                herald_probability: s.herald_probability,
                same_count_probability: s.same_count_probability,
            })
        })
        .collect();
    let records = results.into_iter().collect::<CliResult<Vec<_>>>()?;
    Ok(SweepResult { scenario: base.scenario.name(), param: grid.param, records })
}

/// CSV with the swept parameter's name as the first column header.
pub fn write_sweep_csv(out: impl Write, sweep: &SweepResult) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([sweep.param.name(), "log_negativity", "discorrelation", "herald_probability", "same_count_probability"])?;
    for r in &sweep.records {
        w.write_record([
            r.value.to_string(),
            r.log_negativity.to_string(),
            r.discorrelation.to_string(),
            r.herald_probability.map(|p| p.to_string()).unwrap_or_default(),
            r.same_count_probability.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
