//! Number-basis constructors for the input states of the discorrelation circuits.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::fock::{Normalize, SingleModeState, TruncationDim, TwoModeState, C64};
use crate::special::ln_factorial;

/// Default bound on the probability weight a truncated coherent state may lose.
pub const DEFAULT_TAIL_BOUND: f64 = 1e-8;

/// Coherent amplitude `alpha = magnitude * exp(i phase)`, phase kept in `[0, 2pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentAmplitude {
    magnitude: f64,
    phase: f64,
}

impl CoherentAmplitude {
    pub fn new(magnitude: f64, phase: f64) -> Result<Self> {
        if !magnitude.is_finite() || magnitude < 0.0 || !phase.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "coherent amplitude needs finite magnitude >= 0 and finite phase, got ({magnitude}, {phase})"
            )));
        }
        Ok(Self { magnitude, phase: phase.rem_euclid(TAU) })
    }

    pub fn from_complex(alpha: C64) -> Result<Self> {
        let (r, theta) = alpha.to_polar();
        Self::new(r, theta)
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn value(&self) -> C64 {
        C64::from_polar(self.magnitude, self.phase)
    }
}

/// Squeezing parameter `lambda` with `|lambda| < 1`, or `|lambda| <= 1` when
/// explicitly built with [`SqueezingParameter::edge`]. Edge values are only
/// meaningful as truncated-and-renormalized states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingParameter {
    value: C64,
    edge: bool,
}

impl SqueezingParameter {
    pub fn new(value: C64) -> Result<Self> {
        if !(value.norm() < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "squeezing parameter needs |lambda| < 1, got {value} (use the edge constructor for |lambda| = 1)"
            )));
        }
        Ok(Self { value, edge: false })
    }

    pub fn real(value: f64) -> Result<Self> {
        Self::new(C64::new(value, 0.0))
    }

    /// Accepts `|lambda| <= 1`.
    pub fn edge(value: C64) -> Result<Self> {
        if !(value.norm() <= 1.0 + 1e-15) {
            return Err(Error::InvalidParameter(format!("squeezing parameter needs |lambda| <= 1, got {value}")));
        }
        Ok(Self { value, edge: value.norm() >= 1.0 })
    }

    pub fn value(&self) -> C64 {
        self.value
    }

    /// True when `|lambda| = 1`.
    pub fn is_edge(&self) -> bool {
        self.edge
    }
}

/// `|n>` truncated at `dim`.
pub fn fock(n: usize, dim: usize) -> Result<SingleModeState> {
    TruncationDim::new(dim)?;
    if n >= dim {
        return Err(Error::OutOfRange { n, dim });
    }
    let mut amps = Array1::zeros(dim);
    amps[n] = C64::new(1.0, 0.0);
    SingleModeState::from_amplitudes(amps)
}

/// `<n|alpha> = exp(-|alpha|^2/2) alpha^n / sqrt(n!)`, without truncation.
pub fn coherent_amplitude(alpha: C64, n: usize) -> C64 {
    let r = alpha.norm();
    if r == 0.0 {
        return if n == 0 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
    }
    let ln_mag = -0.5 * r * r + n as f64 * r.ln() - 0.5 * ln_factorial(n);
    C64::from_polar(ln_mag.exp(), n as f64 * alpha.arg())
}

/// Coherent state truncated at `dim` and renormalized; fails with
/// `TailTooLarge` if the cut-off weight exceeds [`DEFAULT_TAIL_BOUND`].
pub fn coherent(alpha: CoherentAmplitude, dim: usize) -> Result<SingleModeState> {
    coherent_with_bound(alpha, dim, DEFAULT_TAIL_BOUND)
}

pub fn coherent_with_bound(alpha: CoherentAmplitude, dim: usize, bound: f64) -> Result<SingleModeState> {
    TruncationDim::new(dim)?;
    let a = alpha.value();
    let amps = Array1::from_shape_fn(dim, |n| coherent_amplitude(a, n));
    let (state, discarded) = SingleModeState::from_amplitudes_unnormalized(amps)?.normalize()?;
    if discarded > bound {
        return Err(Error::TailTooLarge { dim, discarded, bound });
    }
    Ok(state)
}

/// Single-mode squeezed vacuum, `amps[2n] ∝ lambda^n sqrt((2n)!) / (2^n n!)`,
/// odd entries exactly zero, renormalized over the truncated space.
pub fn smsv(lambda: SqueezingParameter, dim: usize) -> Result<SingleModeState> {
    if dim < 4 {
        return Err(Error::InvalidDimension { dim, min: 4 });
    }
    let l = lambda.value();
    let amps = Array1::from_shape_fn(dim, |k| {
        if k % 2 == 1 {
            return C64::new(0.0, 0.0);
        }
        let n = k / 2;
        if n == 0 {
            return C64::new(1.0, 0.0);
        }
        if l.norm() == 0.0 {
            return C64::new(0.0, 0.0);
        }
        let ln_mag = n as f64 * l.norm().ln() + 0.5 * ln_factorial(2 * n)
            - n as f64 * std::f64::consts::LN_2
            - ln_factorial(n);
        C64::from_polar(ln_mag.exp(), n as f64 * l.arg())
    });
    SingleModeState::from_amplitudes(amps)
}

/// Two-mode squeezed vacuum `∝ sum_n lambda^n |n, n>`, renormalized.
pub fn tmsv(lambda: SqueezingParameter, dim: usize) -> Result<TwoModeState> {
    TruncationDim::new(dim)?;
    let l = lambda.value();
    let coeffs = Array2::from_shape_fn((dim, dim), |(n, m)| if n == m { l.powu(n as u32) } else { C64::new(0.0, 0.0) });
    TwoModeState::from_coeffs(coeffs)
}

/// Two photons bunched by a balanced beam splitter, `(|2,0> - |0,2>)/sqrt(2)`.
///
/// The relative minus sign is what [`crate::optics::beam_splitter`] produces
/// from `|1,1>` under this crate's convention.
pub fn hom_state(dim: usize) -> Result<TwoModeState> {
    if dim < 3 {
        return Err(Error::InvalidDimension { dim, min: 3 });
    }
    let mut coeffs = Array2::zeros((dim, dim));
    coeffs[[2, 0]] = C64::new(FRAC_1_SQRT_2, 0.0);
    coeffs[[0, 2]] = C64::new(-FRAC_1_SQRT_2, 0.0);
    TwoModeState::from_coeffs(coeffs)
}
