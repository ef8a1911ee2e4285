//! Closed-form output coefficients of the discorrelation circuits.
//!
//! These functions never touch the circuit simulation in
//! `discorr_core::oracle`; the two are kept apart so each can check the
//! other. Coefficient vectors are read as zero outside their length.

use std::ops::RangeInclusive;

use discorr_core::special::ln_factorial;
use discorr_core::{BeamSplitterParams, CoherentAmplitude, Error, Result, C64};
use ndarray::Array2;

/// Below this reflectivity the entangled-input formula is not evaluated.
pub const MIN_REFLECTIVITY: f64 = 1e-9;

fn at(c: &[C64], k: isize) -> C64 {
    if k < 0 {
        return C64::default();
    }
    c.get(k as usize).copied().unwrap_or_default()
}

fn at2(c: &Array2<C64>, n: isize, m: isize) -> C64 {
    if n < 0 || m < 0 {
        return C64::default();
    }
    c.get((n as usize, m as usize)).copied().unwrap_or_default()
}

fn sign(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `t^2 r^(n+m-2)`, taken as its limit at `r = 0`: nonzero only for `n+m = 2`.
fn prefactor(bs: BeamSplitterParams, n: usize, m: usize) -> f64 {
    let (t, r) = (bs.t(), bs.r());
    let k = n as i32 + m as i32 - 2;
    if r == 0.0 {
        return if k == 0 { t * t } else { 0.0 };
    }
    t * t * r.powi(k)
}

/// Normalized coefficient of `|n, m>` for a single photon and `|alpha>` on
/// a balanced beam splitter:
/// `e^{-|a|^2/2} (a/sqrt2)^(n+m-1) (n-m) / sqrt(2 n! m!)`.
pub fn displaced_photon_coeff(n: usize, m: usize, alpha: CoherentAmplitude) -> C64 {
    if n == m {
        return C64::default();
    }
    let k = n + m - 1;
    let a = alpha.magnitude();
    if a == 0.0 {
        return if k == 0 { C64::new((n as f64 - m as f64) / 2f64.sqrt(), 0.0) } else { C64::default() };
    }
    let ln_mag = -0.5 * a * a + k as f64 * (a / 2f64.sqrt()).ln()
        - 0.5 * (2f64.ln() + ln_factorial(n) + ln_factorial(m));
    C64::from_polar(ln_mag.exp(), k as f64 * alpha.phase()) * (n as f64 - m as f64)
}

/// Unnormalized heralded output coefficient for separable inputs `c_a`, `c_b`.
pub fn heralded_coeff(c_a: &[C64], c_b: &[C64], bs: BeamSplitterParams, n: usize, m: usize) -> C64 {
    let pre = prefactor(bs, n, m);
    if pre == 0.0 {
        return C64::default();
    }
    let t2 = bs.t() * bs.t();
    let (ni, mi) = (n as isize, m as isize);
    let (nf, mf) = (n as f64, m as f64);
    let first = at(c_a, ni + 1) * at(c_b, mi - 1) * (mf * (nf + 1.0)).sqrt() * (1.0 - (mf + 1.0) * t2 / 2.0);
    let second = at(c_a, ni - 1) * at(c_b, mi + 1) * (nf * (mf + 1.0)).sqrt() * (1.0 - (nf + 1.0) * t2 / 2.0);
    (first - second) * sign(m) * pre
}

/// [`heralded_coeff`] on a `rows x cols` grid.
pub fn heralded_grid(c_a: &[C64], c_b: &[C64], bs: BeamSplitterParams, dims: (usize, usize)) -> Array2<C64> {
    Array2::from_shape_fn(dims, |(n, m)| heralded_coeff(c_a, c_b, bs, n, m))
}

/// Grid large enough to hold every nonzero heralded coefficient.
pub fn heralded_support(c_a: &[C64], c_b: &[C64]) -> (usize, usize) {
    (c_a.len() + 1, c_b.len() + 1)
}

/// Probability that both heralds fire: `sum |c'_{n,m}|^2` over `n, m < dim`.
pub fn herald_probability(c_a: &[C64], c_b: &[C64], bs: BeamSplitterParams, dim: usize) -> f64 {
    heralded_grid(c_a, c_b, bs, (dim, dim)).iter().map(|c| c.norm_sqr()).sum()
}

/// Diagonal coefficient in factored form,
/// `(-1)^n t^2 r^(2n-2) sqrt(n(n+1)) [1-(n+1)t^2/2] (cA_{n+1} cB_{n-1} - cA_{n-1} cB_{n+1})`.
pub fn diagonal_coeff(c_a: &[C64], c_b: &[C64], bs: BeamSplitterParams, n: usize) -> C64 {
    let pre = prefactor(bs, n, n);
    if pre == 0.0 {
        return C64::default();
    }
    let ni = n as isize;
    let nf = n as f64;
    let filter = 1.0 - (nf + 1.0) * bs.t() * bs.t() / 2.0;
    let cross = at(c_a, ni + 1) * at(c_b, ni - 1) - at(c_a, ni - 1) * at(c_b, ni + 1);
    cross * sign(n) * pre * (nf * (nf + 1.0)).sqrt() * filter
}

/// How far a pair of inputs is from producing a discorrelated output.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientRatioCriterion {
    pub max_violation: f64,
    pub n_range: RangeInclusive<usize>,
}

impl CoefficientRatioCriterion {
    pub fn holds(&self, tol: f64) -> bool {
        self.max_violation <= tol
    }
}

/// `max |cA_{n+1} cB_{n-1} - cA_{n-1} cB_{n+1}|` over `1 <= n <= n_max`.
pub fn check_discorrelation_condition(c_a: &[C64], c_b: &[C64], n_max: usize) -> CoefficientRatioCriterion {
    let max_violation = (1..=n_max)
        .map(|n| {
            let n = n as isize;
            (at(c_a, n + 1) * at(c_b, n - 1) - at(c_a, n - 1) * at(c_b, n + 1)).norm()
        })
        .fold(0.0, f64::max);
    CoefficientRatioCriterion { max_violation, n_range: 1..=n_max }
}

/// Unnormalized output coefficient for coherent inputs with `alpha = beta`:
/// `e^{-|a|^2} a^(n+m) / sqrt(n! m!) (-1)^m t^2 r^(n+m-2) [1 - t^2 (n+m+1)/2] (n-m)`.
pub fn coherent_output_coeff(n: usize, m: usize, alpha: CoherentAmplitude, bs: BeamSplitterParams) -> C64 {
    let pre = prefactor(bs, n, m);
    if n == m || pre == 0.0 {
        return C64::default();
    }
    let a = alpha.magnitude();
    let k = n + m;
    if a == 0.0 {
        return C64::default();
    }
    let ln_mag = -a * a + k as f64 * a.ln() - 0.5 * (ln_factorial(n) + ln_factorial(m));
    let t2 = bs.t() * bs.t();
    let bracket = 1.0 - t2 / 2.0 * (k as f64 + 1.0);
    C64::from_polar(ln_mag.exp(), k as f64 * alpha.phase()) * sign(m) * pre * bracket * (n as f64 - m as f64)
}

/// Unnormalized output coefficient for an entangled input grid `c_in`.
pub fn entangled_output_coeff(c_in: &Array2<C64>, bs: BeamSplitterParams, n: usize, m: usize) -> Result<C64> {
    let (t, r) = (bs.t(), bs.r());
    if r.abs() < MIN_REFLECTIVITY {
        return Err(Error::DegenerateBeamSplitter { r });
    }
    let (ni, mi) = (n as isize, m as isize);
    let (nf, mf) = (n as f64, m as f64);
    let q = t * t / (2.0 * r * r);
    let first = at2(c_in, ni - 1, mi + 1) * (nf * (mf + 1.0)).sqrt() * (1.0 - q * (nf - 1.0));
    let second = at2(c_in, ni + 1, mi - 1) * (mf * (nf + 1.0)).sqrt() * (1.0 - q * (mf - 1.0));
    Ok((first - second) * sign(m) * t * t * r.powi((n + m) as i32))
}

/// [`entangled_output_coeff`] on a grid one row and column larger than `c_in`.
pub fn entangled_grid(c_in: &Array2<C64>, bs: BeamSplitterParams) -> Result<Array2<C64>> {
    let (rows, cols) = (c_in.nrows() + 1, c_in.ncols() + 1);
    let mut out = Array2::zeros((rows, cols));
    for ((n, m), v) in out.indexed_iter_mut() {
        *v = entangled_output_coeff(c_in, bs, n, m)?;
    }
    Ok(out)
}

/// `max |c_{n-1,n+1} - c_{n+1,n-1}|` over `1 <= n <= n_max`.
pub fn check_entangled_condition(c_in: &Array2<C64>, n_max: usize) -> CoefficientRatioCriterion {
    let max_violation = (1..=n_max)
        .map(|n| {
            let n = n as isize;
            (at2(c_in, n - 1, n + 1) - at2(c_in, n + 1, n - 1)).norm()
        })
        .fold(0.0, f64::max);
    CoefficientRatioCriterion { max_violation, n_range: 1..=n_max }
}
