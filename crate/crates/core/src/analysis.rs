//! Photon-number statistics, logarithmic negativity and the discorrelation score.

use nalgebra::DMatrix;
use ndarray::{Array1, Array2, Axis, Ix2};

use crate::error::{Error, Result};
use crate::fock::{DensityOperator, TwoModeState, C64};
use crate::special::poisson_pmf;

/// Eigenvalues below this magnitude count as zero in trace norms.
pub const EIGEN_ZERO: f64 = 1e-12;

/// Joint photon-number distribution `P(n, m)` of two modes.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    probs: Array2<f64>,
    marginal_a: Array1<f64>,
    marginal_b: Array1<f64>,
    same_count_prob: f64,
}

impl JointDistribution {
    /// Validates `probs` (entries not below `-1e-12`, total one within
    /// `1e-10`) and tabulates the marginals.
    pub fn from_probabilities(probs: Array2<f64>) -> Result<Self> {
        if let Some(p) = probs.iter().find(|&&p| !(p >= -1e-12)) {
            return Err(Error::InvalidParameter(format!("negative probability {p:e}")));
        }
        let total = probs.sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidParameter(format!("distribution sums to {total}")));
        }
        let marginal_a = probs.sum_axis(Axis(1));
        let marginal_b = probs.sum_axis(Axis(0));
        let same_count_prob = probs.diag().sum();
        Ok(Self { probs, marginal_a, marginal_b, same_count_prob })
    }

    pub fn probs(&self) -> &Array2<f64> {
        &self.probs
    }

    pub fn marginal_a(&self) -> &Array1<f64> {
        &self.marginal_a
    }

    pub fn marginal_b(&self) -> &Array1<f64> {
        &self.marginal_b
    }

    pub fn same_count_prob(&self) -> f64 {
        self.same_count_prob
    }

    pub fn mean_a(&self) -> f64 {
        self.marginal_a.iter().enumerate().map(|(n, p)| n as f64 * p).sum()
    }

    pub fn mean_b(&self) -> f64 {
        self.marginal_b.iter().enumerate().map(|(n, p)| n as f64 * p).sum()
    }
}

/// Anything with number-basis statistics on two modes.
pub trait PhotonStatistics {
    fn joint_distribution(&self) -> Result<JointDistribution>;
}

impl PhotonStatistics for TwoModeState {
    fn joint_distribution(&self) -> Result<JointDistribution> {
        JointDistribution::from_probabilities(self.probabilities())
    }
}

impl PhotonStatistics for DensityOperator {
    fn joint_distribution(&self) -> Result<JointDistribution> {
        self.expect_two_modes()?;
        let probs = self.populations().into_dimensionality::<Ix2>().expect("two modes");
        JointDistribution::from_probabilities(probs)
    }
}

pub fn joint_distribution(state: &impl PhotonStatistics) -> Result<JointDistribution> {
    state.joint_distribution()
}

/// `sum_n P(n, n)`.
pub fn same_count_probability(jd: &JointDistribution) -> f64 {
    jd.same_count_prob
}

/// Product of two Poisson distributions with the given means, lossless and
/// uncorrelated. Its grid extends far enough that the cut tail is below 1e-16.
pub fn uncorrelated_reference(mean_a: f64, mean_b: f64) -> Result<JointDistribution> {
    if !(mean_a >= 0.0 && mean_b >= 0.0) || !mean_a.is_finite() || !mean_b.is_finite() {
        return Err(Error::InvalidParameter(format!("reference means must be finite and >= 0, got {mean_a}, {mean_b}")));
    }
    let extent = |mean: f64| (mean + 15.0 * mean.sqrt() + 25.0).ceil() as usize;
    let (da, db) = (extent(mean_a), extent(mean_b));
    let pa: Vec<f64> = (0..da).map(|n| poisson_pmf(mean_a, n)).collect();
    let pb: Vec<f64> = (0..db).map(|n| poisson_pmf(mean_b, n)).collect();
    let mut probs = Array2::from_shape_fn((da, db), |(n, m)| pa[n] * pb[m]);
    let total = probs.sum();
    probs.mapv_inplace(|p| p / total);
    JointDistribution::from_probabilities(probs)
}

/// `D = 1 - P_same(state) / P_same(reference)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscorrelationScore {
    pub value: f64,
    pub reference_same_prob: f64,
    pub state_same_prob: f64,
}

pub fn discorrelation_metric(state: &JointDistribution, reference: &JointDistribution) -> Result<DiscorrelationScore> {
    let reference_same_prob = reference.same_count_prob;
    if !(reference_same_prob >= 1e-300) {
        return Err(Error::DegenerateReference(reference_same_prob));
    }
    let state_same_prob = state.same_count_prob;
    Ok(DiscorrelationScore {
        value: 1.0 - state_same_prob / reference_same_prob,
        reference_same_prob,
        state_same_prob,
    })
}

/// Transpose on the second mode: `<n,m|rho|n',m'>` moves to `<n,m'|.|n',m>`.
pub fn partial_transpose(rho: &DensityOperator) -> Result<Array2<C64>> {
    rho.expect_two_modes()?;
    let (da, db) = (rho.dims()[0], rho.dims()[1]);
    let t = rho.tensor();
    let side = da * db;
    Ok(Array2::from_shape_fn((side, side), |(i, j)| {
        let (n, m) = (i / db, i % db);
        let (np, mp) = (j / db, j % db);
        t[[n, mp, np, m].as_slice()]
    }))
}

pub fn hermitian_eigenvalues(m: &Array2<C64>) -> Vec<f64> {
    let (rows, cols) = m.dim();
    assert_eq!(rows, cols, "eigenvalues of a non-square matrix");
    let dm = DMatrix::from_fn(rows, cols, |i, j| m[[i, j]]);
    dm.symmetric_eigenvalues().iter().copied().collect()
}

/// `sum |lambda_i|` over eigenvalues with `|lambda_i| >= EIGEN_ZERO`.
pub fn trace_norm_hermitian(m: &Array2<C64>) -> f64 {
    hermitian_eigenvalues(m).into_iter().map(f64::abs).filter(|&x| x >= EIGEN_ZERO).sum()
}

/// `log2 || rho^{T_B} ||_1`, clamped at zero.
pub fn logarithmic_negativity(rho: &DensityOperator) -> Result<f64> {
    let pt = partial_transpose(rho)?;
    Ok(trace_norm_hermitian(&pt).log2().max(0.0))
}

/// Singular values of the coefficient grid.
pub fn schmidt_coefficients(psi: &TwoModeState) -> Vec<f64> {
    let c = psi.coeffs();
    let (r, k) = c.dim();
    let dm = DMatrix::from_fn(r, k, |i, j| c[[i, j]]);
    dm.singular_values().iter().copied().collect()
}

/// Pure-state negativity from the Schmidt decomposition, `log2 (sum_k s_k)^2`.
pub fn logarithmic_negativity_pure(psi: &TwoModeState) -> f64 {
    let s: f64 = schmidt_coefficients(psi).iter().sum();
    (s * s).log2().max(0.0)
}

/// Largest elementwise distance between `a` and `e^{i phi} b`, with `phi`
/// chosen so the two agree in phase at the largest-magnitude entry of `a`.
/// Grids of different shape are compared as if zero-padded. Only entries
/// where `region(n, m)` holds are compared.
pub fn phase_aligned_deviation(a: &Array2<C64>, b: &Array2<C64>, region: impl Fn(usize, usize) -> bool) -> f64 {
    let rows = a.nrows().max(b.nrows());
    let cols = a.ncols().max(b.ncols());
    let get = |g: &Array2<C64>, n: usize, m: usize| g.get((n, m)).copied().unwrap_or_default();
    let mut pivot = (0, 0);
    let mut best = -1.0;
    for ((n, m), c) in a.indexed_iter() {
        if region(n, m) && c.norm() > best {
            best = c.norm();
            pivot = (n, m);
        }
    }
    let (pa, pb) = (get(a, pivot.0, pivot.1), get(b, pivot.0, pivot.1));
    let phase = if pa.norm() > 0.0 && pb.norm() > 0.0 { pa / pa.norm() * (pb / pb.norm()).conj() } else { C64::new(1.0, 0.0) };
    let mut worst: f64 = 0.0;
    for n in 0..rows {
        for m in 0..cols {
            if region(n, m) {
                worst = worst.max((get(a, n, m) - phase * get(b, n, m)).norm());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{to_density, MultiModeState};
    use crate::optics::{loss_channel, phase_shift};
    use crate::states::{coherent, fock, hom_state, tmsv, CoherentAmplitude, SqueezingParameter};
    use approx::assert_abs_diff_eq;

    fn product(a: f64, b: f64, dim: usize) -> TwoModeState {
        let ca = coherent(CoherentAmplitude::new(a, 0.2).unwrap(), dim).unwrap();
        let cb = coherent(CoherentAmplitude::new(b, 1.1).unwrap(), dim).unwrap();
        TwoModeState::product(&ca, &cb)
    }

    #[test]
    fn phase_alignment_quotients_global_phase() {
        let a = Array2::from_shape_fn((3, 4), |(n, m)| C64::new(n as f64 - 0.5, m as f64 * 0.3));
        let b = a.mapv(|c| c * C64::from_polar(1.0, 2.1));
        assert!(phase_aligned_deviation(&a, &b, |_, _| true) < 1e-14);
        let mut c = b.clone();
        c[[0, 0]] += C64::new(1e-3, 0.0);
        assert_abs_diff_eq!(phase_aligned_deviation(&a, &c, |_, _| true), 1e-3, epsilon = 1e-12);
        assert!(phase_aligned_deviation(&a, &c, |n, m| (n, m) != (0, 0)) < 1e-14);
    }

    #[test]
    fn vacuum_distribution() {
        let vac = TwoModeState::product(&fock(0, 3).unwrap(), &fock(0, 3).unwrap());
        let jd = joint_distribution(&vac).unwrap();
        assert_eq!(jd.probs()[[0, 0]], 1.0);
        assert_eq!(same_count_probability(&jd), 1.0);
    }

    #[test]
    fn hom_distribution_and_negativity() {
        let h = hom_state(3).unwrap();
        let jd = joint_distribution(&h).unwrap();
        assert_abs_diff_eq!(jd.probs()[[2, 0]], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(jd.same_count_prob(), 0.0);
        let rho = to_density(&h.to_multimode());
        let pt = partial_transpose(&rho).unwrap();
        let min = hermitian_eigenvalues(&pt).into_iter().fold(f64::INFINITY, f64::min);
        assert_abs_diff_eq!(min, -0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(logarithmic_negativity(&rho).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(logarithmic_negativity_pure(&h), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn product_states_are_ppt() {
        let s = product(0.8, 1.3, 20);
        let rho = to_density(&s.to_multimode());
        let pt = partial_transpose(&rho).unwrap();
        assert!(hermitian_eigenvalues(&pt).into_iter().all(|x| x > -1e-10));
        assert_abs_diff_eq!(logarithmic_negativity(&rho).unwrap(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn partial_transpose_is_involution() {
        let grid = Array2::from_shape_fn((3, 4), |(n, m)| C64::new((n * m) as f64 + 1.0, n as f64 - 0.5 * m as f64));
        let rho = to_density(&TwoModeState::from_coeffs(grid).unwrap().to_multimode());
        let once = DensityOperator::from_matrix(&[3, 4], partial_transpose(&rho).unwrap()).unwrap();
        let twice = partial_transpose(&once).unwrap();
        assert_eq!(twice, rho.matrix());
        assert_abs_diff_eq!(once.trace().re, 1.0, epsilon = 1e-14);
        assert!(once.hermiticity_error() < 1e-15);
    }

    #[test]
    fn coherent_product_same_count_is_closed_poisson_sum() {
        let s = product(1.0, 1.0, 30);
        let jd = joint_distribution(&s).unwrap();
        let mut direct = 0.0;
        let mut fact = 1.0;
        for n in 0..30 {
            if n > 0 {
                fact *= n as f64;
            }
            direct += ((-1.0f64).exp() / fact).powi(2);
        }
        assert_abs_diff_eq!(jd.same_count_prob(), direct, epsilon = 1e-12);
    }

    #[test]
    fn tmsv_closed_form_negativity() {
        let lam: f64 = 0.45;
        let s = tmsv(SqueezingParameter::real(lam).unwrap(), 60).unwrap();
        let want = ((1.0 + lam) / (1.0 - lam)).log2();
        assert_abs_diff_eq!(logarithmic_negativity_pure(&s), want, epsilon = 1e-10);
        let small = tmsv(SqueezingParameter::real(lam).unwrap(), 30).unwrap();
        let rho = to_density(&small.to_multimode());
        assert_abs_diff_eq!(logarithmic_negativity(&rho).unwrap(), logarithmic_negativity_pure(&small), epsilon = 1e-8);
        assert_abs_diff_eq!(joint_distribution(&s).unwrap().same_count_prob(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn negativity_invariant_under_local_phases() {
        let grid = Array2::from_shape_fn((4, 4), |(n, m)| C64::new(1.0 / (1.0 + n as f64 + 2.0 * m as f64), (n as f64 - m as f64) * 0.1));
        let psi = TwoModeState::from_coeffs(grid).unwrap().to_multimode();
        let rotated = phase_shift(&phase_shift(&psi, 0, 0.7).unwrap(), 1, -2.1).unwrap();
        let a = logarithmic_negativity(&to_density(&psi)).unwrap();
        let b = logarithmic_negativity(&to_density(&rotated)).unwrap();
        assert_abs_diff_eq!(a, b, epsilon = 1e-10);
    }

    #[test]
    fn negativity_non_increasing_under_loss() {
        let hom: MultiModeState = hom_state(3).unwrap().to_multimode();
        let mut prev = f64::INFINITY;
        for k in 0..=10 {
            let eta = 1.0 - k as f64 / 10.0;
            let rho = loss_channel(&to_density(&hom), 0, eta).unwrap();
            let en = logarithmic_negativity(&rho).unwrap();
            assert!(en <= prev + 1e-8);
            prev = en;
        }
    }

    #[test]
    fn metric_edges() {
        let hom = joint_distribution(&hom_state(3).unwrap()).unwrap();
        let reference = uncorrelated_reference(1.0, 1.0).unwrap();
        assert_eq!(discorrelation_metric(&hom, &reference).unwrap().value, 1.0);
        assert_eq!(discorrelation_metric(&reference, &reference).unwrap().value, 0.0);
        let degenerate = JointDistribution::from_probabilities(ndarray::array![[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert!(matches!(discorrelation_metric(&hom, &degenerate), Err(Error::DegenerateReference(_))));
    }

    #[test]
    fn reference_has_requested_means() {
        let r = uncorrelated_reference(4.5, 0.3).unwrap();
        assert_abs_diff_eq!(r.mean_a(), 4.5, epsilon = 1e-12);
        assert_abs_diff_eq!(r.mean_b(), 0.3, epsilon = 1e-12);
    }

    #[test]
    fn distribution_validation() {
        assert!(JointDistribution::from_probabilities(ndarray::array![[0.5, 0.4]]).is_err());
        assert!(JointDistribution::from_probabilities(ndarray::array![[1.1, -0.1]]).is_err());
    }
}
