//! Truncated Fock-space states and operators.
//!
//! Every coefficient container is dense. Index `n` along an axis is the
//! photon occupation of that mode, so a two-mode grid entry `[n, m]` is the
//! amplitude of `|n, m>`. Multi-mode tensors and density operators flatten
//! their indices row-major, with the first mode most significant.

use ndarray::{Array1, Array2, ArrayD, Axis, Dimension, IxDyn};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Largest number of modes any state in this crate may carry.
pub const MAX_MODES: usize = 4;

const ZERO_NORM: f64 = 1e-300;

/// Number of Fock levels kept per mode (occupations `0..dim`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncationDim(usize);

impl TruncationDim {
    pub const MIN: usize = 2;

    pub fn new(dim: usize) -> Result<Self> {
        if dim < Self::MIN {
            return Err(Error::InvalidDimension { dim, min: Self::MIN });
        }
        Ok(Self(dim))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl From<TruncationDim> for usize {
    fn from(d: TruncationDim) -> usize {
        d.0
    }
}

/// Rescaling to unit norm (pure states) or unit trace (density operators).
///
/// The second element of the returned pair is the weight the truncation cut
/// off, `max(0, 1 - norm^2)`: an input whose amplitudes came from a
/// normalized infinite expansion reports its missing tail, anything already
/// of norm at least one reports zero.
pub trait Normalize: Sized {
    fn normalize(self) -> Result<(Self, f64)>;
}

fn sum_sqr<'a>(it: impl Iterator<Item = &'a C64>) -> f64 {
    it.map(|c| c.norm_sqr()).sum()
}

/// Scale factor that brings `norm_sq` to one, or `None` when it is already
/// one to within rounding (keeps normalization exactly idempotent).
fn rescale_factor(norm_sq: f64) -> Result<Option<f64>> {
    if !(norm_sq.sqrt() >= ZERO_NORM) {
        return Err(Error::ZeroNorm { norm: norm_sq.sqrt() });
    }
    if (norm_sq - 1.0).abs() <= 4.0 * f64::EPSILON {
        Ok(None)
    } else {
        Ok(Some(norm_sq.sqrt().recip()))
    }
}

fn combine_discarded(a: f64, b: f64) -> f64 {
    1.0 - (1.0 - a) * (1.0 - b)
}

fn check_dims(dims: &[usize]) -> Result<()> {
    if dims.is_empty() || dims.len() > MAX_MODES {
        return Err(Error::RankOverflow { rank: dims.len(), max: MAX_MODES });
    }
    for &d in dims {
        TruncationDim::new(d)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------

/// Pure state of one mode.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleModeState {
    amps: Array1<C64>,
    discarded: f64,
}

impl SingleModeState {
    /// Normalizes `amps` and records the truncated tail weight.
    pub fn from_amplitudes(amps: Array1<C64>) -> Result<Self> {
        TruncationDim::new(amps.len())?;
        let (s, _) = Self { amps, discarded: 0.0 }.normalize()?;
        Ok(s)
    }

    /// Wraps `amps` as-is. The squared norm is left to carry probability,
    /// e.g. the raw truncated expansion of an infinite-dimensional state.
    pub fn from_amplitudes_unnormalized(amps: Array1<C64>) -> Result<Self> {
        TruncationDim::new(amps.len())?;
        Ok(Self { amps, discarded: 0.0 })
    }

    pub fn amps(&self) -> &Array1<C64> {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    /// Probability weight lost to truncation while this state was built.
    pub fn discarded(&self) -> f64 {
        self.discarded
    }

    pub fn probabilities(&self) -> Array1<f64> {
        self.amps.mapv(|c| c.norm_sqr())
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.probabilities().iter().enumerate().map(|(n, p)| n as f64 * p).sum()
    }

    pub fn photon_number_variance(&self) -> f64 {
        let mean = self.mean_photon_number();
        self.probabilities()
            .iter()
            .enumerate()
            .map(|(n, p)| (n as f64 - mean).powi(2) * p)
            .sum()
    }

    /// Zero-padded copy with `dim` levels. Fails if `dim` would cut populated levels.
    pub fn padded(&self, dim: usize) -> Result<Self> {
        if dim < self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot pad a dim-{} state down to {dim}",
                self.dim()
            )));
        }
        let mut amps = Array1::zeros(dim);
        amps.slice_mut(ndarray::s![..self.dim()]).assign(&self.amps);
        Ok(Self { amps, discarded: self.discarded })
    }
}

impl Normalize for SingleModeState {
    fn normalize(mut self) -> Result<(Self, f64)> {
        let norm_sq = sum_sqr(self.amps.iter());
        let cut = (1.0 - norm_sq).max(0.0);
        if let Some(f) = rescale_factor(norm_sq)? {
            self.amps.mapv_inplace(|c| c * f);
        }
        self.discarded = combine_discarded(self.discarded, cut);
        Ok((self, cut))
    }
}

// ---------------------------------------------------------------------------

/// Pure state of two modes; `coeffs[[n, m]] = <n, m|psi>`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    coeffs: Array2<C64>,
    discarded: f64,
}

impl TwoModeState {
    pub fn from_coeffs(coeffs: Array2<C64>) -> Result<Self> {
        check_dims(coeffs.shape())?;
        let (s, _) = Self { coeffs, discarded: 0.0 }.normalize()?;
        Ok(s)
    }

    pub(crate) fn with_discarded(mut self, discarded: f64) -> Self {
        self.discarded = discarded;
        self
    }

    /// Product state `a ⊗ b`.
    pub fn product(a: &SingleModeState, b: &SingleModeState) -> Self {
        let coeffs = Array2::from_shape_fn((a.dim(), b.dim()), |(n, m)| a.amps[n] * b.amps[m]);
        Self { coeffs, discarded: combine_discarded(a.discarded, b.discarded) }
    }

    pub fn coeffs(&self) -> &Array2<C64> {
        &self.coeffs
    }

    pub fn dims(&self) -> (usize, usize) {
        self.coeffs.dim()
    }

    pub fn discarded(&self) -> f64 {
        self.discarded
    }

    pub fn probabilities(&self) -> Array2<f64> {
        self.coeffs.mapv(|c| c.norm_sqr())
    }

    /// Drops trailing levels of each mode whose marginal weight is below
    /// `tol`, then renormalizes. The dropped weight is added to `discarded`.
    pub fn compact(&self, tol: f64) -> Result<Self> {
        let probs = self.probabilities();
        let keep = |axis: usize| {
            let marg = probs.sum_axis(Axis(axis));
            marg.iter().rposition(|&p| p > tol).map_or(1, |i| i + 1).max(TruncationDim::MIN)
        };
        let (ka, kb) = (keep(1), keep(0));
        let coeffs = self.coeffs.slice(ndarray::s![..ka, ..kb]).to_owned();
        Self { coeffs, discarded: self.discarded }.normalize().map(|(s, _)| s)
    }

    pub fn to_multimode(&self) -> MultiModeState {
        MultiModeState { coeffs: self.coeffs.clone().into_dyn(), discarded: self.discarded }
    }
}

impl Normalize for TwoModeState {
    fn normalize(mut self) -> Result<(Self, f64)> {
        let norm_sq = sum_sqr(self.coeffs.iter());
        let cut = (1.0 - norm_sq).max(0.0);
        if let Some(f) = rescale_factor(norm_sq)? {
            self.coeffs.mapv_inplace(|c| c * f);
        }
        self.discarded = combine_discarded(self.discarded, cut);
        Ok((self, cut))
    }
}

// ---------------------------------------------------------------------------

/// Pure state of up to [`MAX_MODES`] modes, one tensor axis per mode.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiModeState {
    coeffs: ArrayD<C64>,
    discarded: f64,
}

impl MultiModeState {
    pub fn from_tensor(coeffs: ArrayD<C64>) -> Result<Self> {
        check_dims(coeffs.shape())?;
        let (s, _) = Self { coeffs, discarded: 0.0 }.normalize()?;
        Ok(s)
    }

    /// Wraps a tensor without normalizing it.
    pub fn from_tensor_unnormalized(coeffs: ArrayD<C64>) -> Result<Self> {
        check_dims(coeffs.shape())?;
        Ok(Self { coeffs, discarded: 0.0 })
    }

    pub(crate) fn from_tensor_unchecked(coeffs: ArrayD<C64>, discarded: f64) -> Self {
        Self { coeffs, discarded }
    }

    pub fn coeffs(&self) -> &ArrayD<C64> {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.ndim()
    }

    pub fn dims(&self) -> &[usize] {
        self.coeffs.shape()
    }

    pub fn discarded(&self) -> f64 {
        self.discarded
    }

    pub fn norm_sqr(&self) -> f64 {
        sum_sqr(self.coeffs.iter())
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", self.dims(), other.dims())));
        }
        Ok(self.coeffs.iter().zip(other.coeffs.iter()).map(|(a, b)| a.conj() * b).sum())
    }

    /// Tensor product `self ⊗ other`; the modes of `other` follow those of `self`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let rank = self.rank() + other.rank();
        if rank > MAX_MODES {
            return Err(Error::RankOverflow { rank, max: MAX_MODES });
        }
        let shape: Vec<usize> = self.dims().iter().chain(other.dims()).copied().collect();
        let data: Vec<C64> = self
            .coeffs
            .iter()
            .flat_map(|a| other.coeffs.iter().map(move |b| a * b))
            .collect();
        let coeffs = ArrayD::from_shape_vec(IxDyn(&shape), data).expect("shape matches product");
        Ok(Self { coeffs, discarded: combine_discarded(self.discarded, other.discarded) })
    }

    /// Zero-pads every mode to the given dimensions.
    pub fn padded(&self, dims: &[usize]) -> Result<Self> {
        if dims.len() != self.rank() || dims.iter().zip(self.dims()).any(|(&new, &old)| new < old) {
            return Err(Error::DimensionMismatch(format!(
                "cannot pad {:?} to {dims:?}",
                self.dims()
            )));
        }
        let mut coeffs = ArrayD::zeros(IxDyn(dims));
        let region: Vec<ndarray::SliceInfoElem> =
            self.dims().iter().map(|&d| ndarray::SliceInfoElem::from(0..d)).collect();
        coeffs.slice_mut(region.as_slice()).assign(&self.coeffs);
        Ok(Self { coeffs, discarded: self.discarded })
    }

    pub fn to_two_mode(&self) -> Result<TwoModeState> {
        if self.rank() != 2 {
            return Err(Error::DimensionMismatch(format!("expected 2 modes, found {}", self.rank())));
        }
        let coeffs = self
            .coeffs
            .clone()
            .into_dimensionality::<ndarray::Ix2>()
            .expect("rank checked");
        Ok(TwoModeState { coeffs, discarded: self.discarded })
    }

    pub fn to_single_mode(&self) -> Result<SingleModeState> {
        if self.rank() != 1 {
            return Err(Error::DimensionMismatch(format!("expected 1 mode, found {}", self.rank())));
        }
        let amps = self.coeffs.clone().into_dimensionality::<ndarray::Ix1>().expect("rank checked");
        Ok(SingleModeState { amps, discarded: self.discarded })
    }

    /// Distribution of the total photon number over all modes.
    pub fn total_photon_distribution(&self) -> Vec<f64> {
        let max: usize = self.dims().iter().map(|d| d - 1).sum();
        let mut out = vec![0.0; max + 1];
        for (idx, c) in self.coeffs.indexed_iter() {
            let total: usize = idx.slice().iter().sum();
            out[total] += c.norm_sqr();
        }
        out
    }
}

impl Normalize for MultiModeState {
    fn normalize(mut self) -> Result<(Self, f64)> {
        let norm_sq = self.norm_sqr();
        let cut = (1.0 - norm_sq).max(0.0);
        if let Some(f) = rescale_factor(norm_sq)? {
            self.coeffs.mapv_inplace(|c| c * f);
        }
        self.discarded = combine_discarded(self.discarded, cut);
        Ok((self, cut))
    }
}

impl From<SingleModeState> for MultiModeState {
    fn from(s: SingleModeState) -> Self {
        Self { coeffs: s.amps.into_dyn(), discarded: s.discarded }
    }
}

impl From<TwoModeState> for MultiModeState {
    fn from(s: TwoModeState) -> Self {
        Self { coeffs: s.coeffs.into_dyn(), discarded: s.discarded }
    }
}

// ---------------------------------------------------------------------------

/// Density operator on up to [`MAX_MODES`] truncated modes.
///
/// Stored as a tensor with axes `(ket_0, .., ket_k, bra_0, .., bra_k)`; the
/// flattened matrix view indexes rows and columns by the row-major
/// flattening of the mode occupations.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    data: ArrayD<C64>,
    modes: usize,
    discarded: f64,
}

impl DensityOperator {
    /// Builds an operator from its flattened matrix. The matrix must be
    /// square with side equal to the product of `dims`; it is not normalized.
    pub fn from_matrix(dims: &[usize], matrix: Array2<C64>) -> Result<Self> {
        check_dims(dims)?;
        let side: usize = dims.iter().product();
        if matrix.dim() != (side, side) {
            return Err(Error::DimensionMismatch(format!(
                "matrix {:?} does not match modes {dims:?}",
                matrix.dim()
            )));
        }
        let shape: Vec<usize> = dims.iter().chain(dims).copied().collect();
        let data = matrix
            .as_standard_layout()
            .into_owned()
            .into_shape_with_order(IxDyn(&shape))
            .expect("side matches");
        Ok(Self { data, modes: dims.len(), discarded: 0.0 })
    }

    pub(crate) fn from_tensor_unchecked(data: ArrayD<C64>, discarded: f64) -> Self {
        let modes = data.ndim() / 2;
        Self { data, modes, discarded }
    }

    pub fn tensor(&self) -> &ArrayD<C64> {
        &self.data
    }

    pub fn into_tensor(self) -> ArrayD<C64> {
        self.data
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn dims(&self) -> &[usize] {
        &self.data.shape()[..self.modes]
    }

    pub fn side(&self) -> usize {
        self.dims().iter().product()
    }

    pub fn discarded(&self) -> f64 {
        self.discarded
    }

    /// Flattened `side x side` matrix.
    pub fn matrix(&self) -> Array2<C64> {
        let side = self.side();
        self.data
            .as_standard_layout()
            .into_owned()
            .into_shape_with_order((side, side))
            .expect("square by construction")
    }

    pub fn trace(&self) -> C64 {
        let m = self.matrix();
        m.diag().sum()
    }

    pub fn purity(&self) -> f64 {
        let m = self.matrix();
        m.dot(&m).diag().sum().re
    }

    /// Largest `|rho - rho^dagger|` entry.
    pub fn hermiticity_error(&self) -> f64 {
        let m = self.matrix();
        m.indexed_iter()
            .map(|((i, j), c)| (c - m[[j, i]].conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Diagonal in the number basis, reshaped to one axis per mode.
    pub fn populations(&self) -> ArrayD<f64> {
        let diag: Vec<f64> = self.matrix().diag().iter().map(|c| c.re).collect();
        ArrayD::from_shape_vec(IxDyn(self.dims()), diag).expect("diag has side entries")
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor_product(&self, other: &Self) -> Result<Self> {
        let rank = self.modes + other.modes;
        if rank > MAX_MODES {
            return Err(Error::RankOverflow { rank, max: MAX_MODES });
        }
        let a = self.matrix();
        let b = other.matrix();
        let (sa, sb) = (a.nrows(), b.nrows());
        let m = Array2::from_shape_fn((sa * sb, sa * sb), |(i, j)| {
            a[[i / sb, j / sb]] * b[[i % sb, j % sb]]
        });
        let dims: Vec<usize> = self.dims().iter().chain(other.dims()).copied().collect();
        let mut out = Self::from_matrix(&dims, m)?;
        out.discarded = combine_discarded(self.discarded, other.discarded);
        Ok(out)
    }

    /// Two-mode analogue of [`TwoModeState::compact`]: trailing levels whose
    /// marginal population is below `tol` are dropped and the trace restored.
    pub fn compact(&self, tol: f64) -> Result<Self> {
        self.expect_two_modes()?;
        let pops = self.populations();
        let keep = |axis: usize| {
            let marg = pops.sum_axis(Axis(axis));
            marg.as_slice().expect("standard layout").iter().rposition(|&p| p > tol).map_or(1, |i| i + 1).max(TruncationDim::MIN)
        };
        let (ka, kb) = (keep(1), keep(0));
        let data = self.data.slice(ndarray::s![..ka, ..kb, ..ka, ..kb]).to_owned().into_dyn();
        Self { data, modes: 2, discarded: self.discarded }.normalize().map(|(r, _)| r)
    }

    pub fn expect_two_modes(&self) -> Result<()> {
        if self.modes != 2 {
            return Err(Error::DimensionMismatch(format!("expected 2 modes, found {}", self.modes)));
        }
        Ok(())
    }
}

impl Normalize for DensityOperator {
    fn normalize(mut self) -> Result<(Self, f64)> {
        let tr = self.trace().re;
        let cut = (1.0 - tr).max(0.0);
        if !(tr >= ZERO_NORM) {
            return Err(Error::ZeroNorm { norm: tr });
        }
        if (tr - 1.0).abs() > 4.0 * f64::EPSILON {
            let f = tr.recip();
            self.data.mapv_inplace(|c| c * f);
        }
        self.discarded = combine_discarded(self.discarded, cut);
        Ok((self, cut))
    }
}

/// `|psi><psi|` for a pure state of any rank.
pub fn to_density(psi: &MultiModeState) -> DensityOperator {
    let dims = psi.dims().to_vec();
    let v: Vec<C64> = psi.coeffs.iter().copied().collect();
    let side = v.len();
    let data: Vec<C64> = v.iter().flat_map(|a| v.iter().map(move |b| a * b.conj())).collect();
    let shape: Vec<usize> = dims.iter().chain(&dims).copied().collect();
    debug_assert_eq!(data.len(), side * side);
    let data = ArrayD::from_shape_vec(IxDyn(&shape), data).expect("outer product shape");
    DensityOperator { data, modes: dims.len(), discarded: psi.discarded }
}

fn validate_keep(keep: &[usize], rank: usize) -> Result<Vec<usize>> {
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.is_empty() || sorted.len() != keep.len() || sorted.iter().any(|&m| m >= rank) {
        return Err(Error::BadModeSet { modes: keep.to_vec(), rank });
    }
    Ok(sorted)
}

/// Reduced density operator on the modes in `keep` (order preserved as sorted).
pub fn partial_trace(rho: &DensityOperator, keep: &[usize]) -> Result<DensityOperator> {
    let k = rho.modes;
    let keep = validate_keep(keep, k)?;
    let traced: Vec<usize> = (0..k).filter(|m| !keep.contains(m)).collect();
    if traced.is_empty() {
        return Ok(rho.clone());
    }
    let dims = rho.dims().to_vec();
    let kept_side: usize = keep.iter().map(|&m| dims[m]).product();
    let traced_side: usize = traced.iter().map(|&m| dims[m]).product();

    let order: Vec<usize> = keep
        .iter()
        .chain(&traced)
        .copied()
        .chain(keep.iter().chain(&traced).map(|&m| m + k))
        .collect();
    let permuted = rho.data.view().permuted_axes(IxDyn(&order));
    let grouped = permuted
        .as_standard_layout()
        .into_owned()
        .into_shape_with_order((kept_side, traced_side, kept_side, traced_side))
        .expect("sizes agree");

    let reduced = Array2::from_shape_fn((kept_side, kept_side), |(i, j)| {
        (0..traced_side).map(|t| grouped[[i, t, j, t]]).sum()
    });
    let kept_dims: Vec<usize> = keep.iter().map(|&m| dims[m]).collect();
    let mut out = DensityOperator::from_matrix(&kept_dims, reduced)?;
    out.discarded = rho.discarded;
    Ok(out)
}

/// Reduced density operator of a pure state, computed without forming `|psi><psi|`.
pub fn partial_trace_pure(psi: &MultiModeState, keep: &[usize]) -> Result<DensityOperator> {
    let k = psi.rank();
    let keep = validate_keep(keep, k)?;
    let traced: Vec<usize> = (0..k).filter(|m| !keep.contains(m)).collect();
    let dims = psi.dims().to_vec();
    let kept_side: usize = keep.iter().map(|&m| dims[m]).product();
    let traced_side: usize = traced.iter().map(|&m| dims[m]).product();
    let order: Vec<usize> = keep.iter().chain(&traced).copied().collect();
    let v = psi
        .coeffs
        .view()
        .permuted_axes(IxDyn(&order))
        .as_standard_layout()
        .into_owned()
        .into_shape_with_order((kept_side, traced_side))
        .expect("sizes agree");
    let conj = v.mapv(|c| c.conj());
    let reduced = v.dot(&conj.t());
    let kept_dims: Vec<usize> = keep.iter().map(|&m| dims[m]).collect();
    let mut out = DensityOperator::from_matrix(&kept_dims, reduced)?;
    out.discarded = psi.discarded;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::array;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn basis(n: usize, dim: usize) -> SingleModeState {
        let mut a = Array1::zeros(dim);
        a[n] = c(1.0);
        SingleModeState::from_amplitudes(a).unwrap()
    }

    #[test]
    fn dim_below_two_rejected() {
        assert!(matches!(TruncationDim::new(1), Err(Error::InvalidDimension { .. })));
        assert_eq!(TruncationDim::new(2).unwrap().get(), 2);
    }

    #[test]
    fn normalize_scalar_rescale() {
        let s = SingleModeState { amps: array![c(2.0), c(0.0), c(0.0)], discarded: 0.0 };
        let (s, cut) = s.normalize().unwrap();
        assert_eq!(s.amps()[0], c(1.0));
        assert_eq!(cut, 0.0);
    }

    #[test]
    fn normalize_equal_superposition() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let (s, cut) = SingleModeState { amps: array![c(h), c(h)], discarded: 0.0 }.normalize().unwrap();
        assert_abs_diff_eq!(sum_sqr(s.amps().iter()), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(cut, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn normalize_rejects_zero() {
        let s = SingleModeState { amps: Array1::zeros(3), discarded: 0.0 };
        assert!(matches!(s.normalize(), Err(Error::ZeroNorm { .. })));
        let rho = DensityOperator::from_matrix(&[2], Array2::zeros((2, 2))).unwrap();
        assert!(matches!(rho.normalize(), Err(Error::ZeroNorm { .. })));
    }

    #[test]
    fn tensor_product_of_basis_states() {
        let psi = MultiModeState::from(basis(1, 3)).tensor(&basis(0, 3).into()).unwrap();
        let two = psi.to_two_mode().unwrap();
        assert_eq!(two.coeffs()[[1, 0]], c(1.0));
        assert_abs_diff_eq!(two.probabilities().sum(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn tensor_rank_overflow() {
        let one: MultiModeState = basis(0, 2).into();
        let four = one.tensor(&one).unwrap().tensor(&one).unwrap().tensor(&one).unwrap();
        assert_eq!(four.rank(), 4);
        assert!(matches!(four.tensor(&one), Err(Error::RankOverflow { rank: 5, .. })));
    }

    #[test]
    fn partial_trace_of_basis_product() {
        let psi = MultiModeState::from(basis(1, 3)).tensor(&basis(0, 3).into()).unwrap();
        let rho = to_density(&psi);
        let a = partial_trace(&rho, &[0]).unwrap().matrix();
        let b = partial_trace(&rho, &[1]).unwrap().matrix();
        assert_eq!(a[[1, 1]], c(1.0));
        assert_eq!(b[[0, 0]], c(1.0));
        assert_abs_diff_eq!(a.diag().sum().re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn partial_trace_rejects_bad_sets() {
        let psi = MultiModeState::from(basis(1, 3)).tensor(&basis(0, 3).into()).unwrap();
        let rho = to_density(&psi);
        assert!(matches!(partial_trace(&rho, &[]), Err(Error::BadModeSet { .. })));
        assert!(matches!(partial_trace(&rho, &[2]), Err(Error::BadModeSet { .. })));
        assert!(matches!(partial_trace(&rho, &[0, 0]), Err(Error::BadModeSet { .. })));
        assert_eq!(partial_trace(&rho, &[0, 1]).unwrap(), rho);
    }

    #[test]
    fn partial_trace_of_correlated_state_is_thermal() {
        // sum_n lambda^n |n,n>, traced over mode 2, by direct summation.
        let lambda: f64 = 0.6;
        let dim = 12;
        let grid = Array2::from_shape_fn((dim, dim), |(n, m)| if n == m { c(lambda.powi(n as i32)) } else { c(0.0) });
        let psi = TwoModeState::from_coeffs(grid).unwrap().to_multimode();
        let reduced = partial_trace(&to_density(&psi), &[0]).unwrap().matrix();
        let z: f64 = (0..dim).map(|n| lambda.powi(2 * n as i32)).sum();
        for n in 0..dim {
            for m in 0..dim {
                let want = if n == m { lambda.powi(2 * n as i32) / z } else { 0.0 };
                assert_abs_diff_eq!(reduced[[n, m]].re, want, epsilon = 1e-14);
                assert_abs_diff_eq!(reduced[[n, m]].im, 0.0, epsilon = 1e-14);
            }
        }
        let fast = partial_trace_pure(&psi, &[0]).unwrap().matrix();
        assert!(fast.iter().zip(reduced.iter()).all(|(a, b)| (a - b).norm() < 1e-14));
    }

    #[test]
    fn to_density_vacuum_and_hom_support() {
        let vac = MultiModeState::from(basis(0, 3)).tensor(&basis(0, 3).into()).unwrap();
        let m = to_density(&vac).matrix();
        assert_eq!(m[[0, 0]], c(1.0));
        assert_eq!(m.iter().filter(|x| x.norm() > 0.0).count(), 1);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut grid = Array2::zeros((3, 3));
        grid[[2, 0]] = c(h);
        grid[[0, 2]] = c(-h);
        let hom = TwoModeState::from_coeffs(grid).unwrap().to_multimode();
        let m = to_density(&hom).matrix();
        let support: Vec<(usize, usize)> =
            m.indexed_iter().filter(|(_, x)| x.norm() > 1e-15).map(|(ij, _)| ij).collect();
        // |2,0> -> 6, |0,2> -> 2 in the flattened basis.
        assert_eq!(support, vec![(2, 2), (2, 6), (6, 2), (6, 6)]);
    }

    #[test]
    fn density_tensor_product_matches_pure_product() {
        let a: MultiModeState = basis(1, 3).into();
        let b: MultiModeState = basis(2, 3).into();
        let lhs = to_density(&a).tensor_product(&to_density(&b)).unwrap();
        let rhs = to_density(&a.tensor(&b).unwrap());
        assert_eq!(lhs.matrix(), rhs.matrix());
    }

    #[test]
    fn density_compact_matches_pure_compact() {
        let a = SingleModeState::from_amplitudes(Array1::from(vec![
            C64::new(0.8, 0.0),
            C64::new(0.0, 0.6),
            C64::new(1e-9, 0.0),
            C64::new(0.0, 0.0),
        ]))
        .unwrap();
        let psi = TwoModeState::product(&a, &a);
        let pure = to_density(&psi.compact(1e-12).unwrap().to_multimode());
        let mixed = to_density(&psi.to_multimode()).compact(1e-12).unwrap();
        assert_eq!(mixed.dims(), &[2, 2]);
        let err = pure.matrix().iter().zip(mixed.matrix().iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        assert!(err < 1e-15);
    }

    #[test]
    fn compact_drops_empty_levels() {
        let mut grid = Array2::zeros((6, 5));
        grid[[1, 0]] = c(1.0);
        grid[[0, 2]] = c(1.0);
        let s = TwoModeState::from_coeffs(grid).unwrap().compact(1e-14).unwrap();
        assert_eq!(s.dims(), (2, 3));
    }

    #[test]
    fn padding_preserves_state() {
        let a: MultiModeState = basis(1, 3).into();
        let p = a.padded(&[5]).unwrap();
        assert_eq!(p.dims(), &[5]);
        assert_eq!(p.coeffs()[[1]], c(1.0));
        assert!(a.padded(&[2]).is_err());
    }
}
