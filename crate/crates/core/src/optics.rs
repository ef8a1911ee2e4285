//! Beam splitters, photon loss and single-photon heralding.
//!
//! Beam splitters act with real amplitudes `t, r`:
//!
//! ```text
//! a†  ->  t a† - r b†
//! b†  ->  t b† + r a†
//! ```
//!
//! where `a` is the first mode of the pair. With this convention a single
//! photon in the first port displaced by a coherent state in the second port
//! comes out with the antisymmetric `(n - m)` number-basis amplitudes, and
//! `|1,1>` bunches into `(|2,0> - |0,2>)/sqrt(2)`.
//!
//! The unitary is applied per photon-number sector from exact matrix elements;
//! no operator exponentials are involved.

use ndarray::{Array3, ArrayD, Axis, IxDyn};

use crate::error::{Error, Result};
use crate::fock::{DensityOperator, MultiModeState, Normalize, C64};
use crate::special::ln_binomial;

const PROB_ZERO: f64 = 1e-300;

/// Real transmission and reflection amplitudes with `t^2 + r^2 = 1`, `0 <= t <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitterParams {
    t: f64,
    r: f64,
}

impl BeamSplitterParams {
    /// Transmissivity `t`, reflectivity `r = sqrt(1 - t^2)`.
    pub fn new(t: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidParameter(format!("transmissivity must lie in [0, 1], got {t}")));
        }
        Ok(Self { t, r: (1.0 - t * t).max(0.0).sqrt() })
    }

    /// Explicit pair; `r` may be negative (the inverse splitter).
    pub fn from_amplitudes(t: f64, r: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) || ((t * t + r * r) - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("need 0 <= t <= 1 and t^2 + r^2 = 1, got t={t}, r={r}")));
        }
        Ok(Self { t, r })
    }

    pub fn balanced() -> Self {
        Self { t: std::f64::consts::FRAC_1_SQRT_2, r: std::f64::consts::FRAC_1_SQRT_2 }
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// The splitter undoing this one.
    pub fn inverse(&self) -> Self {
        Self { t: self.t, r: -self.r }
    }
}

/// Where photon loss enters the heralded discorrelation circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LossPoint {
    /// On both single photons before they bunch into the HOM pair.
    AncillaPreparation,
    /// On both heralding modes, between their beam splitters and detectors.
    BeforeHeraldDetectors,
    /// On both output modes after heralding.
    AfterDiscorrelation,
}

impl LossPoint {
    pub const ALL: [LossPoint; 3] =
        [LossPoint::AncillaPreparation, LossPoint::BeforeHeraldDetectors, LossPoint::AfterDiscorrelation];
}

/// Matrix elements `<m1, N-m1| U |n1, n2>` for every sector `N <= max_photons`.
///
/// Columns are built photon by photon, `U|n1,n2> = (t a† - r b†) U|n1-1,n2> / sqrt(n1)`,
/// which keeps every intermediate vector normalized and avoids the
/// cancellations of the closed binomial sum.
#[derive(Debug, Clone)]
pub struct SectorTable {
    bs: BeamSplitterParams,
    // sectors[N][n1][m1]
    sectors: Vec<Vec<Vec<f64>>>,
}

impl SectorTable {
    pub fn new(bs: BeamSplitterParams, max_photons: usize) -> Self {
        let (t, r) = (bs.t, bs.r);
        let mut sectors: Vec<Vec<Vec<f64>>> = vec![vec![vec![1.0]]];
        for total in 1..=max_photons {
            let mut sector = Vec::with_capacity(total + 1);
            for n1 in 0..=total {
                let n2 = total - n1;
                let mut col = vec![0.0; total + 1];
                if n1 > 0 {
                    let prev = &sectors[total - 1][n1 - 1];
                    for (m1, &amp) in prev.iter().enumerate() {
                        let m2 = total - 1 - m1;
                        col[m1 + 1] += t * ((m1 + 1) as f64).sqrt() * amp;
                        col[m1] -= r * ((m2 + 1) as f64).sqrt() * amp;
                    }
                    let s = (n1 as f64).sqrt();
                    col.iter_mut().for_each(|c| *c /= s);
                } else {
                    let prev = &sectors[total - 1][0];
                    for (m1, &amp) in prev.iter().enumerate() {
                        let m2 = total - 1 - m1;
                        col[m1] += t * ((m2 + 1) as f64).sqrt() * amp;
                        col[m1 + 1] += r * ((m1 + 1) as f64).sqrt() * amp;
                    }
                    let s = (n2 as f64).sqrt();
                    col.iter_mut().for_each(|c| *c /= s);
                }
                sector.push(col);
            }
            sectors.push(sector);
        }
        Self { bs, sectors }
    }

    pub fn params(&self) -> BeamSplitterParams {
        self.bs
    }

    pub fn max_photons(&self) -> usize {
        self.sectors.len() - 1
    }

    /// Output amplitudes of `|n1, n2>` indexed by the first-mode occupation.
    pub fn column(&self, n1: usize, n2: usize) -> &[f64] {
        &self.sectors[n1 + n2][n1]
    }

    pub fn amplitude(&self, n1: usize, n2: usize, m1: usize, m2: usize) -> f64 {
        if n1 + n2 != m1 + m2 {
            return 0.0;
        }
        self.column(n1, n2)[m1]
    }
}

/// `<m1, m2| U_BS |n1, n2>`; exactly zero unless photon number is conserved.
pub fn bs_fock_amplitude(n1: usize, n2: usize, m1: usize, m2: usize, bs: BeamSplitterParams) -> C64 {
    if n1 + n2 != m1 + m2 {
        return C64::new(0.0, 0.0);
    }
    C64::new(SectorTable::new(bs, n1 + n2).amplitude(n1, n2, m1, m2), 0.0)
}

fn check_pair(pair: (usize, usize), modes: usize) -> Result<()> {
    let (i, j) = pair;
    if i == j || i >= modes || j >= modes {
        return Err(Error::BadModeSet { modes: vec![i, j], rank: modes });
    }
    Ok(())
}

/// Moves `axes` to the front and flattens the rest into one trailing axis.
fn gather(data: &ArrayD<C64>, axes: [usize; 2]) -> (Array3<C64>, Vec<usize>) {
    let nd = data.ndim();
    let mut order: Vec<usize> = axes.to_vec();
    order.extend((0..nd).filter(|a| !axes.contains(a)));
    let (d0, d1) = (data.shape()[axes[0]], data.shape()[axes[1]]);
    let rest = data.len() / (d0 * d1);
    let arr = data
        .view()
        .permuted_axes(IxDyn(&order))
        .as_standard_layout()
        .into_owned()
        .into_shape_with_order((d0, d1, rest))
        .expect("sizes agree");
    (arr, order)
}

/// Inverse of [`gather`].
fn scatter(arr: Array3<C64>, order: &[usize], shape: &[usize]) -> ArrayD<C64> {
    let permuted_shape: Vec<usize> = order.iter().map(|&a| shape[a]).collect();
    let mut inverse = vec![0; order.len()];
    for (pos, &a) in order.iter().enumerate() {
        inverse[a] = pos;
    }
    arr.into_shape_with_order(IxDyn(&permuted_shape))
        .expect("sizes agree")
        .permuted_axes(IxDyn(&inverse))
        .as_standard_layout()
        .into_owned()
}

/// Applies the splitter to tensor axes `(i, j)`.
fn apply_pair(data: &ArrayD<C64>, i: usize, j: usize, table: &SectorTable) -> Result<ArrayD<C64>> {
    let shape = data.shape().to_vec();
    let (di, dj) = (shape[i], shape[j]);
    let (src, order) = gather(data, [i, j]);
    let mut dst = Array3::<C64>::zeros(src.dim());
    for n1 in 0..di {
        for n2 in 0..dj {
            let lane = src.index_axis(Axis(0), n1);
            let lane = lane.index_axis(Axis(0), n2);
            if lane.iter().all(|c| c.re == 0.0 && c.im == 0.0) {
                continue;
            }
            let total = n1 + n2;
            if total >= di || total >= dj {
                return Err(Error::TruncationOverflow { sector: total, dims: (di, dj) });
            }
            for (m1, &amp) in table.column(n1, n2).iter().enumerate() {
                if amp == 0.0 {
                    continue;
                }
                let mut out = dst.index_axis_mut(Axis(0), m1);
                let mut out = out.index_axis_mut(Axis(0), total - m1);
                out.scaled_add(C64::new(amp, 0.0), &lane);
            }
        }
    }
    Ok(scatter(dst, &order, &shape))
}

fn table_for(dims: (usize, usize), bs: BeamSplitterParams) -> SectorTable {
    SectorTable::new(bs, dims.0.max(dims.1))
}

/// Applies a beam splitter to modes `pair = (a, b)` of a pure state.
///
/// Every populated photon-number sector of the pair must fit below both
/// modes' cutoffs; otherwise the result would silently lose amplitude and
/// `TruncationOverflow` is returned instead.
pub fn beam_splitter(
    state: &MultiModeState,
    pair: (usize, usize),
    bs: BeamSplitterParams,
) -> Result<MultiModeState> {
    check_pair(pair, state.rank())?;
    let dims = (state.dims()[pair.0], state.dims()[pair.1]);
    let table = table_for(dims, bs);
    let out = apply_pair(state.coeffs(), pair.0, pair.1, &table)?;
    Ok(MultiModeState::from_tensor_unchecked(out, state.discarded()))
}

/// `U rho U†` for a beam splitter on modes `pair`.
pub fn beam_splitter_mixed(
    rho: &DensityOperator,
    pair: (usize, usize),
    bs: BeamSplitterParams,
) -> Result<DensityOperator> {
    let k = rho.modes();
    check_pair(pair, k)?;
    let dims = (rho.dims()[pair.0], rho.dims()[pair.1]);
    let table = table_for(dims, bs);
    // The amplitudes are real, so the bra side uses the same table.
    let kets = apply_pair(rho.tensor(), pair.0, pair.1, &table)?;
    let both = apply_pair(&kets, pair.0 + k, pair.1 + k, &table)?;
    Ok(DensityOperator::from_tensor_unchecked(both, rho.discarded()))
}

/// Multiplies the amplitude of occupation `n` in `mode` by `exp(i n phi)`.
pub fn phase_shift(state: &MultiModeState, mode: usize, phi: f64) -> Result<MultiModeState> {
    if mode >= state.rank() {
        return Err(Error::BadModeSet { modes: vec![mode], rank: state.rank() });
    }
    let mut coeffs = state.coeffs().clone();
    for (n, mut lane) in coeffs.axis_iter_mut(Axis(mode)).enumerate() {
        let p = C64::from_polar(1.0, n as f64 * phi);
        lane.mapv_inplace(|c| c * p);
    }
    Ok(MultiModeState::from_tensor_unchecked(coeffs, state.discarded()))
}

/// `sqrt(C(n, k) eta^(n-k) (1-eta)^k)`: amplitude for losing `k` of `n` photons.
fn loss_amplitudes(dim: usize, eta: f64) -> Vec<Vec<f64>> {
    (0..dim)
        .map(|n| {
            (0..=n)
                .map(|k| (ln_binomial(n, k).exp() * eta.powi((n - k) as i32) * (1.0 - eta).powi(k as i32)).sqrt())
                .collect()
        })
        .collect()
}

/// Pure-loss channel on one mode: a splitter of intensity transmission `eta`
/// coupling the mode to vacuum, with the coupled mode traced out.
pub fn loss_channel(rho: &DensityOperator, mode: usize, eta: f64) -> Result<DensityOperator> {
    let k = rho.modes();
    if mode >= k {
        return Err(Error::BadModeSet { modes: vec![mode], rank: k });
    }
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::InvalidParameter(format!("loss transmission must lie in [0, 1], got {eta}")));
    }
    if eta == 1.0 {
        return Ok(rho.clone());
    }
    let shape = rho.tensor().shape().to_vec();
    let d = shape[mode];
    let amps = loss_amplitudes(d, eta);
    let (src, order) = gather(rho.tensor(), [mode, mode + k]);
    let mut dst = Array3::<C64>::zeros(src.dim());
    for n in 0..d {
        for np in 0..d {
            let lane = src.index_axis(Axis(0), n);
            let lane = lane.index_axis(Axis(0), np);
            if lane.iter().all(|c| c.re == 0.0 && c.im == 0.0) {
                continue;
            }
            for lost in 0..=n.min(np) {
                let w = amps[n][lost] * amps[np][lost];
                if w == 0.0 {
                    continue;
                }
                let mut out = dst.index_axis_mut(Axis(0), n - lost);
                let mut out = out.index_axis_mut(Axis(0), np - lost);
                out.scaled_add(C64::new(w, 0.0), &lane);
            }
        }
    }
    Ok(DensityOperator::from_tensor_unchecked(scatter(dst, &order, &shape), rho.discarded()))
}

/// Unnormalized slice of `state` with `mode` holding exactly `n` photons; `mode` is removed.
pub fn project_occupation(state: &MultiModeState, mode: usize, n: usize) -> Result<MultiModeState> {
    if state.rank() < 2 || mode >= state.rank() {
        return Err(Error::BadModeSet { modes: vec![mode], rank: state.rank() });
    }
    if n >= state.dims()[mode] {
        return Err(Error::OutOfRange { n, dim: state.dims()[mode] });
    }
    let slice = state.coeffs().index_axis(Axis(mode), n).to_owned();
    Ok(MultiModeState::from_tensor_unchecked(slice, state.discarded()))
}

/// Projects `mode` onto exactly one photon. Returns the renormalized
/// remaining modes and the probability of the detection.
pub fn herald_single_photon(state: &MultiModeState, mode: usize) -> Result<(MultiModeState, f64)> {
    let slice = project_occupation(state, mode, 1)?;
    let prob = slice.norm_sqr() / state.norm_sqr();
    if !(prob >= PROB_ZERO) {
        return Err(Error::ZeroNorm { norm: prob.sqrt() });
    }
    let (s, _) = slice.normalize()?;
    Ok((MultiModeState::from_tensor_unchecked(s.coeffs().clone(), state.discarded()), prob))
}

/// Unnormalized `<n|rho|n>` on `mode`; `mode` is removed.
pub fn project_occupation_mixed(rho: &DensityOperator, mode: usize, n: usize) -> Result<DensityOperator> {
    let k = rho.modes();
    if k < 2 || mode >= k {
        return Err(Error::BadModeSet { modes: vec![mode], rank: k });
    }
    if n >= rho.dims()[mode] {
        return Err(Error::OutOfRange { n, dim: rho.dims()[mode] });
    }
    let bra = rho.tensor().index_axis(Axis(mode + k), n);
    let slice = bra.index_axis(Axis(mode), n).to_owned();
    Ok(DensityOperator::from_tensor_unchecked(slice, rho.discarded()))
}

/// Mixed-state counterpart of [`herald_single_photon`].
pub fn herald_single_photon_mixed(rho: &DensityOperator, mode: usize) -> Result<(DensityOperator, f64)> {
    let slice = project_occupation_mixed(rho, mode, 1)?;
    let prob = slice.trace().re / rho.trace().re;
    if !(prob >= PROB_ZERO) {
        return Err(Error::ZeroNorm { norm: prob });
    }
    let (s, _) = slice.normalize()?;
    let discarded = rho.discarded();
    Ok((DensityOperator::from_tensor_unchecked(s.into_tensor(), discarded), prob))
}
