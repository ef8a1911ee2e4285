//! Brute-force simulation of the discorrelation circuits.
//!
//! Everything here is assembled from Fock-space states, beam splitters,
//! loss channels and projections. No closed-form output coefficients are
//! used, so these results can serve as ground truth for them.
//!
//! The heralded circuit uses four modes:
//!
//! ```text
//! 0  HOM output A ──┐ BS(t_A) ── output mode A
//! 2  input A     ───┘         ── herald: exactly one photon
//! 1  HOM output B ──┐ BS(t_B) ── output mode B
//! 3  input B     ───┘         ── herald: exactly one photon
//! ```
//!
//! Modes 0 and 1 start as `|1,1>` bunched on a balanced splitter. In arm A
//! the HOM mode is the first port of its splitter, in arm B the input mode
//! is; heralds fire on the ports that continue modes 2 and 3.

use ndarray::{Array1, Array2, Axis};

use crate::error::{Error, Result};
use crate::fock::{to_density, DensityOperator, MultiModeState, Normalize, SingleModeState, TwoModeState, C64};
use crate::optics::{
    beam_splitter, beam_splitter_mixed, herald_single_photon, herald_single_photon_mixed, loss_channel,
    BeamSplitterParams, LossPoint,
};
use crate::states::{coherent, fock, smsv, tmsv, CoherentAmplitude, SqueezingParameter};

pub const HOM_A: usize = 0;
pub const HOM_B: usize = 1;
pub const INPUT_A: usize = 2;
pub const INPUT_B: usize = 3;

/// Slices of the herald modes lighter than this are skipped when mixing.
const SLICE_CUTOFF: f64 = 1e-20;

/// One input mode of the circuit.
#[derive(Debug, Clone, PartialEq)]
pub enum ModeInput {
    Fock(usize),
    Coherent(CoherentAmplitude),
    Squeezed(SqueezingParameter),
    State(SingleModeState),
}

impl ModeInput {
    pub fn prepare(&self, dim: usize) -> Result<SingleModeState> {
        match self {
            ModeInput::Fock(n) => fock(*n, dim),
            ModeInput::Coherent(a) => coherent(*a, dim),
            ModeInput::Squeezed(l) => smsv(*l, dim),
            ModeInput::State(s) => Ok(s.clone()),
        }
    }
}

/// What enters the two non-HOM ports.
#[derive(Debug, Clone, PartialEq)]
pub enum CircuitInput {
    Separable { a: ModeInput, b: ModeInput },
    Tmsv(SqueezingParameter),
    Entangled(TwoModeState),
}

impl CircuitInput {
    pub fn coherent_pair(alpha: CoherentAmplitude, beta: CoherentAmplitude) -> Self {
        CircuitInput::Separable { a: ModeInput::Coherent(alpha), b: ModeInput::Coherent(beta) }
    }

    pub fn squeezed_pair(a: SqueezingParameter, b: SqueezingParameter) -> Self {
        CircuitInput::Separable { a: ModeInput::Squeezed(a), b: ModeInput::Squeezed(b) }
    }

    /// The two-mode input state, normalized over its truncation.
    pub fn prepare(&self, dim: usize) -> Result<TwoModeState> {
        match self {
            CircuitInput::Separable { a, b } => Ok(TwoModeState::product(&a.prepare(dim)?, &b.prepare(dim)?)),
            CircuitInput::Tmsv(l) => tmsv(*l, dim),
            CircuitInput::Entangled(s) => Ok(s.clone()),
        }
    }
}

/// Wiring and parameters of the heralded circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitConfig {
    pub input: CircuitInput,
    pub bs_a: BeamSplitterParams,
    pub bs_b: BeamSplitterParams,
    /// `(where, eta)` with `eta` the transmitted intensity fraction.
    pub loss: Vec<(LossPoint, f64)>,
    /// Truncation of prepared inputs.
    pub dim: usize,
}

impl CircuitConfig {
    /// Both heralding splitters share `bs`.
    pub fn new(input: CircuitInput, bs: BeamSplitterParams, dim: usize) -> Self {
        Self { input, bs_a: bs, bs_b: bs, loss: Vec::new(), dim }
    }

    pub fn with_loss(mut self, point: LossPoint, eta: f64) -> Self {
        self.loss.push((point, eta));
        self
    }

    /// Combined transmission at `point` (repeated entries multiply).
    pub fn transmission(&self, point: LossPoint) -> f64 {
        self.loss.iter().filter(|(p, _)| *p == point).map(|(_, eta)| eta).product()
    }

    fn validate(&self) -> Result<()> {
        for &(_, eta) in &self.loss {
            if !(0.0..=1.0).contains(&eta) {
                return Err(Error::InvalidParameter(format!("loss transmission must lie in [0, 1], got {eta}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CircuitState {
    Pure(TwoModeState),
    Mixed(DensityOperator),
}

impl CircuitState {
    pub fn to_density(&self) -> DensityOperator {
        match self {
            CircuitState::Pure(s) => to_density(&s.to_multimode()),
            CircuitState::Mixed(rho) => rho.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircuitOutput {
    pub state: CircuitState,
    /// Joint probability of both heralds firing.
    pub herald_probability: f64,
    /// Probability weight the input truncation cut off.
    pub input_discarded: f64,
}

/// Displaced single photon: `|1> ⊗ |alpha>` on a balanced splitter.
pub fn simulate_displaced_photon(alpha: CoherentAmplitude, dim: usize) -> Result<TwoModeState> {
    let coh = coherent(alpha, dim)?;
    let out = displaced_photon_amplitudes(&coh)?;
    let discarded = coh.discarded();
    let (s, _) = out.to_two_mode()?.normalize()?;
    Ok(s.with_discarded(discarded))
}

/// Same circuit for an arbitrary, possibly unnormalized, second-port state.
/// The output keeps the input's norm; both modes get one extra level so
/// every populated sector fits.
pub fn displaced_photon_amplitudes(second_port: &SingleModeState) -> Result<MultiModeState> {
    let dim = second_port.dim() + 1;
    let photon = MultiModeState::from(fock(1, dim)?);
    let psi = photon.tensor(&second_port.padded(dim)?.into())?;
    beam_splitter(&psi, (0, 1), BeamSplitterParams::balanced())
}

/// Per-mode truncation of the four-mode circuit for an input grid of `dims`.
pub fn circuit_dims(input_dims: (usize, usize)) -> [usize; 4] {
    let (da, db) = (input_dims.0 + 2, input_dims.1 + 2);
    let mut dims = [0; 4];
    dims[HOM_A] = da;
    dims[INPUT_A] = da;
    dims[HOM_B] = db;
    dims[INPUT_B] = db;
    dims
}

/// Four-mode state after the HOM splitter and both heralding splitters,
/// with `photons` single photons (0 or 1 each) feeding the HOM splitter.
pub fn pre_herald_state(
    input: &TwoModeState,
    bs_a: BeamSplitterParams,
    bs_b: BeamSplitterParams,
    photons: (usize, usize),
) -> Result<MultiModeState> {
    let dims = circuit_dims(input.dims());
    let ancilla = MultiModeState::from(fock(photons.0, dims[HOM_A])?).tensor(&fock(photons.1, dims[HOM_B])?.into())?;
    let hom = beam_splitter(&ancilla, (HOM_A, HOM_B), BeamSplitterParams::balanced())?;
    let padded = input.to_multimode().padded(&[dims[INPUT_A], dims[INPUT_B]])?;
    let joint = hom.tensor(&padded)?;
    let arm_a = beam_splitter(&joint, (HOM_A, INPUT_A), bs_a)?;
    beam_splitter(&arm_a, (INPUT_B, HOM_B), bs_b)
}

/// Heralded circuit. Lossless configurations take the pure-state path;
/// any loss entry switches to the density-operator path.
pub fn simulate_discorrelation_circuit(cfg: &CircuitConfig) -> Result<CircuitOutput> {
    cfg.validate()?;
    if !cfg.loss.is_empty() {
        return simulate_with_loss(cfg);
    }
    let input = cfg.input.prepare(cfg.dim)?;
    let full = pre_herald_state(&input, cfg.bs_a, cfg.bs_b, (1, 1))?;
    let (after_a, p_a) = herald_single_photon(&full, INPUT_A)?;
    // INPUT_B sits at index 2 once INPUT_A is gone.
    let (out, p_b) = herald_single_photon(&after_a, INPUT_B - 1)?;
    let state = out.to_two_mode()?.with_discarded(input.discarded());
    Ok(CircuitOutput {
        state: CircuitState::Pure(state),
        herald_probability: p_a * p_b,
        input_discarded: input.discarded(),
    })
}

/// Probability that a detector behind transmission `eta` registers exactly
/// one photon when `n` arrive.
fn single_click_weight(n: usize, eta: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    n as f64 * eta * (1.0 - eta).powi(n as i32 - 1)
}

/// Lossy heralded circuit as a density operator.
///
/// Loss on the ancilla photons turns them into a diagonal mixture of
/// `|0>`/`|1>` pairs, and loss in front of a photon-number-resolving
/// detector turns "one click" into a diagonal POVM over the arriving photon
/// number. Both are therefore exact mixtures of pure four-mode branches,
/// which avoids forming the four-mode density operator. Loss after
/// heralding acts on the two-mode output directly.
pub fn simulate_with_loss(cfg: &CircuitConfig) -> Result<CircuitOutput> {
    cfg.validate()?;
    let input = cfg.input.prepare(cfg.dim)?;
    let eta_anc = cfg.transmission(LossPoint::AncillaPreparation);
    let eta_det = cfg.transmission(LossPoint::BeforeHeraldDetectors);
    let eta_out = cfg.transmission(LossPoint::AfterDiscorrelation);

    let dims = circuit_dims(input.dims());
    let side = dims[HOM_A] * dims[HOM_B];
    let clicks_a: Vec<f64> = (0..dims[INPUT_A]).map(|n| single_click_weight(n, eta_det)).collect();
    let clicks_b: Vec<f64> = (0..dims[INPUT_B]).map(|n| single_click_weight(n, eta_det)).collect();

    let mut columns: Vec<Array1<C64>> = Vec::new();
    for (photons, weight) in ancilla_branches(eta_anc) {
        if weight == 0.0 {
            continue;
        }
        let full = pre_herald_state(&input, cfg.bs_a, cfg.bs_b, photons)?;
        let coeffs = full.coeffs();
        for (na, &wa) in clicks_a.iter().enumerate() {
            if wa == 0.0 {
                continue;
            }
            let slab = coeffs.index_axis(Axis(INPUT_A), na);
            for (nb, &wb) in clicks_b.iter().enumerate() {
                if wb == 0.0 {
                    continue;
                }
                // Axis INPUT_B is index 2 once INPUT_A has been indexed out.
                let slice = slab.index_axis(Axis(INPUT_B - 1), nb);
                let w = weight * wa * wb;
                let norm: f64 = slice.iter().map(|c| c.norm_sqr()).sum();
                if w * norm < SLICE_CUTOFF {
                    continue;
                }
                let col: Array1<C64> = slice.iter().map(|c| c * w.sqrt()).collect();
                columns.push(col);
            }
        }
    }
    if columns.is_empty() {
        return Err(Error::ZeroNorm { norm: 0.0 });
    }
    let mut stack = Array2::<C64>::zeros((side, columns.len()));
    for (k, col) in columns.iter().enumerate() {
        stack.column_mut(k).assign(col);
    }
    let adjoint = stack.t().mapv(|c| c.conj());
    let unnormalized = stack.dot(&adjoint);
    let rho = DensityOperator::from_matrix(&[dims[HOM_A], dims[HOM_B]], unnormalized)?;
    let prob = rho.trace().re;
    let (mut rho, _) = rho.normalize()?;
    if eta_out < 1.0 {
        rho = loss_channel(&rho, 0, eta_out)?;
        rho = loss_channel(&rho, 1, eta_out)?;
    }
    Ok(CircuitOutput { state: CircuitState::Mixed(rho), herald_probability: prob, input_discarded: input.discarded() })
}

fn ancilla_branches(eta: f64) -> [((usize, usize), f64); 4] {
    let lost = 1.0 - eta;
    [((1, 1), eta * eta), ((1, 0), eta * lost), ((0, 1), lost * eta), ((0, 0), lost * lost)]
}

/// The same lossy circuit propagated as a full four-mode density operator.
///
/// Memory grows as the eighth power of the truncation, so this is only for
/// small inputs; it exists to cross-check [`simulate_with_loss`].
pub fn simulate_with_loss_dense(cfg: &CircuitConfig) -> Result<CircuitOutput> {
    cfg.validate()?;
    let input = cfg.input.prepare(cfg.dim)?;
    let dims = circuit_dims(input.dims());
    let eta_anc = cfg.transmission(LossPoint::AncillaPreparation);
    let eta_det = cfg.transmission(LossPoint::BeforeHeraldDetectors);
    let eta_out = cfg.transmission(LossPoint::AfterDiscorrelation);

    let ancilla = MultiModeState::from(fock(1, dims[HOM_A])?).tensor(&fock(1, dims[HOM_B])?.into())?;
    let mut rho = to_density(&ancilla);
    rho = loss_channel(&rho, HOM_A, eta_anc)?;
    rho = loss_channel(&rho, HOM_B, eta_anc)?;
    rho = beam_splitter_mixed(&rho, (HOM_A, HOM_B), BeamSplitterParams::balanced())?;
    let padded = input.to_multimode().padded(&[dims[INPUT_A], dims[INPUT_B]])?;
    rho = rho.tensor_product(&to_density(&padded))?;
    rho = beam_splitter_mixed(&rho, (HOM_A, INPUT_A), cfg.bs_a)?;
    rho = beam_splitter_mixed(&rho, (INPUT_B, HOM_B), cfg.bs_b)?;
    rho = loss_channel(&rho, INPUT_A, eta_det)?;
    rho = loss_channel(&rho, INPUT_B, eta_det)?;
    let (rho, p_a) = herald_single_photon_mixed(&rho, INPUT_A)?;
    let (mut rho, p_b) = herald_single_photon_mixed(&rho, INPUT_B - 1)?;
    rho = loss_channel(&rho, 0, eta_out)?;
    rho = loss_channel(&rho, 1, eta_out)?;
    Ok(CircuitOutput { state: CircuitState::Mixed(rho), herald_probability: p_a * p_b, input_discarded: input.discarded() })
}

/// Symmetric loss on both modes of a pure two-mode state.
pub fn lossy_two_mode(state: &TwoModeState, eta: f64) -> Result<DensityOperator> {
    let rho = to_density(&state.to_multimode());
    let rho = loss_channel(&rho, 0, eta)?;
    loss_channel(&rho, 1, eta)
}
