//! Benchmark fixtures.

use discorr_core::oracle::circuit_dims;
use discorr_core::oracle::lossy_two_mode;
use discorr_core::states::{coherent_with_bound, hom_state};
use discorr_core::{CoherentAmplitude, DensityOperator, MultiModeState, Result, SingleModeState, TwoModeState};

/// Coherent state truncated at `dim` with no tail check.
pub fn coherent_input(alpha: f64, dim: usize) -> Result<SingleModeState> {
    coherent_with_bound(CoherentAmplitude::new(alpha, 0.0)?, dim, 1.0)
}

/// The four-mode circuit register before any splitter: HOM pair then a
/// coherent product input, padded to the circuit dimensions.
pub fn circuit_register(alpha: f64, dim: usize) -> Result<MultiModeState> {
    let a = coherent_input(alpha, dim)?;
    let input = TwoModeState::product(&a, &a);
    let dims = circuit_dims(input.dims());
    let hom = hom_state(3)?.to_multimode().padded(&dims[..2])?;
    let input = input.to_multimode().padded(&dims[2..])?;
    hom.tensor(&input)
}

/// HOM state after 30% loss on both modes.
pub fn lossy_hom(dim: usize) -> Result<DensityOperator> {
    lossy_two_mode(&hom_state(dim)?, 0.7)
}
