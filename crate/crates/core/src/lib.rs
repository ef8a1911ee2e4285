//! Truncated Fock-space simulation of heralded discorrelation circuits.
//!
//! States live in a finite photon-number basis per mode. Beam splitters,
//! pure loss and single-photon heralding act on them exactly within the
//! truncation, and [`analysis`] turns the results into photon-number
//! statistics, the discorrelation metric and logarithmic negativity.

pub mod analysis;
pub mod error;
pub mod fock;
pub mod optics;
pub mod oracle;
pub mod special;
pub mod states;

pub use analysis::{
    phase_aligned_deviation,
    discorrelation_metric, joint_distribution, logarithmic_negativity, logarithmic_negativity_pure,
    uncorrelated_reference, DiscorrelationScore, JointDistribution, PhotonStatistics,
};
pub use error::{Error, Result};
pub use fock::{
    partial_trace, to_density, DensityOperator, MultiModeState, Normalize, SingleModeState, TruncationDim,
    TwoModeState, C64,
};
pub use optics::{BeamSplitterParams, LossPoint};
pub use oracle::{CircuitConfig, CircuitInput, CircuitOutput, CircuitState, ModeInput};
pub use states::{CoherentAmplitude, SqueezingParameter};
