use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state has zero norm ({norm:e})")]
    ZeroNorm { norm: f64 },

    #[error("tensor rank {rank} exceeds the supported maximum of {max}")]
    RankOverflow { rank: usize, max: usize },

    #[error("invalid mode set {modes:?} for a {rank}-mode state")]
    BadModeSet { modes: Vec<usize>, rank: usize },

    #[error("occupation {n} out of range for truncation dimension {dim}")]
    OutOfRange { n: usize, dim: usize },

    #[error("truncation at dim {dim} discards weight {discarded:e} (bound {bound:e})")]
    TailTooLarge { dim: usize, discarded: f64, bound: f64 },

    #[error("photon-number sector {sector} does not fit modes of dimension {dims:?}")]
    TruncationOverflow { sector: usize, dims: (usize, usize) },

    #[error("truncation dimension must be at least {min}, got {dim}")]
    InvalidDimension { dim: usize, min: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("beam splitter reflectivity {r:e} is too small for this formula")]
    DegenerateBeamSplitter { r: f64 },

    #[error("reference same-count probability {0:e} is degenerate")]
    DegenerateReference(f64),
}
