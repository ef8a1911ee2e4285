use serde::Serialize;
use thiserror::Error;

use crate::expr::ExprError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SPEC: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_DIFF: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Spec(String),
    #[error("bad value for --{flag}: {source}")]
    Expr { flag: &'static str, source: ExprError },
    #[error(transparent)]
    Core(#[from] discorr_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// What is written to stderr on failure.
#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub error: &'static str,
    pub message: String,
    pub exit_code: i32,
}

impl CliError {
    pub fn spec(msg: impl Into<String>) -> Self {
        CliError::Spec(msg.into())
    }

    pub fn kind(&self) -> &'static str {
        use discorr_core::Error as E;
        match self {
            CliError::Spec(_) | CliError::Expr { .. } => "SpecError",
            CliError::Core(e) => match e {
                E::ZeroNorm { .. } => "ZeroNorm",
                E::RankOverflow { .. } => "RankOverflow",
                E::BadModeSet { .. } => "BadModeSet",
                E::OutOfRange { .. } => "OutOfRange",
                E::TailTooLarge { .. } => "TailTooLarge",
                E::TruncationOverflow { .. } => "TruncationOverflow",
                E::InvalidDimension { .. } => "InvalidDimension",
                E::DimensionMismatch(_) => "DimensionMismatch",
                E::InvalidParameter(_) => "InvalidParameter",
                E::DegenerateReference(_) => "DegenerateReference",
                E::DegenerateBeamSplitter { .. } => "DegenerateBeamSplitter",
            },
            CliError::Io(_) => "IoError",
            CliError::Csv(_) => "IoError",
            CliError::Json(_) => "IoError",
        }
    }

    /// Numerical breakdowns exit with 3; everything the user can fix by
    /// changing the request, including a truncation too small for the
    /// requested state, exits with 2.
    pub fn exit_code(&self) -> i32 {
        use discorr_core::Error as E;
        match self {
            CliError::Core(
                E::ZeroNorm { .. }
                | E::TruncationOverflow { .. }
                | E::RankOverflow { .. }
                | E::DegenerateReference(_)
                | E::DegenerateBeamSplitter { .. },
            ) => EXIT_NUMERICAL,
            _ => EXIT_SPEC,
        }
    }

    pub fn record(&self) -> ErrorRecord {
        ErrorRecord { error: self.kind(), message: self.to_string(), exit_code: self.exit_code() }
    }
}
