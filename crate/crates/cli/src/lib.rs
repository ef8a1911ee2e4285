//! The `discorrelate` command line: scenario resolution, evaluation,
//! differential checks and sweeps.

pub mod app;
pub mod diff;
pub mod error;
pub mod eval;
pub mod expr;
pub mod output;
pub mod scenario;
pub mod sweep;

pub use app::{execute, Cli};
pub use error::{CliError, CliResult};
