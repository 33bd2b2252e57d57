//! Library backing the `lisfm` binary.
//!
//! The binary itself is a thin argument parser; everything it does lives
//! here so integration tests can drive commands directly and inspect the
//! structured reports instead of scraping stdout.
//!
//! * [`instance`] — the on-disk JSON description of a set family.
//! * [`report`] — structured command reports with a stable text rendering
//!   and a byte-deterministic JSON serialization.
//! * [`suite`] — the randomized verification suites.
//! * [`commands`] — one entry point per subcommand.

pub mod commands;
pub mod instance;
pub mod report;
pub mod suite;

use thiserror::Error;

/// Errors surfaced to the user, split by who is at fault: [`CliError::Input`]
/// for bad files or flags, [`CliError::Core`] for everything detected by the
/// library (which keeps its own classification).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] lisf_matroid::Error),
}

impl CliError {
    /// Process exit code: 2 for input and parameter problems, 3 when a
    /// selection enumeration exceeded its budget, 4 when construction
    /// hypotheses are not met.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Core(lisf_matroid::Error::BudgetExceeded { .. }) => 3,
            CliError::Core(lisf_matroid::Error::HypothesesNotMet(_)) => 4,
            CliError::Core(_) => 2,
        }
    }
}
