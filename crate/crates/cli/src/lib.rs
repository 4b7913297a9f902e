//! Library side of the `h1forge` command-line harness.

pub mod cache;
pub mod commands;
pub mod sweep;

pub use cache::{Cache, CACHE_ENV};
pub use commands::{CliError, CliResult, EXIT_CAP, EXIT_INVARIANT, EXIT_USAGE};
pub use sweep::{run_sweep, ResultRow, SolverChoice, Summary, SweepConfig, SweepReport};
