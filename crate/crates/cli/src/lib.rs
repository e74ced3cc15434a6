//! Command-line front end for `esq-core`.
//!
//! Exit codes: 0 success, 1 failed self-check, 2 unreadable or malformed
//! input, 3 invalid state or parameter, 4 method not applicable to the party
//! count, 5 no sign change in a threshold bracket, 6 extension inconsistent
//! with the state.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod statefile;

pub use args::Cli;
pub use commands::run;
pub use error::{CliError, CliResult};
