//! Front end for `oigb`: problem-file parsing, command runners and reports.

pub mod commands;
pub mod error;
pub mod json;

pub use commands::{execute, Command, Options, Outcome};
pub use error::CliError;
