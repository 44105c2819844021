//! Front end for `dunkl-core`: coefficient tables, moment tables and
//! verification reports.

pub mod args;
pub mod commands;
pub mod report;
pub mod subject;
pub mod suite;
pub mod table;

use thiserror::Error;

/// Exit code for a report with at least one failed check.
pub const EXIT_FAILED: i32 = 1;
/// Exit code for invalid parameters, tripped guards and unknown checks.
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] dunkl_core::Error),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("check {check:?} does not apply to family {family}")]
    Inapplicable { check: String, family: &'static str },
    #[error("table: {0}")]
    Table(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;
