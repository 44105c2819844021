use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dunkl_core::{parse_rational, Rational};

#[derive(Debug, Parser)]
#[command(name = "dunkl", version, about = "Symmetric Dunkl-classical orthogonal polynomials in exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of gamma_n, gamma~_n, moments and P_n coefficients.
    Gen(GenArgs),
    /// Run verification suites and emit a JSON report.
    Verify(VerifyArgs),
    /// Build gamma_n from a Riccati solution theta_n.
    Construct(ConstructArgs),
    /// Table of normalized moments and Hankel determinants.
    Moments(GenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Hermite,
    Gegenbauer,
    /// Arbitrary symmetric recurrence given by `--gammas`.
    Custom,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CaseKind {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub mu: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub alpha: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub beta: Option<Rational>,
    /// Comma-separated gamma_1, gamma_2, ...; the last value repeats.
    #[arg(long, allow_hyphen_values = true)]
    pub gammas: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 25)]
    pub n: usize,
    /// `all` or a comma-separated list of suite names.
    #[arg(long, default_value = "all")]
    pub checks: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Only JSON is supported for reports.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Add per-suite wall time to the report.
    #[arg(long)]
    pub timing: bool,
    /// Run suites one after another.
    #[arg(long)]
    pub serial: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub case: CaseKind,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub mu: Rational,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub theta: Option<Rational>,
    /// Defaults to the closed-form normalization of the matching family.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub gamma1: Option<Rational>,
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}
