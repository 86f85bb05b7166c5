//! Command-line front end: equation catalog, verification workflows and reports.

pub mod catalog;
pub mod commands;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fpcf::closedform::ClosedFormError;
use fpcf::laurent::{SolveError, SpecError};
use rayon::prelude::*;
use thiserror::Error;

pub use output::Outcome;

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 2;
pub const EXIT_PRECISION: u8 = 3;
pub const EXIT_INVALID: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "fpcf", version, about = "Continued fractions of quartic power series over F_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the equation and expand its root.
    Expand(JobArgs),
    /// Emit closed-form quotients or special convergents.
    ClosedForm(JobArgs),
    /// Build an Ω-sequence from its recursion.
    Omega(JobArgs),
    /// Compare the engine expansion with the family generator.
    Verify(JobArgs),
    /// Estimate the approximation exponent from quotient degrees.
    Measure(JobArgs),
    /// Test the reversal/scaling question on a sequence.
    Openq(JobArgs),
    /// Check the squaring identities.
    Square(JobArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Expand(_) => "expand",
            Command::ClosedForm(_) => "closed-form",
            Command::Omega(_) => "omega",
            Command::Verify(_) => "verify",
            Command::Measure(_) => "measure",
            Command::Openq(_) => "openq",
            Command::Square(_) => "square",
        }
    }

    pub fn args(&self) -> &JobArgs {
        match self {
            Command::Expand(a)
            | Command::ClosedForm(a)
            | Command::Omega(a)
            | Command::Verify(a)
            | Command::Measure(a)
            | Command::Openq(a)
            | Command::Square(a) => a,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Source {
    #[default]
    Auto,
    Engine,
    ClosedForm,
}

#[derive(Clone, Debug, Default, Args)]
pub struct JobArgs {
    /// W1, W2, E1, E2 or MR.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long = "A")]
    pub a: Option<String>,
    #[arg(long = "C")]
    pub c: Option<String>,
    /// Five comma-separated coefficients of x^4, x^3, x^2, x, 1.
    #[arg(long)]
    pub raw: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub p: u8,
    #[arg(long)]
    pub terms: Option<usize>,
    #[arg(long)]
    pub depth: Option<u32>,
    /// Raise the Ω depth cap.
    #[arg(long)]
    pub max_depth: Option<u32>,
    #[arg(long)]
    pub precision: Option<usize>,
    #[arg(long)]
    pub n0: Option<usize>,
    #[arg(long = "D")]
    pub d: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for --batch.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// File with one equation per line: "E1 T T", "W1 T^2+1 T", "MR" or "RAW 1,0,1,-T,1".
    #[arg(long)]
    pub batch: Option<PathBuf>,
    /// Omit timing so reports are byte-identical across runs.
    #[arg(long)]
    pub no_meta: bool,
    /// Verbatim quotient list, one per line, to compare as well.
    #[arg(long)]
    pub fixture: Option<PathBuf>,
    /// Take the sequence from an Ω build of this family.
    #[arg(long)]
    pub from_omega: Option<String>,
    /// Comma-separated polynomial sequence.
    #[arg(long)]
    pub seq: Option<String>,
    #[arg(long, value_enum, default_value_t = Source::Auto)]
    pub source: Source,
}

#[derive(Debug, Error)]
pub enum LabError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Internal(String),
}

impl LabError {
    pub fn exit_code(&self) -> u8 {
        match self {
            LabError::Invalid(_) => EXIT_INVALID,
            LabError::Precision(_) => EXIT_PRECISION,
            LabError::Io(_) | LabError::Internal(_) => 1,
        }
    }
}

impl From<SpecError> for LabError {
    fn from(e: SpecError) -> Self {
        LabError::Invalid(e.to_string())
    }
}

impl From<fpcf::gfpoly::ParseError> for LabError {
    fn from(e: fpcf::gfpoly::ParseError) -> Self {
        LabError::Invalid(e.to_string())
    }
}

impl From<SolveError> for LabError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::PrecisionExhausted { .. } => LabError::Precision(e.to_string()),
            SolveError::PrecisionTooSmall { .. } | SolveError::Spec(_) => LabError::Invalid(e.to_string()),
            other => LabError::Internal(other.to_string()),
        }
    }
}

impl From<ClosedFormError> for LabError {
    fn from(e: ClosedFormError) -> Self {
        match e {
            ClosedFormError::Inconsistent { .. } | ClosedFormError::Series(_) => LabError::Internal(e.to_string()),
            other => LabError::Invalid(other.to_string()),
        }
    }
}

impl From<fpcf::cfrac::CfError> for LabError {
    fn from(e: fpcf::cfrac::CfError) -> Self {
        LabError::Invalid(e.to_string())
    }
}

impl From<fpcf::diophantine::DiophantineError> for LabError {
    fn from(e: fpcf::diophantine::DiophantineError) -> Self {
        LabError::Invalid(e.to_string())
    }
}

/// Runs the command, writes its report and returns the exit code.
pub fn run(cli: &Cli) -> Result<u8, LabError> {
    let args = cli.command.args();
    if let Some(path) = &args.batch {
        return run_batch(cli, path);
    }
    let outcome = commands::dispatch(&cli.command, args)?;
    output::emit(cli.command.name(), args, &outcome)?;
    Ok(outcome.exit_code())
}

fn run_batch(cli: &Cli, path: &std::path::Path) -> Result<u8, LabError> {
    let args = cli.command.args();
    if args.format == Format::Csv {
        return Err(LabError::Invalid("batch reports are JSON only".into()));
    }
    let text = std::fs::read_to_string(path)?;
    let jobs: Vec<JobArgs> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| catalog::batch_line(args, l))
        .collect::<Result<_, _>>()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
        .map_err(|e| LabError::Internal(e.to_string()))?;
    let results: Vec<Result<Outcome, LabError>> =
        pool.install(|| jobs.par_iter().map(|job| commands::dispatch(&cli.command, job)).collect());
    let mut code = EXIT_OK;
    let mut reports = Vec::with_capacity(results.len());
    for (job, r) in jobs.iter().zip(results) {
        match r {
            Ok(o) => {
                code = code.max(o.exit_code());
                reports.push(output::envelope(cli.command.name(), job, &o));
            }
            Err(e) => {
                code = code.max(e.exit_code());
                reports.push(serde_json::json!({ "error": e.to_string(), "exit_code": e.exit_code() }));
            }
        }
    }
    output::write_text(args.out.as_deref(), &(serde_json::to_string_pretty(&reports).expect("json") + "\n"))?;
    Ok(code)
}
