//! Front end for the `hypflute` binary: argument definitions, the five
//! subcommands and SVG rendering of half-plane scenes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use hypflute::flute::{Enumeration, GroupSpec, Rational};
use hypflute::Error;
use thiserror::Error as ThisError;

mod commands;
pub mod svg;

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    /// A verification ran but at least one check failed.
    Failed,
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("internal error: {0}")]
    Internal(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("insufficient data: {0}")]
    Insufficient(String),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_CONSTRUCTION: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_INSUFFICIENT: i32 = 4;
pub const EXIT_VERIFY_FAILED: i32 = 5;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => EXIT_INTERNAL,
            CliError::Construction(_) => EXIT_CONSTRUCTION,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Insufficient(_) => EXIT_INSUFFICIENT,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::SelectionExhausted { .. } => CliError::Construction(e.to_string()),
            Error::InsufficientGenerators { .. } => CliError::Insufficient(e.to_string()),
            Error::MalformedSpec(_)
            | Error::InvalidArgument(_)
            | Error::InvalidParameter(_)
            | Error::IndexOutOfRange { .. }
            | Error::Enumeration(_)
            | Error::ProfileTooShort { .. } => CliError::Input(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hypflute", version, about = "Construct and check an explicit infinitely generated Fuchsian flute group")]
pub struct Cli {
    /// Embed the generation time in JSON reports.
    #[arg(long, global = true)]
    pub timestamp: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Select generators and write the group spec as JSON.
    Construct(ConstructArgs),
    /// Check ping-pong, the Dirichlet ray, the hypercycle bound and the
    /// injectivity lower bound for a spec.
    Verify(VerifyArgs),
    /// Boundary/Busemann witness that g_{ln q} u lies in the closure of h_R u.
    Witness(WitnessArgs),
    /// Render the half-plane scene of a spec as SVG.
    Plot(PlotArgs),
    /// Injectivity-radius profile along the ray [i, ∞) and the IInj estimate.
    Inj(InjArgs),
}

#[derive(Debug, clap::Args)]
pub struct ConstructArgs {
    /// Number of generators γ_0, …, γ_{M-1}.
    #[arg(long = "count", short = 'M')]
    pub count: usize,
    /// `default`, or a JSON file holding an array of rationals such as ["3/2", "2"].
    #[arg(long, default_value = "default")]
    pub enumeration: String,
    #[arg(long, default_value_t = hypflute::flute::DEFAULT_N_MAX)]
    pub n_max: u32,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub word_len: usize,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 1000)]
    pub ray_heights: usize,
    #[arg(long, default_value_t = 1e6)]
    pub ray_max: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct WitnessArgs {
    #[arg(long)]
    pub spec: PathBuf,
    /// Rational q > 1, written p/r.
    #[arg(long)]
    pub q: Rational,
    #[arg(long, default_value_t = 3)]
    pub count: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Bisectors,
    Domain,
    Axes,
    Ray,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    Linear,
    Log,
    Auto,
}

#[derive(Debug, clap::Args)]
pub struct PlotArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, value_enum, default_value_t = What::All)]
    pub what: What,
    #[arg(long, value_enum, default_value_t = Scale::Auto)]
    pub scale: Scale,
    #[arg(long)]
    pub svg: PathBuf,
}

#[derive(Debug, clap::Args)]
pub struct InjArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub tmin: f64,
    #[arg(long, default_value_t = 1e5)]
    pub tmax: f64,
    #[arg(long, default_value_t = 400)]
    pub points: usize,
    #[arg(long, default_value_t = 3)]
    pub word_len: usize,
    /// Multiplicative window width for the liminf estimate.
    #[arg(long, default_value_t = 2.0)]
    pub window: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Runs a parsed command, writing human-readable output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status, CliError> {
    let tol = hypflute::tolerance::tolerance_from_env().map_err(CliError::Input)?;
    let ctx = commands::Context { tol, timestamp: cli.timestamp };
    match &cli.command {
        Command::Construct(a) => commands::construct(&ctx, a, out),
        Command::Verify(a) => commands::verify(&ctx, a, out),
        Command::Witness(a) => commands::witness(&ctx, a, out),
        Command::Plot(a) => commands::plot(&ctx, a, out),
        Command::Inj(a) => commands::inj(&ctx, a, out),
    }
}

/// Parses arguments and runs, returning the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(&cli, &mut lock) {
        Ok(Status::Success) => EXIT_OK,
        Ok(Status::Failed) => EXIT_VERIFY_FAILED,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub(crate) fn load_spec(path: &Path) -> Result<GroupSpec, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(GroupSpec::from_json(&text)?)
}

pub(crate) fn parse_enumeration(arg: &str) -> Result<Enumeration, CliError> {
    if arg == "default" {
        return Ok(Enumeration::default());
    }
    let text = fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
    let list: Vec<Rational> =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{arg}: expected an array of rationals: {e}")))?;
    if let Some(bad) = list.iter().find(|q| !q.exceeds_one()) {
        return Err(CliError::Input(format!("{arg}: entry {bad} must exceed 1")));
    }
    Ok(Enumeration::Explicit(list))
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}
