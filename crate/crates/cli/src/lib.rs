//! Command-line front end: argument parsing, input files, reports.

pub mod commands;
pub mod input;
pub mod render;
pub mod suite;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gmdist_core::gmd::{Convention, Method};
use gmdist_core::Error;

use crate::commands::{CommandResult, DeltaConfig};
use crate::render::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFIER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => EXIT_PARSE,
            CliError::Core(e) => match e {
                Error::Parse { .. }
                | Error::NotPrime(_)
                | Error::VariableCount(_)
                | Error::DuplicateVariable(_)
                | Error::InvalidComplex(_)
                | Error::InvalidPoints(_) => EXIT_PARSE,
                _ => EXIT_HYPOTHESIS,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ConventionArg {
    FixedDim,
    OwnDim,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::FixedDim => Convention::FixedDim,
            ConventionArg::OwnDim => Convention::OwnDim,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Brute,
    Fast,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Brute => Method::Brute,
            MethodArg::Fast => Method::Fast,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "gmdist",
    version,
    about = "Generalized minimum distance functions of graded quotients over prime fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for the built-in random instances.
    #[arg(long, default_value_t = suite::DEFAULT_SEED, global = true)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct EllArgs {
    /// A single ℓ.
    #[arg(long, conflicts_with = "ell_max")]
    pub ell: Option<usize>,
    /// Every ℓ from 1 up to this value.
    #[arg(long)]
    pub ell_max: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of δ(t, ℓ).
    Delta {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        t_max: usize,
        #[command(flatten)]
        ell: EllArgs,
        #[arg(long, value_enum, default_value_t = ConventionArg::FixedDim)]
        convention: ConventionArg,
        /// Default: both when the decomposition is certified, brute otherwise.
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        /// Include optimal subspaces and prime sets.
        #[arg(long)]
        witnesses: bool,
    },
    /// Stabilization values and regularity indices.
    Stabilize {
        input: PathBuf,
        /// Shortest δ row to print; also the scan depth without a certified decomposition.
        #[arg(long, default_value_t = 4)]
        t_max: usize,
        #[command(flatten)]
        ell: EllArgs,
    },
    /// Generalized Hamming weights of a code or of the evaluation codes of a point set.
    Ghw {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        t_max: usize,
        #[command(flatten)]
        ell: EllArgs,
        #[arg(long)]
        witnesses: bool,
    },
    /// Invariants of a Stanley–Reisner ring.
    SrInfo { input: PathBuf },
    /// Check the structural statements on an input, or on the built-in suite.
    Verify {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        t_max: usize,
        #[arg(long, default_value_t = 3)]
        ell_max: usize,
    },
    /// δ against generalized Hamming weights on seeded random point sets in the plane.
    Bridge {
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_points: usize,
        #[arg(long, default_value_t = 3)]
        t_max: usize,
        #[arg(long, default_value_t = 3)]
        ell_max: usize,
    },
}

/// What the binary prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn dispatch(cli: Cli) -> Result<CommandResult, CliError> {
    match cli.command {
        Command::Delta { input, t_max, ell, convention, method, witnesses } => {
            let input = input::load(&input)?;
            let cfg = DeltaConfig {
                t_max,
                ell: ell.ell,
                ell_max: ell.ell_max.unwrap_or(3),
                convention: convention.into(),
                method: method.map(Into::into),
                witnesses,
            };
            commands::delta(&input, &cfg)
        }
        Command::Stabilize { input, t_max, ell } => {
            let input = input::load(&input)?;
            commands::stabilize(&input, ell.ell, ell.ell_max.unwrap_or(3), t_max)
        }
        Command::Ghw { input, t_max, ell, witnesses } => {
            let input = input::load(&input)?;
            commands::ghw(&input, t_max, ell.ell, ell.ell_max, witnesses)
        }
        Command::SrInfo { input } => commands::sr_info(&input::load(&input)?),
        Command::Verify { input, t_max, ell_max } => {
            let (loaded, name) = match &input {
                Some(p) => {
                    (Some(input::load(p)?), p.file_stem().map_or("input".into(), |s| s.to_string_lossy().into_owned()))
                }
                None => (None, String::new()),
            };
            commands::verify(loaded, &name, t_max, ell_max, cli.seed)
        }
        Command::Bridge { count, max_points, t_max, ell_max } => {
            commands::bridge(cli.seed, count, max_points, t_max, ell_max)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let format = cli.format;
    let result = match cli.jobs {
        Some(0) => Err(Error::Hypothesis("--jobs must be at least 1".into()).into()),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cli)),
            Err(e) => Err(Error::Hypothesis(format!("cannot start {n} workers: {e}")).into()),
        },
        None => dispatch(cli),
    };
    finish(result, format)
}

fn finish(result: Result<CommandResult, CliError>, format: Format) -> Outcome {
    match result {
        Ok(r) => Outcome {
            stdout: r.rendered.render(format),
            stderr: String::new(),
            code: if r.verifier_failed { EXIT_VERIFIER } else { EXIT_OK },
        },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() },
    }
}
