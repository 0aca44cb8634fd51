//! Command-line front end for the `hkeq` library.
//!
//! [`run`] is pure: it takes the parsed configuration and the input file
//! contents and returns the exit code together with everything that should
//! be written. `main` only does I/O.

mod commands;
pub mod input;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use hkeq::obstructions::OrientationSelection;

pub use commands::canonical_json;

/// Exit codes.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OrientationArg {
    #[default]
    Both,
    Forward,
    Reversed,
}

impl From<OrientationArg> for OrientationSelection {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Both => OrientationSelection::Both,
            OrientationArg::Forward => OrientationSelection::Forward,
            OrientationArg::Reversed => OrientationSelection::Reversed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Space {
    Stiefel,
    GlLeft,
    #[value(name = "gl-leftright")]
    GlLeftRight,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Check Herzog-Kühl type equations on a degree or complex file.
    Check { input: PathBuf },
    /// List the κ generators of the cohomology of the moduli space.
    Cohomology { input: PathBuf },
    /// Transgressions for Gl(n) or a Stiefel manifold with given weights.
    Differentials {
        #[arg(long, value_enum)]
        space: Space,
        /// Left weights (w for gl-left), comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        u: Vec<i64>,
        /// Right weights, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        v: Vec<i64>,
        /// Also decide survival of θ^{m−1} for a map from C^m ∖ 0.
        #[arg(long)]
        variables: Option<usize>,
    },
    /// Emit the Koszul complex on m variables.
    Koszul {
        #[arg(short = 'm')]
        m: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Validate a complex, sample exactness and run the checks on its degrees.
    Verify { input: PathBuf },
    /// Fold an exact shape `times` times and show the pullbacks.
    Fold {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Primes up to `bound` modulo which a monic polynomial splits.
    Primes {
        /// Coefficients, leading first and constant term last.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        poly: Vec<i64>,
        #[arg(long, default_value_t = 100)]
        bound: u64,
    },
}

impl Command {
    pub fn input_path(&self) -> Option<&PathBuf> {
        match self {
            Command::Check { input }
            | Command::Cohomology { input }
            | Command::Verify { input }
            | Command::Fold { input, .. } => Some(input),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(name = "hkeq", version, about = "Exact Herzog-Kühl type obstructions")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Seed for sampling evaluation points.
    #[arg(long, global = true, default_value_t = hkeq::oracle::DEFAULT_SEED)]
    pub seed: u64,
    /// Number of evaluation points.
    #[arg(long, global = true, default_value_t = 20)]
    pub points: usize,
    #[arg(long, value_enum, global = true, default_value_t = OrientationArg::Both)]
    pub orientation: OrientationArg,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            format: OutputFormat::Text,
            seed: hkeq::oracle::DEFAULT_SEED,
            points: 20,
            orientation: OrientationArg::Both,
        }
    }

    pub fn with_format(mut self, format: OutputFormat) -> Self {
        self.format = format;
        self
    }
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
    /// Contents for the `-o` file, if the command writes one.
    pub artifact: Option<String>,
}

impl Outcome {
    fn report(exit_code: i32, stdout: String) -> Self {
        Self {
            exit_code,
            stdout,
            stderr: String::new(),
            artifact: None,
        }
    }

    fn malformed(message: impl std::fmt::Display) -> Self {
        Self {
            exit_code: EXIT_MALFORMED,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            artifact: None,
        }
    }
}

/// Runs one command. `contents` is the input file for commands that take
/// one and is ignored otherwise.
pub fn run(config: &RunConfig, contents: &str) -> Outcome {
    commands::dispatch(config, contents)
}
