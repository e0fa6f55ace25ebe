mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "heatsym",
    version,
    about = "Generalized symmetries and conservation laws of the 3+1 heat equation"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for the kernel (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Allow rank computations at order 5 and above.
    #[arg(long, global = true)]
    slow: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Words `R_i1 … R_ik` with `i1 ≤ … ≤ ik`.
    Nondecreasing,
    /// Every ordered word.
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank of the word characteristics of length ≤ n against the closed form.
    Count {
        n: u64,
        #[arg(long, value_enum, default_value_t = Mode::Nondecreasing)]
        mode: Mode,
    },
    /// Greedy basis of the characteristics of length ≤ n.
    Basis {
        n: u64,
        /// Write the basis as JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a word or a combination of words to U, e.g. "R1 R8 - 2 R3".
    Apply { words: String },
    /// Check that an expression is a symmetry characteristic.
    VerifySymmetry { expr: String },
    /// Verify a relation fixture (the shipped one when no path is given).
    VerifyRelations {
        fixture: Option<PathBuf>,
        /// Report only entries as printed, not their corrections.
        #[arg(long)]
        printed_only: bool,
        /// Restrict to entries with this source tag (repeatable).
        #[arg(long)]
        source: Vec<String>,
    },
    /// Commutator table of the thirteen point symmetries.
    Commutators {
        /// Use X5 exactly as printed instead of the corrected field.
        #[arg(long)]
        printed_x5: bool,
    },
    /// Conserved vector generated from a seed by a symmetry characteristic.
    Conserve {
        expr: String,
        /// Seed vector (JSON); the base law (−U, Ux, Uy, Uz) by default.
        #[arg(long)]
        from: Option<PathBuf>,
    },
    /// Conservation, multiplier and associated symmetries of a vector (JSON).
    Classify { vector: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli.command, cli.slow, cli.format) {
        Ok(out) => {
            println!("{}", out.rendered);
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Malformed { .. } => 2,
            CliError::Kernel(e) => match e {
                heatsym_core::Error::NotASymmetry { .. }
                | heatsym_core::Error::NotConserved { .. } => 1,
                _ => 2,
            },
            CliError::NotASymmetry { .. } => 1,
            CliError::Io { .. } => 3,
        }
    }
}
