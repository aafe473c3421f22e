//! `anmult`: weight multiplicities of A_N representations from the command
//! line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use anmult::formulas::FormulaError;

/// Default location of the calibration cache.
const DEFAULT_CACHE: &str = "calibration.json";

#[derive(Parser, Debug)]
#[command(name = "anmult", version, about = "Exact weight multiplicities of A_N representations")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Calibration cache written by `calibrate` and read by `solve` and `verify`.
    #[arg(long, env = "ANMULT_CALIBRATION", default_value = DEFAULT_CACHE, global = true)]
    pub cache: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weyl dimension of a representation.
    Dim {
        /// `q:3,2,1,1,1,1` (orbit label) or `r:1,1,0,0,0,1,0` (Dynkin labels).
        weight: String,
        #[arg(long)]
        rank: Option<u32>,
    },
    /// Sub-dominant orbit labels in grade order, with orbit dimensions.
    Orbits {
        weight: String,
        #[arg(long)]
        rank: Option<u32>,
    },
    /// Power sums Θ(s) of the shifted highest weight.
    Theta {
        weight: String,
        #[arg(long)]
        rank: Option<u32>,
        /// Degrees, e.g. `1..7` or `2,4`.
        #[arg(long, default_value = "1..7")]
        degrees: String,
        /// Print Θ(s) as rational functions of N instead of values.
        #[arg(long)]
        closed_form: bool,
    },
    /// Power-sum expansion of one Weyl orbit's generalized character.
    Cof {
        weight: String,
        /// Degree of the character.
        #[arg(long, required_unless_present = "index")]
        degree: Option<u32>,
        /// A single coefficient, e.g. `3,2`.
        #[arg(long)]
        index: Option<String>,
        /// Evaluate at this rank instead of printing polynomials in N.
        #[arg(long)]
        rank: Option<u32>,
        /// Keep only the coefficients without a part 1.
        #[arg(long)]
        physical: bool,
    },
    /// Multiplicity table from the Freudenthal recursion.
    Freudenthal {
        weight: String,
        #[arg(long)]
        rank: Option<u32>,
    },
    /// Calibrate the formula factors on Freudenthal tables and write the cache.
    Calibrate {
        /// Largest top height in the calibration corpus.
        #[arg(long, default_value_t = 4)]
        corpus_height: u32,
        /// Calibration ranks, e.g. `5..28`; default starts above the corpus.
        #[arg(long)]
        ranks: Option<String>,
    },
    /// Multiplicities from the linear system of multiplicity formulas.
    Solve {
        weight: String,
        /// Formula ids, e.g. `7,52` or derived `d8,d44`; default: every valid transcription.
        #[arg(long)]
        formulas: Option<String>,
        #[arg(long)]
        ranks: Option<String>,
        /// Compare with the Freudenthal table.
        #[arg(long)]
        cross_check: bool,
        /// Largest top height of the corpus for derived formulas.
        #[arg(long, default_value_t = 6)]
        corpus_height: u32,
    },
    /// Fit and validate a new multiplicity formula for an index partition.
    Derive {
        /// Index partition, e.g. `8` or `4,4`.
        index: String,
        #[arg(long, default_value_t = 6)]
        corpus_height: u32,
        #[arg(long)]
        ranks: Option<String>,
    },
    /// Φ residuals of a multiplicity table (JSON table or `solve` output; `-` for stdin).
    Verify {
        file: PathBuf,
        #[arg(long)]
        formulas: Option<String>,
        #[arg(long)]
        ranks: Option<String>,
        #[arg(long, default_value_t = 6)]
        corpus_height: u32,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input or a request the engine cannot satisfy.
    #[error("{0}")]
    Domain(String),
    /// A check came out negative: nonzero residuals, oracle disagreement.
    #[error("{0}")]
    Validation(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 2,
            CliError::Validation(_) => 3,
        }
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> Self {
        match e {
            FormulaError::ValidationFailed { .. }
            | FormulaError::Inconsistent { .. }
            | FormulaError::NotIntegral { .. } => CliError::Validation(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        }
    )*};
}

domain_from!(
    anmult::weights::WeightError,
    anmult::partitions::PartitionError,
    anmult::characters::CharacterError,
    anmult::freudenthal::FreudenthalError,
    anmult::exact::AlgebraError,
    std::io::Error,
    serde_json::Error
);

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            match report.failure {
                Some(msg) => {
                    eprintln!("anmult: {msg}");
                    ExitCode::from(3)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("anmult: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
