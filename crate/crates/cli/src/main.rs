//! `kronhall`: command-line driver for the Kronecker Hall algebra.

mod cmd;
mod env;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "kronhall",
    version,
    about = "Exact twisted Hall algebra of the Kronecker quiver"
)]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
struct RunArgs {
    /// Field sizes, comma separated (default depends on the command).
    #[arg(long, global = true, value_delimiter = ',')]
    q: Vec<u32>,
    /// Ceiling on d0 + d1 for any representation touched.
    #[arg(long, global = true, default_value_t = 10)]
    max_dim: usize,
    /// `calibrated` (built in), `calibrate` (search now) or a JSON file.
    #[arg(long, global = true, default_value = "calibrated")]
    convention: String,
    /// Directory for structure constants and calibration results.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a representation given as a JSON matrix file.
    Classify { file: PathBuf },
    /// Run verification checks.
    Check {
        /// A check id or `all`.
        suite: Option<String>,
        /// Check ids, comma separated (alternative to the positional id).
        #[arg(long = "suite", value_delimiter = ',')]
        suites: Vec<String>,
        /// Only the grid point with this leading index.
        #[arg(long)]
        n: Option<u32>,
        /// Grade bound of the grid at q = 2.
        #[arg(long = "max", default_value_t = 4)]
        max: u32,
        /// Also rerun every check under the perturbed twist.
        #[arg(long)]
        negative_controls: bool,
    },
    /// Coefficient table of an element expression.
    Table { expr: Vec<String> },
    /// Search for the twist conventions satisfying the anchors.
    Calibrate,
    /// Fit the coefficients of an expression as Laurent polynomials in v.
    Interpolate {
        expr: Vec<String>,
        /// Degree bound per parity (default: number of fields minus 2).
        #[arg(long)]
        degree: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cmd::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("kronhall: {e}");
            ExitCode::from(e.code())
        }
    }
}
