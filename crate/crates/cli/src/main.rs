//! `monocurv` command-line front end.
//!
//! Every subcommand writes CSV or JSON to stdout, or to `--out`. Relative
//! output paths are resolved against `--out-dir` (env `MONOCURV_OUT_DIR`).
//! Exit codes: 0 success, 2 usage or domain error, 1 numerical failure.

mod commands;
mod error;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use monocurv::evidence::Grid;
use monocurv::schur::Target;
use monocurv::{AlphaParameter, Convention, MetricFamily, WydParam};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "monocurv",
    version,
    about = "Scalar curvature of monotone and α-metrics"
)]
pub struct Cli {
    /// Directory for relative output paths and generated figures.
    #[arg(long, global = true, env = "MONOCURV_OUT_DIR")]
    pub out_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct OutArg {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScaleArg {
    /// Bures scale for SLD, unit otherwise.
    Auto,
    Unit,
    Bures,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Curvature of the two-point simplex image curve, CSV `theta,c`.
    Plane {
        #[arg(long, allow_hyphen_values = true)]
        p: AlphaParameter,
        /// Angles `min:max:count` inside (0, π/2).
        #[arg(long)]
        grid: Grid,
        #[command(flatten)]
        out: OutArg,
    },
    /// Spectral scalar curvature of a monotone metric, JSON.
    Curvature {
        /// `sld`, `bkm`, `wy` or `wyd:<p>`.
        #[arg(long)]
        metric: MetricFamily,
        /// Eigenvalues, decimals or `a/b` rationals, comma separated.
        #[arg(long, value_parser = parse::list)]
        eigs: parse::List,
        #[arg(long, default_value = "ambient")]
        convention: Convention,
        #[arg(long, value_enum, default_value = "auto")]
        scale: ScaleArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Closed-form 2×2 curvature `r(a)`, CSV `a,r`.
    Andai {
        /// WYD exponent; shorthand for `--metric wyd:<p>`.
        #[arg(
            long,
            allow_hyphen_values = true,
            conflicts_with = "metric",
            required_unless_present = "metric"
        )]
        p: Option<WydParam>,
        #[arg(long)]
        metric: Option<MetricFamily>,
        #[arg(long, allow_hyphen_values = true, default_value = "-0.99:0.99:199")]
        grid: Grid,
        #[command(flatten)]
        out: OutArg,
    },
    /// Empirical Schur-monotonicity verdict, JSON.
    Schur {
        /// `entropy`, `neg-entropy`, `spectrum:<metric>`, `simplex:<p>` or `plane:<p>`.
        #[arg(long)]
        target: Target,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative tolerance; defaults per target.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Finite-difference α-curvature of the simplex, JSON.
    Simplex {
        #[arg(long, allow_hyphen_values = true)]
        p: AlphaParameter,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_parser = parse::list)]
        rho: parse::List,
        #[arg(long, default_value_t = monocurv::simplex::DEFAULT_FD_STEP)]
        fd_step: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Finite-difference α-curvature of 2×2 density matrices, JSON.
    Matrix {
        #[arg(long, allow_hyphen_values = true)]
        p: AlphaParameter,
        /// Bloch vector `x,y,z` with norm at most 0.95.
        #[arg(long, value_parser = parse::list, allow_hyphen_values = true)]
        bloch: parse::List,
        #[arg(long, default_value_t = monocurv::matrix::DEFAULT_FD_STEP)]
        fd_step: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Regenerate `figure1.csv` (p = 1.1) and `figure2.csv` (p = 1 + 1e-6)
    /// in the output directory (default `data`).
    Figures,
    /// Conjecture-evidence report, JSON.
    Report {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 100)]
        radial_points: usize,
        #[command(flatten)]
        out: OutArg,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("monocurv: {e}");
            if matches!(e, CliError::Usage(_)) {
                eprintln!("run `monocurv --help` for usage");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
