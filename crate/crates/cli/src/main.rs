//! `bellbox`: one executable over the whole workspace. Model statistics,
//! the quantum oracle, LP searches with certificates, the lattice-gas echo,
//! entropy calculators, and experiment-geometry validation.
//!
//! Exit codes: 0 success, 2 validation error, 3 solver failure.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

mod commands;
mod error;

use error::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "bellbox", version, about = "Correlation models, entropy, and Bell-test geometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Spin,
    Polarization,
}

#[derive(Subcommand)]
enum Command {
    /// CHSH statistic of a model file.
    Chsh {
        #[arg(long)]
        model: PathBuf,
    },
    /// Clauser-Horne statistic of a detect-coded model file.
    Ch {
        #[arg(long)]
        model: PathBuf,
    },
    /// No-signalling check of a model file's behavior.
    Nosignal {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Seeded Monte Carlo estimate of one context expectation.
    Mc {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 0)]
        i: usize,
        #[arg(long, default_value_t = 0)]
        j: usize,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Singlet behavior at the given angles.
    Oracle {
        #[arg(long, default_value_t = 0.0)]
        a0: f64,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
        a1: f64,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
        b0: f64,
        #[arg(long, default_value_t = -std::f64::consts::FRAC_PI_4)]
        b1: f64,
        #[arg(long, value_enum, default_value_t = ConventionArg::Spin)]
        convention: ConventionArg,
        /// Write the behavior table as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximum CHSH over mixtures of deterministic strategies.
    LpLocal {
        #[arg(long)]
        no_signalling: bool,
        /// Write the witness model file here.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Maximum CHSH over the outcome-conditioned class.
    LpRetro {
        #[arg(long)]
        no_signalling: bool,
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Decide whether a behavior file is realizable by conditioned weights.
    Feasibility {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Two-chamber lattice-gas run; CSV trajectory (t, j, entropy_over_kB).
    Gas {
        #[arg(long, default_value_t = 64)]
        width: usize,
        #[arg(long, default_value_t = 64)]
        height: usize,
        #[arg(long, default_value_t = 32)]
        wall_col: usize,
        #[arg(long, default_value_t = 4)]
        hole_rows: usize,
        #[arg(long, default_value_t = 512)]
        particles: usize,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
        /// Run the echo protocol, reversing at this step.
        #[arg(long)]
        reverse_at: Option<usize>,
        #[arg(long)]
        seed: u64,
        /// CSV output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Entropy calculators.
    Entropy {
        #[command(subcommand)]
        which: EntropyCommand,
    },
    /// Validate a Bell-experiment event layout from a JSON file.
    Geometry {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum EntropyCommand {
    /// Sum of Q/T over heat steps; pass --q and --t once per step.
    Clausius {
        #[arg(long = "q", required = true)]
        q: Vec<f64>,
        #[arg(long = "t", required = true)]
        t: Vec<f64>,
    },
    /// Entropy produced by q joules crossing a hot-cold contact.
    Contact {
        #[arg(long)]
        q: f64,
        #[arg(long)]
        t_hot: f64,
        #[arg(long)]
        t_cold: f64,
    },
    /// ln C(n, j): two-chamber counting entropy in units of k_B.
    Boltzmann {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        j: u64,
    },
    /// Steady entropy production rate of an absorb-at-t-in,
    /// emit-at-t-out radiation balance.
    Earth {
        #[arg(long)]
        power: f64,
        #[arg(long)]
        t_in: f64,
        #[arg(long)]
        t_out: f64,
    },
}

/// 17 significant digits: lossless decimal round-trip for f64.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
