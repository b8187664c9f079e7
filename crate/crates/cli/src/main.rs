mod input;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use input::{GraphSource, InputError};

#[derive(Debug, Parser)]
#[command(
    name = "walktheta",
    version,
    about = "Lovász theta bounds through walk-generating functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for per-graph work; output order is preserved.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// One JSON bound report per graph.
    Bounds {
        #[command(flatten)]
        source: GraphSource,
        /// Add the exact independence number as a witness (n <= 64).
        #[arg(long)]
        alpha_oracle: bool,
        /// Tolerance for the dominance and witness comparisons.
        #[arg(long, default_value_t = walktheta::bounds::DOMINANCE_TOL)]
        tol: f64,
    },
    /// One JSON theta estimate per graph.
    Theta {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_enum, default_value_t = MethodArg::Smoothed)]
        method: MethodArg,
        #[arg(long, default_value_t = 5000)]
        max_iter: usize,
        /// Stall tolerance of the subgradient method.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Report the exact independence number as `lower` (n <= 20).
        #[arg(long)]
        alpha_oracle: bool,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        source: GraphSource,
        /// Number of random instances per randomized suite.
        #[arg(long)]
        random: Option<usize>,
        /// Override the suite's comparison tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// CSV samples of W(x) with the spectral interval as metadata rows.
    Plot {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, allow_negative_numbers = true)]
        lo: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        hi: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Smoothed,
    Subgradient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Duality,
    Scaling,
    Product,
    Dominance,
    Optimizer,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

/// A closed downstream pipe (`| head`) ends output early but is not a failure.
fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<std::io::Error>()
            .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
    })
}
