//! `sigrefine`: refinement checks and learning simulations from the command line.

mod inputs;
mod render;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "sigrefine", version, about = "Equilibrium refinements and steady-state learning for signaling games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Print progress to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Refinement verdicts for one profile, or for every pure equilibrium.
    Analyze {
        /// Game file or `builtin:<name>`.
        #[arg(long)]
        game: String,
        /// Profile file or `builtin:<game>/<profile>`.
        #[arg(long, required_unless_present = "enumerate", conflicts_with = "enumerate")]
        profile: Option<String>,
        #[arg(long)]
        enumerate: bool,
    },
    /// The rational compatibility order as a per-signal edge list.
    Compat {
        #[arg(long)]
        game: String,
        /// Quantify over every receiver strategy, not only rational ones.
        #[arg(long)]
        unrestricted: bool,
    },
    /// Steady states (or the sender response to a probe) at each grid point.
    Simulate(SimArgs),
    /// Patient-stability sweep over the scenario grids.
    Sweep(SimArgs),
    /// Checks the bundled examples against their expected verdicts.
    Verify,
}

#[derive(Args, Debug, Clone)]
pub struct SimArgs {
    /// Scenario file or `builtin:<name>`.
    #[arg(long)]
    scenario: String,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    agents: Option<usize>,
    /// Comma-separated discount factors.
    #[arg(long, value_delimiter = ',')]
    grid_delta: Option<Vec<f64>>,
    /// Comma-separated survival probabilities.
    #[arg(long, value_delimiter = ',')]
    grid_gamma: Option<Vec<f64>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { game, profile, enumerate } => run::analyze(&game, profile.as_deref(), enumerate, &cli.out),
        Command::Compat { game, unrestricted } => run::compat(&game, !unrestricted, &cli.out),
        Command::Simulate(args) => run::simulate(&args, &cli.out),
        Command::Sweep(args) => run::sweep(&args, &cli.out),
        Command::Verify => run::verify(&cli.out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(run::exit_code(&e))
        }
    }
}
