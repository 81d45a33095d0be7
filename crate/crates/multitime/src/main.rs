use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use multitime::cli::{self, CliError};

/// Numerical experiments contrasting multi-time Schrödinger evolution with
/// the ultrahyperbolic (two-timelike-dimension) wave equation.
#[derive(Parser)]
#[command(name = "mtlab", version, about)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the scenario named in a config file and write CSV + summary output
    Run {
        /// Path to a `key = value` config file; `scenario` is required
        config: PathBuf,
        /// Write outputs here instead of the config's output_dir
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Replace the config's random seed
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List the available scenarios
    List,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match args.command {
        Command::List => {
            print!("{}", cli::list_scenarios());
            ExitCode::SUCCESS
        }
        Command::Run {
            config,
            output_dir,
            seed,
        } => match cli::run(&config, output_dir.as_deref(), seed) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e @ (CliError::Config(_) | CliError::Output { .. } | CliError::Run(_))) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
