use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use aqg::io::runner::{execute, load_config, Command, EXIT_INVALID};

#[derive(Parser)]
#[command(name = "aqg", version, about = "Anisotropic SQG solver and estimate checks")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Simulate one configuration and apply the enabled monitors.
    Run { config: PathBuf },
    /// Run the configuration over an (alpha, beta) grid.
    Sweep { config: PathBuf },
    /// Evaluate the inequality checkers on a seeded corpus.
    CheckLemmas { config: PathBuf },
    /// Twin-trajectory sensitivity experiment.
    Twin { config: PathBuf },
    /// Truncated-system convergence study.
    Galerkin { config: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, path) = match cli.command {
        Cmd::Run { config } => (Command::Run, config),
        Cmd::Sweep { config } => (Command::Sweep, config),
        Cmd::CheckLemmas { config } => (Command::CheckLemmas, config),
        Cmd::Twin { config } => (Command::Twin, config),
        Cmd::Galerkin { config } => (Command::Galerkin, config),
    };
    let outcome = load_config(&path).and_then(|cfg| execute(command, &cfg));
    match outcome {
        Ok(o) => {
            for line in &o.summary {
                println!("{line}");
            }
            println!("{command}: exit {} ({})", o.code, o.output_dir.display());
            ExitCode::from(o.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID as u8)
        }
    }
}
