use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use illiq_arb::cli::{self, Command, Overrides};
use illiq_arb::config::{load_config, KindTag};

/// Liquidation values, solvency cones and constructive arbitrage transfer
/// for markets with volume-dependent transaction costs.
#[derive(Parser)]
#[command(name = "illiq-arb", version)]
struct Cli {
    /// validate | liquidate | verdict | repair | amplify | search | conditions | props
    command: String,
    /// Path to the JSON configuration (optional for props).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory for report files (default: current directory).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized commands.
    #[arg(long)]
    seed: Option<u64>,
    /// Market kind: G | Kbar | Kalpha | GN | KbarN | MalphaN.
    #[arg(long)]
    kind: Option<String>,
    /// Penalty level for the Kalpha / MalphaN kinds.
    #[arg(long)]
    alpha: Option<f64>,
    /// Solvency comparison tolerance override.
    #[arg(long)]
    tol: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command: Command = match cli.command.parse() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    let kind: Option<KindTag> = match cli.kind.as_deref().map(str::parse).transpose() {
        Ok(k) => k,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    let config = match cli.config.as_deref().map(load_config).transpose() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    let overrides = Overrides {
        kind,
        alpha: cli.alpha,
        tol: cli.tol,
        seed: cli.seed,
    };
    let out_dir = cli.out.unwrap_or_else(|| PathBuf::from("."));
    match cli::run(command, config.as_ref(), &overrides, &out_dir) {
        Ok(output) => {
            print!("{}", output.summary);
            ExitCode::from(output.exit_code as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
