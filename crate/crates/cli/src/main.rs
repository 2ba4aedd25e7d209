use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hardylog::harness::{run_to_dir, Command, RunOptions};

/// Run a hardylog experiment and write `<out>/<command>.csv` plus its metadata.
#[derive(Debug, Parser)]
#[command(name = "hardylog", version)]
struct Cli {
    /// One of verify, sharpness, interp, robin, constants.
    command: Command,
    /// JSON experiment configuration.
    #[arg(long)]
    config: PathBuf,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Overrides the seed in the configuration.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = RunOptions {
        seed: cli.seed,
        jobs: cli.jobs,
    };
    match run_to_dir(cli.command, &cli.config, &cli.out, &opts) {
        Ok(report) if report.passed() => {
            eprintln!("{}: ok", cli.command);
            ExitCode::SUCCESS
        }
        Ok(report) => {
            for f in &report.failures {
                eprintln!("{}: FAIL {f}", cli.command);
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("{}: error: {e}", cli.command);
            ExitCode::from(2)
        }
    }
}
