use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use vacforce_cli::{list_scenarios, load_config, run, with_threads};

#[derive(Parser)]
#[command(name = "vacforce", version, about = "Quantum-vacuum forces and torques on hot two-part bodies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the scenario described by a TOML config.
    Run {
        config: PathBuf,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Worker threads (defaults to the number of cores).
        #[arg(long)]
        threads: Option<usize>,
        /// Exit successfully even if some quantity missed its tolerance.
        #[arg(long)]
        allow_unconverged: bool,
    },
    /// List the scenarios with their default configs.
    List,
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> anyhow::Result<ExitCode> {
    match Cli::parse().command {
        Command::List => {
            print!("{}", list_scenarios());
            Ok(ExitCode::SUCCESS)
        }
        Command::Run { config, out, threads, allow_unconverged } => {
            let cfg = load_config(&config)?;
            let n = threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let result = with_threads(n, || run(&cfg, &out))??;
            for f in &result.files {
                println!("wrote {}", f.display());
            }
            for s in &result.report.scalars {
                let err = s.error.map(|e| format!(" +- {e:.3e}")).unwrap_or_default();
                println!("{:<28} {:>14.6e}{err} {}", s.name, s.value, s.unit);
            }
            for n in &result.report.notes {
                println!("note: {n}");
            }
            let bad = result.report.unconverged();
            if bad.is_empty() {
                return Ok(ExitCode::SUCCESS);
            }
            for b in &bad {
                eprintln!("unconverged: {b}");
            }
            Ok(if allow_unconverged { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}
