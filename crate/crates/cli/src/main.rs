//! Experiment runner for the encrypted boson-sampling / quantum-walk
//! simulator.
//!
//! Exit codes: 0 success, 2 validation error, 3 resource-cap refusal.
//! Every output embeds a metadata header (command, resolved config, seed,
//! version) and is byte-identical across reruns with the same arguments.

mod builtin;
mod commands;
mod config;
mod error;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{attack, holevo, overlap, protocol, regions, simulate, Globals};
use config::ConfigFile;
use error::{CliError, CliResult};
use output::OutputFormat;

#[derive(Parser, Debug)]
#[command(
    name = "encwalk",
    version,
    about = "Exact simulation and security analysis of the polarisation-encrypted boson-sampling protocol"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// RNG seed; recorded in the output metadata
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Output path; stdout when omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// JSON config file; flags override its values
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Emit base-2 logarithms in the overlap grid
    #[arg(long, global = true)]
    log2: bool,

    /// Worker threads for Monte Carlo sharding (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact output distribution or samples of a network or walk
    Simulate(simulate::SimulateArgs),
    /// Run the encryption protocol and verify decryption correctness
    Protocol(protocol::ProtocolArgs),
    /// Holevo information of the encoded ensemble
    Holevo(holevo::HolevoArgs),
    /// Average-overlap grid over photon count and Hamming distance
    Overlap(overlap::OverlapArgs),
    /// Confidence regions for the random attack
    Regions(regions::RegionsArgs),
    /// Monte Carlo random-basis attack
    Attack(attack::AttackArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let cfg = ConfigFile::load(cli.config.as_deref())?;
    let globals = Globals::resolve(cli.seed, cli.format, cli.log2, &cfg)?;

    if let Some(threads) = cli.threads.or(cfg.threads) {
        if threads == 0 {
            return Err(error::validation("--threads must be >= 1"));
        }
        // ignore the error if a pool already exists (e.g. under tests)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }

    let rendered = match cli.command {
        Command::Simulate(args) => simulate::run(args, globals, &cfg)?,
        Command::Protocol(args) => protocol::run(args, globals, &cfg)?,
        Command::Holevo(args) => holevo::run(args, globals, &cfg)?,
        Command::Overlap(args) => overlap::run(args, globals, &cfg)?,
        Command::Regions(args) => regions::run(args, globals, &cfg)?,
        Command::Attack(args) => attack::run(args, globals, &cfg)?,
    };

    match cli.out {
        None => {
            std::io::stdout()
                .write_all(&rendered)
                .map_err(CliError::from)?;
        }
        Some(path) => {
            std::fs::write(&path, &rendered).map_err(|e| {
                error::validation(format!("cannot write {}: {e}", path.display()))
            })?;
        }
    }
    Ok(())
}
