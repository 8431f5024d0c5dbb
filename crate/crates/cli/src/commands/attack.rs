//! `attack`: Monte Carlo random-basis attack with the analytic columns.

use clap::Args;
use serde::Serialize;

use encwalk_core::protocol::LogicalInput;
use encwalk_core::security::{
    attack_success_probability, guess_probability_bound, random_attack_mc,
};

use crate::commands::Globals;
use crate::config::{pick, pick_parsed, ConfigFile};
use crate::error::{validation, CliResult};
use crate::output::{write_table, Cell, Meta, Table};

#[derive(Args, Debug)]
pub struct AttackArgs {
    /// Photon count; defaults to the input length
    #[arg(long)]
    m: Option<usize>,
    /// Key divisions d
    #[arg(long)]
    d: Option<u32>,
    /// Logical input bits; defaults to all ones
    #[arg(long)]
    input: Option<String>,
    /// Monte Carlo trials
    #[arg(long)]
    trials: Option<u64>,
}

#[derive(Serialize)]
struct ResolvedConfig {
    m: usize,
    d: u32,
    input: String,
    trials: u64,
    format: crate::output::OutputFormat,
}

pub fn run(args: AttackArgs, globals: Globals, cfg: &ConfigFile) -> CliResult<Vec<u8>> {
    let input_raw = pick(args.input, cfg.input.clone());
    let m_flag = pick_parsed(args.m, &cfg.m, "--m")?;
    let bits = match (&input_raw, m_flag) {
        (Some(raw), m) => {
            let bits = LogicalInput::from_bit_string(raw)?;
            if let Some(m) = m {
                if m != bits.modes() {
                    return Err(validation(format!(
                        "--m {m} disagrees with the {}-bit input",
                        bits.modes()
                    )));
                }
            }
            bits
        }
        (None, Some(m)) => LogicalInput::new(vec![true; m])?,
        (None, None) => return Err(validation("--m or --input is required")),
    };
    let m = bits.modes();
    let d = pick_parsed(args.d, &cfg.d, "--d")?.ok_or_else(|| validation("--d is required"))?;
    let trials = pick_parsed(args.trials, &cfg.trials, "--trials")?.unwrap_or(100_000);

    let resolved = ResolvedConfig {
        m,
        d,
        input: bits.to_string(),
        trials,
        format: globals.format,
    };
    let meta = Meta::new("attack", globals.seed, &resolved);

    let outcome = random_attack_mc(m, d, &bits, trials, globals.seed)?;
    let mut table = Table::new(vec![
        "m",
        "d",
        "trials",
        "exact_rate",
        "exact_se",
        "complement_rate",
        "complement_se",
        "p_av",
        "guess_bound",
    ]);
    table.push(vec![
        Cell::Int(m as u64),
        Cell::Int(d as u64),
        Cell::Int(trials),
        Cell::Float(outcome.exact_rate()),
        Cell::Float(outcome.exact_std_err()),
        Cell::Float(outcome.complement_inclusive_rate()),
        Cell::Float(outcome.complement_inclusive_std_err()),
        Cell::Float(attack_success_probability(m, d)),
        Cell::Float(guess_probability_bound(m)),
    ]);

    let mut buf = Vec::new();
    write_table(&mut buf, &meta, &table, globals.format)?;
    Ok(buf)
}
