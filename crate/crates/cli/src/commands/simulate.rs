//! `simulate`: exact output distribution (or samples) of a photonic
//! network or quantum walk.

use std::collections::BTreeMap;

use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use encwalk_core::fock::{output_distribution_capped, FockBasisState, DEFAULT_CONFIGURATION_CAP};

use crate::builtin;
use crate::commands::Globals;
use crate::config::{parse_occupations, pick, pick_parsed, ConfigFile};
use crate::error::{validation, CliResult};
use crate::output::{format_state, write_table, Cell, Meta, Table};

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Mode count; defaults to the input length
    #[arg(long)]
    m: Option<usize>,
    /// Input occupations, one digit per mode (e.g. 1100)
    #[arg(long)]
    input: Option<String>,
    /// Unitary source: identity | bs50 | haar:<seed> | file:<path>
    #[arg(long, conflicts_with = "walk")]
    unitary: Option<String>,
    /// Walk source: line<N> | cycle<N> | file:<path>
    #[arg(long)]
    walk: Option<String>,
    /// Coin for --walk (hadamard)
    #[arg(long)]
    coin: Option<String>,
    /// Step count for --walk
    #[arg(long)]
    t: Option<u64>,
    /// Draw this many samples instead of emitting the exact distribution
    #[arg(long)]
    samples: Option<u64>,
    /// Cap on enumerated output configurations
    #[arg(long)]
    max_configs: Option<u64>,
}

#[derive(Serialize)]
struct ResolvedConfig {
    m: usize,
    input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    unitary: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    walk: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coin: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<u64>,
    max_configs: u64,
    format: crate::output::OutputFormat,
}

pub fn run(args: SimulateArgs, globals: Globals, cfg: &ConfigFile) -> CliResult<Vec<u8>> {
    let input_raw = pick(args.input, cfg.input.clone())
        .ok_or_else(|| validation("--input is required"))?;
    let occupations = parse_occupations(&input_raw)?;
    let walk = pick(args.walk, cfg.walk.clone());
    let unitary_name = pick(args.unitary, cfg.unitary.clone());
    let max_configs = pick_parsed(args.max_configs, &cfg.max_configs, "--max-configs")?
        .unwrap_or(DEFAULT_CONFIGURATION_CAP.min(u64::MAX as u128) as u64);
    let samples = pick_parsed(args.samples, &cfg.samples, "--samples")?;
    let m_flag = pick_parsed(args.m, &cfg.m, "--m")?;

    let (u, resolved) = match (&walk, &unitary_name) {
        (Some(walk_name), None) => {
            let coin = pick(args.coin, cfg.coin.clone());
            let t = pick_parsed(args.t, &cfg.t, "--t")?;
            let spec = builtin::build_walk_spec(walk_name, coin.as_deref(), t)?;
            let modes = spec.graph().mode_count();
            if occupations.len() != modes {
                return Err(validation(format!(
                    "walk {walk_name:?} has {modes} modes, input has {}",
                    occupations.len()
                )));
            }
            let resolved = ResolvedConfig {
                m: modes,
                input: input_raw.clone(),
                unitary: None,
                walk: Some(walk_name.clone()),
                coin,
                t: Some(spec.steps()),
                samples,
                max_configs,
                format: globals.format,
            };
            (spec.unitary(), resolved)
        }
        (None, Some(name)) => {
            let m = m_flag.unwrap_or(occupations.len());
            if m != occupations.len() {
                return Err(validation(format!(
                    "--m {m} disagrees with the {}-mode input",
                    occupations.len()
                )));
            }
            let u = builtin::parse_unitary(name, Some(m))?;
            let resolved = ResolvedConfig {
                m,
                input: input_raw.clone(),
                unitary: Some(name.clone()),
                walk: None,
                coin: None,
                t: None,
                samples,
                max_configs,
                format: globals.format,
            };
            (u, resolved)
        }
        (Some(_), Some(_)) => {
            return Err(validation("--unitary and --walk are mutually exclusive"))
        }
        (None, None) => return Err(validation("one of --unitary or --walk is required")),
    };

    let input = FockBasisState::new(occupations);
    let dist = output_distribution_capped(&u, &input, max_configs as u128)?;
    let meta = Meta::new("simulate", globals.seed, &resolved);

    let table = match samples {
        None => {
            let mut table = Table::new(vec!["state", "probability", "amplitude_re", "amplitude_im"]);
            for (state, p) in dist.iter() {
                let amp = dist.amplitude(state).expect("pure-state distribution");
                table.push(vec![
                    Cell::Str(format_state(state)),
                    Cell::Float(p),
                    Cell::Float(amp.re),
                    Cell::Float(amp.im),
                ]);
            }
            table
        }
        Some(n) => {
            if n == 0 {
                return Err(validation("--samples must be >= 1"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(globals.seed);
            let mut counts: BTreeMap<FockBasisState, u64> = BTreeMap::new();
            for _ in 0..n {
                *counts.entry(dist.sample(&mut rng)).or_insert(0) += 1;
            }
            let mut table = Table::new(vec!["state", "count", "frequency"]);
            for (state, count) in counts {
                table.push(vec![
                    Cell::Str(format_state(&state)),
                    Cell::Int(count),
                    Cell::Float(count as f64 / n as f64),
                ]);
            }
            table
        }
    };

    let mut buf = Vec::new();
    write_table(&mut buf, &meta, &table, globals.format)?;
    Ok(buf)
}
