//! `holevo`: exact and asymptotic Holevo information per (m, d).

use clap::Args;
use serde::Serialize;

use encwalk_core::security::{holevo_asymptotic, holevo_exact_capped, DEFAULT_HOLEVO_MODE_CAP};

use crate::commands::Globals;
use crate::config::{parse_u64_list, pick, pick_parsed, ConfigFile};
use crate::error::{validation, CliResult};
use crate::output::{write_table, Cell, Meta, Table};

#[derive(Args, Debug)]
pub struct HolevoArgs {
    /// Photon counts, comma separated (e.g. 1,2,4)
    #[arg(long)]
    m: Option<String>,
    /// Division counts, comma separated
    #[arg(long)]
    d: Option<String>,
    /// Cap on m for the exact 2^m-dimensional computation
    #[arg(long)]
    m_cap: Option<usize>,
}

#[derive(Serialize)]
struct ResolvedConfig {
    m: Vec<usize>,
    d: Vec<u32>,
    m_cap: usize,
    format: crate::output::OutputFormat,
}

pub fn run(args: HolevoArgs, globals: Globals, cfg: &ConfigFile) -> CliResult<Vec<u8>> {
    let m_raw = pick(args.m, cfg.m.clone()).ok_or_else(|| validation("--m is required"))?;
    let d_raw = pick(args.d, cfg.d.clone()).ok_or_else(|| validation("--d is required"))?;
    let m_list: Vec<usize> = parse_u64_list(&m_raw, "--m")?
        .into_iter()
        .map(|v| v as usize)
        .collect();
    let d_list: Vec<u32> = parse_u64_list(&d_raw, "--d")?
        .into_iter()
        .map(|v| v as u32)
        .collect();
    let m_cap = pick_parsed(args.m_cap, &cfg.m_cap, "--m-cap")?.unwrap_or(DEFAULT_HOLEVO_MODE_CAP);

    let resolved = ResolvedConfig {
        m: m_list.clone(),
        d: d_list.clone(),
        m_cap,
        format: globals.format,
    };
    let meta = Meta::new("holevo", globals.seed, &resolved);

    let mut table = Table::new(vec!["m", "d", "chi_exact", "chi_asymptotic"]);
    for &m in &m_list {
        for &d in &d_list {
            let chi = holevo_exact_capped(m, d, m_cap)?;
            table.push(vec![
                Cell::Int(m as u64),
                Cell::Int(d as u64),
                Cell::Float(chi),
                Cell::Float(holevo_asymptotic(m)),
            ]);
        }
    }

    let mut buf = Vec::new();
    write_table(&mut buf, &meta, &table, globals.format)?;
    Ok(buf)
}
