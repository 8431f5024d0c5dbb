//! `overlap`: log average-overlap grid over photon count and Hamming
//! distance.

use clap::Args;
use serde::Serialize;

use encwalk_core::security::{overlap_grid, LogBase};

use crate::commands::Globals;
use crate::config::{pick_parsed, ConfigFile};
use crate::error::CliResult;
use crate::output::{write_table, Cell, Meta, Table};

#[derive(Args, Debug)]
pub struct OverlapArgs {
    /// Largest photon count in the grid
    #[arg(long)]
    m_max: Option<usize>,
    /// Key divisions d
    #[arg(long)]
    d: Option<u32>,
}

#[derive(Serialize)]
struct ResolvedConfig {
    m_max: usize,
    d: u32,
    log2: bool,
    format: crate::output::OutputFormat,
}

pub fn run(args: OverlapArgs, globals: Globals, cfg: &ConfigFile) -> CliResult<Vec<u8>> {
    let m_max = pick_parsed(args.m_max, &cfg.m_max, "--m-max")?.unwrap_or(30);
    let d = pick_parsed(args.d, &cfg.d, "--d")?.unwrap_or(1024);
    let base = if globals.log2 { LogBase::Base2 } else { LogBase::Natural };

    let resolved = ResolvedConfig {
        m_max,
        d,
        log2: globals.log2,
        format: globals.format,
    };
    let meta = Meta::new("overlap", globals.seed, &resolved);

    let mut table = Table::new(vec!["m", "h", "log_overlap"]);
    for cell in overlap_grid(m_max, d, base)? {
        table.push(vec![
            Cell::Int(cell.m as u64),
            Cell::Int(cell.h as u64),
            Cell::Float(cell.log_overlap),
        ]);
    }

    let mut buf = Vec::new();
    write_table(&mut buf, &meta, &table, globals.format)?;
    Ok(buf)
}
