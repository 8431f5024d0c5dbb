//! `regions`: confidence-region table for the random attack, p_av < eps.

use clap::Args;
use serde::Serialize;

use encwalk_core::security::confidence_regions;

use crate::commands::Globals;
use crate::config::{parse_f64_list, parse_range, pick, ConfigFile};
use crate::error::{validation, CliResult};
use crate::output::{write_table, Cell, Meta, Table};

#[derive(Args, Debug)]
pub struct RegionsArgs {
    /// Inclusive division range lo:hi
    #[arg(long)]
    d_range: Option<String>,
    /// Inclusive photon range lo:hi
    #[arg(long)]
    m_range: Option<String>,
    /// Confidence thresholds, comma separated, each in (0, 1)
    #[arg(long)]
    eps: Option<String>,
}

#[derive(Serialize)]
struct ResolvedConfig {
    d_range: String,
    m_range: String,
    eps: Vec<f64>,
    format: crate::output::OutputFormat,
}

pub fn run(args: RegionsArgs, globals: Globals, cfg: &ConfigFile) -> CliResult<Vec<u8>> {
    let d_raw = pick(args.d_range, cfg.d_range.clone()).unwrap_or_else(|| "2:64".into());
    let m_raw = pick(args.m_range, cfg.m_range.clone()).unwrap_or_else(|| "1:100".into());
    let eps_raw = pick(args.eps, cfg.eps.clone()).unwrap_or_else(|| "0.5,0.1,0.01".into());

    let d_values: Vec<u32> = parse_range(&d_raw, "--d-range")?
        .into_iter()
        .map(|v| v as u32)
        .collect();
    let m_values: Vec<usize> = parse_range(&m_raw, "--m-range")?
        .into_iter()
        .map(|v| v as usize)
        .collect();
    let epsilons = parse_f64_list(&eps_raw, "--eps")?;
    for &eps in &epsilons {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(validation(format!("--eps values must lie in (0, 1), got {eps}")));
        }
    }

    let resolved = ResolvedConfig {
        d_range: d_raw,
        m_range: m_raw,
        eps: epsilons.clone(),
        format: globals.format,
    };
    let meta = Meta::new("regions", globals.seed, &resolved);

    let mut table = Table::new(vec!["d", "m", "p_av", "epsilon_class"]);
    for cell in confidence_regions(&d_values, &m_values, &epsilons)? {
        table.push(vec![
            Cell::Int(cell.d as u64),
            Cell::Int(cell.m as u64),
            Cell::Float(cell.p_av),
            Cell::Str(match cell.epsilon_class {
                Some(eps) => eps.to_string(),
                None => "none".into(),
            }),
        ]);
    }

    let mut buf = Vec::new();
    write_table(&mut buf, &meta, &table, globals.format)?;
    Ok(buf)
}
