pub mod attack;
pub mod holevo;
pub mod overlap;
pub mod protocol;
pub mod regions;
pub mod simulate;

use crate::config::ConfigFile;
use crate::output::OutputFormat;

/// Globals after flag/config/default resolution.
#[derive(Clone, Copy, Debug)]
pub struct Globals {
    pub seed: u64,
    pub format: OutputFormat,
    pub log2: bool,
}

impl Globals {
    pub fn resolve(
        seed: Option<u64>,
        format: Option<OutputFormat>,
        log2: bool,
        cfg: &ConfigFile,
    ) -> crate::error::CliResult<Self> {
        let format = match format {
            Some(f) => f,
            None => match cfg.format.as_deref() {
                None => OutputFormat::Csv,
                Some("csv") => OutputFormat::Csv,
                Some("json") => OutputFormat::Json,
                Some(other) => {
                    return Err(crate::error::validation(format!(
                        "config format must be csv or json, got {other:?}"
                    )))
                }
            },
        };
        Ok(Self {
            seed: seed.or(cfg.seed).unwrap_or(0),
            format,
            log2: log2 || cfg.log2.unwrap_or(false),
        })
    }
}
