//! Config-file handling and parameter resolution.
//!
//! Precedence: command-line flags override the JSON config file, which
//! overrides built-in defaults. Environment variables are deliberately
//! not consulted. Config values use the same string syntax as the flags;
//! bare JSON numbers and booleans are accepted and stringified.

use std::path::Path;

use serde::{Deserialize, Deserializer};

use crate::error::{validation, CliResult};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub log2: Option<bool>,
    pub redact_key: Option<bool>,
    #[serde(default, deserialize_with = "flexible")]
    pub format: Option<String>,
    #[serde(default, deserialize_with = "flexible")]
    pub m: Option<String>,
    #[serde(default, deserialize_with = "flexible")]
    pub d: Option<String>,
    #[serde(default, deserialize_with = "flexible")]
    pub input: Option<String>,
    #[serde(default, deserialize_with = "flexible")]
    pub unitary: Option<String>,
    #[serde(default, deserialize_with = "flexible")]
    pub walk: Option<String>,
    #[serde(default, deserialize_with = "flexible")]
    pub coin: Option<String>,
    #[serde(default, deserialize_with = "flexible")]
    pub t: Option<String>,
    #[serde(default, deserialize_with = "flexible")]
    pub samples: Option<String>,
    #[serde(default, deserialize_with = "flexible")]
    pub trials: Option<String>,
    #[serde(default, deserialize_with = "flexible")]
    pub rounds: Option<String>,
    #[serde(default, deserialize_with = "flexible")]
    pub m_max: Option<String>,
    #[serde(default, deserialize_with = "flexible")]
    pub d_range: Option<String>,
    #[serde(default, deserialize_with = "flexible")]
    pub m_range: Option<String>,
    #[serde(default, deserialize_with = "flexible")]
    pub eps: Option<String>,
    #[serde(default, deserialize_with = "flexible")]
    pub m_cap: Option<String>,
    #[serde(default, deserialize_with = "flexible")]
    pub max_configs: Option<String>,
}

fn flexible<'de, D: Deserializer<'de>>(de: D) -> Result<Option<String>, D::Error> {
    let value = Option::<serde_json::Value>::deserialize(de)?;
    match value {
        None | Some(serde_json::Value::Null) => Ok(None),
        Some(serde_json::Value::String(s)) => Ok(Some(s)),
        Some(serde_json::Value::Number(n)) => Ok(Some(n.to_string())),
        Some(serde_json::Value::Bool(b)) => Ok(Some(b.to_string())),
        Some(other) => Err(serde::de::Error::custom(format!(
            "expected a scalar config value, got {other}"
        ))),
    }
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| {
                    validation(format!("cannot read config file {}: {e}", p.display()))
                })?;
                serde_json::from_str(&text)
                    .map_err(|e| validation(format!("invalid config file {}: {e}", p.display())))
            }
        }
    }
}

/// Flag value if given, else config value, else `None`.
pub fn pick<T: Clone>(flag: Option<T>, config: Option<T>) -> Option<T> {
    flag.or(config)
}

/// As [`pick`] with a typed parse of the config string.
pub fn pick_parsed<T: std::str::FromStr>(
    flag: Option<T>,
    config: &Option<String>,
    name: &str,
) -> CliResult<Option<T>> {
    if let Some(v) = flag {
        return Ok(Some(v));
    }
    match config {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|_| validation(format!("config value for {name} is invalid: {raw:?}"))),
    }
}

pub fn parse_u64_list(raw: &str, name: &str) -> CliResult<Vec<u64>> {
    let list: Result<Vec<u64>, _> = raw.split(',').map(|s| s.trim().parse::<u64>()).collect();
    let list = list.map_err(|_| validation(format!("{name} must be a comma-separated integer list, got {raw:?}")))?;
    if list.is_empty() {
        return Err(validation(format!("{name} must not be empty")));
    }
    Ok(list)
}

pub fn parse_f64_list(raw: &str, name: &str) -> CliResult<Vec<f64>> {
    let list: Result<Vec<f64>, _> = raw.split(',').map(|s| s.trim().parse::<f64>()).collect();
    let list = list.map_err(|_| validation(format!("{name} must be a comma-separated number list, got {raw:?}")))?;
    if list.is_empty() {
        return Err(validation(format!("{name} must not be empty")));
    }
    Ok(list)
}

/// Inclusive `lo:hi` range.
pub fn parse_range(raw: &str, name: &str) -> CliResult<Vec<u64>> {
    let (lo, hi) = raw
        .split_once(':')
        .ok_or_else(|| validation(format!("{name} must look like lo:hi, got {raw:?}")))?;
    let lo: u64 = lo
        .trim()
        .parse()
        .map_err(|_| validation(format!("{name} lower bound is invalid: {raw:?}")))?;
    let hi: u64 = hi
        .trim()
        .parse()
        .map_err(|_| validation(format!("{name} upper bound is invalid: {raw:?}")))?;
    if lo > hi || lo == 0 {
        return Err(validation(format!(
            "{name} must satisfy 1 <= lo <= hi, got {raw:?}"
        )));
    }
    Ok((lo..=hi).collect())
}

/// Occupation-number string: one digit per mode.
pub fn parse_occupations(raw: &str) -> CliResult<Vec<u32>> {
    raw.chars()
        .map(|c| {
            c.to_digit(10)
                .ok_or_else(|| validation(format!("invalid occupation digit '{c}' in {raw:?}")))
        })
        .collect()
}
