//! `protocol`: run the one-round encryption protocol and verify that
//! decryption reproduces plain boson sampling.

use std::collections::BTreeMap;

use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use encwalk_core::fock::{output_distribution, FockBasisState, OutputDistribution};
use encwalk_core::protocol::{
    bob_evolve, decrypt_measure, encode_input, encrypt, run_round, LogicalInput, PolarizationKey,
    Transcript,
};

use crate::builtin;
use crate::commands::Globals;
use crate::config::{pick, pick_parsed, ConfigFile};
use crate::error::{validation, CliResult};
use crate::output::{
    fmt_float, format_state, write_metadata_header, Cell, Meta, OutputFormat, Table,
};

#[derive(Args, Debug)]
pub struct ProtocolArgs {
    /// Logical mode count; defaults to the input length
    #[arg(long)]
    m: Option<usize>,
    /// Key divisions d
    #[arg(long)]
    d: Option<u32>,
    /// Logical input bits (e.g. 101); defaults to all ones
    #[arg(long)]
    input: Option<String>,
    /// Bob's unitary; defaults to haar:<seed>
    #[arg(long)]
    unitary: Option<String>,
    /// "exact" for the all-keys verification, or a round count to sample
    #[arg(long)]
    rounds: Option<String>,
    /// Emit Bob's view of the transcript (key omitted)
    #[arg(long)]
    redact_key: bool,
}

#[derive(Serialize)]
struct ResolvedConfig {
    m: usize,
    d: u32,
    input: String,
    unitary: String,
    rounds: String,
    redact_key: bool,
    format: OutputFormat,
}

pub fn run(args: ProtocolArgs, globals: Globals, cfg: &ConfigFile) -> CliResult<Vec<u8>> {
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
    if d == 0 {
        return Err(validation("--d must be >= 1"));
    }
    let unitary_name =
        pick(args.unitary, cfg.unitary.clone()).unwrap_or_else(|| format!("haar:{}", globals.seed));
    let rounds = pick(args.rounds, cfg.rounds.clone()).unwrap_or_else(|| "exact".into());
    let redact = args.redact_key || cfg.redact_key.unwrap_or(false);

    let u = builtin::parse_unitary(&unitary_name, Some(m))?;
    let plain = output_distribution(&u, &bits.to_fock())?;
    let mut rng = ChaCha8Rng::seed_from_u64(globals.seed);

    let resolved = ResolvedConfig {
        m,
        d,
        input: bits.to_string(),
        unitary: unitary_name,
        rounds: rounds.clone(),
        redact_key: redact,
        format: globals.format,
    };
    let meta = Meta::new("protocol", globals.seed, &resolved);

    let (report, transcript) = if rounds == "exact" {
        // every key must reproduce plain boson sampling exactly
        let mut max_tv: f64 = 0.0;
        let encoded = encode_input(&bits);
        for k in 0..d {
            let key = PolarizationKey::new(k, d)?;
            let evolved = bob_evolve(&encrypt(&encoded, &key), &u)?;
            let decrypted = decrypt_measure(&evolved, &key);
            max_tv = max_tv.max(decrypted.tv_distance(&plain));
        }
        let (_, transcript) = run_round(&bits, d, &u, &mut rng)?;
        let report = json!({
            "mode": "exact",
            "keys_checked": d,
            "tv_distance": max_tv,
        });
        (report, transcript)
    } else {
        let n: u64 = rounds
            .parse()
            .map_err(|_| validation(format!("--rounds must be \"exact\" or an integer, got {rounds:?}")))?;
        if n == 0 {
            return Err(validation("--rounds must be >= 1"));
        }
        let mut counts: BTreeMap<FockBasisState, u64> = BTreeMap::new();
        let mut last: Option<Transcript> = None;
        for _ in 0..n {
            let (pattern, transcript) = run_round(&bits, d, &u, &mut rng)?;
            *counts.entry(pattern).or_insert(0) += 1;
            last = Some(transcript);
        }
        let empirical = OutputDistribution::from_probabilities(
            m,
            counts
                .into_iter()
                .map(|(state, c)| (state, c as f64 / n as f64))
                .collect(),
        );
        let report = json!({
            "mode": "sampled",
            "rounds": n,
            "tv_distance": empirical.tv_distance(&plain),
        });
        (report, last.expect("at least one round ran"))
    };

    let transcript = if redact { transcript.redacted() } else { transcript };

    let mut buf = Vec::new();
    match globals.format {
        OutputFormat::Json => {
            let doc = json!({
                "meta": serde_json::to_value(&meta).expect("meta serializes"),
                "report": report,
                "transcript": serde_json::to_value(&transcript).expect("transcript serializes"),
            });
            use std::io::Write;
            writeln!(buf, "{}", serde_json::to_string_pretty(&doc).expect("json emits"))?;
        }
        OutputFormat::Csv => {
            // summary metrics only; the transcript needs --format json
            let mut table = Table::new(vec!["metric", "value"]);
            let obj = report.as_object().expect("report is an object");
            for (key, value) in obj {
                let rendered = match value {
                    serde_json::Value::Number(x) if x.is_f64() => {
                        fmt_float(x.as_f64().expect("f64 number"))
                    }
                    other => other.to_string().trim_matches('"').to_string(),
                };
                table.push(vec![Cell::Str(key.clone()), Cell::Str(rendered)]);
            }
            table.push(vec![
                Cell::Str("result".into()),
                Cell::Str(format_state(&transcript.result)),
            ]);
            write_metadata_header(&mut buf, &meta)?;
            use std::io::Write;
            writeln!(buf, "{}", table.columns.join(","))?;
            for row in &table.rows {
                let cells: Vec<String> = row
                    .iter()
                    .map(|c| match c {
                        Cell::Str(s) => s.clone(),
                        Cell::Int(v) => v.to_string(),
                        Cell::Float(v) => fmt_float(*v),
                    })
                    .collect();
                writeln!(buf, "{}", cells.join(","))?;
            }
        }
    }
    Ok(buf)
}
