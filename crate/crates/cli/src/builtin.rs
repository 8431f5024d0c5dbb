//! Built-in named unitaries, walks, and coins; the standard scenarios
//! need no external files.

use std::path::Path;

use encwalk_core::fock::{haar_unitary_from_seed, Interferometer};
use encwalk_core::walk::{WalkGraph, WalkSpec};

use crate::error::{validation, CliResult};

/// `identity` | `bs50` | `haar:<seed>` | `file:<path>`; `modes` supplies
/// the size where the name does not imply one.
pub fn parse_unitary(spec: &str, modes: Option<usize>) -> CliResult<Interferometer> {
    if spec == "identity" {
        let m = modes.ok_or_else(|| validation("unitary 'identity' needs a mode count"))?;
        return Ok(Interferometer::identity(m)?);
    }
    if spec == "bs50" {
        if let Some(m) = modes {
            if m != 2 {
                return Err(validation(format!(
                    "unitary 'bs50' is a two-mode element, got m = {m}"
                )));
            }
        }
        return Ok(Interferometer::balanced_mixer());
    }
    if let Some(seed) = spec.strip_prefix("haar:") {
        let seed: u64 = seed
            .parse()
            .map_err(|_| validation(format!("invalid Haar seed in {spec:?}")))?;
        let m = modes.ok_or_else(|| validation("unitary 'haar:<seed>' needs a mode count"))?;
        return Ok(haar_unitary_from_seed(m, seed)?);
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let u = load_unitary(Path::new(path))?;
        if let Some(m) = modes {
            if u.mode_count() != m {
                return Err(validation(format!(
                    "unitary file has {} modes, expected {m}",
                    u.mode_count()
                )));
            }
        }
        return Ok(u);
    }
    Err(validation(format!(
        "unknown unitary {spec:?}; expected identity, bs50, haar:<seed>, or file:<path>"
    )))
}

fn load_unitary(path: &Path) -> CliResult<Interferometer> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| validation(format!("cannot read unitary file {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| validation(format!("invalid unitary file {}: {e}", path.display())))
}

/// `line<N>` | `cycle<N>`.
pub fn parse_walk_graph(spec: &str) -> CliResult<WalkGraph> {
    if let Some(n) = spec.strip_prefix("line") {
        let n: usize = n
            .parse()
            .map_err(|_| validation(format!("invalid line size in {spec:?}")))?;
        return Ok(WalkGraph::line(n)?);
    }
    if let Some(n) = spec.strip_prefix("cycle") {
        let n: usize = n
            .parse()
            .map_err(|_| validation(format!("invalid cycle size in {spec:?}")))?;
        return Ok(WalkGraph::cycle(n)?);
    }
    Err(validation(format!(
        "unknown walk {spec:?}; expected line<N>, cycle<N>, or file:<path>"
    )))
}

/// Assemble a walk: a named graph (`line<N>`, `cycle<N>`) with a named
/// coin, or `file:<path>` holding a full specification (graph, per-vertex
/// coin blocks, steps). `steps` overrides the file's step count.
pub fn build_walk_spec(walk: &str, coin: Option<&str>, steps: Option<u64>) -> CliResult<WalkSpec> {
    if let Some(path) = walk.strip_prefix("file:") {
        if coin.is_some() {
            return Err(validation(
                "--coin cannot be combined with a walk file; the file carries its own coins",
            ));
        }
        let text = std::fs::read_to_string(path)
            .map_err(|e| validation(format!("cannot read walk file {path}: {e}")))?;
        let spec: WalkSpec = serde_json::from_str(&text)
            .map_err(|e| validation(format!("invalid walk file {path}: {e}")))?;
        return Ok(match steps {
            Some(t) => spec.with_steps(t),
            None => spec,
        });
    }
    let graph = parse_walk_graph(walk)?;
    match coin.unwrap_or("hadamard") {
        "hadamard" => Ok(WalkSpec::hadamard(graph, steps.unwrap_or(0))?),
        other => Err(validation(format!(
            "unknown coin {other:?}; expected hadamard"
        ))),
    }
}
