//! The random-basis attack: Bob measures every photon in one uniformly
//! random grid basis. Closed-form success probabilities, encoded-state
//! overlaps, confidence-region tables, and a sharded Monte Carlo
//! simulation of the literal attack.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::protocol::LogicalInput;

/// Average probability that the random-basis attack reproduces the input
/// string exactly: `p_av = (1/d) sum_j cos^{2m}(j pi / d)`.
pub fn attack_success_probability(m: usize, d: u32) -> f64 {
    assert!(m >= 1, "photon count must be >= 1");
    assert!(d >= 1, "division count must be >= 1");
    let exponent = 2 * m as i32;
    let total: f64 = (0..d)
        .map(|j| {
            let theta = j as f64 * std::f64::consts::PI / d as f64;
            theta.cos().powi(exponent)
        })
        .sum();
    total / d as f64
}

/// Large-d limit of [`attack_success_probability`]:
/// `Gamma(m + 1/2) / (sqrt(pi) m!)`, which scales as `1/sqrt(pi m)`.
/// Evaluated through log-gamma so it cannot overflow.
pub fn attack_success_limit_large_d(m: usize) -> f64 {
    assert!(m >= 1, "photon count must be >= 1");
    let ln = ln_gamma(m as f64 + 0.5) - ln_gamma(m as f64 + 1.0)
        - 0.5 * std::f64::consts::PI.ln();
    ln.exp()
}

/// Average squared overlap between two encodings whose input strings are
/// Hamming distance `h` apart:
/// `(1/d) sum_j sin^{2h}(theta_j) cos^{2(m-h)}(theta_j)` with
/// `theta_j = j pi / d`, the angle distribution induced by uniform
/// independent keys.
pub fn average_overlap(h: usize, m: usize, d: u32) -> Result<f64> {
    if h > m {
        return Err(Error::InvalidParameter(format!(
            "Hamming distance {h} exceeds photon count {m}"
        )));
    }
    if m == 0 || d == 0 {
        return Err(Error::InvalidParameter(
            "photon and division counts must be >= 1".into(),
        ));
    }
    let sin_exp = 2 * h as i32;
    let cos_exp = 2 * (m - h) as i32;
    let total: f64 = (0..d)
        .map(|j| {
            let theta = j as f64 * std::f64::consts::PI / d as f64;
            theta.sin().powi(sin_exp) * theta.cos().powi(cos_exp)
        })
        .sum();
    Ok(total / d as f64)
}

/// Logarithm base for the overlap grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogBase {
    Natural,
    Base2,
}

/// One cell of the overlap grid; `log_overlap` is `-inf` where the
/// overlap vanishes exactly (d = 1, h >= 1).
#[derive(Clone, Copy, Debug)]
pub struct OverlapCell {
    pub m: usize,
    pub h: usize,
    pub log_overlap: f64,
}

/// Log average overlap over every (m, h) with m <= m_max, h <= m.
pub fn overlap_grid(m_max: usize, d: u32, base: LogBase) -> Result<Vec<OverlapCell>> {
    if m_max == 0 || m_max > 64 {
        return Err(Error::InvalidParameter(format!(
            "m_max {m_max} out of range 1..=64"
        )));
    }
    let mut cells = Vec::new();
    for m in 1..=m_max {
        for h in 0..=m {
            let overlap = average_overlap(h, m, d)?;
            let log_overlap = if overlap == 0.0 {
                f64::NEG_INFINITY
            } else {
                match base {
                    LogBase::Natural => overlap.ln(),
                    LogBase::Base2 => overlap.log2(),
                }
            };
            cells.push(OverlapCell { m, h, log_overlap });
        }
    }
    Ok(cells)
}

/// One cell of the confidence-region table: the attack success
/// probability and the strongest confidence level it meets, i.e. the
/// smallest epsilon with `p_av < epsilon` (`None` when no level holds).
#[derive(Clone, Copy, Debug)]
pub struct RegionCell {
    pub d: u32,
    pub m: usize,
    pub p_av: f64,
    pub epsilon_class: Option<f64>,
}

/// Classify every (d, m) cell against the epsilon thresholds.
pub fn confidence_regions(
    d_values: &[u32],
    m_values: &[usize],
    epsilons: &[f64],
) -> Result<Vec<RegionCell>> {
    if d_values.is_empty() || m_values.is_empty() || epsilons.is_empty() {
        return Err(Error::InvalidParameter(
            "d, m, and epsilon lists must be non-empty".into(),
        ));
    }
    for &eps in epsilons {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon {eps} must lie strictly inside (0, 1)"
            )));
        }
    }
    let mut sorted = epsilons.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("epsilons are finite"));

    let mut cells = Vec::with_capacity(d_values.len() * m_values.len());
    for &d in d_values {
        for &m in m_values {
            let p_av = attack_success_probability(m, d);
            let epsilon_class = sorted.iter().copied().find(|&eps| p_av < eps);
            cells.push(RegionCell {
                d,
                m,
                p_av,
                epsilon_class,
            });
        }
    }
    Ok(cells)
}

/// Result of a Monte Carlo attack run.
#[derive(Clone, Copy, Debug)]
pub struct AttackOutcome {
    pub trials: u64,
    /// Trials whose measured string equalled the input exactly.
    pub exact_matches: u64,
    /// Trials whose measured string equalled the input or its complement.
    pub complement_inclusive_matches: u64,
}

impl AttackOutcome {
    pub fn exact_rate(&self) -> f64 {
        self.exact_matches as f64 / self.trials as f64
    }

    pub fn complement_inclusive_rate(&self) -> f64 {
        self.complement_inclusive_matches as f64 / self.trials as f64
    }

    /// Binomial standard error of the exact-match rate.
    pub fn exact_std_err(&self) -> f64 {
        binomial_std_err(self.exact_rate(), self.trials)
    }

    pub fn complement_inclusive_std_err(&self) -> f64 {
        binomial_std_err(self.complement_inclusive_rate(), self.trials)
    }
}

fn binomial_std_err(rate: f64, trials: u64) -> f64 {
    (rate * (1.0 - rate) / trials as f64).sqrt()
}

const MC_SHARDS: u64 = 64;

/// Simulate the literal attack: Alice encrypts `bits` with a uniform key
/// k, Bob measures every photon in the basis of a uniform key j and reads
/// off a bit string. Each bit is independently correct with probability
/// `cos^2((k - j) pi / d)`, so the exact-match rate estimates `p_av`.
///
/// Trials are split over fixed shards with ChaCha streams derived from
/// `seed`, and shard counts combine by summation, so the result is
/// bit-identical for any thread count.
pub fn random_attack_mc(
    m: usize,
    d: u32,
    bits: &LogicalInput,
    trials: u64,
    seed: u64,
) -> Result<AttackOutcome> {
    if m == 0 || m > 63 {
        return Err(Error::InvalidParameter(format!(
            "photon count {m} out of range 1..=63"
        )));
    }
    if bits.modes() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            actual: bits.modes(),
        });
    }
    if d == 0 {
        return Err(Error::InvalidParameter("division count d must be >= 1".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("at least one trial is required".into()));
    }

    let input_mask: u64 = bits
        .bits()
        .iter()
        .enumerate()
        .map(|(j, &b)| (b as u64) << j)
        .sum();
    let full_mask: u64 = (1u64 << m) - 1;

    let shards = MC_SHARDS.min(trials);
    let counts: Vec<(u64, u64)> = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let shard_trials = trials / shards + u64::from(shard < trials % shards);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard + 1);
            let mut exact = 0u64;
            let mut either = 0u64;
            for _ in 0..shard_trials {
                let k = rng.random_range(0..d);
                let j = rng.random_range(0..d);
                let theta = (k as f64 - j as f64) * std::f64::consts::PI / d as f64;
                let p_correct = theta.cos().powi(2);
                let mut measured = 0u64;
                for bit in 0..m {
                    let correct = rng.random::<f64>() < p_correct;
                    let value = (input_mask >> bit & 1 == 1) == correct;
                    measured |= (value as u64) << bit;
                }
                if measured == input_mask {
                    exact += 1;
                    either += 1;
                } else if measured == input_mask ^ full_mask {
                    either += 1;
                }
            }
            (exact, either)
        })
        .collect();

    let (exact_matches, complement_inclusive_matches) = counts
        .iter()
        .fold((0, 0), |(e, c), &(se, sc)| (e + se, c + sc));
    Ok(AttackOutcome {
        trials,
        exact_matches,
        complement_inclusive_matches,
    })
}
