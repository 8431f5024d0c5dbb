//! Exact multi-photon output statistics: permanent-based amplitudes,
//! full sector distributions, state evolution, and inverse-CDF sampling.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fock::state::{enumerate_sector, sector_size, FockBasisState, PureState};
use crate::fock::{permanent, Interferometer};
use crate::linalg::CMatrix;

/// Default cap on the number of output configurations enumerated at once.
pub const DEFAULT_CONFIGURATION_CAP: u128 = 2_000_000;

/// Transition amplitude `gamma_S = per(U_{S,T}) / sqrt(prod s_i! prod t_j!)`.
///
/// `U_{S,T}` is the p x p matrix with row `i` of `U` repeated `s_i` times
/// (output occupations) and column `j` repeated `t_j` times (input
/// occupations). For one photon this reduces to `U[(j, i)]` for mode `i`
/// into mode `j`.
pub fn output_amplitude(
    u: &Interferometer,
    input: &FockBasisState,
    output: &FockBasisState,
) -> Result<Complex64> {
    let m = u.mode_count();
    if input.modes() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            actual: input.modes(),
        });
    }
    if output.modes() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            actual: output.modes(),
        });
    }
    let photons = input.total_photons();
    if output.total_photons() != photons {
        return Err(Error::PhotonMismatch {
            input: photons,
            output: output.total_photons(),
        });
    }

    let row_modes = repeat_modes(output);
    let col_modes = repeat_modes(input);
    let p = photons as usize;
    let matrix = CMatrix::from_fn(p, p, |r, c| u.matrix()[(row_modes[r], col_modes[c])]);
    let per = permanent(&matrix)?;

    let mut norm_sq = 1.0;
    for &n in input.occupations().iter().chain(output.occupations()) {
        norm_sq *= factorial(n);
    }
    Ok(per / norm_sq.sqrt())
}

fn repeat_modes(state: &FockBasisState) -> Vec<usize> {
    let mut modes = Vec::with_capacity(state.total_photons() as usize);
    for (mode, &n) in state.occupations().iter().enumerate() {
        for _ in 0..n {
            modes.push(mode);
        }
    }
    modes
}

fn factorial(n: u32) -> f64 {
    (1..=n as u64).map(|k| k as f64).product()
}

/// Exact output distribution of a photon-number basis state through `u`.
pub fn output_distribution(
    u: &Interferometer,
    input: &FockBasisState,
) -> Result<OutputDistribution> {
    output_distribution_capped(u, input, DEFAULT_CONFIGURATION_CAP)
}

/// As [`output_distribution`], with an explicit configuration-count cap.
pub fn output_distribution_capped(
    u: &Interferometer,
    input: &FockBasisState,
    cap: u128,
) -> Result<OutputDistribution> {
    let state = evolve_capped(u, &PureState::basis_state(input.clone()), cap)?;
    Ok(state.distribution())
}

/// Apply the multi-photon homomorphism of `u` to a pure state.
pub fn evolve(u: &Interferometer, state: &PureState) -> Result<PureState> {
    evolve_capped(u, state, DEFAULT_CONFIGURATION_CAP)
}

/// As [`evolve`], with an explicit configuration-count cap.
pub fn evolve_capped(u: &Interferometer, state: &PureState, cap: u128) -> Result<PureState> {
    let m = u.mode_count();
    if state.modes() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            actual: state.modes(),
        });
    }
    let photons = state.photons();
    let needed = sector_size(m, photons).unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::ResourceCap { needed, cap });
    }

    let mut amplitudes = BTreeMap::new();
    for target in enumerate_sector(m, photons) {
        let mut acc = Complex64::ZERO;
        for (source, amp) in state.amplitudes() {
            if *amp != Complex64::ZERO {
                acc += amp * output_amplitude(u, source, &target)?;
            }
        }
        amplitudes.insert(target, acc);
    }
    PureState::from_amplitudes(m, photons, amplitudes)
}

/// Draw one output configuration from the exact distribution.
pub fn sample_output<R: Rng + ?Sized>(
    u: &Interferometer,
    input: &FockBasisState,
    rng: &mut R,
) -> Result<FockBasisState> {
    Ok(output_distribution(u, input)?.sample(rng))
}

impl PureState {
    /// Born-rule distribution of this state, amplitudes retained.
    pub fn distribution(&self) -> OutputDistribution {
        OutputDistribution::from_amplitudes(self.modes(), self.amplitudes().clone())
    }
}

/// A probability distribution over photon-number configurations, with the
/// generating amplitudes retained when the distribution came from a pure
/// state (marginals drop them).
#[derive(Clone, Debug)]
pub struct OutputDistribution {
    modes: usize,
    probabilities: BTreeMap<FockBasisState, f64>,
    amplitudes: Option<BTreeMap<FockBasisState, Complex64>>,
}

impl OutputDistribution {
    pub fn from_amplitudes(modes: usize, amplitudes: BTreeMap<FockBasisState, Complex64>) -> Self {
        let probabilities = amplitudes
            .iter()
            .map(|(state, amp)| (state.clone(), amp.norm_sqr()))
            .collect();
        Self {
            modes,
            probabilities,
            amplitudes: Some(amplitudes),
        }
    }

    pub fn from_probabilities(modes: usize, probabilities: BTreeMap<FockBasisState, f64>) -> Self {
        Self {
            modes,
            probabilities,
            amplitudes: None,
        }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn probability(&self, state: &FockBasisState) -> f64 {
        self.probabilities.get(state).copied().unwrap_or(0.0)
    }

    /// Generating amplitude, if this distribution came from a pure state.
    pub fn amplitude(&self, state: &FockBasisState) -> Option<Complex64> {
        self.amplitudes.as_ref().map(|m| {
            m.get(state).copied().unwrap_or(Complex64::ZERO)
        })
    }

    pub fn has_amplitudes(&self) -> bool {
        self.amplitudes.is_some()
    }

    /// Lexicographic iteration over (state, probability).
    pub fn iter(&self) -> impl Iterator<Item = (&FockBasisState, f64)> {
        self.probabilities.iter().map(|(s, &p)| (s, p))
    }

    pub fn total_mass(&self) -> f64 {
        self.probabilities.values().sum()
    }

    /// Total-variation distance, half the L1 distance over the union of
    /// supports.
    pub fn tv_distance(&self, other: &OutputDistribution) -> f64 {
        let mut l1 = 0.0;
        for (state, p) in self.iter() {
            l1 += (p - other.probability(state)).abs();
        }
        for (state, q) in other.iter() {
            if !self.probabilities.contains_key(state) {
                l1 += q.abs();
            }
        }
        l1 / 2.0
    }

    /// Inverse-CDF draw in lexicographic state order. Zero-probability
    /// configurations can never be returned.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FockBasisState {
        assert!(!self.probabilities.is_empty(), "empty distribution");
        let u: f64 = rng.random();
        let mut cumulative = 0.0;
        let mut last_positive = None;
        for (state, p) in self.iter() {
            if p > 0.0 {
                cumulative += p;
                last_positive = Some(state);
                if u < cumulative {
                    return state.clone();
                }
            }
        }
        // u landed in the rounding gap behind the last positive entry.
        last_positive.expect("distribution has positive mass").clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::haar_unitary_from_seed;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fock(occ: &[u32]) -> FockBasisState {
        FockBasisState::new(occ.to_vec())
    }

    #[test]
    fn identity_single_photon_amplitude() {
        let u = Interferometer::identity(2).unwrap();
        let amp = output_amplitude(&u, &fock(&[1, 0]), &fock(&[1, 0])).unwrap();
        assert!((amp - Complex64::ONE).norm() < 1e-15);
    }

    #[test]
    fn hong_ou_mandel_amplitudes() {
        let u = Interferometer::balanced_mixer();
        let coincide = output_amplitude(&u, &fock(&[1, 1]), &fock(&[1, 1])).unwrap();
        assert!(coincide.norm() < 1e-15, "per([[1,1],[1,-1]])/2 must vanish");
        let bunched = output_amplitude(&u, &fock(&[1, 1]), &fock(&[2, 0])).unwrap();
        assert!((bunched.norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn photon_mismatch_rejected() {
        let u = Interferometer::identity(2).unwrap();
        assert!(matches!(
            output_amplitude(&u, &fock(&[1, 0]), &fock(&[1, 1])),
            Err(Error::PhotonMismatch { .. })
        ));
    }

    #[test]
    fn identity_distribution_is_a_point_mass() {
        let u = Interferometer::identity(4).unwrap();
        let input = fock(&[0, 1, 1, 0]);
        let dist = output_distribution(&u, &input).unwrap();
        assert!((dist.probability(&input) - 1.0).abs() < 1e-14);
        assert!((dist.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hong_ou_mandel_distribution() {
        let u = Interferometer::balanced_mixer();
        let dist = output_distribution(&u, &fock(&[1, 1])).unwrap();
        assert!((dist.probability(&fock(&[2, 0])) - 0.5).abs() < 1e-14);
        assert!((dist.probability(&fock(&[0, 2])) - 0.5).abs() < 1e-14);
        assert!(dist.probability(&fock(&[1, 1])) < 1e-15);
        assert!((dist.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn haar_distribution_normalises() {
        let u = haar_unitary_from_seed(4, 3).unwrap();
        let dist = output_distribution(&u, &fock(&[1, 1, 0, 0])).unwrap();
        assert!((dist.total_mass() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn vacuum_distribution() {
        let u = haar_unitary_from_seed(3, 12).unwrap();
        let dist = output_distribution(&u, &fock(&[0, 0, 0])).unwrap();
        assert_eq!(dist.len(), 1);
        assert!((dist.probability(&fock(&[0, 0, 0])) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn single_photon_probabilities_are_column_moduli() {
        // p = 1 reduces to a 1x1 permanent: P(j | i) = |U[(j, i)]|^2.
        for m in 1..=8 {
            let u = haar_unitary_from_seed(m, 100 + m as u64).unwrap();
            for i in 0..m {
                let dist = output_distribution(&u, &FockBasisState::single_photon(m, i)).unwrap();
                for j in 0..m {
                    let p = dist.probability(&FockBasisState::single_photon(m, j));
                    let expected = u.matrix()[(j, i)].norm_sqr();
                    assert!((p - expected).abs() < 1e-14, "m={m} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced_and_named() {
        let u = Interferometer::identity(4).unwrap();
        let err = output_distribution_capped(&u, &fock(&[1, 1, 0, 0]), 5).unwrap_err();
        match err {
            Error::ResourceCap { needed, cap } => {
                assert_eq!(needed, 10);
                assert_eq!(cap, 5);
            }
            other => panic!("expected ResourceCap, got {other:?}"),
        }
    }

    #[test]
    fn identity_sampling_is_constant() {
        let u = Interferometer::identity(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..32 {
            assert_eq!(sample_output(&u, &fock(&[1, 0]), &mut rng).unwrap(), fock(&[1, 0]));
        }
    }

    #[test]
    fn zero_probability_outcomes_never_sampled() {
        let u = Interferometer::balanced_mixer();
        let dist = output_distribution(&u, &fock(&[1, 1])).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut coincidences = 0usize;
        for _ in 0..10_000 {
            if dist.sample(&mut rng) == fock(&[1, 1]) {
                coincidences += 1;
            }
        }
        assert_eq!(coincidences, 0);
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let u = haar_unitary_from_seed(3, 8).unwrap();
        let dist = output_distribution(&u, &fock(&[1, 1, 0])).unwrap();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..64).map(|_| dist.sample(&mut rng)).collect::<Vec<_>>()
        };
        assert_eq!(draw(5), draw(5));
    }

    #[test]
    fn evolve_preserves_norm_and_matches_linearity() {
        let u = haar_unitary_from_seed(3, 21).unwrap();
        let a = fock(&[1, 1, 0]);
        let b = fock(&[0, 1, 1]);
        let mut amps = BTreeMap::new();
        amps.insert(a.clone(), Complex64::new(0.6, 0.0));
        amps.insert(b.clone(), Complex64::new(0.0, 0.8));
        let state = PureState::from_amplitudes(3, 2, amps).unwrap();
        let evolved = evolve(&u, &state).unwrap();
        assert!((evolved.norm() - 1.0).abs() < 1e-12);

        let ea = evolve(&u, &PureState::basis_state(a)).unwrap();
        let eb = evolve(&u, &PureState::basis_state(b)).unwrap();
        for (target, amp) in evolved.amplitudes() {
            let lin = Complex64::new(0.6, 0.0) * ea.amplitude(target)
                + Complex64::new(0.0, 0.8) * eb.amplitude(target);
            assert!((amp - lin).norm() < 1e-12);
        }
    }

    #[test]
    fn tv_distance_of_disjoint_point_masses_is_one() {
        let mut p = BTreeMap::new();
        p.insert(fock(&[1, 0]), 1.0);
        let mut q = BTreeMap::new();
        q.insert(fock(&[0, 1]), 1.0);
        let dp = OutputDistribution::from_probabilities(2, p);
        let dq = OutputDistribution::from_probabilities(2, q);
        assert!((dp.tv_distance(&dq) - 1.0).abs() < 1e-15);
        assert!(dp.tv_distance(&dp) < 1e-15);
    }
}
