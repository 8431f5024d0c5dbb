//! Randomised invariants over the core kernels.

use proptest::prelude::*;

use encwalk_core::fock::{
    enumerate_sector, haar_unitary_from_seed, output_distribution, sector_size, FockBasisState,
    Interferometer, ReckNetwork,
};
use encwalk_core::linalg::max_abs_diff;
use encwalk_core::protocol::{encode_input, encrypt, rotation_matrix, LogicalInput, PolarizationKey};
use encwalk_core::security::attack_success_probability;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn haar_unitaries_are_unitary(modes in 1usize..=8, seed in any::<u64>()) {
        let u = haar_unitary_from_seed(modes, seed).unwrap();
        prop_assert!(u.unitarity_deviation() < Interferometer::CONSTRUCTION_TOL);
    }

    #[test]
    fn reck_round_trip(modes in 2usize..=6, seed in any::<u64>()) {
        let u = haar_unitary_from_seed(modes, seed).unwrap();
        let net = ReckNetwork::decompose(&u).unwrap();
        prop_assert!(net.mixer_count() <= modes * (modes - 1) / 2);
        let back = net.recompose(modes).unwrap();
        prop_assert!(max_abs_diff(back.matrix(), u.matrix()) < 1e-10);
    }

    #[test]
    fn distributions_normalise_and_conserve_photons(
        modes in 1usize..=4,
        photons in 0u32..=3,
        seed in any::<u64>(),
    ) {
        let u = haar_unitary_from_seed(modes, seed).unwrap();
        let input = enumerate_sector(modes, photons)
            .into_iter()
            .next()
            .unwrap();
        let dist = output_distribution(&u, &input).unwrap();
        prop_assert!((dist.total_mass() - 1.0).abs() < 1e-10);
        prop_assert_eq!(dist.len() as u128, sector_size(modes, photons).unwrap());
        for (state, _) in dist.iter() {
            prop_assert_eq!(state.total_photons(), photons);
        }
    }
}

proptest! {
    #[test]
    fn rotations_compose(a in -10.0f64..10.0, b in -10.0f64..10.0) {
        let lhs = rotation_matrix(a) * rotation_matrix(b);
        let rhs = rotation_matrix(a + b);
        prop_assert!((lhs - rhs).abs().max() < 1e-14);
    }

    #[test]
    fn attack_success_monotone_in_m(m in 1usize..=64, d in 1u32..=128) {
        prop_assert!(
            attack_success_probability(m + 1, d) <= attack_success_probability(m, d) + 1e-15
        );
    }

    #[test]
    fn sector_enumeration_is_sorted_and_counted(modes in 1usize..=5, photons in 0u32..=4) {
        let states = enumerate_sector(modes, photons);
        prop_assert_eq!(states.len() as u128, sector_size(modes, photons).unwrap());
        for pair in states.windows(2) {
            prop_assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn encryption_is_norm_preserving(bits_index in 0u64..16, k in 0u32..8) {
        let bits = LogicalInput::from_index(bits_index, 4).unwrap();
        let key = PolarizationKey::new(k, 8).unwrap();
        let enc = encrypt(&encode_input(&bits), &key);
        prop_assert!((enc.pure().norm() - 1.0).abs() < 1e-12);
        prop_assert_eq!(enc.pure().photons(), 4);
    }
}

/// Sampling statistics match the exact distribution (single seeded check,
/// chi-squared at alpha = 0.001 lives in the acceptance suite).
#[test]
fn sample_frequencies_track_probabilities() {
    use rand::SeedableRng;
    let u = haar_unitary_from_seed(3, 5).unwrap();
    let input = FockBasisState::new(vec![1, 0, 1]);
    let dist = output_distribution(&u, &input).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    let n = 40_000;
    let mut counts = std::collections::HashMap::new();
    for _ in 0..n {
        *counts.entry(dist.sample(&mut rng)).or_insert(0u32) += 1;
    }
    for (state, p) in dist.iter() {
        let freq = counts.get(state).copied().unwrap_or(0) as f64 / n as f64;
        let sigma = (p * (1.0 - p) / n as f64).sqrt();
        assert!(
            (freq - p).abs() <= 5.0 * sigma + 1e-9,
            "{state}: freq {freq} vs p {p}"
        );
    }
}
