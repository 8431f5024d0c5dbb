//! The polarisation-rotation encryption protocol.
//!
//! Logical mode `j` of an m-mode computation is carried by the physical
//! mode pair `(2j, 2j+1) = (H_j, V_j)`, so every run uses exactly `m`
//! photons: a logical 1 is a photon in `H_j`, a logical 0 a photon in
//! `V_j`. Alice hides her input by rotating every pair by the secret
//! angle `k pi / d`; Bob's polarisation-independent network acts as the
//! same m-mode unitary on the H and the V rails and therefore commutes
//! with the hidden rotation; Alice undoes the rotation on the returned
//! state and keeps only the H-photon pattern.

use std::collections::BTreeMap;

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{
    evolve_capped, output_amplitude, FockBasisState, Interferometer, OutputDistribution,
    PureState, DEFAULT_CONFIGURATION_CAP,
};
use crate::linalg::CMatrix;

/// Alice's private rotation key: division index `k` out of `d` divisions,
/// i.e. the angle `k pi / d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationKey {
    k: u32,
    d: u32,
}

impl PolarizationKey {
    pub fn new(k: u32, d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("division count d must be >= 1".into()));
        }
        if k >= d {
            return Err(Error::InvalidParameter(format!(
                "key index {k} out of range for d = {d}"
            )));
        }
        Ok(Self { k, d })
    }

    pub fn index(&self) -> u32 {
        self.k
    }

    pub fn divisions(&self) -> u32 {
        self.d
    }

    pub fn angle(&self) -> f64 {
        self.k as f64 * std::f64::consts::PI / self.d as f64
    }
}

/// Draw a key uniformly over the `d` divisions; `d = 1` always yields the
/// trivial key (no encryption).
pub fn keygen<R: Rng + ?Sized>(d: u32, rng: &mut R) -> Result<PolarizationKey> {
    if d == 0 {
        return Err(Error::InvalidParameter("division count d must be >= 1".into()));
    }
    PolarizationKey::new(rng.random_range(0..d), d)
}

/// The logical input string: bit `j` says whether mode `j` of the
/// underlying boson-sampling computation carries a photon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LogicalInput {
    bits: Vec<bool>,
}

impl LogicalInput {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptySystem);
        }
        Ok(Self { bits })
    }

    /// Parse a string of '0'/'1' characters.
    pub fn from_bit_string(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidParameter(format!(
                    "invalid bit character '{other}'"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits)
    }

    /// The `m`-bit string with index `i` in little-endian bit order.
    pub fn from_index(index: u64, modes: usize) -> Result<Self> {
        if modes == 0 || modes > 63 {
            return Err(Error::InvalidParameter(format!(
                "mode count {modes} out of range"
            )));
        }
        Self::new((0..modes).map(|j| index >> j & 1 == 1).collect())
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn modes(&self) -> usize {
        self.bits.len()
    }

    /// Number of logical photons, i.e. set bits.
    pub fn photon_count(&self) -> u32 {
        self.bits.iter().filter(|&&b| b).count() as u32
    }

    /// The plain (non-polarisation-encoded) Fock input of the computation.
    pub fn to_fock(&self) -> FockBasisState {
        FockBasisState::new(self.bits.iter().map(|&b| u32::from(b)).collect())
    }

    pub fn to_bit_vec(&self) -> Vec<u8> {
        self.bits.iter().map(|&b| u8::from(b)).collect()
    }
}

impl std::fmt::Display for LogicalInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", u8::from(b))?;
        }
        Ok(())
    }
}

/// The polarisation rotation `R(theta) = [[cos, -sin], [sin, cos]]` on the
/// (H, V) amplitudes of one photon; columns are the images of H and V.
pub fn rotation_matrix(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, -s, s, c)
}

fn rotation_interferometer(theta: f64) -> Interferometer {
    let r = rotation_matrix(theta);
    Interferometer::from_matrix(CMatrix::from_fn(2, 2, |i, j| Complex64::new(r[(i, j)], 0.0)))
        .expect("rotations are orthogonal")
}

/// A pure state of exactly one photon per mode pair: 2m physical modes,
/// m photons, unit norm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PureState", into = "PureState")]
pub struct PolarizedState {
    state: PureState,
}

impl PolarizedState {
    const NORM_TOL: f64 = 1e-12;

    pub fn from_pure(state: PureState) -> Result<Self> {
        if !state.modes().is_multiple_of(2) || state.modes() == 0 {
            return Err(Error::InvalidState(format!(
                "polarised states need an even, positive mode count, got {}",
                state.modes()
            )));
        }
        let pairs = (state.modes() / 2) as u32;
        if state.photons() != pairs {
            return Err(Error::InvalidState(format!(
                "polarised states carry exactly {} photons, got {}",
                pairs,
                state.photons()
            )));
        }
        if (state.norm() - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::InvalidState(format!(
                "state norm {} is not 1",
                state.norm()
            )));
        }
        Ok(Self { state })
    }

    pub fn pure(&self) -> &PureState {
        &self.state
    }

    /// Number of logical modes (mode pairs).
    pub fn pair_count(&self) -> usize {
        self.state.modes() / 2
    }
}

impl TryFrom<PureState> for PolarizedState {
    type Error = Error;

    fn try_from(state: PureState) -> Result<Self> {
        Self::from_pure(state)
    }
}

impl From<PolarizedState> for PureState {
    fn from(value: PolarizedState) -> Self {
        value.state
    }
}

/// Encode a logical bit string into the polarisation basis: a photon in
/// `H_j` where bit `j` is 1, in `V_j` where it is 0.
pub fn encode_input(bits: &LogicalInput) -> PolarizedState {
    let m = bits.modes();
    let mut occupations = vec![0u32; 2 * m];
    for (j, &bit) in bits.bits().iter().enumerate() {
        occupations[2 * j + usize::from(!bit)] = 1;
    }
    PolarizedState::from_pure(PureState::basis_state(FockBasisState::new(occupations)))
        .expect("encoding yields one photon per pair")
}

/// Apply `R(theta)` to every (H_j, V_j) pair of a 2m-mode state.
///
/// The rotation factorises over pairs, so each pair's photons are pushed
/// through the (n+1)-dimensional two-mode transfer matrix of `R(theta)`
/// instead of the full 2m-mode homomorphism; the transfer matrices come
/// from the same permanent-based amplitude kernel as everything else.
pub fn pairwise_rotation(state: &PureState, theta: f64) -> Result<PureState> {
    if !state.modes().is_multiple_of(2) {
        return Err(Error::InvalidState(format!(
            "pairwise rotation needs an even mode count, got {}",
            state.modes()
        )));
    }
    let pairs = state.modes() / 2;
    let max_photons = state.photons();
    let rotation = rotation_interferometer(theta);

    // transfer[n][(h_out, h_in)] for a pair holding n photons
    let mut transfer: Vec<CMatrix> = Vec::with_capacity(max_photons as usize + 1);
    for n in 0..=max_photons {
        let dim = n as usize + 1;
        let mut t = CMatrix::zeros(dim, dim);
        for h_in in 0..=n {
            let input = FockBasisState::new(vec![h_in, n - h_in]);
            for h_out in 0..=n {
                let output = FockBasisState::new(vec![h_out, n - h_out]);
                t[(h_out as usize, h_in as usize)] =
                    output_amplitude(&rotation, &input, &output)?;
            }
        }
        transfer.push(t);
    }

    let mut current: BTreeMap<FockBasisState, Complex64> = state.amplitudes().clone();
    for pair in 0..pairs {
        let mut next: BTreeMap<FockBasisState, Complex64> = BTreeMap::new();
        for (basis, amp) in &current {
            if *amp == Complex64::ZERO {
                continue;
            }
            let h = basis.occupation(2 * pair);
            let v = basis.occupation(2 * pair + 1);
            let n = h + v;
            let t = &transfer[n as usize];
            for h_out in 0..=n {
                let coeff = t[(h_out as usize, h as usize)];
                if coeff == Complex64::ZERO {
                    continue;
                }
                let mut occ = basis.occupations().to_vec();
                occ[2 * pair] = h_out;
                occ[2 * pair + 1] = n - h_out;
                *next.entry(FockBasisState::new(occ)).or_insert(Complex64::ZERO) += amp * coeff;
            }
        }
        current = next;
    }
    PureState::from_amplitudes(state.modes(), state.photons(), current)
}

/// The full 2m-mode network applying `R(theta)` on every pair; used as the
/// independent dense route for checking [`pairwise_rotation`].
pub fn pairwise_rotation_network(theta: f64, pairs: usize) -> Interferometer {
    let r = rotation_matrix(theta);
    let m = 2 * pairs;
    let mut w = CMatrix::zeros(m, m);
    for pair in 0..pairs {
        for a in 0..2 {
            for b in 0..2 {
                w[(2 * pair + a, 2 * pair + b)] = Complex64::new(r[(a, b)], 0.0);
            }
        }
    }
    Interferometer::from_trusted(w)
}

/// Encrypt: rotate every pair by the key angle.
pub fn encrypt(state: &PolarizedState, key: &PolarizationKey) -> PolarizedState {
    let rotated = pairwise_rotation(state.pure(), key.angle())
        .expect("polarised states have even mode count");
    PolarizedState::from_pure(rotated).expect("rotation preserves the photon-per-pair structure")
}

/// Lift an m-mode network to the 2m polarisation modes: it acts as `u` on
/// the H rail and, identically, on the V rail (polarisation-independent
/// optics), interleaved to the (H_j, V_j) = (2j, 2j+1) layout.
pub fn lift_network(u: &Interferometer) -> Interferometer {
    let m = u.mode_count();
    let mut w = CMatrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        for j in 0..m {
            w[(2 * i, 2 * j)] = u.matrix()[(i, j)];
            w[(2 * i + 1, 2 * j + 1)] = u.matrix()[(i, j)];
        }
    }
    Interferometer::from_trusted(w)
}

/// Bob's entire view of the protocol: evolve the received state through
/// his lifted network. Deliberately a function of the received state and
/// the network only -- no key reaches this context.
pub fn bob_evolve(received: &PolarizedState, u: &Interferometer) -> Result<PolarizedState> {
    if u.mode_count() != received.pair_count() {
        return Err(Error::DimensionMismatch {
            expected: received.pair_count(),
            actual: u.mode_count(),
        });
    }
    let lifted = lift_network(u);
    let evolved = evolve_capped(&lifted, received.pure(), DEFAULT_CONFIGURATION_CAP)?;
    PolarizedState::from_pure(evolved)
}

/// Undo the key rotation on every pair, then measure with
/// polarisation-resolving detectors and keep only the H-photon pattern
/// (V outcomes are discarded by marginalisation, not conditioning).
pub fn decrypt_measure(output: &PolarizedState, key: &PolarizationKey) -> OutputDistribution {
    let rotated = pairwise_rotation(output.pure(), -key.angle())
        .expect("polarised states have even mode count");
    let joint = rotated.distribution();
    let pairs = output.pair_count();
    let mut marginal: BTreeMap<FockBasisState, f64> = BTreeMap::new();
    for (basis, p) in joint.iter() {
        let pattern =
            FockBasisState::new((0..pairs).map(|j| basis.occupation(2 * j)).collect());
        *marginal.entry(pattern).or_insert(0.0) += p;
    }
    OutputDistribution::from_probabilities(pairs, marginal)
}

/// Record of one protocol round: exactly one message in each direction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Transcript {
    /// Alice's logical input bits.
    pub alice_in: Vec<u8>,
    /// Number of key divisions.
    pub d: u32,
    /// Alice's private key index; absent in Bob's (redacted) view.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub key: Option<u32>,
    /// The two transmitted states: Alice -> Bob, then Bob -> Alice.
    pub messages: Vec<PureState>,
    /// The H-photon pattern Alice sampled after decryption.
    pub result: FockBasisState,
}

impl Transcript {
    /// Bob's view: the key never appears.
    pub fn redacted(&self) -> Transcript {
        Transcript {
            key: None,
            ..self.clone()
        }
    }
}

/// One full protocol round: keygen, encode, encrypt, send, oblivious
/// evolution, return, decrypt, sample.
pub fn run_round<R: Rng + ?Sized>(
    bits: &LogicalInput,
    d: u32,
    u: &Interferometer,
    rng: &mut R,
) -> Result<(FockBasisState, Transcript)> {
    if u.mode_count() != bits.modes() {
        return Err(Error::DimensionMismatch {
            expected: bits.modes(),
            actual: u.mode_count(),
        });
    }
    let key = keygen(d, rng)?;
    let encoded = encode_input(bits);
    let encrypted = encrypt(&encoded, &key);
    let evolved = bob_evolve(&encrypted, u)?;
    let decrypted = decrypt_measure(&evolved, &key);
    let sampled = decrypted.sample(rng);

    let transcript = Transcript {
        alice_in: bits.to_bit_vec(),
        d,
        key: Some(key.index()),
        messages: vec![encrypted.pure().clone(), evolved.pure().clone()],
        result: sampled.clone(),
    };
    Ok((sampled, transcript))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{haar_unitary_from_seed, output_distribution};
    use crate::linalg::max_abs_diff;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rotation_matrix_basics() {
        let id = rotation_matrix(0.0);
        assert!((id - Matrix2::identity()).abs().max() < 1e-15);

        let quarter = rotation_matrix(std::f64::consts::FRAC_PI_2);
        let h = quarter * nalgebra::Vector2::new(1.0, 0.0);
        assert!((h - nalgebra::Vector2::new(0.0, 1.0)).abs().max() < 1e-15);
    }

    #[test]
    fn rotation_group_law() {
        for (a, b) in [(0.3, 1.1), (-0.7, 0.2), (2.0, 2.5)] {
            let lhs = rotation_matrix(a) * rotation_matrix(b);
            let rhs = rotation_matrix(a + b);
            assert!((lhs - rhs).abs().max() < 1e-14);
        }
    }

    #[test]
    fn encoding_places_photons_by_bit() {
        let bits = LogicalInput::from_bit_string("011001").unwrap();
        let state = encode_input(&bits);
        let expected = FockBasisState::new(vec![0, 1, 1, 0, 1, 0, 0, 1, 0, 1, 1, 0]);
        assert!((state.pure().amplitude(&expected) - Complex64::ONE).norm() < 1e-15);
        assert_eq!(state.pure().photons(), 6);
    }

    #[test]
    fn encoding_always_uses_m_photons() {
        for s in ["000", "101", "111", "0"] {
            let bits = LogicalInput::from_bit_string(s).unwrap();
            let state = encode_input(&bits);
            assert_eq!(state.pure().photons() as usize, bits.modes());
        }

        // all zeros come out as V photons only
        let vvv = encode_input(&LogicalInput::from_bit_string("000").unwrap());
        let expected = FockBasisState::new(vec![0, 1, 0, 1, 0, 1]);
        assert!((vvv.pure().amplitude(&expected) - Complex64::ONE).norm() < 1e-15);
    }

    #[test]
    fn keygen_uniform_and_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(keygen(1, &mut rng).unwrap().index(), 0);

        let d = 8u32;
        let n = 100_000usize;
        let mut counts = vec![0u32; d as usize];
        for _ in 0..n {
            counts[keygen(d, &mut rng).unwrap().index() as usize] += 1;
        }
        let expected = n as f64 / d as f64;
        let sigma = (n as f64 * (1.0 / d as f64) * (1.0 - 1.0 / d as f64)).sqrt();
        for (k, &c) in counts.iter().enumerate() {
            assert!(
                (c as f64 - expected).abs() < 4.0 * sigma,
                "k = {k}: count {c} vs expected {expected}"
            );
        }

        let mut a = ChaCha8Rng::seed_from_u64(9);
        let mut b = ChaCha8Rng::seed_from_u64(9);
        assert_eq!(keygen(16, &mut a).unwrap(), keygen(16, &mut b).unwrap());
    }

    #[test]
    fn keygen_rejects_zero_divisions() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            keygen(0, &mut rng),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn trivial_key_leaves_state_unchanged() {
        let bits = LogicalInput::from_bit_string("10").unwrap();
        let state = encode_input(&bits);
        let key = PolarizationKey::new(0, 4).unwrap();
        let enc = encrypt(&state, &key);
        assert_eq!(enc.pure(), state.pure());
    }

    #[test]
    fn half_turn_key_swaps_polarisations() {
        let key = PolarizationKey::new(1, 2).unwrap();

        // |H> -> |V>
        let h = encode_input(&LogicalInput::from_bit_string("1").unwrap());
        let enc_h = encrypt(&h, &key);
        let v_state = FockBasisState::new(vec![0, 1]);
        assert!((enc_h.pure().amplitude(&v_state) - Complex64::ONE).norm() < 1e-14);

        // |V> -> -|H>
        let v = encode_input(&LogicalInput::from_bit_string("0").unwrap());
        let enc_v = encrypt(&v, &key);
        let h_state = FockBasisState::new(vec![1, 0]);
        assert!((enc_v.pure().amplitude(&h_state) + Complex64::ONE).norm() < 1e-14);
    }

    #[test]
    fn encryption_preserves_norm() {
        let bits = LogicalInput::from_bit_string("1011").unwrap();
        let state = encode_input(&bits);
        for d in [2, 3, 8] {
            for k in 0..d {
                let enc = encrypt(&state, &PolarizationKey::new(k, d).unwrap());
                assert!((enc.pure().norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pairwise_rotation_matches_dense_network() {
        let bits = LogicalInput::from_bit_string("101").unwrap();
        let state = encrypt(
            &encode_input(&bits),
            &PolarizationKey::new(1, 3).unwrap(),
        );
        let theta = 0.77;
        let fast = pairwise_rotation(state.pure(), theta).unwrap();
        let dense = evolve_capped(
            &pairwise_rotation_network(theta, 3),
            state.pure(),
            DEFAULT_CONFIGURATION_CAP,
        )
        .unwrap();
        for (basis, amp) in dense.amplitudes() {
            assert!((fast.amplitude(basis) - amp).norm() < 1e-12);
        }
    }

    #[test]
    fn lift_of_identity_is_identity() {
        let lifted = lift_network(&Interferometer::identity(3).unwrap());
        assert!(max_abs_diff(lifted.matrix(), &CMatrix::identity(6, 6)) == 0.0);
    }

    #[test]
    fn lift_is_unitary_and_polarisation_preserving() {
        for m in 1..=4 {
            let u = haar_unitary_from_seed(m, 50 + m as u64).unwrap();
            let lifted = lift_network(&u);
            assert!(lifted.unitarity_deviation() < Interferometer::CONSTRUCTION_TOL);
            // an H photon never reaches a V mode and vice versa
            for j in 0..m {
                for i in 0..m {
                    assert_eq!(lifted.matrix()[(2 * i + 1, 2 * j)], Complex64::ZERO);
                    assert_eq!(lifted.matrix()[(2 * i, 2 * j + 1)], Complex64::ZERO);
                }
            }
        }
    }

    #[test]
    fn identity_network_round_trips_all_keys() {
        let u = Interferometer::identity(3).unwrap();
        let bits = LogicalInput::from_bit_string("101").unwrap();
        for d in [1, 2, 4] {
            for k in 0..d {
                let key = PolarizationKey::new(k, d).unwrap();
                let enc = encrypt(&encode_input(&bits), &key);
                let evolved = bob_evolve(&enc, &u).unwrap();
                let dist = decrypt_measure(&evolved, &key);
                assert!(
                    (dist.probability(&bits.to_fock()) - 1.0).abs() < 1e-12,
                    "d = {d}, k = {k}"
                );
            }
        }
    }

    #[test]
    fn hong_ou_mandel_survives_encryption() {
        let u = Interferometer::balanced_mixer();
        let bits = LogicalInput::from_bit_string("11").unwrap();
        let key = PolarizationKey::new(2, 4).unwrap();
        let enc = encrypt(&encode_input(&bits), &key);
        let evolved = bob_evolve(&enc, &u).unwrap();
        let dist = decrypt_measure(&evolved, &key);
        assert!((dist.probability(&FockBasisState::new(vec![2, 0])) - 0.5).abs() < 1e-12);
        assert!((dist.probability(&FockBasisState::new(vec![0, 2])) - 0.5).abs() < 1e-12);
        assert!(dist.probability(&FockBasisState::new(vec![1, 1])) < 1e-12);
    }

    #[test]
    fn wrong_key_corrupts_the_distribution() {
        let u = Interferometer::balanced_mixer();
        let bits = LogicalInput::from_bit_string("10").unwrap();
        let key = PolarizationKey::new(1, 4).unwrap();
        let wrong = PolarizationKey::new(0, 4).unwrap();
        let enc = encrypt(&encode_input(&bits), &key);
        let evolved = bob_evolve(&enc, &u).unwrap();
        let plain = output_distribution(&u, &bits.to_fock()).unwrap();
        let good = decrypt_measure(&evolved, &key);
        let bad = decrypt_measure(&evolved, &wrong);
        assert!(good.tv_distance(&plain) < 1e-12);
        assert!(bad.tv_distance(&plain) > 0.05);
    }

    #[test]
    fn averaging_over_keys_gives_a_mixed_state() {
        // purity of (1/d) sum_k |psi_k><psi_k| over the Fock sector
        for m in 1..=3usize {
            for d in [2u32, 4, 8] {
                let bits = LogicalInput::from_index(0b101 & ((1 << m) - 1), m).unwrap();
                let encoded = encode_input(&bits);
                let sector = crate::fock::enumerate_sector(2 * m, m as u32);
                let dim = sector.len();
                let mut rho = CMatrix::zeros(dim, dim);
                for k in 0..d {
                    let enc = encrypt(&encoded, &PolarizationKey::new(k, d).unwrap());
                    let psi: Vec<Complex64> =
                        sector.iter().map(|s| enc.pure().amplitude(s)).collect();
                    for (i, a) in psi.iter().enumerate() {
                        for (j, b) in psi.iter().enumerate() {
                            rho[(i, j)] += a * b.conj() / d as f64;
                        }
                    }
                }
                let purity: f64 = rho.iter().map(|z| z.norm_sqr()).sum();
                assert!(
                    purity < 1.0 - 1e-6,
                    "m = {m}, d = {d}: purity {purity} should be < 1"
                );
            }
        }
    }

    /// The lifted network commutes with the key rotation (block
    /// diagonality in the rotated basis), so no amplitude ever crosses
    /// between the rotated-H and rotated-V sectors.
    #[test]
    fn lifted_network_commutes_with_pairwise_rotation() {
        for m in 1..=4usize {
            let u = haar_unitary_from_seed(m, 30 + m as u64).unwrap();
            let lifted = lift_network(&u);
            for k in 0..4u32 {
                let theta = k as f64 * std::f64::consts::PI / 4.0;
                let rot = pairwise_rotation_network(theta, m);
                let forward = lifted.matrix() * rot.matrix();
                let backward = rot.matrix() * lifted.matrix();
                assert!(
                    max_abs_diff(&forward, &backward) < 1e-12,
                    "m = {m}, k = {k}"
                );
            }
        }
    }

    /// Empirical H-pattern frequencies over many full rounds with fresh
    /// keys match plain boson sampling (chi-squared, alpha = 0.001).
    #[test]
    fn sampled_rounds_match_plain_distribution() {
        use statrs::distribution::{ChiSquared, ContinuousCDF};

        let m = 3usize;
        let bits = LogicalInput::from_bit_string("101").unwrap();
        let u = haar_unitary_from_seed(m, 314).unwrap();
        let plain = output_distribution(&u, &bits.to_fock()).unwrap();

        let rounds = 10_000u32;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut counts: std::collections::HashMap<FockBasisState, u32> =
            std::collections::HashMap::new();
        for _ in 0..rounds {
            let (pattern, _) = run_round(&bits, 8, &u, &mut rng).unwrap();
            *counts.entry(pattern).or_insert(0) += 1;
        }

        let mut statistic = 0.0;
        let mut bins = 0usize;
        for (state, p) in plain.iter() {
            let expected = p * rounds as f64;
            let observed = counts.remove(state).unwrap_or(0) as f64;
            if expected > 0.0 {
                statistic += (observed - expected).powi(2) / expected;
                bins += 1;
            } else {
                assert_eq!(observed, 0.0, "impossible pattern {state} was sampled");
            }
        }
        assert!(counts.is_empty(), "patterns outside the plain support: {counts:?}");
        let threshold = ChiSquared::new((bins - 1) as f64)
            .unwrap()
            .inverse_cdf(0.999);
        assert!(
            statistic < threshold,
            "chi^2 = {statistic:.2} exceeds threshold {threshold:.2}"
        );
    }

    #[test]
    fn round_through_identity_returns_input() {
        let bits = LogicalInput::from_bit_string("110").unwrap();
        let u = Interferometer::identity(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..8 {
            let (pattern, transcript) = run_round(&bits, 4, &u, &mut rng).unwrap();
            assert_eq!(pattern, bits.to_fock());
            assert_eq!(transcript.messages.len(), 2);
        }
    }

    #[test]
    fn transcript_shape_and_redaction() {
        let bits = LogicalInput::from_bit_string("10").unwrap();
        let u = haar_unitary_from_seed(2, 77).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (_, transcript) = run_round(&bits, 8, &u, &mut rng).unwrap();

        assert_eq!(transcript.messages.len(), 2);
        assert!(transcript.key.is_some());

        // Bob's message is a pure function of (received state, U)
        let received = PolarizedState::from_pure(transcript.messages[0].clone()).unwrap();
        let recomputed = bob_evolve(&received, &u).unwrap();
        assert_eq!(recomputed.pure(), &transcript.messages[1]);

        let redacted = transcript.redacted();
        assert!(redacted.key.is_none());
        let json = serde_json::to_string(&redacted).unwrap();
        assert!(!json.contains("\"key\""));
        assert!(serde_json::to_string(&transcript).unwrap().contains("\"key\""));
    }

    #[test]
    fn mode_count_mismatch_rejected() {
        let bits = LogicalInput::from_bit_string("10").unwrap();
        let u = Interferometer::identity(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            run_round(&bits, 2, &u, &mut rng),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
