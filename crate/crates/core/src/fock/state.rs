//! Occupation-number basis states, sector enumeration, and sparse pure
//! states over a fixed photon-number sector.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A photon-number basis state: the occupation of each mode.
///
/// Ordering is lexicographic over the occupation vector, which fixes the
/// enumeration and serialisation order everywhere in the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FockBasisState(Vec<u32>);

impl FockBasisState {
    pub fn new(occupations: Vec<u32>) -> Self {
        Self(occupations)
    }

    /// All modes empty.
    pub fn vacuum(modes: usize) -> Self {
        Self(vec![0; modes])
    }

    /// One photon in `mode`, all other modes empty.
    pub fn single_photon(modes: usize, mode: usize) -> Self {
        assert!(mode < modes, "mode out of range");
        let mut occ = vec![0; modes];
        occ[mode] = 1;
        Self(occ)
    }

    pub fn occupations(&self) -> &[u32] {
        &self.0
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    pub fn occupation(&self, mode: usize) -> u32 {
        self.0[mode]
    }

    pub fn total_photons(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Debug for FockBasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}>", self)
    }
}

impl fmt::Display for FockBasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Number of occupation vectors of `modes` modes holding `photons`
/// photons, C(modes + photons - 1, photons); `None` on u128 overflow.
pub fn sector_size(modes: usize, photons: u32) -> Option<u128> {
    if modes == 0 {
        return Some(if photons == 0 { 1 } else { 0 });
    }
    let n = modes as u128 - 1 + photons as u128;
    let k = (photons as u128).min(n - photons as u128);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.checked_mul(n - i)?;
        result /= i + 1; // exact: product of j consecutive integers is divisible by j!
    }
    Some(result)
}

/// Every occupation vector of the (modes, photons) sector, in ascending
/// lexicographic order.
pub fn enumerate_sector(modes: usize, photons: u32) -> Vec<FockBasisState> {
    let mut out = Vec::new();
    if modes == 0 {
        if photons == 0 {
            out.push(FockBasisState::new(Vec::new()));
        }
        return out;
    }
    let mut current = vec![0u32; modes];
    fill(&mut out, &mut current, 0, photons);
    out
}

fn fill(out: &mut Vec<FockBasisState>, current: &mut Vec<u32>, mode: usize, remaining: u32) {
    if mode == current.len() - 1 {
        current[mode] = remaining;
        out.push(FockBasisState::new(current.clone()));
        return;
    }
    for n in 0..=remaining {
        current[mode] = n;
        fill(out, current, mode + 1, remaining - n);
    }
    current[mode] = 0;
}

/// A pure state on a fixed photon-number sector, stored as a sparse map
/// from basis states to complex amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    modes: usize,
    photons: u32,
    amplitudes: BTreeMap<FockBasisState, Complex64>,
}

impl PureState {
    /// The basis state itself, amplitude 1.
    pub fn basis_state(state: FockBasisState) -> Self {
        let modes = state.modes();
        let photons = state.total_photons();
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert(state, Complex64::ONE);
        Self {
            modes,
            photons,
            amplitudes,
        }
    }

    /// Build from an amplitude map; every key must live on the same
    /// (modes, photons) sector.
    pub fn from_amplitudes(
        modes: usize,
        photons: u32,
        amplitudes: BTreeMap<FockBasisState, Complex64>,
    ) -> Result<Self> {
        for state in amplitudes.keys() {
            if state.modes() != modes {
                return Err(Error::DimensionMismatch {
                    expected: modes,
                    actual: state.modes(),
                });
            }
            if state.total_photons() != photons {
                return Err(Error::PhotonMismatch {
                    input: photons,
                    output: state.total_photons(),
                });
            }
        }
        Ok(Self {
            modes,
            photons,
            amplitudes,
        })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn photons(&self) -> u32 {
        self.photons
    }

    pub fn amplitude(&self, state: &FockBasisState) -> Complex64 {
        self.amplitudes.get(state).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn amplitudes(&self) -> &BTreeMap<FockBasisState, Complex64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .values()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes
            .iter()
            .map(|(state, amp)| amp.conj() * other.amplitude(state))
            .sum()
    }
}

#[derive(Serialize, Deserialize)]
struct AmplitudeEntry {
    state: FockBasisState,
    amp: [f64; 2],
}

#[derive(Serialize, Deserialize)]
struct PureStateWire {
    modes: usize,
    photons: u32,
    amplitudes: Vec<AmplitudeEntry>,
}

impl Serialize for PureState {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PureStateWire {
            modes: self.modes,
            photons: self.photons,
            amplitudes: self
                .amplitudes
                .iter()
                .map(|(state, amp)| AmplitudeEntry {
                    state: state.clone(),
                    amp: [amp.re, amp.im],
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PureState {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let wire = PureStateWire::deserialize(deserializer)?;
        let map = wire
            .amplitudes
            .into_iter()
            .map(|e| (e.state, Complex64::new(e.amp[0], e.amp[1])))
            .collect();
        PureState::from_amplitudes(wire.modes, wire.photons, map)
            .map_err(serde::de::Error::custom)
    }
}
