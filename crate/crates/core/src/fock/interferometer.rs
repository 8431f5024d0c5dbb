//! Interferometers: validated m x m unitaries acting on optical modes.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// An m-mode linear-optical network, i.e. an m x m unitary.
///
/// The matrix acts on mode-basis state vectors: a single photon injected
/// into mode `i` leaves in the superposition with amplitude `U[(j, i)]` on
/// mode `j` (column `i` is the image of mode `i`).
#[derive(Clone, Debug, PartialEq)]
pub struct Interferometer {
    unitary: CMatrix,
}

impl Interferometer {
    /// Unitarity guaranteed by construction (Haar draws, recompositions,
    /// walk compilations, lifts).
    pub const CONSTRUCTION_TOL: f64 = 1e-12;
    /// Unitarity demanded of externally supplied matrices.
    pub const VALIDATION_TOL: f64 = 1e-10;

    /// Validate and wrap an externally supplied matrix.
    pub fn from_matrix(unitary: CMatrix) -> Result<Self> {
        if unitary.nrows() == 0 {
            return Err(Error::EmptySystem);
        }
        linalg::require_unitary(&unitary, Self::VALIDATION_TOL)?;
        Ok(Self { unitary })
    }

    /// Wrap a matrix that is unitary by construction.
    pub(crate) fn from_trusted(unitary: CMatrix) -> Self {
        debug_assert!(linalg::unitarity_deviation(&unitary) < Self::CONSTRUCTION_TOL);
        Self { unitary }
    }

    pub fn identity(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::EmptySystem);
        }
        Ok(Self::from_trusted(CMatrix::identity(modes, modes)))
    }

    /// The 50:50 two-mode mixer `[[1, 1], [1, -1]] / sqrt(2)`.
    pub fn balanced_mixer() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_trusted(CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(s, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(-s, 0.0),
            ],
        ))
    }

    pub fn mode_count(&self) -> usize {
        self.unitary.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.unitary
    }

    pub fn unitarity_deviation(&self) -> f64 {
        linalg::unitarity_deviation(&self.unitary)
    }
}

/// Draw a Haar-distributed m x m unitary from the given RNG.
///
/// A complex Ginibre matrix is QR-factorised and the Q columns re-phased
/// by the R diagonal, which removes the QR gauge freedom and yields the
/// Haar measure.
pub fn haar_unitary<R: Rng + ?Sized>(modes: usize, rng: &mut R) -> Result<Interferometer> {
    if modes == 0 {
        return Err(Error::EmptySystem);
    }
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let ginibre = CMatrix::from_fn(modes, modes, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    });
    let qr = ginibre.qr();
    let r = qr.r();
    let phases = DVector::from_iterator(
        modes,
        (0..modes).map(|i| {
            let d = r[(i, i)];
            if d.norm() == 0.0 {
                Complex64::ONE
            } else {
                d / d.norm()
            }
        }),
    );
    let u = qr.q() * DMatrix::from_diagonal(&phases);
    Ok(Interferometer::from_trusted(u))
}

/// Deterministic Haar draw from a 64-bit seed.
pub fn haar_unitary_from_seed(modes: usize, seed: u64) -> Result<Interferometer> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_unitary(modes, &mut rng)
}

#[derive(Serialize, Deserialize)]
struct InterferometerWire {
    mode_count: usize,
    /// Row-major [re, im] pairs.
    unitary: Vec<[f64; 2]>,
}

impl Serialize for Interferometer {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        InterferometerWire {
            mode_count: self.mode_count(),
            unitary: linalg::matrix_to_pairs(&self.unitary),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Interferometer {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = InterferometerWire::deserialize(deserializer)?;
        let matrix = linalg::matrix_from_pairs(wire.mode_count, wire.mode_count, &wire.unitary)
            .map_err(serde::de::Error::custom)?;
        Interferometer::from_matrix(matrix).map_err(serde::de::Error::custom)
    }
}
