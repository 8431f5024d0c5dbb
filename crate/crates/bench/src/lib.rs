//! Shared fixtures for the kernel benchmarks.

use encwalk_core::fock::{haar_unitary_from_seed, FockBasisState, Interferometer};
use encwalk_core::linalg::CMatrix;

/// Haar unitary with a fixed seed per size, so runs are comparable.
pub fn fixture_unitary(modes: usize) -> Interferometer {
    haar_unitary_from_seed(modes, 0xBE5C + modes as u64).expect("modes >= 1")
}

/// The top-left n x n slice of a Haar unitary: a generic dense complex
/// matrix for permanent benchmarks.
pub fn fixture_matrix(n: usize) -> CMatrix {
    let u = fixture_unitary(n.max(2));
    CMatrix::from_fn(n, n, |i, j| u.matrix()[(i, j)])
}

/// p photons bunched into the first modes of an m-mode input.
pub fn fixture_input(modes: usize, photons: usize) -> FockBasisState {
    let mut occ = vec![0u32; modes];
    for slot in occ.iter_mut().take(photons) {
        *slot = 1;
    }
    FockBasisState::new(occ)
}
