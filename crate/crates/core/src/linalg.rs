//! Small dense complex linear-algebra helpers shared across modules.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix used throughout the crate.
pub type CMatrix = DMatrix<Complex64>;

/// Max-norm deviation of `u` from unitarity, `max_ij |(U†U - I)_ij|`.
pub fn unitarity_deviation(u: &CMatrix) -> f64 {
    let n = u.nrows();
    let gram = u.adjoint() * u;
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j { Complex64::ONE } else { Complex64::ZERO };
            dev = dev.max((gram[(i, j)] - expected).norm());
        }
    }
    dev
}

/// Error out unless `u` is square and unitary within `tol` in max norm.
pub fn require_unitary(u: &CMatrix, tol: f64) -> Result<()> {
    if u.nrows() != u.ncols() {
        return Err(Error::NonSquareMatrix {
            rows: u.nrows(),
            cols: u.ncols(),
        });
    }
    let deviation = unitarity_deviation(u);
    if deviation > tol {
        return Err(Error::NotUnitary {
            deviation,
            tolerance: tol,
        });
    }
    Ok(())
}

/// Largest absolute entry-wise difference between two equal-shaped matrices.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `m^t` by binary exponentiation; `t = 0` yields the identity.
pub fn matrix_power(m: &CMatrix, t: u64) -> CMatrix {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "matrix power needs a square matrix");
    let mut result = CMatrix::identity(n, n);
    let mut base = m.clone();
    let mut exp = t;
    while exp > 0 {
        if exp & 1 == 1 {
            result = &result * &base;
        }
        exp >>= 1;
        if exp > 0 {
            base = &base * &base;
        }
    }
    result
}

/// Eigenvalues of a Hermitian matrix, sorted in descending order.
///
/// The caller is responsible for Hermiticity up to floating-point noise;
/// the matrix is symmetrised before the solve.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let sym = (m + m.adjoint()).scale(0.5);
    let eigen = sym.symmetric_eigen();
    let mut values: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));
    values
}

/// Row-major `[re, im]` pairs, the JSON wire form for complex matrices.
pub fn matrix_to_pairs(m: &CMatrix) -> Vec<[f64; 2]> {
    let mut pairs = Vec::with_capacity(m.nrows() * m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            pairs.push([z.re, z.im]);
        }
    }
    pairs
}

/// Rebuild a matrix from row-major `[re, im]` pairs.
pub fn matrix_from_pairs(rows: usize, cols: usize, pairs: &[[f64; 2]]) -> Result<CMatrix> {
    if pairs.len() != rows * cols {
        return Err(Error::DimensionMismatch {
            expected: rows * cols,
            actual: pairs.len(),
        });
    }
    Ok(CMatrix::from_fn(rows, cols, |i, j| {
        let [re, im] = pairs[i * cols + j];
        Complex64::new(re, im)
    }))
}
