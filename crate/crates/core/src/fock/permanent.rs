//! Matrix permanent via Ryser's inclusion-exclusion formula.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Permanent of a square complex matrix.
///
/// Uses Ryser's formula with Gray-code subset iteration, O(2^n * n),
/// which is exact and fast enough for the n <= 16 photon counts this
/// crate targets. The permanent of the empty 0x0 matrix is 1.
pub fn permanent(a: &CMatrix) -> Result<Complex64> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::NonSquareMatrix {
            rows: n,
            cols: a.ncols(),
        });
    }
    if n == 0 {
        return Ok(Complex64::ONE);
    }
    if n >= 63 {
        return Err(Error::ResourceCap {
            needed: 1u128 << n,
            cap: 1u128 << 62,
        });
    }

    // total = sum over non-empty column subsets S of (-1)^|S| prod_i sum_{j in S} a_ij,
    // maintained incrementally: each Gray-code step toggles one column in
    // the running row sums.
    let mut row_sums = vec![Complex64::ZERO; n];
    let mut total = Complex64::ZERO;
    let mut prev_gray = 0u64;
    for k in 1..(1u64 << n) {
        let gray = k ^ (k >> 1);
        let toggled = (gray ^ prev_gray).trailing_zeros() as usize;
        if gray >> toggled & 1 == 1 {
            for (i, sum) in row_sums.iter_mut().enumerate() {
                *sum += a[(i, toggled)];
            }
        } else {
            for (i, sum) in row_sums.iter_mut().enumerate() {
                *sum -= a[(i, toggled)];
            }
        }
        prev_gray = gray;

        let mut prod = Complex64::ONE;
        for sum in &row_sums {
            prod *= sum;
        }
        if gray.count_ones() % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }

    Ok(if n.is_multiple_of(2) { total } else { -total })
}
