//! Density matrices of the encoded ensemble and the Holevo information
//! bounding what Bob can learn about Alice's input string.
//!
//! Bob sees the m-photon polarisation state averaged over Alice's d key
//! rotations. Everything here works on the m-qubit polarisation space
//! (H = |0>, V = |1> per photon, little-endian qubit order), or on the
//! (m+1)-dimensional symmetric subspace to which the all-H ensemble is
//! confined.

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Default cap on the photon count for exact Holevo computation
/// (2^m-dimensional eigendecompositions).
pub const DEFAULT_HOLEVO_MODE_CAP: usize = 10;

/// Hard cap for the brute-force density matrices (dimension 4096).
const BRUTEFORCE_MODE_CAP: usize = 12;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const EIGENVALUE_FLOOR: f64 = -1e-10;
/// Eigenvalues at or below this are treated as exact zeros (0 log 0 = 0).
const EIGENVALUE_CLAMP: f64 = 1e-14;

/// A validated density matrix: Hermitian with unit trace; positivity is
/// enforced whenever eigenvalues are extracted.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let n = matrix.nrows();
        if matrix.ncols() != n || n == 0 {
            return Err(Error::NonSquareMatrix {
                rows: n,
                cols: matrix.ncols(),
            });
        }
        let asym = linalg::max_abs_diff(&matrix, &matrix.adjoint());
        if asym > HERMITIAN_TOL {
            return Err(Error::Numerical(format!(
                "density matrix is not Hermitian: asymmetry {asym:.3e}"
            )));
        }
        let trace: Complex64 = (0..n).map(|i| matrix[(i, i)]).sum();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::Numerical(format!(
                "density matrix trace is {trace}, expected 1"
            )));
        }
        Ok(Self { matrix })
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        (0..self.dimension()).map(|i| self.matrix[(i, i)].re).sum()
    }

    /// Tr(rho^2); 1 for pure states, 1/dim for the maximally mixed state.
    pub fn purity(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Eigenvalues in descending order; errors if any is below -1e-10.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let values = linalg::hermitian_eigenvalues(&self.matrix);
        if let Some(&min) = values.last() {
            if min < EIGENVALUE_FLOOR {
                return Err(Error::Numerical(format!(
                    "density matrix has negative eigenvalue {min:.3e}"
                )));
            }
        }
        Ok(values)
    }

    pub fn max_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?[0])
    }

    /// Von Neumann entropy in bits, -Tr(rho log2 rho).
    pub fn von_neumann_entropy(&self) -> Result<f64> {
        Ok(entropy_bits(&self.eigenvalues()?))
    }
}

fn entropy_bits(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .filter(|&&l| l > EIGENVALUE_CLAMP)
        .map(|&l| -l * l.log2())
        .sum()
}

/// The encoded ensemble state for input string `input` (bit j set means a
/// V photon in logical mode j), averaged over all d key rotations:
/// `rho_i = (1/d) sum_k R(k pi/d)^(x m) |P_i><P_i| R(-k pi/d)^(x m)`
/// on the full 2^m-dimensional polarisation space.
pub fn input_density_bruteforce(input: u64, m: usize, d: u32) -> Result<DensityMatrix> {
    validate_ensemble_params(m, d)?;
    if m > BRUTEFORCE_MODE_CAP {
        return Err(Error::ResourceCap {
            needed: 1u128 << m,
            cap: 1u128 << BRUTEFORCE_MODE_CAP,
        });
    }
    if m < 64 && input >> m != 0 {
        return Err(Error::InvalidParameter(format!(
            "input index {input} out of range for {m} modes"
        )));
    }

    let dim = 1usize << m;
    let mut rho = vec![0.0f64; dim * dim];
    let mut psi = vec![0.0f64; dim];
    let weight = 1.0 / d as f64;
    for k in 0..d {
        let theta = k as f64 * std::f64::consts::PI / d as f64;
        let (s, c) = theta.sin_cos();
        for (idx, slot) in psi.iter_mut().enumerate() {
            let mut a = 1.0;
            for j in 0..m {
                let starts_v = input >> j & 1 == 1;
                let component_v = idx >> j & 1 == 1;
                // columns of R(theta): H -> (c, s), V -> (-s, c)
                a *= match (starts_v, component_v) {
                    (false, false) => c,
                    (false, true) => s,
                    (true, false) => -s,
                    (true, true) => c,
                };
            }
            *slot = a;
        }
        for i in 0..dim {
            let wi = weight * psi[i];
            for j in 0..dim {
                rho[i * dim + j] += wi * psi[j];
            }
        }
    }

    DensityMatrix::new(CMatrix::from_fn(dim, dim, |i, j| {
        Complex64::new(rho[i * dim + j], 0.0)
    }))
}

/// The all-H encoded ensemble on the (m+1)-dimensional symmetric subspace,
/// in the circular per-photon basis |0> = (|H> + i|V>)/sqrt(2),
/// |1> = (|H> - i|V>)/sqrt(2):
///
/// `rho_0 = (1/(d 2^m)) sum_k sum_{a,b} e^{2i(b-a)k pi/d}
///          sqrt(C(m,a) C(m,b)) |a><b|`.
///
/// In this basis a rotation by theta multiplies the |1>-count-ell
/// component by `e^{i(2 ell - m) theta}`, hence the doubled relative
/// phase between |a> and |b>. For d > m every cross term cancels exactly
/// and the diagonal is the binomial distribution C(m,a)/2^m.
pub fn symmetric_density(m: usize, d: u32) -> Result<DensityMatrix> {
    validate_ensemble_params(m, d)?;

    // phase_sum[shift] = (1/d) sum_k e^{2i shift k pi/d}, shift = b - a
    let offset = m as i64;
    let mut phase_sum = vec![Complex64::ZERO; 2 * m + 1];
    for (s, slot) in phase_sum.iter_mut().enumerate() {
        let shift = s as i64 - offset;
        let mut acc = Complex64::ZERO;
        for k in 0..d {
            let angle = 2.0 * shift as f64 * k as f64 * std::f64::consts::PI / d as f64;
            acc += Complex64::from_polar(1.0, angle);
        }
        *slot = acc / d as f64;
    }

    let scale = 0.5f64.powi(m as i32);
    let matrix = CMatrix::from_fn(m + 1, m + 1, |a, b| {
        let weight = (choose(m, a) * choose(m, b)).sqrt() * scale;
        phase_sum[(b as i64 - a as i64 + offset) as usize] * weight
    });
    DensityMatrix::new(matrix)
}

fn validate_ensemble_params(m: usize, d: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::EmptySystem);
    }
    if d == 0 {
        return Err(Error::InvalidParameter("division count d must be >= 1".into()));
    }
    Ok(())
}

/// A state in the symmetric subspace of m photons: amplitudes over the
/// basis |ell>_m of symmetrised states with ell photons in the circular
/// |1> state.
#[derive(Clone, Debug)]
pub struct SymmetricState {
    photons: usize,
    amplitudes: Vec<Complex64>,
}

impl SymmetricState {
    /// The all-H product state rotated by `theta`, expressed in the
    /// circular basis: amplitude `sqrt(C(m,ell)/2^m) e^{i(2 ell - m) theta}`
    /// on |ell>_m. Averaging the outer products of these states over the
    /// key grid reproduces [`symmetric_density`]; the two routes are
    /// algebraically independent and cross-checked in tests.
    pub fn encoded(m: usize, theta: f64) -> Self {
        let scale = 0.5f64.powi(m as i32);
        let amplitudes = (0..=m)
            .map(|ell| {
                let magnitude = (choose(m, ell) * scale).sqrt();
                Complex64::from_polar(magnitude, (2 * ell as i64 - m as i64) as f64 * theta)
            })
            .collect();
        Self { photons: m, amplitudes }
    }

    pub fn photons(&self) -> usize {
        self.photons
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// |psi><psi| on the symmetric subspace.
    pub fn outer(&self) -> CMatrix {
        let n = self.amplitudes.len();
        CMatrix::from_fn(n, n, |i, j| self.amplitudes[i] * self.amplitudes[j].conj())
    }
}

/// Exact Holevo information chi(m) = S(rho) - (1/2^m) sum_i S(rho_i) of
/// the encoded ensemble, in bits, with the default photon-count cap.
pub fn holevo_exact(m: usize, d: u32) -> Result<f64> {
    holevo_exact_capped(m, d, DEFAULT_HOLEVO_MODE_CAP)
}

/// As [`holevo_exact`] with an explicit cap.
///
/// Two exact identities reduce the computation: the 2^m input projectors
/// form a complete basis, so the ensemble average rho is maximally mixed
/// and S(rho) = m (verified numerically in the test suite for m <= 5);
/// and every rho_i is a local-flip conjugate of rho_0, so S(rho_i) is
/// independent of i (cross-checked here against the all-V input whenever
/// the dimension is small, and against random inputs in the test suite).
pub fn holevo_exact_capped(m: usize, d: u32, m_cap: usize) -> Result<f64> {
    validate_ensemble_params(m, d)?;
    if m > m_cap {
        return Err(Error::ResourceCap {
            needed: 1u128 << m,
            cap: 1u128 << m_cap,
        });
    }
    let s0 = input_density_bruteforce(0, m, d)?.von_neumann_entropy()?;
    if m <= 6 {
        let all_v = (1u64 << m) - 1;
        let s_other = input_density_bruteforce(all_v, m, d)?.von_neumann_entropy()?;
        if (s0 - s_other).abs() > 1e-9 {
            return Err(Error::Numerical(format!(
                "per-input entropies disagree: {s0} vs {s_other}"
            )));
        }
    }
    Ok((m as f64 - s0).max(0.0))
}

/// Entropy of the binomial distribution Bin(m, 1/2) in bits; the large-d
/// limit of S(rho_i).
pub fn binomial_entropy(m: usize) -> f64 {
    assert!(m >= 1, "photon count must be >= 1");
    let ln2 = std::f64::consts::LN_2;
    let mut h = 0.0;
    for a in 0..=m {
        let ln_p = ln_choose(m, a) - m as f64 * ln2;
        h -= ln_p.exp() * (ln_p / ln2);
    }
    h
}

/// Large-d closed form chi(m) = m - (1/2) log2(pi e m / 2).
///
/// The O(1/m) remainder makes this inexact at small m; it is already
/// negative at m = 1.
pub fn holevo_asymptotic(m: usize) -> f64 {
    assert!(m >= 1, "photon count must be >= 1");
    m as f64 - 0.5 * (0.5 * std::f64::consts::PI * std::f64::consts::E * m as f64).log2()
}

/// Largest eigenvalue of the large-d encoded ensemble, the binomial peak
/// `2^-m C(m, floor(m/2))`.
pub fn rho_max_eigenvalue(m: usize) -> f64 {
    assert!(m >= 1, "photon count must be >= 1");
    (ln_choose(m, m / 2) - m as f64 * std::f64::consts::LN_2).exp()
}

/// `sqrt(2 / (pi m))`, the large-m limit of [`rho_max_eigenvalue`].
pub fn rho_max_eigenvalue_asymptotic(m: usize) -> f64 {
    assert!(m >= 1, "photon count must be >= 1");
    (2.0 / (std::f64::consts::PI * m as f64)).sqrt()
}

/// Upper bound `sqrt(8 / (pi m))` on the probability that any POVM lets
/// Bob guess the full input string. Vacuous (> 1) below m = 8/pi.
pub fn guess_probability_bound(m: usize) -> f64 {
    assert!(m >= 1, "photon count must be >= 1");
    (8.0 / (std::f64::consts::PI * m as f64)).sqrt()
}

fn ln_choose(m: usize, a: usize) -> f64 {
    ln_gamma(m as f64 + 1.0) - ln_gamma(a as f64 + 1.0) - ln_gamma((m - a) as f64 + 1.0)
}

fn choose(m: usize, a: usize) -> f64 {
    ln_choose(m, a).exp().round()
}
