//! Reck-style triangular mesh: factor any interferometer into two-mode
//! mixers on adjacent modes plus single-mode phase shifts.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::Interferometer;
use crate::linalg::CMatrix;

/// One optical element of a planar mesh.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ReckElement {
    /// Two-mode mixer on modes (mode, mode + 1), with 2x2 block
    /// `[[e^{-i phi} cos th, e^{-i phi} sin th], [-sin th, cos th]]`:
    /// a beamsplitter of angle theta followed by a phase shifter on the
    /// first arm.
    Mixer { mode: usize, theta: f64, phi: f64 },
    /// Phase shift `e^{i phi}` on a single mode.
    Phase { mode: usize, phi: f64 },
}

impl ReckElement {
    fn max_mode(&self) -> usize {
        match self {
            ReckElement::Mixer { mode, .. } => mode + 1,
            ReckElement::Phase { mode, .. } => *mode,
        }
    }
}

/// Ordered element list; the left-to-right matrix product of the embedded
/// elements reproduces the decomposed unitary.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReckNetwork {
    elements: Vec<ReckElement>,
}

impl ReckNetwork {
    pub fn new(elements: Vec<ReckElement>) -> Self {
        Self { elements }
    }

    pub fn elements(&self) -> &[ReckElement] {
        &self.elements
    }

    pub fn mixer_count(&self) -> usize {
        self.elements
            .iter()
            .filter(|e| matches!(e, ReckElement::Mixer { .. }))
            .count()
    }

    /// Factor `u` into m(m-1)/2 adjacent-pair mixers and m phases.
    ///
    /// Givens-style nulling: columns left to right, rows bottom to top.
    /// Left-multiplying by mixers `T_k` reduces the unitary to a diagonal
    /// of pure phases `D`, so `U = T_1^dag ... T_N^dag D`, and each
    /// `T^dag` is exactly the [`ReckElement::Mixer`] block.
    pub fn decompose(u: &Interferometer) -> Result<ReckNetwork> {
        let m = u.mode_count();
        let mut work = u.matrix().clone();
        let mut elements = Vec::with_capacity(m * (m - 1) / 2 + m);

        for col in 0..m.saturating_sub(1) {
            for row in ((col + 1)..m).rev() {
                let above = work[(row - 1, col)];
                let here = work[(row, col)];
                let (theta, phi) = if here.norm() == 0.0 {
                    (0.0, 0.0)
                } else {
                    // e^{i phi} sin(th) * above + cos(th) * here = 0
                    (here.norm().atan2(above.norm()), (-here).arg() - above.arg())
                };
                apply_nulling_rotation(&mut work, row - 1, theta, phi);
                elements.push(ReckElement::Mixer {
                    mode: row - 1,
                    theta,
                    phi,
                });
            }
        }

        // `work` is now diagonal with unimodular entries.
        for mode in 0..m {
            elements.push(ReckElement::Phase {
                mode,
                phi: work[(mode, mode)].arg(),
            });
        }
        Ok(ReckNetwork { elements })
    }

    /// Left-to-right product of the embedded element matrices.
    pub fn recompose(&self, modes: usize) -> Result<Interferometer> {
        if modes == 0 {
            return Err(Error::EmptySystem);
        }
        for element in &self.elements {
            if element.max_mode() >= modes {
                return Err(Error::InvalidParameter(format!(
                    "element touches mode {} but the network has {} modes",
                    element.max_mode(),
                    modes
                )));
            }
        }
        let mut acc = CMatrix::identity(modes, modes);
        for element in &self.elements {
            // Right-multiplication only mixes the touched columns of acc.
            match *element {
                ReckElement::Mixer { mode, theta, phi } => {
                    let (c, s) = (theta.cos(), theta.sin());
                    let phase = Complex64::from_polar(1.0, -phi);
                    for r in 0..modes {
                        let left = acc[(r, mode)];
                        let right = acc[(r, mode + 1)];
                        acc[(r, mode)] = left * phase * c - right * s;
                        acc[(r, mode + 1)] = left * phase * s + right * c;
                    }
                }
                ReckElement::Phase { mode, phi } => {
                    let phase = Complex64::from_polar(1.0, phi);
                    for r in 0..modes {
                        acc[(r, mode)] *= phase;
                    }
                }
            }
        }
        Interferometer::from_matrix(acc)
    }
}

/// Left-multiply `work` by the mixer that nulls `work[(top + 1, col)]`:
/// row_top <- e^{i phi} cos(th) row_top - sin(th) row_bot,
/// row_bot <- e^{i phi} sin(th) row_top + cos(th) row_bot.
fn apply_nulling_rotation(work: &mut CMatrix, top: usize, theta: f64, phi: f64) {
    let (c, s) = (theta.cos(), theta.sin());
    let phase = Complex64::from_polar(1.0, phi);
    for col in 0..work.ncols() {
        let upper = work[(top, col)];
        let lower = work[(top + 1, col)];
        work[(top, col)] = phase * c * upper - s * lower;
        work[(top + 1, col)] = phase * s * upper + c * lower;
    }
}
