//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NonSquareMatrix { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not unitary: max |U†U - I| = {deviation:.3e} exceeds {tolerance:.0e}")]
    NotUnitary { deviation: f64, tolerance: f64 },

    #[error("photon number mismatch: input carries {input}, output carries {output}")]
    PhotonMismatch { input: u32, output: u32 },

    #[error("empty system: at least one mode is required")]
    EmptySystem,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("state space too large: {needed} configurations exceed the cap of {cap}")]
    ResourceCap { needed: u128, cap: u128 },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
