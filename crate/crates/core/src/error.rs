//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("state vector norm {norm} deviates from 1 by more than {tol}")]
    StateNotNormalized { norm: f64, tol: f64 },

    #[error("matrix is not Hermitian (max |A - A^dag| = {max_dev:.3e})")]
    NonHermitianInput { max_dev: f64 },

    #[error("expectation value has imaginary residue {imag:.3e}")]
    NonRealExpectation { imag: f64 },

    #[error("variance {variance:.3e} is below the round-off floor")]
    NegativeVariance { variance: f64 },

    #[error("site index {site} out of range for {n_spins} spins")]
    SiteOutOfRange { site: usize, n_spins: usize },

    #[error("invalid density matrix: {reason}")]
    InvalidDensityMatrix { reason: String },

    #[error("eigendecomposition failed to converge")]
    EigenDecompositionFailed,

    #[error("coupling matrix is not symmetric with zero diagonal at ({row}, {col})")]
    AsymmetricCouplings { row: usize, col: usize },

    #[error("spins {i} and {j} occupy the same position")]
    CoincidentPositions { i: usize, j: usize },

    #[error("field axis must have nonzero norm")]
    InvalidFieldAxis,

    #[error("invalid spin count: {reason}")]
    InvalidN { reason: String },

    #[error("invalid sweep grid: {reason}")]
    InvalidGrid { reason: String },

    #[error("sweep grid contains no points")]
    EmptyGrid,

    #[error("every grid point has collapsed signal amplitude; no squeezing minimum is defined")]
    AllPointsDegenerate,

    #[error("config schema error: {message}")]
    SchemaError { message: String },

    #[error("config validation error at `{field}`: {message}")]
    ValidationError { field: String, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
