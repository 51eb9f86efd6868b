use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("contract violation: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPsd { eigenvalue: f64 },

    #[error("Pauli tensor is not normalized: r00 = {r00}")]
    Normalization { r00: f64 },

    #[error("trace is not 1 (trace = {trace})")]
    NotUnitTrace { trace: f64 },

    #[error("state ({0}, {1}, {2}) lies outside the physical tetrahedron")]
    NonPhysical(f64, f64, f64),

    #[error("filter not invertible (|det| = {det:e})")]
    FilterNotInvertible { det: f64 },

    #[error("filter annihilates the state (normalization trace {trace:e})")]
    FilterAnnihilates { trace: f64 },

    #[error("rejection sampling stalled after {attempts} attempts")]
    SamplingStalled { attempts: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
