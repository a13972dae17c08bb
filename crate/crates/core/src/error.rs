use thiserror::Error;

/// Errors produced by state construction, measures and sweeps.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("subsystem index {index} out of range for {count} subsystems")]
    InvalidSubsystem { index: usize, count: usize },

    #[error("operation requires a bipartite state, got {0} subsystem(s)")]
    NotBipartite(usize),

    #[error("matrix is not Hermitian (defect {0:.3e})")]
    NotHermitian(f64),

    #[error("not a valid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid state amplitudes: {0}")]
    InvalidState(String),

    #[error("{0}")]
    Domain(String),

    #[error("unsupported size: {0}")]
    UnsupportedSize(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cannot parse {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
