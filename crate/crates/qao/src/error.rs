use thiserror::Error;

/// Errors produced by the solvers and the configuration parser.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operator dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degenerate kernel: two smallest singular values {smallest:.3e} and {next:.3e} are within a factor of 1e3")]
    DegenerateKernel { smallest: f64, next: f64 },

    #[error("stationary state has eigenvalue {min_eigenvalue:.3e} below the positivity tolerance")]
    NonPositive { min_eigenvalue: f64 },

    #[error("time step {dt:.3e} exceeds the stability limit {limit:.3e}")]
    StepTooLarge { dt: f64, limit: f64 },

    #[error("trajectory diverged at t = {t:.3e} with |z| = {amplitude:.3e}")]
    Diverged { t: f64, amplitude: f64 },

    #[error("truncated stationary system is rank-deficient")]
    SingularSystem,

    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },

    #[error("cutoff grew past {max} without meeting the tail criterion")]
    CutoffExhausted { max: usize },

    #[error("missing configuration key \"{key}\"")]
    MissingKey { key: String },

    #[error("config parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("linear algebra backend failure: {0}")]
    Backend(String),
}

pub type Result<T> = std::result::Result<T, Error>;
