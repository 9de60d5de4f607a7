use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite entry at position {index}")]
    NonFinite { index: usize },

    /// A dense matrix that should be zero-diagonal tridiagonal is not.
    #[error("entry ({row}, {col}) = {value:e} exceeds the structural tolerance {tol:e}")]
    StructureViolation { row: usize, col: usize, value: f64, tol: f64 },

    #[error("bisection did not converge for eigenvalue {index}")]
    NonConvergence { index: usize },

    #[error("spectrum is not symmetric about zero (deviation {deviation:e} > {tol:e})")]
    PairingViolation { deviation: f64, tol: f64 },

    #[error("eigenvalues are not distinct (minimum gap {gap:e} < {tol:e})")]
    DegenerateSpectrum { gap: f64, tol: f64 },

    #[error("eigenvalue magnitudes are not strictly separated (gap {gap:e} <= {tol:e})")]
    DegenerateMagnitudes { gap: f64, tol: f64 },

    #[error("off-diagonal entry a_{index} is zero; its limiting sign is undefined", index = .index + 1)]
    ZeroEntry { index: usize },

    #[error("initial condition is already an equilibrium")]
    EquilibriumInput,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid integrator configuration: {0}")]
    InvalidConfig(String),

    #[error("adaptive step {step:e} fell below the minimum {min:e} at t = {t:e}")]
    StepUnderflow { t: f64, step: f64, min: f64 },

    #[error("quadrature nodes from the flow and the eigensolver differ by {deviation:e} (> {tol:e})")]
    MethodDisagreement { deviation: f64, tol: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
