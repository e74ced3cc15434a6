use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by state construction, entropy evaluation and bound computation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("layout total dimension {layout} does not match state dimension {state}")]
    LayoutMismatch { layout: usize, state: usize },

    #[error("party index {index} out of range for {parties} parties")]
    IndexOutOfRange { index: usize, parties: usize },

    #[error("party index {0} listed more than once")]
    DuplicateIndex(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("state vector not normalized: |psi|^2 = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("matrix is not Hermitian: max |rho - rho^dag| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("trace is {trace}, expected 1")]
    BadTrace { trace: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("state is not pure: Tr(rho^2) = {purity}")]
    NotPure { purity: f64 },

    #[error("weights do not form a probability vector: {0}")]
    BadWeights(String),

    #[error("parameter p = {0} outside [0, 1]")]
    ParameterOutOfRange(f64),

    #[error("total dimension {dim} exceeds the dense guard of {max}")]
    DimensionGuard { dim: usize, max: usize },

    #[error("{method} needs {expected} parties, layout has {got}")]
    PartyCount {
        method: &'static str,
        expected: &'static str,
        got: usize,
    },

    #[error("invalid grouping: {0}")]
    InvalidGrouping(String),

    #[error("extension does not reproduce the target state: max deviation {deviation:e}")]
    InconsistentExtension { deviation: f64 },

    #[error("no sign change in bracket [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
