use thiserror::Error;

/// Failures surfaced by the command line, each with a fixed exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable, unwritable or malformed input files and arguments.
    #[error("{0}")]
    Input(String),
    /// A state or parameter failed validation.
    #[error("{0}")]
    Validation(esq_core::Error),
    /// The bound method does not apply to the party count.
    #[error("{0}")]
    MethodMismatch(esq_core::Error),
    /// Threshold bracket without a sign change.
    #[error("{0}")]
    NoSignChange(esq_core::Error),
    /// Extension does not reproduce the state.
    #[error("{0}")]
    InconsistentExtension(esq_core::Error),
    /// A randomized check found a violation.
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Validation(_) => 3,
            CliError::MethodMismatch(_) => 4,
            CliError::NoSignChange(_) => 5,
            CliError::InconsistentExtension(_) => 6,
        }
    }
}

impl From<esq_core::Error> for CliError {
    fn from(e: esq_core::Error) -> Self {
        use esq_core::Error as E;
        match e {
            E::PartyCount { .. } => CliError::MethodMismatch(e),
            E::NoSignChange { .. } => CliError::NoSignChange(e),
            E::InconsistentExtension { .. } => CliError::InconsistentExtension(e),
            E::InvalidGrid(_) | E::InvalidArgument(_) => CliError::Input(e.to_string()),
            other => CliError::Validation(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
