use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] dflx_core::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for failures of the integration, 3 for invalid input, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        use dflx_core::Error as E;
        match self {
            CliError::Config(_) => 3,
            CliError::Core(e) if e.is_solver_failure() => 2,
            CliError::Core(E::QuadratureNoConvergence { .. }) => 2,
            CliError::Core(E::Stage { source, .. }) if matches!(**source, E::QuadratureNoConvergence { .. }) => 2,
            CliError::Core(E::Io(_)) | CliError::Io(_) | CliError::Csv(_) => 1,
            CliError::Core(_) => 3,
        }
    }
}
