use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("field mean {mean:e} is not zero (tolerance {tol:e})")]
    MeanNotZero { mean: f64, tol: f64 },

    #[error("regularization delta = {0} outside (0, 1)")]
    DeltaOutOfRange(f64),

    #[error("parameter out of domain: {0}")]
    ParamDomain(String),

    #[error("adaptive quadrature stalled: error estimate {estimate:e} above tolerance {tol:e}")]
    QuadratureNoConvergence { estimate: f64, tol: f64 },

    #[error("monotone split not found: amplification constant would exceed {limit}")]
    SplitNotFound { limit: f64 },

    #[error("inconsistent initial data: {0}")]
    InconsistentData(String),

    #[error("vacuum encountered at t = {t}: min(rho + n) = {min:e} below {floor:e}")]
    VacuumEncountered { t: f64, min: f64, floor: f64 },

    #[error("kernel scale h = {h} must lie in (0, {h0})")]
    HTooLarge { h: f64, h0: f64 },

    #[error("exponent {name} = {value} is not positive")]
    ExponentNonpositive { name: &'static str, value: f64 },

    #[error("invalid cascade schedule: {0}")]
    InvalidSchedule(String),

    #[error("stage {index}: {source}")]
    Stage {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("snapshot format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the time integration itself (vacuum, blow-up),
    /// as opposed to invalid input.
    pub fn is_solver_failure(&self) -> bool {
        match self {
            Error::VacuumEncountered { .. } | Error::NonFinite(_) => true,
            Error::Stage { source, .. } => source.is_solver_failure(),
            _ => false,
        }
    }
}
