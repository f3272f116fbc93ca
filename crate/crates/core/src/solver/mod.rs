//! Time integration of the regularized drift-flux system under Galerkin
//! truncation of the velocity.

mod cascade;
mod linear;
mod regularize;
mod rhs;
mod run;
mod state;
mod step;

pub use cascade::{
    run_cascade, run_cascade_partial, validate_schedule, CascadeOutcome, RawData, StageContext, StageResult,
};
pub use regularize::regularize_initial_data;
pub use rhs::{rhs_approximate, rhs_with, Tendency};
pub use run::{run, Observation, RunSummary};
pub use state::{CascadeParams, RunConfig, State, Toggles, NEGATIVITY_TOL};
pub use step::{cfl_dt, step, step_limit, CflInfo, StepLimit, MIN_SOUND_SPEED};
