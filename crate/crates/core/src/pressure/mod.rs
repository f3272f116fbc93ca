//! Pressure laws, the regularized pressure, its monotone split and the
//! associated free energies.

mod artificial;
mod builtin;
mod cutoff;
mod growth;
mod helmholtz;
mod law;
mod split;

pub use artificial::ArtificialPressure;
pub use builtin::{
    builtin_laws, law_by_name, CrossTerm, CrossTerms, LawArgs, Oscillatory, TwoGamma, DEFAULT_AMPLITUDE, LAW_NAMES,
};
pub use cutoff::{smooth_cutoff_geq, smooth_cutoff_leq, smooth_cutoff_leq_deriv};
pub use growth::{check_growth_bounds, GrowthReport, CONSTANT_LIMIT};
pub use helmholtz::{
    energy_sandwich, fit_delta_lower_bound, helmholtz_g, helmholtz_g_delta, helmholtz_identity_residual,
    max_identity_residual, SandwichReport, G_ABS_TOL,
};
pub use law::{LawParams, PressureLaw};
pub use split::{MonotoneSplit, SplitAudit, SplitSearch, MAX_AMPLIFICATION_LOG2};
