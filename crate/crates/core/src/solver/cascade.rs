//! Sequence of approximation stages, each restarted from the same physical
//! data regularized with its own `δ`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::pressure::{ArtificialPressure, PressureLaw};
use crate::spectral::{ScalarField, VectorField};

use super::regularize::regularize_initial_data;
use super::run::{run, Observation, RunSummary};
use super::state::{CascadeParams, RunConfig, State};

/// `ℓ` nondecreasing, `ε` and `δ` nonincreasing, at least one stage.
pub fn validate_schedule(schedule: &[CascadeParams]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::InvalidSchedule("schedule is empty".into()));
    }
    for (k, w) in schedule.windows(2).enumerate() {
        let (a, b) = (&w[0], &w[1]);
        if b.ell < a.ell {
            return Err(Error::InvalidSchedule(format!("ell decreases at stage {}", k + 1)));
        }
        if b.eps > a.eps {
            return Err(Error::InvalidSchedule(format!("eps increases at stage {}", k + 1)));
        }
        if b.delta > a.delta {
            return Err(Error::InvalidSchedule(format!("delta increases at stage {}", k + 1)));
        }
    }
    Ok(())
}

/// Physical initial data shared by all stages.
#[derive(Debug, Clone)]
pub struct RawData {
    pub rho0: ScalarField,
    pub n0: ScalarField,
    pub m0: VectorField,
}

/// Per-stage context handed to observers.
#[derive(Debug, Clone)]
pub struct StageContext {
    pub index: usize,
    pub params: CascadeParams,
    pub pressure: ArtificialPressure,
    pub initial: State,
}

#[derive(Debug, Clone)]
pub struct StageResult {
    pub context: StageContext,
    pub summary: RunSummary,
}

#[derive(Debug, Clone, Default)]
pub struct CascadeOutcome {
    pub stages: Vec<StageResult>,
    /// `‖rho_k - rho_{k+1}‖_1 + ‖n_k - n_{k+1}‖_1` of terminal fields.
    pub l1_rho_n: Vec<f64>,
    /// `‖ϑ_k - ϑ_{k+1}‖_1` of terminal fields.
    pub l1_theta: Vec<f64>,
}

impl CascadeOutcome {
    fn push(&mut self, r: StageResult) {
        if let Some(prev) = self.stages.last() {
            let (a, b) = (&prev.summary.final_state, &r.summary.final_state);
            self.l1_rho_n.push(a.rho.sub(&b.rho).lp_norm(1.0) + a.n.sub(&b.n).lp_norm(1.0));
            self.l1_theta.push(a.theta().sub(&b.theta()).lp_norm(1.0));
        }
        self.stages.push(r);
    }
}

/// Runs every stage in order, stopping at the first failure. Returns the
/// completed stages together with the failure, if any.
pub fn run_cascade_partial<O>(
    data: &RawData,
    base: Arc<dyn PressureLaw>,
    schedule: &[CascadeParams],
    cfg: &RunConfig,
    mut observe: O,
) -> (CascadeOutcome, Option<Error>)
where
    O: FnMut(&StageContext, &Observation<'_>) -> Result<()>,
{
    let mut out = CascadeOutcome::default();
    if let Err(e) = validate_schedule(schedule) {
        return (out, Some(e));
    }
    for (index, cp) in schedule.iter().enumerate() {
        let attempt = (|| -> Result<StageResult> {
            let pressure = ArtificialPressure::new(base.clone(), cp.delta, cp.p0)?;
            let initial = regularize_initial_data(&data.rho0, &data.n0, &data.m0, cp.delta, cp.p0)?;
            let context = StageContext {
                index,
                params: *cp,
                pressure,
                initial: initial.clone(),
            };
            let summary = run(initial, cp, &context.pressure, cfg, |obs| observe(&context, obs))?;
            Ok(StageResult { context, summary })
        })();
        match attempt {
            Ok(r) => out.push(r),
            Err(e) => {
                return (
                    out,
                    Some(Error::Stage {
                        index,
                        source: Box::new(e),
                    }),
                )
            }
        }
    }
    (out, None)
}

pub fn run_cascade<O>(
    data: &RawData,
    base: Arc<dyn PressureLaw>,
    schedule: &[CascadeParams],
    cfg: &RunConfig,
    observe: O,
) -> Result<CascadeOutcome>
where
    O: FnMut(&StageContext, &Observation<'_>) -> Result<()>,
{
    match run_cascade_partial(data, base, schedule, cfg, observe) {
        (out, None) => Ok(out),
        (_, Some(e)) => Err(e),
    }
}
