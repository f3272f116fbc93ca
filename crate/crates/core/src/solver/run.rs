use crate::error::Result;
use crate::pressure::PressureLaw;
use crate::spectral::galerkin_project_vector;

use super::rhs::check_floor;
use super::state::{CascadeParams, RunConfig, State};
use super::step::{step, step_limit, step_size_collapsed};

/// What an observer sees at each output time.
#[derive(Debug, Clone, Copy)]
pub struct Observation<'a> {
    pub state: &'a State,
    /// `∫_0^t D dτ` (trapezoidal over steps).
    pub dissipated: f64,
    pub steps: usize,
    pub stiff: bool,
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub final_state: State,
    pub steps: usize,
    pub dissipated: f64,
    pub stiff: bool,
    pub min_dt: f64,
    pub max_dt: f64,
}

/// Integrate from `initial` to `cfg.t_end`. The velocity is first projected
/// onto the Galerkin space; `observe` runs at `t = 0`, every output interval
/// and at the end time.
pub fn run<F>(initial: State, cp: &CascadeParams, law: &dyn PressureLaw, cfg: &RunConfig, mut observe: F) -> Result<RunSummary>
where
    F: FnMut(&Observation<'_>) -> Result<()>,
{
    cfg.validate()?;
    let mut s = initial;
    if cfg.toggles.momentum {
        s.u = galerkin_project_vector(&s.u, cp.effective_ell(s.grid()));
    }
    s.check_finite()?;
    check_floor(&s, cp.delta)?;

    let dissipation = |st: &State| crate::diagnostics::dissipation(&st.u, cp.mu, cp.lambda);
    let mut d_prev = dissipation(&s);
    let mut dissipated = 0.0;
    let mut steps = 0usize;
    let mut stiff = false;
    let (mut min_dt, mut max_dt) = (f64::INFINITY, 0.0f64);
    observe(&Observation {
        state: &s,
        dissipated,
        steps,
        stiff,
    })?;

    let t0 = s.t;
    let mut k_out = 1u64;
    let tiny = 1e-12 * cfg.t_end.abs().max(1.0);
    while s.t < t0 + cfg.t_end - tiny {
        let lim = step_limit(&s, cp, law, cfg);
        stiff |= lim.cfl.stiff;
        let next_out = (t0 + k_out as f64 * cfg.output_interval).min(t0 + cfg.t_end);
        let mut dt = lim.dt;
        let hit = s.t + dt >= next_out - tiny;
        if hit {
            dt = next_out - s.t;
        }
        if !(dt > 1e-14) {
            return Err(step_size_collapsed(s.t, dt));
        }
        s = step(&s, dt, cp, law, cfg.toggles)?;
        if hit {
            s.t = next_out;
        }
        steps += 1;
        min_dt = min_dt.min(dt);
        max_dt = max_dt.max(dt);
        let d_new = dissipation(&s);
        dissipated += 0.5 * dt * (d_prev + d_new);
        d_prev = d_new;
        if hit {
            while t0 + k_out as f64 * cfg.output_interval <= s.t + tiny {
                k_out += 1;
            }
            observe(&Observation {
                state: &s,
                dissipated,
                steps,
                stiff,
            })?;
        }
    }
    Ok(RunSummary {
        final_state: s,
        steps,
        dissipated,
        stiff,
        min_dt,
        max_dt,
    })
}
