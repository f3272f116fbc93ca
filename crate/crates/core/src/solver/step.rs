//! Integrating-factor (Lawson) third-order Runge–Kutta step.
//!
//! With `E(τ) = exp(τL)` for the linear part `L` and `N` the remainder,
//! Heun's third-order tableau gives
//!
//! ```text
//! U2 = E(h/3) (u + h/3 N(u))
//! U3 = E(2h/3) u + 2h/3 E(h/3) N(U2)
//! u+ = E(h) (u + h/4 N(u)) + 3h/4 E(h/3) N(U3)
//! ```

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::pressure::PressureLaw;

use super::linear::LinearOp;
use super::rhs::{check_floor, nonlinear, Tendency};
use super::state::{CascadeParams, RunConfig, State, Toggles};

/// Lower clamp for the sound speed.
pub const MIN_SOUND_SPEED: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CflInfo {
    pub dt: f64,
    pub c_max: f64,
    /// Some node had `∂_rho P + ∂_n P < 0`.
    pub stiff: bool,
}

/// `dt = cfl h / (max |u| + c_max)`, `c_max = max sqrt(∂_rho P + ∂_n P)` over
/// the grid with negative radicands contributing zero.
pub fn cfl_dt(s: &State, law: &dyn PressureLaw, cfl: f64) -> CflInfo {
    let mut c2 = 0.0f64;
    let mut stiff = false;
    for (&r, &n) in s.rho.values().iter().zip(s.n.values()) {
        let rad = law.d_rho(r, n) + law.d_n(r, n);
        if rad < 0.0 {
            stiff = true;
        } else {
            c2 = c2.max(rad);
        }
    }
    let c_max = c2.sqrt().max(MIN_SOUND_SPEED);
    CflInfo {
        dt: cfl * s.grid().spacing() / (s.u.max_magnitude() + c_max),
        c_max,
        stiff,
    }
}

/// Step size limits for the next step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepLimit {
    pub dt: f64,
    pub cfl: CflInfo,
    /// Limit from the explicitly treated viscous remainder.
    pub viscous_dt: f64,
}

pub fn step_limit(s: &State, cp: &CascadeParams, law: &dyn PressureLaw, cfg: &RunConfig) -> StepLimit {
    let cfl = cfl_dt(s, law, cfg.cfl);
    let theta = s.theta();
    let viscous_dt = if cfg.toggles.momentum {
        let (tmin, tmax) = (theta.min(), theta.max());
        let spread = 0.5 * (1.0 / tmin - 1.0 / tmax);
        let ell = cp.effective_ell(s.grid()) as f64;
        let kmax2 = 4.0 * PI * PI * ell * ell * s.grid().dim() as f64;
        let rate = cp.bulk().max(cp.mu) * spread * kmax2;
        if rate > 0.0 {
            // Real-axis stability interval of RK3 is about 2.5.
            cfg.cfl * 2.5 / rate
        } else {
            f64::INFINITY
        }
    } else {
        f64::INFINITY
    };
    let dt = cfg.fixed_dt.unwrap_or(cfl.dt.min(viscous_dt).min(cfg.max_dt));
    StepLimit { dt, cfl, viscous_dt }
}

fn axpy_state(s: &State, h: f64, k: &Tendency) -> State {
    let mut out = s.clone();
    out.rho.axpy(h, &k.rho);
    out.n.axpy(h, &k.n);
    out.u.axpy(h, &k.u);
    out
}

fn as_state(k: &Tendency, t: f64) -> State {
    State {
        rho: k.rho.clone(),
        n: k.n.clone(),
        u: k.u.clone(),
        t,
    }
}

fn add_states(a: &mut State, c: f64, b: &State) {
    a.rho.axpy(c, &b.rho);
    a.n.axpy(c, &b.n);
    a.u.axpy(c, &b.u);
}

/// One step of size `dt`.
pub fn step(s: &State, dt: f64, cp: &CascadeParams, law: &dyn PressureLaw, toggles: Toggles) -> Result<State> {
    let theta = check_floor(s, cp.delta)?;
    let lin = LinearOp::new(cp, LinearOp::reference_inverse(&theta), toggles);
    let h = dt;

    let k1 = nonlinear(s, cp, law, &lin)?;
    let mut u2 = lin.propagate(&axpy_state(s, h / 3.0, &k1), h / 3.0);
    u2.t = s.t + h / 3.0;

    let k2 = nonlinear(&u2, cp, law, &lin)?;
    let mut u3 = lin.propagate(s, 2.0 * h / 3.0);
    add_states(&mut u3, 2.0 * h / 3.0, &lin.propagate(&as_state(&k2, 0.0), h / 3.0));
    u3.t = s.t + 2.0 * h / 3.0;

    let k3 = nonlinear(&u3, cp, law, &lin)?;
    let mut out = lin.propagate(&axpy_state(s, h / 4.0, &k1), h);
    add_states(&mut out, 0.75 * h, &lin.propagate(&as_state(&k3, 0.0), h / 3.0));
    out.t = s.t + h;
    out.check_finite()?;
    Ok(out)
}

pub(crate) fn step_size_collapsed(t: f64, dt: f64) -> Error {
    Error::NonFinite(format!("time step collapsed to {dt:e} at t = {t}"))
}
