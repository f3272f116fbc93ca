//! Higher-integrability exponents and the space-time integrals they control.

use crate::error::{Error, Result};
use crate::pressure::LawParams;
use crate::solver::State;

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 {
        Ok(value)
    } else {
        Err(Error::ExponentNonpositive { name, value })
    }
}

/// Exponent as computed, before the positivity check.
pub fn theta_raw(gamma: f64, alpha: f64, d: usize) -> f64 {
    2.0 / d as f64 * gamma.max(alpha) - 1.0
}

/// `θ = (2/d) max(γ, α) - 1`.
pub fn theta(gamma: f64, alpha: f64, d: usize) -> Result<f64> {
    positive("theta", theta_raw(gamma, alpha, d))
}

/// `(θ1, θ2)` before the positivity check.
pub fn theta_split_raw(gamma: f64, alpha: f64, d: usize) -> (f64, f64) {
    let m = gamma.min(alpha);
    let c = 2.0 / d as f64;
    (c * gamma - gamma / m, c * alpha - alpha / m)
}

/// `θ1 = (2/d) γ - γ/min(γ, α)`, `θ2 = (2/d) α - α/min(γ, α)`.
pub fn theta_split(gamma: f64, alpha: f64, d: usize) -> Result<(f64, f64)> {
    let (t1, t2) = theta_split_raw(gamma, alpha, d);
    Ok((positive("theta1", t1)?, positive("theta2", t2)?))
}

/// Which integrand [`higher_integrability_probe`] accumulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeMode {
    /// `ϑ^(max(γ,α) + θ)`.
    Combined,
    /// `rho^(γ + θ1) + n^(α + θ2)`.
    Split,
}

/// `∫∫` of the chosen integrand over the trajectory, trapezoidal in time.
pub fn higher_integrability_probe(traj: &[State], params: &LawParams, mode: ProbeMode) -> Result<f64> {
    let d = match traj.first() {
        Some(s) => s.grid().dim(),
        None => return Ok(0.0),
    };
    let (g, a) = (params.gamma, params.alpha);
    let integrand: Box<dyn Fn(&State) -> f64> = match mode {
        ProbeMode::Combined => {
            let e = g.max(a) + theta(g, a, d)?;
            Box::new(move |s: &State| s.theta().map(|t| t.max(0.0).powf(e)).integrate())
        }
        ProbeMode::Split => {
            let (t1, t2) = theta_split(g, a, d)?;
            Box::new(move |s: &State| {
                s.rho.map(|r| r.max(0.0).powf(g + t1)).integrate() + s.n.map(|n| n.max(0.0).powf(a + t2)).integrate()
            })
        }
    };
    let vals: Vec<f64> = traj.iter().map(|s| integrand(s)).collect();
    Ok(traj
        .windows(2)
        .zip(vals.windows(2))
        .map(|(s, v)| 0.5 * (s[1].t - s[0].t) * (v[0] + v[1]))
        .sum())
}

/// Whether the per-stage values of a cascade stay bounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boundedness {
    pub nonincreasing: bool,
    /// `max / first`.
    pub growth: f64,
}

impl Boundedness {
    /// Nonincreasing, or never more than doubling the first stage.
    pub fn ok(&self) -> bool {
        self.nonincreasing || self.growth <= 2.0
    }
}

pub fn cascade_boundedness(values: &[f64]) -> Boundedness {
    let nonincreasing = values.windows(2).all(|w| w[1] <= w[0]);
    let first = values.first().copied().unwrap_or(0.0);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Boundedness {
        nonincreasing,
        growth: if first > 0.0 { max / first } else { f64::INFINITY },
    }
}
