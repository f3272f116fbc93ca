use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pressure::{helmholtz_g, PressureLaw};
use crate::solver::{CascadeParams, State};
use crate::spectral::ops::{derivative_of, divergence_spectrum};
use crate::spectral::{Spectrum, VectorField};

/// `D = ∫ μ|∇u|² + (μ+λ)(div u)² dx`.
pub fn dissipation(u: &VectorField, mu: f64, lambda: f64) -> f64 {
    let d = u.grid().dim();
    let mut grad2 = 0.0;
    for c in u.components() {
        let sp = Spectrum::forward(c);
        for j in 0..d {
            let g = derivative_of(&sp, j);
            grad2 += g.inner(&g);
        }
    }
    let div = divergence_spectrum(u).to_field();
    mu * grad2 + (mu + lambda) * div.inner(&div)
}

/// Kinetic part `∫ ½ ϑ |u|²`.
pub fn kinetic_energy(s: &State) -> f64 {
    let theta = s.theta();
    let u2 = s.u.magnitude().map(|m| m * m);
    0.5 * theta.inner(&u2)
}

/// `∫ G(rho, n) dx` by pointwise quadrature.
pub fn free_energy(s: &State, law: &dyn PressureLaw) -> Result<f64> {
    let vals: Result<Vec<f64>> = s
        .rho
        .values()
        .par_iter()
        .zip(s.n.values().par_iter())
        .map(|(&r, &n)| helmholtz_g(law, r.max(0.0), n.max(0.0)))
        .collect();
    let vals = vals?;
    Ok(vals.iter().sum::<f64>() / vals.len() as f64)
}

/// `(E, D)` with `E = ∫ ½ϑ|u|² + G_δ(rho, n)`.
///
/// Nodes with `ϑ = 0` and nonzero velocity are rejected: the kinetic energy
/// would silently discard the velocity there.
pub fn energy_and_dissipation(s: &State, cp: &CascadeParams, law: &dyn PressureLaw) -> Result<(f64, f64)> {
    let theta = s.theta();
    let mag = s.u.magnitude();
    if theta.values().iter().zip(mag.values()).any(|(&t, &m)| t <= 0.0 && m > 0.0) {
        return Err(Error::VacuumEncountered {
            t: s.t,
            min: theta.min(),
            floor: 0.0,
        });
    }
    let e = kinetic_energy(s) + free_energy(s, law)?;
    Ok((e, dissipation(&s.u, cp.mu, cp.lambda)))
}
