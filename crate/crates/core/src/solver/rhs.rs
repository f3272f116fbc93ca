//! Right-hand side of the regularized system in velocity form:
//!
//! ```text
//! ∂t rho = -div(rho u) + ε Δrho
//! ∂t n   = -div(n u)   + ε Δn
//! ∂t u   = P_ℓ[ -(u·∇)u - (∇P_δ + ε ∇u·∇ϑ + ε u Δϑ - μΔu - (μ+λ)∇div u) / ϑ ]
//! ```
//!
//! The `ε u Δϑ` term comes from expanding `∂t(ϑu)` with the regularized
//! continuity equation; without it the velocity form is not equivalent to the
//! momentum balance.

use crate::error::{Error, Result};
use crate::pressure::PressureLaw;
use crate::spectral::ops::{dealiased_product, derivative_of, divergence_spectrum, gradient, laplacian};
use crate::spectral::{galerkin_project, ScalarField, Spectrum, VectorField};

use super::linear::LinearOp;
use super::state::{CascadeParams, State, Toggles, NEGATIVITY_TOL};

/// Time derivative of a [`State`].
#[derive(Debug, Clone, PartialEq)]
pub struct Tendency {
    pub rho: ScalarField,
    pub n: ScalarField,
    pub u: VectorField,
}

/// Raises `VacuumEncountered` when `min ϑ < δ/2` or a density is negative.
pub(crate) fn check_floor(s: &State, delta: f64) -> Result<ScalarField> {
    let theta = s.theta();
    let floor = 0.5 * delta;
    let tmin = theta.min();
    if !(tmin >= floor) {
        return Err(Error::VacuumEncountered {
            t: s.t,
            min: tmin,
            floor,
        });
    }
    for f in [&s.rho, &s.n] {
        let m = f.min();
        if m < -NEGATIVITY_TOL {
            return Err(Error::VacuumEncountered {
                t: s.t,
                min: m,
                floor: -NEGATIVITY_TOL,
            });
        }
    }
    Ok(theta)
}

/// Full time derivative.
pub fn rhs_approximate(s: &State, cp: &CascadeParams, law: &dyn PressureLaw) -> Result<Tendency> {
    rhs_with(s, cp, law, Toggles::default())
}

pub fn rhs_with(s: &State, cp: &CascadeParams, law: &dyn PressureLaw, toggles: Toggles) -> Result<Tendency> {
    let lin = LinearOp::new(cp, 0.0, toggles);
    let mut t = nonlinear(s, cp, law, &lin)?;
    if cp.eps > 0.0 {
        t.rho.axpy(cp.eps, &laplacian(&s.rho));
        t.n.axpy(cp.eps, &laplacian(&s.n));
    }
    Ok(t)
}

/// `-div(f u)` with the product dealiased.
fn transport(f: &ScalarField, u: &VectorField) -> ScalarField {
    let flux = VectorField::from_raw(
        *f.grid(),
        u.components().iter().map(|c| dealiased_product(f, c)).collect(),
    );
    divergence_spectrum(&flux).to_field().scale(-1.0)
}

/// The part of the tendency not covered by `lin`.
pub(crate) fn nonlinear(s: &State, cp: &CascadeParams, law: &dyn PressureLaw, lin: &LinearOp) -> Result<Tendency> {
    let theta = check_floor(s, cp.delta)?;
    let grid = *s.grid();
    let d = grid.dim();

    let (rho_t, n_t) = if lin.toggles.advection {
        (transport(&s.rho, &s.u), transport(&s.n, &s.u))
    } else {
        (ScalarField::zeros(grid), ScalarField::zeros(grid))
    };
    if !lin.toggles.momentum {
        return Ok(Tendency {
            rho: rho_t,
            n: n_t,
            u: VectorField::zeros(grid),
        });
    }

    // du[i][j] = ∂_j u_i
    let specs: Vec<Spectrum> = s.u.components().iter().map(Spectrum::forward).collect();
    let du: Vec<Vec<ScalarField>> = specs
        .iter()
        .map(|sp| (0..d).map(|j| derivative_of(sp, j)).collect())
        .collect();
    let div_spec = divergence_spectrum(&s.u);
    let grad_div: Vec<ScalarField> = (0..d).map(|i| derivative_of(&div_spec, i)).collect();
    let lap_u: Vec<ScalarField> = specs
        .iter()
        .map(|sp| {
            let mut sp = sp.clone();
            sp.apply(|k| {
                let kk = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as f64;
                (-4.0 * std::f64::consts::PI.powi(2) * kk).into()
            });
            sp.to_field()
        })
        .collect();

    let pressure = ScalarField::from_raw(
        grid,
        s.rho
            .values()
            .iter()
            .zip(s.n.values())
            .map(|(&r, &n)| law.pressure(r, n))
            .collect(),
    );
    if !pressure.is_finite() {
        return Err(Error::NonFinite(format!("pressure at t = {}", s.t)));
    }
    let grad_p = gradient(&pressure);
    let (grad_theta, lap_theta) = if cp.eps > 0.0 {
        (Some(gradient(&theta)), Some(laplacian(&theta)))
    } else {
        (None, None)
    };

    let ell = cp.effective_ell(&grid);
    let mut comps = Vec::with_capacity(d);
    for i in 0..d {
        let mut acc = vec![0.0; grid.len()];
        for (x, a) in acc.iter_mut().enumerate() {
            let th = theta.values()[x];
            let mut adv = 0.0;
            for j in 0..d {
                adv += s.u.component(j).values()[x] * du[i][j].values()[x];
            }
            let visc = cp.mu * lap_u[i].values()[x] + (cp.mu + cp.lambda) * grad_div[i].values()[x];
            let mut force = grad_p.component(i).values()[x] - visc;
            if let (Some(gt), Some(lt)) = (&grad_theta, &lap_theta) {
                let mut cross = 0.0;
                for j in 0..d {
                    cross += du[i][j].values()[x] * gt.component(j).values()[x];
                }
                force += cp.eps * (cross + s.u.component(i).values()[x] * lt.values()[x]);
            }
            *a = -adv - force / th - lin.inv_theta_ref * visc;
        }
        comps.push(galerkin_project(&ScalarField::from_raw(grid, acc), ell));
    }
    Ok(Tendency {
        rho: rho_t,
        n: n_t,
        u: VectorField::from_raw(grid, comps),
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;
    use std::sync::Arc;

    use super::*;
    use crate::pressure::{ArtificialPressure, TwoGamma};
    use crate::spectral::Grid;

    fn ap(delta: f64) -> ArtificialPressure {
        ArtificialPressure::new(Arc::new(TwoGamma::new(2.0, 2.0).unwrap()), delta, 8.0).unwrap()
    }

    #[test]
    fn equilibrium_is_stationary() {
        let g = Grid::new(2, 16).unwrap();
        let cp = CascadeParams::new(1e-3, 1e-2, 5, 0.1, 0.0, 8.0).unwrap();
        let t = rhs_approximate(&State::at_rest(g, 1.0, 1.0), &cp, &ap(1e-2)).unwrap();
        assert!(t.rho.lp_norm(f64::INFINITY) < 1e-13);
        assert!(t.n.lp_norm(f64::INFINITY) < 1e-13);
        assert!(t.u.max_magnitude() < 1e-12);
    }

    #[test]
    fn pressure_gradient_matches_finite_differences() {
        let law = ap(1e-2);
        let mut errs = Vec::new();
        for n in [32usize, 64] {
            let g = Grid::new(2, n).unwrap();
            let rho = ScalarField::from_fn(g, |x| 1.0 + 0.1 * (2.0 * PI * x[0]).sin());
            let s = State::new(rho.clone(), rho.clone(), VectorField::zeros(g), 0.0).unwrap();
            let cp = CascadeParams::new(0.0, 1e-2, n, 0.1, 0.0, 8.0).unwrap();
            let t = rhs_approximate(&s, &cp, &law).unwrap();
            assert!(t.rho.lp_norm(f64::INFINITY) < 1e-14);
            assert!(t.n.lp_norm(f64::INFINITY) < 1e-14);
            let h = g.spacing();
            let p = |x: f64| {
                let r = 1.0 + 0.1 * (2.0 * PI * x).sin();
                law.pressure(r, r)
            };
            let mut err = 0.0f64;
            for idx in 0..g.len() {
                let x = g.node(idx)[0];
                let fd = (p(x + h) - p(x - h)) / (2.0 * h);
                let th = 2.0 * (1.0 + 0.1 * (2.0 * PI * x).sin());
                err = err.max((t.u.component(0).values()[idx] + fd / th).abs());
            }
            errs.push(err);
        }
        let ratio = errs[0] / errs[1];
        assert!((3.5..4.5).contains(&ratio), "{errs:?}");
    }

    #[test]
    fn mass_flux_integrates_to_zero() {
        let g = Grid::new(2, 32).unwrap();
        let rng = crate::rng::CounterRng::new(3, 1);
        let rho = ScalarField::from_fn(g, |x| 1.0 + 0.3 * (2.0 * PI * (x[0] + 2.0 * x[1])).sin());
        let n = ScalarField::from_fn(g, |x| 0.7 + 0.2 * (2.0 * PI * x[1]).cos());
        let u = VectorField::from_fn(g, |i, x| {
            let a = rng.symmetric(i as u64);
            a * (2.0 * PI * (x[0] - x[1])).sin()
        });
        let s = State::new(rho, n, u, 0.0).unwrap();
        let cp = CascadeParams::new(1e-2, 1e-2, 10, 0.1, 0.0, 8.0).unwrap();
        let t = rhs_approximate(&s, &cp, &ap(1e-2)).unwrap();
        assert!(t.rho.integrate().abs() < 1e-12);
        assert!(t.n.integrate().abs() < 1e-12);
    }

    #[test]
    fn vacuum_guard() {
        let g = Grid::new(1, 16).unwrap();
        let cp = CascadeParams::new(0.0, 0.1, 4, 0.1, 0.0, 8.0).unwrap();
        let r = rhs_approximate(&State::at_rest(g, 0.01, 0.01), &cp, &ap(0.1));
        assert!(matches!(r, Err(Error::VacuumEncountered { .. })));
    }
}
