//! Effective viscous flux `F = P_δ - mean(P_δ) - (2μ+λ) div u` and its
//! representation through the momentum balance,
//!
//! ```text
//! F = (-Δ)^-1 div[ ∂t(ϑu) + div(ϑ u⊗u) + ε ∇u·∇ϑ ]
//! ```

use crate::error::Result;
use crate::pressure::PressureLaw;
use crate::solver::{rhs_approximate, CascadeParams, State};
use crate::spectral::ops::{derivative_of, divergence_spectrum};
use crate::spectral::{divergence, gradient, inv_neg_laplacian, ScalarField, Spectrum, VectorField};

pub fn effective_viscous_flux(s: &State, cp: &CascadeParams, law: &dyn PressureLaw) -> Result<ScalarField> {
    let p = s.rho.zip_map(&s.n, |r, n| law.pressure(r, n));
    let mean = p.mean();
    let div_u = divergence(&s.u);
    Ok(p.zip_map(&div_u, |p, dv| p - mean - cp.bulk() * dv))
}

/// `L²` norms of `F` and of its differences to the representation with and
/// without the `ε ∇u·∇ϑ` correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvfAudit {
    pub f_norm: f64,
    pub discrepancy: f64,
    pub uncorrected: f64,
}

pub fn evf_audit(s: &State, cp: &CascadeParams, law: &dyn PressureLaw) -> Result<EvfAudit> {
    let grid = *s.grid();
    let d = grid.dim();
    let f = effective_viscous_flux(s, cp, law)?;
    let tend = rhs_approximate(s, cp, law)?;
    let theta = s.theta();
    let theta_dot = tend.rho.add(&tend.n);

    let mut balance = Vec::with_capacity(d);
    let mut cross = Vec::with_capacity(d);
    let grad_theta = gradient(&theta);
    for i in 0..d {
        let ui = s.u.component(i);
        let m_t = theta_dot.mul(ui).add(&theta.mul(tend.u.component(i)));
        let flux = VectorField::new((0..d).map(|j| theta.mul(ui).mul(s.u.component(j))).collect())?;
        balance.push(m_t.add(&divergence_spectrum(&flux).to_field()));
        let sp = Spectrum::forward(ui);
        let mut c = ScalarField::zeros(grid);
        for j in 0..d {
            c = c.add(&derivative_of(&sp, j).mul(grad_theta.component(j)));
        }
        cross.push(c.scale(cp.eps));
    }
    let represent = |v: Vec<ScalarField>| -> Result<ScalarField> {
        inv_neg_laplacian(&divergence(&VectorField::new(v)?), true)
    };
    let plain = represent(balance.clone())?;
    let corrected = represent(balance.iter().zip(&cross).map(|(b, c)| b.add(c)).collect())?;
    Ok(EvfAudit {
        f_norm: f.lp_norm(2.0),
        discrepancy: corrected.sub(&f).lp_norm(2.0),
        uncorrected: plain.sub(&f).lp_norm(2.0),
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;
    use std::sync::Arc;

    use super::*;
    use crate::pressure::{ArtificialPressure, TwoGamma};
    use crate::spectral::Grid;

    fn ap() -> ArtificialPressure {
        ArtificialPressure::new(Arc::new(TwoGamma::new(2.0, 2.0).unwrap()), 1e-2, 8.0).unwrap()
    }

    #[test]
    fn equilibrium_flux_vanishes() {
        let g = Grid::new(2, 16).unwrap();
        let cp = CascadeParams::new(1e-3, 1e-2, 16, 0.1, 0.0, 8.0).unwrap();
        let f = effective_viscous_flux(&State::at_rest(g, 0.7, 0.4), &cp, &ap()).unwrap();
        assert!(f.lp_norm(f64::INFINITY) < 1e-13);
    }

    #[test]
    fn resting_flux_is_centred_pressure() {
        let g = Grid::new(2, 32).unwrap();
        let rho = ScalarField::from_fn(g, |x| 1.0 + 0.1 * (2.0 * PI * x[0]).sin());
        let s = State::new(rho.clone(), rho.clone(), VectorField::zeros(g), 0.0).unwrap();
        let cp = CascadeParams::new(1e-3, 1e-2, 32, 0.1, 0.0, 8.0).unwrap();
        let law = ap();
        let f = effective_viscous_flux(&s, &cp, &law).unwrap();
        let p = rho.map(|r| law.pressure(r, r));
        let expect = p.map(|v| v - p.mean());
        assert!(f.sub(&expect).lp_norm(f64::INFINITY) < 1e-13);
    }

    #[test]
    fn representations_agree_on_smooth_data() {
        let g = Grid::new(2, 64).unwrap();
        let rho = ScalarField::from_fn(g, |x| 0.5 + 0.1 * (2.0 * PI * x[0]).sin());
        let n = ScalarField::from_fn(g, |x| 0.5 + 0.1 * (2.0 * PI * x[1]).cos());
        let u = VectorField::from_fn(g, |i, x| 0.2 * (2.0 * PI * (x[0] + (i as f64) * x[1])).sin());
        let s = State::new(rho, n, u, 0.0).unwrap();
        let cp = CascadeParams::new(1e-3, 1e-2, 64, 0.1, 0.0, 8.0).unwrap();
        let a = evf_audit(&s, &cp, &ap()).unwrap();
        assert!(a.discrepancy < 1e-6 * a.f_norm, "{a:?}");
        assert!(a.uncorrected > a.discrepancy, "{a:?}");
    }
}
