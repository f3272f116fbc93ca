use crate::error::{Error, Result};
use crate::spectral::{Grid, ScalarField, VectorField};

/// Densities `rho`, `n` and the shared velocity `u` at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub rho: ScalarField,
    pub n: ScalarField,
    pub u: VectorField,
    pub t: f64,
}

/// Densities may dip this far below zero before a run is aborted.
pub const NEGATIVITY_TOL: f64 = 1e-10;

impl State {
    pub fn new(rho: ScalarField, n: ScalarField, u: VectorField, t: f64) -> Result<Self> {
        if rho.grid() != n.grid() || rho.grid() != u.grid() {
            return Err(Error::GridMismatch);
        }
        let s = Self { rho, n, u, t };
        s.check_finite()?;
        if s.rho.min() < -NEGATIVITY_TOL || s.n.min() < -NEGATIVITY_TOL {
            return Err(Error::InconsistentData("negative density".into()));
        }
        Ok(s)
    }

    /// Constant densities at rest.
    pub fn at_rest(grid: Grid, rho: f64, n: f64) -> Self {
        Self {
            rho: ScalarField::constant(grid, rho),
            n: ScalarField::constant(grid, n),
            u: VectorField::zeros(grid),
            t: 0.0,
        }
    }

    pub fn grid(&self) -> &Grid {
        self.rho.grid()
    }

    /// `ϑ = rho + n`.
    pub fn theta(&self) -> ScalarField {
        self.rho.add(&self.n)
    }

    pub fn check_finite(&self) -> Result<()> {
        let bad = if !self.rho.is_finite() {
            Some("rho")
        } else if !self.n.is_finite() {
            Some("n")
        } else if !self.u.is_finite() {
            Some("u")
        } else {
            None
        };
        match bad {
            Some(name) => Err(Error::NonFinite(format!("{name} at t = {}", self.t))),
            None => Ok(()),
        }
    }

    pub fn mass_rho(&self) -> f64 {
        self.rho.integrate()
    }

    pub fn mass_n(&self) -> f64 {
        self.n.integrate()
    }
}

/// Parameters of one approximation stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadeParams {
    pub eps: f64,
    pub delta: f64,
    /// Galerkin cutoff: velocity modes with `max_i |k_i| <= ell` are kept.
    pub ell: usize,
    pub mu: f64,
    pub lambda: f64,
    pub p0: f64,
}

impl CascadeParams {
    pub fn new(eps: f64, delta: f64, ell: usize, mu: f64, lambda: f64, p0: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&eps) {
            return Err(Error::ParamDomain(format!("eps must lie in [0,1), got {eps}")));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::DeltaOutOfRange(delta));
        }
        if ell == 0 {
            return Err(Error::ParamDomain("ell must be >= 1".into()));
        }
        if !(mu > 0.0) {
            return Err(Error::ParamDomain(format!("mu must be positive, got {mu}")));
        }
        if !(2.0 * mu + lambda > 0.0) {
            return Err(Error::ParamDomain(format!("need 2 mu + lambda > 0, got {}", 2.0 * mu + lambda)));
        }
        if !(p0 > 1.0 && p0.is_finite()) {
            return Err(Error::ParamDomain(format!("p0 must exceed 1, got {p0}")));
        }
        Ok(Self {
            eps,
            delta,
            ell,
            mu,
            lambda,
            p0,
        })
    }

    /// `2 mu + lambda`.
    pub fn bulk(&self) -> f64 {
        2.0 * self.mu + self.lambda
    }

    /// Galerkin cutoff combined with the 2/3 rule.
    pub fn effective_ell(&self, grid: &Grid) -> usize {
        self.ell.min(crate::spectral::dealias_cutoff(grid))
    }
}

/// Switches used by verification runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Toggles {
    /// Transport terms `div(rho u)`, `div(n u)` in the density equations.
    pub advection: bool,
    /// Evolve the velocity; when false `u` stays frozen.
    pub momentum: bool,
}

impl Default for Toggles {
    fn default() -> Self {
        Self {
            advection: true,
            momentum: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub t_end: f64,
    pub cfl: f64,
    pub max_dt: f64,
    /// Use this step size instead of the adaptive policy.
    pub fixed_dt: Option<f64>,
    /// Time between observer calls; `t = 0` and `t_end` are always observed.
    pub output_interval: f64,
    pub toggles: Toggles,
}

impl RunConfig {
    pub fn new(t_end: f64, cfl: f64, max_dt: f64, output_interval: f64) -> Result<Self> {
        let c = Self {
            t_end,
            cfl,
            max_dt,
            fixed_dt: None,
            output_interval,
            toggles: Toggles::default(),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(Error::ParamDomain(format!("end time must be >= 0, got {}", self.t_end)));
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::ParamDomain(format!("CFL number must lie in (0,1], got {}", self.cfl)));
        }
        if !(self.max_dt > 0.0) {
            return Err(Error::ParamDomain(format!("max dt must be positive, got {}", self.max_dt)));
        }
        if let Some(dt) = self.fixed_dt {
            if !(dt > 0.0) {
                return Err(Error::ParamDomain(format!("fixed dt must be positive, got {dt}")));
            }
        }
        if !(self.output_interval > 0.0) {
            return Err(Error::ParamDomain(format!(
                "output interval must be positive, got {}",
                self.output_interval
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn viscosity_constraints() {
        assert!(CascadeParams::new(1e-3, 1e-2, 8, 0.1, 0.0, 8.0).is_ok());
        assert!(CascadeParams::new(1e-3, 1e-2, 8, 0.0, 0.0, 8.0).is_err());
        assert!(CascadeParams::new(1e-3, 1e-2, 8, 0.1, -0.2, 8.0).is_err());
        assert!(CascadeParams::new(1e-3, 1e-2, 8, 0.1, -0.19, 8.0).is_ok());
        assert!(CascadeParams::new(1.0, 1e-2, 8, 0.1, 0.0, 8.0).is_err());
        assert!(matches!(CascadeParams::new(0.0, 1.0, 8, 0.1, 0.0, 8.0), Err(Error::DeltaOutOfRange(_))));
    }

    #[test]
    fn cfl_range() {
        assert!(RunConfig::new(1.0, 1.0, 0.1, 0.1).is_ok());
        assert!(RunConfig::new(1.0, 0.0, 0.1, 0.1).is_err());
        assert!(RunConfig::new(1.0, 1.5, 0.1, 0.1).is_err());
    }

    #[test]
    fn mismatched_grids_rejected() {
        let a = Grid::new(2, 8).unwrap();
        let b = Grid::new(2, 16).unwrap();
        let r = State::new(ScalarField::zeros(a), ScalarField::zeros(b), VectorField::zeros(a), 0.0);
        assert!(matches!(r, Err(Error::GridMismatch)));
    }
}
