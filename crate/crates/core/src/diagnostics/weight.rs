//! Transported weight
//!
//! ```text
//! ∂t w + u·∇w + λ0 Ξ w = 0,   w(0) = exp(-λ0 ϑ0),
//! Ξ = ϑ|div u| + |div u| + M_c M(|∇u|) + rho^γ + rho^γ̃ + n^α + n^α̃ + 1
//! ```
//!
//! advanced along a stored trajectory by semi-Lagrangian advection
//! (multilinear interpolation at second-order foot points) followed by exact
//! exponential damping.

use crate::error::{Error, Result};
use crate::pressure::LawParams;
use crate::solver::State;
use crate::spectral::{divergence, gradient, Grid, ScalarField, VectorField, MAX_DIM};

use super::maximal::maximal_m;

/// Tolerance of the pointwise bound `w <= exp(-λ0 ϑ) + tol`.
pub const WEIGHT_BOUND_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightParams {
    pub lambda0: f64,
    /// Coefficient of the maximal-function term in `Ξ`.
    pub m_const: f64,
    /// Courant number of the advection substeps, in grid cells.
    pub cfl: f64,
}

impl Default for WeightParams {
    fn default() -> Self {
        Self {
            lambda0: 1.0,
            m_const: 1.0,
            cfl: 0.5,
        }
    }
}

impl WeightParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda0 >= 1.0) {
            return Err(Error::ParamDomain(format!("λ0 must be >= 1, got {}", self.lambda0)));
        }
        if !(self.m_const >= 0.0) || !(self.cfl > 0.0) {
            return Err(Error::ParamDomain("weight coefficients must be positive".into()));
        }
        Ok(())
    }
}

/// A weight in `[0, 1]` and its damping parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightField {
    pub w: ScalarField,
    pub lambda0: f64,
    pub m_const: f64,
}

/// One output of [`weight_evolve`].
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSnapshot {
    pub t: f64,
    pub weight: WeightField,
    /// Cumulative number of clipped node values.
    pub clips: usize,
    /// `max(w - exp(-λ0 ϑ))` at this output.
    pub bound_excess: f64,
    /// Nodes with `w > exp(-λ0 ϑ) + WEIGHT_BOUND_TOL`.
    pub bound_violations: usize,
}

/// Damping rate `Ξ` of a state.
pub fn xi(s: &State, params: &LawParams, m_const: f64) -> ScalarField {
    let div_u = divergence(&s.u);
    let theta = s.theta();
    let maximal = if m_const > 0.0 {
        maximal_m(&gradient_magnitude(&s.u)).scale(m_const)
    } else {
        ScalarField::zeros(*s.grid())
    };
    let mut out = Vec::with_capacity(s.grid().len());
    for x in 0..s.grid().len() {
        let r = s.rho.values()[x].max(0.0);
        let n = s.n.values()[x].max(0.0);
        let dv = div_u.values()[x].abs();
        out.push(
            theta.values()[x] * dv
                + dv
                + maximal.values()[x]
                + r.powf(params.gamma)
                + r.powf(params.gamma_tilde)
                + n.powf(params.alpha)
                + n.powf(params.alpha_tilde)
                + 1.0,
        );
    }
    ScalarField::new(*s.grid(), out).expect("grid matches")
}

/// Frobenius norm `|∇u|` pointwise.
pub fn gradient_magnitude(u: &VectorField) -> ScalarField {
    let grid = *u.grid();
    let mut acc = ScalarField::zeros(grid);
    for c in u.components() {
        let g = gradient(c);
        for gc in g.components() {
            acc = acc.add(&gc.mul(gc));
        }
    }
    acc.map(f64::sqrt)
}

/// Periodic multilinear interpolation of `f` at `x` (unit-torus
/// coordinates).
pub fn interpolate(f: &ScalarField, x: &[f64; MAX_DIM]) -> f64 {
    let grid = f.grid();
    let d = grid.dim();
    let n = grid.n();
    let mut base = [0usize; MAX_DIM];
    let mut frac = [0.0; MAX_DIM];
    for a in 0..d {
        let s = x[a].rem_euclid(1.0) * n as f64;
        let i = s.floor();
        base[a] = (i as usize) % n;
        frac[a] = s - i;
    }
    let v = f.values();
    let mut total = 0.0;
    for corner in 0..(1usize << d) {
        let mut wgt = 1.0;
        let mut idx = 0;
        for a in 0..d {
            let bit = (corner >> a) & 1;
            wgt *= if bit == 1 { frac[a] } else { 1.0 - frac[a] };
            idx = idx * n + (base[a] + bit) % n;
        }
        if wgt != 0.0 {
            total += wgt * v[idx];
        }
    }
    total
}

fn lerp_fields(a: &ScalarField, b: &ScalarField, s: f64) -> ScalarField {
    a.zip_map(b, |x, y| (1.0 - s) * x + s * y)
}

fn lerp_vectors(a: &VectorField, b: &VectorField, s: f64) -> VectorField {
    VectorField::new(
        a.components()
            .iter()
            .zip(b.components())
            .map(|(x, y)| lerp_fields(x, y, s))
            .collect(),
    )
    .expect("matching grids")
}

/// One advection substep of length `tau` with velocity `u`; counts clips.
fn advect(w: &ScalarField, u: &VectorField, tau: f64, clips: &mut usize) -> ScalarField {
    let grid: Grid = *w.grid();
    let d = grid.dim();
    let out: Vec<f64> = (0..grid.len())
        .map(|idx| {
            let x = grid.node(idx);
            // Midpoint foot: x - τ u(x - τ/2 u(x)).
            let mut mid = x;
            for a in 0..d {
                mid[a] -= 0.5 * tau * u.component(a).values()[idx];
            }
            let mut foot = x;
            for a in 0..d {
                foot[a] -= tau * interpolate(u.component(a), &mid);
            }
            interpolate(w, &foot)
        })
        .collect();
    let clipped = out
        .into_iter()
        .map(|v| {
            if v < 0.0 {
                *clips += 1;
                0.0
            } else if v > 1.0 {
                *clips += 1;
                1.0
            } else {
                v
            }
        })
        .collect();
    ScalarField::new(grid, clipped).expect("grid matches")
}

fn bound(w: &ScalarField, s: &State, lambda0: f64) -> (f64, usize) {
    let theta = s.theta();
    let mut excess = f64::NEG_INFINITY;
    let mut count = 0;
    for (wv, th) in w.values().iter().zip(theta.values()) {
        let e = wv - (-lambda0 * th).exp();
        excess = excess.max(e);
        if e > WEIGHT_BOUND_TOL {
            count += 1;
        }
    }
    (excess, count)
}

/// Evolve the weight along `traj` (time-ordered states), reporting at
/// every state.
pub fn weight_evolve(traj: &[State], params: &LawParams, wp: WeightParams) -> Result<Vec<WeightSnapshot>> {
    wp.validate()?;
    let first = traj
        .first()
        .ok_or_else(|| Error::ParamDomain("empty trajectory".into()))?;
    for pair in traj.windows(2) {
        if pair[1].grid() != pair[0].grid() {
            return Err(Error::GridMismatch);
        }
        if !(pair[1].t > pair[0].t) {
            return Err(Error::ParamDomain("trajectory times must increase".into()));
        }
    }
    let lambda0 = wp.lambda0;
    let h = first.grid().spacing();
    let mut w = first.theta().map(|th| (-lambda0 * th).exp());
    let mut clips = 0usize;
    let mut xi_prev = xi(first, params, wp.m_const);
    let snapshot = |w: &ScalarField, s: &State, clips: usize| {
        let (bound_excess, bound_violations) = bound(w, s, lambda0);
        WeightSnapshot {
            t: s.t,
            weight: WeightField {
                w: w.clone(),
                lambda0,
                m_const: wp.m_const,
            },
            clips,
            bound_excess,
            bound_violations,
        }
    };
    let mut out = vec![snapshot(&w, first, clips)];
    for pair in traj.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let xi_next = xi(b, params, wp.m_const);
        let dt = b.t - a.t;
        let umax = a.u.max_magnitude().max(b.u.max_magnitude());
        let substeps = ((umax * dt / (wp.cfl * h)).ceil() as usize).max(1);
        let tau = dt / substeps as f64;
        for k in 0..substeps {
            let s_mid = (k as f64 + 0.5) / substeps as f64;
            let u = lerp_vectors(&a.u, &b.u, s_mid);
            if umax > 0.0 {
                w = advect(&w, &u, tau, &mut clips);
            }
            let rate = lerp_fields(&xi_prev, &xi_next, s_mid);
            w = w.zip_map(&rate, |wv, r| wv * (-lambda0 * r * tau).exp());
        }
        out.push(snapshot(&w, b, clips));
        xi_prev = xi_next;
    }
    Ok(out)
}
