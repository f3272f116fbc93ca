//! Commutators of the double Riesz transforms `R_i R_j` with
//! multiplication.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::presets::random_field;
use crate::spectral::ops::derivative_of;
use crate::spectral::{riesz_pair, Grid, ScalarField, Spectrum, VectorField};

/// `u^j R_i R_j g - R_i R_j (u^j g)` for one index pair.
pub fn riesz_commutator_pair(u: &VectorField, g: &ScalarField, i: usize, j: usize) -> Result<ScalarField> {
    if u.grid() != g.grid() {
        return Err(Error::GridMismatch);
    }
    let uj = u.component(j);
    Ok(uj.mul(&riesz_pair(i, j, g)).sub(&riesz_pair(i, j, &uj.mul(g))))
}

/// `Σ_{i,j} [u^j R_i R_j g - R_i R_j (u^j g)]`.
pub fn riesz_commutator(u: &VectorField, g: &ScalarField) -> Result<ScalarField> {
    let d = u.grid().dim();
    let mut acc = ScalarField::zeros(*g.grid());
    for i in 0..d {
        for j in 0..d {
            acc = acc.add(&riesz_commutator_pair(u, g, i, j)?);
        }
    }
    Ok(acc)
}

/// `Σ_{i,j} [R_i R_j (g u^i u^j) - u^j R_i R_j (g u^i)]`.
pub fn riesz_commutator_quadratic(u: &VectorField, g: &ScalarField) -> Result<ScalarField> {
    if u.grid() != g.grid() {
        return Err(Error::GridMismatch);
    }
    let d = u.grid().dim();
    let mut acc = ScalarField::zeros(*g.grid());
    for i in 0..d {
        let gui = g.mul(u.component(i));
        for j in 0..d {
            let uj = u.component(j);
            acc = acc.add(&riesz_pair(i, j, &gui.mul(uj)).sub(&uj.mul(&riesz_pair(i, j, &gui))));
        }
    }
    Ok(acc)
}

/// `‖∇u‖_{L²}` with spectral derivatives.
pub fn gradient_l2(u: &VectorField) -> f64 {
    let d = u.grid().dim();
    u.components()
        .iter()
        .map(|c| {
            let sp = Spectrum::forward(c);
            (0..d).map(|j| derivative_of(&sp, j).lp_norm(2.0).powi(2)).sum::<f64>()
        })
        .sum::<f64>()
        .sqrt()
}

/// Largest ratio `‖u^j R_i R_j g - R_i R_j (u^j g)‖_{4/3} / (‖∇u‖_2 ‖g‖_4)`
/// over index pairs and samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorAudit {
    pub n: usize,
    pub samples: usize,
    pub c: f64,
}

/// Band-limited random inputs, `modes` per axis, identical on every grid
/// for a given seed.
pub fn random_pair(grid: Grid, seed: u64, sample: u64, modes: u32) -> (VectorField, ScalarField) {
    let d = grid.dim() as u64;
    let base = sample * (d + 1);
    let u = VectorField::from_raw(
        grid,
        (0..d).map(|i| random_field(grid, seed, base + i, modes)).collect(),
    );
    let g = random_field(grid, seed, base + d, modes);
    (u, g)
}

pub fn commutator_audit(grid: Grid, samples: usize, modes: u32, seed: u64) -> Result<CommutatorAudit> {
    let d = grid.dim();
    let ratios: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map(|k| -> Result<f64> {
            let (u, g) = random_pair(grid, seed, k, modes);
            let denom = gradient_l2(&u) * g.lp_norm(4.0);
            let mut worst = 0.0f64;
            for i in 0..d {
                for j in 0..d {
                    let c = riesz_commutator_pair(&u, &g, i, j)?;
                    worst = worst.max(c.lp_norm(4.0 / 3.0) / denom);
                }
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    Ok(CommutatorAudit {
        n: grid.n(),
        samples,
        c: ratios.into_iter().fold(0.0, f64::max),
    })
}
