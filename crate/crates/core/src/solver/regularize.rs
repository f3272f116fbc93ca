use crate::error::{Error, Result};
use crate::spectral::{Mollifier, ScalarField, VectorField};

use super::state::State;

/// Regularized initial data:
///
/// ```text
/// rho = j_δ * rho0 + δ,   n = j_δ * n0 + δ,
/// u   = (j_δ * (m0 / sqrt(ϑ0))) / sqrt(rho + n)
/// ```
///
/// with `m0 / sqrt(ϑ0) = 0` where `ϑ0 = rho0 + n0 = 0`.
pub fn regularize_initial_data(
    rho0: &ScalarField,
    n0: &ScalarField,
    m0: &VectorField,
    delta: f64,
    p0: f64,
) -> Result<State> {
    if rho0.grid() != n0.grid() || rho0.grid() != m0.grid() {
        return Err(Error::GridMismatch);
    }
    if rho0.min() < 0.0 || n0.min() < 0.0 {
        return Err(Error::InconsistentData("initial densities must be nonnegative".into()));
    }
    let grid = *rho0.grid();
    let moll = Mollifier::new(grid, delta, p0)?;
    let theta0 = rho0.add(n0);
    let mut scaled = Vec::with_capacity(grid.dim());
    for (i, m) in m0.components().iter().enumerate() {
        let mut v = vec![0.0; grid.len()];
        for (x, out) in v.iter_mut().enumerate() {
            let th = theta0.values()[x];
            let mv = m.values()[x];
            if th == 0.0 {
                if mv != 0.0 {
                    return Err(Error::InconsistentData(format!(
                        "momentum component {i} is {mv} at a vacuum node"
                    )));
                }
            } else {
                *out = mv / th.sqrt();
            }
        }
        scaled.push(moll.apply(&ScalarField::new(grid, v)?));
    }
    let rho = moll.apply(rho0).map(|v| v + delta);
    let n = moll.apply(n0).map(|v| v + delta);
    let root = rho.add(&n).map(f64::sqrt);
    let u = VectorField::new(scaled.iter().map(|c| c.zip_map(&root, |a, b| a / b)).collect())?;
    State::new(rho, n, u, 0.0)
}
