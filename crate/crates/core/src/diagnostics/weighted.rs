//! Weighted compactness functional
//!
//! ```text
//! E_w = ∫∫ K̄_h(x-y) χ(ϑ(x) - ϑ(y)) (w(x) + w(y)) dx dy,   K̄_h = K_h/‖K_h‖_1
//! ```

use crate::error::{Error, Result};
use crate::spectral::ScalarField;

use super::kernel::{displacement_sum, Kernel, SUPPORT_RADIUS};
use super::lhp::{l_hp_with, LhpOptions};
use super::truncation::chi;

pub fn weighted_functional(theta: &ScalarField, w: &ScalarField, kernel: &Kernel) -> Result<f64> {
    if theta.grid() != w.grid() || theta.grid() != kernel.grid() {
        return Err(Error::GridMismatch);
    }
    let (tv, wv) = (theta.values(), w.values());
    let vol = theta.grid().cell_volume();
    let raw = displacement_sum(theta.grid(), kernel.values(), SUPPORT_RADIUS, |x, y| {
        chi(tv[y] - tv[x]) * (wv[x] + wv[y])
    });
    Ok(raw * vol * vol / kernel.norm_l1())
}

/// Both sides of
///
/// ```text
/// L_{h,1}(ϑ)² <= C (1 + λ0) / log(1 + |log σ*|) + E_w / σ*
/// ```
///
/// and the smallest `C >= 0` that makes it hold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedChain {
    pub h: f64,
    pub e_w: f64,
    pub l_h1_squared: f64,
    pub log_factor: f64,
    pub weighted_term: f64,
    pub fitted_c: f64,
}

pub fn weighted_chain(theta: &ScalarField, w: &ScalarField, kernel: &Kernel, lambda0: f64, sigma: f64) -> Result<WeightedChain> {
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(Error::ParamDomain(format!("σ* must lie in (0, 1), got {sigma}")));
    }
    let e_w = weighted_functional(theta, w, kernel)?;
    let l = l_hp_with(theta, kernel, 1.0, LhpOptions::default())?.value;
    let log_factor = (1.0 + lambda0) / (sigma.ln().abs()).ln_1p();
    let weighted_term = e_w / sigma;
    let lhs = l * l;
    Ok(WeightedChain {
        h: kernel.h(),
        e_w,
        l_h1_squared: lhs,
        log_factor,
        weighted_term,
        fitted_c: ((lhs - weighted_term) / log_factor).max(0.0),
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::spectral::Grid;

    #[test]
    fn trivial_cases_vanish() {
        let g = Grid::new(2, 16).unwrap();
        let k = Kernel::new(g, 1e-3).unwrap();
        let theta = ScalarField::from_fn(g, |x| 1.0 + 0.3 * (2.0 * PI * x[0]).sin());
        let w = ScalarField::constant(g, 0.4);
        assert_eq!(weighted_functional(&ScalarField::constant(g, 2.0), &w, &k).unwrap(), 0.0);
        assert_eq!(weighted_functional(&theta, &ScalarField::zeros(g), &k).unwrap(), 0.0);
        assert!(weighted_functional(&theta, &w, &k).unwrap() > 0.0);
    }

    #[test]
    fn chain_reports_consistent_sides() {
        let g = Grid::new(2, 16).unwrap();
        let k = Kernel::new(g, 1e-2).unwrap();
        let theta = ScalarField::from_fn(g, |x| 1.0 + 0.3 * (2.0 * PI * x[0]).sin());
        let w = theta.map(|t| (-t).exp());
        let c = weighted_chain(&theta, &w, &k, 1.0, 1e-2).unwrap();
        assert!(c.fitted_c * c.log_factor + c.weighted_term >= c.l_h1_squared - 1e-15);
        assert!(weighted_chain(&theta, &w, &k, 1.0, 2.0).is_err());
    }
}
