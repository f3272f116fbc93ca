//! Helmholtz free energy
//!
//! ```text
//! G(rho, n) = ϑ ∫_1^ϑ P(A s, B s) s^-2 ds,   ϑ = rho + n, A = rho/ϑ, B = n/ϑ
//! ```
//!
//! and `G(0, 0) = 0`. It satisfies `rho ∂_rho G + n ∂_n G - G = P`.

use crate::error::Result;
use crate::quadrature::{integrate, Tolerance};

use super::law::PressureLaw;

/// Absolute accuracy targeted for `G`.
pub const G_ABS_TOL: f64 = 1e-8;

pub fn helmholtz_g(law: &dyn PressureLaw, rho: f64, n: f64) -> Result<f64> {
    debug_assert!(rho >= 0.0 && n >= 0.0);
    let theta = rho + n;
    if theta == 0.0 || theta == 1.0 {
        return Ok(0.0);
    }
    let (a, b) = (rho / theta, n / theta);
    let tol = Tolerance {
        // The quadrature result is multiplied by ϑ.
        abs: 1e-2 * G_ABS_TOL / theta.max(1.0),
        rel: 1e-13,
        max_panels: 4096,
    };
    let i = integrate(|s| law.pressure(a * s, b * s) / (s * s), 1.0, theta, &law.kinks(), tol)?;
    Ok(theta * i)
}

/// Same quadrature, applied to a regularized law.
pub fn helmholtz_g_delta(law: &super::ArtificialPressure, rho: f64, n: f64) -> Result<f64> {
    helmholtz_g(law, rho, n)
}

/// `|rho ∂_rho G + n ∂_n G - G - P|` with fourth-order centered-difference
/// partials.
pub fn helmholtz_identity_residual(law: &dyn PressureLaw, rho: f64, n: f64) -> Result<f64> {
    let theta = rho + n;
    let h = 1e-3 * theta.max(1.0);
    let g = helmholtz_g(law, rho, n)?;
    let at = |dr: f64, dn: f64| helmholtz_g(law, rho + dr, n + dn);
    let partial = |x: f64, along_rho: bool| -> Result<f64> {
        if x == 0.0 {
            // Multiplied by zero below.
            return Ok(0.0);
        }
        // Keep the stencil inside the positive quadrant.
        let hx = h.min(0.4 * x);
        let f = |k: f64| if along_rho { at(k * hx, 0.0) } else { at(0.0, k * hx) };
        Ok((8.0 * (f(1.0)? - f(-1.0)?) - (f(2.0)? - f(-2.0)?)) / (12.0 * hx))
    };
    let lhs = rho * partial(rho, true)? + n * partial(n, false)? - g;
    Ok((lhs - law.pressure(rho, n)).abs())
}

/// Largest identity residual over a set of points.
pub fn max_identity_residual(law: &dyn PressureLaw, points: &[(f64, f64)]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &(r, n) in points {
        worst = worst.max(helmholtz_identity_residual(law, r, n)?);
    }
    Ok(worst)
}

/// Audit of `Q/C0 <= G <= C0 Q`, `Q = rho^γ/(γ-1) + n^α/(α-1)`.
///
/// `G` carries an affine part (e.g. `G = Q(1 - 1/ϑ)` for the two-gamma law),
/// so the strict sandwich cannot hold near vacuum. The report therefore gives
/// the smallest `kappa` with `Q/C0 - kappa(1+ϑ) <= G <= C0 Q + kappa(1+ϑ)`
/// together with the strict-violation count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SandwichReport {
    pub c0: f64,
    pub kappa: f64,
    pub strict_violations: usize,
    pub samples: usize,
}

pub fn energy_sandwich(law: &dyn PressureLaw, c0: f64, points: &[(f64, f64)]) -> Result<SandwichReport> {
    let p = law.params();
    assert!(p.gamma > 1.0 && p.alpha > 1.0, "sandwich needs gamma, alpha > 1");
    let mut kappa = 0.0f64;
    let mut strict = 0;
    for &(r, n) in points {
        let q = r.powf(p.gamma) / (p.gamma - 1.0) + n.powf(p.alpha) / (p.alpha - 1.0);
        let g = helmholtz_g(law, r, n)?;
        let slack = (q / c0 - g).max(g - c0 * q).max(0.0);
        if slack > 1e-12 * q.max(1.0) {
            strict += 1;
        }
        kappa = kappa.max(slack / (1.0 + r + n));
    }
    Ok(SandwichReport {
        c0,
        kappa,
        strict_violations: strict,
        samples: points.len(),
    })
}

/// Smallest `C_δ` with `G_δ >= δ ϑ^p0 / (p0 - 1) - C_δ` on the points.
pub fn fit_delta_lower_bound(law: &super::ArtificialPressure, points: &[(f64, f64)]) -> Result<f64> {
    let mut c = 0.0f64;
    for &(r, n) in points {
        let theta = r + n;
        let bound = law.delta() * theta.powf(law.p0()) / (law.p0() - 1.0);
        c = c.max(bound - helmholtz_g_delta(law, r, n)?);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::super::builtin::{Oscillatory, TwoGamma};
    use super::super::ArtificialPressure;
    use super::*;

    #[test]
    fn vacuum_and_unit_line() {
        let law = TwoGamma::new(2.0, 2.0).unwrap();
        assert_eq!(helmholtz_g(&law, 0.0, 0.0).unwrap(), 0.0);
        for a in [0.0, 0.3, 1.0] {
            assert_eq!(helmholtz_g(&law, a, 1.0 - a).unwrap(), 0.0);
        }
    }

    #[test]
    fn two_gamma_closed_form() {
        let law = TwoGamma::new(2.0, 2.0).unwrap();
        assert!((helmholtz_g(&law, 1.0, 1.0).unwrap() - 1.0).abs() < 1e-12);
        for &(r, n) in &[(0.1, 0.2), (3.0, 0.5), (10.0, 7.0), (1e-9, 0.0)] {
            let t: f64 = r + n;
            let exact = (r * r + n * n) * (1.0 - 1.0 / t);
            let g = helmholtz_g(&law, r, n).unwrap();
            assert!((g - exact).abs() <= G_ABS_TOL, "({r},{n}): {g} vs {exact}");
        }
    }

    #[test]
    fn identity_residuals() {
        let tg = TwoGamma::new(2.0, 2.0).unwrap();
        assert!(helmholtz_identity_residual(&tg, 1.0, 1.0).unwrap() <= 1e-4);
        let osc = Oscillatory::new(2.0, 2.0, 0.5).unwrap();
        assert!(helmholtz_identity_residual(&osc, 2.0, 3.0).unwrap() <= 1e-4);
        let ap = ArtificialPressure::new(Arc::new(tg), 0.1, 8.0).unwrap();
        for &(r, n) in &[(0.02, 0.03), (0.1, 0.05), (1.0, 0.7), (0.0, 1.5)] {
            assert!(helmholtz_identity_residual(&ap, r, n).unwrap() <= 1e-4, "({r},{n})");
        }
    }

    #[test]
    fn delta_energy_is_coercive() {
        let ap = ArtificialPressure::new(Arc::new(TwoGamma::new(2.0, 2.0).unwrap()), 0.1, 8.0).unwrap();
        let pts: Vec<(f64, f64)> = (0..40).flat_map(|i| (0..40).map(move |j| (0.05 * i as f64, 0.05 * j as f64))).collect();
        let c = fit_delta_lower_bound(&ap, &pts).unwrap();
        assert!(c.is_finite() && c >= 0.0 && c < 10.0, "{c}");
    }
}
