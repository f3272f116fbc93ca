//! Sampled check of the growth class of a law.

use crate::error::{Error, Result};

use super::law::{pow, PressureLaw};

/// Constants above this value count as "no finite constant".
pub const CONSTANT_LIMIT: f64 = 1e6;

/// Result of [`check_growth_bounds`]. `c0` is `inf` when no finite constant
/// makes the lower bound hold asymptotically.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub law: String,
    pub radius: f64,
    pub samples: usize,
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub derivative_ok: bool,
    /// Samples in the outer region where `P < S / c0_upper`.
    pub lower_violations: usize,
}

impl GrowthReport {
    pub fn pass(&self) -> bool {
        self.lower_ok && self.upper_ok && self.derivative_ok
    }
}

/// Fits the smallest constants on a uniform `m × m` grid of `[0, R]²`
/// (`m = ceil(sqrt(samples))`).
///
/// `C0` comes from the extreme ratios `P / (rho^γ + n^α)` on the outer region
/// `ϑ >= R/2`; `C1` is then the smallest absorption making both bounds hold
/// at every sample, and `C2` the largest derivative ratio.
pub fn check_growth_bounds(law: &dyn PressureLaw, radius: f64, samples: usize) -> Result<GrowthReport> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::ParamDomain(format!("radius must be positive, got {radius}")));
    }
    if samples < 10_000 {
        return Err(Error::ParamDomain(format!("need at least 1e4 samples, got {samples}")));
    }
    let m = (samples as f64).sqrt().ceil() as usize;
    let step = radius / (m - 1) as f64;
    let p = *law.params();
    let pts = || (0..m).flat_map(move |i| (0..m).map(move |j| (i as f64 * step, j as f64 * step)));

    let s_of = |r: f64, n: f64| pow(r, p.gamma) + pow(n, p.alpha);
    let (mut rmin, mut rmax) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut c2 = 0.0f64;
    for (r, n) in pts() {
        let pv = law.pressure(r, n);
        if r + n >= 0.5 * radius {
            let ratio = pv / s_of(r, n);
            rmin = rmin.min(ratio);
            rmax = rmax.max(ratio);
        }
        let denom = pow(r, p.gamma_tilde - 1.0) + pow(n, p.alpha_tilde - 1.0) + 1.0;
        c2 = c2.max((law.d_rho(r, n).abs() + law.d_n(r, n).abs()) / denom);
    }
    let c0_upper = rmax.max(1.0);
    let c0_lower = if rmin > 0.0 { (1.0 / rmin).max(1.0) } else { f64::INFINITY };
    let c0 = c0_upper.max(c0_lower);
    let lower_asym = c0_lower <= CONSTANT_LIMIT;

    // For the absorption fit use the finite constant when the lower bound
    // has none, so the upper-bound absorption is still meaningful.
    let c0_fit = if lower_asym { c0 } else { c0_upper };
    let (mut c1_lower, mut c1_upper) = (0.0f64, 0.0f64);
    let mut lower_violations = 0;
    for (r, n) in pts() {
        let pv = law.pressure(r, n);
        let s = s_of(r, n);
        c1_lower = c1_lower.max(s / c0_fit - pv);
        c1_upper = c1_upper.max(pv - c0_fit * s);
        if r + n >= 0.5 * radius && pv < s / c0_upper {
            lower_violations += 1;
        }
    }
    let lower_ok = lower_asym && c1_lower <= CONSTANT_LIMIT;
    let upper_ok = c0_upper <= CONSTANT_LIMIT && c1_upper <= CONSTANT_LIMIT;
    Ok(GrowthReport {
        law: law.name().to_string(),
        radius,
        samples: m * m,
        c0,
        c1: c1_lower.max(c1_upper),
        c2,
        lower_ok,
        upper_ok,
        derivative_ok: c2 > 0.0 && c2 <= CONSTANT_LIMIT,
        lower_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::super::builtin::{builtin_laws, Oscillatory, TwoGamma};
    use super::*;

    #[test]
    fn two_gamma_is_exact() {
        let r = check_growth_bounds(&TwoGamma::new(2.0, 2.0).unwrap(), 100.0, 10_000).unwrap();
        assert!(r.pass());
        assert_eq!(r.c0, 1.0);
        assert_eq!(r.c1, 0.0);
        assert!(r.c2 <= 2.0 + 1e-12);
    }

    #[test]
    fn mild_oscillation_passes() {
        let r = check_growth_bounds(&Oscillatory::new(2.0, 2.0, 0.5).unwrap(), 100.0, 10_000).unwrap();
        assert!(r.pass(), "{r:?}");
        assert!(r.c0 <= 2.0 + 1e-12, "{}", r.c0);
    }

    #[test]
    fn large_amplitude_breaks_lower_bound() {
        let r = check_growth_bounds(&Oscillatory::new(2.0, 2.0, 2.0).unwrap(), 100.0, 10_000).unwrap();
        assert!(!r.lower_ok);
        assert!(r.upper_ok && r.derivative_ok);
        assert!(r.c0.is_infinite());
        assert!(r.lower_violations > 0);
    }

    #[test]
    fn preconditions() {
        let l = TwoGamma::new(2.0, 2.0).unwrap();
        assert!(check_growth_bounds(&l, 0.0, 10_000).is_err());
        assert!(check_growth_bounds(&l, 1.0, 100).is_err());
    }

    #[test]
    fn catalog_passes() {
        for l in builtin_laws() {
            let r = check_growth_bounds(l.as_ref(), 50.0, 10_000).unwrap();
            assert!(r.pass(), "{r:?}");
        }
    }
}
