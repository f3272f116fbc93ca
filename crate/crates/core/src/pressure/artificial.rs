//! Regularized pressure `P_δ = 1_{ϑ>=δ} P + δ ϑ^p0`, `ϑ = rho + n`.

use std::sync::Arc;

use crate::error::{Error, Result};

use super::cutoff::{smooth_cutoff_geq, smooth_cutoff_leq_deriv};
use super::law::{LawParams, PressureLaw};

#[derive(Debug, Clone)]
pub struct ArtificialPressure {
    base: Arc<dyn PressureLaw>,
    delta: f64,
    p0: f64,
    name: String,
}

impl ArtificialPressure {
    /// Requires `delta ∈ (0, 1)` and `p0 > 1`. The coercivity condition
    /// `p0 > γ + γ̃ + α + α̃ + 1` is reported by
    /// [`satisfies_coercivity_bound`](Self::satisfies_coercivity_bound) rather
    /// than enforced.
    pub fn new(base: Arc<dyn PressureLaw>, delta: f64, p0: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::ParamDomain(format!("delta must lie in (0,1), got {delta}")));
        }
        if !(p0.is_finite() && p0 > 1.0) {
            return Err(Error::ParamDomain(format!("p0 must exceed 1, got {p0}")));
        }
        let name = format!("{}+delta", base.name());
        Ok(Self { base, delta, p0, name })
    }

    pub fn base(&self) -> &Arc<dyn PressureLaw> {
        &self.base
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    /// Width of the cutoff transition; the base law is fully switched on for
    /// `ϑ >= 2 * cutoff_width`.
    pub fn cutoff_width(&self) -> f64 {
        self.delta
    }

    pub fn satisfies_coercivity_bound(&self) -> bool {
        self.p0 > self.base.params().coercivity_threshold()
    }

    /// The `δ ϑ^p0` part alone.
    pub fn augmentation(&self, theta: f64) -> f64 {
        self.delta * theta.powf(self.p0)
    }

    #[inline]
    fn parts(&self, rho: f64, n: f64) -> (f64, f64, f64) {
        let theta = rho + n;
        let k = self.cutoff_width();
        let w = smooth_cutoff_geq(theta, k);
        let dw = -smooth_cutoff_leq_deriv(theta, k);
        let aug = self.delta * self.p0 * theta.powf(self.p0 - 1.0);
        (w, dw, aug)
    }
}

impl PressureLaw for ArtificialPressure {
    fn name(&self) -> &str {
        &self.name
    }

    fn pressure(&self, rho: f64, n: f64) -> f64 {
        let theta = rho + n;
        let w = smooth_cutoff_geq(theta, self.cutoff_width());
        let base = if w == 0.0 { 0.0 } else { w * self.base.pressure(rho, n) };
        base + self.augmentation(theta)
    }

    fn d_rho(&self, rho: f64, n: f64) -> f64 {
        let (w, dw, aug) = self.parts(rho, n);
        let mut v = aug;
        if dw != 0.0 {
            v += dw * self.base.pressure(rho, n);
        }
        if w != 0.0 {
            v += w * self.base.d_rho(rho, n);
        }
        v
    }

    fn d_n(&self, rho: f64, n: f64) -> f64 {
        let (w, dw, aug) = self.parts(rho, n);
        let mut v = aug;
        if dw != 0.0 {
            v += dw * self.base.pressure(rho, n);
        }
        if w != 0.0 {
            v += w * self.base.d_n(rho, n);
        }
        v
    }

    fn params(&self) -> &LawParams {
        self.base.params()
    }

    fn kinks(&self) -> Vec<f64> {
        let k = self.cutoff_width();
        let mut v = vec![k, 2.0 * k];
        v.extend(self.base.kinks());
        v
    }
}

#[cfg(test)]
mod tests {
    use super::super::builtin::TwoGamma;
    use super::*;

    fn ap() -> ArtificialPressure {
        ArtificialPressure::new(Arc::new(TwoGamma::new(2.0, 2.0).unwrap()), 0.1, 8.0).unwrap()
    }

    #[test]
    fn closed_and_open_cutoff() {
        let p = ap();
        let v = p.pressure(0.02, 0.03);
        assert!((v - 3.90625e-12).abs() < 1e-24, "{v:e}");
        assert!((p.pressure(1.0, 1.0) - 27.6).abs() < 1e-12);
    }

    #[test]
    fn partial_matches_central_difference() {
        let p = ap();
        let (rho, n) = (0.15, 0.0);
        let h = 1e-6;
        let fd = (p.pressure(rho + h, n) - p.pressure(rho - h, n)) / (2.0 * h);
        let a = p.d_rho(rho, n);
        assert!(((fd - a) / a).abs() < 1e-5, "{fd} vs {a}");
    }

    #[test]
    fn domain_errors() {
        let base: Arc<dyn PressureLaw> = Arc::new(TwoGamma::new(2.0, 2.0).unwrap());
        for d in [0.0, 1.0, -1.0] {
            assert!(matches!(ArtificialPressure::new(base.clone(), d, 8.0), Err(Error::ParamDomain(_))));
        }
        assert!(ArtificialPressure::new(base.clone(), 0.1, 1.0).is_err());
        let low = ArtificialPressure::new(base.clone(), 0.1, 8.0).unwrap();
        assert!(!low.satisfies_coercivity_bound());
        assert!(ArtificialPressure::new(base, 0.1, 10.0).unwrap().satisfies_coercivity_bound());
    }

    #[test]
    fn vacuum_limit() {
        let p = ap();
        let t: f64 = 1e-3;
        assert_eq!(p.pressure(t / 2.0, t / 2.0), 0.1 * t.powf(8.0));
    }
}
