//! Monotone decomposition `P_δ = P1 - P2`.
//!
//! `P2 = C* 1_{ϑ <= C* c_δ} (ϑ^m + ϑ)` with `m = γ̃ + α̃`, and `P1 = P_δ + P2`.
//! `c_δ` is the sampled radius beyond which both partials of `P_δ` are
//! positive; `C*` is the smallest power of two making `P1` nondecreasing in
//! each variable on the samples.

use crate::error::{Error, Result};
use crate::rng::CounterRng;

use super::artificial::ArtificialPressure;
use super::cutoff::{smooth_cutoff_leq, smooth_cutoff_leq_deriv};
use super::law::PressureLaw;

pub const MAX_AMPLIFICATION_LOG2: u32 = 16;

/// Sampling used to locate `c_δ` and to select `C*`.
#[derive(Debug, Clone, Copy)]
pub struct SplitSearch {
    /// Log-spaced shells in `ϑ`.
    pub shells: usize,
    /// Directions `(A, 1 - A)` per shell, endpoints included.
    pub angles: usize,
}

impl Default for SplitSearch {
    fn default() -> Self {
        Self { shells: 256, angles: 33 }
    }
}

fn log_space(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    let mut v: Vec<f64> = (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect();
    v[0] = lo;
    v[count - 1] = hi;
    v
}

fn directions(angles: usize) -> impl Iterator<Item = f64> {
    (0..angles).map(move |j| j as f64 / (angles - 1) as f64)
}

#[derive(Debug, Clone)]
pub struct MonotoneSplit {
    ap: ArtificialPressure,
    c_delta: f64,
    c_star: f64,
    m: f64,
    search_radius: f64,
}

/// Verification summary of a split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitAudit {
    /// Max `|P1 - P2 - P_δ| / max(|P_δ|, |P1|, 1e-300)` over random points.
    pub decomposition_error: f64,
    pub min_p2: f64,
    /// `P2 == 0` at every sampled point with `ϑ >= 2 C* c_δ`.
    pub support_ok: bool,
    /// Smallest normalized difference quotient of `P1` along rays in each
    /// variable: `ΔP1 / (Δx · max(1, |P1|))`.
    pub min_slope_rho: f64,
    pub min_slope_n: f64,
}

impl SplitAudit {
    pub fn ok(&self) -> bool {
        self.decomposition_error <= 1e-10
            && self.min_p2 >= 0.0
            && self.support_ok
            && self.min_slope_rho >= -1e-8
            && self.min_slope_n >= -1e-8
    }
}

impl MonotoneSplit {
    pub fn construct(ap: &ArtificialPressure, search: SplitSearch) -> Result<Self> {
        let params = *ap.params();
        let m = params.gamma_tilde + params.alpha_tilde;
        let top = params.gamma_tilde.max(params.alpha_tilde);
        if ap.p0() <= top {
            return Err(Error::ParamDomain(format!(
                "p0 = {} must exceed the derivative exponents ({top})",
                ap.p0()
            )));
        }
        let delta = ap.delta();
        let theta_max = (10.0 * (params.c2 / delta).powf(1.0 / (ap.p0() - top))).max(2.0 * delta);
        let shells = log_space(delta, theta_max, search.shells.max(2));
        let positive = |theta: f64| {
            directions(search.angles.max(2)).all(|a| {
                let (r, n) = (a * theta, (1.0 - a) * theta);
                ap.d_rho(r, n) > 0.0 && ap.d_n(r, n) > 0.0
            })
        };
        let ok: Vec<bool> = shells.iter().map(|&t| positive(t)).collect();
        if !ok.last().copied().unwrap_or(false) {
            return Err(Error::ParamDomain(format!(
                "partials of the regularized law are not positive at theta = {theta_max:e}"
            )));
        }
        let first = ok.iter().rposition(|&b| !b).map_or(0, |i| i + 1);
        let c_delta = shells[first];

        let mut split = Self {
            ap: ap.clone(),
            c_delta,
            c_star: 0.0,
            m,
            search_radius: theta_max,
        };
        for e in 1..=MAX_AMPLIFICATION_LOG2 {
            split.c_star = f64::from(1u32 << e);
            if split.min_analytic_slope(search) >= 0.0 {
                return Ok(split);
            }
        }
        Err(Error::SplitNotFound {
            limit: f64::from(1u32 << MAX_AMPLIFICATION_LOG2),
        })
    }

    pub fn c_delta(&self) -> f64 {
        self.c_delta
    }

    pub fn c_star(&self) -> f64 {
        self.c_star
    }

    pub fn artificial(&self) -> &ArtificialPressure {
        &self.ap
    }

    /// `P2` vanishes for `ϑ >= support_radius()`.
    pub fn support_radius(&self) -> f64 {
        2.0 * self.c_star * self.c_delta
    }

    fn k(&self) -> f64 {
        self.c_star * self.c_delta
    }

    pub fn p2(&self, rho: f64, n: f64) -> f64 {
        let t = rho + n;
        self.c_star * smooth_cutoff_leq(t, self.k()) * (t.powf(self.m) + t)
    }

    /// `∂P2/∂rho = ∂P2/∂n`, since `P2` depends on `ϑ` only.
    pub fn p2_slope(&self, rho: f64, n: f64) -> f64 {
        let t = rho + n;
        let k = self.k();
        self.c_star
            * (smooth_cutoff_leq_deriv(t, k) * (t.powf(self.m) + t)
                + smooth_cutoff_leq(t, k) * (self.m * t.powf(self.m - 1.0) + 1.0))
    }

    pub fn p1(&self, rho: f64, n: f64) -> f64 {
        self.ap.pressure(rho, n) + self.p2(rho, n)
    }

    pub fn p1_d_rho(&self, rho: f64, n: f64) -> f64 {
        self.ap.d_rho(rho, n) + self.p2_slope(rho, n)
    }

    pub fn p1_d_n(&self, rho: f64, n: f64) -> f64 {
        self.ap.d_n(rho, n) + self.p2_slope(rho, n)
    }

    /// Radii used for slope checks: log shells through the searched range and
    /// a dense uniform pass over the cutoff transition of `P2`.
    fn verification_radii(&self, search: SplitSearch) -> Vec<f64> {
        let hi = self.search_radius.max(4.0 * self.k());
        let mut r = log_space(1e-3 * self.ap.delta(), hi, 4 * search.shells.max(2));
        let (a, b) = (0.9 * self.k(), 2.1 * self.k());
        r.extend((0..=256).map(|i| a + (b - a) * i as f64 / 256.0));
        let (a, b) = (0.9 * self.ap.cutoff_width(), 2.1 * self.ap.cutoff_width());
        r.extend((0..=128).map(|i| a + (b - a) * i as f64 / 128.0));
        r.sort_by(|x, y| x.total_cmp(y));
        r.dedup();
        r
    }

    fn min_analytic_slope(&self, search: SplitSearch) -> f64 {
        let mut worst = f64::INFINITY;
        for &t in &self.verification_radii(search) {
            for a in directions(search.angles.max(2)) {
                let (r, n) = (a * t, (1.0 - a) * t);
                let s2 = self.p2_slope(r, n);
                for d in [self.ap.d_rho(r, n), self.ap.d_n(r, n)] {
                    let v = d + s2;
                    let scale = d.abs().max(s2.abs()).max(1.0);
                    worst = worst.min(v / scale + 1e-13);
                }
            }
        }
        worst
    }

    /// Checks the decomposition at `points` random locations in
    /// `[0, R]²` (`R` covering the search range and the support of `P2`) and
    /// difference quotients of `P1` along axis-parallel rays.
    pub fn verify(&self, points: usize, seed: u64) -> SplitAudit {
        let big = self.search_radius.max(4.0 * self.k());
        let rng = CounterRng::new(seed, 0x5917);
        let mut dec = 0.0f64;
        let mut min_p2 = f64::INFINITY;
        let mut support_ok = true;
        for i in 0..points as u64 {
            // Half the points concentrate near the support of P2.
            let span = if i % 2 == 0 { big } else { 2.5 * self.k() };
            let r = span * rng.uniform(2 * i);
            let n = span * rng.uniform(2 * i + 1);
            let pd = self.ap.pressure(r, n);
            let (p1, p2) = (self.p1(r, n), self.p2(r, n));
            dec = dec.max(((p1 - p2) - pd).abs() / pd.abs().max(p1.abs()).max(1e-300));
            min_p2 = min_p2.min(p2);
            if r + n >= self.support_radius() && p2 != 0.0 {
                support_ok = false;
            }
        }
        let radii = self.verification_radii(SplitSearch::default());
        let offsets: Vec<f64> = std::iter::once(0.0)
            .chain(log_space(1e-3 * self.ap.delta(), big, 24))
            .collect();
        let mut slope = [f64::INFINITY; 2];
        for &fixed in &offsets {
            for w in radii.windows(2) {
                let (x0, x1) = (w[0], w[1]);
                let dx = x1 - x0;
                for (axis, s) in slope.iter_mut().enumerate() {
                    let (a, b) = if axis == 0 {
                        (self.p1(x0, fixed), self.p1(x1, fixed))
                    } else {
                        (self.p1(fixed, x0), self.p1(fixed, x1))
                    };
                    *s = s.min((b - a) / (dx * a.abs().max(b.abs()).max(1.0)));
                }
            }
        }
        SplitAudit {
            decomposition_error: dec,
            min_p2,
            support_ok,
            min_slope_rho: slope[0],
            min_slope_n: slope[1],
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::super::builtin::{Oscillatory, TwoGamma};
    use super::*;

    fn split_for(base: Arc<dyn PressureLaw>) -> MonotoneSplit {
        let ap = ArtificialPressure::new(base, 0.1, 8.0).unwrap();
        MonotoneSplit::construct(&ap, SplitSearch::default()).unwrap()
    }

    #[test]
    fn two_gamma_threshold_is_first_shell() {
        let s = split_for(Arc::new(TwoGamma::new(2.0, 2.0).unwrap()));
        assert_eq!(s.c_delta(), 0.1);
        assert!(s.c_star() >= 2.0);
        let audit = s.verify(10_000, 1);
        assert!(audit.ok(), "{audit:?}");
        assert_eq!(s.p2(s.support_radius(), 0.0), 0.0);
    }

    #[test]
    fn oscillatory_split_verifies() {
        let s = split_for(Arc::new(Oscillatory::new(2.0, 2.0, 0.5).unwrap()));
        assert!(s.c_delta().is_finite());
        let audit = s.verify(10_000, 2);
        assert!(audit.ok(), "{audit:?}");
    }
}
