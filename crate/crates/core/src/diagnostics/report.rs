//! Per-time diagnostic rows for a stored trajectory.

use crate::error::{Error, Result};
use crate::pressure::PressureLaw;
use crate::solver::{CascadeParams, State};

use super::energy::{dissipation, energy_and_dissipation};
use super::kernel::Kernel;
use super::lhp::{l_hp_with, LhpOptions};
use super::truncation::renormalization_residual;
use super::weight::{weight_evolve, WeightParams};
use super::weighted::weighted_functional;

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsConfig {
    pub hs: Vec<f64>,
    pub weight: WeightParams,
    pub sigma: f64,
    /// Truncation level of the renormalization residual.
    pub k: f64,
}

impl Default for DiagnosticsConfig {
    fn default() -> Self {
        Self {
            hs: vec![1e-2, 1e-3, 1e-4],
            weight: WeightParams::default(),
            sigma: 1e-2,
            k: 1.0,
        }
    }
}

impl DiagnosticsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.hs.is_empty() {
            return Err(Error::ParamDomain("empty h-list".into()));
        }
        for &h in &self.hs {
            super::kernel::check_h(h)?;
        }
        self.weight.validate()?;
        if !(self.sigma > 0.0 && self.sigma < 1.0) {
            return Err(Error::ParamDomain(format!("σ* must lie in (0, 1), got {}", self.sigma)));
        }
        if !(self.k > 0.0) {
            return Err(Error::ParamDomain(format!("truncation level must be positive, got {}", self.k)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub t: f64,
    pub mass_rho: f64,
    pub mass_n: f64,
    pub energy: f64,
    /// Trapezoidal `∫_0^t D` over the stored states.
    pub dissipated: f64,
    /// Extremes of `n/rho` over nodes with `rho > 0` (zero when none).
    pub ratio_min: f64,
    pub ratio_max: f64,
    /// `L_{h,1}(ϑ)`, one entry per configured `h`.
    pub l_h1: Vec<f64>,
    /// `E_w`, one entry per configured `h`.
    pub e_w: Vec<f64>,
    pub weight_violations: usize,
    pub weight_clips: usize,
    /// `L¹` residual of the renormalized equation for `T_k(rho)`.
    pub renormalization: f64,
}

impl ReportRow {
    pub fn is_finite(&self) -> bool {
        [
            self.t,
            self.mass_rho,
            self.mass_n,
            self.energy,
            self.dissipated,
            self.ratio_min,
            self.ratio_max,
            self.renormalization,
        ]
        .iter()
        .chain(&self.l_h1)
        .chain(&self.e_w)
        .all(|v| v.is_finite())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsReport {
    pub hs: Vec<f64>,
    pub rows: Vec<ReportRow>,
}

/// Extremes of `n/rho` over nodes with `rho > 0`.
pub fn domination_ratio(s: &State) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (&r, &n) in s.rho.values().iter().zip(s.n.values()) {
        if r > 0.0 {
            let q = n / r;
            lo = lo.min(q);
            hi = hi.max(q);
        }
    }
    if lo.is_finite() {
        (lo, hi)
    } else {
        (0.0, 0.0)
    }
}

/// Rows for every state of `traj`. `dissipated`, when given, supplies the
/// cumulative dissipation per state (e.g. the per-step integral of a run);
/// otherwise it is integrated trapezoidally over the stored states.
pub fn diagnose_trajectory(
    traj: &[State],
    dissipated: Option<&[f64]>,
    cp: &CascadeParams,
    law: &dyn PressureLaw,
    cfg: &DiagnosticsConfig,
) -> Result<DiagnosticsReport> {
    cfg.validate()?;
    if dissipated.is_some_and(|d| d.len() != traj.len()) {
        return Err(Error::InconsistentData("one dissipation value per state is required".into()));
    }
    let first = traj
        .first()
        .ok_or_else(|| Error::ParamDomain("empty trajectory".into()))?;
    let grid = *first.grid();
    let kernels: Vec<Kernel> = cfg.hs.iter().map(|&h| Kernel::new(grid, h)).collect::<Result<_>>()?;
    let weights = weight_evolve(traj, law.params(), cfg.weight)?;
    let mut rows = Vec::with_capacity(traj.len());
    let dissipated_in = dissipated;
    let mut dissipated = 0.0;
    let mut prev_d: Option<(f64, f64)> = None;
    for (i, (s, w)) in traj.iter().zip(&weights).enumerate() {
        let (energy, _) = energy_and_dissipation(s, cp, law)?;
        let d_now = dissipation(&s.u, cp.mu, cp.lambda);
        if let Some((t0, d0)) = prev_d {
            dissipated += 0.5 * (s.t - t0) * (d0 + d_now);
        }
        prev_d = Some((s.t, d_now));
        let theta = s.theta();
        let mut l_h1 = Vec::with_capacity(kernels.len());
        let mut e_w = Vec::with_capacity(kernels.len());
        for k in &kernels {
            l_h1.push(l_hp_with(&theta, k, 1.0, LhpOptions::default())?.value);
            e_w.push(weighted_functional(&theta, &w.weight.w, k)?);
        }
        let (ratio_min, ratio_max) = domination_ratio(s);
        let row = ReportRow {
            t: s.t,
            mass_rho: s.mass_rho(),
            mass_n: s.mass_n(),
            energy,
            dissipated: dissipated_in.map_or(dissipated, |d| d[i]),
            ratio_min,
            ratio_max,
            l_h1,
            e_w,
            weight_violations: w.bound_violations,
            weight_clips: w.clips,
            renormalization: renormalization_residual(s, cp, law, cfg.k)?.0,
        };
        if !row.is_finite() {
            return Err(Error::NonFinite(format!("diagnostics at t = {}", s.t)));
        }
        rows.push(row);
    }
    Ok(DiagnosticsReport {
        hs: cfg.hs.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::pressure::{ArtificialPressure, TwoGamma};
    use crate::spectral::Grid;

    #[test]
    fn resting_trajectory_report() {
        let g = Grid::new(2, 16).unwrap();
        let law = ArtificialPressure::new(Arc::new(TwoGamma::new(2.0, 2.0).unwrap()), 1e-2, 8.0).unwrap();
        let cp = CascadeParams::new(1e-3, 1e-2, 16, 0.1, 0.0, 8.0).unwrap();
        let traj: Vec<State> = (0..3)
            .map(|k| {
                let mut s = State::at_rest(g, 0.25, 0.5);
                s.t = 0.1 * k as f64;
                s
            })
            .collect();
        let r = diagnose_trajectory(&traj, None, &cp, &law, &DiagnosticsConfig::default()).unwrap();
        assert_eq!(r.rows.len(), 3);
        for row in &r.rows {
            assert_eq!(row.ratio_min, 2.0);
            assert_eq!(row.ratio_max, 2.0);
            assert!(row.l_h1.iter().all(|&v| v == 0.0));
            assert!(row.e_w.iter().all(|&v| v == 0.0));
            assert_eq!(row.weight_violations, 0);
            assert_eq!(row.dissipated, 0.0);
        }
        assert!(r.rows.windows(2).all(|w| w[0].t < w[1].t));
    }
}
