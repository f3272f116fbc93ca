//! Scenario files: TOML with one table per module.
//!
//! ```toml
//! [grid]
//! dim = 2
//! n = 64
//!
//! [initial]
//! preset = "single_mode"   # constant | single_mode | dominated | random
//! rho = 0.5
//! n = 0.5
//! amplitude = 0.2
//! wavenumber = 1
//! velocity = 0.2
//!
//! [pressure]
//! law = "two_gamma"        # two_gamma | cross_terms | oscillatory
//! gamma = 2.0
//! alpha = 2.0
//!
//! [solver]
//! eps = 1e-3
//! delta = 1e-2
//! mu = 0.1
//!
//! [run]
//! t_end = 0.5
//! ```
//!
//! Every key has a default; see the field docs below.

use std::path::Path;
use std::sync::Arc;

use dflx_core::diagnostics::{DiagnosticsConfig, WeightParams};
use dflx_core::presets::Preset;
use dflx_core::pressure::{law_by_name, CrossTerm, LawArgs, PressureLaw, LAW_NAMES};
use dflx_core::solver::{validate_schedule, CascadeParams, RunConfig};
use dflx_core::spectral::Grid;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSection {
    pub dim: usize,
    pub n: usize,
}

impl Default for GridSection {
    fn default() -> Self {
        Self { dim: 2, n: 64 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InitialSection {
    pub preset: String,
    pub rho: f64,
    pub n: f64,
    pub amplitude: f64,
    pub wavenumber: u32,
    pub velocity: f64,
    /// `n0 / rho0` of the dominated preset.
    pub ratio: f64,
    /// Band limit of the random preset.
    pub modes: u32,
    pub seed: u64,
}

impl Default for InitialSection {
    fn default() -> Self {
        Self {
            preset: "single_mode".into(),
            rho: 0.5,
            n: 0.5,
            amplitude: 0.2,
            wavenumber: 1,
            velocity: 0.2,
            ratio: 2.0,
            modes: 4,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PressureSection {
    pub law: String,
    pub gamma: f64,
    pub alpha: f64,
    /// Oscillatory amplitude.
    pub amplitude: Option<f64>,
    /// Cross terms as `[coefficient, gamma_i, alpha_i]`.
    pub terms: Vec<[f64; 3]>,
}

impl Default for PressureSection {
    fn default() -> Self {
        Self {
            law: "two_gamma".into(),
            gamma: 2.0,
            alpha: 2.0,
            amplitude: None,
            terms: Vec::new(),
        }
    }
}

/// Parameters of a single stage; `ell = 0` means "as many modes as the
/// grid resolves".
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSection {
    pub eps: f64,
    pub delta: f64,
    pub ell: usize,
    pub mu: f64,
    pub lambda: f64,
    pub p0: f64,
}

impl Default for SolverSection {
    fn default() -> Self {
        Self {
            eps: 1e-3,
            delta: 1e-2,
            ell: 0,
            mu: 0.1,
            lambda: 0.0,
            p0: 8.0,
        }
    }
}

/// Cascade stages override `delta`, `eps` and `ell` of `[solver]` per
/// stage; lists must be empty or as long as `delta`.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CascadeSection {
    pub delta: Vec<f64>,
    pub eps: Vec<f64>,
    pub ell: Vec<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunSection {
    pub t_end: f64,
    pub cfl: f64,
    pub max_dt: f64,
    pub output_interval: f64,
    pub fixed_dt: Option<f64>,
    /// Write a field snapshot at every output.
    pub snapshots: bool,
}

impl Default for RunSection {
    fn default() -> Self {
        Self {
            t_end: 0.5,
            cfl: 0.5,
            max_dt: 0.05,
            output_interval: 0.05,
            fixed_dt: None,
            snapshots: true,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DiagnosticsSection {
    pub hs: Vec<f64>,
    pub lambda0: f64,
    pub m_const: f64,
    pub sigma: f64,
    pub k: f64,
}

impl Default for DiagnosticsSection {
    fn default() -> Self {
        let d = DiagnosticsConfig::default();
        Self {
            hs: d.hs,
            lambda0: d.weight.lambda0,
            m_const: d.weight.m_const,
            sigma: d.sigma,
            k: d.k,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CheckPressureSection {
    pub radius: f64,
    pub samples: usize,
}

impl Default for CheckPressureSection {
    fn default() -> Self {
        Self {
            radius: 50.0,
            samples: 40_000,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KernelStudySection {
    pub hs: Vec<f64>,
    /// `sine`, `constant` or `initial` (total density of `[initial]`).
    pub field: String,
    pub wavenumber: u32,
}

impl Default for KernelStudySection {
    fn default() -> Self {
        Self {
            hs: vec![1e-2, 1e-3, 1e-4, 1e-5],
            field: "sine".into(),
            wavenumber: 1,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Scenario {
    pub grid: GridSection,
    pub initial: InitialSection,
    pub pressure: PressureSection,
    pub solver: SolverSection,
    pub cascade: CascadeSection,
    pub run: RunSection,
    pub diagnostics: DiagnosticsSection,
    pub check_pressure: CheckPressureSection,
    pub kernel_study: KernelStudySection,
}

pub const KERNEL_FIELDS: [&str; 3] = ["sine", "constant", "initial"];

impl Scenario {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("{e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Resolves every name and checks every parameter up front.
    pub fn validate(&self) -> Result<(), CliError> {
        self.grid()?;
        self.preset()?.validate().map_err(config)?;
        self.law()?;
        self.schedule()?;
        self.run_config()?;
        self.diagnostics_config().validate().map_err(config)?;
        if !KERNEL_FIELDS.contains(&self.kernel_study.field.as_str()) {
            return Err(CliError::Config(format!(
                "unknown kernel-study field '{}', expected one of {KERNEL_FIELDS:?}",
                self.kernel_study.field
            )));
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid, CliError> {
        Grid::new(self.grid.dim, self.grid.n).map_err(config)
    }

    pub fn preset(&self) -> Result<Preset, CliError> {
        let i = &self.initial;
        Ok(match i.preset.as_str() {
            "constant" => Preset::Constant { rho: i.rho, n: i.n },
            "single_mode" => Preset::SingleMode {
                rho: i.rho,
                n: i.n,
                amplitude: i.amplitude,
                wavenumber: i.wavenumber,
                velocity: i.velocity,
            },
            "dominated" => Preset::Dominated {
                rho: i.rho,
                ratio: i.ratio,
                amplitude: i.amplitude,
                velocity: i.velocity,
            },
            "random" => Preset::Random {
                seed: i.seed,
                rho: i.rho,
                n: i.n,
                amplitude: i.amplitude,
                modes: i.modes,
                velocity: i.velocity,
            },
            other => {
                return Err(CliError::Config(format!(
                    "unknown initial-data preset '{other}', expected one of {:?}",
                    dflx_core::presets::PRESET_NAMES
                )))
            }
        })
    }

    pub fn law(&self) -> Result<Arc<dyn PressureLaw>, CliError> {
        let p = &self.pressure;
        if !LAW_NAMES.contains(&p.law.as_str()) {
            return Err(CliError::Config(format!(
                "unknown pressure law '{}', expected one of {LAW_NAMES:?}",
                p.law
            )));
        }
        let args = LawArgs {
            gamma: p.gamma,
            alpha: p.alpha,
            amplitude: p.amplitude,
            terms: p
                .terms
                .iter()
                .map(|t| CrossTerm {
                    coeff: t[0],
                    gamma: t[1],
                    alpha: t[2],
                })
                .collect(),
        };
        law_by_name(&p.law, &args).map_err(config)
    }

    fn stage(&self, eps: f64, delta: f64, ell: usize) -> Result<CascadeParams, CliError> {
        let s = &self.solver;
        let ell = if ell == 0 { self.grid.n } else { ell };
        CascadeParams::new(eps, delta, ell, s.mu, s.lambda, s.p0).map_err(config)
    }

    /// The `[solver]` stage alone.
    pub fn single_stage(&self) -> Result<CascadeParams, CliError> {
        self.stage(self.solver.eps, self.solver.delta, self.solver.ell)
    }

    /// Stages of `[cascade]`, or the single `[solver]` stage when no
    /// cascade is configured.
    pub fn schedule(&self) -> Result<Vec<CascadeParams>, CliError> {
        let c = &self.cascade;
        if c.delta.is_empty() {
            if !c.eps.is_empty() || !c.ell.is_empty() {
                return Err(CliError::Config("cascade eps/ell lists need a delta list".into()));
            }
            return Ok(vec![self.single_stage()?]);
        }
        let k = c.delta.len();
        for (name, len) in [("eps", c.eps.len()), ("ell", c.ell.len())] {
            if len != 0 && len != k {
                return Err(CliError::Config(format!(
                    "cascade {name} list has {len} entries, delta has {k}"
                )));
            }
        }
        let stages = (0..k)
            .map(|i| {
                self.stage(
                    c.eps.get(i).copied().unwrap_or(self.solver.eps),
                    c.delta[i],
                    c.ell.get(i).copied().unwrap_or(self.solver.ell),
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        validate_schedule(&stages).map_err(config)?;
        Ok(stages)
    }

    pub fn run_config(&self) -> Result<RunConfig, CliError> {
        let r = &self.run;
        let mut cfg = RunConfig::new(r.t_end, r.cfl, r.max_dt, r.output_interval).map_err(config)?;
        cfg.fixed_dt = r.fixed_dt;
        cfg.validate().map_err(config)?;
        Ok(cfg)
    }

    pub fn diagnostics_config(&self) -> DiagnosticsConfig {
        let d = &self.diagnostics;
        DiagnosticsConfig {
            hs: d.hs.clone(),
            weight: WeightParams {
                lambda0: d.lambda0,
                m_const: d.m_const,
                ..WeightParams::default()
            },
            sigma: d.sigma,
            k: d.k,
        }
    }
}

fn config(e: dflx_core::Error) -> CliError {
    CliError::Config(e.to_string())
}
