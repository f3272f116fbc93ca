//! Built-in law catalog.

use std::sync::Arc;

use crate::error::{Error, Result};

use super::law::{dpow, pow, LawParams, PressureLaw};

/// `rho^γ + n^α`.
#[derive(Debug, Clone)]
pub struct TwoGamma {
    params: LawParams,
}

impl TwoGamma {
    pub fn new(gamma: f64, alpha: f64) -> Result<Self> {
        check_exponent("gamma", gamma)?;
        check_exponent("alpha", alpha)?;
        Ok(Self {
            params: LawParams {
                gamma,
                alpha,
                gamma_tilde: gamma,
                alpha_tilde: alpha,
                c0: 1.0,
                c1: 0.0,
                c2: gamma.max(alpha),
            },
        })
    }
}

impl PressureLaw for TwoGamma {
    fn name(&self) -> &str {
        "two_gamma"
    }
    fn pressure(&self, rho: f64, n: f64) -> f64 {
        pow(rho, self.params.gamma) + pow(n, self.params.alpha)
    }
    fn d_rho(&self, rho: f64, _n: f64) -> f64 {
        dpow(rho, self.params.gamma)
    }
    fn d_n(&self, _rho: f64, n: f64) -> f64 {
        dpow(n, self.params.alpha)
    }
    fn params(&self) -> &LawParams {
        &self.params
    }
}

/// One lower-order term `c rho^γ_i n^α_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossTerm {
    pub coeff: f64,
    pub gamma: f64,
    pub alpha: f64,
}

/// `rho^γ + n^α + Σ c_i rho^γ_i n^α_i` with coefficients of either sign.
///
/// Requires `0 <= γ_i < γ`, `0 <= α_i < α` and `γ_i + α_i < max(γ, α)`.
/// Declared constants are nominal; use the growth checker for fitted ones.
#[derive(Debug, Clone)]
pub struct CrossTerms {
    params: LawParams,
    terms: Vec<CrossTerm>,
}

impl CrossTerms {
    pub fn new(gamma: f64, alpha: f64, terms: Vec<CrossTerm>) -> Result<Self> {
        check_exponent("gamma", gamma)?;
        check_exponent("alpha", alpha)?;
        if terms.is_empty() {
            return Err(Error::ParamDomain("cross_terms needs at least one term".into()));
        }
        let top = gamma.max(alpha);
        for (i, t) in terms.iter().enumerate() {
            let ok = t.coeff.is_finite()
                && t.gamma >= 0.0
                && t.gamma < gamma
                && t.alpha >= 0.0
                && t.alpha < alpha
                && t.gamma + t.alpha < top;
            if !ok {
                return Err(Error::ParamDomain(format!(
                    "cross term {i}: need 0 <= gamma_i < {gamma}, 0 <= alpha_i < {alpha}, gamma_i + alpha_i < {top}; got ({}, {})",
                    t.gamma, t.alpha
                )));
            }
        }
        let csum: f64 = terms.iter().map(|t| t.coeff.abs()).sum();
        let dsum: f64 = terms.iter().map(|t| t.coeff.abs() * t.gamma.max(t.alpha)).sum();
        Ok(Self {
            params: LawParams {
                gamma,
                alpha,
                gamma_tilde: gamma,
                alpha_tilde: alpha,
                c0: 2.0,
                c1: csum,
                c2: top + dsum,
            },
            terms,
        })
    }

    pub fn terms(&self) -> &[CrossTerm] {
        &self.terms
    }
}

impl PressureLaw for CrossTerms {
    fn name(&self) -> &str {
        "cross_terms"
    }
    fn pressure(&self, rho: f64, n: f64) -> f64 {
        let p = &self.params;
        pow(rho, p.gamma)
            + pow(n, p.alpha)
            + self
                .terms
                .iter()
                .map(|t| t.coeff * pow(rho, t.gamma) * pow(n, t.alpha))
                .sum::<f64>()
    }
    fn d_rho(&self, rho: f64, n: f64) -> f64 {
        dpow(rho, self.params.gamma)
            + self
                .terms
                .iter()
                .map(|t| t.coeff * dpow(rho, t.gamma) * pow(n, t.alpha))
                .sum::<f64>()
    }
    fn d_n(&self, rho: f64, n: f64) -> f64 {
        dpow(n, self.params.alpha)
            + self
                .terms
                .iter()
                .map(|t| t.coeff * pow(rho, t.gamma) * dpow(n, t.alpha))
                .sum::<f64>()
    }
    fn params(&self) -> &LawParams {
        &self.params
    }
}

/// `rho^γ (1 + a cos rho) + n^α (1 + a cos n)`.
#[derive(Debug, Clone)]
pub struct Oscillatory {
    params: LawParams,
    amplitude: f64,
}

pub const DEFAULT_AMPLITUDE: f64 = 0.5;

impl Oscillatory {
    pub fn new(gamma: f64, alpha: f64, amplitude: f64) -> Result<Self> {
        check_exponent("gamma", gamma)?;
        check_exponent("alpha", alpha)?;
        if !(amplitude.is_finite() && amplitude >= 0.0) {
            return Err(Error::ParamDomain(format!("amplitude must be >= 0, got {amplitude}")));
        }
        let a = amplitude;
        let c0 = if a < 1.0 { (1.0 + a).max(1.0 / (1.0 - a)) } else { 1.0 + a };
        Ok(Self {
            params: LawParams {
                gamma,
                alpha,
                gamma_tilde: gamma + 1.0,
                alpha_tilde: alpha + 1.0,
                c0,
                c1: 0.0,
                c2: gamma.max(alpha) * (1.0 + a) + a,
            },
            amplitude,
        })
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }
}

impl PressureLaw for Oscillatory {
    fn name(&self) -> &str {
        "oscillatory"
    }
    fn pressure(&self, rho: f64, n: f64) -> f64 {
        let a = self.amplitude;
        pow(rho, self.params.gamma) * (1.0 + a * rho.cos()) + pow(n, self.params.alpha) * (1.0 + a * n.cos())
    }
    fn d_rho(&self, rho: f64, _n: f64) -> f64 {
        let (a, g) = (self.amplitude, self.params.gamma);
        dpow(rho, g) * (1.0 + a * rho.cos()) - a * pow(rho, g) * rho.sin()
    }
    fn d_n(&self, _rho: f64, n: f64) -> f64 {
        let (a, g) = (self.amplitude, self.params.alpha);
        dpow(n, g) * (1.0 + a * n.cos()) - a * pow(n, g) * n.sin()
    }
    fn params(&self) -> &LawParams {
        &self.params
    }
}

fn check_exponent(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 1.0 {
        Ok(())
    } else {
        Err(Error::ParamDomain(format!("{name} must be >= 1, got {v}")))
    }
}

/// Named-law arguments as they appear in configuration files.
#[derive(Debug, Clone, PartialEq)]
pub struct LawArgs {
    pub gamma: f64,
    pub alpha: f64,
    pub amplitude: Option<f64>,
    pub terms: Vec<CrossTerm>,
}

impl LawArgs {
    pub fn new(gamma: f64, alpha: f64) -> Self {
        Self {
            gamma,
            alpha,
            amplitude: None,
            terms: Vec::new(),
        }
    }
}

pub const LAW_NAMES: [&str; 3] = ["two_gamma", "cross_terms", "oscillatory"];

/// Look a law up by catalog name.
pub fn law_by_name(name: &str, args: &LawArgs) -> Result<Arc<dyn PressureLaw>> {
    Ok(match name {
        "two_gamma" => Arc::new(TwoGamma::new(args.gamma, args.alpha)?),
        "cross_terms" => Arc::new(CrossTerms::new(args.gamma, args.alpha, args.terms.clone())?),
        "oscillatory" => Arc::new(Oscillatory::new(
            args.gamma,
            args.alpha,
            args.amplitude.unwrap_or(DEFAULT_AMPLITUDE),
        )?),
        other => {
            return Err(Error::ParamDomain(format!(
                "unknown pressure law '{other}', expected one of {LAW_NAMES:?}"
            )))
        }
    })
}

/// One representative of each built-in family.
pub fn builtin_laws() -> Vec<Arc<dyn PressureLaw>> {
    vec![
        Arc::new(TwoGamma::new(2.0, 2.0).expect("valid")),
        Arc::new(
            CrossTerms::new(
                3.0,
                3.0,
                vec![CrossTerm {
                    coeff: -0.5,
                    gamma: 1.0,
                    alpha: 1.0,
                }],
            )
            .expect("valid"),
        ),
        Arc::new(Oscillatory::new(2.0, 2.0, DEFAULT_AMPLITUDE).expect("valid")),
    ]
}
