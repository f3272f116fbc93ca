use std::fmt::Debug;

/// Structural exponents and constants of a law `P(rho, n)` in the growth
/// class
///
/// ```text
/// (rho^γ + n^α)/C0 - C1 <= P <= C0 (rho^γ + n^α) + C1
/// |∂_rho P| + |∂_n P| <= C2 (rho^(γ̃-1) + n^(α̃-1) + 1)
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LawParams {
    pub gamma: f64,
    pub alpha: f64,
    pub gamma_tilde: f64,
    pub alpha_tilde: f64,
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl LawParams {
    /// `C0 >= 1`, `C1 >= 0`, `C2 > 0`, `γ̃, α̃ >= 1`.
    pub fn is_admissible(&self) -> bool {
        self.c0 >= 1.0 && self.c1 >= 0.0 && self.c2 > 0.0 && self.gamma_tilde >= 1.0 && self.alpha_tilde >= 1.0
    }

    /// `γ + γ̃ + α + α̃ + 1`, the exponent the artificial pressure must exceed.
    pub fn coercivity_threshold(&self) -> f64 {
        self.gamma + self.gamma_tilde + self.alpha + self.alpha_tilde + 1.0
    }
}

/// A two-variable pressure law with analytic partial derivatives.
pub trait PressureLaw: Send + Sync + Debug {
    fn name(&self) -> &str;

    fn pressure(&self, rho: f64, n: f64) -> f64;

    fn d_rho(&self, rho: f64, n: f64) -> f64;

    fn d_n(&self, rho: f64, n: f64) -> f64;

    fn params(&self) -> &LawParams;

    /// Values of `rho + n` where the law is only finitely smooth; used as
    /// quadrature breakpoints along rays.
    fn kinks(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// `e * x^(e-1)`, with the `e = 0` case pinned to zero.
#[inline]
pub(crate) fn dpow(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        0.0
    } else if e == 1.0 {
        1.0
    } else {
        e * x.powf(e - 1.0)
    }
}

#[inline]
pub(crate) fn pow(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else if e == 1.0 {
        x
    } else if e == 2.0 {
        x * x
    } else {
        x.powf(e)
    }
}
