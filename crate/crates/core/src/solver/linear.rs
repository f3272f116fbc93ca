//! Stiff linear part integrated exactly in Fourier space:
//! `ε Δ` on both densities and `(μΔ + (μ+λ)∇div) / ϑ_ref` on the velocity.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;

use crate::spectral::{ScalarField, Spectrum, VectorField};

use super::state::{CascadeParams, State, Toggles};

#[derive(Debug, Clone, Copy)]
pub(crate) struct LinearOp {
    pub eps: f64,
    pub mu: f64,
    pub lambda: f64,
    /// `1/ϑ_ref`; zero disables the velocity part.
    pub inv_theta_ref: f64,
    pub toggles: Toggles,
}

impl LinearOp {
    pub fn new(cp: &CascadeParams, inv_theta_ref: f64, toggles: Toggles) -> Self {
        Self {
            eps: cp.eps,
            mu: cp.mu,
            lambda: cp.lambda,
            inv_theta_ref: if toggles.momentum { inv_theta_ref } else { 0.0 },
            toggles,
        }
    }

    /// `1/ϑ_ref` as the mean of `1/min ϑ` and `1/max ϑ`, which minimizes the
    /// largest explicit remainder `|1/ϑ - 1/ϑ_ref|`.
    pub fn reference_inverse(theta: &ScalarField) -> f64 {
        0.5 * (1.0 / theta.min() + 1.0 / theta.max())
    }

    fn heat(&self, f: &ScalarField, tau: f64) -> ScalarField {
        if self.eps == 0.0 || tau == 0.0 {
            return f.clone();
        }
        let mut s = Spectrum::forward(f);
        let c = -4.0 * PI * PI * self.eps * tau;
        s.apply(|k| Complex64::new((c * (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as f64).exp(), 0.0));
        s.to_field()
    }

    /// Exact propagator of `(μΔ + (μ+λ)∇div)/ϑ_ref`, split into the
    /// solenoidal and compressive parts of each mode. Odd derivative symbols
    /// vanish on Nyquist components, exactly as in the explicit operator.
    fn lame(&self, u: &VectorField, tau: f64) -> VectorField {
        if self.inv_theta_ref == 0.0 || tau == 0.0 {
            return u.clone();
        }
        let grid = *u.grid();
        let d = grid.dim();
        let mut specs: Vec<Spectrum> = u.components().iter().map(Spectrum::forward).collect();
        let a = tau * self.inv_theta_ref * 4.0 * PI * PI;
        for idx in 0..grid.len() {
            let k = grid.wavevector(idx);
            let kk: f64 = (0..d).map(|i| (k[i] * k[i]) as f64).sum();
            if kk == 0.0 {
                continue;
            }
            let mut kt = [0.0f64; 3];
            for i in 0..d {
                if !grid.is_nyquist(k[i]) {
                    kt[i] = k[i] as f64;
                }
            }
            let kt2: f64 = kt.iter().map(|v| v * v).sum();
            let e_sol = (-a * self.mu * kk).exp();
            let e_comp = (-a * (self.mu * kk + (self.mu + self.lambda) * kt2)).exp();
            let mut proj = Complex64::new(0.0, 0.0);
            if kt2 > 0.0 {
                for i in 0..d {
                    proj += specs[i].coeffs()[idx] * kt[i];
                }
                proj /= kt2;
            }
            for i in 0..d {
                let c = specs[i].coeffs()[idx];
                let comp = proj * kt[i];
                specs[i].coeffs_mut()[idx] = (c - comp) * e_sol + comp * e_comp;
            }
        }
        VectorField::from_raw(grid, specs.iter().map(Spectrum::to_field).collect())
    }

    /// `exp(tau L)` applied to the dynamic fields of `s`.
    pub fn propagate(&self, s: &State, tau: f64) -> State {
        State {
            rho: self.heat(&s.rho, tau),
            n: self.heat(&s.n, tau),
            u: self.lame(&s.u, tau),
            t: s.t,
        }
    }
}
