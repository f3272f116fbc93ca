//! Periodic heat-kernel mollifier `j_delta`.
//!
//! The diffusion time is fixed so that the realized kernel peaks at exactly
//! `delta^{-1/(2 p0)}`. The kernel is nonnegative with unit mass and is
//! diagonal in Fourier space (Gaussian multiplier `exp(-4π²|k|²τ)`).

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};

use super::fft::Spectrum;
use super::field::ScalarField;
use super::grid::Grid;

#[derive(Debug, Clone)]
pub struct Mollifier {
    grid: Grid,
    delta: f64,
    p0: f64,
    tau: f64,
    /// One-dimensional multiplier indexed by storage position.
    axis_symbol: Vec<f64>,
}

/// Peak of the realized kernel for diffusion time `tau`.
fn peak_for(grid: &Grid, tau: f64) -> f64 {
    let line: f64 = (0..grid.n())
        .map(|j| {
            let k = grid.wavenumber(j) as f64;
            (-4.0 * PI * PI * k * k * tau).exp()
        })
        .sum();
    line.powi(grid.dim() as i32)
}

impl Mollifier {
    pub fn new(grid: Grid, delta: f64, p0: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::DeltaOutOfRange(delta));
        }
        if !(p0 > 0.0) {
            return Err(Error::ParamDomain(format!("mollifier needs p0 > 0, got {p0}")));
        }
        let target = delta.powf(-1.0 / (2.0 * p0));
        let tau = if target >= grid.len() as f64 {
            0.0
        } else {
            // peak_for is decreasing in tau; bisect in log(tau).
            let (mut lo, mut hi) = (-40.0f64, 10.0f64);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if peak_for(&grid, mid.exp()) > target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            (0.5 * (lo + hi)).exp()
        };
        let axis_symbol = (0..grid.n())
            .map(|j| {
                let k = grid.wavenumber(j) as f64;
                (-4.0 * PI * PI * k * k * tau).exp()
            })
            .collect();
        Ok(Self {
            grid,
            delta,
            p0,
            tau,
            axis_symbol,
        })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    /// Diffusion time of the heat kernel.
    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Upper bound `delta^{-1/(2 p0)}` imposed on the kernel.
    pub fn peak_bound(&self) -> f64 {
        self.delta.powf(-1.0 / (2.0 * self.p0))
    }

    fn symbol(&self, idx: usize) -> f64 {
        let m = self.grid.multi_index(idx);
        (0..self.grid.dim()).map(|a| self.axis_symbol[m[a]]).product()
    }

    pub fn apply(&self, f: &ScalarField) -> ScalarField {
        assert_eq!(*f.grid(), self.grid, "mollifier grid mismatch");
        let mut s = Spectrum::forward(f);
        for (idx, c) in s.coeffs_mut().iter_mut().enumerate() {
            *c *= self.symbol(idx);
        }
        s.to_field()
    }

    /// Nodal values of the realized kernel `j_delta`.
    pub fn kernel(&self) -> ScalarField {
        let mut s = Spectrum::zeros(self.grid);
        let len = self.grid.len() as f64;
        for (idx, c) in s.coeffs_mut().iter_mut().enumerate() {
            *c = Complex64::new(self.symbol(idx) * len, 0.0);
        }
        s.to_field()
    }
}

/// Convolution with `j_delta`; see [`Mollifier`].
pub fn mollify(f: &ScalarField, delta: f64, p0: f64) -> Result<ScalarField> {
    Ok(Mollifier::new(*f.grid(), delta, p0)?.apply(f))
}
