//! Multi-dimensional complex FFT over the flat row-major layout of [`Grid`].
//!
//! Forward transforms are unnormalized; [`Spectrum::to_field`] divides by the
//! node count, so a forward/inverse pair is the identity.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::field::ScalarField;
use super::grid::{Grid, MAX_DIM};

type PlanKey = (usize, bool);

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    static PLANS: OnceLock<Mutex<HashMap<PlanKey, Arc<dyn Fft<f64>>>>> = OnceLock::new();
    let plans = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = plans.lock().expect("fft plan cache poisoned");
    guard
        .entry((n, inverse))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if inverse {
                planner.plan_fft_inverse(n)
            } else {
                planner.plan_fft_forward(n)
            }
        })
        .clone()
}

/// In-place unnormalized transform of `data` along every axis of `grid`.
pub(crate) fn transform(grid: &Grid, data: &mut [Complex64], inverse: bool) {
    let n = grid.n();
    let fft = plan(n, inverse);
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    for axis in 0..grid.dim() {
        let stride = grid.stride(axis);
        if stride == 1 {
            fft.process_with_scratch(data, &mut scratch);
            continue;
        }
        // Gather strided lines into contiguous batches.
        let outer = grid.len() / (n * stride);
        let mut buf = vec![Complex64::new(0.0, 0.0); n * stride];
        for o in 0..outer {
            let base = o * n * stride;
            for inner in 0..stride {
                for j in 0..n {
                    buf[inner * n + j] = data[base + j * stride + inner];
                }
            }
            fft.process_with_scratch(&mut buf, &mut scratch);
            for inner in 0..stride {
                for j in 0..n {
                    data[base + j * stride + inner] = buf[inner * n + j];
                }
            }
        }
    }
}

/// Fourier coefficients of a real field, `f_hat[k] = sum_j f(x_j) e^{-2 pi i k x_j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    grid: Grid,
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn forward(f: &ScalarField) -> Self {
        let grid = *f.grid();
        let mut coeffs: Vec<Complex64> = f
            .values()
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        transform(&grid, &mut coeffs, false);
        Self { grid, coeffs }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            coeffs: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// Multiply each coefficient by `symbol(k)`.
    pub fn apply<F>(&mut self, symbol: F)
    where
        F: Fn(&[i64; MAX_DIM]) -> Complex64,
    {
        let grid = self.grid;
        for (idx, c) in self.coeffs.iter_mut().enumerate() {
            *c *= symbol(&grid.wavevector(idx));
        }
    }

    /// Real part of the inverse transform.
    pub fn to_field(&self) -> ScalarField {
        let mut data = self.coeffs.clone();
        transform(&self.grid, &mut data, true);
        let scale = 1.0 / self.grid.len() as f64;
        ScalarField::from_raw(self.grid, data.iter().map(|c| c.re * scale).collect())
    }
}
