//! The kernel-weighted difference functional
//!
//! ```text
//! L_{h,p}(f) = (1/‖K_h‖_1) Σ_z K_h(z) |cell| Σ_x |cell| |f(x + z) - f(x)|^p
//! ```
//!
//! summed over displacement nodes `z` in the kernel support.

use crate::error::{Error, Result};
use crate::spectral::ScalarField;

use super::kernel::{displacement_sum, Kernel, SUPPORT_RADIUS};

/// Options for [`l_hp_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LhpOptions {
    /// Displacements with `|z| > r_max` are skipped.
    pub r_max: f64,
}

impl Default for LhpOptions {
    fn default() -> Self {
        Self { r_max: SUPPORT_RADIUS }
    }
}

/// Value of the functional together with the relative kernel mass that a
/// truncated support dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LhpValue {
    pub value: f64,
    pub tail_fraction: f64,
}

pub fn l_hp(f: &ScalarField, h: f64, p: f64) -> Result<f64> {
    let kernel = Kernel::new(*f.grid(), h)?;
    Ok(l_hp_with(f, &kernel, p, LhpOptions::default())?.value)
}

pub fn l_hp_with(f: &ScalarField, kernel: &Kernel, p: f64, opts: LhpOptions) -> Result<LhpValue> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::ParamDomain(format!("L_hp needs p in [1, inf), got {p}")));
    }
    if f.grid() != kernel.grid() {
        return Err(Error::GridMismatch);
    }
    let vol = f.grid().cell_volume();
    let v = f.values();
    let raw = if p == 1.0 {
        displacement_sum(f.grid(), kernel.values(), opts.r_max, |x, y| (v[y] - v[x]).abs())
    } else if p == 2.0 {
        displacement_sum(f.grid(), kernel.values(), opts.r_max, |x, y| (v[y] - v[x]).powi(2))
    } else {
        displacement_sum(f.grid(), kernel.values(), opts.r_max, |x, y| (v[y] - v[x]).abs().powf(p))
    };
    Ok(LhpValue {
        value: raw * vol * vol / kernel.norm_l1(),
        tail_fraction: kernel.tail_fraction(opts.r_max),
    })
}
