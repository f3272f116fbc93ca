//! Periodic kernel `K_h(x) = (h + |x|)^-d` for `|x| <= 1/2`, zero beyond
//! `3/4`, with a C¹ cubic Hermite bridge in between.

use std::f64::consts::PI;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, gauss_legendre_integrate};
use crate::spectral::{norm, Grid, ScalarField, MAX_DIM};

/// Upper end of the admissible scale range.
pub const H0: f64 = 0.1;
/// Nodes of the radial rule used for `‖K_h‖_1`.
pub const RADIAL_POINTS: usize = 256;
pub const BRIDGE_START: f64 = 0.5;
pub const SUPPORT_RADIUS: f64 = 0.75;

fn radial_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(RADIAL_POINTS))
}

fn small_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(64))
}

/// `∫_a^b f` under `r = a + (b-a)(1 - cos πt)/2`, which removes square-root
/// behaviour at either end (the cell-area corners).
fn integrate_sqrt_ends<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rule: &(Vec<f64>, Vec<f64>)) -> f64 {
    let w = b - a;
    gauss_legendre_integrate(
        |t| {
            let r = a + 0.5 * w * (1.0 - (PI * t).cos());
            f(r) * 0.5 * w * PI * (PI * t).sin()
        },
        0.0,
        1.0,
        rule,
    )
}

/// Radial profile of `K_h` in dimension `d`.
pub fn kernel_profile(r: f64, h: f64, d: usize) -> f64 {
    let di = d as i32;
    if r <= BRIDGE_START {
        (h + r).powi(-di)
    } else if r >= SUPPORT_RADIUS {
        0.0
    } else {
        let v0 = (h + BRIDGE_START).powi(-di);
        let width = SUPPORT_RADIUS - BRIDGE_START;
        let slope = -(d as f64) * (h + BRIDGE_START).powi(-di - 1) * width;
        let t = (r - BRIDGE_START) / width;
        let h00 = 2.0 * t * t * t - 3.0 * t * t + 1.0;
        let h10 = t * t * t - 2.0 * t * t + t;
        v0 * h00 + slope * h10
    }
}

/// Measure of `{|x| = r}` inside the unit cell `[-1/2, 1/2)^d`.
pub fn sphere_area_in_cell(r: f64, d: usize) -> f64 {
    let a = 0.5;
    match d {
        1 => {
            if r <= a {
                2.0
            } else {
                0.0
            }
        }
        2 => {
            if r <= a {
                2.0 * PI * r
            } else if r < a * 2f64.sqrt() {
                2.0 * PI * r - 8.0 * r * (a / r).acos()
            } else {
                0.0
            }
        }
        3 => {
            if r <= a {
                4.0 * PI * r * r
            } else if r >= a * 3f64.sqrt() {
                0.0
            } else {
                let caps = 6.0 * 2.0 * PI * r * (r - a);
                let mut area = 4.0 * PI * r * r - caps;
                if r > a * 2f64.sqrt() {
                    // Inclusion–exclusion over the 12 edges; triple overlaps
                    // need r > sqrt(3)/2.
                    let z0 = (r * r - 2.0 * a * a).sqrt();
                    let pair = r * integrate_sqrt_ends(
                        |z| {
                            let rho = (r * r - z * z).sqrt();
                            (0.5 * PI - 2.0 * (a / rho).min(1.0).asin()).max(0.0)
                        },
                        -z0,
                        z0,
                        small_rule(),
                    );
                    area += 12.0 * pair;
                }
                area
            }
        }
        _ => panic!("dimension {d} unsupported"),
    }
}

/// `∫ K_h` over `{r_lo <= |x| <= r_hi}` in the unit cell.
pub fn radial_mass(h: f64, d: usize, r_lo: f64, r_hi: f64) -> f64 {
    let mut total = 0.0;
    let rule = radial_rule();
    // Inner part: r = h (e^s - 1) makes the integrand ω_d (r/(h+r))^(d-1).
    let (lo, hi) = (r_lo.max(0.0), r_hi.min(BRIDGE_START));
    if hi > lo {
        let s = |r: f64| (r / h).ln_1p();
        total += gauss_legendre_integrate(
            |s| {
                let r = h * s.exp_m1();
                kernel_profile(r, h, d) * sphere_area_in_cell(r, d) * (h + r)
            },
            s(lo),
            s(hi),
            rule,
        );
    }
    let mut cuts = vec![BRIDGE_START, 0.5 * 2f64.sqrt(), SUPPORT_RADIUS];
    cuts.retain(|&c| c <= SUPPORT_RADIUS);
    for w in cuts.windows(2) {
        let (a, b) = (w[0].max(r_lo), w[1].min(r_hi));
        if b > a {
            total += integrate_sqrt_ends(
                |r| kernel_profile(r, h, d) * sphere_area_in_cell(r, d),
                a,
                b,
                rule,
            );
        }
    }
    total
}

/// `‖K_h‖_{L¹}` by radial quadrature.
pub fn kernel_norm_l1(h: f64, d: usize) -> f64 {
    radial_mass(h, d, 0.0, SUPPORT_RADIUS)
}

pub(crate) fn check_h(h: f64) -> Result<()> {
    if !(h > 0.0) {
        return Err(Error::ParamDomain(format!("h must be positive, got {h}")));
    }
    if h >= H0 {
        return Err(Error::HTooLarge { h, h0: H0 });
    }
    Ok(())
}

/// `K_h` sampled at the displacement nodes of a grid.
#[derive(Debug, Clone)]
pub struct Kernel {
    h: f64,
    grid: Grid,
    values: ScalarField,
    norm_l1: f64,
}

impl Kernel {
    pub fn new(grid: Grid, h: f64) -> Result<Self> {
        check_h(h)?;
        let d = grid.dim();
        let values: Vec<f64> = (0..grid.len())
            .map(|idx| kernel_profile(norm(&grid.displacement(idx), d), h, d))
            .collect();
        Ok(Self {
            h,
            grid,
            values: ScalarField::new(grid, values)?,
            norm_l1: kernel_norm_l1(h, d),
        })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Values indexed like grid nodes, node `idx` standing for the
    /// displacement [`Grid::displacement`]`(idx)`.
    pub fn values(&self) -> &ScalarField {
        &self.values
    }

    pub fn norm_l1(&self) -> f64 {
        self.norm_l1
    }

    /// Mass of `K_h` outside `|z| <= r_max`, relative to `‖K_h‖_1`.
    pub fn tail_fraction(&self, r_max: f64) -> f64 {
        if r_max >= SUPPORT_RADIUS {
            0.0
        } else {
            radial_mass(self.h, self.grid.dim(), r_max, SUPPORT_RADIUS) / self.norm_l1
        }
    }
}

/// Ratios `‖K_h‖_1 / |log h|` and the smallest `C` with all of them in
/// `[1/C, C]`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelAudit {
    pub dim: usize,
    pub rows: Vec<KernelRow>,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelRow {
    pub h: f64,
    pub norm_l1: f64,
    pub ratio: f64,
}

pub fn audit_kernel_scaling(hs: &[f64], d: usize) -> Result<KernelAudit> {
    let mut rows = Vec::with_capacity(hs.len());
    for &h in hs {
        check_h(h)?;
        let n = kernel_norm_l1(h, d);
        rows.push(KernelRow {
            h,
            norm_l1: n,
            ratio: n / h.ln().abs(),
        });
    }
    let c = rows.iter().map(|r| r.ratio.max(1.0 / r.ratio)).fold(1.0, f64::max);
    Ok(KernelAudit { dim: d, rows, c })
}

/// `Σ_z w(z) g(z)` over displacement nodes with `|z| <= r_max` and
/// `w(z) != 0`, where `g(z) = Σ_x pair(x, x + z)`; the per-displacement
/// sums run in parallel and are added in index order.
pub(crate) fn displacement_sum<P>(grid: &Grid, weights: &ScalarField, r_max: f64, pair: P) -> f64
where
    P: Fn(usize, usize) -> f64 + Sync,
{
    let d = grid.dim();
    let n = grid.n();
    let mut dims = [1usize; MAX_DIM];
    for a in dims.iter_mut().take(d) {
        *a = n;
    }
    let parts: Vec<f64> = (0..grid.len())
        .into_par_iter()
        .map(|zi| {
            let w = weights.values()[zi];
            if w == 0.0 || norm(&grid.displacement(zi), d) > r_max {
                return 0.0;
            }
            let m = grid.multi_index(zi);
            let mut shift = [0usize; MAX_DIM];
            shift[..d].copy_from_slice(&m[..d]);
            let mut acc = 0.0;
            for i in 0..dims[0] {
                let ii = (i + shift[0]) % dims[0];
                for j in 0..dims[1] {
                    let jj = (j + shift[1]) % dims[1];
                    let base_x = (i * dims[1] + j) * dims[2];
                    let base_y = (ii * dims[1] + jj) * dims[2];
                    for k in 0..dims[2] {
                        let kk = (k + shift[2]) % dims[2];
                        acc += pair(base_x + k, base_y + kk);
                    }
                }
            }
            w * acc
        })
        .collect();
    parts.iter().sum()
}
