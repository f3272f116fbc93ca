//! Localized maximal operator and the singular averages `D_r`.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::CounterRng;
use crate::spectral::{gradient, norm, Grid, ScalarField, Spectrum, MAX_DIM};

/// Dyadic radii `2^-j`, `j = 0..=log2(n/2)`.
pub fn radius_ladder(grid: &Grid) -> Vec<f64> {
    let top = (grid.n() / 2).trailing_zeros();
    (0..=top).map(|j| 0.5f64.powi(j as i32)).collect()
}

/// Circular convolution `Σ_z f(x - z) m(z)` with `m` indexed by displacement
/// node.
fn convolve(f: &ScalarField, mask: &ScalarField) -> ScalarField {
    let a = Spectrum::forward(f);
    let mut b = Spectrum::forward(mask);
    for (c, w) in b.coeffs_mut().iter_mut().zip(a.coeffs()) {
        *c *= w;
    }
    b.to_field()
}

fn displacement_norms(grid: &Grid) -> Vec<f64> {
    (0..grid.len()).map(|i| norm(&grid.displacement(i), grid.dim())).collect()
}

/// Average of `f` over the periodic ball of radius `r` around every node.
pub fn ball_average(f: &ScalarField, r: f64) -> ScalarField {
    let grid = *f.grid();
    let norms = displacement_norms(&grid);
    let count = norms.iter().filter(|&&z| z <= r).count() as f64;
    let mask = ScalarField::new(grid, norms.iter().map(|&z| if z <= r { 1.0 / count } else { 0.0 }).collect())
        .expect("mask matches grid");
    convolve(f, &mask)
}

/// `M f(x) = max_j` ball average of `f` at radius `r_j` over
/// [`radius_ladder`].
pub fn maximal_m(f: &ScalarField) -> ScalarField {
    let radii = radius_ladder(f.grid());
    let avgs: Vec<ScalarField> = radii.par_iter().map(|&r| ball_average(f, r)).collect();
    let mut out = avgs[0].clone();
    for a in &avgs[1..] {
        out = out.zip_map(a, f64::max);
    }
    out
}

/// Surface measure of the unit sphere in `R^d`.
fn sphere_measure(d: usize) -> f64 {
    match d {
        1 => 2.0,
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        _ => panic!("dimension {d} unsupported"),
    }
}

/// Weights `W(z)` with `Σ_z W(z) g(z) ≈ ∫_{|z|<=r} g(z) |z|^(1-d) dz`:
/// shells of width one grid spacing centred on node distances, each
/// carrying `ω_d Δr` spread evenly over its nodes. Empty shells are merged
/// into the next occupied one (trailing ones into the last).
fn singular_weights(grid: &Grid, r: f64) -> Vec<f64> {
    let norms = displacement_norms(grid);
    let h = grid.spacing();
    let shell_of = |z: f64| ((z / h) + 0.5).floor() as usize;
    let last = shell_of(r);
    let mut counts = vec![0usize; last + 1];
    for &z in &norms {
        if z <= r {
            counts[shell_of(z)] += 1;
        }
    }
    let omega = sphere_measure(grid.dim());
    let mut weight = vec![0.0; last + 1];
    let mut carried = 0.0;
    for j in 0..=last {
        let lo = if j == 0 { 0.0 } else { (j as f64 - 0.5) * h };
        let hi = ((j as f64 + 0.5) * h).min(r);
        carried += omega * (hi - lo).max(0.0);
        if counts[j] > 0 {
            weight[j] = carried / counts[j] as f64;
            carried = 0.0;
        }
    }
    if carried > 0.0 {
        if let Some(j) = (0..=last).rev().find(|&j| counts[j] > 0) {
            weight[j] += carried / counts[j] as f64;
        }
    }
    norms
        .iter()
        .map(|&z| if z <= r { weight[shell_of(z)] } else { 0.0 })
        .collect()
}

fn check_r(r: f64) -> Result<()> {
    if r > 0.0 && r <= 1.0 {
        Ok(())
    } else {
        Err(Error::ParamDomain(format!("radius must lie in (0, 1], got {r}")))
    }
}

/// `D_r f(x) = (1/r) ∫_{|z|<=r} |∇f(x+z)| / |z|^(d-1) dz`.
pub fn d_r(f: &ScalarField, r: f64) -> Result<ScalarField> {
    check_r(r)?;
    let grid = *f.grid();
    let grad = gradient(f).magnitude();
    let w = ScalarField::new(grid, singular_weights(&grid, r))?;
    // The shell weights are symmetric, so convolution equals correlation.
    Ok(convolve(&grad, &w).scale(1.0 / r))
}

/// [`d_r`] at a single node from a precomputed `|∇f|`.
fn d_r_at(grad: &ScalarField, x: usize, r: f64) -> f64 {
    let grid = *grad.grid();
    let w = singular_weights(&grid, r);
    let mut shift = [0usize; MAX_DIM];
    shift[..grid.dim()].copy_from_slice(&grid.multi_index(x)[..grid.dim()]);
    let g = grad.values();
    w.iter()
        .enumerate()
        .filter(|(_, &wz)| wz != 0.0)
        .map(|(z, &wz)| wz * g[grid.shifted(z, &shift)])
        .sum::<f64>()
        / r
}

/// Minimal-image distance between two nodes.
pub fn node_distance(grid: &Grid, x: usize, y: usize) -> f64 {
    let (mx, my) = (grid.multi_index(x), grid.multi_index(y));
    let n = grid.n();
    let mut diff = [0usize; MAX_DIM];
    for a in 0..grid.dim() {
        diff[a] = (my[a] + n - mx[a]) % n;
    }
    norm(&grid.displacement(grid.flat_index(&diff)), grid.dim())
}

/// Largest `|f(x) - f(y)| / (|x - y| (D_{|x-y|} f(x) + D_{|x-y|} f(y)))`
/// over `pairs` seeded random node pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairAudit {
    pub c: f64,
    pub pairs: usize,
}

/// Pair audit of [`d_r`] for `f` sampled by `field_at` on `grid`. Pairs
/// are drawn as coordinates on a coarse lattice of `base_n` points per
/// axis so refined grids see the same physical pairs.
pub fn pair_inequality_audit<F>(grid: Grid, field_at: F, base_n: usize, pairs: usize, seed: u64) -> Result<PairAudit>
where
    F: Fn(&[f64; MAX_DIM]) -> f64,
{
    if base_n == 0 || grid.n() % base_n != 0 {
        return Err(Error::ParamDomain(format!(
            "pair lattice {base_n} must divide the grid size {}",
            grid.n()
        )));
    }
    let f = ScalarField::from_fn(grid, field_at);
    let grad = gradient(&f).magnitude();
    let rng = CounterRng::new(seed, 0x6d61_7869);
    let ratio = grid.n() / base_n;
    let d = grid.dim();
    let pick = |c: &mut u64| {
        let mut m = [0usize; MAX_DIM];
        for slot in m.iter_mut().take(d) {
            *slot = ((rng.uniform(*c) * base_n as f64) as usize).min(base_n - 1) * ratio;
            *c += 1;
        }
        grid.flat_index(&m)
    };
    let mut counter = 0u64;
    let mut list = Vec::with_capacity(pairs);
    while list.len() < pairs {
        let (x, y) = (pick(&mut counter), pick(&mut counter));
        if x != y {
            list.push((x, y));
        }
    }
    let v = f.values();
    let c = list
        .par_iter()
        .map(|&(x, y)| {
            let r = node_distance(&grid, x, y);
            let denom = r * (d_r_at(&grad, x, r) + d_r_at(&grad, y, r));
            let num = (v[x] - v[y]).abs();
            if num == 0.0 {
                0.0
            } else {
                num / denom
            }
        })
        .reduce(|| 0.0, f64::max);
    Ok(PairAudit { c, pairs })
}
