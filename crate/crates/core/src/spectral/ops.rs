//! Fourier-multiplier operators on periodic fields.
//!
//! Sign convention for the Riesz transform: `R_i = (-Δ)^{-1/2} ∂_i` has symbol
//! `i k_i / |k|`, so `R_1 cos(2π x_1) = -sin(2π x_1)` and
//! `Σ_i R_i R_i f = -(f - mean f)`. Odd symbols vanish on the unpaired Nyquist
//! mode so that real inputs map to real outputs. Zero modes of the Riesz and
//! inverse-Laplacian symbols are set to 0.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};

use super::fft::Spectrum;
use super::field::{ScalarField, VectorField};
use super::grid::{Grid, MAX_DIM};

const TWO_PI: f64 = 2.0 * PI;

#[inline]
fn k2(k: &[i64; MAX_DIM]) -> f64 {
    (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as f64
}

/// Spectral derivative `∂_axis` of a field given by its spectrum.
pub fn derivative_of(spec: &Spectrum, axis: usize) -> ScalarField {
    let grid = *spec.grid();
    let mut s = spec.clone();
    s.apply(|k| {
        if grid.is_nyquist(k[axis]) {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(0.0, TWO_PI * k[axis] as f64)
        }
    });
    s.to_field()
}

pub fn derivative(f: &ScalarField, axis: usize) -> ScalarField {
    derivative_of(&Spectrum::forward(f), axis)
}

pub fn gradient(f: &ScalarField) -> VectorField {
    let spec = Spectrum::forward(f);
    let grid = *f.grid();
    VectorField::from_raw(grid, (0..grid.dim()).map(|a| derivative_of(&spec, a)).collect())
}

/// Spectrum of `div v`, accumulated without leaving Fourier space.
pub fn divergence_spectrum(v: &VectorField) -> Spectrum {
    let grid = *v.grid();
    let mut acc = Spectrum::zeros(grid);
    for (axis, c) in v.components().iter().enumerate() {
        let spec = Spectrum::forward(c);
        for (idx, (a, b)) in acc.coeffs_mut().iter_mut().zip(spec.coeffs()).enumerate() {
            let k = grid.wavevector(idx);
            if !grid.is_nyquist(k[axis]) {
                *a += b * Complex64::new(0.0, TWO_PI * k[axis] as f64);
            }
        }
    }
    acc
}

pub fn divergence(v: &VectorField) -> ScalarField {
    divergence_spectrum(v).to_field()
}

pub fn laplacian(f: &ScalarField) -> ScalarField {
    let mut s = Spectrum::forward(f);
    s.apply(|k| Complex64::new(-4.0 * PI * PI * k2(k), 0.0));
    s.to_field()
}

/// Tolerance on `|∫ f|` accepted by [`inv_neg_laplacian`].
pub const MEAN_TOL: f64 = 1e-10;

/// Zero-mean solution `g` of `-Δ g = f`.
///
/// With `demean = false` the input must already have `|∫ f| <= MEAN_TOL`;
/// with `demean = true` the mean is removed first.
pub fn inv_neg_laplacian(f: &ScalarField, demean: bool) -> Result<ScalarField> {
    let mean = f.mean();
    if !demean && mean.abs() > MEAN_TOL {
        return Err(Error::MeanNotZero { mean, tol: MEAN_TOL });
    }
    let mut s = Spectrum::forward(f);
    s.apply(|k| {
        let kk = k2(k);
        if kk == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(1.0 / (4.0 * PI * PI * kk), 0.0)
        }
    });
    Ok(s.to_field())
}

/// Riesz transform `R_axis f`, symbol `i k_axis / |k|`.
pub fn riesz(axis: usize, f: &ScalarField) -> ScalarField {
    let grid = *f.grid();
    let mut s = Spectrum::forward(f);
    s.apply(|k| {
        let kk = k2(k);
        if kk == 0.0 || grid.is_nyquist(k[axis]) {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(0.0, k[axis] as f64 / kk.sqrt())
        }
    });
    s.to_field()
}

/// Composite `R_i R_j f`, symbol `-k_i k_j / |k|^2`.
///
/// For `i != j` the symbol is odd in each index and dropped on Nyquist modes;
/// the diagonal symbols are kept everywhere so that `Σ_i R_i R_i = -Id` holds
/// exactly on mean-free fields.
pub fn riesz_pair(i: usize, j: usize, f: &ScalarField) -> ScalarField {
    let mut s = Spectrum::forward(f);
    riesz_pair_in_place(&mut s, i, j);
    s.to_field()
}

pub(crate) fn riesz_pair_in_place(s: &mut Spectrum, i: usize, j: usize) {
    let grid = *s.grid();
    s.apply(|k| {
        let kk = k2(k);
        if kk == 0.0 || (i != j && (grid.is_nyquist(k[i]) || grid.is_nyquist(k[j]))) {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(-(k[i] * k[j]) as f64 / kk, 0.0)
        }
    });
}

/// Keep Fourier modes with max-norm wavenumber `<= ell`.
pub fn galerkin_project(f: &ScalarField, ell: usize) -> ScalarField {
    let mut s = Spectrum::forward(f);
    truncate_in_place(&mut s, ell);
    s.to_field()
}

pub(crate) fn truncate_in_place(s: &mut Spectrum, ell: usize) {
    let grid = *s.grid();
    if ell >= grid.n() / 2 {
        return;
    }
    let ell = ell as i64;
    for (idx, c) in s.coeffs_mut().iter_mut().enumerate() {
        let k = grid.wavevector(idx);
        if k.iter().any(|ki| ki.abs() > ell) {
            *c = Complex64::new(0.0, 0.0);
        }
    }
}

pub fn galerkin_project_vector(v: &VectorField, ell: usize) -> VectorField {
    VectorField::from_raw(
        *v.grid(),
        v.components().iter().map(|c| galerkin_project(c, ell)).collect(),
    )
}

/// Largest wavenumber kept by the 2/3 rule.
#[inline]
pub fn dealias_cutoff(grid: &Grid) -> usize {
    grid.n() / 3
}

pub fn dealias(f: &ScalarField) -> ScalarField {
    galerkin_project(f, dealias_cutoff(f.grid()))
}

/// Pointwise product with the 2/3-rule truncation applied to the result.
pub fn dealiased_product(a: &ScalarField, b: &ScalarField) -> ScalarField {
    dealias(&a.mul(b))
}

/// Spectral interpolation onto another grid of the same dimension
/// (zero padding when refining, truncation when coarsening).
pub fn resample(f: &ScalarField, target: Grid) -> ScalarField {
    let src = *f.grid();
    assert_eq!(src.dim(), target.dim(), "resample across dimensions");
    if src == target {
        return f.clone();
    }
    let s = Spectrum::forward(f);
    let keep = (src.n().min(target.n()) / 2) as i64;
    let mut out = Spectrum::zeros(target);
    let scale = target.len() as f64 / src.len() as f64;
    for (idx, c) in s.coeffs().iter().enumerate() {
        let k = src.wavevector(idx);
        // The unpaired Nyquist mode of the smaller grid is dropped.
        if k[..src.dim()].iter().any(|ki| ki.abs() >= keep) {
            continue;
        }
        let mut m = [0usize; MAX_DIM];
        for a in 0..src.dim() {
            m[a] = k[a].rem_euclid(target.n() as i64) as usize;
        }
        out.coeffs_mut()[target.flat_index(&m)] = c * scale;
    }
    out.to_field()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs_diff(a: &ScalarField, b: &ScalarField) -> f64 {
        a.values()
            .iter()
            .zip(b.values())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    fn g2(n: usize) -> Grid {
        Grid::new(2, n).unwrap()
    }

    /// Smooth field with modes up to 3 along each axis.
    fn smooth(g: Grid) -> ScalarField {
        ScalarField::from_fn(g, |x| {
            (TWO_PI * x[0]).sin() * (2.0 * TWO_PI * x[1]).cos()
                + 0.3 * (3.0 * TWO_PI * x[1] + 0.2).sin()
                + 0.7 * (TWO_PI * (x[0] - 2.0 * x[1])).cos()
                + 1.5
        })
    }

    #[test]
    fn gradient_of_constant_vanishes() {
        let g = g2(16);
        let grad = gradient(&ScalarField::constant(g, 1.0));
        assert!(grad.max_magnitude() < 1e-14);
    }

    #[test]
    fn gradient_of_single_mode() {
        let g = g2(16);
        let f = ScalarField::from_fn(g, |x| (TWO_PI * x[0]).sin());
        let grad = gradient(&f);
        let expect = ScalarField::from_fn(g, |x| TWO_PI * (TWO_PI * x[0]).cos());
        assert!(max_abs_diff(grad.component(0), &expect) < 1e-12);
        assert!(grad.component(1).lp_norm(f64::INFINITY) < 1e-12);
        assert!(grad.component(0).mean().abs() < 1e-14);
    }

    #[test]
    fn gradient_matches_centered_differences_to_second_order() {
        // Oracle: centered finite differences of the analytic function.
        let f_exact = |x0: f64, x1: f64| (TWO_PI * x0).sin() * (2.0 * TWO_PI * x1).sin();
        let mut errs = Vec::new();
        for n in [32usize, 64] {
            let g = g2(n);
            let f = ScalarField::from_fn(g, |x| f_exact(x[0], x[1]));
            let grad = gradient(&f);
            let h = g.spacing();
            let mut err: f64 = 0.0;
            for idx in 0..g.len() {
                let x = g.node(idx);
                let fd0 = (f_exact(x[0] + h, x[1]) - f_exact(x[0] - h, x[1])) / (2.0 * h);
                let fd1 = (f_exact(x[0], x[1] + h) - f_exact(x[0], x[1] - h)) / (2.0 * h);
                err = err
                    .max((grad.component(0).values()[idx] - fd0).abs())
                    .max((grad.component(1).values()[idx] - fd1).abs());
            }
            errs.push(err);
        }
        let ratio = errs[0] / errs[1];
        assert!((3.6..4.4).contains(&ratio), "ratio {ratio}, errs {errs:?}");
    }

    #[test]
    fn divergence_and_laplacian_examples() {
        let g = g2(16);
        let v = VectorField::new(vec![
            ScalarField::from_fn(g, |x| (TWO_PI * x[0]).cos()),
            ScalarField::zeros(g),
        ])
        .unwrap();
        let expect = ScalarField::from_fn(g, |x| -TWO_PI * (TWO_PI * x[0]).sin());
        assert!(max_abs_diff(&divergence(&v), &expect) < 1e-12);

        let s = ScalarField::from_fn(g, |x| (TWO_PI * x[0]).sin());
        let lap = laplacian(&s);
        assert!(max_abs_diff(&lap, &s.scale(-4.0 * PI * PI)) < 1e-11);
    }

    #[test]
    fn div_grad_is_laplacian() {
        let g = g2(32);
        let f = smooth(g);
        let a = divergence(&gradient(&f));
        let b = laplacian(&f);
        let rel = max_abs_diff(&a, &b) / b.lp_norm(f64::INFINITY);
        assert!(rel < 1e-10, "{rel}");
        assert!(a.integrate().abs() < 1e-12);
        assert!(b.integrate().abs() < 1e-12);
    }

    #[test]
    fn inverse_laplacian_examples() {
        let g = g2(16);
        let f = ScalarField::from_fn(g, |x| (TWO_PI * x[0]).cos());
        let u = inv_neg_laplacian(&f, false).unwrap();
        assert!(max_abs_diff(&u, &f.scale(1.0 / (4.0 * PI * PI))) < 1e-14);

        let zero = inv_neg_laplacian(&ScalarField::zeros(g), false).unwrap();
        assert_eq!(zero.lp_norm(f64::INFINITY), 0.0);

        // Oracle: apply -Δ to the result and compare with the input.
        let f = ScalarField::from_fn(g, |x| (TWO_PI * x[0]).sin() + (TWO_PI * x[1]).sin());
        let u = inv_neg_laplacian(&f, false).unwrap();
        let back = laplacian(&u).scale(-1.0);
        assert!(max_abs_diff(&back, &f) < 1e-12);
        assert!(u.mean().abs() < 1e-15);
    }

    #[test]
    fn inverse_laplacian_mean_check() {
        let g = g2(8);
        let f = ScalarField::constant(g, 0.5);
        assert!(matches!(inv_neg_laplacian(&f, false), Err(Error::MeanNotZero { .. })));
        let u = inv_neg_laplacian(&f, true).unwrap();
        assert!(u.lp_norm(f64::INFINITY) < 1e-15);
    }

    #[test]
    fn riesz_examples() {
        let g = g2(16);
        let f = ScalarField::from_fn(g, |x| (TWO_PI * x[0]).cos());
        let r1 = riesz(0, &f);
        let expect = ScalarField::from_fn(g, |x| -(TWO_PI * x[0]).sin());
        assert!(max_abs_diff(&r1, &expect) < 1e-13);
        assert!(riesz(1, &f).lp_norm(f64::INFINITY) < 1e-13);
    }

    #[test]
    fn riesz_sum_of_squares_is_minus_identity() {
        let g = g2(32);
        let f = smooth(g);
        let mut sum = ScalarField::zeros(g);
        for i in 0..2 {
            sum.axpy(1.0, &riesz(i, &riesz(i, &f)));
        }
        let target = f.map(|v| v - f.mean()).scale(-1.0);
        let rel = max_abs_diff(&sum, &target) / target.lp_norm(f64::INFINITY);
        assert!(rel < 1e-10, "{rel}");
        let mut pair_sum = ScalarField::zeros(g);
        for i in 0..2 {
            pair_sum.axpy(1.0, &riesz_pair(i, i, &f));
        }
        assert!(max_abs_diff(&pair_sum, &target) < 1e-12);
    }

    #[test]
    fn galerkin_examples() {
        let g = g2(16);
        let f = smooth(g);
        assert!(max_abs_diff(&galerkin_project(&f, 8), &f) < 1e-14);
        let two = ScalarField::from_fn(g, |x| (TWO_PI * x[0]).sin() + (5.0 * TWO_PI * x[1]).sin());
        let expect = ScalarField::from_fn(g, |x| (TWO_PI * x[0]).sin());
        assert!(max_abs_diff(&galerkin_project(&two, 2), &expect) < 1e-13);
    }

    #[test]
    fn dealiased_product_matches_doubled_grid() {
        let n = 32;
        let coarse = g2(n);
        let fine = g2(2 * n);
        let cut = dealias_cutoff(&coarse);
        let a = galerkin_project(
            &ScalarField::from_fn(coarse, |x| {
                (0..cut).map(|k| ((k as f64 * TWO_PI * (x[0] + 0.3 * x[1])) + 0.1 * k as f64).cos() / (1.0 + k as f64)).sum()
            }),
            cut,
        );
        let b = galerkin_project(
            &ScalarField::from_fn(coarse, |x| {
                (0..cut).map(|k| (k as f64 * TWO_PI * (x[1] - x[0])).sin() / (1.0 + (k * k) as f64)).sum()
            }),
            cut,
        );
        let coarse_prod = dealiased_product(&a, &b);
        // Exact product on the doubled grid, then truncated the same way.
        let exact = resample(&a, fine).mul(&resample(&b, fine));
        let exact = resample(&galerkin_project(&exact, cut), coarse);
        assert!(max_abs_diff(&coarse_prod, &exact) < 1e-10);
    }

    #[test]
    fn resample_preserves_band_limited_fields() {
        let f = smooth(g2(16));
        let up = resample(&f, g2(64));
        let expect = smooth(g2(64));
        assert!(max_abs_diff(&up, &expect) < 1e-12);
        let down = resample(&up, g2(16));
        assert!(max_abs_diff(&down, &f) < 1e-12);
    }
}
