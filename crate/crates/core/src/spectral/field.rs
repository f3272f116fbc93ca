use crate::error::{Error, Result};

use super::grid::{Grid, MAX_DIM};

/// Real nodal values on a periodic grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: Grid,
    values: Vec<f64>,
}

impl ScalarField {
    /// Validated constructor: length must match the grid and every value must be finite.
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "expected {} values, got {}",
                grid.len(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("scalar field".into()));
        }
        Ok(Self { grid, values })
    }

    pub(crate) fn from_raw(grid: Grid, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }

    /// Sample `f` at every node.
    ///
    /// Panics if `f` returns a non-finite value.
    pub fn from_fn<F: Fn(&[f64; MAX_DIM]) -> f64>(grid: Grid, f: F) -> Self {
        let values: Vec<f64> = (0..grid.len()).map(|i| f(&grid.node(i))).collect();
        assert!(
            values.iter().all(|v| v.is_finite()),
            "ScalarField::from_fn produced a non-finite value"
        );
        Self { grid, values }
    }

    pub fn constant(grid: Grid, c: f64) -> Self {
        Self::from_raw(grid, vec![c; grid.len()])
    }

    pub fn zeros(grid: Grid) -> Self {
        Self::constant(grid, 0.0)
    }

    #[inline]
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> Self {
        Self::from_raw(self.grid, self.values.iter().map(|&v| f(v)).collect())
    }

    /// Pointwise combination of two fields on the same grid.
    pub fn zip_map<F: Fn(f64, f64) -> f64>(&self, other: &Self, f: F) -> Self {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        Self::from_raw(
            self.grid,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_map(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_map(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip_map(other, |a, b| a * b)
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map(|v| c * v)
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: f64, other: &Self) {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += c * b;
        }
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Uniform-grid quadrature: mean times the unit volume.
    pub fn integrate(&self) -> f64 {
        self.mean()
    }

    /// `L^p` norm on the unit torus; `p = f64::INFINITY` gives the max norm.
    pub fn lp_norm(&self, p: f64) -> f64 {
        assert!(p >= 1.0, "lp_norm requires p >= 1");
        if p.is_infinite() {
            return self.values.iter().fold(0.0, |m, v| m.max(v.abs()));
        }
        let s: f64 = if p == 1.0 {
            self.values.iter().map(|v| v.abs()).sum()
        } else if p == 2.0 {
            self.values.iter().map(|v| v * v).sum()
        } else {
            self.values.iter().map(|v| v.abs().powf(p)).sum()
        };
        (s / self.values.len() as f64).powf(1.0 / p)
    }

    /// Discrete `L^2` inner product.
    pub fn inner(&self, other: &Self) -> f64 {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            / self.values.len() as f64
    }
}

/// `d` scalar components on a shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    grid: Grid,
    components: Vec<ScalarField>,
}

impl VectorField {
    pub fn new(components: Vec<ScalarField>) -> Result<Self> {
        let grid = *components
            .first()
            .ok_or_else(|| Error::InvalidGrid("vector field needs components".into()))?
            .grid();
        if components.len() != grid.dim() {
            return Err(Error::InvalidGrid(format!(
                "vector field on a {}-d grid needs {} components, got {}",
                grid.dim(),
                grid.dim(),
                components.len()
            )));
        }
        if components.iter().any(|c| *c.grid() != grid) {
            return Err(Error::GridMismatch);
        }
        Ok(Self { grid, components })
    }

    pub(crate) fn from_raw(grid: Grid, components: Vec<ScalarField>) -> Self {
        Self { grid, components }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            components: (0..grid.dim()).map(|_| ScalarField::zeros(grid)).collect(),
        }
    }

    pub fn from_fn<F: Fn(usize, &[f64; MAX_DIM]) -> f64>(grid: Grid, f: F) -> Self {
        Self {
            grid,
            components: (0..grid.dim())
                .map(|i| ScalarField::from_fn(grid, |x| f(i, x)))
                .collect(),
        }
    }

    #[inline]
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    #[inline]
    pub fn components(&self) -> &[ScalarField] {
        &self.components
    }

    #[inline]
    pub fn component(&self, i: usize) -> &ScalarField {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<ScalarField> {
        self.components
    }

    pub fn is_finite(&self) -> bool {
        self.components.iter().all(ScalarField::is_finite)
    }

    /// Pointwise Euclidean magnitude.
    pub fn magnitude(&self) -> ScalarField {
        let mut out = vec![0.0; self.grid.len()];
        for c in &self.components {
            for (o, v) in out.iter_mut().zip(c.values()) {
                *o += v * v;
            }
        }
        ScalarField::from_raw(self.grid, out.into_iter().map(f64::sqrt).collect())
    }

    pub fn max_magnitude(&self) -> f64 {
        self.magnitude().max()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::from_raw(self.grid, self.components.iter().map(|f| f.scale(c)).collect())
    }

    pub fn axpy(&mut self, c: f64, other: &Self) {
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            a.axpy(c, b);
        }
    }

    /// Multiply every component by a scalar field.
    pub fn mul_scalar(&self, s: &ScalarField) -> Self {
        Self::from_raw(self.grid, self.components.iter().map(|f| f.mul(s)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn g2(n: usize) -> Grid {
        Grid::new(2, n).unwrap()
    }

    #[test]
    fn rejects_non_finite() {
        let g = g2(4);
        let mut v = vec![0.0; 16];
        v[3] = f64::NAN;
        assert!(matches!(ScalarField::new(g, v), Err(Error::NonFinite(_))));
        assert!(ScalarField::new(g, vec![0.0; 15]).is_err());
    }

    #[test]
    fn quadrature_examples() {
        let g = g2(32);
        assert!((ScalarField::constant(g, 3.0).integrate() - 3.0).abs() < 1e-15);
        let s = ScalarField::from_fn(g, |x| (2.0 * PI * x[0]).sin());
        assert!(s.integrate().abs() < 1e-12);
        assert!((s.lp_norm(2.0) - 0.5f64.sqrt()).abs() < 1e-6);
        assert!(s.lp_norm(1.0) <= s.lp_norm(2.0));
        assert!((s.lp_norm(f64::INFINITY) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn vector_field_checks_components() {
        let g = g2(4);
        assert!(VectorField::new(vec![ScalarField::zeros(g)]).is_err());
        let other = Grid::new(2, 8).unwrap();
        assert!(VectorField::new(vec![ScalarField::zeros(g), ScalarField::zeros(other)]).is_err());
    }
}
