//! Periodic-grid fields and the Fourier-multiplier operators built on them.

mod fft;
mod field;
mod grid;
mod mollifier;
pub mod ops;

pub use fft::Spectrum;
pub use field::{ScalarField, VectorField};
pub use grid::{norm, Grid, MAX_DIM};
pub use mollifier::{mollify, Mollifier};
pub use ops::{
    dealias, dealias_cutoff, dealiased_product, derivative, divergence, galerkin_project,
    galerkin_project_vector, gradient,
    inv_neg_laplacian, laplacian, resample, riesz, riesz_pair,
};
