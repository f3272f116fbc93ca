//! Pseudo-spectral simulator for the drift-flux two-phase flow system on the
//! periodic torus, with a diagnostics suite for the compactness functionals
//! of its regularized approximations.
//!
//! The crate is organized bottom-up:
//!
//! * [`spectral`]: periodic grids, fields, FFT-based differential operators,
//!   Riesz transforms, Galerkin projection and the heat-kernel mollifier.
//! * [`pressure`]: two-variable pressure laws, the artificial pressure,
//!   Helmholtz free energies and the monotone split.
//! * [`solver`]: the viscous approximate system, IMEX time stepping and the
//!   `(ell, eps, delta)` cascade.
//! * [`diagnostics`]: energies, kernels and compactness functionals,
//!   transported weights, effective viscous flux and commutator audits.
//! * [`io`]: binary snapshots and time-series rows.

pub mod diagnostics;
mod error;
pub mod io;
pub mod presets;
pub mod pressure;
pub mod quadrature;
pub mod rng;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
