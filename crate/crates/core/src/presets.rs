//! Named initial-data recipes.
//!
//! Random data are band-limited Fourier sums whose coefficients are drawn
//! from [`CounterRng`](crate::rng::CounterRng), indexed by wavevector, so the
//! same seed yields the same continuous field on every grid that resolves
//! the band.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::rng::CounterRng;
use crate::solver::RawData;
use crate::spectral::{Grid, ScalarField, VectorField, MAX_DIM};

#[derive(Debug, Clone, PartialEq)]
pub enum Preset {
    /// Constant densities at rest.
    Constant { rho: f64, n: f64 },
    /// `rho̅(1 + a sin 2πk x_1)`, `n̅(1 + a cos 2πk x_last)` and a
    /// divergence-carrying velocity of amplitude `velocity`.
    SingleMode {
        rho: f64,
        n: f64,
        amplitude: f64,
        wavenumber: u32,
        velocity: f64,
    },
    /// `n0 = ratio * rho0` with `rho0` a single-mode perturbation.
    Dominated {
        rho: f64,
        ratio: f64,
        amplitude: f64,
        velocity: f64,
    },
    /// Mean plus a random band-limited perturbation with `max |k_i| <= modes`.
    Random {
        seed: u64,
        rho: f64,
        n: f64,
        amplitude: f64,
        modes: u32,
        velocity: f64,
    },
}

pub const PRESET_NAMES: [&str; 4] = ["constant", "single_mode", "dominated", "random"];

impl Preset {
    /// The smooth reference data used by verification runs.
    pub fn smooth() -> Self {
        Preset::SingleMode {
            rho: 0.5,
            n: 0.5,
            amplitude: 0.2,
            wavenumber: 1,
            velocity: 0.2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Constant { .. } => "constant",
            Preset::SingleMode { .. } => "single_mode",
            Preset::Dominated { .. } => "dominated",
            Preset::Random { .. } => "random",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::ParamDomain(format!("{}: {m}", self.name())));
        match *self {
            Preset::Constant { rho, n } => {
                if !(rho >= 0.0 && n >= 0.0) {
                    return bad("densities must be nonnegative");
                }
            }
            Preset::SingleMode {
                rho, n, amplitude, ..
            }
            | Preset::Random {
                rho, n, amplitude, ..
            } => {
                if !(rho > 0.0 && n > 0.0) {
                    return bad("mean densities must be positive");
                }
                if !(0.0..1.0).contains(&amplitude) {
                    return bad("amplitude must lie in [0,1)");
                }
            }
            Preset::Dominated {
                rho, ratio, amplitude, ..
            } => {
                if !(rho > 0.0 && ratio > 0.0) {
                    return bad("density and ratio must be positive");
                }
                if !(0.0..1.0).contains(&amplitude) {
                    return bad("amplitude must lie in [0,1)");
                }
            }
        }
        Ok(())
    }

    pub fn build(&self, grid: Grid) -> Result<RawData> {
        self.validate()?;
        let d = grid.dim();
        let last = d - 1;
        let data = match *self {
            Preset::Constant { rho, n } => RawData {
                rho0: ScalarField::constant(grid, rho),
                n0: ScalarField::constant(grid, n),
                m0: VectorField::zeros(grid),
            },
            Preset::SingleMode {
                rho,
                n,
                amplitude,
                wavenumber,
                velocity,
            } => {
                let k = f64::from(wavenumber);
                let rho0 = ScalarField::from_fn(grid, |x| rho * (1.0 + amplitude * (2.0 * PI * k * x[0]).sin()));
                let n0 = ScalarField::from_fn(grid, |x| n * (1.0 + amplitude * (2.0 * PI * k * x[last]).cos()));
                let m0 = momentum(&rho0.add(&n0), &base_velocity(grid, velocity));
                RawData { rho0, n0, m0 }
            }
            Preset::Dominated {
                rho,
                ratio,
                amplitude,
                velocity,
            } => {
                let rho0 = ScalarField::from_fn(grid, |x| {
                    rho * (1.0 + amplitude * (2.0 * PI * x[0]).sin() * (2.0 * PI * x[last]).cos())
                });
                let n0 = rho0.scale(ratio);
                let m0 = momentum(&rho0.add(&n0), &base_velocity(grid, velocity));
                RawData { rho0, n0, m0 }
            }
            Preset::Random {
                seed,
                rho,
                n,
                amplitude,
                modes,
                velocity,
            } => {
                let rho0 = random_field(grid, seed, 0, modes).map(|v| rho * (1.0 + amplitude * v));
                let n0 = random_field(grid, seed, 1, modes).map(|v| n * (1.0 + amplitude * v));
                let u = VectorField::new(
                    (0..d)
                        .map(|i| random_field(grid, seed, 2 + i as u64, modes).scale(velocity))
                        .collect(),
                )?;
                let m0 = momentum(&rho0.add(&n0), &u);
                RawData { rho0, n0, m0 }
            }
        };
        Ok(data)
    }
}

fn momentum(theta: &ScalarField, u: &VectorField) -> VectorField {
    u.mul_scalar(theta)
}

/// `u_1 = U sin 2π x_last`, `u_last += U cos 2π x_1 / 2`; compressive in 1-d.
fn base_velocity(grid: Grid, amp: f64) -> VectorField {
    let d = grid.dim();
    VectorField::from_fn(grid, |i, x| {
        if d == 1 {
            amp * (2.0 * PI * x[0]).sin()
        } else if i == 0 {
            amp * (2.0 * PI * x[d - 1]).sin() + 0.5 * amp * (2.0 * PI * x[0]).cos()
        } else if i == d - 1 {
            0.5 * amp * (2.0 * PI * x[0]).cos()
        } else {
            0.0
        }
    })
}

/// Random trigonometric sum with `max |k_i| <= modes`, normalized so that
/// `|f| <= 1` everywhere. Coefficients depend only on `(seed, stream, k)`.
pub fn random_field(grid: Grid, seed: u64, stream: u64, modes: u32) -> ScalarField {
    let d = grid.dim();
    let rng = CounterRng::new(seed, stream);
    let m = modes as i64;
    let side = (2 * m + 1) as u64;
    let mut terms: Vec<([i64; MAX_DIM], f64, f64)> = Vec::new();
    let total = side.pow(d as u32);
    for code in 0..total {
        let mut k = [0i64; MAX_DIM];
        let mut c = code;
        for ki in k.iter_mut().take(d) {
            *ki = (c % side) as i64 - m;
            c /= side;
        }
        // One representative per ±k pair.
        let first = k[..d].iter().find(|&&v| v != 0);
        if first.map_or(true, |&v| v < 0) {
            continue;
        }
        let amp = rng.symmetric(2 * code);
        let phase = 2.0 * PI * rng.uniform(2 * code + 1);
        terms.push((k, amp, phase));
    }
    let norm: f64 = terms.iter().map(|t| t.1.abs()).sum();
    if norm == 0.0 {
        return ScalarField::zeros(grid);
    }
    ScalarField::from_fn(grid, |x| {
        terms
            .iter()
            .map(|(k, a, p)| {
                let arg: f64 = (0..d).map(|i| k[i] as f64 * x[i]).sum();
                a * (2.0 * PI * arg + p).cos()
            })
            .sum::<f64>()
            / norm
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_fields_are_grid_independent_and_bounded() {
        let a = random_field(Grid::new(2, 16).unwrap(), 9, 0, 3);
        let b = random_field(Grid::new(2, 32).unwrap(), 9, 0, 3);
        assert!(a.lp_norm(f64::INFINITY) <= 1.0);
        // Node (i, j) on the coarse grid is node (2i, 2j) on the fine one.
        for i in 0..16 {
            for j in 0..16 {
                let fa = a.values()[i * 16 + j];
                let fb = b.values()[2 * i * 32 + 2 * j];
                assert!((fa - fb).abs() < 1e-13);
            }
        }
        assert!(a.mean().abs() < 1e-14);
    }

    #[test]
    fn presets_validate() {
        let g = Grid::new(2, 8).unwrap();
        assert!(Preset::smooth().build(g).is_ok());
        let bad = Preset::SingleMode {
            rho: 0.5,
            n: 0.5,
            amplitude: 1.5,
            wavenumber: 1,
            velocity: 0.0,
        };
        assert!(bad.build(g).is_err());
        let dom = Preset::Dominated {
            rho: 0.5,
            ratio: 2.0,
            amplitude: 0.3,
            velocity: 0.1,
        }
        .build(g)
        .unwrap();
        for (r, n) in dom.rho0.values().iter().zip(dom.n0.values()) {
            assert_eq!(*n, 2.0 * r);
        }
    }
}
