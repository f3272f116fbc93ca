//! Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
//! gated failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use dflx_core::diagnostics::{
    audit_kernel_scaling, commutator_audit, energy_and_dissipation, evf_audit, l_hp_with, theta, theta_split,
    weight_evolve, Kernel, LhpOptions, WeightParams,
};
use dflx_core::presets::Preset;
use dflx_core::pressure::{builtin_laws, max_identity_residual, ArtificialPressure, PressureLaw, TwoGamma};
use dflx_core::rng::CounterRng;
use dflx_core::solver::{
    regularize_initial_data, run, run_cascade, CascadeParams, RunConfig, State,
};
use dflx_core::spectral::{Grid, ScalarField, VectorField};

const EPS: f64 = 1e-3;
const DELTA: f64 = 1e-2;
const P0: f64 = 8.0;
const MU: f64 = 0.1;
const H_LIST: [f64; 3] = [1e-2, 1e-3, 1e-4];

struct Outcome {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn report(o: &Outcome) {
    println!("{} [{:>2}] {}: {}", if o.pass { "PASS" } else { "FAIL" }, o.id, o.name, o.detail);
}

fn base_law() -> Arc<dyn PressureLaw> {
    Arc::new(TwoGamma::new(2.0, 2.0).expect("valid law"))
}

fn params(eps: f64, delta: f64, n: usize) -> CascadeParams {
    CascadeParams::new(eps, delta, n, MU, 0.0, P0).expect("valid params")
}

/// Smooth preset, regularized, run to `t_end`; returns the stored outputs,
/// the cumulative dissipation at each and the wall time.
fn smooth_run(n: usize, t_end: f64, interval: f64) -> (Vec<State>, Vec<f64>, f64) {
    let grid = Grid::new(2, n).expect("grid");
    let raw = Preset::smooth().build(grid).expect("preset");
    let s0 = regularize_initial_data(&raw.rho0, &raw.n0, &raw.m0, DELTA, P0).expect("regularize");
    let law = ArtificialPressure::new(base_law(), DELTA, P0).expect("law");
    let cfg = RunConfig::new(t_end, 0.5, 0.05, interval).expect("config");
    let mut states = Vec::new();
    let mut dissipated = Vec::new();
    let clock = Instant::now();
    run(s0, &params(EPS, DELTA, n), &law, &cfg, |obs| {
        states.push(obs.state.clone());
        dissipated.push(obs.dissipated);
        Ok(())
    })
    .expect("smooth run");
    (states, dissipated, clock.elapsed().as_secs_f64())
}

fn mass_and_energy(states: &[State], dissipated: &[f64], wall: f64) -> [Outcome; 2] {
    let m0 = states[0].mass_rho();
    let mass_err = states
        .iter()
        .map(|s| ((s.mass_rho() - m0) / m0).abs())
        .fold(0.0, f64::max);
    let cp = params(EPS, DELTA, 64);
    let law = ArtificialPressure::new(base_law(), DELTA, P0).expect("law");
    let energies: Vec<f64> = states
        .iter()
        .map(|s| energy_and_dissipation(s, &cp, &law).expect("energy").0)
        .collect();
    let bound = energies[0] * (1.0 + 1e-3) + 10.0 * EPS;
    let worst = energies
        .iter()
        .zip(dissipated)
        .map(|(e, d)| e + d - bound)
        .fold(f64::NEG_INFINITY, f64::max);
    [
        Outcome {
            id: 1,
            name: "mass conservation",
            pass: mass_err <= 1e-12 && wall < 60.0,
            detail: format!(
                "max relative mass drift {mass_err:.3e} (tol 1e-12) over {} outputs; run {wall:.1} s (limit 60 s)",
                states.len()
            ),
        },
        Outcome {
            id: 2,
            name: "energy inequality",
            pass: worst <= 0.0,
            detail: format!(
                "max E(t)+∫D - [E(0)(1+1e-3)+10ε] = {worst:.3e} (must be <= 0); E(0) = {:.6}",
                energies[0]
            ),
        },
    ]
}

fn domination() -> Outcome {
    let n = 64;
    let grid = Grid::new(2, n).expect("grid");
    let law = ArtificialPressure::new(base_law(), 1e-4, P0).expect("law");
    let cp = params(EPS, 1e-4, n);
    let cfg = RunConfig::new(0.5, 0.5, 0.05, 0.05).expect("config");

    let raw = Preset::Dominated {
        rho: 0.5,
        ratio: 2.0,
        amplitude: 0.2,
        velocity: 0.2,
    }
    .build(grid)
    .expect("preset");
    let s0 = regularize_initial_data(&raw.rho0, &raw.n0, &raw.m0, 1e-4, P0).expect("regularize");
    let mut dev = 0.0f64;
    run(s0, &cp, &law, &cfg, |obs| {
        for (r, m) in obs.state.rho.values().iter().zip(obs.state.n.values()) {
            dev = dev.max((m / r - 2.0).abs());
        }
        Ok(())
    })
    .expect("dominated run");

    // Exact ratio: densities built directly with n = 3 rho.
    let rho = ScalarField::from_fn(grid, |x| 0.4 * (1.0 + 0.3 * (2.0 * PI * x[0]).sin()));
    let u = VectorField::from_fn(grid, |i, x| 0.2 * (2.0 * PI * x[1 - i]).sin());
    let exact = State::new(rho.clone(), rho.scale(3.0), u, 0.0).expect("state");
    let mut dev_exact = 0.0f64;
    run(exact, &cp, &law, &cfg, |obs| {
        for (r, m) in obs.state.rho.values().iter().zip(obs.state.n.values()) {
            dev_exact = dev_exact.max((m / r - 3.0).abs());
        }
        Ok(())
    })
    .expect("exact-ratio run");
    Outcome {
        id: 3,
        name: "domination",
        pass: dev <= 1e-3 && dev_exact <= 1e-10,
        detail: format!("max |n/rho - 2| = {dev:.3e} (tol 1e-3); exact case max |n/rho - 3| = {dev_exact:.3e} (tol 1e-10)"),
    }
}

fn helmholtz() -> Outcome {
    let clock = Instant::now();
    let rng = CounterRng::new(2024, 4);
    let points: Vec<(f64, f64)> = (0..1000u64)
        .map(|i| (4.0 * rng.uniform(2 * i), 4.0 * rng.uniform(2 * i + 1)))
        .collect();
    let mut parts = Vec::new();
    let mut worst = 0.0f64;
    for law in builtin_laws() {
        let name = law.name().to_string();
        let ap = ArtificialPressure::new(law, DELTA, P0).expect("law");
        let r = max_identity_residual(&ap, &points).expect("quadrature");
        worst = worst.max(r);
        parts.push(format!("{name} {r:.2e}"));
    }
    let wall = clock.elapsed().as_secs_f64();
    Outcome {
        id: 4,
        name: "Helmholtz identity",
        pass: worst <= 1e-4 && wall < 10.0,
        detail: format!(
            "max residual at 1000 points in [0,4)^2: {} (tol 1e-4); {wall:.2} s (limit 10 s)",
            parts.join(", ")
        ),
    }
}

fn kernel_scaling() -> Vec<Outcome> {
    let hs = [1e-2, 1e-3, 1e-4, 1e-5];
    let one = audit_kernel_scaling(&hs, 1).expect("audit");
    let two = audit_kernel_scaling(&hs, 2).expect("audit");
    let ratios = |a: &dflx_core::diagnostics::KernelAudit| {
        a.rows
            .iter()
            .map(|r| format!("{:.3}", r.ratio))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let gated = Outcome {
        id: 5,
        name: "kernel scaling (d = 1)",
        pass: one.c <= 4.0,
        detail: format!("‖K_h‖/|log h| = [{}], C = {:.3} (limit 4)", ratios(&one), one.c),
    };
    println!(
        "INFO [ 5] kernel scaling (d = 2, not gated): ‖K_h‖/|log h| = [{}], C = {:.3}; the ratio tends to 2π > 4 as h -> 0, so C <= 4 cannot hold in two dimensions",
        ratios(&two),
        two.c
    );
    vec![gated]
}

fn lhp_decay() -> [Outcome; 2] {
    let g = Grid::new(2, 64).expect("grid");
    let f = ScalarField::from_fn(g, |x| (2.0 * PI * x[0]).sin());
    let mut scaled = Vec::new();
    for &h in &H_LIST {
        let k = Kernel::new(g, h).expect("kernel");
        scaled.push(l_hp_with(&f, &k, 1.0, LhpOptions::default()).expect("lhp").value * h.ln().abs());
    }
    let k = Kernel::new(g, 1e-3).expect("kernel");
    let constant = l_hp_with(&ScalarField::constant(g, 1.7), &k, 1.0, LhpOptions::default())
        .expect("lhp")
        .value;
    let (lo, hi) = scaled.iter().fold((f64::INFINITY, 0.0f64), |a, &v| (a.0.min(v), a.1.max(v)));
    let spread = hi / lo - 1.0;

    let probe = |kk: f64| {
        let fk = ScalarField::from_fn(g, |x| (2.0 * PI * kk * x[0]).sin());
        l_hp_with(&fk, &k, 1.0, LhpOptions::default()).expect("lhp").value
    };
    let (l4, l16) = (probe(4.0), probe(16.0));
    [
        Outcome {
            id: 6,
            name: "L_h1 decay",
            pass: spread <= 0.3 && constant == 0.0 && hi.is_finite(),
            detail: format!(
                "L_h1(sin)·|log h| = [{}] for h = 1e-2, 1e-3, 1e-4, spread {:.1}% (limit 30%); L_h1(const) = {constant:e}",
                scaled.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>().join(", "),
                100.0 * spread
            ),
        },
        Outcome {
            id: 7,
            name: "non-compactness probe",
            pass: l16 >= 0.5 * l4,
            detail: format!("L_h1(f_16) / L_h1(f_4) = {:.4} (must be >= 0.5)", l16 / l4),
        },
    ]
}

fn weight_bounds(states: &[State]) -> Outcome {
    let out = weight_evolve(states, base_law().params(), WeightParams::default()).expect("weight");
    let clips = out.last().map_or(0, |s| s.clips);
    let violations: usize = out.iter().map(|s| s.bound_violations).sum();
    let excess = out.iter().map(|s| s.bound_excess).fold(f64::NEG_INFINITY, f64::max);
    let in_range = out.iter().all(|s| s.weight.w.min() >= 0.0 && s.weight.w.max() <= 1.0);
    Outcome {
        id: 8,
        name: "weight bounds",
        pass: clips == 0 && violations == 0 && in_range,
        detail: format!(
            "{} outputs, clips {clips}, nodes above exp(-λ0 ϑ)+1e-3: {violations}, max(w - exp(-λ0 ϑ)) = {excess:.3e}",
            out.len()
        ),
    }
}

fn evf(coarse: &State, fine: &State) -> Outcome {
    let law = ArtificialPressure::new(base_law(), DELTA, P0).expect("law");
    let a = evf_audit(coarse, &params(EPS, DELTA, 64), &law).expect("audit");
    let b = evf_audit(fine, &params(EPS, DELTA, 128), &law).expect("audit");
    let budget = 0.1 * a.f_norm + 10.0 * EPS;
    let halves = b.discrepancy <= 0.5 * a.discrepancy || b.discrepancy <= 1e-10 * b.f_norm.max(1.0);
    Outcome {
        id: 9,
        name: "effective viscous flux",
        pass: a.discrepancy <= budget && halves,
        detail: format!(
            "‖F‖ = {:.4e}; discrepancy N=64 {:.3e} (budget {budget:.3e}), N=128 {:.3e} (must halve or reach 1e-10 relative); without the ε∇u·∇ϑ term: {:.3e} / {:.3e}",
            a.f_norm, a.discrepancy, b.discrepancy, a.uncorrected, b.uncorrected
        ),
    }
}

fn commutator() -> Outcome {
    let a = commutator_audit(Grid::new(2, 64).expect("grid"), 50, 8, 99).expect("audit");
    let b = commutator_audit(Grid::new(2, 128).expect("grid"), 50, 8, 99).expect("audit");
    let change = (b.c - a.c).abs() / a.c;
    Outcome {
        id: 10,
        name: "commutator boundedness",
        pass: a.c.is_finite() && change <= 0.5,
        detail: format!(
            "C(N=64) = {:.5}, C(N=128) = {:.5}, change {:.2}% (limit 50%)",
            a.c,
            b.c,
            100.0 * change
        ),
    }
}

fn cascade() -> Outcome {
    let clock = Instant::now();
    let n = 64;
    let grid = Grid::new(2, n).expect("grid");
    let raw = Preset::smooth().build(grid).expect("preset");
    let schedule: Vec<CascadeParams> = [1e-1, 3e-2, 1e-2].iter().map(|&d| params(EPS, d, n)).collect();
    let cfg = RunConfig::new(0.2, 0.5, 0.05, 0.05).expect("config");
    let kernels: Vec<Kernel> = H_LIST.iter().map(|&h| Kernel::new(grid, h).expect("kernel")).collect();
    let mut sup = vec![vec![0.0f64; H_LIST.len()]; schedule.len()];
    let outcome = run_cascade(&raw, base_law(), &schedule, &cfg, |ctx, obs| {
        let theta = obs.state.theta();
        for (j, k) in kernels.iter().enumerate() {
            let v = l_hp_with(&theta, k, 1.0, LhpOptions::default())?.value;
            sup[ctx.index][j] = sup[ctx.index][j].max(v);
        }
        Ok(())
    })
    .expect("cascade");
    let diffs = &outcome.l1_theta;
    let cauchy = diffs.windows(2).all(|w| w[1] < w[0]);
    let monotone = sup.iter().all(|row| row.windows(2).all(|w| w[1] < w[0]));
    let wall = clock.elapsed().as_secs_f64();
    Outcome {
        id: 11,
        name: "cascade Cauchy behaviour",
        pass: cauchy && monotone && wall < 300.0,
        detail: format!(
            "‖ϑ_k - ϑ_k+1‖_1 = [{}]; ess-sup L_h1 per stage (h = 1e-2, 1e-3, 1e-4): {}; {wall:.1} s (limit 300 s)",
            diffs.iter().map(|v| format!("{v:.4e}")).collect::<Vec<_>>().join(", "),
            sup.iter()
                .map(|r| format!("[{}]", r.iter().map(|v| format!("{v:.4e}")).collect::<Vec<_>>().join(", ")))
                .collect::<Vec<_>>()
                .join(" ")
        ),
    }
}

fn exponents() -> Outcome {
    let t = theta(2.0, 2.0, 2).expect("exponent");
    let (t1, t2) = theta_split(2.0, 2.0, 2).expect("exponents");
    let t3 = theta(2.0, 2.0, 3).expect("exponent");
    Outcome {
        id: 12,
        name: "exponent arithmetic",
        pass: t == 1.0 && t1 == 1.0 && t2 == 1.0 && (t3 - 1.0 / 3.0).abs() < 1e-15,
        detail: format!("θ = {t}, θ1 = {t1}, θ2 = {t2} (d = 2); θ = {t3:.15} (d = 3)"),
    }
}

fn main() -> ExitCode {
    let mut outcomes = Vec::new();
    let (states, dissipated, wall) = smooth_run(64, 0.5, 0.05);
    outcomes.extend(mass_and_energy(&states, &dissipated, wall));
    outcomes.push(domination());
    outcomes.push(helmholtz());
    outcomes.extend(kernel_scaling());
    outcomes.extend(lhp_decay());
    outcomes.push(weight_bounds(&states));
    let (fine, _, _) = smooth_run(128, 0.5, 0.5);
    outcomes.push(evf(states.last().expect("outputs"), fine.last().expect("outputs")));
    outcomes.push(commutator());
    outcomes.push(cascade());
    outcomes.push(exponents());
    outcomes.sort_by_key(|o| o.id);
    for o in &outcomes {
        report(o);
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
