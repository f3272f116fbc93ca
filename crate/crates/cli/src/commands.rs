use std::path::Path;

use dflx_core::diagnostics::{audit_kernel_scaling, diagnose_trajectory, l_hp_with, Kernel, LhpOptions};
use dflx_core::io::load_state;
use dflx_core::pressure::{check_growth_bounds, ArtificialPressure, PressureLaw};
use dflx_core::solver::{regularize_initial_data, run, run_cascade_partial, CascadeParams, State};
use dflx_core::spectral::ScalarField;

use crate::config::Scenario;
use crate::error::CliError;
use crate::output::{ensure_dir, h_label, write_report, write_snapshot, writer};

/// Outputs of one integration: states with their cumulative dissipation
/// and step counts.
#[derive(Default)]
struct Trajectory {
    states: Vec<State>,
    dissipated: Vec<f64>,
    steps: Vec<usize>,
}

fn write_trajectory(
    dir: &Path,
    traj: &Trajectory,
    cp: &CascadeParams,
    law: &dyn PressureLaw,
    sc: &Scenario,
) -> Result<Vec<f64>, CliError> {
    if traj.states.is_empty() {
        return Ok(vec![f64::NAN; sc.diagnostics.hs.len()]);
    }
    let report = diagnose_trajectory(&traj.states, Some(&traj.dissipated), cp, law, &sc.diagnostics_config())?;
    write_report(&dir.join("timeseries.csv"), &report, Some(&traj.steps))?;
    // ess-sup over time of L_{h,1}(ϑ), per h.
    Ok((0..report.hs.len())
        .map(|j| report.rows.iter().map(|r| r.l_h1[j]).fold(0.0, f64::max))
        .collect())
}

pub fn simulate(sc: &Scenario, out: &Path) -> Result<(), CliError> {
    ensure_dir(out)?;
    let grid = sc.grid()?;
    let raw = sc.preset()?.build(grid)?;
    let cp = sc.single_stage()?;
    let law = ArtificialPressure::new(sc.law()?, cp.delta, cp.p0)?;
    let s0 = regularize_initial_data(&raw.rho0, &raw.n0, &raw.m0, cp.delta, cp.p0)?;
    let cfg = sc.run_config()?;
    let snap_dir = out.join("snapshots");
    if sc.run.snapshots {
        ensure_dir(&snap_dir)?;
    }
    let mut traj = Trajectory::default();
    let result = run(s0, &cp, &law, &cfg, |obs| {
        if sc.run.snapshots {
            write_snapshot(&snap_dir, traj.states.len(), obs.state).map_err(|e| match e {
                CliError::Core(c) => c,
                other => dflx_core::Error::Format(other.to_string()),
            })?;
        }
        traj.states.push(obs.state.clone());
        traj.dissipated.push(obs.dissipated);
        traj.steps.push(obs.steps);
        Ok(())
    });
    write_trajectory(out, &traj, &cp, &law, sc)?;
    result?;
    Ok(())
}

pub fn cascade(sc: &Scenario, out: &Path) -> Result<(), CliError> {
    ensure_dir(out)?;
    let grid = sc.grid()?;
    let raw = sc.preset()?.build(grid)?;
    let schedule = sc.schedule()?;
    let base = sc.law()?;
    let cfg = sc.run_config()?;
    let mut trajs: Vec<Trajectory> = (0..schedule.len()).map(|_| Trajectory::default()).collect();
    for k in 0..schedule.len() {
        ensure_dir(&out.join(format!("stage_{k}")))?;
    }
    let (outcome, failure) = run_cascade_partial(&raw, base.clone(), &schedule, &cfg, |ctx, obs| {
        let t = &mut trajs[ctx.index];
        if sc.run.snapshots {
            let dir = out.join(format!("stage_{}", ctx.index)).join("snapshots");
            std::fs::create_dir_all(&dir)?;
            write_snapshot(&dir, t.states.len(), obs.state).map_err(|e| match e {
                CliError::Core(c) => c,
                other => dflx_core::Error::Format(other.to_string()),
            })?;
        }
        t.states.push(obs.state.clone());
        t.dissipated.push(obs.dissipated);
        t.steps.push(obs.steps);
        Ok(())
    });

    let mut summary = writer(&out.join("summary.csv"))?;
    let mut header: Vec<String> = ["stage", "delta", "eps", "ell", "steps", "t_final", "l1_rho_n", "l1_theta"]
        .map(String::from)
        .to_vec();
    header.extend(sc.diagnostics.hs.iter().map(|&h| format!("ess_sup_l_h1_{}", h_label(h))));
    summary.write_record(&header)?;
    for (k, cp) in schedule.iter().enumerate() {
        let law = ArtificialPressure::new(base.clone(), cp.delta, cp.p0)?;
        let sup = write_trajectory(&out.join(format!("stage_{k}")), &trajs[k], cp, &law, sc)?;
        let Some(stage) = outcome.stages.get(k) else {
            // Completed stages only; the failed stage keeps its partial
            // time series.
            continue;
        };
        let diff = |v: &[f64]| if k == 0 { String::new() } else { v[k - 1].to_string() };
        let mut rec = vec![
            k.to_string(),
            cp.delta.to_string(),
            cp.eps.to_string(),
            cp.effective_ell(&grid).to_string(),
            stage.summary.steps.to_string(),
            stage.summary.final_state.t.to_string(),
            diff(&outcome.l1_rho_n),
            diff(&outcome.l1_theta),
        ];
        rec.extend(sup.iter().map(f64::to_string));
        summary.write_record(&rec)?;
    }
    summary.flush()?;
    match failure {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

pub fn check_pressure(sc: &Scenario, out: &Path) -> Result<(), CliError> {
    ensure_dir(out)?;
    let law = sc.law()?;
    let cfg = &sc.check_pressure;
    let r = check_growth_bounds(law.as_ref(), cfg.radius, cfg.samples).map_err(|e| CliError::Config(e.to_string()))?;
    let declared = law.params();
    let mut w = writer(&out.join("check_pressure.csv"))?;
    w.write_record([
        "law",
        "radius",
        "samples",
        "c0",
        "c1",
        "c2",
        "declared_c0",
        "declared_c1",
        "declared_c2",
        "lower_ok",
        "upper_ok",
        "derivative_ok",
        "lower_violations",
        "pass",
    ])?;
    w.write_record([
        r.law.clone(),
        r.radius.to_string(),
        r.samples.to_string(),
        r.c0.to_string(),
        r.c1.to_string(),
        r.c2.to_string(),
        declared.c0.to_string(),
        declared.c1.to_string(),
        declared.c2.to_string(),
        r.lower_ok.to_string(),
        r.upper_ok.to_string(),
        r.derivative_ok.to_string(),
        r.lower_violations.to_string(),
        r.pass().to_string(),
    ])?;
    w.flush()?;
    Ok(())
}

pub fn kernel_study(sc: &Scenario, out: &Path) -> Result<(), CliError> {
    ensure_dir(out)?;
    let grid = sc.grid()?;
    let ks = &sc.kernel_study;
    let f = match ks.field.as_str() {
        "constant" => ScalarField::constant(grid, sc.initial.rho + sc.initial.n),
        "sine" => {
            let k = ks.wavenumber as f64;
            ScalarField::from_fn(grid, |x| (2.0 * std::f64::consts::PI * k * x[0]).sin())
        }
        _ => {
            let raw = sc.preset()?.build(grid)?;
            raw.rho0.add(&raw.n0)
        }
    };
    let audit = audit_kernel_scaling(&ks.hs, grid.dim()).map_err(|e| CliError::Config(e.to_string()))?;
    let mut w = writer(&out.join("kernel_study.csv"))?;
    w.write_record(["h", "norm_l1", "abs_log_h", "ratio", "l_h1", "l_h2"])?;
    for row in &audit.rows {
        let k = Kernel::new(grid, row.h)?;
        let l1 = l_hp_with(&f, &k, 1.0, LhpOptions::default())?.value;
        let l2 = l_hp_with(&f, &k, 2.0, LhpOptions::default())?.value;
        w.write_record([
            row.h.to_string(),
            row.norm_l1.to_string(),
            row.h.ln().abs().to_string(),
            row.ratio.to_string(),
            l1.to_string(),
            l2.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Re-run the diagnostics on the `*.dflx` files of `snapshots`, in file-name
/// order.
pub fn diagnose(sc: &Scenario, snapshots: &Path, out: &Path) -> Result<(), CliError> {
    ensure_dir(out)?;
    let mut files: Vec<_> = std::fs::read_dir(snapshots)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", snapshots.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "dflx"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::Config(format!("no snapshots in {}", snapshots.display())));
    }
    let states = files
        .iter()
        .map(|p| load_state(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display()))))
        .collect::<Result<Vec<_>, _>>()?;
    let cp = sc.single_stage()?;
    let law = ArtificialPressure::new(sc.law()?, cp.delta, cp.p0)?;
    let report = diagnose_trajectory(&states, None, &cp, &law, &sc.diagnostics_config())?;
    write_report(&out.join("diagnostics.csv"), &report, None)?;
    Ok(())
}
