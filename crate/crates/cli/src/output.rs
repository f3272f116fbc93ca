//! CSV tables and snapshot files written by the commands.
//!
//! `timeseries.csv` / `diagnostics.csv` columns:
//! `t, steps, mass_rho, mass_n, energy, dissipated, ratio_min, ratio_max,
//! l_h1_<h>..., e_w_<h>..., weight_violations, weight_clips, renormalization`
//! (`steps` is empty when re-diagnosing snapshots).

use std::fs::{self, File};
use std::path::{Path, PathBuf};

use dflx_core::diagnostics::DiagnosticsReport;
use dflx_core::io::save_state;
use dflx_core::solver::State;

use crate::error::CliError;

pub fn h_label(h: f64) -> String {
    format!("{h:e}")
}

pub fn writer(path: &Path) -> Result<csv::Writer<File>, CliError> {
    Ok(csv::Writer::from_path(path)?)
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    Ok(())
}

pub fn snapshot_path(dir: &Path, k: usize) -> PathBuf {
    dir.join(format!("snap_{k:05}.dflx"))
}

pub fn write_snapshot(dir: &Path, k: usize, s: &State) -> Result<(), CliError> {
    save_state(&snapshot_path(dir, k), s)?;
    Ok(())
}

pub fn write_report(path: &Path, report: &DiagnosticsReport, steps: Option<&[usize]>) -> Result<(), CliError> {
    let mut w = writer(path)?;
    let mut header: Vec<String> = ["t", "steps", "mass_rho", "mass_n", "energy", "dissipated", "ratio_min", "ratio_max"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend(report.hs.iter().map(|&h| format!("l_h1_{}", h_label(h))));
    header.extend(report.hs.iter().map(|&h| format!("e_w_{}", h_label(h))));
    header.extend(["weight_violations", "weight_clips", "renormalization"].map(String::from));
    w.write_record(&header)?;
    for (i, r) in report.rows.iter().enumerate() {
        let mut rec = vec![
            r.t.to_string(),
            steps.map_or(String::new(), |s| s[i].to_string()),
            r.mass_rho.to_string(),
            r.mass_n.to_string(),
            r.energy.to_string(),
            r.dissipated.to_string(),
            r.ratio_min.to_string(),
            r.ratio_max.to_string(),
        ];
        rec.extend(r.l_h1.iter().map(f64::to_string));
        rec.extend(r.e_w.iter().map(f64::to_string));
        rec.push(r.weight_violations.to_string());
        rec.push(r.weight_clips.to_string());
        rec.push(r.renormalization.to_string());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
