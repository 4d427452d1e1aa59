//! Flow runs written to a trajectory directory, and the report view of one.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use elastica_core::energy::fenchel_length_lower_bound;
use elastica_core::flow::{self, FlowState};
use elastica_core::{curve, DiscreteCurve, EnergyReport};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{AppError, AppResult};
use crate::io;
use crate::manifest::RunManifest;

pub const LOG_NAME: &str = "energy_log.csv";

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub manifest: RunManifest,
    pub report: EnergyReport,
    pub curve: DiscreteCurve,
}

fn write(path: PathBuf, text: String) -> AppResult<()> {
    fs::write(&path, text).map_err(AppError::io(path))
}

/// Runs the flow, writing snapshots, `energy_log.csv` and
/// `run_manifest.json` into `out`. On a flow failure the last good state
/// is still written and the manifest records the error.
pub fn run_flow(cfg: &RunConfig, out: &Path) -> AppResult<RunOutcome> {
    cfg.validate()?;
    let initial = cfg.curve.build(cfg.n_samples, cfg.seed)?;
    fs::create_dir_all(out).map_err(AppError::io(out))?;

    let started = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0);
    let clock = Instant::now();
    let mut rows = Vec::new();
    let mut written = None;
    let mut io_error = None;
    // `last` skips a state that was already written at its cadence.
    let mut snapshot = |s: &FlowState, last: bool| {
        if last && (written == Some(s.steps_accepted) || !s.report.penalized.is_finite()) {
            return;
        }
        if io_error.is_none() {
            let path = out.join(io::snapshot_name(s.t));
            io_error = io::write_curve(&path, &s.curve).err();
            written = Some(s.steps_accepted);
        }
    };
    let result = flow::run_observed(&cfg.flow(), &initial, |s| {
        rows.push(io::log_row(s.t, &s.report));
        if s.steps_accepted % cfg.snapshot_every == 0 {
            snapshot(s, false);
        }
    });

    let mut manifest = RunManifest::new(cfg.clone());
    manifest.started_unix = started;
    let (last, failure) = match result {
        Ok((state, term)) => {
            manifest.termination = term.as_str().into();
            (state, None)
        }
        Err(e) => {
            manifest.termination = "error".into();
            manifest.error = Some(e.to_string());
            ((*e.last).clone(), Some(e))
        }
    };
    snapshot(&last, true);
    if let Some(e) = io_error {
        return Err(e);
    }
    manifest.wall_clock_seconds = clock.elapsed().as_secs_f64();
    manifest.t_final = last.t;
    manifest.steps_accepted = last.steps_accepted;
    manifest.steps_rejected = last.steps_rejected;
    write(out.join(LOG_NAME), io::energy_log_to_csv(&rows))?;
    manifest.write(out)?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    Ok(RunOutcome { manifest, report: last.report, curve: last.curve })
}

/// Snapshot files of a trajectory directory in time order.
pub fn snapshots(dir: &Path) -> AppResult<Vec<PathBuf>> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(AppError::io(dir))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.starts_with("curve_t") && n.ends_with(".json"))
        })
        .collect();
    v.sort();
    Ok(v)
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportSummary {
    /// Reference length (2π)²/(2E_λ(0)).
    pub l0: f64,
    pub p: f64,
    pub alpha: f64,
    pub final_snapshot: PathBuf,
    pub final_t: f64,
    pub final_penalized: f64,
    pub final_grad_l2: f64,
}

/// Writes `energy.csv`, `grad.csv`, `final_curve.csv` and `summary.json`
/// into `out` (default `<dir>/report`). The final curve is translated and
/// dilated onto (0, 2·L0) and resampled at constant speed.
pub fn report(dir: &Path, out: Option<&Path>) -> AppResult<ReportSummary> {
    let rows = io::read_energy_log(&dir.join(LOG_NAME))?;
    let (first, last) = match (rows.first(), rows.last()) {
        (Some(a), Some(b)) => (*a, *b),
        _ => return Err(AppError::format(dir.join(LOG_NAME), "empty energy log")),
    };
    let final_snapshot =
        snapshots(dir)?.pop().ok_or_else(|| AppError::format(dir, "no curve snapshots in trajectory"))?;
    let c = io::read_curve(&final_snapshot)?;
    let l0 = fenchel_length_lower_bound(first[2])?;
    let (normalized, p, alpha) = flow::normalize_subconvergence(&c, l0)?;
    let normalized = curve::reparametrize_constant_speed(&normalized)?;

    let out = out.map(Path::to_path_buf).unwrap_or_else(|| dir.join("report"));
    fs::create_dir_all(&out).map_err(AppError::io(&out))?;
    write(out.join("energy.csv"), io::xy_table(["t", "penalized"], rows.iter().map(|r| (r[0], r[2]))))?;
    write(out.join("grad.csv"), io::xy_table(["t", "grad_l2"], rows.iter().map(|r| (r[0], r[5]))))?;
    write(out.join("final_curve.csv"), io::curve_to_csv(&normalized))?;
    let summary = ReportSummary {
        l0,
        p,
        alpha,
        final_snapshot,
        final_t: last[0],
        final_penalized: last[2],
        final_grad_l2: last[5],
    };
    let mut text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    text.push('\n');
    write(out.join("summary.json"), text)?;
    Ok(summary)
}
