use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;

use super::report::{consequent_curves, label_columns};
use super::{HarnessError, RunOutcome};
use crate::controller::FuzzyController;
use crate::membership::Partition;

fn ensure_dir(dir: &Path) -> Result<(), HarnessError> {
    fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))
}

fn write_text(path: PathBuf, text: &str) -> Result<PathBuf, HarnessError> {
    fs::write(&path, text).map_err(|e| HarnessError::io(&path, e))?;
    Ok(path)
}

/// Writes `trajectory.csv`, `metrics.json` and `timing.json` into `dir`.
/// The first two depend only on the inputs; wall-clock timing goes to the
/// third.
pub fn write_run(dir: &Path, outcome: &RunOutcome) -> Result<Vec<PathBuf>, HarnessError> {
    ensure_dir(dir)?;
    let traj = dir.join("trajectory.csv");
    let mut w = csv::Writer::from_path(&traj)?;
    for row in &outcome.trajectory.rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| HarnessError::io(&traj, e))?;

    let metrics = serde_json::to_string_pretty(&outcome.metrics).expect("metrics serialize") + "\n";
    let metrics = write_text(dir.join("metrics.json"), &metrics)?;
    let timing = json!({
        "controller": outcome.metrics.controller,
        "wall_ns_per_cycle": outcome.metrics.wall_ns_per_cycle,
        "cycles": outcome.metrics.cycles,
    });
    let timing = write_text(dir.join("timing.json"), &(timing.to_string() + "\n"))?;
    Ok(vec![traj, metrics, timing])
}

/// Writes `primary_<kind>.csv` for a partition and, when given,
/// `consequent_<name>.csv` for one firing of `controller`.
pub fn write_curves(
    dir: &Path,
    partition: &Partition<f64>,
    consequents: Option<(&str, &FuzzyController<f64>, f64, f64)>,
    samples: usize,
) -> Result<Vec<PathBuf>, HarnessError> {
    ensure_dir(dir)?;
    let mut written = Vec::new();

    let primary = dir.join(format!("primary_{}.csv", partition.kind.name()));
    let mut w = csv::Writer::from_path(&primary)?;
    w.write_record(std::iter::once("x").chain(label_columns()))?;
    for (x, mu) in partition.sample(samples) {
        w.write_record(
            std::iter::once(x)
                .chain(mu.values().iter().copied())
                .map(|v| v.to_string()),
        )?;
    }
    w.flush().map_err(|e| HarnessError::io(&primary, e))?;
    written.push(primary);

    if let Some((name, controller, angle, vel)) = consequents {
        let path = dir.join(format!("consequent_{name}.csv"));
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(
            std::iter::once("x")
                .chain(label_columns())
                .chain(std::iter::once("envelope")),
        )?;
        for (x, cols, env) in consequent_curves(controller, angle, vel, samples) {
            let vals = std::iter::once(x).chain(cols).chain(std::iter::once(env));
            w.write_record(vals.map(|v| v.to_string()))?;
        }
        w.flush().map_err(|e| HarnessError::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}
