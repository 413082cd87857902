use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::{run_closed_loop, ControllerSpec, RunMetrics, RunOptions, Scenario};
use crate::plant::PlantParams;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioComparison {
    pub theta0: f64,
    pub omega0: f64,
    pub a: Result<RunMetrics, String>,
    pub b: Result<RunMetrics, String>,
    /// Mean ops per defuzzification, `a / b`.
    pub ops_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub a: String,
    pub b: String,
    pub duration: f64,
    pub scenarios: Vec<ScenarioComparison>,
}

/// Runs both controllers on every scenario. Scenarios execute in parallel;
/// rows come back in scenario order, and a failing scenario is recorded
/// without stopping the rest.
pub fn compare(
    a: &ControllerSpec,
    b: &ControllerSpec,
    plant: &PlantParams<f64>,
    scenarios: &[Scenario],
    duration: f64,
    opts: &RunOptions,
) -> ComparisonReport {
    let run = |spec: &ControllerSpec, s: &Scenario| {
        run_closed_loop(spec, plant, s.theta0, s.omega0, duration, opts)
            .map(|o| o.metrics)
            .map_err(|e| e.to_string())
    };
    let scenarios = scenarios
        .par_iter()
        .map(|s| {
            let (ra, rb) = (run(a, s), run(b, s));
            let ops_ratio = match (&ra, &rb) {
                (Ok(ma), Ok(mb)) if mb.mean_ops() > 0.0 => Some(ma.mean_ops() / mb.mean_ops()),
                _ => None,
            };
            ScenarioComparison {
                theta0: s.theta0,
                omega0: s.omega0,
                a: ra,
                b: rb,
                ops_ratio,
            }
        })
        .collect();
    ComparisonReport {
        a: a.name.clone(),
        b: b.name.clone(),
        duration,
        scenarios,
    }
}

fn fmt_opt(v: Option<f64>, prec: usize) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.prec$}"))
}

impl ComparisonReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Plain-text table, one line per controller per scenario.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "{:>8} {:>7} {:<14} {:>7} {:>5} {:>9} {:>9} {:>8} {:>7} {:>9} {:>9} {:>9}",
            "theta0",
            "omega0",
            "controller",
            "settled",
            "fell",
            "t_settle",
            "peak",
            "ops/cyc",
            "silent",
            "gap_mean",
            "gap_max",
            "ops_ratio"
        )
        .unwrap();
        for row in &self.scenarios {
            for (i, side) in [&row.a, &row.b].into_iter().enumerate() {
                let ratio = if i == 0 {
                    fmt_opt(row.ops_ratio, 3)
                } else {
                    String::new()
                };
                match side {
                    Ok(m) => writeln!(
                        s,
                        "{:>8.4} {:>7.3} {:<14} {:>7} {:>5} {:>9} {:>9.5} {:>8.2} {:>7} {:>9} {:>9} {:>9}",
                        row.theta0,
                        row.omega0,
                        m.controller,
                        m.settled,
                        m.fell,
                        fmt_opt(m.settling_time, 2),
                        m.peak_theta,
                        m.mean_ops(),
                        m.silent_cycles,
                        fmt_opt(m.accuracy.map(|a| a.mean_gap), 5),
                        fmt_opt(m.accuracy.map(|a| a.max_gap), 5),
                        ratio
                    )
                    .unwrap(),
                    Err(e) => {
                        let name = if i == 0 { &self.a } else { &self.b };
                        writeln!(s, "{:>8.4} {:>7.3} {:<14} error: {e}", row.theta0, row.omega0, name).unwrap()
                    }
                }
            }
        }
        s
    }
}
