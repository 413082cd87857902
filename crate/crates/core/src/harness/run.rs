use std::time::Instant;

use log::{debug, warn};
use serde::{Deserialize, Serialize};

use super::{ControllerSpec, HarnessError, SettleConfig};
use crate::plant::{step, PendulumState, PlantError, PlantParams};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunOptions {
    pub settle: SettleConfig,
    /// Also evaluate the envelope centroid every cycle and record the gap.
    pub measure_accuracy: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRow {
    pub t: f64,
    pub theta: f64,
    pub omega: f64,
    pub force_normalized: f64,
    #[serde(rename = "force_N")]
    pub force_n: f64,
    pub fired_rule_count: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub rows: Vec<TrajectoryRow>,
}

/// `|centroid_defuzz - reference_centroid|` over the cycles where a rule fired.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AccuracyStats {
    pub mean_gap: f64,
    pub max_gap: f64,
    pub samples: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub controller: String,
    pub theta0: f64,
    pub omega0: f64,
    pub settled: bool,
    /// s; present when `settled`.
    pub settling_time: Option<f64>,
    pub peak_theta: f64,
    pub fell: bool,
    /// Mean counted ops per defuzzification, rounded.
    pub ops_per_cycle: u64,
    pub ops_total: u64,
    /// Cycles in which at least one rule fired.
    pub defuzz_cycles: u64,
    /// Cycles in which no rule fired and zero force was applied.
    pub silent_cycles: u64,
    pub cycles: u64,
    pub accuracy: Option<AccuracyStats>,
    /// Median controller wall time per cycle. Kept out of the serialized
    /// metrics so identical runs produce identical files.
    #[serde(skip)]
    pub wall_ns_per_cycle: u64,
}

impl RunMetrics {
    /// Exact mean ops per defuzzification.
    pub fn mean_ops(&self) -> f64 {
        if self.defuzz_cycles == 0 {
            0.0
        } else {
            self.ops_total as f64 / self.defuzz_cycles as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub trajectory: Trajectory,
    pub metrics: RunMetrics,
}

/// Settling time: the first sample time after which `|theta|` stays inside
/// `band` through the end of the run, provided that window lasts `hold`.
fn settling_time(rows: &[TrajectoryRow], settle: &SettleConfig, fell: bool) -> Option<f64> {
    if fell || rows.is_empty() {
        return None;
    }
    let end = rows.last().map(|r| r.t)?;
    let first_inside = rows
        .iter()
        .rposition(|r| r.theta.abs() >= settle.band)
        .map_or(0, |i| i + 1);
    let t = rows.get(first_inside)?.t;
    // Small slack so a hold of exactly N steps is not lost to rounding in t.
    (end - t + 1e-9 >= settle.hold).then_some(t)
}

fn median(mut v: Vec<u64>) -> u64 {
    if v.is_empty() {
        return 0;
    }
    v.sort_unstable();
    v[v.len() / 2]
}

pub fn run_closed_loop(
    spec: &ControllerSpec,
    plant: &PlantParams<f64>,
    theta0: f64,
    omega0: f64,
    duration: f64,
    opts: &RunOptions,
) -> Result<RunOutcome, HarnessError> {
    spec.validate()?;
    plant
        .validate()
        .map_err(|e| HarnessError::Config(e.to_string()))?;
    if !duration.is_finite() || duration <= 0.0 {
        return Err(HarnessError::Config(format!(
            "duration must be > 0, got {duration}"
        )));
    }
    if !theta0.is_finite() || theta0.abs() > spec.scaler.theta_max {
        return Err(HarnessError::Config(format!(
            "|theta0| = {} exceeds theta_max = {}",
            theta0.abs(),
            spec.scaler.theta_max
        )));
    }
    if !omega0.is_finite() {
        return Err(HarnessError::Config("omega0 must be finite".into()));
    }

    let controller = spec.build()?;
    let scaler = spec.scaler;
    let cycles_planned = (duration / plant.dt).round().max(1.0) as u64;

    let mut state = PendulumState::at_rest(theta0, omega0);
    let mut rows = Vec::with_capacity(cycles_planned as usize + 1);
    let mut wall = Vec::with_capacity(cycles_planned as usize);
    let mut ops_total = 0u64;
    let mut defuzz_cycles = 0u64;
    let mut silent_cycles = 0u64;
    let mut gap_sum = 0.0;
    let mut gap_max: f64 = 0.0;
    let mut fell = false;
    let mut cycles = 0u64;

    loop {
        let started = Instant::now();
        let out = controller.control(scaler.theta(state.theta), scaler.omega(state.omega))?;
        let u = out.crisp.unwrap_or(0.0) * spec.output_sign;
        let force = scaler.denormalize_force(u);
        let elapsed = started.elapsed().as_nanos() as u64;

        rows.push(TrajectoryRow {
            t: state.t,
            theta: state.theta,
            omega: state.omega,
            force_normalized: u,
            force_n: force,
            fired_rule_count: out.fired.fired,
        });
        if fell || cycles == cycles_planned {
            break;
        }

        wall.push(elapsed);
        match out.crisp {
            Some(y) => {
                defuzz_cycles += 1;
                ops_total += out.ops.total();
                if opts.measure_accuracy {
                    let gap = (y - controller.reference(&out.fired)?).abs();
                    gap_sum += gap;
                    gap_max = gap_max.max(gap);
                }
            }
            None => {
                silent_cycles += 1;
                debug!("t={:.3}: no rule fired, applying zero force", state.t);
            }
        }

        // Keep t on the integer grid so long runs do not accumulate drift.
        cycles += 1;
        let t_next = cycles as f64 * plant.dt;
        state = match step(&state, force, plant) {
            Ok(next) => PendulumState { t: t_next, ..next },
            Err(PlantError::PoleFell(next)) => {
                fell = true;
                PendulumState { t: t_next, ..next }
            }
            Err(e) => return Err(HarnessError::Config(e.to_string())),
        };
    }

    if silent_cycles > 0 {
        warn!(
            "{}: {} of {} cycles fired no rule (zero force applied)",
            spec.name, silent_cycles, cycles
        );
    }

    let peak_theta = rows.iter().map(|r| r.theta.abs()).fold(0.0, f64::max);
    let settling = settling_time(&rows, &opts.settle, fell);
    let metrics = RunMetrics {
        controller: spec.name.clone(),
        theta0,
        omega0,
        settled: settling.is_some(),
        settling_time: settling,
        peak_theta,
        fell,
        ops_per_cycle: if defuzz_cycles == 0 {
            0
        } else {
            (ops_total as f64 / defuzz_cycles as f64).round() as u64
        },
        ops_total,
        defuzz_cycles,
        silent_cycles,
        cycles,
        accuracy: opts.measure_accuracy.then(|| AccuracyStats {
            mean_gap: if defuzz_cycles == 0 {
                0.0
            } else {
                gap_sum / defuzz_cycles as f64
            },
            max_gap: gap_max,
            samples: defuzz_cycles,
        }),
        wall_ns_per_cycle: median(wall),
    };
    Ok(RunOutcome {
        trajectory: Trajectory { rows },
        metrics,
    })
}
