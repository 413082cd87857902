use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use parafuzz::harness::{
    compare, fuzziness_report, fuzziness_table, run_closed_loop, write_curves, write_run,
    HarnessConfig, Preset, RunOptions, Scenario,
};
use parafuzz::membership::CurveKind;

/// Fuzzy inverted-pendulum controllers: triangular clip vs Parabolic-II scale.
#[derive(Parser)]
#[command(name = "parafuzz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// JSON config document.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Rule grid file (defaults to the shipped table).
    #[arg(long)]
    rules: Option<PathBuf>,
    /// Swap rule grid rows and columns.
    #[arg(long)]
    transpose_rules: bool,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn load(&self) -> Result<HarnessConfig> {
        let mut cfg = match &self.config {
            Some(path) => HarnessConfig::load(path)?,
            None => HarnessConfig::default(),
        };
        if self.rules.is_some() {
            cfg.rules = self.rules.clone();
        }
        cfg.transpose_rules |= self.transpose_rules;
        if self.out.is_some() {
            cfg.out = self.out.clone();
        }
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// One closed-loop run: trajectory CSV plus metrics JSON.
    Run {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        preset: Option<Preset>,
        /// Initial angle, rad.
        #[arg(long, allow_hyphen_values = true)]
        theta0: Option<f64>,
        /// Initial angular velocity, rad/s.
        #[arg(long, allow_hyphen_values = true)]
        omega0: Option<f64>,
        /// Simulated seconds.
        #[arg(long)]
        duration: Option<f64>,
    },
    /// Paired runs of two controllers over a scenario suite.
    Compare {
        #[command(flatten)]
        common: Common,
        /// Single scenario instead of the configured suite, rad.
        #[arg(long, allow_hyphen_values = true)]
        theta0: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        omega0: Option<f64>,
        #[arg(long)]
        duration: Option<f64>,
        /// Skip the per-cycle envelope-centroid accuracy measurement.
        #[arg(long)]
        no_accuracy: bool,
    },
    /// Degree-of-fuzziness table for the four membership families.
    Fuzziness {
        #[command(flatten)]
        common: Common,
        /// Print JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Sample primary and consequent sets to CSV for plotting.
    Curves {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        preset: Option<Preset>,
        /// Sample count across the universe.
        #[arg(long, default_value_t = 401)]
        samples: usize,
        /// Angle used to fire the consequent sets, rad.
        #[arg(long, allow_hyphen_values = true)]
        theta0: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        omega0: Option<f64>,
    },
}

fn out_dir(cfg: &HarnessConfig) -> PathBuf {
    cfg.out.clone().unwrap_or_else(|| PathBuf::from("out"))
}

fn real_main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            common,
            preset,
            theta0,
            omega0,
            duration,
        } => {
            let mut cfg = common.load()?;
            if let Some(p) = preset {
                cfg.controller.preset = p;
                cfg.controller.kind = None;
                cfg.controller.mode = None;
            }
            let scenario = cfg.scenarios.first().copied().unwrap_or(Scenario {
                theta0: 0.0,
                omega0: 0.0,
            });
            let theta0 = theta0.unwrap_or(scenario.theta0);
            let omega0 = omega0.unwrap_or(scenario.omega0);
            let duration = duration.unwrap_or(cfg.duration);
            let spec = cfg.spec(&cfg.controller)?;
            let plant = cfg.plant_params()?;
            let opts = RunOptions {
                settle: cfg.settle,
                measure_accuracy: false,
            };
            let outcome = run_closed_loop(&spec, &plant, theta0, omega0, duration, &opts)?;
            let dir = out_dir(&cfg);
            let files = write_run(&dir, &outcome)?;
            let m = &outcome.metrics;
            println!(
                "{}: settled={} settling_time={} fell={} peak_theta={:.5} ops/cycle={:.2} cycles={} wall_ns/cycle={}",
                m.controller,
                m.settled,
                m.settling_time.map_or("-".into(), |t| format!("{t:.2}")),
                m.fell,
                m.peak_theta,
                m.mean_ops(),
                m.cycles,
                m.wall_ns_per_cycle
            );
            for f in files {
                println!("wrote {}", f.display());
            }
        }
        Command::Compare {
            common,
            theta0,
            omega0,
            duration,
            no_accuracy,
        } => {
            let cfg = common.load()?;
            let a = cfg.spec(&cfg.compare[0])?;
            let b = cfg.spec(&cfg.compare[1])?;
            let plant = cfg.plant_params()?;
            let scenarios = match theta0 {
                Some(theta0) => vec![Scenario {
                    theta0,
                    omega0: omega0.unwrap_or(0.0),
                }],
                None => cfg.scenarios.clone(),
            };
            anyhow::ensure!(!scenarios.is_empty(), "no scenarios to compare");
            let opts = RunOptions {
                settle: cfg.settle,
                measure_accuracy: !no_accuracy,
            };
            let report = compare(
                &a,
                &b,
                &plant,
                &scenarios,
                duration.unwrap_or(cfg.duration),
                &opts,
            );
            let table = report.to_table();
            print!("{table}");
            let dir = out_dir(&cfg);
            std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            std::fs::write(dir.join("compare.json"), report.to_json())?;
            std::fs::write(dir.join("compare.txt"), &table)?;
            println!("wrote {}", dir.join("compare.json").display());
        }
        Command::Fuzziness { common, json } => {
            let cfg = common.load()?;
            let rows = fuzziness_report();
            let json_text = serde_json::to_string_pretty(&rows)? + "\n";
            let table = fuzziness_table(&rows);
            if json {
                print!("{json_text}");
            } else {
                print!("{table}");
            }
            if let Some(dir) = &cfg.out {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join("fuzziness.json"), &json_text)?;
                std::fs::write(dir.join("fuzziness.txt"), &table)?;
            }
        }
        Command::Curves {
            common,
            preset,
            samples,
            theta0,
            omega0,
        } => {
            let mut cfg = common.load()?;
            if let Some(p) = preset {
                cfg.controller.preset = p;
                cfg.controller.kind = None;
                cfg.controller.mode = None;
            }
            let spec = cfg.spec(&cfg.controller)?;
            let controller = spec.build()?;
            let dir = out_dir(&cfg);
            let angle = spec.scaler.theta(theta0.unwrap_or(0.05));
            let vel = spec.scaler.omega(omega0.unwrap_or(0.2));
            let mut files = write_curves(
                &dir,
                controller.input(),
                Some((&spec.name, &controller, angle, vel)),
                samples,
            )?;
            // The other primary family, so both set shapes are always available.
            let other = if spec.kind == CurveKind::Triangular {
                CurveKind::ParabolicII
            } else {
                CurveKind::Triangular
            };
            let other = parafuzz::make_partition(other, -1.0, 1.0)?;
            files.extend(write_curves(&dir, &other, None, samples)?);
            for f in files {
                println!("wrote {}", f.display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match real_main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
