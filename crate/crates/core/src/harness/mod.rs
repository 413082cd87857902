//! Closed-loop simulation, head-to-head comparison, and report generation
//! behind the `parafuzz` CLI.

mod compare;
mod config;
mod output;
mod report;
mod run;

use std::path::PathBuf;

use thiserror::Error;

pub use compare::{compare, ComparisonReport, ScenarioComparison};
pub use config::{
    ControllerConfig, ControllerSpec, HarnessConfig, PlantConfig, Preset, Scenario, SettleConfig,
};
pub use output::{write_curves, write_run};
pub use report::{
    consequent_curves, fuzziness_report, fuzziness_table, FuzzinessRow, PRINTED_TOLERANCE,
};
pub use run::{
    run_closed_loop, AccuracyStats, RunMetrics, RunOptions, RunOutcome, Trajectory, TrajectoryRow,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config: {0}")]
    Config(String),
    #[error("reading {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("rule file {path}")]
    Rules {
        path: PathBuf,
        #[source]
        source: crate::rulebase::RuleParseError,
    },
    #[error("config {path}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Membership(#[from] crate::membership::MembershipError),
    #[error(transparent)]
    Defuzz(#[from] crate::defuzz::DefuzzError),
}

impl HarnessError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }
}
