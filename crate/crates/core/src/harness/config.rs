use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::controller::FuzzyController;
use crate::defuzz::InferenceMode;
use crate::membership::CurveKind;
use crate::plant::{PlantParams, Scaler};
use crate::rulebase::{parse_rule_table, RuleTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// Triangular sets, clipped consequents.
    Conventional,
    /// Parabolic-II sets, scaled consequents.
    Parabolic,
}

impl Preset {
    pub fn kind(self) -> CurveKind {
        match self {
            Preset::Conventional => CurveKind::Triangular,
            Preset::Parabolic => CurveKind::ParabolicII,
        }
    }

    pub fn mode(self) -> InferenceMode {
        match self {
            Preset::Conventional => InferenceMode::Clip,
            Preset::Parabolic => InferenceMode::Scale,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Conventional => "conventional",
            Preset::Parabolic => "parabolic",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "conventional" => Ok(Preset::Conventional),
            "parabolic" => Ok(Preset::Parabolic),
            _ => Err(format!(
                "unknown preset {s:?} (expected conventional|parabolic)"
            )),
        }
    }
}

/// Controller selection in the config file: a preset plus optional overrides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ControllerConfig {
    pub preset: Preset,
    pub kind: Option<CurveKind>,
    pub mode: Option<InferenceMode>,
    /// Multiplies the defuzzified output before it becomes a force.
    pub output_sign: f64,
}

impl Default for ControllerConfig {
    fn default() -> Self {
        Self::preset(Preset::Parabolic)
    }
}

impl ControllerConfig {
    pub fn preset(preset: Preset) -> Self {
        ControllerConfig {
            preset,
            kind: None,
            mode: None,
            output_sign: 1.0,
        }
    }
}

/// Everything needed to build one controller and connect it to the plant.
#[derive(Debug, Clone, PartialEq)]
pub struct ControllerSpec {
    pub name: String,
    pub kind: CurveKind,
    pub mode: InferenceMode,
    pub rules: RuleTable,
    pub scaler: Scaler<f64>,
    pub output_sign: f64,
}

impl ControllerSpec {
    pub fn preset(preset: Preset, rules: RuleTable, scaler: Scaler<f64>) -> Self {
        Self::from_config(&ControllerConfig::preset(preset), rules, scaler)
    }

    pub fn from_config(cfg: &ControllerConfig, rules: RuleTable, scaler: Scaler<f64>) -> Self {
        let kind = cfg.kind.unwrap_or(cfg.preset.kind());
        let mode = cfg.mode.unwrap_or(cfg.preset.mode());
        let name = if cfg.kind.is_none() && cfg.mode.is_none() {
            cfg.preset.name().to_string()
        } else {
            format!("{}+{:?}", kind.name(), mode).to_lowercase()
        };
        ControllerSpec {
            name,
            kind,
            mode,
            rules,
            scaler,
            output_sign: cfg.output_sign,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        self.scaler
            .validate()
            .map_err(|e| HarnessError::Config(e.to_string()))?;
        if !(self.output_sign == 1.0 || self.output_sign == -1.0) {
            return Err(HarnessError::Config("output_sign must be 1 or -1".into()));
        }
        if self.mode == InferenceMode::Clip && self.kind != CurveKind::Triangular {
            return Err(HarnessError::Config(format!(
                "clip mode needs triangular sets, got {}",
                self.kind
            )));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<FuzzyController<f64>, HarnessError> {
        Ok(FuzzyController::new(self.kind, self.mode, self.rules)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlantConfig {
    pub cart_mass: f64,
    pub pole_mass: f64,
    pub half_length: f64,
    pub gravity: f64,
    pub dt: f64,
    /// Defaults to the scaler's `theta_max`.
    pub fall_angle: Option<f64>,
}

impl Default for PlantConfig {
    fn default() -> Self {
        let p = PlantParams::<f64>::default();
        PlantConfig {
            cart_mass: p.cart_mass,
            pole_mass: p.pole_mass,
            half_length: p.half_length,
            gravity: p.gravity,
            dt: p.dt,
            fall_angle: None,
        }
    }
}

impl PlantConfig {
    pub fn params(&self, scaler: &Scaler<f64>) -> Result<PlantParams<f64>, HarnessError> {
        let p = PlantParams {
            cart_mass: self.cart_mass,
            pole_mass: self.pole_mass,
            half_length: self.half_length,
            gravity: self.gravity,
            dt: self.dt,
            fall_angle: self.fall_angle.unwrap_or(scaler.theta_max),
        };
        p.validate()
            .map_err(|e| HarnessError::Config(e.to_string()))?;
        Ok(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    /// rad
    pub theta0: f64,
    /// rad/s
    #[serde(default)]
    pub omega0: f64,
}

impl Scenario {
    /// `±2°, ±5°, ±10°` from rest.
    pub fn default_suite() -> Vec<Scenario> {
        [2.0f64, -2.0, 5.0, -5.0, 10.0, -10.0]
            .into_iter()
            .map(|deg| Scenario {
                theta0: deg.to_radians(),
                omega0: 0.0,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SettleConfig {
    /// rad
    pub band: f64,
    /// s
    pub hold: f64,
}

impl Default for SettleConfig {
    fn default() -> Self {
        SettleConfig {
            band: 0.01,
            hold: 2.0,
        }
    }
}

/// The single JSON config document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HarnessConfig {
    pub plant: PlantConfig,
    pub scaler: Scaler<f64>,
    /// Controller used by `run`.
    pub controller: ControllerConfig,
    /// The two sides of `compare`.
    pub compare: [ControllerConfig; 2],
    /// Rule grid file; `None` uses the shipped table. Relative paths resolve
    /// against the config file's directory.
    pub rules: Option<PathBuf>,
    pub transpose_rules: bool,
    pub scenarios: Vec<Scenario>,
    /// s
    pub duration: f64,
    pub settle: SettleConfig,
    pub out: Option<PathBuf>,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            plant: PlantConfig::default(),
            scaler: Scaler::default(),
            controller: ControllerConfig::default(),
            compare: [
                ControllerConfig::preset(Preset::Conventional),
                ControllerConfig::preset(Preset::Parabolic),
            ],
            rules: None,
            transpose_rules: false,
            scenarios: Scenario::default_suite(),
            duration: 30.0,
            settle: SettleConfig::default(),
            out: None,
        }
    }
}

impl HarnessConfig {
    pub fn from_json(text: &str, path: &Path) -> Result<Self, HarnessError> {
        let mut cfg: HarnessConfig =
            serde_json::from_str(text).map_err(|source| HarnessError::Json {
                path: path.to_path_buf(),
                source,
            })?;
        if let (Some(rules), Some(dir)) = (&cfg.rules, path.parent()) {
            if rules.is_relative() {
                cfg.rules = Some(dir.join(rules));
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_json(&text, path)
    }

    /// The rule table this config selects, transposed if requested.
    pub fn rule_table(&self) -> Result<RuleTable, HarnessError> {
        let table = match &self.rules {
            None => RuleTable::default_table(),
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
                parse_rule_table(&text).map_err(|source| HarnessError::Rules {
                    path: path.clone(),
                    source,
                })?
            }
        };
        Ok(if self.transpose_rules {
            table.transposed()
        } else {
            table
        })
    }

    pub fn plant_params(&self) -> Result<PlantParams<f64>, HarnessError> {
        self.scaler
            .validate()
            .map_err(|e| HarnessError::Config(e.to_string()))?;
        self.plant.params(&self.scaler)
    }

    pub fn spec(&self, cfg: &ControllerConfig) -> Result<ControllerSpec, HarnessError> {
        let spec = ControllerSpec::from_config(cfg, self.rule_table()?, self.scaler);
        spec.validate()?;
        Ok(spec)
    }
}
