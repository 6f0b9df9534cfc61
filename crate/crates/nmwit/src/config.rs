//! Run configuration: a JSON file and command-line flags, merged with flags
//! taking precedence. The merged, defaulted configuration is echoed into
//! every output file.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use nmwit_core::entanglement::GridAxis;
use nmwit_core::lindblad::{CoefficientModel, LindbladGenerator};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::formats::GeneratorSpec;

pub const SEED_ENV: &str = "NMWIT_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Dephasing,
    Eternal,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    #[default]
    Csv,
}

/// Every knob, all optional. Used verbatim as the config-file schema and as
/// the flag set shared by all subcommands.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    /// Built-in scenario or `custom` with --generator.
    #[arg(long, value_enum)]
    pub scenario: Option<Scenario>,
    /// Generator description file (JSON) for the custom scenario.
    #[arg(long)]
    pub generator: Option<PathBuf>,
    /// Constant dephasing rate for the dephasing scenario.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma_d: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_stop: Option<f64>,
    #[arg(long)]
    pub t_steps: Option<usize>,
    /// Explicit comma-separated time grid; overrides the range flags.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub t_list: Option<Vec<f64>>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Falls back to $NMWIT_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma2: Option<f64>,
    /// Werner weight for single-point entanglement detection.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma1_start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma1_stop: Option<f64>,
    #[arg(long)]
    pub gamma1_steps: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma2_start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma2_stop: Option<f64>,
    #[arg(long)]
    pub gamma2_steps: Option<usize>,
    /// Pure-state samples per positivity check.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Random draws for the Proposition-1 style adjoint identity suite.
    #[arg(long)]
    pub draws: Option<usize>,
}

macro_rules! overlay {
    ($flags:expr, $file:expr, $($field:ident),+) => {
        Settings { $($field: $flags.$field.or($file.$field)),+ }
    };
}

impl Settings {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("config file: {e}")))
    }

    /// Flags win over file values.
    pub fn merged_over(self, file: Settings) -> Settings {
        overlay!(
            self, file, scenario, generator, gamma_d, epsilon, t_start, t_stop, t_steps, t_list,
            tolerance, seed, output, format, gamma1, gamma2, p, gamma1_start, gamma1_stop,
            gamma1_steps, gamma2_start, gamma2_stop, gamma2_steps, samples, draws
        )
    }

    fn seed_or_env(&self) -> Result<u64, CliError> {
        if let Some(seed) = self.seed {
            return Ok(seed);
        }
        match std::env::var(SEED_ENV) {
            Ok(text) => text
                .trim()
                .parse()
                .map_err(|_| CliError::Config(format!("{SEED_ENV} must be an unsigned integer, got '{text}'"))),
            Err(_) => Ok(0),
        }
    }

    fn tolerance(&self) -> Result<f64, CliError> {
        let tolerance = self.tolerance.unwrap_or(nmwit_core::DEFAULT_TOLERANCE);
        if !(tolerance > 0.0) {
            return Err(CliError::Config(format!("tolerance must be > 0, got {tolerance}")));
        }
        Ok(tolerance)
    }

    pub fn scenario_config(&self) -> Result<ScenarioConfig, CliError> {
        let scenario = self.scenario.unwrap_or(Scenario::Eternal);
        if scenario == Scenario::Custom && self.generator.is_none() {
            return Err(CliError::Config("custom scenario requires --generator".into()));
        }
        let epsilon = self.epsilon.unwrap_or(nmwit_core::DEFAULT_EPSILON);
        if !(epsilon > 0.0) {
            return Err(CliError::Config(format!("epsilon must be > 0, got {epsilon}")));
        }
        let t_grid = match &self.t_list {
            Some(list) => list.clone(),
            None => {
                let steps = self.t_steps.unwrap_or(1);
                if steps == 0 {
                    return Err(CliError::Config("t-steps must be >= 1".into()));
                }
                let start = self.t_start.unwrap_or(1.0);
                let stop = self.t_stop.unwrap_or(start);
                GridAxis::new(start, stop, steps).values()
            }
        };
        if t_grid.is_empty() {
            return Err(CliError::Config("time grid is empty".into()));
        }
        if t_grid.windows(2).any(|w| w[1] < w[0]) {
            return Err(CliError::Config("time grid must be ascending".into()));
        }
        Ok(ScenarioConfig {
            scenario,
            generator: self.generator.clone(),
            gamma_d: self.gamma_d.unwrap_or(-1.0),
            epsilon,
            t_grid,
            tolerance: self.tolerance()?,
            seed: self.seed_or_env()?,
            output: self.output.clone(),
            format: self.format.unwrap_or_default(),
        })
    }

    pub fn entangle_config(&self) -> Result<EntangleConfig, CliError> {
        let axis = |start: Option<f64>, stop: Option<f64>, steps: Option<usize>, default: (f64, f64, usize)| {
            let steps = steps.unwrap_or(default.2);
            if steps == 0 {
                return Err(CliError::Config("grid steps must be >= 1".into()));
            }
            Ok(AxisConfig {
                start: start.unwrap_or(default.0),
                stop: stop.unwrap_or(default.1),
                steps,
            })
        };
        let samples = self.samples.unwrap_or(nmwit_core::entanglement::DEFAULT_POSITIVITY_SAMPLES);
        if samples == 0 {
            return Err(CliError::Config("samples must be >= 1".into()));
        }
        if let Some(p) = self.p {
            if !(0.0..=1.0).contains(&p) {
                return Err(CliError::Config(format!("p must lie in [0, 1], got {p}")));
            }
        }
        Ok(EntangleConfig {
            gamma1: self.gamma1.unwrap_or(0.5),
            gamma2: self.gamma2.unwrap_or(0.5),
            p: self.p,
            gamma1_axis: axis(self.gamma1_start, self.gamma1_stop, self.gamma1_steps, (0.0, 0.6, 61))?,
            gamma2_axis: axis(self.gamma2_start, self.gamma2_stop, self.gamma2_steps, (0.0, 1.0, 101))?,
            samples,
            tolerance: self.tolerance()?,
            seed: self.seed_or_env()?,
            output: self.output.clone(),
            format: self.format.unwrap_or_default(),
        })
    }

    pub fn prop1_config(&self) -> Result<Prop1Config, CliError> {
        let draws = self.draws.unwrap_or(100);
        if draws == 0 {
            return Err(CliError::Config("draws must be >= 1".into()));
        }
        Ok(Prop1Config {
            draws,
            seed: self.seed_or_env()?,
            output: self.output.clone(),
            format: self.format.unwrap_or_default(),
        })
    }
}

/// Effective configuration of a time-grid scenario run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub generator: Option<PathBuf>,
    pub gamma_d: f64,
    pub epsilon: f64,
    pub t_grid: Vec<f64>,
    pub tolerance: f64,
    pub seed: u64,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl ScenarioConfig {
    pub fn generator(&self) -> Result<LindbladGenerator, CliError> {
        Ok(match self.scenario {
            Scenario::Dephasing => LindbladGenerator::dephasing(CoefficientModel::Constant(self.gamma_d)),
            Scenario::Eternal => LindbladGenerator::eternal(),
            Scenario::Custom => {
                let path = self
                    .generator
                    .as_deref()
                    .ok_or_else(|| CliError::Config("custom scenario requires --generator".into()))?;
                GeneratorSpec::load(path)?.build()?
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxisConfig {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl From<AxisConfig> for GridAxis {
    fn from(a: AxisConfig) -> Self {
        GridAxis::new(a.start, a.stop, a.steps)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntangleConfig {
    pub gamma1: f64,
    pub gamma2: f64,
    pub p: Option<f64>,
    pub gamma1_axis: AxisConfig,
    pub gamma2_axis: AxisConfig,
    pub samples: usize,
    pub tolerance: f64,
    pub seed: u64,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prop1Config {
    pub draws: usize,
    pub seed: u64,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    pub format: Format,
}
