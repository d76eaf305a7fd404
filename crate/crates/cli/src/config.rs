//! Scenario files. A scenario is a single JSON document with a versioned
//! schema; any key the schema does not define is an error, so typos fail
//! loudly instead of silently running a different model.
//!
//! ```json
//! {
//!   "schema": 1,
//!   "name": "bathtub_mixed_weibull",
//!   "model": {
//!     "main": { "min_of": [ { "weibull": { "scale": 1.0, "shape": 0.5 } },
//!                           { "weibull": { "scale": 1.0, "shape": 3.0 } } ] },
//!     "standby_rate": 1.0,
//!     "repair": { "exponential": { "rate": 0.001 } },
//!     "maintenance": { "exponential": { "rate": 4.0 } }
//!   },
//!   "analysis": { "horizon_survival": 1e-9 },
//!   "simulation": { "replications": 1000000, "seed": 42 },
//!   "comparison": { ... a second model, for the compare command ... }
//! }
//! ```
//!
//! `analysis`, `simulation`, and `comparison` are optional. Analysis keys
//! override the library defaults one at a time; simulation keys give the
//! defaults that `--replications` and `--seed` fall back to.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use standby_core::{AnalysisOptions, LifetimeDistribution, SystemModel};

use crate::error::CliError;

/// The one schema version this build understands.
pub const SCHEMA_VERSION: u32 = 1;

/// A lifetime distribution literal: one of `exponential`, `weibull`,
/// `min_of`, or `max_of`, keyed by kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum DistributionSpec {
    Exponential { rate: f64 },
    Weibull { scale: f64, shape: f64 },
    MinOf(Vec<DistributionSpec>),
    MaxOf(Vec<DistributionSpec>),
}

impl DistributionSpec {
    /// Builds the validated distribution, funneling every parameter check
    /// through the library constructors.
    pub fn to_distribution(&self) -> Result<LifetimeDistribution, CliError> {
        let build = |specs: &[DistributionSpec]| -> Result<Vec<LifetimeDistribution>, CliError> {
            specs.iter().map(|s| s.to_distribution()).collect()
        };
        match self {
            DistributionSpec::Exponential { rate } => {
                LifetimeDistribution::exponential(*rate).map_err(CliError::from_core)
            }
            DistributionSpec::Weibull { scale, shape } => {
                LifetimeDistribution::weibull(*scale, *shape).map_err(CliError::from_core)
            }
            DistributionSpec::MinOf(specs) => {
                LifetimeDistribution::min_of(build(specs)?).map_err(CliError::from_core)
            }
            DistributionSpec::MaxOf(specs) => {
                LifetimeDistribution::max_of(build(specs)?).map_err(CliError::from_core)
            }
        }
    }

    /// Parses a distribution literal given directly on the command line.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Config(format!("bad distribution literal: {e}")))
    }
}

/// One system: the four model ingredients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub main: DistributionSpec,
    pub standby_rate: f64,
    pub repair: DistributionSpec,
    pub maintenance: DistributionSpec,
}

impl ModelSpec {
    pub fn to_system(&self) -> Result<SystemModel, CliError> {
        SystemModel::new(
            self.main.to_distribution()?,
            self.standby_rate,
            self.repair.to_distribution()?,
            self.maintenance.to_distribution()?,
        )
        .map_err(CliError::from_core)
    }
}

/// Per-scenario overrides for the analysis defaults.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AnalysisSpec {
    pub horizon_survival: Option<f64>,
    pub classify_points: Option<usize>,
    pub scan_points: Option<usize>,
}

impl AnalysisSpec {
    pub fn to_options(self) -> AnalysisOptions {
        let mut options = AnalysisOptions::default();
        if let Some(v) = self.horizon_survival {
            options.horizon_survival = v;
        }
        if let Some(v) = self.classify_points {
            options.classify_points = v;
        }
        if let Some(v) = self.scan_points {
            options.scan_points = v;
        }
        options
    }
}

/// Per-scenario simulation defaults.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimulationSpec {
    pub replications: Option<u64>,
    pub seed: Option<u64>,
}

/// A whole scenario file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Must equal [`SCHEMA_VERSION`].
    pub schema: u32,
    /// Human-readable scenario label, echoed in summaries.
    pub name: String,
    pub model: ModelSpec,
    #[serde(default)]
    pub analysis: Option<AnalysisSpec>,
    #[serde(default)]
    pub simulation: Option<SimulationSpec>,
    /// Second system for the compare command.
    #[serde(default)]
    pub comparison: Option<ModelSpec>,
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: ScenarioConfig = serde_json::from_str(text)
            .map_err(|e| CliError::Config(format!("bad scenario file: {e}")))?;
        if config.schema != SCHEMA_VERSION {
            return Err(CliError::Config(format!(
                "unsupported schema version {} (this build reads {})",
                config.schema, SCHEMA_VERSION
            )));
        }
        if config.name.trim().is_empty() {
            return Err(CliError::Config(String::from("scenario name is empty")));
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn analysis_options(&self) -> AnalysisOptions {
        self.analysis.unwrap_or_default().to_options()
    }
}

// ======================================================================
// Tests
// ======================================================================

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal() -> String {
        String::from(
            r#"{
                "schema": 1,
                "name": "demo",
                "model": {
                    "main": { "weibull": { "scale": 1.0, "shape": 2.0 } },
                    "standby_rate": 1.0,
                    "repair": { "exponential": { "rate": 1.0 } },
                    "maintenance": { "exponential": { "rate": 3.0 } }
                }
            }"#,
        )
    }

    #[test]
    fn minimal_scenario_parses_and_builds() {
        let config = ScenarioConfig::parse(&minimal()).unwrap();
        assert_eq!(config.name, "demo");
        assert!(config.comparison.is_none());
        let system = config.model.to_system().unwrap();
        assert!(system.mttf_no_pm() > 0.0);
    }

    #[test]
    fn unknown_keys_are_rejected_at_every_level() {
        // Top level.
        let text = minimal().replace("\"name\"", "\"bogus\": 1, \"name\"");
        assert!(ScenarioConfig::parse(&text).is_err());
        // Model level.
        let text = minimal().replace("\"main\"", "\"spares\": 2, \"main\"");
        assert!(ScenarioConfig::parse(&text).is_err());
        // Inside a distribution variant.
        let text = minimal().replace("\"shape\": 2.0", "\"shape\": 2.0, \"rate\": 1.0");
        assert!(ScenarioConfig::parse(&text).is_err());
        // Unknown distribution kind.
        let text = minimal().replace("\"weibull\"", "\"gamma\"");
        assert!(ScenarioConfig::parse(&text).is_err());
    }

    #[test]
    fn schema_version_is_enforced() {
        let text = minimal().replace("\"schema\": 1", "\"schema\": 2");
        match ScenarioConfig::parse(&text) {
            Err(CliError::Config(msg)) => assert!(msg.contains("schema")),
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn nested_composites_round_trip() {
        let spec = DistributionSpec::MinOf(vec![
            DistributionSpec::Weibull {
                scale: 1.0,
                shape: 0.5,
            },
            DistributionSpec::MaxOf(vec![
                DistributionSpec::Exponential { rate: 1.0 },
                DistributionSpec::Exponential { rate: 2.0 },
            ]),
        ]);
        let json = serde_json::to_string(&spec).unwrap();
        let back: DistributionSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        assert!(back.to_distribution().is_ok());
    }

    #[test]
    fn invalid_parameters_surface_as_domain_errors() {
        let text = minimal().replace("\"scale\": 1.0", "\"scale\": -1.0");
        let config = ScenarioConfig::parse(&text).unwrap();
        match config.model.to_system() {
            Err(e) => assert_eq!(e.exit_code(), 2),
            Ok(_) => panic!("negative scale should not build"),
        }
    }

    #[test]
    fn analysis_overrides_apply_one_at_a_time() {
        let spec = AnalysisSpec {
            horizon_survival: Some(1e-7),
            classify_points: None,
            scan_points: Some(999),
        };
        let options = spec.to_options();
        assert_eq!(options.horizon_survival, 1e-7);
        assert_eq!(options.scan_points, 999);
        assert_eq!(
            options.classify_points,
            AnalysisOptions::default().classify_points
        );
    }
}
