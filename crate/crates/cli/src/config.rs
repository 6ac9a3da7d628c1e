//! Experiment configuration: a single JSON file, schema-checked on load,
//! with every numeric range validated against the library preconditions.

use heatblo::{AnalyticFunction, Ball, Domain, HeatParams, Point, QuadratureMode, TimeGrid};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionSpec {
    Constant { value: f64 },
    Linear,
    NegLogAbs,
    LogAbs,
    PowerLawWeight { alpha: f64 },
    GaussianBump { a: f64 },
    Indicator { center: Vec<f64>, radius: f64 },
    BoundedSine { amplitude: f64, frequency: f64 },
    Shifted { base: Box<FunctionSpec>, offset: Vec<f64> },
    Scaled { base: Box<FunctionSpec>, factor: f64 },
    Sum { base: Box<FunctionSpec>, bounded: Box<FunctionSpec> },
}

impl FunctionSpec {
    pub fn build(&self, dim: usize) -> Result<AnalyticFunction, ConfigError> {
        Ok(match self {
            FunctionSpec::Constant { value } => AnalyticFunction::Constant(*value),
            FunctionSpec::Linear => AnalyticFunction::Linear,
            FunctionSpec::NegLogAbs => AnalyticFunction::NegLogAbs,
            FunctionSpec::LogAbs => AnalyticFunction::LogAbs,
            FunctionSpec::PowerLawWeight { alpha } => {
                if *alpha >= dim as f64 {
                    return Err(ConfigError(format!(
                        "function.alpha: power law |x|^(-{alpha}) is not locally integrable in dimension {dim}"
                    )));
                }
                AnalyticFunction::PowerLawWeight { alpha: *alpha }
            }
            FunctionSpec::GaussianBump { a } => {
                if !(*a > 0.0) {
                    return Err(ConfigError("function.a: must be positive".into()));
                }
                AnalyticFunction::GaussianBump { a: *a }
            }
            FunctionSpec::Indicator { center, radius } => {
                if center.len() != dim {
                    return Err(ConfigError(format!(
                        "function.center: expected {dim} coordinates, got {}",
                        center.len()
                    )));
                }
                if !(*radius > 0.0) {
                    return Err(ConfigError("function.radius: must be positive".into()));
                }
                AnalyticFunction::Indicator {
                    support: Ball::new(Point::from_slice(center), *radius),
                }
            }
            FunctionSpec::BoundedSine { amplitude, frequency } => {
                if !(*frequency > 0.0) {
                    return Err(ConfigError("function.frequency: must be positive".into()));
                }
                AnalyticFunction::BoundedSine { amplitude: *amplitude, frequency: *frequency }
            }
            FunctionSpec::Shifted { base, offset } => {
                if offset.len() != dim {
                    return Err(ConfigError(format!(
                        "function.offset: expected {dim} coordinates, got {}",
                        offset.len()
                    )));
                }
                AnalyticFunction::shifted(base.build(dim)?, Point::from_slice(offset))
            }
            FunctionSpec::Scaled { base, factor } => {
                let b = base.build(dim)?;
                if *factor == 0.0 {
                    return Err(ConfigError("function.factor: must be nonzero".into()));
                }
                if *factor < 0.0 && !b.classification().is_linfty {
                    return Err(ConfigError(
                        "function.factor: negative factors need a bounded base".into(),
                    ));
                }
                AnalyticFunction::scaled(b, *factor)
            }
            FunctionSpec::Sum { base, bounded } => {
                let b = base.build(dim)?;
                let g = bounded.build(dim)?;
                if !g.classification().is_linfty {
                    return Err(ConfigError(
                        "function.bounded: the second summand must be bounded".into(),
                    ));
                }
                AnalyticFunction::sum(b, g)
            }
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "snake_case", deny_unknown_fields)]
pub enum RadiiPolicy {
    /// {2h, 4h, ...} up to L/2.
    Dyadic,
    /// Dyadic plus each radius scaled by sqrt 2, for finer length ratios.
    DyadicDense,
    Explicit { values: Vec<f64> },
}

impl Default for RadiiPolicy {
    fn default() -> Self {
        RadiiPolicy::Dyadic
    }
}

impl RadiiPolicy {
    pub fn radii(&self, domain: &Domain) -> Vec<f64> {
        match self {
            RadiiPolicy::Dyadic => heatblo::default_radii(domain),
            RadiiPolicy::DyadicDense => {
                let mut r = heatblo::default_radii(domain);
                let extra: Vec<f64> =
                    r.iter().map(|v| v * std::f64::consts::SQRT_2).collect();
                r.extend(extra);
                r.sort_by(|a, b| a.partial_cmp(b).unwrap());
                r
            }
            RadiiPolicy::Explicit { values } => values.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGridSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub points_per_decade: usize,
}

impl Default for TimeGridSpec {
    fn default() -> Self {
        TimeGridSpec { t_min: 1e-3, t_max: 1.0, points_per_decade: 10 }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EpsilonGridSpec {
    pub min: f64,
    pub max: f64,
    pub points_per_decade: usize,
}

impl Default for EpsilonGridSpec {
    fn default() -> Self {
        EpsilonGridSpec { min: 1e-2, max: 0.8, points_per_decade: 16 }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareFunctionSpec {
    pub s_min: f64,
    pub s_max: f64,
    pub points_per_decade: usize,
}

impl Default for SquareFunctionSpec {
    fn default() -> Self {
        SquareFunctionSpec { s_min: 1e-3, s_max: 10.0, points_per_decade: 16 }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeatSpec {
    pub truncation_multiple: f64,
    pub points_per_scale: u32,
    pub quadrature: QuadratureSpec,
    pub tail_tolerance: f64,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureSpec {
    MidpointHybrid,
    ExactCells,
}

impl Default for HeatSpec {
    fn default() -> Self {
        HeatSpec {
            truncation_multiple: 12.0,
            points_per_scale: 16,
            quadrature: QuadratureSpec::MidpointHybrid,
            tail_tolerance: 1e-12,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl Default for OutputFormat {
    fn default() -> Self {
        OutputFormat::Csv
    }
}

fn default_function() -> FunctionSpec {
    FunctionSpec::NegLogAbs
}

fn default_dimension() -> usize {
    1
}

fn default_half_width() -> f64 {
    1.0
}

fn default_cells() -> usize {
    4096
}

fn default_output() -> PathBuf {
    PathBuf::from("report.csv")
}

/// The experiment configuration. Unknown keys are rejected; the config file
/// is the single source of truth (no environment overrides).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_function")]
    pub function: FunctionSpec,
    #[serde(default = "default_dimension")]
    pub dimension: usize,
    #[serde(default = "default_half_width")]
    pub half_width: f64,
    #[serde(default = "default_cells")]
    pub cells_per_axis: usize,
    #[serde(default)]
    pub radii: RadiiPolicy,
    #[serde(default)]
    pub ball_margin: f64,
    #[serde(default)]
    pub time_grid: TimeGridSpec,
    #[serde(default)]
    pub epsilon_grid: EpsilonGridSpec,
    #[serde(default)]
    pub square_function: SquareFunctionSpec,
    #[serde(default)]
    pub heat: HeatSpec,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub threads: Option<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("empty config uses defaults")
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        let cfg: ExperimentConfig = serde_json::from_str(&text)
            .map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.domain()?;
        self.function.build(self.dimension)?;
        self.time_grid_values()?;
        self.heat_params()?;
        let e = &self.epsilon_grid;
        if !(e.min > 0.0 && e.min < e.max) {
            return Err(ConfigError(format!(
                "epsilon_grid: need 0 < min < max, got ({}, {})",
                e.min, e.max
            )));
        }
        if e.points_per_decade < 2 {
            return Err(ConfigError(
                "epsilon_grid.points_per_decade: must be at least 2".into(),
            ));
        }
        let s = &self.square_function;
        heatblo::SquareFunctionParams::new(s.s_min, s.s_max, s.points_per_decade)
            .map_err(|e| ConfigError(format!("square_function: {e}")))?;
        if self.ball_margin < 0.0 {
            return Err(ConfigError("ball_margin: must be nonnegative".into()));
        }
        if let RadiiPolicy::Explicit { values } = &self.radii {
            if values.is_empty() || values.iter().any(|&r| !(r > 0.0)) {
                return Err(ConfigError("radii.values: need positive radii".into()));
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> Result<Domain, ConfigError> {
        Domain::new(self.dimension, self.half_width, self.cells_per_axis)
            .map_err(|e| ConfigError(format!("domain: {e}")))
    }

    pub fn analytic_function(&self) -> Result<AnalyticFunction, ConfigError> {
        self.function.build(self.dimension)
    }

    pub fn time_grid_values(&self) -> Result<TimeGrid, ConfigError> {
        TimeGrid::new(
            self.time_grid.t_min,
            self.time_grid.t_max,
            self.time_grid.points_per_decade,
        )
        .map_err(|e| ConfigError(format!("time_grid: {e}")))
    }

    pub fn epsilon_values(&self) -> Vec<f64> {
        heatblo::util::log_spaced(
            self.epsilon_grid.min,
            self.epsilon_grid.max,
            self.epsilon_grid.points_per_decade,
        )
    }

    pub fn square_params(&self) -> heatblo::SquareFunctionParams {
        heatblo::SquareFunctionParams::new(
            self.square_function.s_min,
            self.square_function.s_max,
            self.square_function.points_per_decade,
        )
        .expect("validated at load")
    }

    pub fn heat_params(&self) -> Result<HeatParams, ConfigError> {
        let p = HeatParams {
            truncation_multiple: self.heat.truncation_multiple,
            points_per_scale: self.heat.points_per_scale,
            tail_tolerance: self.heat.tail_tolerance,
            quadrature: match self.heat.quadrature {
                QuadratureSpec::MidpointHybrid => QuadratureMode::MidpointHybrid,
                QuadratureSpec::ExactCells => QuadratureMode::ExactCells,
            },
        };
        p.validate().map_err(|e| ConfigError(format!("heat: {e}")))?;
        Ok(p)
    }

    pub fn balls(&self) -> Result<Vec<Ball>, ConfigError> {
        let d = self.domain()?;
        heatblo::enumerate_balls(&d, &self.radii.radii(&d), self.ball_margin)
            .map_err(|e| ConfigError(format!("balls: {e}")))
    }

    /// Hex SHA-256 of the canonical JSON serialization.
    pub fn digest(&self) -> String {
        let canon = serde_json::to_string(self).expect("config serializes");
        let mut hasher = Sha256::new();
        hasher.update(canon.as_bytes());
        let out = hasher.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        let cfg = ExperimentConfig::default();
        assert!(cfg.validate().is_ok());
        assert_eq!(cfg.dimension, 1);
        assert_eq!(cfg.cells_per_axis, 4096);
    }

    #[test]
    fn unknown_keys_rejected() {
        let e = serde_json::from_str::<ExperimentConfig>(r#"{"frobnicate": 1}"#);
        assert!(e.is_err());
        let msg = format!("{}", e.unwrap_err());
        assert!(msg.contains("frobnicate"), "{msg}");
    }

    #[test]
    fn bad_ranges_rejected() {
        let cfg: ExperimentConfig =
            serde_json::from_str(r#"{"cells_per_axis": 7}"#).unwrap();
        assert!(cfg.validate().is_err());
        let cfg: ExperimentConfig =
            serde_json::from_str(r#"{"time_grid": {"t_min": 1.0, "t_max": 0.1, "points_per_decade": 8}}"#)
                .unwrap();
        assert!(cfg.validate().is_err());
        let cfg: ExperimentConfig = serde_json::from_str(
            r#"{"heat": {"truncation_multiple": 4.0, "points_per_scale": 16,
                 "quadrature": "midpoint_hybrid", "tail_tolerance": 1e-12}}"#,
        )
        .unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn function_specs_build() {
        let spec: FunctionSpec = serde_json::from_str(
            r#"{"kind": "sum",
                "base": {"kind": "neg_log_abs"},
                "bounded": {"kind": "bounded_sine", "amplitude": 0.5, "frequency": 3.0}}"#,
        )
        .unwrap();
        let f = spec.build(1).unwrap();
        assert!(f.classification().is_blo);

        let bad: FunctionSpec = serde_json::from_str(
            r#"{"kind": "sum", "base": {"kind": "neg_log_abs"}, "bounded": {"kind": "log_abs"}}"#,
        )
        .unwrap();
        assert!(bad.build(1).is_err());
    }

    #[test]
    fn digest_stable_and_sensitive() {
        let a = ExperimentConfig::default();
        let b = ExperimentConfig::default();
        assert_eq!(a.digest(), b.digest());
        let mut c = ExperimentConfig::default();
        c.seed = 1;
        assert_ne!(a.digest(), c.digest());
    }
}
