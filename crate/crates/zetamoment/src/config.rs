//! Experiment configuration: one serializable record per run.
//!
//! A campaign is only evidence if someone else can re-run it, so the full
//! configuration — triple, grid, quadrature knobs, scan caps, seed — lives in
//! one TOML-serializable struct that the report writer embeds verbatim in its
//! output.  Parsing the embedded block back yields the same config
//! (`parse ∘ serialize = id`), which is what makes a results directory
//! self-describing.
//!
//! The twist triple is carried as the three exact spec strings (`"2"`,
//! `"1/2"`, `"1+sqrt(2)"`, …) rather than floats: the string is the canonical
//! form, and [`TripleSpec::parse`] reproduces the exact algebraic object.

use std::error::Error;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::quad::QuadOpts;
use crate::triple::TwistTriple;

/// Exact twist-triple specification, as parseable strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripleSpec {
    pub a: String,
    pub b: String,
    pub c: String,
}

impl TripleSpec {
    pub fn new(a: &str, b: &str, c: &str) -> Self {
        TripleSpec { a: a.to_string(), b: b.to_string(), c: c.to_string() }
    }

    pub fn parse(&self) -> Result<TwistTriple, ConfigError> {
        TwistTriple::parse(&self.a, &self.b, &self.c)
            .map_err(|e| ConfigError::BadTriple { message: e.to_string() })
    }
}

fn default_theta() -> f64 {
    0.5
}
fn default_panel_order() -> usize {
    16
}
fn default_width_cap() -> f64 {
    0.25
}
fn default_caps() -> u64 {
    200
}
fn default_epsilon() -> f64 {
    0.1
}
fn default_out_dir() -> String {
    "out".to_string()
}

/// Everything one experiment run depends on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Human-readable run name; also the output subdirectory.
    pub label: String,
    /// The twist triple, as exact spec strings.
    pub triple: TripleSpec,
    /// Ascending positive upper limits T for the sweep.
    pub t_grid: Vec<f64>,
    /// Cutoff exponent for the rotated polynomial (θ = 1/2 unless probing).
    #[serde(default = "default_theta")]
    pub theta: f64,
    /// Gauss–Legendre nodes per panel.
    #[serde(default = "default_panel_order")]
    pub panel_order: usize,
    /// Hard ceiling on quadrature panel width.
    #[serde(default = "default_width_cap")]
    pub width_cap: f64,
    /// Uniform index cap for diagonal/gap scans launched from this config.
    #[serde(default = "default_caps")]
    pub caps: u64,
    /// Quality-exponent slack ε for gap scans.
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    /// Output directory (overridable via the ZETAMOMENT_OUT_DIR environment
    /// variable at run time).
    #[serde(default = "default_out_dir")]
    pub out_dir: String,
    /// Worker threads; 0 = library default pool.
    #[serde(default)]
    pub workers: usize,
    /// Seed for any sampled checks the run performs.
    #[serde(default)]
    pub seed: u64,
    /// Model the moment with all three rotations on the same side.
    #[serde(default)]
    pub same_sign: bool,
    /// Power of log T divided out of residuals before exponent fitting.
    #[serde(default)]
    pub log_divisor: f64,
    /// If set, the campaign asserts fitted slope ≤ this ceiling.
    #[serde(default)]
    pub slope_ceiling: Option<f64>,
    /// If set, the run refuses to proceed unless the main-term model derived
    /// from the triple carries this label (guards preset/triple mismatches).
    #[serde(default)]
    pub expected_model: Option<String>,
}

/// Ways a configuration can be unusable.
#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    EmptyLabel,
    BadTriple { message: String },
    EmptyGrid,
    GridNotAscending { index: usize },
    ThetaOutOfRange { theta: f64 },
    BadPanelOrder { order: usize },
    BadWidthCap { cap: f64 },
    ZeroCaps,
    EpsilonOutOfRange { epsilon: f64 },
    BadSlopeCeiling { ceiling: f64 },
    BadLogDivisor { power: f64 },
    Toml { message: String },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::EmptyLabel => write!(f, "experiment label must be non-empty"),
            ConfigError::BadTriple { message } => write!(f, "invalid twist triple: {message}"),
            ConfigError::EmptyGrid => write!(f, "T grid must contain at least one point"),
            ConfigError::GridNotAscending { index } => {
                write!(f, "T grid must be positive and strictly ascending (violated at index {index})")
            }
            ConfigError::ThetaOutOfRange { theta } => {
                write!(f, "theta must lie in (0, 1), got {theta}")
            }
            ConfigError::BadPanelOrder { order } => {
                write!(f, "panel order must be between 2 and 64, got {order}")
            }
            ConfigError::BadWidthCap { cap } => {
                write!(f, "panel width cap must be positive and finite, got {cap}")
            }
            ConfigError::ZeroCaps => write!(f, "scan caps must be at least 1"),
            ConfigError::EpsilonOutOfRange { epsilon } => {
                write!(f, "epsilon must lie in [0, 1), got {epsilon}")
            }
            ConfigError::BadSlopeCeiling { ceiling } => {
                write!(f, "slope ceiling must be positive and finite, got {ceiling}")
            }
            ConfigError::BadLogDivisor { power } => {
                write!(f, "log divisor power must be finite and non-negative, got {power}")
            }
            ConfigError::Toml { message } => write!(f, "config parse error: {message}"),
        }
    }
}

impl Error for ConfigError {}

impl ExperimentConfig {
    /// A fully-defaulted config for the given label and triple; callers then
    /// override what they need.
    pub fn new(label: &str, triple: TripleSpec, t_grid: Vec<f64>) -> Self {
        ExperimentConfig {
            label: label.to_string(),
            triple,
            t_grid,
            theta: default_theta(),
            panel_order: default_panel_order(),
            width_cap: default_width_cap(),
            caps: default_caps(),
            epsilon: default_epsilon(),
            out_dir: default_out_dir(),
            workers: 0,
            seed: 0,
            same_sign: false,
            log_divisor: 0.0,
            slope_ceiling: None,
            expected_model: None,
        }
    }

    /// Check every field; the parsed triple is returned so callers don't
    /// re-parse.
    pub fn validate(&self) -> Result<TwistTriple, ConfigError> {
        if self.label.trim().is_empty() {
            return Err(ConfigError::EmptyLabel);
        }
        let triple = self.triple.parse()?;
        if self.t_grid.is_empty() {
            return Err(ConfigError::EmptyGrid);
        }
        if !(self.t_grid[0] > 0.0) || !self.t_grid[0].is_finite() {
            return Err(ConfigError::GridNotAscending { index: 0 });
        }
        for i in 1..self.t_grid.len() {
            if !(self.t_grid[i] > self.t_grid[i - 1]) || !self.t_grid[i].is_finite() {
                return Err(ConfigError::GridNotAscending { index: i });
            }
        }
        if !(self.theta > 0.0 && self.theta < 1.0) {
            return Err(ConfigError::ThetaOutOfRange { theta: self.theta });
        }
        if self.panel_order < 2 || self.panel_order > 64 {
            return Err(ConfigError::BadPanelOrder { order: self.panel_order });
        }
        if !(self.width_cap > 0.0) || !self.width_cap.is_finite() {
            return Err(ConfigError::BadWidthCap { cap: self.width_cap });
        }
        if self.caps == 0 {
            return Err(ConfigError::ZeroCaps);
        }
        if !(self.epsilon >= 0.0 && self.epsilon < 1.0) {
            return Err(ConfigError::EpsilonOutOfRange { epsilon: self.epsilon });
        }
        if let Some(ceiling) = self.slope_ceiling {
            if !(ceiling > 0.0) || !ceiling.is_finite() {
                return Err(ConfigError::BadSlopeCeiling { ceiling });
            }
        }
        if !(self.log_divisor >= 0.0) || !self.log_divisor.is_finite() {
            return Err(ConfigError::BadLogDivisor { power: self.log_divisor });
        }
        Ok(triple)
    }

    /// Quadrature options this config implies.
    pub fn quad_opts(&self) -> QuadOpts {
        QuadOpts {
            panel_order: self.panel_order,
            width_cap: self.width_cap,
            workers: self.workers,
            ..QuadOpts::default()
        }
    }

    /// Canonical TOML form (the exact bytes embedded in run outputs).
    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("plain data structure always serializes")
    }

    /// Parse a TOML config; [`ExperimentConfig::validate`] is a separate step.
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Toml { message: e.to_string() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new(
            "demo",
            TripleSpec::new("2", "5", "3"),
            vec![250.0, 500.0, 1000.0, 2000.0],
        );
        cfg.workers = 4;
        cfg.seed = 42;
        cfg.slope_ceiling = Some(1.0);
        cfg.expected_model = Some("thm-1.2-sigma".to_string());
        cfg
    }

    #[test]
    fn toml_round_trip_is_identity() {
        let cfg = sample();
        let text = cfg.to_toml();
        let back = ExperimentConfig::from_toml(&text).unwrap();
        assert_eq!(cfg, back);
        // And the round-tripped config re-serializes to the same bytes.
        assert_eq!(text, back.to_toml());
    }

    #[test]
    fn minimal_toml_fills_defaults() {
        let text = r#"
            label = "tiny"
            t_grid = [500.0, 1000.0]
            [triple]
            a = "1"
            b = "3"
            c = "2"
        "#;
        let cfg = ExperimentConfig::from_toml(text).unwrap();
        assert_eq!(cfg.theta, 0.5);
        assert_eq!(cfg.panel_order, 16);
        assert_eq!(cfg.width_cap, 0.25);
        assert_eq!(cfg.caps, 200);
        assert_eq!(cfg.epsilon, 0.1);
        assert_eq!(cfg.workers, 0);
        assert!(!cfg.same_sign);
        assert!(cfg.slope_ceiling.is_none());
        cfg.validate().unwrap();
    }

    #[test]
    fn validate_accepts_sqrt_triples() {
        let cfg = ExperimentConfig::new(
            "relation",
            TripleSpec::new("sqrt(2)", "1+sqrt(2)", "2*sqrt(2)-1"),
            vec![500.0, 2000.0],
        );
        cfg.validate().unwrap();
    }

    #[test]
    fn validate_rejects_each_bad_field() {
        let mut cfg = sample();
        cfg.t_grid.clear();
        assert_eq!(cfg.validate(), Err(ConfigError::EmptyGrid));

        let mut cfg = sample();
        cfg.t_grid = vec![500.0, 400.0];
        assert_eq!(cfg.validate(), Err(ConfigError::GridNotAscending { index: 1 }));

        let mut cfg = sample();
        cfg.t_grid = vec![-10.0, 400.0];
        assert_eq!(cfg.validate(), Err(ConfigError::GridNotAscending { index: 0 }));

        let mut cfg = sample();
        cfg.theta = 1.5;
        assert!(matches!(cfg.validate(), Err(ConfigError::ThetaOutOfRange { .. })));

        let mut cfg = sample();
        cfg.triple = TripleSpec::new("0", "1", "1");
        assert!(matches!(cfg.validate(), Err(ConfigError::BadTriple { .. })));

        let mut cfg = sample();
        cfg.epsilon = 1.2;
        assert!(matches!(cfg.validate(), Err(ConfigError::EpsilonOutOfRange { .. })));

        let mut cfg = sample();
        cfg.panel_order = 1;
        assert!(matches!(cfg.validate(), Err(ConfigError::BadPanelOrder { .. })));

        let mut cfg = sample();
        cfg.caps = 0;
        assert_eq!(cfg.validate(), Err(ConfigError::ZeroCaps));

        let mut cfg = sample();
        cfg.label = "  ".into();
        assert_eq!(cfg.validate(), Err(ConfigError::EmptyLabel));
    }

    #[test]
    fn garbage_toml_is_a_parse_error() {
        assert!(matches!(
            ExperimentConfig::from_toml("label = ["),
            Err(ConfigError::Toml { .. })
        ));
    }

    #[test]
    fn quad_opts_carry_the_tuned_fields() {
        let mut cfg = sample();
        cfg.panel_order = 24;
        cfg.width_cap = 0.1;
        cfg.workers = 8;
        let opts = cfg.quad_opts();
        assert_eq!(opts.panel_order, 24);
        assert_eq!(opts.width_cap, 0.1);
        assert_eq!(opts.workers, 8);
    }
}
