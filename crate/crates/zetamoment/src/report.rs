//! Campaign runner and persistence: turns a config into files on disk.
//!
//! A run is sweep → model → fit → write.  Four files land in
//! `<out_dir>/<label>/` (the `ZETAMOMENT_OUT_DIR` environment variable
//! overrides the configured base directory):
//!
//!  * `results.csv`   — header `T,re_moment,im_moment,main_term,abs_residual,quad_err`,
//!    one row per grid point;
//!  * `summary.txt`   — nested key-value record: model, fit, assertion verdict,
//!    and the run's config embedded verbatim as TOML;
//!  * `plot.dat`      — whitespace table for plotting (T, |residual|, main term);
//!  * `plot.gp`       — a gnuplot script drawing the log-log residual and, when
//!    a fit exists, the fitted power law.
//!
//! Everything written is a pure function of the config: floats are formatted
//! with Rust's shortest-round-trip formatter, no timestamps or hostnames are
//! recorded, and the quadrature layer is bitwise deterministic for any worker
//! count — so re-running a campaign reproduces every file byte for byte.
//! That determinism is load-bearing: it is what makes "the numbers in the
//! paper trail" auditable.
//!
//! Shipped presets cover the theorem zoo at desk scale, one per case, each
//! with the grid and fitted-slope ceiling its acceptance story calls for.

use std::error::Error;
use std::fmt;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use num_complex::Complex64;

use crate::config::{ConfigError, ExperimentConfig, TripleSpec};
use crate::fit::{fit_error_exponent, fit_with_log_divisor, FitError, FitResult};
use crate::model::{main_term_model, ModelError};
use crate::quad::{integrate_product, sweep, QuadError, SweepRow};

/// Ways a run can fail before or while writing.
#[derive(Debug)]
pub enum ReportError {
    Config(ConfigError),
    Model(ModelError),
    Quad(QuadError),
    /// The config demanded a specific theorem model and the triple's actual
    /// classification disagrees.
    ModelMismatch { expected: String, actual: String },
    UnknownPreset { name: String },
    Io { path: String, message: String },
}

impl fmt::Display for ReportError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportError::Config(e) => write!(f, "config: {e}"),
            ReportError::Model(e) => write!(f, "model: {e}"),
            ReportError::Quad(e) => write!(f, "quadrature: {e}"),
            ReportError::ModelMismatch { expected, actual } => {
                write!(f, "config expects model {expected}, triple classifies as {actual}")
            }
            ReportError::UnknownPreset { name } => {
                write!(f, "unknown campaign preset {name:?} (see preset_names())")
            }
            ReportError::Io { path, message } => write!(f, "writing {path}: {message}"),
        }
    }
}

impl Error for ReportError {}

impl From<ConfigError> for ReportError {
    fn from(e: ConfigError) -> Self {
        ReportError::Config(e)
    }
}
impl From<ModelError> for ReportError {
    fn from(e: ModelError) -> Self {
        ReportError::Model(e)
    }
}
impl From<QuadError> for ReportError {
    fn from(e: QuadError) -> Self {
        ReportError::Quad(e)
    }
}

/// Everything a finished run reports back to its caller.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub label: String,
    pub model_label: String,
    /// The model's own error-term exponent (log power separate), reported
    /// alongside the fitted slope for comparison.
    pub predicted_exponent: f64,
    pub predicted_log_power: u32,
    pub rows: Vec<SweepRow>,
    pub fit: Option<FitResult>,
    /// Why the fit is absent, when it is.
    pub fit_note: Option<String>,
    pub slope_ceiling: Option<f64>,
    /// `Some(false)` means the campaign's slope assertion failed (CLI exit 1).
    pub assertion_passed: Option<bool>,
    pub out_dir: PathBuf,
    pub files: Vec<PathBuf>,
}

/// The campaign presets shipped with the laboratory, one per theorem case.
pub fn preset_names() -> &'static [&'static str] {
    &[
        "thm-1.2",
        "thm-1.3",
        "thm-1.4",
        "thm-1.5",
        "thm-1.6",
        "thm-1.7-b1",
        "thm-1.7-b2",
        "same-sign",
    ]
}

/// Build the named preset config (caller may still override fields).
pub fn preset(name: &str) -> Result<ExperimentConfig, ReportError> {
    let grid_full = vec![250.0, 500.0, 1000.0, 2000.0];
    let mut cfg = match name {
        "thm-1.2" => {
            let mut c = ExperimentConfig::new(name, TripleSpec::new("2", "5", "3"), grid_full);
            c.slope_ceiling = Some(1.0);
            c.expected_model = Some("thm-1.2-sigma".into());
            c
        }
        "thm-1.3" => {
            let mut c = ExperimentConfig::new(
                name,
                TripleSpec::new("1", "3", "2"),
                vec![500.0, 1000.0, 2000.0],
            );
            c.slope_ceiling = Some(1.0);
            c.expected_model = Some("thm-1.3-zeta-product".into());
            c
        }
        "thm-1.4" => {
            let mut c = ExperimentConfig::new(name, TripleSpec::new("2", "3", "2"), grid_full);
            c.expected_model = Some("thm-1.4-TlogT".into());
            c
        }
        "thm-1.5" => {
            let mut c = ExperimentConfig::new(
                name,
                TripleSpec::new("sqrt(2)", "sqrt(5)", "sqrt(3)"),
                vec![250.0, 500.0, 1000.0],
            );
            c.expected_model = Some("prop-4.1-independent".into());
            c
        }
        "thm-1.6" => {
            let mut c = ExperimentConfig::new(
                name,
                TripleSpec::new("sqrt(2)", "1+sqrt(2)", "2*sqrt(2)-1"),
                vec![500.0, 1000.0, 2000.0],
            );
            c.expected_model = Some("prop-4.2-relation".into());
            c
        }
        "thm-1.7-b1" => {
            let mut c = ExperimentConfig::new(name, TripleSpec::new("1", "1", "1"), grid_full);
            c.slope_ceiling = Some(0.9);
            c.expected_model = Some("thm-1.7-lower-order".into());
            c
        }
        "thm-1.7-b2" => {
            let mut c = ExperimentConfig::new(name, TripleSpec::new("1", "2", "1"), grid_full);
            c.slope_ceiling = Some(0.9);
            c.expected_model = Some("thm-1.7-lower-order".into());
            c
        }
        "same-sign" => {
            let mut c = ExperimentConfig::new(
                name,
                TripleSpec::new("1", "2", "3"),
                vec![250.0, 500.0, 1000.0],
            );
            c.same_sign = true;
            c.expected_model = Some("same-sign".into());
            c
        }
        _ => return Err(ReportError::UnknownPreset { name: name.to_string() }),
    };
    cfg.out_dir = "out".into();
    Ok(cfg)
}

/// Run one experiment end to end and write its report files.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport, ReportError> {
    let report = evaluate_experiment(config)?;
    write_report(&report, config)
}

/// The compute half of [`run_experiment`]: sweep, model, fit — no I/O.
pub fn evaluate_experiment(config: &ExperimentConfig) -> Result<ExperimentReport, ReportError> {
    let triple = config.validate()?;
    let model = main_term_model(&triple, config.same_sign)?;
    if let Some(expected) = &config.expected_model {
        if model.case.label() != expected.as_str() {
            return Err(ReportError::ModelMismatch {
                expected: expected.clone(),
                actual: model.case.label().to_string(),
            });
        }
    }
    let opts = config.quad_opts();
    let rows: Vec<SweepRow> = if config.same_sign {
        // All rotations on the same side: not a conjugate moment, so the
        // shared-prefix sweep does not apply; integrate each T directly.
        let (a, b, c) = triple.values();
        let factors = [(a, false), (b, false), (c, false)];
        let mut out = Vec::with_capacity(config.t_grid.len());
        for &t in &config.t_grid {
            let m = integrate_product(&factors, t, &opts)?;
            let main_term = model.predict(t);
            let residual = m.value - Complex64::new(main_term, 0.0);
            out.push(SweepRow {
                t,
                moment: m.value,
                main_term,
                residual,
                abs_residual: residual.norm(),
                quad_err_est: m.quad_err_est,
            });
        }
        out
    } else {
        sweep(&triple, &config.t_grid, &model, &opts)?
    };

    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.t, r.abs_residual)).collect();
    let fitted = if config.log_divisor == 0.0 {
        fit_error_exponent(&points)
    } else {
        fit_with_log_divisor(&points, config.log_divisor)
    };
    let (fit, fit_note) = match fitted {
        Ok(f) => (Some(f), None),
        Err(FitError::TooFewPoints { usable }) => {
            (None, Some(format!("fit skipped: only {usable} usable points")))
        }
        Err(FitError::ExactMatch) => {
            (None, Some("fit skipped: residuals identically zero (exact match)".to_string()))
        }
    };
    let assertion_passed = config
        .slope_ceiling
        .map(|ceiling| fit.as_ref().map(|f| f.slope <= ceiling).unwrap_or(false));

    Ok(ExperimentReport {
        label: config.label.clone(),
        model_label: model.case.label().to_string(),
        predicted_exponent: model.error_exponent,
        predicted_log_power: model.error_log_power,
        rows,
        fit,
        fit_note,
        slope_ceiling: config.slope_ceiling,
        assertion_passed,
        out_dir: PathBuf::new(),
        files: Vec::new(),
    })
}

/// Where this config's files go: `$ZETAMOMENT_OUT_DIR` (if set and non-empty)
/// overrides the configured base; the label is always the leaf directory.
pub fn resolve_out_dir(config: &ExperimentConfig) -> PathBuf {
    let base = std::env::var("ZETAMOMENT_OUT_DIR")
        .ok()
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| config.out_dir.clone());
    PathBuf::from(base).join(&config.label)
}

fn write_file(path: &PathBuf, content: &str) -> Result<(), ReportError> {
    fs::write(path, content).map_err(|e| ReportError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Persist a computed report; returns it with `out_dir`/`files` filled in.
pub fn write_report(
    report: &ExperimentReport,
    config: &ExperimentConfig,
) -> Result<ExperimentReport, ReportError> {
    let dir = resolve_out_dir(config);
    fs::create_dir_all(&dir).map_err(|e| ReportError::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    })?;
    let csv_path = dir.join("results.csv");
    let summary_path = dir.join("summary.txt");
    let dat_path = dir.join("plot.dat");
    let gp_path = dir.join("plot.gp");
    write_file(&csv_path, &render_csv(&report.rows))?;
    write_file(&summary_path, &render_summary(report, config))?;
    write_file(&dat_path, &render_plot_data(&report.rows))?;
    write_file(&gp_path, &render_plot_script(report))?;
    let mut out = report.clone();
    out.out_dir = dir;
    out.files = vec![csv_path, summary_path, dat_path, gp_path];
    Ok(out)
}

/// The results table: documented column order, shortest-round-trip floats.
pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("T,re_moment,im_moment,main_term,abs_residual,quad_err\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            r.t, r.moment.re, r.moment.im, r.main_term, r.abs_residual, r.quad_err_est
        );
    }
    s
}

/// Whitespace-separated companion table for the plot script.
pub fn render_plot_data(rows: &[SweepRow]) -> String {
    let mut s = String::from("# T abs_residual main_term re_moment\n");
    for r in rows {
        let _ = writeln!(s, "{} {} {} {}", r.t, r.abs_residual, r.main_term, r.moment.re);
    }
    s
}

/// A generic gnuplot script for the residual trend (no bundled renderer).
pub fn render_plot_script(report: &ExperimentReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# gnuplot script for campaign {:?}", report.label);
    let _ = writeln!(s, "set logscale xy");
    let _ = writeln!(s, "set xlabel 'T'");
    let _ = writeln!(s, "set ylabel '|I - main term|'");
    let _ = writeln!(s, "set key top left");
    match &report.fit {
        Some(fit) => {
            let _ = writeln!(
                s,
                "plot 'plot.dat' using 1:2 with linespoints title 'residual', \\\n     exp({})*x**({}) title 'fit: slope {}'",
                fit.intercept, fit.slope, fit.slope
            );
        }
        None => {
            let _ = writeln!(s, "plot 'plot.dat' using 1:2 with linespoints title 'residual'");
        }
    }
    s
}

/// The structured-text summary, config embedded verbatim at the end.
pub fn render_summary(report: &ExperimentReport, config: &ExperimentConfig) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "experiment:");
    let _ = writeln!(s, "  label: {}", report.label);
    let _ = writeln!(
        s,
        "  triple: ({}, {}, {})",
        config.triple.a, config.triple.b, config.triple.c
    );
    let _ = writeln!(s, "  grid_points: {}", report.rows.len());
    let _ = writeln!(s, "model:");
    let _ = writeln!(s, "  label: {}", report.model_label);
    let _ = writeln!(s, "  error_exponent: {}", report.predicted_exponent);
    let _ = writeln!(s, "  error_log_power: {}", report.predicted_log_power);
    let _ = writeln!(s, "rows:");
    for r in &report.rows {
        let _ = writeln!(s, "  - T: {}", r.t);
        let _ = writeln!(s, "    re_moment: {}", r.moment.re);
        let _ = writeln!(s, "    im_moment: {}", r.moment.im);
        let _ = writeln!(s, "    main_term: {}", r.main_term);
        let _ = writeln!(s, "    abs_residual: {}", r.abs_residual);
        let _ = writeln!(s, "    quad_err: {}", r.quad_err_est);
    }
    match &report.fit {
        Some(fit) => {
            let _ = writeln!(s, "fit:");
            let _ = writeln!(s, "  slope: {}", fit.slope);
            let _ = writeln!(s, "  intercept: {}", fit.intercept);
            let _ = writeln!(s, "  r_squared: {}", fit.r_squared);
            let _ = writeln!(s, "  points_used: {}", fit.points_used);
        }
        None => {
            let _ = writeln!(s, "fit:");
            let _ = writeln!(
                s,
                "  note: {}",
                report.fit_note.as_deref().unwrap_or("not computed")
            );
        }
    }
    let _ = writeln!(s, "assertion:");
    match (report.slope_ceiling, report.assertion_passed) {
        (Some(ceiling), Some(passed)) => {
            let _ = writeln!(s, "  slope_ceiling: {ceiling}");
            let _ = writeln!(s, "  passed: {passed}");
        }
        _ => {
            let _ = writeln!(s, "  slope_ceiling: none");
        }
    }
    let _ = writeln!(s, "config_toml: |");
    // The embedded record defines the experiment, and worker count is a
    // scheduling knob with no influence on the numbers (the determinism
    // acceptance check holds us to that), so it is normalized out.  Keeping it
    // would make otherwise identical runs disagree byte-for-byte.
    let mut recorded = config.clone();
    recorded.workers = 0;
    for line in recorded.to_toml().lines() {
        let _ = writeln!(s, "  {line}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::TripleSpec;

    #[test]
    fn every_preset_validates_and_matches_its_model() {
        for name in preset_names() {
            let cfg = preset(name).unwrap();
            let triple = cfg.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
            let model = main_term_model(&triple, cfg.same_sign).unwrap();
            assert_eq!(
                Some(model.case.label().to_string()),
                cfg.expected_model,
                "preset {name} built a mismatched model"
            );
            assert!(cfg.t_grid.iter().all(|&t| t <= 2000.0), "{name}: desk-scale grids only");
        }
    }

    #[test]
    fn unknown_preset_is_an_error() {
        assert!(matches!(
            preset("thm-9.9"),
            Err(ReportError::UnknownPreset { .. })
        ));
    }

    #[test]
    fn empty_grid_fails_validation_before_any_compute() {
        let cfg = ExperimentConfig::new("bad", TripleSpec::new("1", "3", "2"), vec![]);
        assert!(matches!(
            evaluate_experiment(&cfg),
            Err(ReportError::Config(ConfigError::EmptyGrid))
        ));
    }

    #[test]
    fn model_mismatch_is_caught_before_any_compute() {
        let mut cfg =
            ExperimentConfig::new("bad", TripleSpec::new("1", "3", "2"), vec![500.0, 1000.0]);
        cfg.expected_model = Some("thm-1.2-sigma".into());
        assert!(matches!(
            evaluate_experiment(&cfg),
            Err(ReportError::ModelMismatch { .. })
        ));
    }

    #[test]
    fn csv_renderer_is_stable_and_ordered() {
        use num_complex::Complex64;
        let rows = vec![
            SweepRow {
                t: 500.0,
                moment: Complex64::new(1.25, -0.5),
                main_term: 1.0,
                residual: Complex64::new(0.25, -0.5),
                abs_residual: 0.5590169943749475,
                quad_err_est: 1e-9,
            },
            SweepRow {
                t: 1000.0,
                moment: Complex64::new(2.5, 0.125),
                main_term: 2.0,
                residual: Complex64::new(0.5, 0.125),
                abs_residual: 0.5153882032022076,
                quad_err_est: 2e-9,
            },
        ];
        let csv = render_csv(&rows);
        let again = render_csv(&rows);
        assert_eq!(csv, again);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "T,re_moment,im_moment,main_term,abs_residual,quad_err"
        );
        assert_eq!(lines.next().unwrap(), "500,1.25,-0.5,1,0.5590169943749475,0.000000001");
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn summary_embeds_the_config_verbatim() {
        let mut cfg = preset("thm-1.3").unwrap();
        cfg.workers = 6; // must be normalized out of the embedded record
        let report = ExperimentReport {
            label: cfg.label.clone(),
            model_label: "thm-1.3-zeta-product".into(),
            predicted_exponent: 0.75,
            predicted_log_power: 2,
            rows: vec![],
            fit: None,
            fit_note: Some("fit skipped: only 0 usable points".into()),
            slope_ceiling: cfg.slope_ceiling,
            assertion_passed: Some(false),
            out_dir: PathBuf::new(),
            files: vec![],
        };
        let summary = render_summary(&report, &cfg);
        let mut recorded = cfg.clone();
        recorded.workers = 0;
        for line in recorded.to_toml().lines() {
            assert!(
                summary.contains(line),
                "summary lost config line {line:?}"
            );
        }
        assert!(summary.contains("config_toml: |"));
        // And the embedded block parses back to the identical config.
        let embedded: String = summary
            .lines()
            .skip_while(|l| *l != "config_toml: |")
            .skip(1)
            .map(|l| l.strip_prefix("  ").unwrap_or(l))
            .collect::<Vec<_>>()
            .join("\n");
        let back = ExperimentConfig::from_toml(&embedded).unwrap();
        assert_eq!(back, recorded);
        assert_ne!(back.workers, cfg.workers);
    }

    #[test]
    fn plot_script_references_fit_when_present() {
        let report = ExperimentReport {
            label: "demo".into(),
            model_label: "thm-1.2-sigma".into(),
            predicted_exponent: 0.9166666666666666,
            predicted_log_power: 0,
            rows: vec![],
            fit: Some(crate::fit::FitResult {
                slope: 0.8,
                intercept: 1.5,
                r_squared: 0.99,
                points_used: 4,
            }),
            fit_note: None,
            slope_ceiling: Some(1.0),
            assertion_passed: Some(true),
            out_dir: PathBuf::new(),
            files: vec![],
        };
        let script = render_plot_script(&report);
        assert!(script.contains("set logscale xy"));
        assert!(script.contains("x**(0.8)"));
        let bare = ExperimentReport { fit: None, ..report };
        assert!(!render_plot_script(&bare).contains("x**"));
    }
}
