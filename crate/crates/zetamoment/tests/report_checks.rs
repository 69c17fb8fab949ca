//! The experiment pipeline end to end: deterministic files, the output-dir
//! override, and float formatting that survives a round trip.

mod common;

use std::fs;

use zetamoment::config::{ExperimentConfig, TripleSpec};
use zetamoment::report::run_experiment;

fn small_config(label: &str, out: &std::path::Path) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(
        label,
        TripleSpec::new("1", "3", "2"),
        vec![300.0, 600.0],
    );
    cfg.out_dir = out.to_string_lossy().into_owned();
    cfg
}

fn read_outputs(dir: &std::path::Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read(&p).unwrap(),
            )
        })
        .collect()
}

#[test]
fn pipeline_reruns_are_byte_identical() {
    let base = common::fresh_out_dir("rerun");
    let report = run_experiment(&small_config("rerun", &base)).unwrap();
    let first = read_outputs(&report.out_dir);
    assert_eq!(
        first.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>(),
        vec!["plot.dat", "plot.gp", "results.csv", "summary.txt"],
    );
    let report2 = run_experiment(&small_config("rerun", &base)).unwrap();
    let second = read_outputs(&report2.out_dir);
    assert_eq!(first, second, "rerun changed an output byte");
    common::drop_out_dir(&base);
}

#[test]
fn worker_count_leaves_every_byte_alone() {
    let base = common::fresh_out_dir("workers");
    let mut snapshots = Vec::new();
    for workers in [1usize, 3] {
        let mut cfg = small_config("workers", &base);
        cfg.workers = workers;
        let report = run_experiment(&cfg).unwrap();
        snapshots.push(read_outputs(&report.out_dir));
    }
    assert_eq!(
        snapshots[0], snapshots[1],
        "worker count leaked into the output files"
    );
    common::drop_out_dir(&base);
}

/// The single test that touches the environment override (env vars are
/// process-global, so exactly one test sets and clears it).
#[test]
fn env_var_redirects_the_output_tree() {
    let override_dir = common::fresh_out_dir("env-override");
    std::env::set_var("ZETAMOMENT_OUT_DIR", &override_dir);
    let ignored = common::fresh_out_dir("env-ignored");
    let report = run_experiment(&small_config("redirected", &ignored));
    std::env::remove_var("ZETAMOMENT_OUT_DIR");
    let report = report.unwrap();
    assert!(
        report.out_dir.starts_with(&override_dir),
        "output went to {} instead of the override",
        report.out_dir.display()
    );
    assert!(report.out_dir.join("results.csv").exists());
    assert!(!ignored.exists(), "config dir was used despite the override");
    common::drop_out_dir(&override_dir);
}

/// Same-sign moments bypass the mixed-moment sweep machinery and build their
/// rows from the raw product integral; the pipeline must still produce a
/// complete, finite report.
#[test]
fn same_sign_pipeline_produces_finite_rows() {
    let mut cfg = ExperimentConfig::new(
        "same-sign-small",
        TripleSpec::new("1", "2", "3"),
        vec![200.0, 400.0],
    );
    cfg.same_sign = true;
    let report = zetamoment::report::evaluate_experiment(&cfg).unwrap();
    assert_eq!(report.model_label, "same-sign");
    assert_eq!(report.rows.len(), 2);
    for row in &report.rows {
        assert!(row.moment.re.is_finite() && row.moment.im.is_finite());
        assert!(row.abs_residual.is_finite());
        assert!(row.quad_err_est.is_finite() && row.quad_err_est >= 0.0);
    }
}

#[test]
fn csv_floats_round_trip_exactly() {
    let base = common::fresh_out_dir("roundtrip");
    let report = run_experiment(&small_config("roundtrip", &base)).unwrap();
    let csv = fs::read_to_string(report.out_dir.join("results.csv")).unwrap();
    for line in csv.lines().skip(1) {
        for field in line.split(',') {
            let v: f64 = field.parse().unwrap();
            assert_eq!(
                format!("{v}"),
                field,
                "field {field:?} is not shortest-round-trip formatted"
            );
        }
    }
    common::drop_out_dir(&base);
}
