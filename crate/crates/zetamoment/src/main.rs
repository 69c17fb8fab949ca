//! Command-line front end for the zetamoment laboratory.
//!
//! Subcommands map one-to-one onto the library's laboratories: `moment`,
//! `components`, and `sweep` drive the quadrature engine; `sigma`, `diagonal`,
//! and `gap-scan` the arithmetic; `stationary` the saddle-point split;
//! `constants`, `fit`, and `campaign` the reporting layer.  Exit codes: 0 on
//! success, 1 when a campaign's slope assertion fails, 2 for invalid
//! configuration or runtime errors (clap's own usage errors are also 2).

use std::error::Error;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use zetamoment::config::ExperimentConfig;
use zetamoment::constants::constants_table;
use zetamoment::diagonal::{diagonal_partial_sums, enumerate_diagonal, power_family, BoxCaps};
use zetamoment::fit::{fit_error_exponent, fit_with_log_divisor};
use zetamoment::gaps::{gap_scan, offdiagonal_sums};
use zetamoment::model::main_term_model;
use zetamoment::quad::{
    integrate_component, integrate_moment, integrate_p_product, sweep, QuadOpts,
};
use zetamoment::report::{preset, preset_names, run_experiment};
use zetamoment::stationary::{k1_m1_split, phase_descriptor, stationary_eval, StationaryOpts};
use zetamoment::triple::TwistTriple;

#[derive(Parser)]
#[command(
    name = "zetamoment",
    version,
    about = "Numerical laboratory for mixed moments of ζ on the critical line"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    /// Aligned human-readable columns.
    Table,
    /// Nested key-value record (machine-diffable).
    Structured,
}

#[derive(Args)]
struct TripleArgs {
    /// Twist a: rational ("2", "1/2") or quadratic surd ("1+sqrt(2)").
    #[arg(long)]
    a: String,
    /// Twist b (conjugated side).
    #[arg(long)]
    b: String,
    /// Twist c (conjugated side).
    #[arg(long)]
    c: String,
}

impl TripleArgs {
    fn parse(&self) -> Result<TwistTriple, Box<dyn Error>> {
        Ok(TwistTriple::parse(&self.a, &self.b, &self.c)?)
    }
}

#[derive(Args)]
struct QuadArgs {
    /// Gauss–Legendre nodes per panel.
    #[arg(long, default_value_t = 16)]
    panel_order: usize,
    /// Worker threads (0 = library default pool).
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

impl QuadArgs {
    fn opts(&self) -> QuadOpts {
        QuadOpts { panel_order: self.panel_order, workers: self.workers, ..QuadOpts::default() }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Integrate the mixed moment I_{a,b,c}(T) by direct ζ-quadrature.
    Moment {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long = "T")]
        t: f64,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// The six Dirichlet-polynomial components I₁..I₆ and their sum at T.
    Components {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long = "T")]
        t: f64,
        /// Cutoff exponent θ for the rotated polynomial.
        #[arg(long, default_value_t = 0.5)]
        theta: f64,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Sweep the moment over a T grid against the triple's main-term model.
    Sweep {
        #[command(flatten)]
        triple: TripleArgs,
        /// Comma-separated ascending T values, e.g. 250,500,1000,2000.
        #[arg(long = "t-grid", value_delimiter = ',', required = true)]
        t_grid: Vec<f64>,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// The singular-series constant σ_{a,b,c} via its Euler product.
    Sigma {
        #[command(flatten)]
        triple: TripleArgs,
        /// Relative tolerance for the truncation.
        #[arg(long, default_value_t = 1e-6)]
        rel_tol: f64,
    },
    /// Enumerate diagonal solutions n₁^a = n₂^b n₃^c (or a power family via --l1/--l2/--l3).
    Diagonal {
        #[command(flatten)]
        triple: TripleArgs,
        /// Uniform index cap for the enumeration box.
        #[arg(long, default_value_t = 200)]
        caps: u64,
        /// Also evaluate the partial sums J₁, J₃, J₄ at this T.
        #[arg(long = "T")]
        t: Option<f64>,
        #[arg(long, default_value_t = 0.5)]
        theta: f64,
        /// Power-family exponent l₁ (with --l2/--l3: list n=(w^{l2}v^{l3})-type solutions).
        #[arg(long)]
        l1: Option<i64>,
        #[arg(long)]
        l2: Option<i64>,
        #[arg(long)]
        l3: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Scan the off-diagonal gaps D = n₁^a − n₂^b n₃^c and abc-quality statistics.
    GapScan {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, default_value_t = 60)]
        caps: u64,
        /// Quality-exponent slack ε.
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// Also evaluate the off-diagonal sums J₂,₁ and J₂,₂ at this T.
        #[arg(long = "T")]
        t: Option<f64>,
        #[arg(long, default_value_t = 0.5)]
        theta: f64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// The saddle-point split K₁ + M₁ at T; with --n1/--n2/--n3, one tuple's evaluation.
    Stationary {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long = "T")]
        t: f64,
        /// Evaluate a single index tuple instead of the full split.
        #[arg(long)]
        n1: Option<u64>,
        #[arg(long)]
        n2: Option<u64>,
        #[arg(long)]
        n3: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// The frozen analytic constants (γ, γ₁, c₁, c₀, ν_b).
    Constants {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Fit a residual exponent from a results.csv (columns T,...,abs_residual).
    Fit {
        /// Path to a results.csv written by `campaign`, or any two-column "T residual" file.
        file: String,
        /// Divide residuals by (log T)^p before fitting.
        #[arg(long, default_value_t = 0.0)]
        log_divisor: f64,
    },
    /// Run a full experiment: sweep + fit + report files.
    Campaign {
        /// One of the shipped presets (see --list).
        #[arg(long, conflicts_with = "config")]
        preset: Option<String>,
        /// A TOML config file instead of a preset.
        #[arg(long)]
        config: Option<String>,
        /// Override the output base directory.
        #[arg(long)]
        out: Option<String>,
        /// Override the worker count.
        #[arg(long)]
        workers: Option<usize>,
        /// List available presets and exit.
        #[arg(long)]
        list: bool,
    },
}

fn emit(format: Format, section: &str, pairs: &[(&str, String)]) {
    match format {
        Format::Table => {
            let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in pairs {
                println!("{k:<width$}  {v}");
            }
        }
        Format::Structured => {
            println!("{section}:");
            for (k, v) in pairs {
                println!("  {k}: {v}");
            }
        }
    }
}

fn run() -> Result<ExitCode, Box<dyn Error>> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Moment { triple, t, quad, format } => {
            let tri = triple.parse()?;
            let res = integrate_moment(&tri, t, &quad.opts())?;
            emit(
                format,
                "moment",
                &[
                    ("T", format!("{t}")),
                    ("re", format!("{}", res.value.re)),
                    ("im", format!("{}", res.value.im)),
                    ("re/T", format!("{}", res.value.re / t)),
                    ("quad_err_est", format!("{}", res.quad_err_est)),
                    ("panels", format!("{}", res.panel_count)),
                ],
            );
        }
        Cmd::Components { triple, t, theta, quad, format } => {
            let tri = triple.parse()?;
            let opts = quad.opts();
            let mut pairs: Vec<(&str, String)> = Vec::new();
            let mut sum = num_complex::Complex64::new(0.0, 0.0);
            let mut err_sum = 0.0;
            let labels = ["I1", "I2", "I3", "I4", "I5", "I6"];
            for j in 1..=6u32 {
                let res = integrate_component(j, &tri, t, theta, &opts)?;
                sum += res.value;
                err_sum += res.quad_err_est;
                pairs.push((labels[(j - 1) as usize], format!("{} {:+}i", res.value.re, res.value.im)));
            }
            let direct = integrate_p_product(&tri, t, theta, &opts)?;
            err_sum += direct.quad_err_est;
            let defect = (sum - direct.value).norm();
            pairs.push(("sum", format!("{} {:+}i", sum.re, sum.im)));
            pairs.push(("direct", format!("{} {:+}i", direct.value.re, direct.value.im)));
            pairs.push(("defect", format!("{defect}")));
            pairs.push(("err_budget", format!("{err_sum}")));
            emit(format, "components", &pairs);
        }
        Cmd::Sweep { triple, t_grid, quad, format } => {
            let tri = triple.parse()?;
            let model = main_term_model(&tri, false)?;
            let rows = sweep(&tri, &t_grid, &model, &quad.opts())?;
            match format {
                Format::Table => {
                    println!(
                        "{:>10}  {:>22}  {:>22}  {:>22}  {:>12}",
                        "T", "re_moment", "main_term", "abs_residual", "quad_err"
                    );
                    for r in &rows {
                        println!(
                            "{:>10}  {:>22}  {:>22}  {:>22}  {:>12.3e}",
                            r.t, r.moment.re, r.main_term, r.abs_residual, r.quad_err_est
                        );
                    }
                }
                Format::Structured => {
                    println!("sweep:");
                    println!("  model: {}", model.case.label());
                    for r in &rows {
                        println!("  - T: {}", r.t);
                        println!("    re_moment: {}", r.moment.re);
                        println!("    im_moment: {}", r.moment.im);
                        println!("    main_term: {}", r.main_term);
                        println!("    abs_residual: {}", r.abs_residual);
                    }
                }
            }
            let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.t, r.abs_residual)).collect();
            if let Ok(fit) = fit_error_exponent(&points) {
                println!(
                    "fitted residual slope {} (model error exponent {})",
                    fit.slope, model.error_exponent
                );
            }
        }
        Cmd::Sigma { triple, rel_tol } => {
            if !(rel_tol > 0.0 && rel_tol < 1.0) {
                return Err(format!("--rel-tol must lie in (0,1), got {rel_tol}").into());
            }
            let tri = triple.parse()?;
            let sigma = zetamoment::sigma::sigma_constant(&tri, rel_tol)?;
            println!("sigma      {}", sigma.value);
            println!("tail_bound {}", sigma.tail_bound);
        }
        Cmd::Diagonal { triple, caps, t, theta, l1, l2, l3, format } => {
            if let (Some(l1), Some(l2), Some(l3)) = (l1, l2, l3) {
                let family = power_family(l1, l2, l3, caps)?;
                println!("power family l = ({l1}, {l2}, {l3}), bound {caps}: {} members", family.len());
                for sol in &family {
                    println!("  ({}, {}, {})", sol.n1, sol.n2, sol.n3);
                }
                return Ok(ExitCode::SUCCESS);
            }
            let tri = triple.parse()?;
            let enumeration = enumerate_diagonal(&tri, &BoxCaps::uniform(caps))?;
            let mut pairs: Vec<(&str, String)> = vec![(
                "solutions",
                format!("{}", enumeration.solutions.len()),
            )];
            if let Some(note) = &enumeration.note {
                pairs.push(("note", note.clone()));
            }
            emit(format, "diagonal", &pairs);
            for sol in enumeration.solutions.iter().take(50) {
                println!("  ({}, {}, {})  [{}]", sol.n1, sol.n2, sol.n3, sol.provenance);
            }
            if enumeration.solutions.len() > 50 {
                println!("  … {} more", enumeration.solutions.len() - 50);
            }
            if let Some(t) = t {
                let sums = diagonal_partial_sums(&tri, t, theta)?;
                let mut pairs: Vec<(&str, String)> = vec![
                    ("sigma_partial", format!("{}", sums.sigma_partial)),
                    ("j1", format!("{}", sums.j1)),
                    ("j4", format!("{}", sums.j4)),
                ];
                pairs.push((
                    "j3",
                    sums.j3.map(|v| format!("{v}")).unwrap_or_else(|| "divergent".into()),
                ));
                if let Some(s_ab) = sums.s_ab {
                    pairs.push(("s_ab", format!("{s_ab}")));
                }
                emit(format, "partial-sums", &pairs);
            }
        }
        Cmd::GapScan { triple, caps, epsilon, t, theta, format } => {
            let tri = triple.parse()?;
            let report = gap_scan(&tri, &BoxCaps::uniform(caps), epsilon)?;
            let mut pairs: Vec<(&str, String)> = vec![
                ("total_tuples", format!("{}", report.total_tuples)),
                ("offdiagonal", format!("{}", report.offdiagonal_tuples)),
                ("zero_tuples", format!("{}", report.zero_tuples.len())),
                ("roth_count", format!("{}", report.roth_count)),
                ("records", format!("{}", report.records.len())),
            ];
            if report.offdiagonal_tuples > 0 {
                pairs.push(("min_quality", format!("{}", report.min_quality)));
                let (n1, n2, n3) = report.min_tuple;
                pairs.push(("min_tuple", format!("({n1}, {n2}, {n3})")));
            }
            for (p, q) in &report.quality_percentiles {
                pairs.push(("percentile", format!("p{p}: {q}")));
            }
            emit(format, "gap-scan", &pairs);
            for rec in report.records.iter().take(20) {
                println!(
                    "  ({}, {}, {})  D = {}  quality {}",
                    rec.n1, rec.n2, rec.n3, rec.d, rec.quality
                );
            }
            if let Some(t) = t {
                let sums = offdiagonal_sums(&tri, t, theta)?;
                emit(
                    format,
                    "offdiagonal-sums",
                    &[
                        ("j21", format!("{}", sums.j21)),
                        ("j21_terms", format!("{}", sums.j21_terms)),
                        ("j22", format!("{} {:+}i", sums.j22.re, sums.j22.im)),
                        ("j22_terms", format!("{}", sums.j22_terms)),
                    ],
                );
            }
        }
        Cmd::Stationary { triple, t, n1, n2, n3, format } => {
            let tri = triple.parse()?;
            if let (Some(n1), Some(n2), Some(n3)) = (n1, n2, n3) {
                let desc = phase_descriptor(&tri, (n1, n2, n3))?;
                let mut pairs: Vec<(&str, String)> = vec![
                    ("saddle", format!("{}", desc.saddle)),
                    ("u1", format!("{}", desc.u1)),
                    ("exact", format!("{}", desc.exact)),
                    (
                        "main_term",
                        format!("{} {:+}i", desc.main_term.re, desc.main_term.im),
                    ),
                ];
                let half = 12.0 * desc.saddle.sqrt();
                let window = (desc.saddle - half, desc.saddle + half);
                match stationary_eval(&tri, (n1, n2, n3), window, &StationaryOpts::default()) {
                    Ok(eval) => {
                        pairs.push(("window", format!("[{}, {}]", window.0, window.1)));
                        pairs.push((
                            "direct",
                            format!("{} {:+}i", eval.direct.re, eval.direct.im),
                        ));
                        pairs.push(("ratio", format!("{}", eval.ratio)));
                    }
                    Err(e) => pairs.push(("eval", format!("skipped: {e}"))),
                }
                emit(format, "stationary-tuple", &pairs);
                return Ok(ExitCode::SUCCESS);
            }
            let split = k1_m1_split(&tri, t)?;
            emit(
                format,
                "stationary-split",
                &[
                    ("T", format!("{t}")),
                    ("k1", format!("{}", split.k1)),
                    ("m1", format!("{} {:+}i", split.m1.re, split.m1.im)),
                    ("m1_norm", format!("{}", split.m1.norm())),
                    ("integral_tuples", format!("{}", split.integral_tuples)),
                    ("total_tuples", format!("{}", split.total_tuples)),
                ],
            );
        }
        Cmd::Constants { format } => {
            let table = constants_table();
            let mut pairs: Vec<(&str, String)> = vec![
                ("gamma", format!("{}", table.gamma)),
                ("gamma1", format!("{}", table.gamma1)),
                ("c1", format!("{}", table.c1)),
                ("c0", format!("{}", table.c0)),
            ];
            let nus: Vec<String> =
                table.nu_b.iter().map(|(b, v)| format!("nu_{b} = {v}")).collect();
            for nu in &nus {
                pairs.push(("nu", nu.clone()));
            }
            emit(format, "constants", &pairs);
        }
        Cmd::Fit { file, log_divisor } => {
            let text = std::fs::read_to_string(&file)?;
            let rows = parse_residual_rows(&text)?;
            let fit = if log_divisor == 0.0 {
                fit_error_exponent(&rows)
            } else {
                fit_with_log_divisor(&rows, log_divisor)
            }?;
            println!("slope       {}", fit.slope);
            println!("intercept   {}", fit.intercept);
            println!("r_squared   {}", fit.r_squared);
            println!("points_used {}", fit.points_used);
        }
        Cmd::Campaign { preset: preset_name, config, out, workers, list } => {
            if list {
                for name in preset_names() {
                    println!("{name}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let mut cfg: ExperimentConfig = match (&preset_name, &config) {
                (Some(name), _) => preset(name)?,
                (None, Some(path)) => {
                    ExperimentConfig::from_toml(&std::fs::read_to_string(path)?)?
                }
                (None, None) => {
                    return Err("campaign needs --preset <name> or --config <file> (try --list)".into())
                }
            };
            if let Some(out) = out {
                cfg.out_dir = out;
            }
            if let Some(workers) = workers {
                cfg.workers = workers;
            }
            let report = run_experiment(&cfg)?;
            println!("campaign {}", report.label);
            println!("  model            {}", report.model_label);
            println!(
                "  predicted error exponent {} (log power {})",
                report.predicted_exponent, report.predicted_log_power
            );
            match &report.fit {
                Some(fit) => println!("  fitted slope     {}", fit.slope),
                None => println!(
                    "  fitted slope     {}",
                    report.fit_note.as_deref().unwrap_or("not computed")
                ),
            }
            for file in &report.files {
                println!("  wrote {}", file.display());
            }
            match report.assertion_passed {
                Some(true) => println!("  assertion PASS (slope ≤ {})", report.slope_ceiling.unwrap()),
                Some(false) => {
                    println!("  assertion FAIL (ceiling {})", report.slope_ceiling.unwrap());
                    return Ok(ExitCode::from(1));
                }
                None => {}
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Accept either a `campaign` results.csv (header names the columns) or any
/// whitespace/comma table whose first two numeric fields are T and residual.
fn parse_residual_rows(text: &str) -> Result<Vec<(f64, f64)>, Box<dyn Error>> {
    let mut rows = Vec::new();
    let mut residual_col = 1usize;
    let mut t_col = 0usize;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(|ch: char| ch == ',' || ch.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        if i == 0 && fields.iter().any(|f| f.parse::<f64>().is_err()) {
            // Header row: locate the columns by name.
            if let Some(pos) = fields.iter().position(|f| *f == "abs_residual") {
                residual_col = pos;
            }
            if let Some(pos) = fields.iter().position(|f| *f == "T") {
                t_col = pos;
            }
            continue;
        }
        if fields.len() <= residual_col.max(t_col) {
            continue;
        }
        let t: f64 = fields[t_col].parse()?;
        let r: f64 = fields[residual_col].parse()?;
        rows.push((t, r));
    }
    if rows.is_empty() {
        return Err("no data rows found".into());
    }
    Ok(rows)
}

fn main() -> ExitCode {
    // Rust spawns with SIGPIPE ignored, which turns `zetamoment … | head`
    // into a broken-pipe panic; restore the default unix behaviour.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
