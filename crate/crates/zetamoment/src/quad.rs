//! Oscillation-aware quadrature for moment integrals on the critical line.
//!
//! Everything here integrates products of critical-line factors over [0, T]
//! (or [clip, T] for Dirichlet-polynomial integrands):
//!
//! * `integrate_product` — Π_k ζ(½ ± i·c_k·t) for an arbitrary factor list;
//! * `integrate_moment`  — the mixed moment I_{a,b,c}(T) with the fixed
//!   (+a, −b, −c) pattern;
//! * `integrate_p_product` — the surrogate ∫ P̃_θ(at)·P(−bt)·P(−ct) dt built
//!   from approximate-functional-equation combinations;
//! * `integrate_component` — the six pieces I₁ … I₆ of the 8-term expansion
//!   of that product (D and χ·D̄ slots multiplied out), which sum to the
//!   surrogate *pointwise*, so the decomposition identity holds panel-exactly;
//! * `sweep` — a T-grid of moments sharing one panel partition, paired with a
//!   main-term model.
//!
//! The engine is composite Gauss–Legendre with a fixed panel width
//! h = min(cap, π / (2·Σ|c_k|·log max(T,10))): the fastest phase in any
//! integrand is ≤ Σ|c_k|·log(scale), so this keeps ≥ 8 nodes per oscillation
//! at the top of the range, where order-16 Gauss–Legendre is accurate to
//! ~10⁻¹⁰.  The partition depends only on (interval, h); panels are evaluated
//! as independent work items (optionally on a private thread pool) and merged
//! strictly in panel order through compensated sums, so results are
//! bit-identical for every worker count.
//!
//! The error estimate compares each 16th panel (and always the trailing
//! partial panel) against its two-subpanel refinement, scales the sampled
//! total by the stride, and adds a rounding floor proportional to Σ|panel|.
//! Refinements only feed the estimate — they never alter the value, so
//! estimating is free of heisenbugs by construction.

use num_complex::Complex64;
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::chi::chi;
use crate::dirichlet::{dirichlet_poly, p_combination_theta};
use crate::kahan::{KahanComplex, KahanSum};
use crate::model::MainTermModel;
use crate::triple::TwistTriple;
use crate::zeta::zeta_critical_with_order;
use crate::TWO_PI;

/// Relative tolerance for "this grid point sits on a panel edge".
const EDGE_TOL: f64 = 1e-9;
/// Offset added to the clip point so every Dirichlet polynomial is nonempty.
const CLIP_EPS: f64 = 1e-6;

/// Tuning knobs; `Default` reproduces the published configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadOpts {
    /// Gauss–Legendre order per panel.
    pub panel_order: usize,
    /// Upper bound on the panel width h.
    pub width_cap: f64,
    /// Worker threads; 0 uses the process-global pool.  The result is
    /// bit-identical either way.
    pub workers: usize,
    /// Refine every k-th panel for the error estimate.
    pub err_stride: usize,
    /// Riemann–Siegel correction order for zeta factors.
    pub rs_order: usize,
    /// Fix the panel width directly (sweeps use this to share a partition
    /// across grid points); `None` applies the width rule.
    pub h_override: Option<f64>,
}

impl Default for QuadOpts {
    fn default() -> Self {
        QuadOpts {
            panel_order: 16,
            width_cap: 0.25,
            workers: 0,
            err_stride: 16,
            rs_order: 5,
            h_override: None,
        }
    }
}

/// Failure modes of the integration entry points.
#[derive(Debug, Clone, PartialEq)]
pub enum QuadError {
    NegativeUpperLimit { t: f64 },
    NonpositiveUpperLimit { t: f64 },
    NonpositiveCoefficient { coefficient: f64 },
    ThetaOutOfRange { theta: f64 },
    InvalidComponent { j: u32 },
    EmptyGrid,
    GridNotAscending { index: usize },
}

impl std::fmt::Display for QuadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuadError::NegativeUpperLimit { t } => {
                write!(f, "upper limit must be ≥ 0, got {t}")
            }
            QuadError::NonpositiveUpperLimit { t } => {
                write!(f, "upper limit must be > 0, got {t}")
            }
            QuadError::NonpositiveCoefficient { coefficient } => {
                write!(f, "factor coefficients must be > 0, got {coefficient}")
            }
            QuadError::ThetaOutOfRange { theta } => {
                write!(f, "theta must lie in (0,1), got {theta}")
            }
            QuadError::InvalidComponent { j } => {
                write!(f, "component index must be 1..=6, got {j}")
            }
            QuadError::EmptyGrid => write!(f, "sweep grid is empty"),
            QuadError::GridNotAscending { index } => {
                write!(f, "sweep grid must ascend strictly (violated at index {index})")
            }
        }
    }
}

impl std::error::Error for QuadError {}

/// One integral, with enough bookkeeping to audit the quadrature.
///
/// `triple` is populated when the integrand came from a coefficient triple;
/// generic factor lists (the second-moment oracle, same-sign experiments)
/// leave it empty.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentResult {
    pub triple: Option<TwistTriple>,
    /// Upper limit of integration.
    pub t_upper: f64,
    pub value: Complex64,
    /// Stride-extrapolated refinement delta plus a rounding floor.
    pub quad_err_est: f64,
    pub panel_count: u64,
    pub eval_count: u64,
    /// Lower integration limit: 0 for zeta products, the reported clip point
    /// for Dirichlet-based integrands (whose head [0, clip) is skipped).
    pub clip_lo: f64,
}

impl MomentResult {
    fn invariant_ok(&self) -> bool {
        self.quad_err_est >= 0.0 && self.t_upper >= 0.0
    }
}

/// One sweep entry: the moment against its modelled main term.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub t: f64,
    pub moment: Complex64,
    pub main_term: f64,
    /// moment − main_term (the imaginary part rides along as residual).
    pub residual: Complex64,
    pub abs_residual: f64,
    pub quad_err_est: f64,
}

// ---------------------------------------------------------------------------
// Gauss–Legendre rules
// ---------------------------------------------------------------------------

/// Nodes and weights on [−1, 1], cached per order.  Newton iteration on the
/// Legendre recurrence; monotone convergence from the Chebyshev initial guess
/// in ≤ 5 steps at machine precision.
fn gl_rule(order: usize) -> Arc<Vec<(f64, f64)>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<(f64, f64)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("gl cache lock");
    if let Some(rule) = guard.get(&order) {
        return rule.clone();
    }
    let n = order;
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut deriv = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            deriv = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / deriv;
            x -= dx;
            if dx.abs() < 1e-15 {
                // One polishing pass after convergence.
                let (mut q0, mut q1) = (1.0f64, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let q2 = ((2.0 * kf - 1.0) * x * q1 - (kf - 1.0) * q0) / kf;
                    q0 = q1;
                    q1 = q2;
                }
                deriv = n as f64 * (x * q1 - q0) / (x * x - 1.0);
                x -= q1 / deriv;
                break;
            }
        }
        rule.push((x, 2.0 / ((1.0 - x * x) * deriv * deriv)));
    }
    let rule = Arc::new(rule);
    guard.insert(order, rule.clone());
    rule
}

// ---------------------------------------------------------------------------
// Core engine
// ---------------------------------------------------------------------------

struct PanelOut {
    value: Complex64,
    /// |base − refined| when this panel was sampled for the estimate.
    delta: f64,
    abs: f64,
    evals: u64,
}

fn gl_panel(f: &(dyn Fn(f64) -> Complex64 + Sync), lo: f64, hi: f64, rule: &[(f64, f64)]) -> Complex64 {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut acc = Complex64::new(0.0, 0.0);
    for &(x, w) in rule {
        acc += w * f(mid + half * x);
    }
    half * acc
}

fn eval_panel(
    f: &(dyn Fn(f64) -> Complex64 + Sync),
    lo: f64,
    hi: f64,
    rule: &[(f64, f64)],
    refine: bool,
) -> PanelOut {
    let base = gl_panel(f, lo, hi, rule);
    let order = rule.len() as u64;
    if !refine {
        return PanelOut { value: base, delta: 0.0, abs: base.norm(), evals: order };
    }
    let mid = 0.5 * (lo + hi);
    let fine = gl_panel(f, lo, mid, rule) + gl_panel(f, mid, hi, rule);
    PanelOut {
        value: base,
        delta: (base - fine).norm(),
        abs: base.norm(),
        evals: 3 * order,
    }
}

pub(crate) struct CoreOut {
    pub(crate) value: Complex64,
    pub(crate) err: f64,
    pub(crate) panels: u64,
    pub(crate) evals: u64,
}

/// Integrate f over [lo, hi] on the fixed partition {lo + k·h}.  Full panels
/// are evaluated as independent work items and merged in index order; the
/// trailing partial panel (if any) is always refined for the estimate.
pub(crate) fn integrate_core(
    f: &(dyn Fn(f64) -> Complex64 + Sync),
    lo: f64,
    hi: f64,
    h: f64,
    opts: &QuadOpts,
) -> CoreOut {
    if hi <= lo {
        return CoreOut { value: Complex64::new(0.0, 0.0), err: 0.0, panels: 0, evals: 0 };
    }
    let rule = gl_rule(opts.panel_order);
    let stride = opts.err_stride.max(1);
    let span = hi - lo;
    let n_full = (span / h + EDGE_TOL).floor() as u64;
    let outs = run_parallel(opts.workers, || {
        (0..n_full)
            .into_par_iter()
            .map(|k| {
                let a = lo + k as f64 * h;
                let b = lo + (k + 1) as f64 * h;
                eval_panel(f, a, b, &rule, k % stride as u64 == 0)
            })
            .collect::<Vec<_>>()
    });
    let mut value = KahanComplex::new();
    let mut sampled = KahanSum::new();
    let mut abs_sum = KahanSum::new();
    let mut evals = 0u64;
    for out in &outs {
        value.add(out.value);
        sampled.add(out.delta);
        abs_sum.add(out.abs);
        evals += out.evals;
    }
    let mut panels = n_full;
    let mut err = stride as f64 * sampled.value();
    let boundary = lo + n_full as f64 * h;
    if hi - boundary > EDGE_TOL * h {
        let out = eval_panel(f, boundary, hi, &rule, true);
        value.add(out.value);
        abs_sum.add(out.abs);
        err += out.delta;
        evals += out.evals;
        panels += 1;
    }
    err += 2e-16 * abs_sum.value();
    CoreOut { value: value.value(), err, panels, evals }
}

fn run_parallel<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> T {
    if workers == 0 {
        job()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool construction")
            .install(job)
    }
}

/// Panel width for a factor set of total |coefficient| mass `coeff_sum`.
fn panel_width(coeff_sum: f64, t_upper: f64, opts: &QuadOpts) -> f64 {
    if let Some(h) = opts.h_override {
        return h;
    }
    if coeff_sum <= 0.0 {
        return opts.width_cap;
    }
    let scale = t_upper.max(10.0).ln();
    opts.width_cap.min(std::f64::consts::PI / (2.0 * coeff_sum * scale))
}

// ---------------------------------------------------------------------------
// Integrands
// ---------------------------------------------------------------------------

fn zeta_product_integrand(factors: Vec<(f64, bool)>, rs_order: usize) -> impl Fn(f64) -> Complex64 + Sync {
    move |t: f64| {
        let mut acc = Complex64::new(1.0, 0.0);
        for &(c, conjugated) in &factors {
            let z = zeta_critical_with_order(c * t, rs_order).value;
            acc *= if conjugated { z.conj() } else { z };
        }
        acc
    }
}

/// D_{1/2}(½ + i·x·t) with cutoff (xt/2π)^{1/2}.
fn d_half(x: f64, t: f64) -> Complex64 {
    dirichlet_poly(0.5, 0.5, x * t, x * t).expect("theta = 1/2 is in range")
}

/// χ(½ + i·x·t); the argument is kept beyond the clip so no pole guard trips.
fn chi_half(x: f64, t: f64) -> Complex64 {
    chi(0.5, x * t).expect("positive height on the critical line")
}

/// The j-th component integrand of the 8-term expansion of
/// P̃_θ(at)·P(−bt)·P(−ct); see the module docs for the slot conventions.
fn component_integrand(
    j: u32,
    a: f64,
    b: f64,
    c: f64,
    theta: f64,
) -> Box<dyn Fn(f64) -> Complex64 + Sync + Send> {
    let dth = move |t: f64| dirichlet_poly(theta, 0.5, a * t, a * t).expect("theta validated");
    // Reflected slots: D(½ − ixt) = conj D(½ + ixt), χ(½ − ixt) = conj χ(½ + ixt).
    match j {
        1 => Box::new(move |t| dth(t) * d_half(b, t).conj() * d_half(c, t).conj()),
        2 => Box::new(move |t| {
            let base = dth(t);
            base * d_half(b, t).conj() * (chi_half(c, t).conj() * d_half(c, t))
                + base * d_half(c, t).conj() * (chi_half(b, t).conj() * d_half(b, t))
        }),
        3 => Box::new(move |t| {
            dth(t)
                * (chi_half(b, t).conj() * d_half(b, t))
                * (chi_half(c, t).conj() * d_half(c, t))
        }),
        4 => Box::new(move |t| {
            (chi_half(a, t) * d_half(a, t).conj())
                * (chi_half(b, t).conj() * d_half(b, t))
                * (chi_half(c, t).conj() * d_half(c, t))
        }),
        5 => Box::new(move |t| {
            (chi_half(a, t) * d_half(a, t).conj()) * d_half(b, t).conj() * d_half(c, t).conj()
        }),
        6 => Box::new(move |t| {
            let head = chi_half(a, t) * d_half(a, t).conj();
            head * d_half(b, t).conj() * (chi_half(c, t).conj() * d_half(c, t))
                + head * d_half(c, t).conj() * (chi_half(b, t).conj() * d_half(b, t))
        }),
        _ => unreachable!("component index validated by caller"),
    }
}

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------

/// ∫₀ᵀ Π_k ζ(½ + i·c_k·t) dt, factors flagged `true` conjugated (½ − i·c_k·t).
/// An empty factor list integrates the constant 1.
pub fn integrate_product(
    factors: &[(f64, bool)],
    t_upper: f64,
    opts: &QuadOpts,
) -> Result<MomentResult, QuadError> {
    if t_upper < 0.0 {
        return Err(QuadError::NegativeUpperLimit { t: t_upper });
    }
    for &(c, _) in factors {
        if c <= 0.0 {
            return Err(QuadError::NonpositiveCoefficient { coefficient: c });
        }
    }
    let coeff_sum: f64 = factors.iter().map(|&(c, _)| c).sum();
    let h = panel_width(coeff_sum, t_upper, opts);
    let f = zeta_product_integrand(factors.to_vec(), opts.rs_order);
    let core = integrate_core(&f, 0.0, t_upper, h, opts);
    let res = MomentResult {
        triple: None,
        t_upper,
        value: core.value,
        quad_err_est: core.err,
        panel_count: core.panels,
        eval_count: core.evals,
        clip_lo: 0.0,
    };
    debug_assert!(res.invariant_ok());
    Ok(res)
}

/// I_{a,b,c}(T) = ∫₀ᵀ ζ(½+iat)·ζ(½−ibt)·ζ(½−ict) dt.
pub fn integrate_moment(
    triple: &TwistTriple,
    t_upper: f64,
    opts: &QuadOpts,
) -> Result<MomentResult, QuadError> {
    let (a, b, c) = triple.values();
    let mut res = integrate_product(&[(a, false), (b, true), (c, true)], t_upper, opts)?;
    res.triple = Some(*triple);
    Ok(res)
}

/// ∫ P̃_θ(at)·P(−bt)·P(−ct) dt over [clip, T], clip = 2π/min(a,b,c) + ε.
/// The skipped head is reported through `clip_lo`; T at or below the clip
/// point yields 0 with the flag still set.
pub fn integrate_p_product(
    triple: &TwistTriple,
    t_upper: f64,
    theta: f64,
    opts: &QuadOpts,
) -> Result<MomentResult, QuadError> {
    if t_upper <= 0.0 {
        return Err(QuadError::NonpositiveUpperLimit { t: t_upper });
    }
    if !(theta > 0.0 && theta < 1.0) {
        return Err(QuadError::ThetaOutOfRange { theta });
    }
    let (a, b, c) = triple.values();
    let clip = TWO_PI / a.min(b).min(c) + CLIP_EPS;
    let h = panel_width(a + b + c, t_upper, opts);
    let f = move |t: f64| {
        p_combination_theta(theta, a * t).expect("theta validated, |at| beyond clip")
            * p_combination_theta(0.5, -b * t).expect("|bt| beyond clip")
            * p_combination_theta(0.5, -c * t).expect("|ct| beyond clip")
    };
    let core = integrate_core(&f, clip, t_upper, h, opts);
    Ok(MomentResult {
        triple: Some(*triple),
        t_upper,
        value: core.value,
        quad_err_est: core.err,
        panel_count: core.panels,
        eval_count: core.evals,
        clip_lo: clip,
    })
}

/// The j-th component integral I_j(T) over [clip, T]; the six components sum
/// to `integrate_p_product` panel-exactly (same clip, same width rule).
pub fn integrate_component(
    j: u32,
    triple: &TwistTriple,
    t_upper: f64,
    theta: f64,
    opts: &QuadOpts,
) -> Result<MomentResult, QuadError> {
    if !(1..=6).contains(&j) {
        return Err(QuadError::InvalidComponent { j });
    }
    if t_upper <= 0.0 {
        return Err(QuadError::NonpositiveUpperLimit { t: t_upper });
    }
    if !(theta > 0.0 && theta < 1.0) {
        return Err(QuadError::ThetaOutOfRange { theta });
    }
    let (a, b, c) = triple.values();
    let clip = TWO_PI / a.min(b).min(c) + CLIP_EPS;
    let h = panel_width(a + b + c, t_upper, opts);
    let f = component_integrand(j, a, b, c, theta);
    let core = integrate_core(&f, clip, t_upper, h, opts);
    Ok(MomentResult {
        triple: Some(*triple),
        t_upper,
        value: core.value,
        quad_err_est: core.err,
        panel_count: core.panels,
        eval_count: core.evals,
        clip_lo: clip,
    })
}

/// Moments on an ascending T-grid sharing one partition (width from the grid
/// maximum), so nested grids produce bit-identical rows at shared points.
pub fn sweep(
    triple: &TwistTriple,
    t_grid: &[f64],
    model: &MainTermModel,
    opts: &QuadOpts,
) -> Result<Vec<SweepRow>, QuadError> {
    if t_grid.is_empty() {
        return Err(QuadError::EmptyGrid);
    }
    if t_grid[0] <= 0.0 {
        return Err(QuadError::GridNotAscending { index: 0 });
    }
    for i in 1..t_grid.len() {
        if t_grid[i] <= t_grid[i - 1] {
            return Err(QuadError::GridNotAscending { index: i });
        }
    }
    let (a, b, c) = triple.values();
    let t_max = *t_grid.last().expect("nonempty grid");
    let h = panel_width(a + b + c, t_max, opts);
    let rule = gl_rule(opts.panel_order);
    let stride = opts.err_stride.max(1);
    let f = zeta_product_integrand(vec![(a, false), (b, true), (c, true)], opts.rs_order);

    let n_full = (t_max / h + EDGE_TOL).floor() as u64;
    let outs = run_parallel(opts.workers, || {
        (0..n_full)
            .into_par_iter()
            .map(|k| {
                let lo = k as f64 * h;
                let hi = (k + 1) as f64 * h;
                eval_panel(&f, lo, hi, &rule, k % stride as u64 == 0)
            })
            .collect::<Vec<_>>()
    });

    // Sequential prefix scan: the Kahan states after k full panels match a
    // single-shot integration with the same width bit for bit.
    let mut rows = Vec::with_capacity(t_grid.len());
    let mut value = KahanComplex::new();
    let mut sampled = KahanSum::new();
    let mut abs_sum = KahanSum::new();
    let mut merged = 0u64;
    for &t in t_grid {
        let prefix = ((t / h) + EDGE_TOL).floor() as u64;
        let prefix = prefix.min(n_full);
        while merged < prefix {
            let out = &outs[merged as usize];
            value.add(out.value);
            sampled.add(out.delta);
            abs_sum.add(out.abs);
            merged += 1;
        }
        let boundary = prefix as f64 * h;
        let mut moment = value.value();
        let mut err = stride as f64 * sampled.value();
        let mut abs_here = abs_sum.value();
        if t - boundary > EDGE_TOL * h {
            let out = eval_panel(&f, boundary, t, &rule, true);
            moment += out.value;
            err += out.delta;
            abs_here += out.abs;
        }
        err += 2e-16 * abs_here;
        let main_term = model.predict(t);
        let residual = Complex64::new(moment.re - main_term, moment.im);
        rows.push(SweepRow {
            t,
            moment,
            main_term,
            residual,
            abs_residual: residual.norm(),
            quad_err_est: err,
        });
    }
    Ok(rows)
}
