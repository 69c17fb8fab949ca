//! Residual-exponent fitting: the quantitative back-end of every sweep.
//!
//! The theorems under test are statements of the form E(T) ≪ T^α (log T)^β, so
//! the laboratory's verdict on a sweep is the least-squares slope of
//! log|residual| against log T.  A fitted slope comfortably below a theorem's
//! error exponent is desk-scale evidence for the bound; a slope at or above 1
//! means the "main term" is not actually the main term.
//!
//! Two refinements matter in practice.  First, rows with zero residual carry no
//! information for a log fit (and all-zero residuals mean the model matched
//! exactly — reported as its own condition rather than a slope).  Second, a
//! (log T)^β factor masquerades as extra slope on desk-scale grids; the
//! log-aware variant divides residuals by a configured power of log T before
//! fitting so the power-law part can be read off cleanly.

use std::error::Error;
use std::fmt;

use crate::kahan::KahanSum;

/// Least-squares summary of log|residual| against log T.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    /// Fitted exponent: d log(residual) / d log T.
    pub slope: f64,
    /// Fitted log-amplitude at log T = 0.
    pub intercept: f64,
    /// Squared correlation of the log-log points; 1 for an exact power law
    /// (including the degenerate constant-residual case).
    pub r_squared: f64,
    /// Rows that actually entered the fit (positive finite T and residual).
    pub points_used: usize,
}

/// Why a fit could not be produced.
#[derive(Debug, Clone, PartialEq)]
pub enum FitError {
    /// Fewer than 3 usable (T, residual) points after filtering.
    TooFewPoints { usable: usize },
    /// Every usable row had residual exactly 0: the model matched exactly and
    /// a log-log slope is undefined.
    ExactMatch,
}

impl fmt::Display for FitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitError::TooFewPoints { usable } => {
                write!(f, "need at least 3 usable points for a log-log fit, got {usable}")
            }
            FitError::ExactMatch => {
                write!(f, "all residuals are exactly zero: exact match, slope undefined")
            }
        }
    }
}

impl Error for FitError {}

/// Fit log(residual) = slope·log T + intercept by least squares.
///
/// Rows are filtered before fitting: T must be positive and finite, the
/// residual positive and finite.  Zero residuals are dropped (they carry no
/// log-scale information); if nothing but zeros survives the T filter the
/// result is [`FitError::ExactMatch`].
pub fn fit_error_exponent(rows: &[(f64, f64)]) -> Result<FitResult, FitError> {
    fit_with_log_divisor(rows, 0.0)
}

/// Like [`fit_error_exponent`], but divides each residual by (log T)^`log_power`
/// first, so a known logarithmic factor does not inflate the fitted slope.
/// With a nonzero power, rows need T > 1 for the divisor to be positive.
pub fn fit_with_log_divisor(rows: &[(f64, f64)], log_power: f64) -> Result<FitResult, FitError> {
    let mut xs: Vec<f64> = Vec::with_capacity(rows.len());
    let mut ys: Vec<f64> = Vec::with_capacity(rows.len());
    let mut zero_rows = 0usize;
    for &(t, r) in rows {
        if !(t > 0.0) || !t.is_finite() || !r.is_finite() || r < 0.0 {
            continue;
        }
        if log_power != 0.0 && t <= 1.0 {
            continue;
        }
        if r == 0.0 {
            zero_rows += 1;
            continue;
        }
        let divisor = if log_power == 0.0 { 1.0 } else { t.ln().powf(log_power) };
        xs.push(t.ln());
        ys.push((r / divisor).ln());
    }
    let n = xs.len();
    if n < 3 {
        if n == 0 && zero_rows > 0 {
            return Err(FitError::ExactMatch);
        }
        return Err(FitError::TooFewPoints { usable: n });
    }

    let mean = |v: &[f64]| {
        let mut s = KahanSum::new();
        for &x in v {
            s.add(x);
        }
        s.value() / v.len() as f64
    };
    let x_bar = mean(&xs);
    let y_bar = mean(&ys);
    let mut sxx = KahanSum::new();
    let mut sxy = KahanSum::new();
    let mut syy = KahanSum::new();
    for i in 0..n {
        let dx = xs[i] - x_bar;
        let dy = ys[i] - y_bar;
        sxx.add(dx * dx);
        sxy.add(dx * dy);
        syy.add(dy * dy);
    }
    let slope = sxy.value() / sxx.value();
    let intercept = y_bar - slope * x_bar;
    let r_squared = if syy.value() == 0.0 {
        1.0
    } else {
        (sxy.value() * sxy.value()) / (sxx.value() * syy.value())
    };
    Ok(FitResult { slope, intercept, r_squared, points_used: n })
}
