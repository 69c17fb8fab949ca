//! ζ on the critical line, plus the small amount of real-axis ζ machinery the
//! main-term constants need.
//!
//! Two evaluation routes:
//!
//! * |t| < 30 — Euler–Maclaurin at N = 48 with seven Bernoulli corrections;
//!   truncation ~10⁻¹⁶, so the reported error is pure rounding headroom.
//! * |t| ≥ 30 — the Riemann–Siegel formula
//!
//!   ```text
//!   Z(t) = 2 Σ_{n ≤ m} cos(θ(t) − t log n)/√n
//!          + (−1)^{m−1} τ^{−1/2} Σ_{k ≤ order} C_k(p) τ^{−k},
//!   ```
//!
//!   with τ = √(t/2π), m = ⌊τ⌋, p = τ − m, and the C_k evaluated from frozen
//!   Taylor expansions about p = 1/2.  ζ(1/2+it) = Z(t) e^{−iθ(t)}.
//!
//! The Riemann–Siegel error estimate is an empirically calibrated envelope,
//! not an asymptotic guess: truncation constants were fitted against a
//! high-order reference and doubled, and a rounding floor proportional to
//! |θ(t)| and to the main-sum length covers the f64 phase arithmetic.  The
//! estimate is validated against an independent high-precision oracle in the
//! integration tests.

use crate::kahan::{KahanComplex, KahanSum};
use crate::rs_tables::*;
use crate::TWO_PI;
use num_complex::Complex64;
use std::fmt;

/// How a [`CriticalValue`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaMethod {
    EulerMaclaurin,
    RiemannSiegel,
    /// Assembled from the approximate functional equation
    /// P(t) = D(1/2+it) + χ(1/2+it) D(1/2−it); error O(t^{−1/4}).
    FunctionalEqCombination,
}

impl fmt::Display for ZetaMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ZetaMethod::EulerMaclaurin => "euler-maclaurin",
            ZetaMethod::RiemannSiegel => "riemann-siegel",
            ZetaMethod::FunctionalEqCombination => "functional-eq-combination",
        };
        f.write_str(s)
    }
}

/// A single evaluation of ζ(1/2 + it) with provenance and an error estimate.
///
/// Invariants: evaluating at −t yields the conjugate value (the dispatcher
/// guarantees this bit-exactly), and `abs_err_est` is meant to dominate the
/// defect against any higher-order reference evaluation.
#[derive(Debug, Clone, Copy)]
pub struct CriticalValue {
    pub t: f64,
    pub value: Complex64,
    pub method: ZetaMethod,
    pub abs_err_est: f64,
}

/// B_{2k}/(2k)! for k = 1..7, the Euler–Maclaurin correction weights.
const EM_WEIGHTS: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
];

const EM_CUTOFF: usize = 48;

/// Euler–Maclaurin evaluation of ζ(s) for complex s, tuned for σ = 1/2,
/// |t| ≲ 40.  Truncation after seven corrections at N = 48 is ~10⁻¹⁶ there.
fn zeta_em_complex(s: Complex64) -> Complex64 {
    let n = EM_CUTOFF as f64;
    let mut head = KahanComplex::new();
    for k in 1..EM_CUTOFF {
        let kf = k as f64;
        head.add((-s * kf.ln()).exp());
    }
    let n_pow_minus_s = (-s * n.ln()).exp();
    let mut tail = n_pow_minus_s * n / (s - 1.0) + n_pow_minus_s * 0.5;
    let inv_n2 = 1.0 / (n * n);
    let mut poch = s;
    let mut npow = n_pow_minus_s / n;
    for (k, w) in EM_WEIGHTS.iter().enumerate() {
        tail += *w * poch * npow;
        let j = 2.0 * (k as f64 + 1.0);
        poch *= (s + (j - 1.0)) * (s + j);
        npow *= inv_n2;
    }
    head.value() + tail
}

/// The Riemann–Siegel theta function, large-t asymptotic:
/// θ(t) = t/2·log(t/2π) − t/2 − π/8 + 1/(48t) + 7/(5760t³) + 31/(80640t⁵).
/// The next omitted term is below 10⁻¹⁵ for t ≥ 25.
pub fn theta_rs(t: f64) -> f64 {
    let lg = (t / TWO_PI).ln();
    let t2 = t * t;
    0.5 * t * lg - 0.5 * t - std::f64::consts::FRAC_PI_8
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t * t2)
        + 31.0 / (80640.0 * t * t2 * t2)
}

/// Evaluate C_k(p) by Horner in u = p − 1/2.
fn rs_correction_term(k: usize, u: f64) -> f64 {
    let table: &[f64] = match k {
        0 => &RS_C0_TAYLOR,
        1 => &RS_C1_TAYLOR,
        2 => &RS_C2_TAYLOR,
        3 => &RS_C3_TAYLOR,
        4 => &RS_C4_TAYLOR,
        5 => &RS_C5_TAYLOR,
        _ => unreachable!("correction order capped at 5"),
    };
    let mut acc = 0.0;
    for &c in table.iter().rev() {
        acc = acc * u + c;
    }
    acc
}

/// Fitted truncation envelope constants: the defect of the order-k formula
/// behaves like A_k·τ^{−(k+3/2)}, with A_k measured against a high-order
/// reference at moderate t and doubled for safety in [`rs_err_est`].
const RS_TRUNC: [f64; 6] = [2.80e-2, 5.36e-3, 4.44e-4, 4.69e-4, 7.59e-5, 3.44e-5];

/// Error estimate for the order-`order` Riemann–Siegel value of Z(t).
///
/// Truncation envelope plus a rounding floor: the phase θ(t) − t·log n enters
/// through f64 arithmetic, so each of the m main-sum terms carries ~ε|θ|
/// phase noise.
pub fn rs_err_est(t: f64, order: usize) -> f64 {
    let order = order.min(5);
    let tau = (t / TWO_PI).sqrt();
    let m = tau.floor();
    let trunc = 2.0 * RS_TRUNC[order] * tau.powf(-(order as f64 + 1.5));
    trunc + 5e-16 * theta_rs(t).abs() + 4e-16 * m + 1e-13
}

/// Hardy's Z function by the Riemann–Siegel formula with `order` correction
/// terms (clamped to 5).  Intended for t ≳ 25; the caller picks the EM route
/// below the switchover.
pub fn z_function(t: f64, order: usize) -> f64 {
    assert!(t > TWO_PI, "Riemann–Siegel needs t > 2π, got {t}");
    let order = order.min(5);
    let tau = (t / TWO_PI).sqrt();
    let m = tau.floor();
    let p = tau - m;
    let theta = theta_rs(t);
    let mut main = KahanSum::new();
    for n in 1..=(m as u64) {
        let nf = n as f64;
        main.add((theta - t * nf.ln()).cos() / nf.sqrt());
    }
    let u = p - 0.5;
    let mut corr = 0.0;
    for k in (0..=order).rev() {
        corr = corr / tau + rs_correction_term(k, u);
    }
    let sign = if (m as u64) % 2 == 1 { 1.0 } else { -1.0 };
    2.0 * main.value() + sign * corr / tau.sqrt()
}

/// ζ(1/2 + it) with the default correction order (5).
pub fn zeta_critical(t: f64) -> CriticalValue {
    zeta_critical_with_order(t, 5)
}

/// ζ(1/2 + it), choosing Euler–Maclaurin below |t| = 30 and Riemann–Siegel
/// above, with `order` correction terms on the RS side.
pub fn zeta_critical_with_order(t: f64, order: usize) -> CriticalValue {
    if t < 0.0 {
        let v = zeta_critical_with_order(-t, order);
        return CriticalValue {
            t,
            value: v.value.conj(),
            ..v
        };
    }
    if t < 30.0 {
        let value = zeta_em_complex(Complex64::new(0.5, t));
        CriticalValue {
            t,
            value,
            method: ZetaMethod::EulerMaclaurin,
            abs_err_est: 5e-15 * (1.0 + t),
        }
    } else {
        let z = z_function(t, order);
        let theta = theta_rs(t);
        let value = Complex64::from_polar(z, -theta);
        // Rotation by e^{−iθ} adds |Z|·ε|θ| on top of the Z-value error.
        let abs_err_est = rs_err_est(t, order) + (1.0 + z.abs()) * 3e-16 * theta.abs();
        CriticalValue {
            t,
            value,
            method: ZetaMethod::RiemannSiegel,
            abs_err_est,
        }
    }
}

/// ζ(s) for real s > 1 (Euler–Maclaurin, N = 48, seven corrections).
/// Relative accuracy ~10⁻¹⁵ across the range the crate uses (s ≥ 5/4).
pub fn zeta_real(s: f64) -> f64 {
    assert!(s > 1.0, "zeta_real needs s > 1, got {s}");
    let n = EM_CUTOFF as f64;
    let mut head = KahanSum::new();
    for k in 1..EM_CUTOFF {
        head.add((k as f64).powf(-s));
    }
    let npow_s = n.powf(-s);
    let mut tail = npow_s * n / (s - 1.0) + 0.5 * npow_s;
    let inv_n2 = 1.0 / (n * n);
    let mut poch = s;
    let mut npow = npow_s / n;
    for (k, w) in EM_WEIGHTS.iter().enumerate() {
        tail += *w * poch * npow;
        let j = 2.0 * (k as f64 + 1.0);
        poch *= (s + (j - 1.0)) * (s + j);
        npow *= inv_n2;
    }
    head.value() + tail
}

/// φ(s) = (s−1)·ζ(s), computed without the pole cancellation, valid on
/// s ∈ (0, 3] and exact at s = 1 (φ(1) = 1).  The constants module feeds on
/// finite differences of φ near 1, where this arrangement keeps full
/// precision.
pub fn zeta_phi(s: f64) -> f64 {
    let n = EM_CUTOFF as f64;
    let mut head = KahanSum::new();
    for k in 1..EM_CUTOFF {
        head.add((k as f64).powf(-s));
    }
    let npow_s = n.powf(-s);
    let mut corr = KahanSum::from_value(0.5 * npow_s);
    let inv_n2 = 1.0 / (n * n);
    let mut poch = s;
    let mut npow = npow_s / n;
    for (k, w) in EM_WEIGHTS.iter().enumerate() {
        corr.add(*w * poch * npow);
        let j = 2.0 * (k as f64 + 1.0);
        poch *= (s + (j - 1.0)) * (s + j);
        npow *= inv_n2;
    }
    (s - 1.0) * (head.value() + corr.value()) + npow_s * n
}

/// ζ′(s) for real s > 1, by term-by-term differentiation of the same
/// Euler–Maclaurin formula (the Pochhammer products are differentiated via
/// the product rule, not log-derivatives, to stay safe near integer s).
pub fn zeta_real_deriv(s: f64) -> f64 {
    assert!(s > 1.0, "zeta_real_deriv needs s > 1, got {s}");
    let n = EM_CUTOFF as f64;
    let ln_n = n.ln();
    let mut head = KahanSum::new();
    for k in 1..EM_CUTOFF {
        let kf = k as f64;
        head.add(-kf.ln() * kf.powf(-s));
    }
    let npow_s = n.powf(-s);
    let sm1 = s - 1.0;
    let mut tail = -ln_n * npow_s * n / sm1 - npow_s * n / (sm1 * sm1) - 0.5 * ln_n * npow_s;
    let inv_n2 = 1.0 / (n * n);
    let mut poch = s;
    let mut dpoch = 1.0;
    let mut npow = npow_s / n;
    for (k, w) in EM_WEIGHTS.iter().enumerate() {
        tail += *w * (dpoch - poch * ln_n) * npow;
        let j = 2.0 * (k as f64 + 1.0);
        let f1 = s + (j - 1.0);
        let f2 = s + j;
        dpoch = dpoch * f1 * f2 + poch * (f1 + f2);
        poch *= f1 * f2;
        npow *= inv_n2;
    }
    head.value() + tail
}
