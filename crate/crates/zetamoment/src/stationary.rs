//! Stationary-phase laboratory for the rotated fifth component.
//!
//! The six-term decomposition leaves one piece whose oscillation is driven by a
//! single χ-factor: after expanding the Dirichlet-polynomial product, each index
//! triple 𝐧 = (n₁, n₂, n₃) contributes an integral of P_𝐧^{−1/2} e^{iF₅(t)} with
//!
//!   F₅(t)  = −a·t·log(a·t) + a·t·(log 2π + 1) + t·log(n₁^a n₂^b n₃^c),
//!   F₅′(t) = −a·log t − a·log a + a·log 2π + log(n₁^a n₂^b n₃^c),
//!
//! and P_𝐧 = n₁n₂n₃.  F₅′ is strictly decreasing in t and vanishes at the saddle
//!
//!   c_𝐧 = (2π/a) · n₁ · U₁,      U₁ = n₂^{b/a} n₃^{c/a},
//!
//! where F₅(c_𝐧) = a·c_𝐧 = 2π n₁U₁, so the stationary value of e^{iF₅} is the
//! unimodular factor e(n₁U₁) := e^{2πi·n₁U₁}.  The second-derivative test
//! (F₅″ = −a/t) turns each admissible tuple into the main term
//!
//!   (2π/a) · n₂^{b/2a − 1/2} · n₃^{c/2a − 1/2} · e(n₁U₁):
//!
//! the amplitude P_𝐧^{−1/2} times the Gaussian width √(2π c_𝐧 / a) collapses to
//! exactly that coefficient.  (The χ-factor's own e^{iπ/4} cancels the Gaussian's
//! e^{−iπ/4}, which is why no residual eighth-root of unity appears; the bare
//! e^{iF₅} quadrature in [`stationary_eval`] omits both, so only moduli are
//! compared there.)
//!
//! Summing the main terms over every tuple whose saddle lies in the admissible
//! window N_𝐧 ≤ c_𝐧 ≤ T splits the sum by the arithmetic of U₁:
//!
//!  * U₁ ∈ ℤ  — then e(n₁U₁) = 1 and the contribution K₁ is real, positive and
//!    monotone in T; for a = 1 every U₁ is an integer, so this class is the
//!    whole sum and M₁ ≡ 0 identically;
//!  * U₁ ∉ ℤ  — a genuinely oscillating complex sum M₁ carrying the phases
//!    e(n₁U₁), expected to exhibit square-root cancellation.
//!
//! Precision.  e(n₁U₁) is evaluated as e(n₁·φ) with φ = U₁ − N₁ the signed
//! offset to the nearest integer N₁, recovered from the exact integer difference
//! n₂^b n₃^c − N₁^a (the gap laboratory's machinery).  Reducing the small
//! quantity n₁·φ mod 1 sidesteps the catastrophic argument reduction that
//! n₁·U₁ itself would suffer once it grows past ~2^26.
//!
//! Validity regime.  The Gaussian bulk of the saddle has width ≍ √c_𝐧 and the
//! evaluator demands a guard band of 10·√c_𝐧 on both sides of the saddle.  Both
//! fit above t = 0 only when c_𝐧 > 100, which is why
//! [`StationaryOpts::regime_threshold`] defaults to 100; it can be raised for
//! stricter experiments but lowering it below 100 leaves no admissible window
//! at all.

use std::error::Error;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::gaps::resonant_offset;
use crate::intutil::big_pow;
use crate::kahan::{KahanComplex, KahanSum};
use crate::quad::{integrate_core, QuadOpts};
use crate::triple::TwistTriple;
use crate::TWO_PI;

/// Ways a stationary-phase request can be malformed.
#[derive(Debug, Clone, PartialEq)]
pub enum StationaryError {
    /// The time parameter must be positive and finite.
    NonpositiveT { t: f64 },
    /// Index triples live in ℕ³; a zero component has no Dirichlet term.
    ZeroIndex,
    /// The exponent machinery needs genuinely integer (a, b, c).
    NonIntegerTriple { a: f64, b: f64, c: f64 },
    /// Integration windows must satisfy 0 < lo < hi, both finite.
    InvalidInterval { lo: f64, hi: f64 },
    /// Saddle below the asymptotic-regime floor.
    BelowRegime { saddle: f64, threshold: f64 },
    /// The saddle must lie strictly inside the window.
    SaddleOutsideInterval { saddle: f64, lo: f64, hi: f64 },
    /// Both endpoints must keep 10·√c_𝐧 clear of the saddle.
    EndpointsTooClose { saddle: f64, required: f64 },
}

impl fmt::Display for StationaryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StationaryError::NonpositiveT { t } => {
                write!(f, "time parameter must be positive and finite, got {t}")
            }
            StationaryError::ZeroIndex => {
                write!(f, "index triple components must be positive integers")
            }
            StationaryError::NonIntegerTriple { a, b, c } => {
                write!(f, "stationary lab needs integer exponents, got ({a}, {b}, {c})")
            }
            StationaryError::InvalidInterval { lo, hi } => {
                write!(f, "integration window must satisfy 0 < lo < hi, got [{lo}, {hi}]")
            }
            StationaryError::BelowRegime { saddle, threshold } => {
                write!(f, "saddle {saddle} below asymptotic-regime floor {threshold}")
            }
            StationaryError::SaddleOutsideInterval { saddle, lo, hi } => {
                write!(f, "saddle {saddle} outside integration window [{lo}, {hi}]")
            }
            StationaryError::EndpointsTooClose { saddle, required } => {
                write!(
                    f,
                    "endpoints must stay {required} away from the saddle {saddle} (10·√saddle)"
                )
            }
        }
    }
}

impl Error for StationaryError {}

/// Knobs for the stationary-phase evaluator.
#[derive(Debug, Clone)]
pub struct StationaryOpts {
    /// Smallest saddle the second-derivative approximation is trusted for.
    /// 100 is the geometric floor (see the module notes); raise it to restrict
    /// experiments to deeper asymptotic territory.
    pub regime_threshold: f64,
    /// Quadrature engine settings for the direct integral.
    pub quad: QuadOpts,
}

impl Default for StationaryOpts {
    fn default() -> Self {
        StationaryOpts { regime_threshold: 100.0, quad: QuadOpts::default() }
    }
}

/// Everything the saddle of one index triple determines.
#[derive(Debug, Clone)]
pub struct PhaseDescriptor {
    /// The index triple (n₁, n₂, n₃).
    pub n: (u64, u64, u64),
    /// U₁ = n₂^{b/a} n₃^{c/a}, reconstructed as N₁ + φ from the exact offset.
    pub u1: f64,
    /// Nearest integer N₁ to U₁.
    pub n1_nearest: u64,
    /// Signed offset φ = U₁ − N₁, exact-rounded through ln1p/expm1.
    pub offset: f64,
    /// Whether U₁ is exactly an integer (the K₁ class).
    pub exact: bool,
    /// Saddle abscissa c_𝐧 = (2π/a) n₁ U₁.
    pub saddle: f64,
    /// P_𝐧^{−1/2} = (n₁n₂n₃)^{−1/2}.
    pub amplitude: f64,
    /// (2π/a) n₂^{b/2a−1/2} n₃^{c/2a−1/2} · e(n₁U₁).
    pub main_term: Complex64,
}

/// Outcome of comparing the saddle approximation against direct quadrature.
#[derive(Debug, Clone)]
pub struct StationaryEval {
    /// The per-tuple main term predicted by the second-derivative test.
    pub approx: Complex64,
    /// Quadrature of P_𝐧^{−1/2} e^{iF₅} over the requested window.
    pub direct: Complex64,
    /// |direct| / |approx|.
    pub ratio: f64,
    /// Saddle abscissa, for the caller's bookkeeping.
    pub saddle: f64,
    /// Refinement-based error estimate from the quadrature engine.
    pub quad_err_est: f64,
    /// Panels the engine used.
    pub panels: u64,
}

/// The saddle sum split by the arithmetic of U₁.
#[derive(Debug, Clone)]
pub struct K1M1Split {
    /// Real, monotone contribution of tuples with U₁ ∈ ℤ.
    pub k1: f64,
    /// Oscillating contribution of the complement.
    pub m1: Complex64,
    /// Number of tuples in the integer-U₁ class.
    pub integral_tuples: u64,
    /// Number of admissible tuples altogether.
    pub total_tuples: u64,
    /// The T the window N_𝐧 ≤ c_𝐧 ≤ T was built from.
    pub t: f64,
}

/// Demand genuinely integer exponents (the descriptor and split machinery work
/// with exact integer powers of the physical a, b, c — a rational triple like
/// (1/2, 3/2, 1) must be rescaled by its caller first).
fn strict_exponents(triple: &TwistTriple) -> Result<(u64, u64, u64), StationaryError> {
    let (a, b, c) = triple.values();
    let is_small_int = |x: f64| x > 0.0 && x.fract() == 0.0 && x <= 4.0e9;
    if !(is_small_int(a) && is_small_int(b) && is_small_int(c)) {
        return Err(StationaryError::NonIntegerTriple { a, b, c });
    }
    Ok((a as u64, b as u64, c as u64))
}

/// F₅ and F₅′ at t, for the index triple n against the (possibly non-integer)
/// twist triple.  Only the logarithms of the indices enter, so this accepts any
/// positive real exponents; the u64 components of n must be positive.
pub fn phase_f5(
    triple: &TwistTriple,
    n: (u64, u64, u64),
    t: f64,
) -> Result<(f64, f64), StationaryError> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(StationaryError::NonpositiveT { t });
    }
    if n.0 == 0 || n.1 == 0 || n.2 == 0 {
        return Err(StationaryError::ZeroIndex);
    }
    let (a, b, c) = triple.values();
    let log_prod =
        a * (n.0 as f64).ln() + b * (n.1 as f64).ln() + c * (n.2 as f64).ln();
    let at = a * t;
    let value = -at * at.ln() + at * (TWO_PI.ln() + 1.0) + t * log_prod;
    let derivative = -a * t.ln() - a * a.ln() + a * TWO_PI.ln() + log_prod;
    Ok((value, derivative))
}

/// Build the saddle descriptor for one index triple.
pub fn phase_descriptor(
    triple: &TwistTriple,
    n: (u64, u64, u64),
) -> Result<PhaseDescriptor, StationaryError> {
    let (a, b, c) = strict_exponents(triple)?;
    if n.0 == 0 || n.1 == 0 || n.2 == 0 {
        return Err(StationaryError::ZeroIndex);
    }
    let v = big_pow(n.1, b as u32) * big_pow(n.2, c as u32);
    let (n1_nearest, offset, exact) = resonant_offset(&v, a as u32);
    let u1 = n1_nearest as f64 + offset;
    let a_f = a as f64;
    let saddle = TWO_PI * (n.0 as f64) * u1 / a_f;
    let amplitude = 1.0 / ((n.0 * n.1 * n.2) as f64).sqrt();
    let coeff = TWO_PI / a_f
        * (n.1 as f64).powf((b as f64) / (2.0 * a_f) - 0.5)
        * (n.2 as f64).powf((c as f64) / (2.0 * a_f) - 0.5);
    // e(n₁U₁) = e(n₁φ): integer shifts n₁N₁ drop out of the exponential exactly.
    let frac = ((n.0 as f64) * offset).fract();
    let main_term = Complex64::from_polar(coeff, TWO_PI * frac);
    Ok(PhaseDescriptor {
        n,
        u1,
        n1_nearest,
        offset,
        exact,
        saddle,
        amplitude,
        main_term,
    })
}

/// Quadrature of P_𝐧^{−1/2} e^{iF₅(t)} over [lo, hi], with no opinion about
/// where (or whether) the saddle sits — the raw object both the evaluator and
/// the derivative-bound tests need.  The panel width keeps the phase advance
/// per panel below π/2 at the faster endpoint (F₅′ is monotone, so the extreme
/// rates are attained there).
pub fn phase_integral(
    triple: &TwistTriple,
    n: (u64, u64, u64),
    interval: (f64, f64),
    opts: &StationaryOpts,
) -> Result<(Complex64, f64, u64), StationaryError> {
    let (lo, hi) = interval;
    if !(lo > 0.0) || !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(StationaryError::InvalidInterval { lo, hi });
    }
    let desc = phase_descriptor(triple, n)?;
    let amplitude = desc.amplitude;
    let (_, d_lo) = phase_f5(triple, n, lo)?;
    let (_, d_hi) = phase_f5(triple, n, hi)?;
    let rate = d_lo.abs().max(d_hi.abs()).max(0.5);
    let h = match opts.quad.h_override {
        Some(h) => h,
        None => opts.quad.width_cap.min(std::f64::consts::PI / (2.0 * rate)),
    };
    let triple_local = *triple;
    let f = move |t: f64| -> Complex64 {
        let (value, _) = phase_f5(&triple_local, n, t).expect("t inside a validated window");
        Complex64::from_polar(amplitude, value)
    };
    let core = integrate_core(&f, lo, hi, h, &opts.quad);
    Ok((core.value, core.err, core.panels))
}

/// Compare the second-derivative main term against direct quadrature on a
/// window around the saddle.  The window must contain the saddle with 10·√c_𝐧
/// to spare on both sides, and the saddle must clear the regime floor.
pub fn stationary_eval(
    triple: &TwistTriple,
    n: (u64, u64, u64),
    interval: (f64, f64),
    opts: &StationaryOpts,
) -> Result<StationaryEval, StationaryError> {
    let (lo, hi) = interval;
    if !(lo > 0.0) || !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(StationaryError::InvalidInterval { lo, hi });
    }
    let desc = phase_descriptor(triple, n)?;
    if desc.saddle < opts.regime_threshold {
        return Err(StationaryError::BelowRegime {
            saddle: desc.saddle,
            threshold: opts.regime_threshold,
        });
    }
    if !(lo < desc.saddle && desc.saddle < hi) {
        return Err(StationaryError::SaddleOutsideInterval { saddle: desc.saddle, lo, hi });
    }
    let guard = 10.0 * desc.saddle.sqrt();
    if desc.saddle - lo < guard || hi - desc.saddle < guard {
        return Err(StationaryError::EndpointsTooClose { saddle: desc.saddle, required: guard });
    }
    let (direct, quad_err_est, panels) = phase_integral(triple, n, interval, opts)?;
    let approx = desc.main_term;
    let ratio = direct.norm() / approx.norm();
    Ok(StationaryEval { approx, direct, ratio, saddle: desc.saddle, quad_err_est, panels })
}

#[derive(Default)]
struct SplitStripe {
    k1: KahanSum,
    m1: KahanComplex,
    integral: u64,
    total: u64,
}

/// Sum the per-tuple main terms over the window N_𝐧 ≤ c_𝐧 ≤ T (θ = 1/2
/// weighting), split into the integer-U₁ class K₁ and its complement M₁.
///
/// Per (n₂, n₃) the admissible n₁ form the contiguous block
///
///   max(1, ⌈a n₂²/(b U₁)⌉, ⌈a n₃²/(c U₁)⌉) ≤ n₁ ≤ min(⌊U₁⌋, ⌊a T₁ / U₁⌋),
///
/// both endpoints included (N_𝐧 = c_𝐧 and c_𝐧 = T count as admissible).  The
/// n₂-stripes are evaluated as independent work items and merged in index
/// order, so the result is bitwise reproducible for any worker count.
pub fn k1_m1_split(triple: &TwistTriple, t: f64) -> Result<K1M1Split, StationaryError> {
    let (a, b, c) = strict_exponents(triple)?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(StationaryError::NonpositiveT { t });
    }
    let (a_f, b_f, c_f) = (a as f64, b as f64, c as f64);
    let a_t1 = a_f * t / TWO_PI;
    let coeff = TWO_PI / a_f;
    let exp2 = b_f / (2.0 * a_f) - 0.5;
    let exp3 = c_f / (2.0 * a_f) - 0.5;
    // U₁(n₂, 1) = n₂^{b/a} ≤ aT₁ bounds the stripe range; the per-pair window
    // check below re-validates, so the +1 slack costs one empty stripe at most.
    let n2_cap = if a_t1 < 1.0 { 0 } else { a_t1.powf(a_f / b_f).floor() as u64 + 1 };

    let stripes: Vec<SplitStripe> = (1..=n2_cap)
        .into_par_iter()
        .map(|n2| {
            let mut out = SplitStripe::default();
            let w2 = (n2 as f64).powf(exp2);
            let v2 = big_pow(n2, b as u32);
            for n3 in 1u64.. {
                let v = &v2 * big_pow(n3, c as u32);
                let (n1_nearest, phi, exact) = resonant_offset(&v, a as u32);
                let u1 = n1_nearest as f64 + phi;
                if u1 > a_t1 {
                    break;
                }
                let lo = {
                    let l2 = (a_f * ((n2 * n2) as f64) / (b_f * u1)).ceil() as u64;
                    let l3 = (a_f * ((n3 * n3) as f64) / (c_f * u1)).ceil() as u64;
                    l2.max(l3).max(1)
                };
                let hi = (u1.floor() as u64).min((a_t1 / u1).floor() as u64);
                if lo > hi {
                    continue;
                }
                let count = hi - lo + 1;
                let w = coeff * w2 * (n3 as f64).powf(exp3);
                out.total += count;
                if exact {
                    out.integral += count;
                    out.k1.add(w * count as f64);
                } else {
                    for n1 in lo..=hi {
                        let frac = ((n1 as f64) * phi).fract();
                        out.m1.add(Complex64::from_polar(w, TWO_PI * frac));
                    }
                }
            }
            out
        })
        .collect();

    let mut k1 = KahanSum::new();
    let mut m1 = KahanComplex::new();
    let mut integral_tuples = 0u64;
    let mut total_tuples = 0u64;
    for stripe in &stripes {
        k1.add(stripe.k1.value());
        m1.add(stripe.m1.value());
        integral_tuples += stripe.integral;
        total_tuples += stripe.total;
    }
    Ok(K1M1Split { k1: k1.value(), m1: m1.value(), integral_tuples, total_tuples, t })
}
