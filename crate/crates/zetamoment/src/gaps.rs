//! Off-diagonal gap laboratory: exact differences D = n₁^a − n₂^b·n₃^c,
//! nearest resonant integers, fractional distances, and the quality
//! statistic |D|·n₂·n₃/n₁^{a−1−ε} whose positivity and size the gap
//! conjecture is about.
//!
//! Everything integer is exact: D is computed in big-integer arithmetic, the
//! nearest integer N₁ to U₁ = n₂^{b/a}·n₃^{c/a} comes from an exact integer
//! a-th-root comparison (ties are impossible by a parity argument), and the
//! fractional distance is recovered through the exact offset
//!
//!   U₁ − N₁ = N₁·expm1(ln1p((V − N₁^a)/N₁^a)/a),   V = n₂^b·n₃^c,
//!
//! which stays fully accurate even when V exceeds 2⁵³ and a direct
//! floating-point root would lose the distance entirely.  The same ln1p
//! device computes ω = log(n₂^b n₃^c / n₁^a) for the off-diagonal sums
//! without catastrophic cancellation near resonance.
//!
//! Scans stripe over n₂ and merge stripes in order, so reports are
//! deterministic for every worker count.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diagonal::BoxCaps;
use crate::intutil::{big_pow, big_ratio_f64, nearest_nth_root};
use crate::kahan::{KahanComplex, KahanSum};
use crate::triple::{TripleClass, TwistTriple};
use crate::TWO_PI;

/// Quality below which a tuple is kept in the scan report.  The conjecture
/// asserts quality is bounded below, so small values are the interesting
/// ones; 1.0 keeps every record that dips under the trivial scale.
const RECORD_THRESHOLD: f64 = 1.0;

/// One off-diagonal tuple with its exact difference and quality data.
#[derive(Debug, Clone, PartialEq)]
pub struct GapRecord {
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
    /// n₁^a − n₂^b·n₃^c, exact.
    pub d: BigInt,
    /// Nearest integer to U₁ (shared by every n₁ over this (n₂,n₃) column).
    pub n1_nearest: u64,
    pub u1: f64,
    /// ‖U₁‖ = |U₁ − N₁| ≤ ½.
    pub frac_dist: f64,
    /// |D|·n₂·n₃ / n₁^{a−1−ε} at the scan's ε.
    pub quality: f64,
    /// The same statistic at ε = 0 (the conjectured exponent itself).
    pub quality_eps0: f64,
    /// frac_dist < n₃^{−2} with n₃ ≥ 2: closer than a Roth-type bound would
    /// typically allow, worth a second look.
    pub roth_flag: bool,
}

/// Deterministic scan summary.
#[derive(Debug, Clone)]
pub struct GapScanReport {
    pub ints: (u64, u64, u64),
    pub caps: BoxCaps,
    pub epsilon: f64,
    pub threshold: f64,
    pub total_tuples: u64,
    pub offdiagonal_tuples: u64,
    /// Records with quality < threshold, in (n₂, n₃, n₁) scan order.
    pub records: Vec<GapRecord>,
    pub min_quality: f64,
    pub min_tuple: (u64, u64, u64),
    /// (percent, value) pairs over all off-diagonal qualities.
    pub quality_percentiles: Vec<(f64, f64)>,
    /// The exact D = 0 set inside the caps, for cross-checking against the
    /// diagonal enumeration.
    pub zero_tuples: Vec<(u64, u64, u64)>,
    pub roth_count: u64,
}

/// J₂,₁ and J₂,₂ partial sums over the box at height T.
#[derive(Debug, Clone, PartialEq)]
pub struct OffdiagonalSums {
    /// Σ P^{−1/2}·|log(n₁^a/n₂^b n₃^c)|^{−1} over box tuples with n₁ ≠ N₁.
    pub j21: f64,
    /// Σ P^{−1/2}·(e^{iTω} − e^{iN_{n,θ}ω})/(iω) over n₁ = N₁, D ≠ 0.
    pub j22: Complex64,
    pub j21_terms: u64,
    pub j22_terms: u64,
}

/// Sampled verification of the |log| ↔ relative-gap comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct LogRatioReport {
    pub samples: u64,
    /// Tuples with 0 < x ≤ ½ that entered the two-sided check.
    pub checked: u64,
    pub violations: u64,
    pub min_ratio: f64,
    pub max_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GapError {
    NonIntegerTriple { description: String },
    EpsilonOutOfRange { epsilon: f64 },
    ThetaOutOfRange { theta: f64 },
    NonpositiveT { t: f64 },
    ZeroCap,
}

impl std::fmt::Display for GapError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GapError::NonIntegerTriple { description } => {
                write!(f, "gap scans need a rational-ratio triple, got {description}")
            }
            GapError::EpsilonOutOfRange { epsilon } => {
                write!(f, "epsilon must lie in (0,1), got {epsilon}")
            }
            GapError::ThetaOutOfRange { theta } => {
                write!(f, "theta must lie in (0,1), got {theta}")
            }
            GapError::NonpositiveT { t } => write!(f, "height must be positive, got {t}"),
            GapError::ZeroCap => write!(f, "scan caps must be at least 1"),
        }
    }
}

impl std::error::Error for GapError {}

fn integer_exponents(triple: &TwistTriple) -> Result<(u64, u64, u64), GapError> {
    match triple.classify() {
        TripleClass::RationalRatio { ints, .. } => Ok(ints),
        other => Err(GapError::NonIntegerTriple { description: format!("{other:?}") }),
    }
}

// ---------------------------------------------------------------------------
// Nearest resonant integer
// ---------------------------------------------------------------------------

/// N₁ = [n₂^{b/a}·n₃^{c/a}] with the exact-offset fractional distance, plus
/// whether n₂^b·n₃^c is a perfect a-th power (decided in integer arithmetic).
pub fn nearest_resonant(
    triple: &TwistTriple,
    n2: u64,
    n3: u64,
) -> Result<(u64, f64, bool), GapError> {
    let (a, b, c) = integer_exponents(triple)?;
    let v = big_pow(n2, b as u32) * big_pow(n3, c as u32);
    let (n1_nearest, offset, exact) = resonant_offset(&v, a as u32);
    Ok((n1_nearest, offset.abs(), exact))
}

/// (N₁, U₁ − N₁, is_exact) for V = n₂^b n₃^c: the nearest integer root and
/// the signed fractional offset, exact-rounded through ln1p/expm1.
pub(crate) fn resonant_offset(v: &BigUint, a: u32) -> (u64, f64, bool) {
    let (root, exact) = nearest_nth_root(v, a);
    let n1: u64 = (&root).try_into().expect("resonant root fits u64");
    if exact {
        return (n1, 0.0, true);
    }
    let root_pow = root.pow(a);
    let delta_num = BigInt::from(v.clone()) - BigInt::from(root_pow.clone());
    let delta = big_ratio_f64(&delta_num, &root_pow);
    let offset = n1 as f64 * (delta.ln_1p() / a as f64).exp_m1();
    (n1, offset, false)
}

// ---------------------------------------------------------------------------
// Single-tuple record
// ---------------------------------------------------------------------------

/// The gap record of a single tuple; `None` when the tuple is diagonal.
pub fn gap_record(
    triple: &TwistTriple,
    n1: u64,
    n2: u64,
    n3: u64,
    epsilon: f64,
) -> Result<Option<GapRecord>, GapError> {
    if !(epsilon > 0.0 && epsilon < 1.0) && epsilon != 0.0 {
        return Err(GapError::EpsilonOutOfRange { epsilon });
    }
    let (a, b, c) = integer_exponents(triple)?;
    let v = big_pow(n2, b as u32) * big_pow(n3, c as u32);
    let (n1_nearest, offset, _) = resonant_offset(&v, a as u32);
    Ok(build_record(a, n1, n2, n3, &v, n1_nearest, offset, epsilon))
}

#[allow(clippy::too_many_arguments)]
fn build_record(
    a: u64,
    n1: u64,
    n2: u64,
    n3: u64,
    v: &BigUint,
    n1_nearest: u64,
    offset: f64,
    epsilon: f64,
) -> Option<GapRecord> {
    let d = BigInt::from(big_pow(n1, a as u32)) - BigInt::from(v.clone());
    if d == BigInt::from(0) {
        return None;
    }
    let abs_d = big_ratio_f64(&d, &BigUint::from(1u32)).abs();
    let scale = n2 as f64 * n3 as f64;
    let ln_n1 = (n1 as f64).ln();
    let quality = abs_d * scale * (-(a as f64 - 1.0 - epsilon) * ln_n1).exp();
    let quality_eps0 = abs_d * scale * (-(a as f64 - 1.0) * ln_n1).exp();
    let frac_dist = offset.abs();
    Some(GapRecord {
        n1,
        n2,
        n3,
        d,
        n1_nearest,
        u1: n1_nearest as f64 + offset,
        frac_dist,
        quality,
        quality_eps0,
        roth_flag: n3 >= 2 && frac_dist < (n3 as f64).powi(-2),
    })
}

// ---------------------------------------------------------------------------
// Scanning
// ---------------------------------------------------------------------------

struct Stripe {
    records: Vec<GapRecord>,
    qualities: Vec<f64>,
    zeros: Vec<(u64, u64, u64)>,
    min_quality: f64,
    min_tuple: (u64, u64, u64),
    roth_count: u64,
    offdiag: u64,
}

/// Exhaustive scan of the capped box.  Records below the quality threshold
/// are returned together with the global minimum, percentiles of the quality
/// distribution, and the exact D = 0 set.
pub fn gap_scan(
    triple: &TwistTriple,
    caps: &BoxCaps,
    epsilon: f64,
) -> Result<GapScanReport, GapError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(GapError::EpsilonOutOfRange { epsilon });
    }
    if caps.n1 == 0 || caps.n2 == 0 || caps.n3 == 0 {
        return Err(GapError::ZeroCap);
    }
    let (a, b, c) = integer_exponents(triple)?;
    let stripes: Vec<Stripe> = (1..=caps.n2)
        .into_par_iter()
        .map(|n2| {
            let mut stripe = Stripe {
                records: Vec::new(),
                qualities: Vec::new(),
                zeros: Vec::new(),
                min_quality: f64::INFINITY,
                min_tuple: (0, 0, 0),
                roth_count: 0,
                offdiag: 0,
            };
            let head = big_pow(n2, b as u32);
            for n3 in 1..=caps.n3 {
                let v = &head * big_pow(n3, c as u32);
                let (n1_nearest, offset, _) = resonant_offset(&v, a as u32);
                for n1 in 1..=caps.n1 {
                    match build_record(a, n1, n2, n3, &v, n1_nearest, offset, epsilon) {
                        None => stripe.zeros.push((n1, n2, n3)),
                        Some(rec) => {
                            stripe.offdiag += 1;
                            stripe.qualities.push(rec.quality);
                            if rec.quality < stripe.min_quality {
                                stripe.min_quality = rec.quality;
                                stripe.min_tuple = (n1, n2, n3);
                            }
                            if rec.roth_flag {
                                stripe.roth_count += 1;
                            }
                            if rec.quality < RECORD_THRESHOLD {
                                stripe.records.push(rec);
                            }
                        }
                    }
                }
            }
            stripe
        })
        .collect();

    let mut records = Vec::new();
    let mut qualities = Vec::new();
    let mut zeros = Vec::new();
    let mut min_quality = f64::INFINITY;
    let mut min_tuple = (0, 0, 0);
    let mut roth_count = 0;
    let mut offdiag = 0;
    for stripe in stripes {
        records.extend(stripe.records);
        qualities.extend(stripe.qualities);
        zeros.extend(stripe.zeros);
        if stripe.min_quality < min_quality {
            min_quality = stripe.min_quality;
            min_tuple = stripe.min_tuple;
        }
        roth_count += stripe.roth_count;
        offdiag += stripe.offdiag;
    }
    zeros.sort_unstable();
    qualities.sort_unstable_by(f64::total_cmp);
    let percentile = |p: f64| -> f64 {
        if qualities.is_empty() {
            return f64::NAN;
        }
        let idx = ((p / 100.0) * (qualities.len() - 1) as f64).floor() as usize;
        qualities[idx]
    };
    let quality_percentiles = vec![(1.0, percentile(1.0)), (10.0, percentile(10.0)), (50.0, percentile(50.0))];
    Ok(GapScanReport {
        ints: (a, b, c),
        caps: *caps,
        epsilon,
        threshold: RECORD_THRESHOLD,
        total_tuples: caps.n1 * caps.n2 * caps.n3,
        offdiagonal_tuples: offdiag,
        records,
        min_quality,
        min_tuple,
        quality_percentiles,
        zero_tuples: zeros,
        roth_count,
    })
}

// ---------------------------------------------------------------------------
// Off-diagonal partial sums
// ---------------------------------------------------------------------------

/// J₂,₁ and J₂,₂ over the box {N_{n,θ} ≤ T}.  ω = log(n₂^b n₃^c/n₁^a) is
/// computed through the exact integer offset, so near-resonant terms keep
/// full precision; diagonal tuples (ω = 0) are skipped.
pub fn offdiagonal_sums(
    triple: &TwistTriple,
    t: f64,
    theta: f64,
) -> Result<OffdiagonalSums, GapError> {
    if t <= 0.0 {
        return Err(GapError::NonpositiveT { t });
    }
    if !(theta > 0.0 && theta < 1.0) {
        return Err(GapError::ThetaOutOfRange { theta });
    }
    let (ia, ib, ic) = integer_exponents(triple)?;
    let (a, b, c) = triple.values();
    let caps = BoxCaps::for_box(triple, t, theta);
    if caps.n1 == 0 || caps.n2 == 0 || caps.n3 == 0 {
        return Ok(OffdiagonalSums {
            j21: 0.0,
            j22: Complex64::new(0.0, 0.0),
            j21_terms: 0,
            j22_terms: 0,
        });
    }
    struct SumStripe {
        j21: f64,
        j22: Complex64,
        n21: u64,
        n22: u64,
    }
    let stripes: Vec<SumStripe> = (1..=caps.n2)
        .into_par_iter()
        .map(|n2| {
            let mut j21 = KahanSum::new();
            let mut j22 = KahanComplex::new();
            let (mut n21, mut n22) = (0u64, 0u64);
            let head = big_pow(n2, ib as u32);
            for n3 in 1..=caps.n3 {
                let v = &head * big_pow(n3, ic as u32);
                let (n1_nearest, _, _) = resonant_offset(&v, ia as u32);
                for n1 in 1..=caps.n1 {
                    let n1_pow = big_pow(n1, ia as u32);
                    let d = BigInt::from(n1_pow.clone()) - BigInt::from(v.clone());
                    if d == BigInt::from(0) {
                        continue;
                    }
                    // ω = log(V/n1^a) = ln1p(−D/n1^a), exactly offset.
                    let omega = (-big_ratio_f64(&d, &n1_pow)).ln_1p();
                    let p_inv_sqrt = 1.0 / (n1 as f64 * n2 as f64 * n3 as f64).sqrt();
                    if n1 != n1_nearest {
                        j21.add(p_inv_sqrt / omega.abs());
                        n21 += 1;
                    } else {
                        let n_weight = TWO_PI
                            * ((n1 as f64).powf(1.0 / theta) / a)
                                .max((n2 as f64).powi(2) / b)
                                .max((n3 as f64).powi(2) / c);
                        let upper = Complex64::from_polar(1.0, t * omega);
                        let lower = Complex64::from_polar(1.0, n_weight * omega);
                        let term = (upper - lower) / Complex64::new(0.0, omega);
                        j22.add(p_inv_sqrt * term);
                        n22 += 1;
                    }
                }
            }
            SumStripe { j21: j21.value(), j22: j22.value(), n21, n22 }
        })
        .collect();
    let mut j21 = KahanSum::new();
    let mut j22 = KahanComplex::new();
    let (mut n21, mut n22) = (0u64, 0u64);
    for s in stripes {
        j21.add(s.j21);
        j22.add(s.j22);
        n21 += s.n21;
        n22 += s.n22;
    }
    Ok(OffdiagonalSums { j21: j21.value(), j22: j22.value(), j21_terms: n21, j22_terms: n22 })
}

// ---------------------------------------------------------------------------
// Log-ratio verification
// ---------------------------------------------------------------------------

/// Sample tuples with n₁ ≍ N₁ and verify |log(n₂^b n₃^c/n₁^a)| ∈ [x/2, 2x]
/// for the relative gap x = |n₂^b n₃^c − n₁^a|/(n₂^b n₃^c) whenever x ≤ ½.
/// Deterministic: fixed-seed ChaCha8.
pub fn log_ratio_check(triple: &TwistTriple, samples: u64) -> Result<LogRatioReport, GapError> {
    let (a, b, c) = integer_exponents(triple)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    let mut checked = 0u64;
    let mut violations = 0u64;
    let mut min_ratio = f64::INFINITY;
    let mut max_ratio = 0.0f64;
    for _ in 0..samples {
        let n2 = rng.gen_range(1..=60u64);
        let n3 = rng.gen_range(1..=60u64);
        let v = big_pow(n2, b as u32) * big_pow(n3, c as u32);
        let (n1_nearest, _, _) = resonant_offset(&v, a as u32);
        let lo = (n1_nearest / 2).max(1);
        let hi = (2 * n1_nearest).max(lo + 1);
        let n1 = rng.gen_range(lo..=hi);
        let n1_pow = big_pow(n1, a as u32);
        let d = BigInt::from(n1_pow.clone()) - BigInt::from(v.clone());
        if d == BigInt::from(0) {
            continue;
        }
        let x = big_ratio_f64(&d, &v).abs();
        if x > 0.5 {
            continue;
        }
        let omega = (-big_ratio_f64(&d, &n1_pow)).ln_1p().abs();
        let ratio = omega / x;
        checked += 1;
        min_ratio = min_ratio.min(ratio);
        max_ratio = max_ratio.max(ratio);
        if !(0.5..=2.0).contains(&ratio) {
            violations += 1;
        }
    }
    Ok(LogRatioReport { samples, checked, violations, min_ratio, max_ratio })
}
