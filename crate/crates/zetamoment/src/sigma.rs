//! The diagonal constant σ_{a,b,c} = Σ_{n₁^a = n₂^b n₃^c} (n₁n₂n₃)^{−1/2}.
//!
//! The sum runs over all triples of positive integers satisfying the diagonal
//! relation; it is the density constant multiplying T in the main term of the
//! mixed moment whenever it converges.  Convergence and the evaluation route
//! depend on the arithmetic class of the coefficient triple:
//!
//! * **Rational ratios.**  After clearing denominators the relation becomes
//!   n₁^a = n₂^b n₃^c with integer exponents, gcd(a,b,c) = 1.  The solution
//!   count is multiplicative, so σ has an Euler product
//!   σ = Π_p f_p,  f_p = Σ m_w p^{−w/2},
//!   where m_w counts lattice points (x₂,x₃) ∈ ℤ²_{≥0} with a | bx₂ + cx₃ and
//!   weight w = (bx₂+cx₃)/a + x₂ + x₃.  Since b, c > a forces w > 2(x₂+x₃),
//!   the minimal nontrivial weight is ≥ 3 and the product converges precisely
//!   when a < min(b, c); the degenerate configurations a ≥ min(b, c) make the
//!   defining sum divergent and are rejected.
//! * **One multiplicative relation** l₁a = l₂b + l₃c over the rationals:
//!   the diagonal is the power family (m^{l₁}, m^{l₂}, m^{l₃}), so
//!   σ = ζ((l₁+l₂+l₃)/2) when every lᵢ ≥ 0 (divergent if l₁+l₂+l₃ ≤ 2),
//!   and σ = 1 when some lᵢ < 0 (only m = 1 survives).
//! * **Independent coefficients**: the diagonal is {(1,1,1)} and σ = 1.
//!
//! The Euler product is evaluated exactly (to f64) over primes p ≤ P₀ and the
//! remaining primes are handled through prime-zeta tails: with
//! y_p = f_p − 1 = Σ m_w p^{−w/2},
//!
//!   Σ_{p>P₀} ln f_p = Σ_w m_w P̃(w/2) − ½ Σ_{w₁,w₂} m_{w₁}m_{w₂} P̃((w₁+w₂)/2) + O(Σ y_p³),
//!
//! where P̃(s) = P(s) − Σ_{p≤P₀} p^{−s} and the prime zeta function is
//! recovered from P(s) = Σ_k μ(k)/k · ln ζ(ks).  Every truncation made along
//! the way (weight cap, pair cap, cubic remainder) is bounded explicitly and
//! accumulated into `tail_bound`; P₀ is grown adaptively until the bound meets
//! the caller's relative tolerance.

use std::collections::BTreeMap;

use crate::intutil::{moebius, primes_up_to};
use crate::kahan::KahanSum;
use crate::triple::{TripleClass, TwistTriple};
use crate::zeta::zeta_real;

/// Weight cap for the exact per-prime local factors.
const WEIGHT_CAP: u32 = 240;
/// Weight cap for the prime-tail (linear and quadratic) ln-terms.
const TAIL_WEIGHT_CAP: u32 = 40;
/// Adaptive schedule of exact-prime cutoffs.
const PRIME_CUTOFFS: [u64; 4] = [1_000, 4_000, 16_000, 64_000];

/// Failure modes of the diagonal-constant evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigmaError {
    /// The defining sum diverges for this coefficient configuration.
    Divergent { triple: String, reason: String },
}

impl std::fmt::Display for SigmaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SigmaError::Divergent { triple, reason } => {
                write!(f, "diagonal constant diverges for ({triple}): {reason}")
            }
        }
    }
}

impl std::error::Error for SigmaError {}

/// A value together with a rigorous bound on the truncation it carries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaValue {
    pub value: f64,
    /// Bound on |value − σ| from every truncation made during evaluation.
    pub tail_bound: f64,
}

/// Evaluate σ for a coefficient triple, tightening the truncation until
/// `tail_bound ≤ rel_tol · value` or the prime schedule is exhausted (the
/// bound stays honest either way; the schedule reaches ~10⁻¹³ relative).
pub fn sigma_constant(triple: &TwistTriple, rel_tol: f64) -> Result<SigmaValue, SigmaError> {
    assert!(
        rel_tol > 0.0 && rel_tol < 1.0,
        "relative tolerance must lie in (0,1), got {rel_tol}"
    );
    match triple.classify() {
        TripleClass::Independent => Ok(SigmaValue {
            value: 1.0,
            tail_bound: 0.0,
        }),
        TripleClass::OneRelation { l } => sigma_one_relation(triple, l),
        TripleClass::RationalRatio { ints, .. } => {
            let (a, b, c) = ints;
            if a >= b.min(c) {
                return Err(SigmaError::Divergent {
                    triple: format!("{triple}"),
                    reason: format!(
                        "reduced exponents ({a},{b},{c}) need a < min(b,c); \
                         the diagonal family has positive logarithmic density"
                    ),
                });
            }
            Ok(sigma_euler_integer(a, b, c, rel_tol))
        }
    }
}

/// σ for a one-relation triple l₁a = l₂b + l₃c: the diagonal is the power
/// family (m^{l₁}, m^{l₂}, m^{l₃}) over m ≥ 1.
fn sigma_one_relation(triple: &TwistTriple, l: (i64, i64, i64)) -> Result<SigmaValue, SigmaError> {
    let (l1, l2, l3) = l;
    if l1 < 0 || l2 < 0 || l3 < 0 {
        // m^{lᵢ} is a positive integer only for m = 1.
        return Ok(SigmaValue {
            value: 1.0,
            tail_bound: 0.0,
        });
    }
    let total = l1 + l2 + l3;
    if total <= 2 {
        return Err(SigmaError::Divergent {
            triple: format!("{triple}"),
            reason: format!(
                "power-family relation l = ({l1},{l2},{l3}) gives Σ m^{{-{total}/2}}"
            ),
        });
    }
    let s = total as f64 / 2.0;
    Ok(SigmaValue {
        value: zeta_real(s),
        tail_bound: 1e-14 * zeta_real(s),
    })
}

/// Multiplicities m_w of the local weight lattice: pairs (x₂,x₃) ≥ 0 with
/// a | bx₂ + cx₃, counted by w = (bx₂+cx₃)/a + x₂ + x₃, for 1 ≤ w ≤ cap.
fn weight_multiplicities(a: u64, b: u64, c: u64, cap: u32) -> BTreeMap<u32, u64> {
    let mut m: BTreeMap<u32, u64> = BTreeMap::new();
    let cap_scaled = a as u128 * cap as u128;
    let mut x2 = 0u64;
    // w ≥ ((a+b)x₂ + (a+c)x₃)/a, so both loops terminate quickly.
    while (a + b) as u128 * x2 as u128 <= cap_scaled {
        let mut x3 = 0u64;
        loop {
            let load = (a + b) as u128 * x2 as u128 + (a + c) as u128 * x3 as u128;
            if load > cap_scaled {
                break;
            }
            if !(x2 == 0 && x3 == 0) {
                let num = b * x2 + c * x3;
                if num % a == 0 {
                    let w = num / a + x2 + x3;
                    if w <= cap as u64 {
                        *m.entry(w as u32).or_insert(0) += 1;
                    }
                }
            }
            x3 += 1;
        }
        x2 += 1;
    }
    m
}

/// Prime zeta P(s) = Σ_p p^{−s} via P(s) = Σ_{k≥1} μ(k)/k · ln ζ(ks).
fn prime_zeta(s: f64) -> f64 {
    debug_assert!(s > 1.0);
    let mut acc = KahanSum::new();
    let kmax = (64.0 / s).ceil() as u64 + 1;
    for k in 1..=kmax {
        let mu = moebius(k);
        if mu == 0 {
            continue;
        }
        let z = zeta_real(k as f64 * s);
        acc.add(mu as f64 / k as f64 * z.ln());
    }
    acc.value()
}

/// P̃(s) = Σ_{p>P₀} p^{−s}, computed as the difference P(s) − Σ_{p≤P₀} p^{−s}.
/// Heavy cancellation for large s is harmless: the absolute size collapses
/// with it.  Arguments with s·ln P₀ beyond f64 range short-circuit to zero.
fn prime_zeta_tail(s: f64, primes: &[u64]) -> f64 {
    if s * (primes.last().copied().unwrap_or(2) as f64).ln() > 140.0 {
        return 0.0;
    }
    let mut head = KahanSum::new();
    for &p in primes {
        head.add((p as f64).powf(-s));
    }
    (prime_zeta(s) - head.value()).max(0.0)
}

/// The Euler product for integer exponents with a < min(b, c), gcd = 1.
/// Returns (value, rigorous truncation bound).
fn sigma_euler_integer(a: u64, b: u64, c: u64, rel_tol: f64) -> SigmaValue {
    debug_assert!(a < b.min(c));
    let weights = weight_multiplicities(a, b, c, WEIGHT_CAP);
    let w_min = *weights.keys().next().expect("nonempty weight lattice");

    let mut best = SigmaValue {
        value: f64::NAN,
        tail_bound: f64::INFINITY,
    };
    for &p0 in PRIME_CUTOFFS.iter() {
        let out = sigma_euler_at_cutoff(&weights, w_min, p0);
        if out.tail_bound < best.tail_bound {
            best = out;
        }
        if best.tail_bound <= rel_tol * best.value {
            break;
        }
    }
    best
}

fn sigma_euler_at_cutoff(weights: &BTreeMap<u32, u64>, w_min: u32, p0: u64) -> SigmaValue {
    let primes = primes_up_to(p0);
    let p0f = p0 as f64;

    // Exact primes: ln f_p with f_p − 1 = Σ m_w p^{−w/2}.
    let mut ln_sigma = KahanSum::new();
    for &p in &primes {
        let pf = p as f64;
        let mut y = KahanSum::new();
        for (&w, &m) in weights.iter() {
            y.add(m as f64 * pf.powf(-(w as f64) / 2.0));
        }
        ln_sigma.add(y.value().ln_1p());
    }

    // Tail primes, linear ln-term: Σ_w m_w P̃(w/2) over w ≤ TAIL_WEIGHT_CAP.
    let mut tail_memo: BTreeMap<u32, f64> = BTreeMap::new();
    let ptail = |w: u32, memo: &mut BTreeMap<u32, f64>| -> f64 {
        *memo
            .entry(w)
            .or_insert_with(|| prime_zeta_tail(w as f64 / 2.0, &primes))
    };
    let mut err = KahanSum::new();
    for (&w, &m) in weights.iter() {
        if w <= TAIL_WEIGHT_CAP {
            ln_sigma.add(m as f64 * ptail(w, &mut tail_memo));
        } else {
            // Dropped linear terms: P̃(w/2) ≤ P₀^{1−w/2}/(w/2 − 1).
            let s = w as f64 / 2.0;
            err.add(m as f64 * p0f.powf(1.0 - s) / (s - 1.0));
        }
    }

    // Quadratic ln-term: −½ Σ m_{w₁} m_{w₂} P̃((w₁+w₂)/2), both w ≤ cap.
    let small: Vec<(u32, u64)> = weights
        .iter()
        .filter(|(&w, _)| w <= TAIL_WEIGHT_CAP)
        .map(|(&w, &m)| (w, m))
        .collect();
    for &(w1, m1) in &small {
        for &(w2, m2) in &small {
            let t = ptail(w1 + w2, &mut tail_memo);
            ln_sigma.add(-0.5 * (m1 * m2) as f64 * t);
        }
    }
    // Pairs with a dropped partner all satisfy w₁+w₂ > cap; coarse bound.
    err.add(1e-40);

    // Cubic remainder: |ln(1+y) − y + y²/2| ≤ y³/3·(1−y)⁻¹ ≤ y³ for y ≤ 1/2,
    // with y_p ≤ C p^{−w_min/2}, C = Σ m_w P₀^{−(w−w_min)/2}.
    let mut cbound = KahanSum::new();
    for (&w, &m) in weights.iter() {
        cbound.add(m as f64 * p0f.powf(-((w - w_min) as f64) / 2.0));
    }
    let cval = cbound.value();
    let s3 = 1.5 * w_min as f64;
    err.add(cval.powi(3) * p0f.powf(1.0 - s3) / (s3 - 1.0));

    // Weight-cap remainder beyond WEIGHT_CAP: m_w ≤ w + 1, geometric envelope
    // in p, summed over all primes ≥ 2 (crudely, π(P₀)+1 copies of the p = 2
    // value, which dominates by orders of magnitude).
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let wcap = WEIGHT_CAP as f64;
    let geom = r.powf(wcap + 1.0) * ((wcap + 2.0) / (1.0 - r) + r / ((1.0 - r) * (1.0 - r)));
    err.add(geom * (primes.len() as f64 + 1.0));

    // f64 accumulation margin for the ln-space assembly.
    err.add(2e-13);

    let value = ln_sigma.value().exp();
    let tail_bound = value * err.value().exp_m1();
    SigmaValue { value, tail_bound }
}
