//! Exact enumeration of diagonal solutions n₁^a = n₂^b·n₃^c and the lattice
//! sums built on them.
//!
//! For a coefficient triple (a,b,c) the *diagonal* is the set of positive
//! integer tuples with n₁^a = n₂^b·n₃^c; these index the non-oscillating part
//! of the moment and carry the weights
//!
//!   P_n = n₁n₂n₃,    N_{n,θ} = 2π·max(n₁^{1/θ}/a, n₂²/b, n₃²/c).
//!
//! The box B(T) = {N_{n,θ} ≤ T} is a product of coordinate caps
//! n₁ ≤ (aT₁)^θ, n₂ ≤ √(bT₁), n₃ ≤ √(cT₁) with T₁ = T/2π, which is why the
//! enumeration API takes per-coordinate caps.
//!
//! Enumeration routes (all exact, big-integer power checks):
//! * a = 1 — every pair (n₂,n₃) lifts to (n₂^b n₃^c, n₂, n₃);
//! * a = c < b (gcd reduced) — n₂ = m₂^a, n₁ = m₃·m₂^b, n₃ = m₃, which is
//!   exhaustive because (n₁/n₃)^a = n₂^b forces n₃ | n₁ and an exponent
//!   lattice argument;
//! * b = c — n₁ = h^b, n₂n₃ = h^a, enumerated via divisor splittings;
//! * one-relation algebraic triples — the power family m ↦ (m^{l₁}, m^{l₂},
//!   m^{l₃}) of the integer relation a·l₁ = b·l₂ + c·l₃;
//! * otherwise — brute force over (n₂,n₃) with an exact a-th-root test.
//!
//! The partial sums feeding the moment analysis are
//!
//!   J₁ = Σ_B (T − N_n)·P_n^{−1/2},   J₄ = Σ_B N_n·P_n^{−1/2},
//!   J₃ = T·(σ − Σ_B P_n^{−1/2})     (finite only when σ converges),
//!
//! tied together by J₁ = σT − J₃ − J₄, which holds by construction up to
//! rounding.  For the a = c family the box-restricted diagonal sum is the
//! slowly diverging S_{a,b}(T) = Σ_{m₂^b·m₃ ≤ √(aT₁)} m₃^{-1} m₂^{-(a+b)/2},
//! which grows like ½ζ((a+b)/2)·log T + O(1) instead of converging.

use std::collections::BTreeSet;

use crate::dirichlet::cutoff_length;
use crate::intutil::{big_pow, checked_pow_u128, nearest_nth_root};
use crate::kahan::KahanSum;
use crate::sigma::{sigma_constant, SigmaError};
use crate::triple::{TripleClass, TwistTriple};
use crate::TWO_PI;

/// Decision margin for the floating log-relation check on algebraic triples.
const LOG_MARGIN: f64 = 1e-9;

/// How a solution was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    BruteForce,
    ParamM2M3,
    ParamPowerFamily,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Provenance::BruteForce => "brute-force",
            Provenance::ParamM2M3 => "param-m2-m3",
            Provenance::ParamPowerFamily => "param-power-family",
        })
    }
}

/// One diagonal tuple.  Components are bounded by the enumeration caps, so
/// u64 storage is exact; the defining power equality is checked in
/// big-integer arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DiagonalSolution {
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
    pub provenance: Provenance,
}

impl DiagonalSolution {
    pub fn p(&self) -> f64 {
        self.n1 as f64 * self.n2 as f64 * self.n3 as f64
    }

    pub fn p_inv_sqrt(&self) -> f64 {
        1.0 / self.p().sqrt()
    }

    /// N_{n,θ} = 2π·max(n₁^{1/θ}/a, n₂²/b, n₃²/c).
    pub fn n_weight(&self, triple: &TwistTriple, theta: f64) -> f64 {
        let (a, b, c) = triple.values();
        let w1 = (self.n1 as f64).powf(1.0 / theta) / a;
        let w2 = (self.n2 as f64).powi(2) / b;
        let w3 = (self.n3 as f64).powi(2) / c;
        TWO_PI * w1.max(w2).max(w3)
    }

    /// Verify n₁^a = n₂^b·n₃^c — exactly for rational-ratio triples, through
    /// the log relation |a·ln n₁ − b·ln n₂ − c·ln n₃| < margin otherwise.
    pub fn verify(&self, triple: &TwistTriple) -> bool {
        match triple.classify() {
            TripleClass::RationalRatio { ints: (a, b, c), .. } => {
                big_pow(self.n1, a as u32)
                    == big_pow(self.n2, b as u32) * big_pow(self.n3, c as u32)
            }
            _ => {
                let (a, b, c) = triple.values();
                let lhs = a * (self.n1 as f64).ln();
                let rhs = b * (self.n2 as f64).ln() + c * (self.n3 as f64).ln();
                (lhs - rhs).abs() < LOG_MARGIN * lhs.abs().max(1.0)
            }
        }
    }
}

/// Per-coordinate enumeration caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoxCaps {
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
}

impl BoxCaps {
    pub fn uniform(n: u64) -> Self {
        BoxCaps { n1: n, n2: n, n3: n }
    }

    /// Caps of the box {N_{n,θ} ≤ T}: the same Dirichlet cutoff lengths that
    /// truncate the polynomials, so box membership and summation stay
    /// coherent.  Caps can be 0 when T is below the first weight.
    pub fn for_box(triple: &TwistTriple, t: f64, theta: f64) -> Self {
        let (a, b, c) = triple.values();
        BoxCaps {
            n1: cutoff_length(theta, a * t),
            n2: cutoff_length(0.5, b * t),
            n3: cutoff_length(0.5, c * t),
        }
    }
}

/// Result of an enumeration: sorted, duplicate-free solutions plus an
/// explanatory note for the degenerate classes.
#[derive(Debug, Clone)]
pub struct DiagonalEnumeration {
    pub solutions: Vec<DiagonalSolution>,
    pub note: Option<String>,
}

/// Box-restricted lattice sums at height T.
///
/// `j3` and the σ tail are only finite when σ_{a,b,c} converges
/// (a < min(b,c) for the rational class); divergent configurations report
/// `None` / `f64::INFINITY` instead of failing, since J₁, J₄ and the
/// box-restricted `sigma_partial` remain perfectly well defined.  `s_ab` is
/// populated for the a = c family it belongs to.
#[derive(Debug, Clone)]
pub struct DiagonalSums {
    /// Σ_B P_n^{−1/2} over the box (depends on T and θ).
    pub sigma_partial: f64,
    /// Bound on σ − sigma_partial; ∞ when σ diverges.
    pub sigma_tail_bound: f64,
    pub j1: f64,
    pub j3: Option<f64>,
    pub j4: f64,
    pub s_ab: Option<f64>,
    pub t: f64,
    pub theta: f64,
}

/// Failure modes of the diagonal operations.
#[derive(Debug, Clone, PartialEq)]
pub enum DiagonalError {
    ZeroCap,
    NonpositivePowerIndex { l1: i64 },
    NonpositiveT { t: f64 },
    ThetaOutOfRange { theta: f64 },
}

impl std::fmt::Display for DiagonalError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DiagonalError::ZeroCap => write!(f, "enumeration caps must be at least 1"),
            DiagonalError::NonpositivePowerIndex { l1 } => {
                write!(f, "power family needs l1 >= 1, got {l1}")
            }
            DiagonalError::NonpositiveT { t } => write!(f, "height must be positive, got {t}"),
            DiagonalError::ThetaOutOfRange { theta } => {
                write!(f, "theta must lie in (0,1), got {theta}")
            }
        }
    }
}

impl std::error::Error for DiagonalError {}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// All diagonal solutions inside the caps, sorted by (n₁,n₂,n₃).
///
/// Rational-ratio triples reduce to their integer representative first (the
/// diagonal only depends on the exponent ratios).  The independent class has
/// the single solution (1,1,1), returned with a note.
pub fn enumerate_diagonal(
    triple: &TwistTriple,
    caps: &BoxCaps,
) -> Result<DiagonalEnumeration, DiagonalError> {
    if caps.n1 == 0 || caps.n2 == 0 || caps.n3 == 0 {
        return Err(DiagonalError::ZeroCap);
    }
    match triple.classify() {
        TripleClass::RationalRatio { ints, .. } => Ok(enumerate_rational(ints, caps)),
        TripleClass::OneRelation { l } => enumerate_one_relation(l, caps),
        TripleClass::Independent => Ok(DiagonalEnumeration {
            solutions: vec![DiagonalSolution {
                n1: 1,
                n2: 1,
                n3: 1,
                provenance: Provenance::ParamPowerFamily,
            }],
            note: Some(
                "algebraically independent coefficients: (1,1,1) is the only diagonal solution"
                    .to_string(),
            ),
        }),
    }
}

fn enumerate_rational(ints: (u64, u64, u64), caps: &BoxCaps) -> DiagonalEnumeration {
    let (a, b, c) = ints;
    let (au, bu, cu) = (a as u32, b as u32, c as u32);
    let mut set: BTreeSet<DiagonalSolution> = BTreeSet::new();
    if a == 1 {
        // Free family: n1 = n2^b·n3^c.
        for n2 in 1..=caps.n2 {
            let head = match checked_pow_u128(n2, bu) {
                Some(v) if v <= caps.n1 as u128 => v,
                _ => break,
            };
            for n3 in 1..=caps.n3 {
                let tail = match checked_pow_u128(n3, cu) {
                    Some(v) => v,
                    None => break,
                };
                let n1 = match head.checked_mul(tail) {
                    Some(v) if v <= caps.n1 as u128 => v as u64,
                    _ => break,
                };
                set.insert(DiagonalSolution { n1, n2, n3, provenance: Provenance::ParamM2M3 });
            }
        }
    } else if a == c {
        // §7 family: n2 = w^a, n1 = m3·w^b, n3 = m3.
        for w in 1..=caps.n2 {
            let n2 = match checked_pow_u128(w, au) {
                Some(v) if v <= caps.n2 as u128 => v as u64,
                _ => break,
            };
            let wb = match checked_pow_u128(w, bu) {
                Some(v) if v <= caps.n1 as u128 => v,
                _ => break,
            };
            let m3_max = (caps.n1 as u128 / wb).min(caps.n3 as u128) as u64;
            for m3 in 1..=m3_max {
                set.insert(DiagonalSolution {
                    n1: (m3 as u128 * wb) as u64,
                    n2,
                    n3: m3,
                    provenance: Provenance::ParamM2M3,
                });
            }
        }
    } else if b == c {
        // n1 = h^b, n2·n3 = h^a via divisor splittings.
        for h in 1..=caps.n1 {
            let n1 = match checked_pow_u128(h, bu) {
                Some(v) if v <= caps.n1 as u128 => v as u64,
                _ => break,
            };
            let k = match checked_pow_u128(h, au) {
                Some(v) => v,
                None => break,
            };
            let mut d = 1u128;
            while d * d <= k {
                if k % d == 0 {
                    for (n2, n3) in [(d, k / d), (k / d, d)] {
                        if n2 <= caps.n2 as u128 && n3 <= caps.n3 as u128 {
                            set.insert(DiagonalSolution {
                                n1,
                                n2: n2 as u64,
                                n3: n3 as u64,
                                provenance: Provenance::ParamM2M3,
                            });
                        }
                    }
                }
                d += 1;
            }
        }
    } else {
        // Brute force over (n2,n3) with an exact a-th-root test.
        let n1_pow_cap = big_pow(caps.n1, au);
        for n2 in 1..=caps.n2 {
            let head = big_pow(n2, bu);
            if head > n1_pow_cap {
                break;
            }
            for n3 in 1..=caps.n3 {
                let v = &head * big_pow(n3, cu);
                if v > n1_pow_cap {
                    break;
                }
                let (root, exact) = nearest_nth_root(&v, au);
                if exact {
                    let n1: u64 = root.try_into().expect("root bounded by n1 cap");
                    set.insert(DiagonalSolution {
                        n1,
                        n2,
                        n3,
                        provenance: Provenance::BruteForce,
                    });
                }
            }
        }
    }
    DiagonalEnumeration { solutions: set.into_iter().collect(), note: None }
}

fn enumerate_one_relation(
    l: (i64, i64, i64),
    caps: &BoxCaps,
) -> Result<DiagonalEnumeration, DiagonalError> {
    // The classifier normalizes the first nonzero entry positive, so l1 ≥ 0.
    if l.0 == 0 {
        return Ok(DiagonalEnumeration {
            solutions: vec![DiagonalSolution {
                n1: 1,
                n2: 1,
                n3: 1,
                provenance: Provenance::ParamPowerFamily,
            }],
            note: Some(format!(
                "relation {:?} pins n1 = 1 and forces n2 = n3 = 1; no nontrivial family",
                l
            )),
        });
    }
    let family = power_family(l.0, l.1, l.2, caps.n1)?;
    let solutions = family
        .into_iter()
        .filter(|s| s.n2 <= caps.n2 && s.n3 <= caps.n3)
        .collect();
    Ok(DiagonalEnumeration { solutions, note: None })
}

/// The power family m ↦ (m^{l₁}, m^{l₂}, m^{l₃}) with m^{l₁} ≤ bound.
/// A negative exponent admits no integer value beyond m = 1, so those
/// relations degenerate to the single solution (1,1,1).
pub fn power_family(
    l1: i64,
    l2: i64,
    l3: i64,
    bound: u64,
) -> Result<Vec<DiagonalSolution>, DiagonalError> {
    if l1 < 1 {
        return Err(DiagonalError::NonpositivePowerIndex { l1 });
    }
    debug_assert_eq!(
        num_integer::gcd(num_integer::gcd(l1, l2), l3),
        1,
        "relation vector must be primitive"
    );
    let mut out = Vec::new();
    if bound == 0 {
        return Ok(out);
    }
    if l2 < 0 || l3 < 0 {
        out.push(DiagonalSolution { n1: 1, n2: 1, n3: 1, provenance: Provenance::ParamPowerFamily });
        return Ok(out);
    }
    for m in 1u64.. {
        let n1 = match checked_pow_u128(m, l1 as u32) {
            Some(v) if v <= bound as u128 => v as u64,
            _ => break,
        };
        let n2 = checked_pow_u128(m, l2 as u32).expect("n2 overflows u128");
        let n3 = checked_pow_u128(m, l3 as u32).expect("n3 overflows u128");
        assert!(
            n2 <= u64::MAX as u128 && n3 <= u64::MAX as u128,
            "family member exceeds u64"
        );
        out.push(DiagonalSolution {
            n1,
            n2: n2 as u64,
            n3: n3 as u64,
            provenance: Provenance::ParamPowerFamily,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Partial sums
// ---------------------------------------------------------------------------

/// Box-restricted lattice sums at height T: J₁, J₄, the partial σ, the tail
/// to the full σ when it converges, and S_{a,b} for the a = c family.
pub fn diagonal_partial_sums(
    triple: &TwistTriple,
    t: f64,
    theta: f64,
) -> Result<DiagonalSums, DiagonalError> {
    if t <= 0.0 {
        return Err(DiagonalError::NonpositiveT { t });
    }
    if !(theta > 0.0 && theta < 1.0) {
        return Err(DiagonalError::ThetaOutOfRange { theta });
    }
    let caps = BoxCaps::for_box(triple, t, theta);
    let empty_box = caps.n1 == 0 || caps.n2 == 0 || caps.n3 == 0;
    let mut sigma_box = KahanSum::new();
    let mut j1 = KahanSum::new();
    let mut j4 = KahanSum::new();
    if !empty_box {
        let enumeration = enumerate_diagonal(triple, &caps)?;
        for sol in &enumeration.solutions {
            let p = sol.p_inv_sqrt();
            let n = sol.n_weight(triple, theta);
            sigma_box.add(p);
            j1.add((t - n) * p);
            j4.add(n * p);
        }
    }
    let sigma_partial = sigma_box.value();
    let (j3, sigma_tail_bound) = match sigma_constant(triple, 1e-9) {
        Ok(sigma) => {
            let gap = (sigma.value - sigma_partial).max(0.0);
            (Some(t * gap), gap + sigma.tail_bound)
        }
        Err(SigmaError::Divergent { .. }) => (None, f64::INFINITY),
    };
    let s_ab = match triple.classify() {
        TripleClass::RationalRatio { ints: (a, b, c), .. } if a == c => {
            Some(s_ab_sum(a, b, triple.values().0, t))
        }
        _ => None,
    };
    Ok(DiagonalSums {
        sigma_partial,
        sigma_tail_bound,
        j1: j1.value(),
        j3,
        j4: j4.value(),
        s_ab,
        t,
        theta,
    })
}

/// S_{a,b}(T) = Σ_{m₂^b·m₃ ≤ √(a·T/2π)} m₃^{-1}·m₂^{-(a+b)/2} over the
/// reduced exponents (a,b); the n₁ constraint uses the actual first
/// coefficient so scaled triples stay coherent with their box.
fn s_ab_sum(a: u64, b: u64, a_value: f64, t: f64) -> f64 {
    let bound = (a_value * t / TWO_PI).sqrt();
    let exponent = -((a + b) as f64) / 2.0;
    let mut acc = KahanSum::new();
    let mut m2 = 1u64;
    loop {
        let head = (m2 as f64).powi(b as i32);
        if head > bound {
            break;
        }
        let m3_max = (bound / head + 1e-12).floor() as u64;
        let weight = (m2 as f64).powf(exponent);
        let mut inner = KahanSum::new();
        for m3 in 1..=m3_max {
            inner.add(1.0 / m3 as f64);
        }
        acc.add(weight * inner.value());
        m2 += 1;
    }
    acc.value()
}
