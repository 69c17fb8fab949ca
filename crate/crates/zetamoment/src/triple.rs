//! Twist triples (a, b, c) and their exact arithmetic classification.
//!
//! The moment I_{a,b,c} behaves in qualitatively different ways depending on
//! the multiplicative-linear algebra of the twists:
//!
//! * all pairwise ratios rational — a common scale g with (a,b,c) = g·(p,q,r)
//!   for coprime integers, and the diagonal n₁^p = n₂^q n₃^r has infinitely
//!   many solutions;
//! * exactly one ℚ-linear relation l₁a = l₂b + l₃c (with not all ratios
//!   rational) — a single resonant frequency survives;
//! * linearly independent over ℚ — no resonance at all.
//!
//! Floating point cannot make these distinctions (is b/a = 1.5000000001
//! rational?), so twists are kept as exact elements p + q√d of a real
//! quadratic field and the relation space is computed by exact Gaussian
//! elimination over ℚ.  That in turn fixes the accepted input grammar:
//! rationals and `p + q*sqrt(d)` combinations, e.g. `3`, `3/2`,
//! `2*sqrt(2)-1`, `sqrt(27)/3`.

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq)]
pub enum TwistError {
    /// Parse failure, with a human-readable reason.
    Parse { input: String, reason: String },
    /// Adding or dividing values from different quadratic fields
    /// (e.g. √2 + √3) leaves the representable set.
    MixedSurds { d1: u64, d2: u64 },
    DivisionByZero,
    /// Twists must be strictly positive real numbers.
    NonPositiveTwist { value: String },
}

impl fmt::Display for TwistError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistError::Parse { input, reason } => {
                write!(f, "cannot parse twist '{input}': {reason}")
            }
            TwistError::MixedSurds { d1, d2 } => write!(
                f,
                "mixing sqrt({d1}) and sqrt({d2}) leaves the quadratic field"
            ),
            TwistError::DivisionByZero => write!(f, "division by zero in twist expression"),
            TwistError::NonPositiveTwist { value } => {
                write!(f, "twists must be positive, got {value}")
            }
        }
    }
}

impl std::error::Error for TwistError {}

/// An exact real of the form `rat + coeff·√d` with d squarefree (d = 1 and
/// coeff = 0 for plain rationals).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraicReal {
    rat: Rational64,
    coeff: Rational64,
    d: u64,
}

/// Pull the largest square factor out of n, returning (square root, radical).
fn square_split(n: u64) -> (u64, u64) {
    let mut root = 1u64;
    let mut rad = n;
    let mut p = 2u64;
    while p * p <= rad {
        while rad % (p * p) == 0 {
            rad /= p * p;
            root *= p;
        }
        p += 1;
    }
    (root, rad)
}

impl AlgebraicReal {
    pub fn from_rational(r: Rational64) -> Self {
        AlgebraicReal { rat: r, coeff: Rational64::zero(), d: 1 }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational64::from_integer(n))
    }

    /// rat + coeff·√radicand, normalizing the radicand to its squarefree core.
    pub fn new(rat: Rational64, coeff: Rational64, radicand: u64) -> Self {
        if coeff.is_zero() || radicand == 0 {
            return Self::from_rational(rat);
        }
        let (root, rad) = square_split(radicand);
        if rad == 1 {
            return Self::from_rational(rat + coeff * Rational64::from_integer(root as i64));
        }
        AlgebraicReal { rat, coeff: coeff * Rational64::from_integer(root as i64), d: rad }
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational64> {
        self.is_rational().then_some(self.rat)
    }

    /// Coordinates (rational part, surd coefficient, radicand).
    pub fn parts(&self) -> (Rational64, Rational64, u64) {
        (self.rat, self.coeff, self.d)
    }

    pub fn value(&self) -> f64 {
        ratio_f64(self.rat) + ratio_f64(self.coeff) * (self.d as f64).sqrt()
    }

    fn same_field(&self, other: &Self) -> Result<u64, TwistError> {
        match (self.coeff.is_zero(), other.coeff.is_zero()) {
            (true, true) => Ok(1),
            (false, true) => Ok(self.d),
            (true, false) => Ok(other.d),
            (false, false) if self.d == other.d => Ok(self.d),
            (false, false) => Err(TwistError::MixedSurds { d1: self.d, d2: other.d }),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, TwistError> {
        let d = self.same_field(other)?;
        Ok(AlgebraicReal { rat: self.rat + other.rat, coeff: self.coeff + other.coeff, d }
            .renormalize())
    }

    pub fn neg(&self) -> Self {
        AlgebraicReal { rat: -self.rat, coeff: -self.coeff, d: self.d }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, TwistError> {
        let d = self.same_field(other)?;
        let dd = Rational64::from_integer(d as i64);
        Ok(AlgebraicReal {
            rat: self.rat * other.rat + self.coeff * other.coeff * dd,
            coeff: self.rat * other.coeff + self.coeff * other.rat,
            d,
        }
        .renormalize())
    }

    pub fn div(&self, other: &Self) -> Result<Self, TwistError> {
        let d = self.same_field(other)?;
        let dd = Rational64::from_integer(d as i64);
        // 1/(p + q√d) = (p − q√d)/(p² − q²d); the norm vanishes only at 0
        // because d is not a perfect square.
        let norm = other.rat * other.rat - other.coeff * other.coeff * dd;
        if norm.is_zero() {
            return Err(TwistError::DivisionByZero);
        }
        let inv = AlgebraicReal { rat: other.rat / norm, coeff: -other.coeff / norm, d };
        self.mul(&inv)
    }

    fn renormalize(self) -> Self {
        if self.coeff.is_zero() {
            Self::from_rational(self.rat)
        } else {
            self
        }
    }
}

fn ratio_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn fmt_ratio(r: Rational64) -> String {
    if r.denom() == &1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return f.write_str(&fmt_ratio(self.rat));
        }
        let surd = |c: Rational64| -> String {
            if c == Rational64::from_integer(1) {
                format!("sqrt({})", self.d)
            } else {
                format!("{}*sqrt({})", fmt_ratio(c), self.d)
            }
        };
        if self.rat.is_zero() {
            if self.coeff.is_negative() {
                write!(f, "-{}", surd(-self.coeff))
            } else {
                f.write_str(&surd(self.coeff))
            }
        } else if self.coeff.is_negative() {
            write!(f, "{}-{}", fmt_ratio(self.rat), surd(-self.coeff))
        } else {
            write!(f, "{}+{}", fmt_ratio(self.rat), surd(self.coeff))
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing: expr := ['-'] term {('+'|'-') term}
//          term := primary {('*'|'/') primary}
//          primary := integer ['/' integer] | 'sqrt(' integer ')'
// ---------------------------------------------------------------------------

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: impl Into<String>) -> TwistError {
        TwistError::Parse { input: self.src.to_string(), reason: reason.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64, TwistError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(format!("expected a number at position {start}")));
        }
        self.src[start..self.pos]
            .parse::<i64>()
            .map_err(|_| self.err("integer too large"))
    }

    fn primary(&mut self) -> Result<AlgebraicReal, TwistError> {
        if self.src[self.pos..].starts_with("sqrt(") {
            self.pos += 5;
            let n = self.integer()?;
            if !self.eat(b')') {
                return Err(self.err("missing ')' after sqrt"));
            }
            if n < 0 {
                return Err(self.err("radicand must be nonnegative"));
            }
            return Ok(AlgebraicReal::new(
                Rational64::zero(),
                Rational64::from_integer(1),
                n as u64,
            ));
        }
        let n = self.integer()?;
        // A '/' followed by digits binds as a rational (3/2); a '/' followed
        // by sqrt stays with the term parser (1/sqrt(2)).
        if self.peek() == Some(b'/') && matches!(self.bytes.get(self.pos + 1), Some(b'0'..=b'9')) {
            self.pos += 1;
            let d = self.integer()?;
            if d == 0 {
                return Err(TwistError::DivisionByZero);
            }
            return Ok(AlgebraicReal::from_rational(Rational64::new(n, d)));
        }
        Ok(AlgebraicReal::from_integer(n))
    }

    fn term(&mut self) -> Result<AlgebraicReal, TwistError> {
        let mut acc = self.primary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.primary()?)?;
            } else if self.eat(b'/') {
                acc = acc.div(&self.primary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn expr(&mut self) -> Result<AlgebraicReal, TwistError> {
        let mut acc = if self.eat(b'-') {
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.add(&self.term()?.neg())?;
            } else if self.pos == self.bytes.len() {
                return Ok(acc);
            } else {
                return Err(self.err(format!(
                    "unexpected '{}' at position {}",
                    self.bytes[self.pos] as char, self.pos
                )));
            }
        }
    }
}

impl FromStr for AlgebraicReal {
    type Err = TwistError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(TwistError::Parse {
                input: s.to_string(),
                reason: "empty input".to_string(),
            });
        }
        let mut p = Parser { src: &compact, bytes: compact.as_bytes(), pos: 0 };
        p.expr()
    }
}

// ---------------------------------------------------------------------------
// Triples and classification
// ---------------------------------------------------------------------------

/// The twist triple (a, b, c) of I_{a,b,c}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistTriple {
    pub a: AlgebraicReal,
    pub b: AlgebraicReal,
    pub c: AlgebraicReal,
}

/// Outcome of the exact ℚ-linear analysis of (a, b, c).
#[derive(Debug, Clone, PartialEq)]
pub enum TripleClass {
    /// (a, b, c) = scale · (p, q, r) with p, q, r coprime positive integers.
    RationalRatio { ints: (u64, u64, u64), scale: AlgebraicReal },
    /// A single primitive relation l₁·a = l₂·b + l₃·c (and the pairwise
    /// ratios are not all rational).  Normalized so gcd(|l|) = 1 and the
    /// first nonzero entry is positive.
    OneRelation { l: (i64, i64, i64) },
    /// No ℚ-linear relation at all.
    Independent,
}

impl TwistTriple {
    pub fn new(a: AlgebraicReal, b: AlgebraicReal, c: AlgebraicReal) -> Result<Self, TwistError> {
        for v in [&a, &b, &c] {
            if v.value() <= 0.0 {
                return Err(TwistError::NonPositiveTwist { value: v.to_string() });
            }
        }
        Ok(TwistTriple { a, b, c })
    }

    pub fn parse(a: &str, b: &str, c: &str) -> Result<Self, TwistError> {
        Self::new(a.parse()?, b.parse()?, c.parse()?)
    }

    pub fn values(&self) -> (f64, f64, f64) {
        (self.a.value(), self.b.value(), self.c.value())
    }

    /// The moment is symmetric in (b, c); analyses that assume c ≤ b go
    /// through this.  Returns the sorted triple and whether b, c swapped.
    pub fn sorted_bc(&self) -> (TwistTriple, bool) {
        if self.c.value() > self.b.value() {
            (TwistTriple { a: self.a, b: self.c, c: self.b }, true)
        } else {
            (*self, false)
        }
    }

    /// Exact relation-space analysis; see [`TripleClass`].
    pub fn classify(&self) -> TripleClass {
        // Coordinates of (a, −b, −c) over the basis {1} ∪ {√d}.
        let (nb, nc) = (self.b.neg(), self.c.neg());
        let twists = [&self.a, &nb, &nc];
        let mut surds: Vec<u64> = Vec::new();
        for t in twists {
            if !t.coeff.is_zero() && !surds.contains(&t.d) {
                surds.push(t.d);
            }
        }
        // rows: one per basis element, columns: the three twists.
        let mut rows: Vec<[Rational64; 3]> = Vec::new();
        let mut rational_row = [Rational64::zero(); 3];
        for (j, t) in twists.iter().enumerate() {
            rational_row[j] = t.rat;
        }
        rows.push(rational_row);
        for &d in &surds {
            let mut row = [Rational64::zero(); 3];
            for (j, t) in twists.iter().enumerate() {
                if !t.coeff.is_zero() && t.d == d {
                    row[j] = t.coeff;
                }
            }
            rows.push(row);
        }
        let null = rational_null_space(&mut rows);
        match null.len() {
            0 => TripleClass::Independent,
            1 => TripleClass::OneRelation { l: primitive_direction(&null[0]) },
            _ => {
                // Rank ≤ 1: all three twists are rational multiples of one
                // value, so b/a and c/a are exact rationals.
                let qb = self.b.div(&self.a).expect("rank-1 triple: b/a is in the field").rat;
                let qc = self.c.div(&self.a).expect("rank-1 triple: c/a is in the field").rat;
                let lcm = num_integer::lcm(*qb.denom(), *qc.denom());
                let p = lcm;
                let q = *(qb * Rational64::from_integer(lcm)).numer();
                let r = *(qc * Rational64::from_integer(lcm)).numer();
                let g = num_integer::gcd(num_integer::gcd(p, q), r);
                let ints = ((p / g) as u64, (q / g) as u64, (r / g) as u64);
                let scale = self
                    .a
                    .div(&AlgebraicReal::from_integer(ints.0 as i64))
                    .expect("integer is nonzero");
                TripleClass::RationalRatio { ints, scale }
            }
        }
    }
}

impl fmt::Display for TwistTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Null space of a small rational matrix (rows × 3), as basis vectors.
fn rational_null_space(rows: &mut Vec<[Rational64; 3]>) -> Vec<[Rational64; 3]> {
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for col in 0..3 {
        // find a pivot in column `col` at or below row r
        if let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) {
            rows.swap(r, p);
            let inv = rows[r][col];
            for x in rows[r].iter_mut() {
                *x = *x / inv;
            }
            for i in 0..rows.len() {
                if i != r && !rows[i][col].is_zero() {
                    let f = rows[i][col];
                    for c in 0..3 {
                        let sub = f * rows[r][c];
                        rows[i][c] = rows[i][c] - sub;
                    }
                }
            }
            pivot_cols.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
    }
    let free_cols: Vec<usize> = (0..3).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = [Rational64::zero(); 3];
        v[fc] = Rational64::from_integer(1);
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -rows[ri][fc];
        }
        basis.push(v);
    }
    basis
}

/// Scale a rational direction to a primitive integer vector with positive
/// leading entry.
fn primitive_direction(v: &[Rational64; 3]) -> (i64, i64, i64) {
    let lcm = v
        .iter()
        .map(|r| *r.denom())
        .fold(1i64, num_integer::lcm);
    let mut ints = [0i64; 3];
    for (i, r) in v.iter().enumerate() {
        ints[i] = *(r * Rational64::from_integer(lcm)).numer();
    }
    let g = ints.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
    if g != 0 {
        for x in ints.iter_mut() {
            *x /= g;
        }
    }
    if let Some(first) = ints.iter().find(|&&x| x != 0) {
        if *first < 0 {
            for x in ints.iter_mut() {
                *x = -*x;
            }
        }
    }
    (ints[0], ints[1], ints[2])
}
