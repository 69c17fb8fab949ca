//! Exact integer helpers shared by the diagonal and gap modules.
//!
//! Everything that decides *membership* — is n₁^a equal to n₂^b n₃^c, which
//! integer is nearest to (n₂^b n₃^c)^{1/a} — runs in exact arithmetic.  The
//! powers involved overflow u128 already at modest caps, so the fallback is
//! `BigUint`; a u128 fast path covers the bulk of the work.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};
use std::cmp::Ordering;

/// base^exp in u128 if it fits.
pub(crate) fn checked_pow_u128(base: u64, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

pub(crate) fn big_pow(base: u64, exp: u32) -> BigUint {
    BigUint::from(base).pow(exp)
}

/// ⌊v^{1/n}⌋ by monotone integer Newton iteration.
pub(crate) fn floor_nth_root(v: &BigUint, n: u32) -> BigUint {
    assert!(n >= 1);
    if v.is_zero() || n == 1 {
        return v.clone();
    }
    // Start above the root: 2^(⌈bits/n⌉) ≥ v^{1/n}.
    let bits = v.bits();
    let mut x: BigUint = BigUint::one() << (bits / n as u64 + 1);
    loop {
        let y = (&x * (n - 1) + v / x.pow(n - 1)) / n;
        if y >= x {
            break;
        }
        x = y;
    }
    debug_assert!(x.pow(n) <= *v && (&x + 1u32).pow(n) > *v);
    x
}

/// The integer nearest to v^{1/n}, plus whether the root is exact.
///
/// The nearest-integer comparison v ≷ (r + 1/2)^n is done as
/// 2^n·v ≷ (2r+1)^n; a tie is impossible (even vs. odd), so no rounding
/// convention is ever exercised.
pub(crate) fn nearest_nth_root(v: &BigUint, n: u32) -> (BigUint, bool) {
    let r = floor_nth_root(v, n);
    if r.pow(n) == *v {
        return (r, true);
    }
    let lhs = v << n;
    let two_r_plus_one: BigUint = (&r << 1u32) + 1u32;
    let rhs = two_r_plus_one.pow(n);
    match lhs.cmp(&rhs) {
        Ordering::Less => (r, false),
        Ordering::Greater => (r + 1u32, false),
        Ordering::Equal => unreachable!("2^n·v is even, (2r+1)^n is odd"),
    }
}

/// num/den as f64, with the operands truncated to ~96 bits first so nothing
/// overflows on the way; relative error ≲ 3·10⁻¹⁶.
pub(crate) fn big_ratio_f64(num: &BigInt, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    assert!(!den.is_zero(), "ratio denominator is zero");
    let mag = num.magnitude();
    let nb = mag.bits() as i64;
    let db = den.bits() as i64;
    let sn = (nb - 96).max(0) as u64;
    let sd = (db - 96).max(0) as u64;
    let nf = (mag >> sn).to_f64().expect("≤ 96-bit value fits f64 range");
    let df = (den >> sd).to_f64().expect("≤ 96-bit value fits f64 range");
    let scale = 2f64.powi((sn as i64 - sd as i64) as i32);
    let q = nf / df * scale;
    if num.sign() == Sign::Minus {
        -q
    } else {
        q
    }
}

/// All primes ≤ n by a plain sieve of Eratosthenes.
pub(crate) fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

/// Möbius μ(k) by trial division; intended for small k (prime-zeta inversion).
pub(crate) fn moebius(k: u64) -> i32 {
    debug_assert!(k >= 1);
    let mut m = k;
    let mut mu = 1i32;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if m > 1 {
        mu = -mu;
    }
    mu
}
