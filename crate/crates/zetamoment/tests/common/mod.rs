//! Shared oracles for the integration suite.
//!
//! Everything here is deliberately independent of the crate's own numerics:
//! ζ comes from Euler–Maclaurin (the library uses Riemann–Siegel), Γ from a
//! Lanczos fit (the library uses Stirling), oscillatory integrals from brute
//! Gauss–Legendre subdivision, and diagonal solutions from a hash join
//! (the library parametrizes).  Agreement is then evidence, not tautology.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_complex::Complex64;

/// B_{2k}/(2k)! for k = 1..8 — enough Euler–Maclaurin corrections that the
/// remainder is far below f64 resolution once N ≳ t.
const BERN_OVER_FACT: [f64; 8] = [
    1.0 / 12.0,                      // B2/2!
    -1.0 / 720.0,                    // B4/4!
    1.0 / 30240.0,                   // B6/6!
    -1.0 / 1209600.0,                // B8/8!
    1.0 / 47900160.0,                // B10/10!
    -691.0 / 1307674368000.0,        // B12/12!
    1.0 / 74724249600.0,             // B14/14!
    -3617.0 / 10670622842880000.0,   // B16/16!
];

/// ζ(s) by Euler–Maclaurin: Σ_{n<N} n^{−s} + N^{−s}/2 + N^{1−s}/(s−1)
/// + Σ_k B_{2k}/(2k)!·(s)_{2k−1}·N^{−s−2k+1}.  Truncation N ≈ |Im s| keeps
/// the correction ratio at (|s|/2πN)² ≈ 1/40 per term, so eight terms land
/// near machine precision.
pub fn em_zeta(s: Complex64, n_terms: usize) -> Complex64 {
    let n = n_terms.max(16);
    let nf = n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for k in 1..n {
        let term = (-s * (k as f64).ln()).exp();
        // Kahan, since the head has n terms of comparable size.
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    let n_pow = (-s * nf.ln()).exp(); // N^{−s}
    let mut total = sum + 0.5 * n_pow + n_pow * nf / (s - 1.0);
    // Correction terms: T_k = B_{2k}/(2k)! · Π_{j=0}^{2k−2}(s+j) · N^{−s−2k+1}.
    let mut rising = Complex64::new(1.0, 0.0); // Π so far
    let mut j = 0.0f64;
    for (k, bf) in BERN_OVER_FACT.iter().enumerate() {
        let needed = 2 * (k + 1) - 1; // 2k−1 factors for this k
        while (j as usize) < needed {
            rising *= s + j;
            j += 1.0;
        }
        let power = n_pow * nf.powi(-(2 * (k + 1) as i32) + 1); // N^{−s−2k+1}
        total += *bf * rising * power;
    }
    total
}

/// ζ(1/2 + it) from the Euler–Maclaurin oracle with an automatic cutoff.
pub fn em_zeta_critical(t: f64) -> Complex64 {
    em_zeta(Complex64::new(0.5, t), (t.abs().ceil() as usize).max(48))
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_C: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// log Γ(z) for Re z > 0 by the Lanczos approximation (g = 7, 9 terms).
pub fn lanczos_ln_gamma(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_C[0], 0.0);
    for (i, c) in LANCZOS_C.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// χ(s) = 2^{s−1}π^s sec(πs/2)/Γ(s) at s = 1/2 + it, assembled literally from
/// its definition.  sec is taken in log form so cosh(πt/2) never overflows:
/// log cos w = −iw − log 2 + log(1 + e^{2iw}) for Im w > 0.
pub fn chi_literal(t: f64) -> Complex64 {
    let s = Complex64::new(0.5, t);
    let ln2 = std::f64::consts::LN_2;
    let lnpi = std::f64::consts::PI.ln();
    let w = 0.5 * std::f64::consts::PI * s;
    let log_cos = -Complex64::i() * w - ln2 + ((2.0 * Complex64::i() * w).exp() + 1.0).ln();
    let log_chi = (s - 1.0) * ln2 + s * lnpi - log_cos - lanczos_ln_gamma(s);
    log_chi.exp()
}

/// ⌊v^{1/a}⌋ for u128, exact.
pub fn integer_root(v: u128, a: u32) -> u128 {
    if a == 1 || v <= 1 {
        return v;
    }
    let mut r = (v as f64).powf(1.0 / a as f64).round() as u128;
    while r.checked_pow(a).map(|p| p > v).unwrap_or(true) {
        r -= 1;
    }
    while (r + 1).checked_pow(a).map(|p| p <= v).unwrap_or(false) {
        r += 1;
    }
    r
}

/// All solutions of n₁^a = n₂^b n₃^c inside the uniform box, by a hash-free
/// join: walk (n₂, n₃), take the exact integer a-th root of the product.
/// Magnitudes stay inside u128 for every triple and cap the suite uses.
pub fn brute_diagonal(a: u32, b: u32, c: u32, caps: u64) -> BTreeSet<(u64, u64, u64)> {
    let mut out = BTreeSet::new();
    for n2 in 1..=caps {
        let v2 = (n2 as u128).pow(b);
        for n3 in 1..=caps {
            let v = match (n3 as u128).checked_pow(c).and_then(|v3| v2.checked_mul(v3)) {
                Some(v) => v,
                None => continue,
            };
            let r = integer_root(v, a);
            if r.pow(a) == v && r >= 1 && r <= caps as u128 {
                out.insert((r as u64, n2, n3));
            }
        }
    }
    out
}

/// Σ_{h ≤ depth} d(h²)·h^{−s} through a smallest-prime-factor sieve;
/// d(h²) = Π(2eᵢ + 1) over the factorization h = Π pᵢ^{eᵢ}.
pub fn divisor_square_sum(depth: u64, s: f64) -> f64 {
    let n = depth as usize;
    let mut spf: Vec<u32> = vec![0; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for h in 1..=n {
        let mut m = h;
        let mut d = 1u64;
        while m > 1 {
            let p = spf[m] as usize;
            let mut e = 0u64;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            d *= 2 * e + 1;
        }
        let term = d as f64 * (h as f64).powf(-s);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// 10-point Gauss–Legendre nodes (positive half) and weights on [−1, 1].
const GL10_X: [f64; 5] = [
    0.1488743389816312,
    0.4333953941292472,
    0.6794095682990244,
    0.8650633666889845,
    0.9739065285171717,
];
const GL10_W: [f64; 5] = [
    0.2955242247147529,
    0.2692667193099963,
    0.2190863625159820,
    0.1494513491505806,
    0.0666713443086881,
];

/// ∫_{lo}^{hi} e^{iωt} dt by brute panelled Gauss–Legendre, ~½ rad per panel,
/// so the closed form (e^{iωhi} − e^{iωlo})/(iω) can be tested against it.
pub fn gl_osc_integral(omega: f64, lo: f64, hi: f64) -> Complex64 {
    let panels = ((omega.abs() * (hi - lo) / 0.5).ceil() as usize).max(8);
    let h = (hi - lo) / panels as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * h;
        for i in 0..5 {
            for sign in [-1.0, 1.0] {
                let t = mid + sign * 0.5 * h * GL10_X[i];
                sum += 0.5 * h * GL10_W[i] * Complex64::from_polar(1.0, omega * t);
            }
        }
    }
    sum
}

/// A unique scratch directory for a test, removed by `drop_out_dir`.
pub fn fresh_out_dir(tag: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("zetamoment-it-{}-{tag}", std::process::id()))
}

pub fn drop_out_dir(dir: &std::path::Path) {
    let _ = std::fs::remove_dir_all(dir);
}
