//! Complex log-Gamma, tuned for vertical-line arguments.
//!
//! χ(s) needs log Γ(s) at s = σ + it with σ near 1/2 and |t| anywhere from 0
//! to 10⁷.  Stirling's series with eight Bernoulli terms is accurate to
//! ~10⁻¹⁹ once |z| ≥ 15; below that we lift with log Γ(z) = log Γ(z+1) − log z.
//! Arguments in the lower half-plane reflect by conjugation.
//!
//! The branch of the result is whatever the lift produces — *not* always the
//! principal branch of log Γ.  Every caller here exponentiates, so only the
//! value mod 2πi matters.

use num_complex::Complex64;

/// Stirling coefficients B_{2k} / (2k(2k−1)) for k = 1..8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// log Γ(z) up to an integer multiple of 2πi.
///
/// Poles (z a nonpositive real integer) return non-finite values; callers in
/// this crate never get there — χ guards its own pole set separately.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return ln_gamma(z.conj()).conj();
    }
    // Lift until Stirling is trustworthy.
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm_sqr() < 225.0 {
        shift -= w.ln();
        w += 1.0;
    }
    let wi = 1.0 / w;
    let wi2 = wi * wi;
    // Horner in 1/w².
    let mut series = Complex64::new(STIRLING[7], 0.0);
    for k in (0..7).rev() {
        series = series * wi2 + STIRLING[k];
    }
    (w - 0.5) * w.ln() - w + HALF_LN_TWO_PI + series * wi + shift
}
