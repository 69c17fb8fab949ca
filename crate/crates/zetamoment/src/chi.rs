//! The functional-equation factor χ(s) = 2^{s−1} π^s sec(πs/2) / Γ(s).
//!
//! ζ(s) = χ(s) ζ(1−s), and on the critical line χ(1/2+it) is unimodular —
//! it is the rotation that turns ζ(1/2−it) into ζ(1/2+it) and the weight
//! attached to the reflected Dirichlet polynomial in the combination
//! P(t) = D(1/2+it) + χ(1/2+it) D(1/2−it).
//!
//! Everything is computed through logs:
//!
//! ```text
//!     log χ(s) = (s−1)·log 2 + s·log π − log cos(πs/2) − log Γ(s),
//! ```
//!
//! so nothing overflows for |t| up to 10⁷.  The phase of χ grows like
//! t·log t, so the *relative* accuracy of the exponential degrades like
//! ε·t·log t — about 3·10⁻¹⁰ at |t| = 10⁵ — which is the honest limit of a
//! double-precision log route.
//!
//! The asymptotic form of Lemma-type χ expansions,
//! χ(1/2+it) = (2π/t)^{it} e^{i(t+π/4)} (1 + O(1/t)), is available as
//! [`chi_asymptotic`] for cross-checks; the measured defect is ≈ 1/(24t).

use crate::gamma::ln_gamma;
use crate::kahan::KahanComplex;
use crate::TWO_PI;
use num_complex::Complex64;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum ChiError {
    /// s = σ + 0i sits within 10⁻⁸ of an odd integer, where sec(πs/2) has a
    /// pole that nothing cancels.
    PoleProximity { sigma: f64 },
    /// The asymptotic form is a large-t expansion; t ≤ 0 has no meaning.
    NonpositiveArgument { t: f64 },
}

impl fmt::Display for ChiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChiError::PoleProximity { sigma } => write!(
                f,
                "chi pole: sigma = {sigma} is within 1e-8 of an odd integer at t = 0"
            ),
            ChiError::NonpositiveArgument { t } => {
                write!(f, "chi_asymptotic needs t > 0, got {t}")
            }
        }
    }
}

impl std::error::Error for ChiError {}

/// log cos(z) without overflow for large |Im z|.
///
/// For Im z > 0 write cos z = e^{−iz}(1 + e^{2iz})/2 with |e^{2iz}| < 1, and
/// symmetrically below the real axis.  The branch is immaterial here: the
/// result only ever feeds an exponential.
fn ln_cos(z: Complex64) -> Complex64 {
    const LN_2: f64 = std::f64::consts::LN_2;
    let i = Complex64::new(0.0, 1.0);
    if z.im > 0.0 {
        -i * z + (Complex64::new(1.0, 0.0) + (2.0 * i * z).exp()).ln() - LN_2
    } else if z.im < 0.0 {
        i * z + (Complex64::new(1.0, 0.0) + (-2.0 * i * z).exp()).ln() - LN_2
    } else {
        Complex64::new(z.re.cos(), 0.0).ln()
    }
}

/// χ(σ + it) through the log route.
pub fn chi(sigma: f64, t: f64) -> Result<Complex64, ChiError> {
    if t == 0.0 {
        // sec(πs/2) poles at odd integers on the real axis.
        let nearest_odd = 2.0 * ((sigma - 1.0) / 2.0).round() + 1.0;
        if (sigma - nearest_odd).abs() < 1e-8 {
            return Err(ChiError::PoleProximity { sigma });
        }
    }
    let s = Complex64::new(sigma, t);
    let half_pi_s = s * std::f64::consts::FRAC_PI_2;
    // Assemble the exponent with compensation: the individual terms reach
    // O(t log t) and their cancellation is what keeps |χ| ≈ 1.
    let mut exponent = KahanComplex::new();
    exponent.add((s - 1.0) * std::f64::consts::LN_2);
    exponent.add(s * std::f64::consts::PI.ln());
    exponent.add(-ln_cos(half_pi_s));
    exponent.add(-ln_gamma(s));
    Ok(exponent.value().exp())
}

/// The leading asymptotic form (2π/t)^{it} e^{i(t+π/4)} of χ(1/2+it), t > 0.
pub fn chi_asymptotic(t: f64) -> Result<Complex64, ChiError> {
    if t <= 0.0 {
        return Err(ChiError::NonpositiveArgument { t });
    }
    let phase = t * (TWO_PI / t).ln() + t + std::f64::consts::FRAC_PI_4;
    Ok(Complex64::from_polar(1.0, phase))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn chi_at_half_is_one() {
        let v = chi(0.5, 0.0).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12, "χ(1/2) = {v}");
    }

    #[test]
    fn chi_at_two() {
        // ζ(2) = χ(2) ζ(−1) gives χ(2) = (π²/6)/(−1/12) = −2π².
        let v = chi(2.0, 0.0).unwrap();
        let expect = -2.0 * std::f64::consts::PI * std::f64::consts::PI;
        assert!((v.re - expect).abs() < 1e-10 && v.im.abs() < 1e-12, "χ(2) = {v}");
    }

    #[test]
    fn reflection_product_small_t() {
        let p = chi(0.5, 5.0).unwrap() * chi(0.5, -5.0).unwrap();
        assert!((p - Complex64::new(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn reflection_product_off_line() {
        for &(sigma, t) in &[(0.3, 7.7), (0.9, 300.0), (-0.5, 41.0)] {
            let p = chi(sigma, t).unwrap() * chi(1.0 - sigma, -t).unwrap();
            assert!(
                (p - Complex64::new(1.0, 0.0)).norm() < 1e-9,
                "χ(s)χ(1−s) = {p} at σ = {sigma}, t = {t}"
            );
        }
    }

    #[test]
    fn asymptotic_defect_shrinks_like_one_over_t() {
        for &t in &[50.0, 100.0, 200.0, 1000.0, 5000.0] {
            let exact = chi(0.5, t).unwrap();
            let asym = chi_asymptotic(t).unwrap();
            let defect = (exact - asym).norm();
            assert!(defect <= 1.0 / (12.0 * t), "t = {t}: defect {defect}");
        }
    }

    #[test]
    fn pole_guard() {
        assert!(matches!(chi(3.0, 0.0), Err(ChiError::PoleProximity { .. })));
        assert!(matches!(chi(-5.0 + 4e-9, 0.0), Err(ChiError::PoleProximity { .. })));
        assert!(chi(3.0, 0.5).is_ok(), "pole guard only applies on the real axis");
        assert!(chi(3.0 + 2e-8, 0.0).is_ok());
    }

    #[test]
    fn asymptotic_rejects_nonpositive() {
        assert!(matches!(
            chi_asymptotic(0.0),
            Err(ChiError::NonpositiveArgument { .. })
        ));
        assert!(matches!(
            chi_asymptotic(-3.0),
            Err(ChiError::NonpositiveArgument { .. })
        ));
    }

    #[test]
    fn asymptotic_at_two_pi() {
        // (2π/t)^{it} = 1 there, so the value is e^{i(2π + π/4)}.
        let v = chi_asymptotic(TWO_PI).unwrap();
        let expect = Complex64::from_polar(1.0, TWO_PI + std::f64::consts::FRAC_PI_4);
        assert!((v - expect).norm() < 1e-12);
    }

    proptest! {
        #[test]
        fn unimodular_on_critical_line(t in -1.0e4..1.0e4f64) {
            let v = chi(0.5, t).unwrap();
            prop_assert!((v.norm() - 1.0).abs() < 1e-9);
        }

        #[test]
        fn reflection_on_critical_line(t in -1.0e4..1.0e4f64) {
            let p = chi(0.5, t).unwrap() * chi(0.5, -t).unwrap();
            prop_assert!((p - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        }
    }
}
