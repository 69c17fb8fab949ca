//! Off-diagonal gap scanner against the diagonal set and a quadrature oracle.

mod common;

use std::collections::BTreeSet;

use zetamoment::diagonal::{enumerate_diagonal, BoxCaps};
use zetamoment::gaps::{gap_scan, offdiagonal_sums};
use zetamoment::triple::TwistTriple;

fn tri(a: &str, b: &str, c: &str) -> TwistTriple {
    TwistTriple::parse(a, b, c).unwrap()
}

/// D = 0 inside the box is exactly the diagonal: the scanner and the
/// enumerator must name the same tuples, element for element.
#[test]
fn zero_gap_set_is_the_diagonal() {
    for (a, b, c) in [("2", "3", "3"), ("1", "2", "1")] {
        let t = tri(a, b, c);
        let scan = gap_scan(&t, &BoxCaps::uniform(150), 0.1).unwrap();
        let zero: BTreeSet<_> = scan.zero_tuples.iter().copied().collect();
        let diag: BTreeSet<_> = enumerate_diagonal(&t, &BoxCaps::uniform(150))
            .unwrap()
            .solutions
            .iter()
            .map(|s| (s.n1, s.n2, s.n3))
            .collect();
        assert_eq!(zero, diag, "({a},{b},{c}): D = 0 set ≠ diagonal set");
    }
}

#[test]
fn quality_statistics_are_coherent() {
    let scan = gap_scan(&tri("2", "3", "3"), &BoxCaps::uniform(150), 0.1).unwrap();
    assert!(scan.min_quality > 0.0, "min quality must be positive");
    assert!(scan.offdiagonal_tuples > 0);
    // Percentiles must be sorted in both coordinates.
    for w in scan.quality_percentiles.windows(2) {
        assert!(w[0].0 < w[1].0);
        assert!(w[0].1 <= w[1].1);
    }
    // The minimizing tuple is a real off-diagonal tuple and every record's
    // quality sits at or above the minimum.
    for rec in &scan.records {
        assert!(rec.quality >= scan.min_quality);
    }
}

/// Each J₂,₂ term is the closed form of ∫ e^{itω} dt between the weight point
/// and T; check that identity numerically at the box's own (ω, limits).
#[test]
fn j22_terms_are_true_antiderivatives() {
    use num_complex::Complex64;
    let (a, b, c) = (2u32, 3u32, 3u32);
    let t_height = 1200.0;
    let theta = 0.5;
    let (af, bf, cf) = (a as f64, b as f64, c as f64);
    let caps = BoxCaps::for_box(&tri("2", "3", "3"), t_height, theta);
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut checked = 0;
    'outer: for n2 in 1..=caps.n2 {
        for n3 in 1..=caps.n3 {
            let v = (n2 as u128).pow(b) * (n3 as u128).pow(c);
            let n1 = common::integer_root(v, a).max(1);
            // Nearest integer to v^{1/a}: compare both candidates.
            let u1 = (v as f64).powf(1.0 / af);
            let n1 = if (u1 - n1 as f64).abs() <= (u1 - (n1 + 1) as f64).abs() {
                n1
            } else {
                n1 + 1
            };
            if n1 == 0 || n1 > caps.n1 as u128 || n1.pow(a) == v {
                continue; // out of box, or diagonal (no J22 term)
            }
            let omega = -((v as f64 / (n1 as f64).powi(a as i32)).ln());
            // ω = log(V/n₁^a) with the sign convention of the sum itself.
            let omega = -omega;
            let n_weight = two_pi
                * ((n1 as f64).powf(1.0 / theta) / af)
                    .max((n2 as f64).powi(2) / bf)
                    .max((n3 as f64).powi(2) / cf);
            if n_weight >= t_height {
                continue;
            }
            let closed = (Complex64::from_polar(1.0, t_height * omega)
                - Complex64::from_polar(1.0, n_weight * omega))
                / Complex64::new(0.0, omega);
            let oracle = common::gl_osc_integral(omega, n_weight, t_height);
            assert!(
                (closed - oracle).norm() < 1e-8,
                "antiderivative identity broken at ({n1},{n2},{n3}): {closed} vs {oracle}"
            );
            checked += 1;
            if checked >= 16 {
                break 'outer;
            }
        }
    }
    assert!(checked >= 8, "only {checked} near-diagonal tuples found to check");
}

#[test]
fn offdiagonal_sums_grow_with_t() {
    let t = tri("2", "3", "3");
    let s300 = offdiagonal_sums(&t, 300.0, 0.5).unwrap();
    let s900 = offdiagonal_sums(&t, 900.0, 0.5).unwrap();
    assert!(s900.j21 > s300.j21, "J21 should grow with the box");
    assert!(s900.j21_terms > s300.j21_terms);
}
