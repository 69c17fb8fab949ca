//! Saddle-point machinery: derivative-test bounds, the I₅ consistency link,
//! and the exact-resonance degeneracy of the a = 1 family.

mod common;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use zetamoment::fit::fit_error_exponent;
use zetamoment::quad::{integrate_component, QuadOpts};
use zetamoment::stationary::{
    k1_m1_split, phase_descriptor, phase_f5, phase_integral, StationaryOpts,
};
use zetamoment::triple::TwistTriple;

fn tri(a: &str, b: &str, c: &str) -> TwistTriple {
    TwistTriple::parse(a, b, c).unwrap()
}

/// First-derivative test: on a saddle-free window with F₅′ monotone, the
/// oscillatory integral is bounded by 4·amp/min|F₅′| (plus quadrature error).
/// Twenty seeded random windows on both sides of random saddles.
#[test]
fn saddle_free_windows_obey_the_first_derivative_bound() {
    let t = tri("2", "5", "3");
    let opts = StationaryOpts::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5add_1e55);
    let mut done = 0;
    while done < 20 {
        let n2 = rng.gen_range(1u64..=4);
        let n3 = rng.gen_range(1u64..=3);
        let n1 = rng.gen_range(1u64..=12);
        let desc = phase_descriptor(&t, (n1, n2, n3)).unwrap();
        if desc.saddle < 120.0 || desc.saddle > 4000.0 {
            continue;
        }
        let width = rng.gen_range(50.0..300.0);
        let (lo, hi) = if rng.gen_bool(0.5) {
            // Right of the saddle: |F₅′| grows with t, minimum at lo.
            let lo = desc.saddle * rng.gen_range(1.3..2.5);
            (lo, lo + width)
        } else {
            // Left of the saddle, staying clear of the origin.
            let hi = desc.saddle * rng.gen_range(0.4..0.75);
            if hi - width < 10.0 {
                continue;
            }
            (hi - width, hi)
        };
        let (value, err, _panels) = phase_integral(&t, (n1, n2, n3), (lo, hi), &opts).unwrap();
        let d_lo = phase_f5(&t, (n1, n2, n3), lo).unwrap().1.abs();
        let d_hi = phase_f5(&t, (n1, n2, n3), hi).unwrap().1.abs();
        let min_rate = d_lo.min(d_hi);
        assert!(min_rate > 0.0, "window touches the saddle");
        let bound = 4.0 * desc.amplitude / min_rate + 10.0 * err;
        assert!(
            value.norm() <= bound,
            "tuple ({n1},{n2},{n3}) window [{lo:.1},{hi:.1}]: |∫| = {:.4} > bound {bound:.4}",
            value.norm()
        );
        done += 1;
    }
}

/// The saddle-point split must track the component-5 integral: the residual
/// |I₅ − (K₁+M₁)| over a doubling T-grid fits with exponent well under 0.95,
/// i.e. the approximation genuinely improves relative to linear growth.
#[test]
fn k1_m1_split_tracks_the_component_integral() {
    let t = tri("2", "5", "3");
    let opts = QuadOpts::default();
    let mut rows = Vec::new();
    for &height in &[250.0, 500.0, 1000.0, 2000.0] {
        let i5 = integrate_component(5, &t, height, 0.5, &opts).unwrap();
        let split = k1_m1_split(&t, height).unwrap();
        let approx = Complex64::new(split.k1, 0.0) + split.m1;
        rows.push((height, (i5.value - approx).norm()));
    }
    let fit = fit_error_exponent(&rows).unwrap();
    assert!(
        fit.slope <= 0.95,
        "I₅ consistency residual grows at exponent {} (rows {rows:?})",
        fit.slope
    );
    // And the relative deviation at the top of the grid is modest.
    let i5 = integrate_component(5, &t, 2000.0, 0.5, &opts).unwrap();
    assert!(rows[3].1 < 0.15 * i5.value.norm());
}

/// For a = 1 every U₁ is an integer, so the oscillatory class is empty:
/// M₁ is exactly zero and every admissible tuple lands in K₁.
#[test]
fn a_equal_one_collapses_to_the_integral_class() {
    for (b, c) in [("1", "1"), ("2", "1"), ("3", "2"), ("5", "2")] {
        let t = tri("1", b, c);
        for &height in &[200.0, 500.0] {
            let split = k1_m1_split(&t, height).unwrap();
            assert_eq!(
                split.m1.norm(),
                0.0,
                "(1,{b},{c}) at T = {height}: M₁ must vanish identically"
            );
            assert_eq!(split.integral_tuples, split.total_tuples);
            assert!(split.k1 > 0.0);
        }
    }
}
