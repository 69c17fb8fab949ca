//! The parametrized diagonal enumeration against a brute-force join oracle.

mod common;

use std::collections::BTreeSet;

use zetamoment::diagonal::{
    diagonal_partial_sums, enumerate_diagonal, BoxCaps,
};
use zetamoment::triple::TwistTriple;

fn tri(a: &str, b: &str, c: &str) -> TwistTriple {
    TwistTriple::parse(a, b, c).unwrap()
}

fn lib_set(t: &TwistTriple, caps: u64) -> BTreeSet<(u64, u64, u64)> {
    enumerate_diagonal(t, &BoxCaps::uniform(caps))
        .unwrap()
        .solutions
        .iter()
        .map(|s| (s.n1, s.n2, s.n3))
        .collect()
}

#[test]
fn parametrization_agrees_with_the_join_oracle() {
    for (a, b, c) in [(2u32, 3u32, 3u32), (2, 5, 3), (1, 3, 2), (1, 2, 1)] {
        let t = tri(&a.to_string(), &b.to_string(), &c.to_string());
        let lib = lib_set(&t, 120);
        let brute = common::brute_diagonal(a, b, c, 120);
        assert_eq!(
            lib, brute,
            "({a},{b},{c}) caps 120: parametrized and brute sets differ"
        );
        assert!(!lib.is_empty(), "({a},{b},{c}): no solutions at caps 120?");
    }
}

#[test]
fn known_count_for_the_cube_family() {
    // (2,3,3) inside the uniform 100-box: n₁² = (n₂n₃)³ forces n₂n₃ = s²,
    // n₁ = s³ ≤ 100 → s ≤ 4, and the divisor structure yields 12 triples.
    assert_eq!(lib_set(&tri("2", "3", "3"), 100).len(), 12);
}

#[test]
fn partial_sums_grow_with_the_box() {
    let t = tri("2", "3", "3");
    let s200 = diagonal_partial_sums(&t, 200.0, 0.5).unwrap();
    let s800 = diagonal_partial_sums(&t, 800.0, 0.5).unwrap();
    assert!(s800.sigma_partial >= s200.sigma_partial);
    assert!(s800.j1 >= s200.j1);
    assert!(s800.j4 >= s200.j4);
    // The box partial sum is a lower bound for the full constant.
    let sigma = zetamoment::sigma::sigma_constant(&t, 1e-9).unwrap();
    assert!(s800.sigma_partial <= sigma.value + 1e-12);
}
