//! Torsion in low weights, checked against matrices written out by hand.

mod common;

use gauge_coho::{Engine, Modulus, PresentationSpec};
use num_bigint::BigInt;

use common::{determinant, maximal_minor_gcd, rank_mod, relation_rows, BIG_PRIME};

fn rows(data: &[&[i64]]) -> Vec<Vec<BigInt>> {
    data.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

fn torsion_at(spec: &PresentationSpec, w: u32) -> Vec<BigInt> {
    Engine::new()
        .component(spec, w, Modulus::Rational)
        .unwrap()
        .torsion_divisors()
}

/// Bott(2) at weight 4. With `e1^4, e1^2 e2, e1 e3, e2^2, e4` as columns, the relations
/// `e1^2 p2, e2 p2, e1 p3, p4` kill `e4` through `p4`. Eliminating `e4` leaves four
/// rows in the remaining four columns whose determinant is 2, so the quotient is
/// `Z ⊕ Z/2`.
#[test]
fn bott_two_weight_four_has_index_two() {
    let kernel = rows(&[
        &[1, -2, 0, 0],
        &[0, 1, 0, -2],
        &[1, -3, 3, 0],
        &[1, -4, 4, 2],
    ]);
    assert_eq!(determinant(&kernel).magnitude(), &2u32.into());

    let spec = PresentationSpec::bott(2, 4).unwrap();
    assert_eq!(torsion_at(&spec, 4), vec![BigInt::from(2)]);
    let (monos, rel) = relation_rows(&spec, 4);
    assert_eq!(monos - rank_mod(&rel, BIG_PRIME), 1);
    assert_eq!(monos - rank_mod(&rel, 2), 2);
}

#[test]
fn bott_two_weight_three_is_free() {
    let spec = PresentationSpec::bott(2, 3).unwrap();
    assert!(torsion_at(&spec, 3).is_empty());
    let (monos, rel) = relation_rows(&spec, 3);
    assert_eq!(rank_mod(&rel, 2), rank_mod(&rel, BIG_PRIME));
    assert_eq!(monos - rank_mod(&rel, 3), 1);
}

/// Gauge(1, k) at weight 2 over `c1^2, c1*x1, x1^2, x2`: rows `c1*h1`, `x1*h1`, `h2`.
#[test]
fn rank_one_weight_two_is_z_mod_two() {
    for k in -3i64..=4 {
        let hand = rows(&[&[k, -1, 0, 0], &[0, k, -1, 0], &[0, -1, 1, -2]]);
        assert_eq!(maximal_minor_gcd(&hand), BigInt::from(2), "k = {k}");
        let spec = PresentationSpec::gauge(1, k, 2).unwrap();
        assert_eq!(torsion_at(&spec, 2), vec![BigInt::from(2)], "k = {k}");
    }
}

#[test]
fn gauge_two_first_torsion_is_weight_four() {
    for k in [-1, 0, 2] {
        let spec = PresentationSpec::gauge(2, k, 4).unwrap();
        for w in 0..=3 {
            assert!(torsion_at(&spec, w).is_empty(), "k = {k}, weight {w}");
        }
        assert_eq!(torsion_at(&spec, 4), vec![BigInt::from(2)]);
        let (_, rel) = relation_rows(&spec, 4);
        assert_eq!(rank_mod(&rel, BIG_PRIME) - rank_mod(&rel, 2), 1);
        assert_eq!(rank_mod(&rel, BIG_PRIME), rank_mod(&rel, 3));
    }
}
