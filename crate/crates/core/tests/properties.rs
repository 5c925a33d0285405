mod common;

use std::sync::Arc;

use gauge_coho::polyring::{monomials_of_weight, parse_poly, render_poly};
use gauge_coho::verify::{check_rng, random_homogeneous, random_matrix, random_poly};
use gauge_coho::zlinalg::{hermite_normal_form, smith_normal_form};
use gauge_coho::{
    Engine, GeneratorContext, GradedPoly, Modulus, NormalForm, PresentationSpec, SuspensionOperator,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

use common::{determinant, mat_mul};

fn ctx() -> Arc<GeneratorContext> {
    Arc::new(GeneratorContext::new(3, 5, 3))
}

fn poly(seed: u64, label: &str) -> GradedPoly {
    random_poly(&mut check_rng(seed, label), &ctx(), 4, 5, 9)
}

fn combine(
    a: &BigInt,
    x: &NormalForm,
    b: &BigInt,
    y: &NormalForm,
) -> (Vec<BigRational>, Vec<BigInt>) {
    let (ra, rb) = (
        BigRational::from_integer(a.clone()),
        BigRational::from_integer(b.clone()),
    );
    let free = x
        .free
        .iter()
        .zip(&y.free)
        .map(|(u, v)| &ra * u + &rb * v)
        .collect();
    let tors = x
        .torsion
        .iter()
        .zip(&y.torsion)
        .map(|(u, v)| (a * &u.residue + b * &v.residue).mod_floor(&u.divisor))
        .collect();
    (free, tors)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let (a, b, c) = (poly(seed, "a"), poly(seed, "b"), poly(seed, "c"));
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.mul(&GradedPoly::one(&ctx())).unwrap(), a.clone());
    }

    #[test]
    fn render_parse_round_trip(seed in any::<u64>()) {
        let p = poly(seed, "render");
        prop_assert_eq!(parse_poly(&render_poly(&p), &ctx()).unwrap(), p);
    }

    #[test]
    fn reduction_mod_p_is_a_ring_map(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let (a, b) = (poly(seed, "a"), poly(seed, "b"));
        let lhs = a.mul(&b).unwrap().reduce_mod(p).unwrap();
        let rhs = a.reduce_mod(p).unwrap().mul(&b.reduce_mod(p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = a.add(&b).unwrap().reduce_mod(p).unwrap();
        let rhs = a.reduce_mod(p).unwrap().add(&b.reduce_mod(p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hermite_form_reconstructs(seed in any::<u64>()) {
        let m = random_matrix(&mut check_rng(seed, "hnf"), 7, 12);
        let (h, u) = hermite_normal_form(&m);
        prop_assert_eq!(mat_mul(&u.to_rows(), &m.to_rows()), h.to_rows());
        prop_assert!(determinant(&u.to_rows()).abs().is_one());
        // Echelon shape with positive pivots and reduced entries above them.
        let mut last: Option<usize> = None;
        for r in 0..h.rows() {
            let Some(c) = h.row(r).iter().position(|v| !v.is_zero()) else {
                prop_assert!((r..h.rows()).all(|s| h.row(s).iter().all(Zero::is_zero)));
                break;
            };
            prop_assert!(last.is_none_or(|l| c > l));
            let pivot = &h.row(r)[c];
            prop_assert!(pivot.is_positive());
            prop_assert!((0..r).all(|s| !h.row(s)[c].is_negative() && &h.row(s)[c] < pivot));
            last = Some(c);
        }
    }

    #[test]
    fn smith_form_reconstructs(seed in any::<u64>()) {
        let m = random_matrix(&mut check_rng(seed, "snf"), 7, 12);
        let snf = smith_normal_form(&m);
        let d = mat_mul(&mat_mul(&snf.u.to_rows(), &m.to_rows()), &snf.v.to_rows());
        for (r, row) in d.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                let want = if r == c { snf.divisors[r].clone() } else { BigInt::zero() };
                prop_assert_eq!(v, &want);
            }
        }
        prop_assert!(determinant(&snf.u.to_rows()).abs().is_one());
        prop_assert!(determinant(&snf.v.to_rows()).abs().is_one());
        for w in snf.divisors.windows(2) {
            prop_assert!(!w[0].is_negative());
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
    }

    #[test]
    fn normal_form_is_linear(
        seed in any::<u64>(),
        n in 1u32..=3,
        k in -2i64..=3,
        w in 1u32..=6,
        a in -5i64..=5,
        b in -5i64..=5,
    ) {
        let engine = Engine::new();
        let spec = PresentationSpec::gauge(n, k, 6).unwrap();
        let mut rng = check_rng(seed, "linear");
        let p = random_homogeneous(&mut rng, spec.context(), w, 4, 6);
        let q = random_homogeneous(&mut rng, spec.context(), w, 4, 6);
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let combo = p.scale(&a).add(&q.scale(&b)).unwrap();
        // The component handles zero inputs at its own weight.
        let comp = engine.component(&spec, w, Modulus::Rational).unwrap();
        let lhs = comp.normal_form(&combo).unwrap();
        let np = comp.normal_form(&p).unwrap();
        let nq = comp.normal_form(&q).unwrap();
        let (free, tors) = combine(&a, &np, &b, &nq);
        prop_assert_eq!(&lhs.free, &free);
        let got: Vec<BigInt> = lhs.torsion.iter().map(|t| t.residue.clone()).collect();
        prop_assert_eq!(got, tors);
    }

    #[test]
    fn normal_form_kills_the_ideal(
        seed in any::<u64>(),
        n in 1u32..=3,
        k in -2i64..=3,
        bott in any::<bool>(),
        p in prop::sample::select(vec![0u64, 2, 3, 5]),
    ) {
        let engine = Engine::new();
        let spec = if bott {
            PresentationSpec::bott(n + 1, 7).unwrap()
        } else {
            PresentationSpec::gauge(n, k, 7).unwrap()
        };
        let modulus = Modulus::from_u64(p).unwrap();
        let mut rng = check_rng(seed, "ideal");
        let i = rng.gen_range(spec.n()..=7);
        let rel = spec.relation(i).unwrap();
        let m = random_homogeneous(&mut rng, spec.context(), 7 - i, 3, 7);
        let element = rel.mul(&m).unwrap();
        prop_assert!(engine.normal_form(&spec, &element, modulus).unwrap().is_zero());
    }

    #[test]
    fn fds_is_a_derivation(seed in any::<u64>(), k in -3i64..=3) {
        let op = SuspensionOperator::new(k, 10).unwrap();
        let c_only = Arc::new(GeneratorContext::new(10, 0, 0));
        let mut rng = check_rng(seed, "derivation");
        let p = random_poly(&mut rng, &c_only, 5, 4, 6).rehome(op.context()).unwrap();
        let q = random_poly(&mut rng, &c_only, 5, 4, 6).rehome(op.context()).unwrap();
        let lhs = op.fds_apply(&p.mul(&q).unwrap()).unwrap();
        let rhs = op.fds_apply(&p).unwrap().mul(&q).unwrap()
            .add(&p.mul(&op.fds_apply(&q).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn basis_monomials_are_their_own_normal_forms() {
    let engine = Engine::new();
    for spec in [
        PresentationSpec::gauge(2, 1, 6).unwrap(),
        PresentationSpec::gauge(3, -2, 6).unwrap(),
        PresentationSpec::bott(3, 6).unwrap(),
    ] {
        for w in 0..=6 {
            let comp = engine.component(&spec, w, Modulus::Rational).unwrap();
            for m in comp.basis_monomials() {
                let p = GradedPoly::monomial(spec.context(), m.clone(), BigInt::one());
                let nf = engine.normal_form(&spec, &p, Modulus::Rational).unwrap();
                let terms: Vec<_> = nf.nonzero_terms().collect();
                assert_eq!(terms.len(), 1, "{} at weight {w}", spec.kind());
                assert_eq!(terms[0].0, &m);
                assert!(terms[0].1.is_one());
            }
            assert_eq!(comp.dim, comp.basis_monomials().len());
            assert!(comp.dim <= monomials_of_weight(spec.context(), w).len());
        }
    }
}
