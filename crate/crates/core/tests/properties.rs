use std::collections::BTreeSet;

use kirwan_core::cyclotomic::Cyclotomic;
use kirwan_core::exact::{hermite_normal_form, int, lattice_eq, rat, IntMatrix, Rational};
use kirwan_core::git::{cubic_slice_weights, is_semistable, verify_certificate, Support};
use kirwan_core::ledger::{
    k_equivalence_certificate, DenominatorConstraint, DivisorExpression, KEquivalenceVerdict, RewriteSystem,
};
use kirwan_core::motivic::{fixed_point_free, fixed_point_free_by_linear_algebra, MotivicClass, SignedPermutation};
use kirwan_core::wps::{age_duality_holds, reid_tai_audit, CyclicQuotientChart, WeightedProjectiveSpace};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn class() -> impl Strategy<Value = MotivicClass> {
    prop::collection::vec(-4i64..=4, 0..5)
        .prop_map(MotivicClass::from_coefficients)
}

fn cyclo(n: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((-3i64..=3, 0i64..n as i64), 1..4).prop_map(move |terms| {
        terms.into_iter().fold(Cyclotomic::zero(n), |acc, (k, j)| {
            &acc + &(&Cyclotomic::from_int(n, k) * &Cyclotomic::zeta_power(n, j))
        })
    })
}

fn expr() -> impl Strategy<Value = DivisorExpression> {
    prop::collection::vec((-6i64..=6, 1i64..=4, prop::sample::select(vec!["a", "b", "c", "d"])), 0..5)
        .prop_map(|v| {
            v.into_iter()
                .fold(DivisorExpression::zero(), |acc, (n, d, s)| &acc + &DivisorExpression::term(rat(n, d), s))
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn evaluation_is_a_ring_map(a in class(), b in class(), x in -5i64..=5) {
        let x = BigInt::from(x);
        prop_assert_eq!((&a * &b).evaluate(&x), a.evaluate(&x) * b.evaluate(&x));
        prop_assert_eq!((&a + &b).evaluate(&x), a.evaluate(&x) + b.evaluate(&x));
        prop_assert_eq!(a.euler_characteristic(), a.evaluate(&BigInt::one()));
    }

    #[test]
    fn motivic_display_round_trips(a in class()) {
        let s = a.to_string();
        prop_assert_eq!(s.parse::<MotivicClass>().unwrap(), a);
    }

    #[test]
    fn cyclotomic_field_axioms(a in cyclo(24), b in cyclo(24), c in cyclo(24)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn hermite_form_spans_the_same_lattice(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..4)) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let h = hermite_normal_form(&a);
        prop_assert_eq!(&h.u * &a, h.h.clone());
        prop_assert!(lattice_eq(&a.transpose(), &h.h.transpose()));
    }

    #[test]
    fn ages_are_dual(n in 2u64..=12, w in prop::collection::vec(1u64..=12, 2..5)) {
        let chart = CyclicQuotientChart { order: n, weights: w.iter().map(|x| x % n).collect() };
        prop_assert!(age_duality_holds(&chart));
        let a = reid_tai_audit(&chart);
        if let Some(m) = &a.min_age {
            prop_assert!(*m > Rational::zero());
        }
    }

    #[test]
    fn top_intersection_is_multilinear(d in prop::collection::vec(-5i64..=5, 4), k in -3i64..=3, slot in 0usize..4) {
        let p = WeightedProjectiveSpace::new(&[1, 2, 3, 4, 5]).unwrap();
        let base: Vec<Rational> = d.iter().map(|&x| int(x)).collect();
        let mut scaled = base.clone();
        scaled[slot] = &scaled[slot] * int(k);
        prop_assert_eq!(p.top_intersection(&scaled).unwrap(), int(k) * p.top_intersection(&base).unwrap());
    }

    #[test]
    fn stability_certificates_verify(mask in 0u64..64) {
        let w = cubic_slice_weights();
        let s = Support(mask);
        let c = is_semistable(&w, s).unwrap();
        prop_assert!(verify_certificate(&w, s, &c));
    }

    #[test]
    fn fixed_point_certificates_match_oracle(perm in Just(vec![0usize, 1, 2]).prop_shuffle(), signs in prop::collection::vec(prop::bool::ANY, 3)) {
        let signs: Vec<i8> = signs.into_iter().map(|b| if b { -1 } else { 1 }).collect();
        let g = SignedPermutation::new(perm, signs).unwrap();
        prop_assert_eq!(fixed_point_free(&g).is_fixed_point_free(), fixed_point_free_by_linear_algebra(&g));
    }

    #[test]
    fn divisor_expressions_form_a_vector_space(x in expr(), y in expr(), n in -5i64..=5) {
        let c = int(n);
        prop_assert_eq!((&x + &y).scale(&c), &x.scale(&c) + &y.scale(&c));
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x + &y, &y + &x);
    }

    #[test]
    fn acyclic_rewriting_is_confluent(e in expr(), ia in expr(), ib in expr()) {
        // a -> stuff in {b,c,d}, b -> stuff in {c,d}: terminating
        let ia = ia.substitute("a", &DivisorExpression::zero());
        let ib = ib.substitute("a", &DivisorExpression::zero()).substitute("b", &DivisorExpression::zero());
        let rs = RewriteSystem::new().rule("a", ia).rule("b", ib);
        let nf = rs.normalize(&e).unwrap();
        prop_assert!(nf.coefficient("a").is_zero() && nf.coefficient("b").is_zero());
        prop_assert!(rs.confluent_on(&e).unwrap());
    }

    #[test]
    fn certificates_are_sound(a in 1i64..50, b in 1i64..50, p in prop::sample::select(vec![2i64, 3, 5, 7])) {
        let coeff = int(a);
        let rhs = int(b);
        let constraint = DenominatorConstraint { dimension: 4, excluded_primes: BTreeSet::from([BigInt::from(p)]) };
        if let KEquivalenceVerdict::NotKEquivalent(w) = k_equivalence_certificate(&coeff, &constraint, &rhs).unwrap() {
            // no integer d can satisfy coeff * d = rhs when p divides coeff more than rhs
            prop_assert!(b % a != 0);
            prop_assert_eq!(w.prime, BigInt::from(p));
        }
    }
}
