use kz_core::arith::expansion::{laurent_at_zero, resum};
use kz_core::arith::{MultiPoly, QMatrix, RFMatrix, RatFunc, Rational};
use kz_core::coords::{u_from_z, z_from_u};
use kz_core::io::{matrix_from_json, matrix_to_json, ratfunc_from_json, ratfunc_to_json};
use kz_core::symmetric::perm_matrix;
use proptest::prelude::*;

const NV: usize = 2;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((0u16..3, 0u16..3, small_rational()), 0..4)
        .prop_map(|terms| MultiPoly::from_terms(NV, terms.into_iter().map(|(a, b, c)| (smallvec::smallvec![a, b], c))))
}

fn nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RatFunc::normalize(&n, &d).unwrap())
}

fn nonzero_ratfunc() -> impl Strategy<Value = RatFunc> {
    (nonzero_poly(), nonzero_poly()).prop_map(|(n, d)| RatFunc::normalize(&n, &d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_laws(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverse_and_division(a in nonzero_ratfunc(), b in ratfunc()) {
        prop_assert!((&a * &a.inverse().unwrap()).is_one());
        prop_assert_eq!(&(&b / &a) * &a, b);
    }

    #[test]
    fn normalize_is_idempotent(n in poly(), d in nonzero_poly(), k in nonzero_poly()) {
        let f = RatFunc::normalize(&n, &d).unwrap();
        prop_assert_eq!(RatFunc::normalize(&f.numer(), &f.denom()).unwrap(), f.clone());
        // A common factor cancels.
        prop_assert_eq!(RatFunc::normalize(&(&n * &k), &(&d * &k)).unwrap(), f);
    }

    #[test]
    fn derivative_rules(a in ratfunc(), b in ratfunc(), v in 0usize..NV) {
        prop_assert_eq!((&a * &b).derivative(v), &(&a.derivative(v) * &b) + &(&a * &b.derivative(v)));
        prop_assert_eq!((&a + &b).derivative(v), &a.derivative(v) + &b.derivative(v));
    }

    #[test]
    fn quotient_rule(a in ratfunc(), b in nonzero_ratfunc()) {
        let lhs = (&a / &b).derivative(0);
        let rhs = &(&(&a.derivative(0) * &b) - &(&a * &b.derivative(0))) / &(&b * &b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn expansion_resums(f in ratfunc(), terms in 1usize..6) {
        prop_assume!(!f.is_zero());
        let l = laurent_at_zero(&f, 0, terms).unwrap();
        let s = resum(&l, 0, NV, false);
        // f - s vanishes to order lowest + terms along z_1 = 0.
        let diff = &f - &s;
        if !diff.is_zero() {
            prop_assert!(diff.order_at_zero(0).unwrap() >= l.lowest + terms as i32);
        }
    }

    #[test]
    fn matrix_inverse(entries in prop::collection::vec(ratfunc(), 4)) {
        let m = RFMatrix::new(2, 2, NV, entries);
        if let Ok(inv) = m.inverse() {
            prop_assert!(m.try_mul(&inv).unwrap().is_identity());
            prop_assert!(inv.try_mul(&m).unwrap().is_identity());
        } else {
            prop_assert!(m.determinant().unwrap().is_zero());
        }
    }

    #[test]
    fn serialization_round_trip(entries in prop::collection::vec(ratfunc(), 6), f in ratfunc()) {
        let m = RFMatrix::new(2, 3, NV, entries);
        prop_assert_eq!(matrix_from_json(&matrix_to_json(&m), "m").unwrap(), m);
        prop_assert_eq!(ratfunc_from_json(&ratfunc_to_json(&f), NV, "f").unwrap(), f);
    }

    #[test]
    fn transpositions_are_involutions(n in 2usize..8, i in 1usize..8, j in 1usize..8) {
        prop_assume!(i != j && i <= n && j <= n);
        let p = perm_matrix(n, i, j).unwrap();
        prop_assert_eq!(&p * &p, QMatrix::identity(n));
        prop_assert_eq!(p.determinant(), Rational::from_integer((-1).into()));
    }

    #[test]
    fn coordinate_round_trip(z in prop::collection::vec(small_rational(), 2..7)) {
        match u_from_z(&z) {
            Ok(u) => prop_assert_eq!(z_from_u(&u).unwrap(), z),
            Err(_) => prop_assert!(z.windows(2).any(|w| w[0] == w[1])),
        }
    }
}
