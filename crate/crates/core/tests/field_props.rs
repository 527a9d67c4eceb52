use opennet::field::{Field, LaurentPoly, Polynomial, Rational, RationalFunction};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(rational(), 0..4).prop_map(Polynomial::new)
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (polynomial(), polynomial()).prop_filter_map("nonzero denominator", |(n, d)| RationalFunction::new(n, d).ok())
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-3i64..=3, prop::collection::vec(-4i64..=4, 0..5))
        .prop_map(|(off, cs)| LaurentPoly::new(off, cs.into_iter().map(Rational::from_integer).collect()))
}

fn field_axioms<F: Field>(a: &F, b: &F, c: &F) {
    assert_eq!(a.add(b), b.add(a));
    assert_eq!(a.mul(b), b.mul(a));
    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    assert_eq!(a.add(&F::zero()), *a);
    assert_eq!(a.mul(&F::one()), *a);
    assert!(a.add(&a.neg()).is_zero());
    assert_eq!(a.sub(b), a.add(&b.neg()));
    match a.inv() {
        Ok(inv) => assert!(a.mul(&inv).is_one()),
        Err(_) => assert!(a.is_zero()),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rationals_form_a_field(a in rational(), b in rational(), c in rational()) {
        field_axioms(&a, &b, &c);
    }

    #[test]
    fn rational_functions_form_a_field(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        field_axioms(&a, &b, &c);
    }

    #[test]
    fn rational_functions_are_in_lowest_terms(a in ratfunc()) {
        prop_assert_eq!(a.num().gcd(a.den()), Polynomial::one());
        prop_assert!(a.den().leading().unwrap().is_one());
    }

    #[test]
    fn laurent_division_shrinks_spread(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        if !r.is_zero() {
            prop_assert!(r.spread() < b.spread());
        }
    }

    #[test]
    fn laurent_gcd_divides_and_is_canonical(a in laurent(), b in laurent(), c in laurent()) {
        let g = a.gcd(&b);
        prop_assert!(g.divides(&a) && g.divides(&b));
        prop_assert_eq!(g.canonical(), g.clone());
        // every common divisor divides the gcd
        let (ac, bc) = (&a * &c, &b * &c);
        if !c.is_zero() {
            prop_assert!(c.divides(&ac.gcd(&bc)));
        }
    }

    #[test]
    fn unit_part_times_canonical(a in laurent()) {
        prop_assert_eq!(&a.unit_part() * &a.canonical(), a.clone());
        prop_assert!(a.unit_part().is_unit());
        prop_assert_eq!(&a.unit_part() * &a.unit_part().unit_inverse().unwrap(), LaurentPoly::one());
    }
}
