use proptest::prelude::*;
use qsphere::coeff::{rat, Laurent, RatFn};

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-3i32..=3, -4i64..=4), 0..4)
        .prop_map(|ts| Laurent::from_terms(ts.into_iter().map(|(e, c)| (e, rat(c, 1)))))
}

fn nonzero_laurent() -> impl Strategy<Value = Laurent> {
    laurent().prop_filter("nonzero", |l| !l.is_zero())
}

fn ratfn() -> impl Strategy<Value = RatFn> {
    (laurent(), nonzero_laurent()).prop_map(|(n, d)| RatFn::new(n, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in ratfn(), b in ratfn(), c in ratfn()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, RatFn::zero());
        prop_assert_eq!(&a * &RatFn::one(), a.clone());
    }

    #[test]
    fn division_inverts(a in ratfn(), b in ratfn()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(&a.div(&b).unwrap() * &b, a);
    }

    #[test]
    fn eval_is_a_homomorphism(a in ratfn(), b in ratfn(), p in 1i64..=9, r in 2i64..=11) {
        prop_assume!(p < r);
        let q0 = rat(p, r);
        if let (Ok(x), Ok(y)) = (a.eval_at(&q0), b.eval_at(&q0)) {
            prop_assert_eq!((&a + &b).eval_at(&q0).unwrap(), &x + &y);
            prop_assert_eq!((&a * &b).eval_at(&q0).unwrap(), &x * &y);
        }
    }

    #[test]
    fn canonical_is_idempotent(a in ratfn()) {
        prop_assert_eq!(a.canonical(), a.clone());
        prop_assert_eq!(a.canonical().canonical(), a.canonical());
    }

    #[test]
    fn common_factors_cancel(n in laurent(), d in nonzero_laurent(), f in nonzero_laurent()) {
        let x = RatFn::new(&n * &f, &d * &f).unwrap();
        prop_assert_eq!(x, RatFn::new(n, d).unwrap());
    }
}
