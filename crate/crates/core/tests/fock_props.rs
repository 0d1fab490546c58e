mod common;

use std::sync::OnceLock;

use proptest::prelude::*;
use qsphere::algebras::{build_sigma4q, Presentation};
use qsphere::coeff::{int, rat, RatFn};
use qsphere::fock::{rep_sigma, trace_functional, FockRep};
use qsphere::ncpoly::{NCPoly, Word, DEFAULT_STEP_LIMIT};

const CUTOFF: u32 = 8;

fn s4() -> &'static Presentation {
    static P: OnceLock<Presentation> = OnceLock::new();
    P.get_or_init(|| build_sigma4q(DEFAULT_STEP_LIMIT).unwrap())
}

fn word(degree: usize) -> impl Strategy<Value = Word> {
    prop::sample::select(common::words(s4(), degree))
}

fn element(degree: usize) -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((word(degree), -3i64..=3), 1..4).prop_map(|ts| {
        let mut p = NCPoly::zero();
        for (w, c) in ts {
            p.add_term(w, RatFn::constant(int(c)));
        }
        p
    })
}

fn q0() -> impl Strategy<Value = qsphere::coeff::Rational> {
    (1i64..=5, 2i64..=7).prop_filter("0 < q < 1", |(p, r)| p < r).prop_map(|(p, r)| rat(p, r))
}

/// `(n1, n2)` displacement of a word: `a` lowers `n1`, `b` raises `n2`.
fn charge(w: &Word) -> (i64, i64) {
    let names = s4().names();
    w.letters().iter().fold((0, 0), |(x, y), &l| match names[l as usize].as_str() {
        "a" => (x - 1, y),
        "a*" => (x + 1, y),
        "b" => (x, y + 1),
        "b*" => (x, y - 1),
        _ => (x, y),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn star_is_adjoint(w in word(3), q in q0()) {
        let p = s4();
        let x = NCPoly::word(w);
        let lhs = rep_sigma(p, &p.star(&x).unwrap(), CUTOFF, &q).unwrap();
        let rhs = rep_sigma(p, &x, CUTOFF, &q).unwrap().adjoint();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplicative_on_the_interior(u in word(2), v in word(2), q in q0()) {
        let p = s4();
        let (x, y) = (NCPoly::word(u), NCPoly::word(v));
        let mut rep = FockRep::new(CUTOFF, &q).unwrap();
        let prod = rep.eval(p.names(), &x).unwrap().mul(&rep.eval(p.names(), &y).unwrap()).unwrap();
        let nf = rep.eval(p.names(), &p.mul(&x, &y).unwrap()).unwrap();
        let diff = prod.add(&nf.scale(&rat(-1, 1))).unwrap();
        let margin = (x.degree().unwrap() + y.degree().unwrap()) as u32;
        prop_assert!(diff.interior_entries(margin).is_empty());
    }

    #[test]
    fn trace_is_tracial(x in element(3), y in element(3)) {
        let p = s4();
        let xy = trace_functional(p, &p.mul(&x, &y).unwrap()).unwrap();
        let yx = trace_functional(p, &p.mul(&y, &x).unwrap()).unwrap();
        prop_assert_eq!(xy, yx);
    }

    #[test]
    fn words_are_homogeneous(w in word(4)) {
        let (dx, dy) = charge(&w);
        let op = rep_sigma(s4(), &NCPoly::word(w.clone()), CUTOFF, &rat(1, 2)).unwrap();
        for ((o, i), _) in op.entries() {
            prop_assert_eq!((o.0 as i64 - i.0 as i64, o.1 as i64 - i.1 as i64), (dx, dy));
        }
        if (dx, dy) != (0, 0) {
            prop_assert!(trace_functional(s4(), &NCPoly::word(w)).unwrap().is_zero());
        }
    }
}
