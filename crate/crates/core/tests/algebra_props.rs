mod common;

use std::sync::OnceLock;

use proptest::prelude::*;
use qsphere::algebras::{build, Presentation, Uq4};
use qsphere::coeff::{int, RatFn};
use qsphere::ncpoly::{NCPoly, Word, DEFAULT_STEP_LIMIT};

fn pres(name: &str) -> &'static Presentation {
    static CELLS: OnceLock<Vec<(String, Presentation)>> = OnceLock::new();
    let all = CELLS.get_or_init(|| {
        ["s7q", "sigma4q", "sigma4q-loc", "classical-s7", "classical-s4"]
            .iter()
            .map(|n| (n.to_string(), build(n, DEFAULT_STEP_LIMIT).unwrap()))
            .collect()
    });
    &all.iter().find(|(n, _)| n == name).unwrap().1
}

fn uq4() -> &'static Uq4 {
    static U: OnceLock<Uq4> = OnceLock::new();
    U.get_or_init(|| Uq4::build(DEFAULT_STEP_LIMIT).unwrap())
}

/// Random element over the normal words of length at most `degree`.
fn element(name: &'static str, degree: usize) -> impl Strategy<Value = NCPoly> {
    let basis = common::words(pres(name), degree);
    let n = basis.len();
    prop::collection::vec((0..n, -3i64..=3), 1..4).prop_map(move |ts| {
        let mut p = NCPoly::zero();
        for (i, c) in ts {
            p.add_term(basis[i].clone(), RatFn::constant(int(c)));
        }
        p
    })
}

fn sphere() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["s7q", "sigma4q"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn nf_is_idempotent((name, x, y) in sphere().prop_flat_map(|n| (Just(n), element(n, 2), element(n, 2)))) {
        let p = pres(name);
        let n1 = p.nf(&x.concat(&y)).unwrap();
        prop_assert_eq!(p.nf(&n1).unwrap(), n1);
    }

    #[test]
    fn multiplication_is_associative(
        (name, x, y, z) in sphere().prop_flat_map(|n| (Just(n), element(n, 2), element(n, 2), element(n, 1)))
    ) {
        let p = pres(name);
        let l = p.mul(&p.mul(&x, &y).unwrap(), &z).unwrap();
        let r = p.mul(&x, &p.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn star_is_an_involutive_antihomomorphism(
        (name, x, y) in sphere().prop_flat_map(|n| (Just(n), element(n, 2), element(n, 2)))
    ) {
        let p = pres(name);
        prop_assert_eq!(p.star(&p.star(&x).unwrap()).unwrap(), p.nf(&x).unwrap());
        let lhs = p.star(&p.mul(&x, &y).unwrap()).unwrap();
        let rhs = p.mul(&p.star(&y).unwrap(), &p.star(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn localized_sphere_is_associative(x in element("sigma4q-loc", 2), y in element("sigma4q-loc", 1), z in element("sigma4q-loc", 1)) {
        let p = pres("sigma4q-loc");
        let l = p.mul(&p.mul(&x, &y).unwrap(), &z).unwrap();
        let r = p.mul(&x, &p.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn uq4_star_on_generator_products(i in 0usize..4, j in 0usize..4, k in 0usize..4, l in 0usize..4) {
        let u = uq4();
        let p = &u.pres;
        let (x, y) = (u.t(i, j), u.t(k, l));
        prop_assert_eq!(p.star(&p.star(&x).unwrap()).unwrap(), p.nf(&x).unwrap());
        let lhs = p.star(&p.mul(&x, &y).unwrap()).unwrap();
        let rhs = p.mul(&p.star(&y).unwrap(), &p.star(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn rules_respect_the_order() {
    let u = uq4();
    for p in ["s7q", "sigma4q", "sigma4q-loc", "classical-s7", "classical-s4"].map(pres).into_iter().chain([&u.pres]) {
        for r in p.system.rules() {
            if let Some((w, _)) = r.rhs.leading() {
                assert!(*w < r.lhs, "{}: {:?} -> {:?}", p.name, r.lhs, w);
            }
        }
    }
}

#[test]
fn basis_dimensions_match_classical_counts() {
    for (quantum, classical) in [("s7q", "classical-s7"), ("sigma4q", "classical-s4")] {
        for d in 0..=5 {
            let a = pres(quantum).system.irreducible_words(d).len();
            let b = pres(classical).system.irreducible_words(d).len();
            assert_eq!(a, b, "{quantum} vs {classical} at degree {d}");
        }
    }
    // commutative polynomials in 8 variables modulo one quadric, and in 5 modulo b b* = ...
    let binom = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
    for d in 0..=5 {
        let s7 = binom(d + 7, 7) - if d >= 2 { binom(d + 5, 7) } else { 0 };
        assert_eq!(pres("s7q").system.irreducible_words(d).len(), s7, "s7q degree {d}");
    }
}

#[test]
fn determinant_is_central() {
    let u = uq4();
    let d = NCPoly::letter(u.d);
    for i in 0..4 {
        for j in 0..4 {
            let c = u.pres.commutator(&d, &u.t(i, j)).unwrap();
            assert!(c.is_zero(), "[D, t{}{}]", i + 1, j + 1);
        }
    }
}

#[test]
fn unitarity() {
    let u = uq4();
    let p = &u.pres;
    let star = |i: usize, j: usize| p.star(&u.t(i, j)).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let want = if i == j { NCPoly::one() } else { NCPoly::zero() };
            let mut rows = NCPoly::zero();
            let mut cols = NCPoly::zero();
            for k in 0..4 {
                rows = &rows + &p.mul(&u.t(i, k), &star(j, k)).unwrap();
                cols = &cols + &p.mul(&star(k, i), &u.t(k, j)).unwrap();
            }
            assert_eq!(rows, want, "row identity {i}{j}");
            assert_eq!(cols, want, "column identity {i}{j}");
        }
    }
}

#[test]
fn words_are_deglex_ordered() {
    let p = pres("sigma4q");
    let ws: Vec<Word> = common::words(p, 3);
    assert!(ws.windows(2).all(|w| w[0] < w[1]));
}
