use std::sync::OnceLock;

use proptest::prelude::*;
use qsphere::bundle::{check_cotensor, pairing, sections, Section};
use qsphere::coeff::{int, rat, RatFn};
use qsphere::ncpoly::{NCPoly, Word, DEFAULT_STEP_LIMIT};
use qsphere::poisson::bracket::BracketTable;
use qsphere::poisson::lie::{self, LieElement};
use qsphere::poisson::poly::{CPoly, NVARS};
use qsphere::poisson as pois;
use qsphere::quotient::Coaction;

fn coaction() -> &'static Coaction {
    static C: OnceLock<Coaction> = OnceLock::new();
    C.get_or_init(|| Coaction::build(DEFAULT_STEP_LIMIT).unwrap())
}

fn table() -> &'static BracketTable {
    static T: OnceLock<BracketTable> = OnceLock::new();
    T.get_or_init(|| pois::derive_brackets(DEFAULT_STEP_LIMIT).unwrap().1.expect("single sign").0)
}

fn coinvariants() -> &'static [(String, NCPoly)] {
    static B: OnceLock<Vec<(String, NCPoly)>> = OnceLock::new();
    B.get_or_init(|| coaction().coinvariant_slice(2, &rat(2, 7)).unwrap().basis)
}

fn combination(items: Vec<NCPoly>) -> impl Strategy<Value = NCPoly> {
    prop::collection::vec(-2i64..=2, items.len()).prop_map(move |cs| {
        let mut p = NCPoly::zero();
        for (x, c) in items.iter().zip(cs) {
            p.add_scaled(x, &RatFn::constant(int(c)));
        }
        p
    })
}

fn uq_word() -> impl Strategy<Value = Word> {
    let n = coaction().quot.uq.pres.names().len() as u16;
    prop::collection::vec(0..n, 0..=4).prop_map(|l| Word::from_slice(&l))
}

fn cpoly() -> impl Strategy<Value = CPoly> {
    let mono = prop::collection::vec(0..NVARS, 1..=2)
        .prop_map(|vs| vs.iter().fold(CPoly::one(), |acc, &v| &acc * &CPoly::var(v)));
    prop::collection::vec((mono, -3i64..=3), 1..3).prop_map(|ts| {
        ts.into_iter().fold(CPoly::zero(), |acc, (m, c)| &acc + &m.scale(&int(c)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn coideal_absorbs_on_the_right(k in 0usize..13, u in uq_word()) {
        let q = &coaction().quot;
        let rho = &q.coideal_span()[k].1;
        prop_assert!(q.reduce(&rho.concat(&NCPoly::word(u))).unwrap().is_zero());
    }

    #[test]
    fn reduction_is_idempotent_and_linear(u in uq_word(), v in uq_word(), c in -3i64..=3) {
        let q = &coaction().quot;
        let (x, y) = (NCPoly::word(u), NCPoly::word(v));
        let rx = q.reduce(&x).unwrap();
        prop_assert_eq!(q.reduce(&rx).unwrap(), rx.clone());
        let mut sum = x.clone();
        sum.add_scaled(&y, &RatFn::constant(int(c)));
        let mut want = rx;
        want.add_scaled(&q.reduce(&y).unwrap(), &RatFn::constant(int(c)));
        prop_assert_eq!(q.reduce(&sum).unwrap(), want);
    }

    #[test]
    fn coinvariants_form_a_subalgebra(
        x in combination(coinvariants().iter().map(|(_, p)| p.clone()).collect()),
        y in combination(coinvariants().iter().map(|(_, p)| p.clone()).collect()),
    ) {
        let co = coaction();
        prop_assert!(co.is_coinvariant(&co.s7.mul(&x, &y).unwrap()).unwrap());
    }

    #[test]
    fn pairings_of_combined_sections_are_coinvariant(cs in prop::collection::vec(-2i64..=2, 4), ds in prop::collection::vec(-2i64..=2, 4)) {
        let co = coaction();
        let fs = sections(&co.s7).unwrap();
        let comb = |w: &[i64]| {
            let (mut a, mut b) = (NCPoly::zero(), NCPoly::zero());
            for (f, &c) in fs.iter().zip(w) {
                a.add_scaled(&f.0, &RatFn::constant(int(c)));
                b.add_scaled(&f.1, &RatFn::constant(int(c)));
            }
            Section(a, b)
        };
        let p = pairing(&co.s7, &comb(&cs), &comb(&ds)).unwrap();
        prop_assert!(co.is_coinvariant(&p).unwrap());
    }

    #[test]
    fn bracket_is_antisymmetric(f in cpoly(), g in cpoly()) {
        let t = table();
        prop_assert_eq!(t.bracket(&f, &g), -&t.bracket(&g, &f));
    }

    #[test]
    fn bracket_is_a_derivation(f in cpoly(), g in cpoly(), h in cpoly()) {
        let t = table();
        let lhs = t.bracket(&f, &(&g * &h));
        let rhs = &(&t.bracket(&f, &g) * &h) + &(&g * &t.bracket(&f, &h));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coisotropy_ignores_the_spanning_set(which in 0usize..3, i in 0usize..16, j in 0usize..16, c in -3i64..=3, s in 1i64..=3) {
        let span = match which {
            0 => lie::su2_diagonal(),
            1 => lie::su2_conjugated(),
            _ => lie::generated_subalgebra(&lie::u3_generators()),
        };
        let (i, j) = (i % span.len(), j % span.len());
        prop_assume!(i != j);
        let mut other: Vec<LieElement> = span.clone();
        other[i] = span[i].add(&span[j].scale(&rat(c, 1))).scale(&rat(s, 1));
        other.rotate_left(1);
        let co = lie::Cocycle::standard();
        prop_assert_eq!(co.is_coisotropic(&other), co.is_coisotropic(&span));
    }
}

#[test]
fn all_section_pairings_are_coinvariant() {
    let co = coaction();
    let fs = sections(&co.s7).unwrap();
    for (i, f) in fs.iter().enumerate() {
        assert!(check_cotensor(co, f).unwrap(), "section {i}");
        for (j, h) in fs.iter().enumerate() {
            assert!(co.is_coinvariant(&pairing(&co.s7, f, h).unwrap()).unwrap(), "pairing {i}{j}");
        }
    }
}
