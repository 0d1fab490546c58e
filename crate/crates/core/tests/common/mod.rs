#![allow(dead_code)]

use qsphere::algebras::Presentation;
use qsphere::coeff::{int, RatFn};
use qsphere::ncpoly::{NCPoly, Word};
use rand::Rng;

/// Normal words of length at most `degree`.
pub fn words(p: &Presentation, degree: usize) -> Vec<Word> {
    (0..=degree).flat_map(|k| p.system.irreducible_words(k)).collect()
}

/// Sum of up to three random normal words with small integer coefficients.
pub fn random_element<R: Rng>(rng: &mut R, basis: &[Word]) -> NCPoly {
    let mut p = NCPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let w = basis[rng.gen_range(0..basis.len())].clone();
        let c = rng.gen_range(-3i64..=3);
        p.add_term(w, RatFn::constant(int(c)));
    }
    p
}
