//! Concrete presentations: U_q(4), the odd sphere S^7_q, the 4-sphere and
//! its localization at R, plus their commutative q = 1 counterparts.

mod spheres;
mod uq4;

use std::collections::BTreeMap;

use crate::coeff::{Rational, Scalar};
use crate::ncpoly::{parse_poly, CompletionLog, Generator, Letter, NCPoly, NcError, RewriteSystem, Word};

pub use spheres::{
    build_classical_s4, build_classical_s7, build_s7q, build_sigma4q, build_sigma4q_localized,
    sigma4q_relations, sigma4q_seed, verify_embedding, zeta_residuals, EmbeddingCheck, SIGMA4Q_RELATIONS,
    ZETA_RELATIONS,
};
pub use uq4::{Uq4, UQ4_LETTERS};

/// Rule budget for completion of the built-in presentations.
pub const MAX_RULES: usize = 400;

/// Reduction modulo a central element `c` by division on leading words.
///
/// Normal words are ordered products of generators, so the multiples of
/// the leading word of `c` are the words containing it as a sub-multiset.
/// Each division step checks that the leading word of `m c` is the
/// multiset union, which makes the remainder unique.
#[derive(Debug, Clone)]
pub struct CentralReducer {
    elem: NCPoly,
    lead: Word,
}

impl CentralReducer {
    pub fn new(elem: NCPoly) -> Self {
        let lead = elem.leading().expect("nonzero central element").0.clone();
        CentralReducer { elem, lead }
    }

    pub fn element(&self) -> &NCPoly {
        &self.elem
    }

    fn cofactor(&self, w: &Word) -> Option<Word> {
        let mut rest: Vec<Letter> = w.letters().to_vec();
        for x in self.lead.letters() {
            let i = rest.iter().position(|y| y == x)?;
            rest.remove(i);
        }
        Some(Word::from(rest))
    }

    pub fn reduce(&self, sys: &RewriteSystem, p: &NCPoly) -> Result<NCPoly, NcError> {
        let mut p = p.clone();
        loop {
            let hit = p.terms().rev().find_map(|(w, c)| self.cofactor(w).map(|m| (w.clone(), c.clone(), m)));
            let Some((w, c, m)) = hit else { return Ok(p) };
            let prod = sys.nf(&NCPoly::word(m).concat(&self.elem))?;
            let (lw, kappa) = prod.leading().expect("nonzero product");
            assert_eq!(*lw, w, "leading word of a central multiple is not the multiset union");
            let f = -c.div(kappa)?;
            p.add_scaled(&prod, &f);
        }
    }
}

/// A named algebra: a completed rewriting system plus its star structure
/// and distinguished elements, all stored in normal form.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub name: String,
    pub system: RewriteSystem,
    star_images: Vec<NCPoly>,
    pub elements: BTreeMap<String, NCPoly>,
    pub relations: Vec<(String, NCPoly)>,
    pub central: Option<CentralReducer>,
    pub log: CompletionLog,
}

impl Presentation {
    pub fn new(name: &str, system: RewriteSystem, star_images: Vec<NCPoly>) -> Self {
        Presentation {
            name: name.to_string(),
            system,
            star_images,
            elements: BTreeMap::new(),
            relations: Vec::new(),
            central: None,
            log: CompletionLog::default(),
        }
    }

    /// Star images taken from the letter partners of the alphabet.
    pub fn letter_star(system: &RewriteSystem) -> Vec<NCPoly> {
        system.alphabet().iter().map(|g| NCPoly::letter(g.star)).collect()
    }

    pub fn names(&self) -> &[String] {
        self.system.names()
    }

    pub fn gen(&self, name: &str) -> NCPoly {
        self.system.gen(name)
    }

    pub fn letter(&self, name: &str) -> Result<Letter, NcError> {
        self.system.letter(name)
    }

    /// A generator or a distinguished element.
    pub fn get(&self, name: &str) -> NCPoly {
        self.elements.get(name).cloned().unwrap_or_else(|| self.gen(name))
    }

    pub fn parse(&self, text: &str) -> Result<NCPoly, NcError> {
        self.nf(&parse_poly(text, self.names())?)
    }

    pub fn nf(&self, p: &NCPoly) -> Result<NCPoly, NcError> {
        let r = self.system.nf(p)?;
        match &self.central {
            Some(c) => c.reduce(&self.system, &r),
            None => Ok(r),
        }
    }

    pub fn mul(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, NcError> {
        self.nf(&a.concat(b))
    }

    pub fn product(&self, factors: &[&NCPoly]) -> Result<NCPoly, NcError> {
        let mut acc = NCPoly::one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, x: &NCPoly, n: usize) -> Result<NCPoly, NcError> {
        let mut acc = NCPoly::one();
        for _ in 0..n {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// `x y - y x`
    pub fn commutator(&self, x: &NCPoly, y: &NCPoly) -> Result<NCPoly, NcError> {
        Ok(&self.mul(x, y)? - &self.mul(y, x)?)
    }

    pub fn star_image(&self, x: Letter) -> &NCPoly {
        &self.star_images[x as usize]
    }

    /// Antilinear antihomomorphism determined by the generator images.
    pub fn star(&self, p: &NCPoly) -> Result<NCPoly, NcError> {
        let letterwise = self.star_images.iter().all(|s| s.len() == 1 && s.leading().unwrap().1.is_one());
        if letterwise {
            return self.nf(&p.star_letters(|x| self.star_images[x as usize].leading().unwrap().0.letters()[0]));
        }
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            let mut acc = NCPoly::one();
            for &x in w.letters().iter().rev() {
                acc = self.mul(&acc, &self.star_images[x as usize])?;
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// Algebra map into `target` given images of the generators.
    pub fn substitute(&self, p: &NCPoly, images: &[NCPoly], target: &Presentation) -> Result<NCPoly, NcError> {
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            let mut acc = NCPoly::one();
            for &x in w.letters() {
                acc = target.mul(&acc, &images[x as usize])?;
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// Residuals of the stored defining relations (all zero when consistent).
    pub fn relation_residuals(&self) -> Result<Vec<(String, NCPoly)>, NcError> {
        self.relations.iter().map(|(n, p)| Ok((n.clone(), self.nf(p)?))).collect()
    }

    pub fn render(&self, p: &NCPoly) -> String {
        self.system.render(p)
    }
}

/// Specializes every coefficient at `q = q0`.
pub fn specialize(p: &NCPoly, q0: &Rational) -> Result<NCPoly, NcError> {
    let mut out = NCPoly::zero();
    for (w, c) in p.terms() {
        out.add_term(w.clone(), Scalar::from(c.eval_at(q0)?));
    }
    Ok(out)
}

pub(crate) fn alphabet(names: &[&str], stars: &[(&str, &str)]) -> Vec<Generator> {
    let mut g: Vec<Generator> =
        names.iter().enumerate().map(|(i, n)| Generator { name: n.to_string(), star: i as Letter }).collect();
    for (a, b) in stars {
        let i = names.iter().position(|n| n == a).expect("star name") as Letter;
        let j = names.iter().position(|n| n == b).expect("star name") as Letter;
        g[i as usize].star = j;
        g[j as usize].star = i;
    }
    g
}

/// Names accepted by [`build`].
pub const REGISTRY: [&str; 6] = ["uq4", "s7q", "sigma4q", "sigma4q-loc", "classical-s7", "classical-s4"];

/// Builds a presentation by registry name.
pub fn build(name: &str, step_limit: usize) -> Result<Presentation, NcError> {
    match name {
        "uq4" => Ok(Uq4::build(step_limit)?.pres),
        "s7q" => build_s7q(step_limit),
        "sigma4q" => build_sigma4q(step_limit),
        "sigma4q-loc" => build_sigma4q_localized(step_limit),
        "classical-s7" => build_classical_s7(step_limit),
        "classical-s4" => build_classical_s4(step_limit),
        other => Err(NcError::UnknownGenerator(format!("presentation {other}"))),
    }
}
