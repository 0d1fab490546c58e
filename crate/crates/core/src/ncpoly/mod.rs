//! Noncommutative polynomials over [`Scalar`] and the rewriting kernel.
//!
//! Letters are small integers; a letter's id is also its precedence rank,
//! so the derived `Ord` on ids is the generator order. Words compare
//! degree-lexicographically.

mod rewrite;
mod tensor;
mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

use crate::coeff::{CoeffError, Scalar};

pub use rewrite::{Ambiguity, CompletionLog, Generator, RewriteRule, RewriteSystem, DEFAULT_STEP_LIMIT};
pub use tensor::Tensor;
pub use text::{parse_poly, parse_presentation, PresentationText};

pub type Letter = u16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NcError {
    #[error("rewriting exceeded the step limit of {0}")]
    StepLimitExceeded(usize),
    #[error("completion diverged: more than {max_rules} rules ({pending} obstructions pending)")]
    CompletionDiverged { max_rules: usize, pending: usize },
    #[error("rule {lhs} -> ... has right-hand word {word} that is not smaller")]
    RuleOrder { lhs: String, word: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// A finite sequence of letters; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[Letter; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_slice(l: &[Letter]) -> Self {
        Word(SmallVec::from_slice(l))
    }

    pub fn letter(x: Letter) -> Self {
        Self::from_slice(&[x])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn concat3(a: &[Letter], b: &[Letter], c: &[Letter]) -> Word {
        let mut v: SmallVec<[Letter; 8]> = SmallVec::with_capacity(a.len() + b.len() + c.len());
        v.extend_from_slice(a);
        v.extend_from_slice(b);
        v.extend_from_slice(c);
        Word(v)
    }

    pub fn reversed_mapped(&self, f: impl Fn(Letter) -> Letter) -> Word {
        Word(self.0.iter().rev().map(|&x| f(x)).collect())
    }

    /// Position of the first occurrence of `sub` inside `self`.
    pub fn find(&self, sub: &[Letter]) -> Option<usize> {
        if sub.is_empty() {
            return Some(0);
        }
        self.0.windows(sub.len()).position(|w| w == sub)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(SmallVec::from_vec(v))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Linear combination of words. Terms are kept in increasing word order,
/// so the leading term is the last entry.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Scalar::one())
    }

    pub fn letter(x: Letter) -> Self {
        Self::word(Word::letter(x))
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(it: I) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in it {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NCPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (w, d) in &other.terms {
            self.add_term(w.clone(), if unit { d.clone() } else { d * c });
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<usize> {
        self.leading().map(|(w, _)| w.len())
    }

    /// The scalar value if this polynomial is a constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_scaled(self, c);
        p
    }

    /// Free (concatenation) product, no rewriting.
    pub fn concat(&self, other: &NCPoly) -> NCPoly {
        let mut p = NCPoly::zero();
        for (u, c) in &self.terms {
            for (v, d) in &other.terms {
                p.add_term(u.concat(v), c * d);
            }
        }
        p
    }

    /// Applies a coefficient map, dropping terms that become zero.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    /// Letter-level star: reverses words and maps each letter to its
    /// partner. Coefficients are fixed since `q` is real.
    pub fn star_letters(&self, partner: impl Fn(Letter) -> Letter) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| (w.reversed_mapped(&partner), c.clone())))
    }

    /// Renders with generator names, leading term first.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.as_laurent().is_some_and(|l| l.terms().len() == 1 && l.terms()[0].1 < num_traits::Zero::zero());
            let mag = if neg { -c } else { c.clone() };
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let word: Vec<&str> = w.letters().iter().map(|&x| names[x as usize].as_str()).collect();
            let cs = mag.to_string();
            let cs = if mag.numer().terms().len() > 1 && mag.is_laurent() { format!("({cs})") } else { cs };
            match (mag.is_one(), word.is_empty()) {
                (true, true) => out.push('1'),
                (true, false) => out.push_str(&word.join(" ")),
                (false, true) => out.push_str(&cs),
                (false, false) => {
                    out.push_str(&cs);
                    out.push(' ');
                    out.push_str(&word.join(" "));
                }
            }
        }
        out
    }
}

impl std::ops::Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut p = self.clone();
        p.add_scaled(rhs, &Scalar::one());
        p
    }
}

impl std::ops::Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut p = self.clone();
        p.add_scaled(rhs, &-Scalar::one());
        p
    }
}

impl std::ops::Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&-Scalar::one())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}
