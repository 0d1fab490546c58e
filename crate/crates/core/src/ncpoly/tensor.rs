use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::{NCPoly, NcError, Word};
use crate::coeff::Scalar;

/// Element of a tensor power: linear combination of word tuples.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Tensor {
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl Tensor {
    pub fn zero() -> Self {
        Tensor::default()
    }

    /// `1 ⊗ ... ⊗ 1` with `legs` factors.
    pub fn unit(legs: usize) -> Self {
        let mut t = Tensor::zero();
        t.add_term(vec![Word::empty(); legs], Scalar::one());
        t
    }

    pub fn simple(legs: &[&NCPoly]) -> Self {
        let mut t = Tensor::unit(0);
        for p in legs {
            t = t.outer(&Tensor::from_poly(p));
        }
        t
    }

    pub fn from_poly(p: &NCPoly) -> Self {
        let mut t = Tensor::zero();
        for (w, c) in p.terms() {
            t.add_term(vec![w.clone()], c.clone());
        }
        t
    }

    pub fn add_term(&mut self, legs: Vec<Word>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(legs) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &Scalar) {
        for (l, d) in &other.terms {
            self.add_term(l.clone(), d * c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        let mut t = Tensor::zero();
        t.add_scaled(self, c);
        t
    }

    /// `self ⊗ other`
    pub fn outer(&self, other: &Tensor) -> Tensor {
        let mut t = Tensor::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                t.add_term([a.clone(), b.clone()].concat(), c * d);
            }
        }
        t
    }

    /// Replaces leg `i` of every term by the image polynomial `f(word)`.
    pub fn map_leg(
        &self,
        i: usize,
        mut f: impl FnMut(&Word) -> Result<NCPoly, NcError>,
    ) -> Result<Tensor, NcError> {
        let mut t = Tensor::zero();
        for (legs, c) in &self.terms {
            let img = f(&legs[i])?;
            for (w, d) in img.terms() {
                let mut l = legs.clone();
                l[i] = w.clone();
                t.add_term(l, c * d);
            }
        }
        Ok(t)
    }

    /// Replaces leg `i` by a tensor of several legs.
    pub fn expand_leg(
        &self,
        i: usize,
        mut f: impl FnMut(&Word) -> Result<Tensor, NcError>,
    ) -> Result<Tensor, NcError> {
        let mut t = Tensor::zero();
        for (legs, c) in &self.terms {
            let img = f(&legs[i])?;
            for (ws, d) in img.terms() {
                let l = [&legs[..i], ws.as_slice(), &legs[i + 1..]].concat();
                t.add_term(l, c * d);
            }
        }
        Ok(t)
    }

    /// Contracts leg `i` with a scalar functional.
    pub fn contract_leg(
        &self,
        i: usize,
        mut f: impl FnMut(&Word) -> Result<Scalar, NcError>,
    ) -> Result<Tensor, NcError> {
        let mut t = Tensor::zero();
        for (legs, c) in &self.terms {
            let s = f(&legs[i])?;
            let mut l = legs.clone();
            l.remove(i);
            t.add_term(l, c * &s);
        }
        Ok(t)
    }

    /// Legwise product `(a1⊗a2)(b1⊗b2) = a1b1 ⊗ a2b2`, each leg reduced by `nf[i]`.
    pub fn mul_legwise(
        &self,
        other: &Tensor,
        nf: &[&dyn Fn(&NCPoly) -> Result<NCPoly, NcError>],
    ) -> Result<Tensor, NcError> {
        let mut raw = Tensor::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let l: Vec<Word> = a.iter().zip(b).map(|(x, y)| x.concat(y)).collect();
                raw.add_term(l, c * d);
            }
        }
        raw.normalize(nf)
    }

    /// Applies a normal form to every leg.
    pub fn normalize(&self, nf: &[&dyn Fn(&NCPoly) -> Result<NCPoly, NcError>]) -> Result<Tensor, NcError> {
        let mut t = self.clone();
        for (i, f) in nf.iter().enumerate() {
            t = t.map_leg(i, |w| f(&NCPoly::word(w.clone())))?;
        }
        Ok(t)
    }
}
