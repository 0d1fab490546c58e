//! The coisotropic quotient of U_q(4) by the right ideal `𝓡 = R·U_q(4)`,
//! the induced coaction on S^7_q and its coinvariants.
//!
//! Class representatives are polynomials in the upper-left block letters
//! `t11, t12, t21, t22`, reduced modulo the 2x2 determinant relation.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use thiserror::Error;

use crate::algebras::{build_s7q, build_sigma4q, CentralReducer, Presentation, Uq4};
use crate::coeff::{Rational, Scalar};
use crate::linalg::{kernel, rank, SparseVec};
use crate::ncpoly::{Letter, NCPoly, NcError, Tensor, Word};

/// Largest degree accepted by the slice solvers.
pub const DEGREE_BOUND: usize = 4;

#[derive(Debug, Error)]
pub enum QuotientError {
    #[error("quotient reduction exceeded {steps} steps (last word {trace})")]
    ReductionDiverged { steps: usize, trace: String },
    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeBoundExceeded { degree: usize, bound: usize },
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Coeff(#[from] crate::coeff::CoeffError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    /// `D` or `Dinv`: `D - 1 ∈ 𝓡`.
    Unit,
    /// Off-diagonal block letter.
    Killed,
    /// Lower-right block letter, replaced by `sign * letter`.
    Swap(Letter, i64),
    /// Upper-left block letter.
    Block,
}

#[derive(Debug)]
pub struct Quotient {
    pub uq: Uq4,
    kinds: Vec<Kind>,
    det2: CentralReducer,
    coideal: Vec<(String, NCPoly)>,
    step_limit: usize,
}

impl Quotient {
    pub fn build(step_limit: usize) -> Result<Self, QuotientError> {
        Ok(Self::new(Uq4::build(step_limit)?, step_limit)?)
    }

    pub fn new(uq: Uq4, step_limit: usize) -> Result<Self, NcError> {
        let t = |i: usize, j: usize| uq.t_letter(i - 1, j - 1);
        let mut kinds = vec![Kind::Killed; uq.pres.names().len()];
        kinds[uq.d as usize] = Kind::Unit;
        kinds[uq.dinv as usize] = Kind::Unit;
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            kinds[t(i, j) as usize] = Kind::Block;
        }
        kinds[t(4, 4) as usize] = Kind::Swap(t(1, 1), 1);
        kinds[t(4, 3) as usize] = Kind::Swap(t(1, 2), -1);
        kinds[t(3, 4) as usize] = Kind::Swap(t(2, 1), -1);
        kinds[t(3, 3) as usize] = Kind::Swap(t(2, 2), 1);
        let p = |s: &str| uq.pres.system.nf(&crate::ncpoly::parse_poly(s, uq.pres.names())?);
        let det2 = CentralReducer::new(p("t11 t22 - q t12 t21 - 1")?);
        let mut coideal = Vec::new();
        for s in [
            "t13", "t31", "t14", "t41", "t24", "t42", "t23", "t32", "t11 - t44", "t12 + t43", "t21 + t34", "t22 - t33",
            "t11 t22 - q t12 t21 - 1",
        ] {
            coideal.push((s.to_string(), p(s)?));
        }
        Ok(Quotient { uq, kinds, det2, coideal, step_limit })
    }

    /// The 13 spanning elements of the coideal, in normal form.
    pub fn coideal_span(&self) -> &[(String, NCPoly)] {
        &self.coideal
    }

    pub fn pres(&self) -> &Presentation {
        &self.uq.pres
    }

    /// Class of `x` modulo the right ideal.
    pub fn reduce(&self, x: &NCPoly) -> Result<NCPoly, QuotientError> {
        let sys = &self.uq.pres.system;
        let mut work = sys.nf(x)?;
        let mut out = NCPoly::zero();
        let mut steps = 0;
        while let Some((w, c)) = work.leading().map(|(w, c)| (w.clone(), c.clone())) {
            work.add_term(w.clone(), -&c);
            steps += 1;
            if steps > self.step_limit {
                return Err(QuotientError::ReductionDiverged { steps, trace: sys.render(&NCPoly::word(w)) });
            }
            let Some((&x, rest)) = w.letters().split_first() else {
                out.add_term(w, c);
                continue;
            };
            match self.kinds[x as usize] {
                Kind::Unit => work.add_term(Word::from_slice(rest), c),
                Kind::Killed => {}
                Kind::Block => out.add_term(w, c),
                Kind::Swap(y, sign) => {
                    let p = sys.nf_word(&Word::concat3(&[y], rest, &[]))?;
                    work.add_scaled(&p, &c.scale(&crate::coeff::int(sign)));
                }
            }
        }
        Ok(self.det2.reduce(sys, &out)?)
    }

    /// Product of class representatives inside the 2x2 block.
    pub fn class_mul(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, QuotientError> {
        let sys = &self.uq.pres.system;
        Ok(self.det2.reduce(sys, &sys.mul(a, b)?)?)
    }

    pub fn counit(&self, class: &NCPoly) -> Scalar {
        self.uq.counit(class)
    }

    /// `(r ⊗ r) Δ` on a representative.
    pub fn coproduct(&self, x: &NCPoly) -> Result<Tensor, QuotientError> {
        self.reduce_legs(&self.uq.coproduct(x)?)
    }

    pub fn tau(&self, class: &NCPoly) -> Result<NCPoly, QuotientError> {
        self.reduce(&self.uq.tau(class)?)
    }

    /// Applies the projection to every leg of a tensor over U_q(4).
    pub fn reduce_legs(&self, t: &Tensor) -> Result<Tensor, QuotientError> {
        let legs = t.terms().next().map_or(0, |(l, _)| l.len());
        let mut t = t.clone();
        for i in 0..legs {
            t = t.map_leg(i, |w| self.reduce(&NCPoly::word(w.clone())).map_err(nc_of))?;
        }
        Ok(t)
    }

    /// Runs the coideal checks on every spanning element.
    pub fn check_coideal(&self, absorb_degree: usize) -> Result<Vec<CoidealCheck>, QuotientError> {
        let words = all_words(self.uq.pres.names().len(), absorb_degree);
        let mut out = Vec::new();
        for (name, rho) in &self.coideal {
            let reduces = self.reduce(rho)?.is_zero();
            let tau_invariant = self.reduce(&self.uq.tau(rho)?)?.is_zero();
            let coideal = self.coproduct(rho)?.is_zero();
            let mut failures = Vec::new();
            for u in &words {
                let p = rho.concat(&NCPoly::word(u.clone()));
                if !self.reduce(&p)?.is_zero() {
                    failures.push(self.uq.pres.render(&NCPoly::word(u.clone())));
                }
            }
            out.push(CoidealCheck {
                element: name.clone(),
                reduces,
                tau_invariant,
                coideal,
                absorbed: words.len(),
                absorb_failures: failures,
            });
        }
        Ok(out)
    }
}

fn nc_of(e: QuotientError) -> NcError {
    match e {
        QuotientError::Nc(e) => e,
        other => NcError::Parse(other.to_string()),
    }
}

/// All words of length `<= d` over `n` letters.
pub fn all_words(n: usize, d: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..d {
        let next: Vec<Word> =
            layer.iter().flat_map(|w| (0..n as Letter).map(move |x| Word::concat3(w.letters(), &[x], &[]))).collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[derive(Debug, Clone)]
pub struct CoidealCheck {
    pub element: String,
    /// `r(ρ) = 0`
    pub reduces: bool,
    /// `r(τ(ρ)) = 0`
    pub tau_invariant: bool,
    /// `(r ⊗ r) Δ(ρ) = 0`
    pub coideal: bool,
    /// Number of words `u` with `r(ρ u)` tested.
    pub absorbed: usize,
    pub absorb_failures: Vec<String>,
}

impl CoidealCheck {
    pub fn passed(&self) -> bool {
        self.reduces && self.tau_invariant && self.coideal && self.absorb_failures.is_empty()
    }
}

/// The coaction `Δ z_i = Σ_j z_j ⊗ t_ji` and its projection to the quotient.
#[derive(Debug)]
pub struct Coaction {
    pub s7: Presentation,
    pub quot: Quotient,
    /// For each S^7_q letter: `(z_j letter, image in U_q(4))` pairs.
    images: Vec<Vec<(Letter, NCPoly)>>,
    word_cache: Mutex<HashMap<Word, Tensor>>,
    step_cache: Mutex<HashMap<(Word, Letter, usize), NCPoly>>,
}

impl Coaction {
    pub fn build(step_limit: usize) -> Result<Self, QuotientError> {
        Self::new(build_s7q(step_limit)?, Quotient::build(step_limit)?)
    }

    pub fn new(s7: Presentation, quot: Quotient) -> Result<Self, QuotientError> {
        let mut images = Vec::new();
        for name in s7.names() {
            let starred = name.ends_with('*');
            let i: usize = name[1..2].parse::<usize>().expect("z letter") - 1;
            let mut row = Vec::new();
            for j in 0..4 {
                let zj = s7.letter(&format!("z{}{}", j + 1, if starred { "*" } else { "" }))?;
                let img = if starred { quot.uq.antipode_gen(i, j)? } else { quot.uq.t(j, i) };
                row.push((zj, img));
            }
            images.push(row);
        }
        Ok(Coaction { s7, quot, images, word_cache: Mutex::new(HashMap::new()), step_cache: Mutex::new(HashMap::new()) })
    }

    /// Full coaction into `S^7_q ⊗ U_q(4)`.
    pub fn coact(&self, x: &NCPoly) -> Result<Tensor, QuotientError> {
        let uq = &self.quot.uq.pres;
        let nf_l = |p: &NCPoly| self.s7.nf(p);
        let nf_r = |p: &NCPoly| uq.nf(p);
        let mut out = Tensor::zero();
        for (w, c) in self.s7.nf(x)?.terms() {
            let mut acc = Tensor::unit(2);
            for &x in w.letters() {
                let mut img = Tensor::zero();
                for (zj, t) in &self.images[x as usize] {
                    img.add_scaled(&Tensor::simple(&[&NCPoly::letter(*zj), t]), &Scalar::one());
                }
                acc = acc.mul_legwise(&img, &[&nf_l, &nf_r])?;
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// `(id ⊗ r) Δ`, computed letter by letter using that `r` is a map of
    /// right U_q(4)-modules.
    pub fn coact_r(&self, x: &NCPoly) -> Result<Tensor, QuotientError> {
        let mut out = Tensor::zero();
        for (w, c) in self.s7.nf(x)?.terms() {
            out.add_scaled(&self.coact_r_word(w)?, c);
        }
        Ok(out)
    }

    fn coact_r_word(&self, w: &Word) -> Result<Tensor, QuotientError> {
        if w.is_empty() {
            return Ok(Tensor::unit(2));
        }
        if let Some(t) = self.word_cache.lock().unwrap().get(w) {
            return Ok(t.clone());
        }
        let (&x, prefix) = w.letters().split_last().unwrap();
        let head = self.coact_r_word(&Word::from_slice(prefix))?;
        let mut out = Tensor::zero();
        for (legs, c) in head.terms() {
            for (j, (zj, _)) in self.images[x as usize].iter().enumerate() {
                let right = self.right_step(&legs[1], x, j)?;
                if right.is_zero() {
                    continue;
                }
                let left = self.s7.system.nf_word(&Word::concat3(legs[0].letters(), &[*zj], &[]))?;
                for (lw, lc) in left.terms() {
                    for (rw, rc) in right.terms() {
                        out.add_term(vec![lw.clone(), rw.clone()], &(c * lc) * rc);
                    }
                }
            }
        }
        self.word_cache.lock().unwrap().insert(w.clone(), out.clone());
        Ok(out)
    }

    fn right_step(&self, rep: &Word, x: Letter, j: usize) -> Result<NCPoly, QuotientError> {
        let key = (rep.clone(), x, j);
        if let Some(p) = self.step_cache.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let p = self.quot.reduce(&NCPoly::word(rep.clone()).concat(&self.images[x as usize][j].1))?;
        self.step_cache.lock().unwrap().insert(key, p.clone());
        Ok(p)
    }

    pub fn is_coinvariant(&self, x: &NCPoly) -> Result<bool, QuotientError> {
        let x = self.s7.nf(x)?;
        let mut want = Tensor::zero();
        for (w, c) in x.terms() {
            want.add_term(vec![w.clone(), Word::empty()], c.clone());
        }
        Ok(self.coact_r(&x)? == want)
    }

    /// Equivariance defect `coact_r(x) - x ⊗ 1` evaluated at `q0`.
    fn defect_at(&self, w: &Word, q0: &Rational) -> Result<SparseVec<Vec<Word>, Rational>, QuotientError> {
        let mut v = SparseVec::new();
        for (legs, c) in self.coact_r_word(w)?.terms() {
            let e = c.eval_at(q0)?;
            if !num_traits::Zero::is_zero(&e) {
                v.insert(legs.clone(), e);
            }
        }
        let key = vec![w.clone(), Word::empty()];
        let e = v.remove(&key).unwrap_or_else(num_traits::Zero::zero) - crate::coeff::int(1);
        if !num_traits::Zero::is_zero(&e) {
            v.insert(key, e);
        }
        Ok(v)
    }

    /// Dimension of the coinvariants inside the span of normal words of
    /// length `<= d`, at a sample value of `q`.
    pub fn coinvariant_dimension(&self, d: usize, q0: &Rational) -> Result<usize, QuotientError> {
        if d > DEGREE_BOUND {
            return Err(QuotientError::DegreeBoundExceeded { degree: d, bound: DEGREE_BOUND });
        }
        let words: Vec<Word> = (0..=d).flat_map(|k| self.s7.system.irreducible_words(k)).collect();
        let defects = words.iter().map(|w| self.defect_at(w, q0)).collect::<Result<Vec<_>, _>>()?;
        Ok(kernel(&defects).len())
    }

    /// Coinvariants of length `<= d`: the images of the 4-sphere basis
    /// words of degree `<= d/2`, with the evidence that they span.
    pub fn coinvariant_slice(&self, d: usize, q0: &Rational) -> Result<CoinvariantSlice, QuotientError> {
        let dimension = self.coinvariant_dimension(d, q0)?;
        let s4 = build_sigma4q(self.s7.system.step_limit())?;
        let images: Vec<NCPoly> = s4.names().iter().map(|n| self.s7.get(n)).collect();
        let mut basis = Vec::new();
        for k in 0..=d / 2 {
            for w in s4.system.irreducible_words(k) {
                let p = s4.substitute(&NCPoly::word(w.clone()), &images, &self.s7)?;
                basis.push((s4.render(&NCPoly::word(w)), p));
            }
        }
        let mut all_coinvariant = true;
        for (_, p) in &basis {
            all_coinvariant &= self.is_coinvariant(p)?;
        }
        let vecs: Vec<SparseVec<Word, Rational>> = basis
            .iter()
            .map(|(_, p)| {
                p.terms()
                    .map(|(w, c)| Ok((w.clone(), c.eval_at(q0)?)))
                    .filter(|r| !matches!(r, Ok((_, c)) if num_traits::Zero::is_zero(c)))
                    .collect::<Result<BTreeMap<_, _>, crate::coeff::CoeffError>>()
            })
            .collect::<Result<_, _>>()?;
        let independent = rank(&vecs) == basis.len();
        Ok(CoinvariantSlice { degree: d, dimension, basis, all_coinvariant, independent })
    }
}

#[derive(Debug, Clone)]
pub struct CoinvariantSlice {
    pub degree: usize,
    /// Null space dimension of the equivariance defect.
    pub dimension: usize,
    /// 4-sphere monomials and their images in S^7_q.
    pub basis: Vec<(String, NCPoly)>,
    pub all_coinvariant: bool,
    pub independent: bool,
}

impl CoinvariantSlice {
    /// The listed monomials are coinvariant, independent and exhaust the
    /// solution space.
    pub fn spans(&self) -> bool {
        self.all_coinvariant && self.independent && self.dimension == self.basis.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::ncpoly::DEFAULT_STEP_LIMIT;

    fn quotient() -> Quotient {
        Quotient::build(DEFAULT_STEP_LIMIT).unwrap()
    }

    #[test]
    fn determinant_class_is_one() {
        let q = quotient();
        let d = NCPoly::letter(q.uq.d);
        assert_eq!(q.reduce(&d).unwrap(), NCPoly::one());
        assert_eq!(q.reduce(q.uq.det_poly()).unwrap(), NCPoly::one());
        assert_eq!(q.reduce(&NCPoly::letter(q.uq.dinv)).unwrap(), NCPoly::one());
    }

    #[test]
    fn remark_on_products() {
        let q = quotient();
        let p = |s: &str| q.pres().parse(s).unwrap();
        assert!(q.reduce(&p("t13 t22")).unwrap().is_zero());
        let r = q.reduce(&p("t11 t43")).unwrap();
        assert_eq!(r, q.reduce(&p("-t12 t11")).unwrap());
        let prod = q.class_mul(&q.reduce(&p("t11")).unwrap(), &q.reduce(&p("t43")).unwrap()).unwrap();
        assert_ne!(r, prod);
    }

    #[test]
    fn coideal_span_degree_one() {
        let q = quotient();
        for c in q.check_coideal(1).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn coaction_on_generators() {
        let co = Coaction::build(DEFAULT_STEP_LIMIT).unwrap();
        let s7 = &co.s7;
        let z1 = s7.gen("z1");
        let t = co.coact_r(&z1).unwrap();
        let mut want = Tensor::zero();
        let uq = co.quot.pres();
        want.add_term(vec![Word::letter(s7.letter("z1").unwrap()), Word::letter(uq.letter("t11").unwrap())], Scalar::one());
        want.add_term(vec![Word::letter(s7.letter("z2").unwrap()), Word::letter(uq.letter("t21").unwrap())], Scalar::one());
        assert_eq!(t, want);
        assert!(!co.is_coinvariant(&z1).unwrap());
        for n in ["R", "a", "a*", "b", "b*"] {
            assert!(co.is_coinvariant(&s7.get(n)).unwrap(), "{n}");
        }
        assert!(co.is_coinvariant(&NCPoly::one()).unwrap());
    }

    #[test]
    fn slice_degree_two() {
        let co = Coaction::build(DEFAULT_STEP_LIMIT).unwrap();
        let s = co.coinvariant_slice(2, &rat(2, 7)).unwrap();
        assert_eq!(s.basis.len(), 6);
        assert!(s.spans(), "{s:?}");
    }
}
