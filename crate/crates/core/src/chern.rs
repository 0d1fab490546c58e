//! Cyclic chains over the 4-sphere, Chern characters of `G` and the pairing
//! with the Fock trace.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebras::Presentation;
use crate::bundle::NCMatrix;
use crate::coeff::{int, rat, RatFn, Rational, Scalar};
use crate::fock::{trace_functional, FockError};
use crate::linalg;
use crate::ncpoly::{NCPoly, NcError, Word};

pub const DEFAULT_DEGREE_BOUND: usize = 4;

#[derive(Debug, Error)]
pub enum ChernError {
    #[error("leg of degree {degree} exceeds the bound {bound}")]
    DegreeBoundExceeded { degree: usize, bound: usize },
    #[error("matrix legs of sizes {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("{op} needs degree at least {min}, got {degree}")]
    DegreeTooLow { op: &'static str, min: usize, degree: usize },
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Fock(#[from] FockError),
}

/// Element of `A^{⊗ n+1}` in the word basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain {
    degree: usize,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain { degree, terms: BTreeMap::new() }
    }

    pub fn from_poly(p: &NCPoly) -> Self {
        let mut c = Chain::zero(0);
        for (w, s) in p.terms() {
            c.add_term(vec![w.clone()], s.clone());
        }
        c
    }

    /// `p_0 ⊗ … ⊗ p_n`
    pub fn tensor(legs: &[NCPoly]) -> Self {
        let mut acc: Vec<(Vec<Word>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for p in legs {
            let mut next = Vec::with_capacity(acc.len() * p.len());
            for (ws, c) in &acc {
                for (w, s) in p.terms() {
                    let mut v = ws.clone();
                    v.push(w.clone());
                    next.push((v, c * s));
                }
            }
            acc = next;
        }
        let mut c = Chain::zero(legs.len().saturating_sub(1));
        for (k, v) in acc {
            c.add_term(k, v);
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, legs: Vec<Word>, c: Scalar) {
        debug_assert_eq!(legs.len(), self.degree + 1);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&legs) {
            Some(e) => {
                *e = &*e + &c;
                if e.is_zero() {
                    self.terms.remove(&legs);
                }
            }
            None => {
                self.terms.insert(legs, c);
            }
        }
    }

    pub fn add(&self, o: &Chain) -> Chain {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Chain {
        let mut out = Chain::zero(self.degree);
        if s.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * s);
        }
        out
    }

    pub fn sub(&self, o: &Chain) -> Chain {
        self.add(&o.scale(&RatFn::from(-1)))
    }

    /// Longest word in any leg.
    pub fn max_leg_degree(&self) -> usize {
        self.terms.keys().flat_map(|ws| ws.iter().map(Word::len)).max().unwrap_or(0)
    }

    /// `t(a_0 ⊗ a_1 ⊗ … ⊗ a_n) = (-)^n a_1 ⊗ … ⊗ a_n ⊗ a_0`
    pub fn cyclic_t(&self) -> Chain {
        let sign = RatFn::from(if self.degree.is_multiple_of(2) { 1 } else { -1 });
        let mut out = Chain::zero(self.degree);
        for (k, v) in &self.terms {
            let mut r = k.clone();
            r.rotate_left(1);
            out.add_term(r, v * &sign);
        }
        out
    }

    /// `Σ_{k=0}^{n} t^k`
    pub fn cyclic_norm(&self) -> Chain {
        let mut out = Chain::zero(self.degree);
        let mut cur = self.clone();
        for _ in 0..=self.degree {
            out = out.add(&cur);
            cur = cur.cyclic_t();
        }
        out
    }

    /// Degree-0 chains as algebra elements.
    pub fn to_poly(&self) -> Option<NCPoly> {
        (self.degree == 0).then(|| NCPoly::from_terms(self.terms.iter().map(|(k, v)| (k[0].clone(), v.clone()))))
    }
}

/// The Hochschild and Connes complexes of a presented algebra.
pub struct CyclicComplex {
    pub pres: Presentation,
    products: Mutex<HashMap<(Word, Word), NCPoly>>,
}

impl CyclicComplex {
    pub fn new(pres: Presentation) -> Self {
        CyclicComplex { pres, products: Mutex::new(HashMap::new()) }
    }

    fn product(&self, u: &Word, v: &Word) -> Result<NCPoly, NcError> {
        let key = (u.clone(), v.clone());
        if let Some(p) = self.products.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let p = self.pres.nf(&NCPoly::word(u.concat(v)))?;
        self.products.lock().unwrap().insert(key, p.clone());
        Ok(p)
    }

    pub fn normalize(&self, c: &Chain) -> Result<Chain, NcError> {
        let mut out = Chain::zero(c.degree);
        for (legs, s) in &c.terms {
            let polys = legs.iter().map(|w| self.pres.nf(&NCPoly::word(w.clone()))).collect::<Result<Vec<_>, _>>()?;
            out = out.add(&Chain::tensor(&polys).scale(s));
        }
        Ok(out)
    }

    /// `d_i`: multiplies legs `i` and `i+1`; `d_n` multiplies `a_n a_0`.
    pub fn face(&self, i: usize, c: &Chain) -> Result<Chain, ChernError> {
        let n = c.degree;
        if n == 0 {
            return Err(ChernError::DegreeTooLow { op: "face", min: 1, degree: 0 });
        }
        assert!(i <= n);
        let mut out = Chain::zero(n - 1);
        for (legs, s) in &c.terms {
            let (prod, rest): (NCPoly, Vec<Word>) = if i < n {
                let p = self.product(&legs[i], &legs[i + 1])?;
                let mut r = legs[..i].to_vec();
                r.push(Word::empty());
                r.extend_from_slice(&legs[i + 2..]);
                (p, r)
            } else {
                let p = self.product(&legs[n], &legs[0])?;
                let mut r = vec![Word::empty()];
                r.extend_from_slice(&legs[1..n]);
                (p, r)
            };
            let slot = if i < n { i } else { 0 };
            for (w, t) in prod.terms() {
                let mut k = rest.clone();
                k[slot] = w.clone();
                out.add_term(k, s * t);
            }
        }
        Ok(out)
    }

    /// `β = Σ_{i=0}^{n} (-)^i d_i`
    pub fn hochschild_boundary(&self, c: &Chain) -> Result<Chain, ChernError> {
        let mut out = Chain::zero(c.degree.saturating_sub(1));
        for i in 0..=c.degree {
            let f = self.face(i, c)?;
            out = if i % 2 == 0 { out.add(&f) } else { out.sub(&f) };
        }
        Ok(out)
    }

    /// `-1/(n(n-1)) Σ_{0<=i<j<=n} (-)^{i+j} d_i d_j`
    pub fn s_operator(&self, c: &Chain) -> Result<Chain, ChernError> {
        let n = c.degree;
        if n < 2 {
            return Err(ChernError::DegreeTooLow { op: "S", min: 2, degree: n });
        }
        let mut sum = Chain::zero(n - 2);
        for j in 1..=n {
            let dj = self.face(j, c)?;
            for i in 0..j {
                let f = self.face(i, &dj)?;
                sum = if (i + j) % 2 == 0 { sum.add(&f) } else { sum.sub(&f) };
            }
        }
        Ok(sum.scale(&RatFn::constant(rat(-1, (n * (n - 1)) as i64))))
    }

    /// `Tr[M_1 ⊗ … ⊗ M_m] = Σ_j [M_1]_{j1 j2} ⊗ [M_2]_{j2 j3} ⊗ … ⊗ [M_m]_{jm j1}`
    pub fn generalized_trace(&self, legs: &[&NCMatrix]) -> Result<Chain, ChernError> {
        let m = legs.len();
        assert!(m > 0, "at least one leg");
        let k = legs[0].n;
        if let Some(bad) = legs.iter().find(|l| l.n != k) {
            return Err(ChernError::DimensionMismatch(k, bad.n));
        }
        let legs: Vec<NCMatrix> = legs.iter().map(|l| l.map(|p| self.pres.nf(p))).collect::<Result<_, _>>()?;
        let mut out = Chain::zero(m - 1);
        let mut idx = vec![0usize; m];
        loop {
            let polys: Vec<NCPoly> = (0..m).map(|r| legs[r].get(idx[r], idx[(r + 1) % m]).clone()).collect();
            if polys.iter().all(|p| !p.is_zero()) {
                out = out.add(&Chain::tensor(&polys));
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos == m {
                    return Ok(out);
                }
                idx[pos] += 1;
                if idx[pos] < k {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// `ch_n(G) = Tr[(-)^n G^{⊗2n+1}]`
    pub fn chern(&self, g: &NCMatrix, n: usize) -> Result<Chain, ChernError> {
        let legs = vec![g; 2 * n + 1];
        let c = self.generalized_trace(&legs)?;
        Ok(if n.is_multiple_of(2) { c } else { c.scale(&RatFn::from(-1)) })
    }

    /// Decides `β(c) ∈ (1-t)` exactly. Since `t^{m+1} = 1` in degree `m`,
    /// `x = (1-t)y` is solvable iff `Σ t^k x = 0`, and then
    /// `y = -1/(m+1) Σ_k k t^k x` is a witness, which is verified.
    pub fn cyclic_cycle_check(&self, c: &Chain, bound: usize) -> Result<CycleCheck, ChernError> {
        check_bound(c, bound)?;
        if c.degree == 0 {
            return Ok(CycleCheck { degree: 0, boundary_terms: 0, is_cycle: true, vacuous: true, witness: None });
        }
        let x = self.hochschild_boundary(c)?;
        check_bound(&x, bound)?;
        let m = x.degree;
        let is_cycle = x.cyclic_norm().is_zero();
        let witness = if is_cycle {
            let mut y = Chain::zero(m);
            let mut cur = x.clone();
            for k in 0..=m {
                y = y.add(&cur.scale(&RatFn::from(k as i64)));
                cur = cur.cyclic_t();
            }
            let y = y.scale(&RatFn::constant(rat(-1, m as i64 + 1)));
            assert_eq!(y.sub(&y.cyclic_t()), x, "witness");
            Some(y)
        } else {
            None
        };
        Ok(CycleCheck { degree: c.degree, boundary_terms: x.len(), is_cycle, vacuous: false, witness })
    }

    /// `⟨tr_σ, c⟩` for a degree-0 chain.
    pub fn pairing_with_trace(&self, c: &Chain) -> Result<RatFn, ChernError> {
        let p = c.to_poly().ok_or(ChernError::DegreeTooLow { op: "pairing", min: 0, degree: c.degree })?;
        if c.degree != 0 {
            return Err(ChernError::DegreeTooLow { op: "pairing", min: 0, degree: c.degree });
        }
        Ok(trace_functional(&self.pres, &p)?)
    }

    /// Writes a degree-0 element as `Σ c_{uv} [u, v]` over normal words with
    /// `|u| + |v| <= bound` and matching charge, if possible.
    pub fn commutator_witness(&self, x: &NCPoly, bound: usize) -> Result<Option<Vec<(Word, Word, Scalar)>>, ChernError> {
        let x = self.pres.nf(x)?;
        if x.is_zero() {
            return Ok(Some(Vec::new()));
        }
        let charge = |w: &Word| -> (i64, i64) {
            w.letters().iter().fold((0, 0), |(s, t), &l| match self.pres.names()[l as usize].as_str() {
                "a" => (s + 1, t),
                "a*" => (s - 1, t),
                "b" => (s, t + 1),
                "b*" => (s, t - 1),
                _ => (s, t),
            })
        };
        let wanted: BTreeSet<(i64, i64)> = x.terms().map(|(w, _)| charge(w)).collect();
        let words: Vec<Word> = (1..bound).flat_map(|k| self.pres.system.irreducible_words(k)).collect();
        let mut pairs = Vec::new();
        let mut images = Vec::new();
        for (i, u) in words.iter().enumerate() {
            for v in &words[i + 1..] {
                if u.len() + v.len() > bound {
                    continue;
                }
                let (cu, cv) = (charge(u), charge(v));
                if !wanted.contains(&(cu.0 + cv.0, cu.1 + cv.1)) {
                    continue;
                }
                let comm = &self.product(u, v)? - &self.product(v, u)?;
                if comm.is_zero() {
                    continue;
                }
                images.push(comm.terms().map(|(w, c)| (w.clone(), c.clone())).collect::<linalg::SparseVec<Word, RatFn>>());
                pairs.push((u.clone(), v.clone()));
            }
        }
        let target: linalg::SparseVec<Word, RatFn> = x.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        Ok(linalg::solve(&images, &target)
            .map(|sol| sol.into_iter().map(|(i, c)| (pairs[i].0.clone(), pairs[i].1.clone(), c)).collect()))
    }

    /// `S(ch_1) - λ ch_0` for `λ` in the candidates, each tested for being a
    /// sum of commutators (a degree-0 boundary; `1 - t` vanishes in degree 0).
    pub fn s_relation(&self, g: &NCMatrix, bound: usize) -> Result<SRelation, ChernError> {
        let ch0 = self.chern(g, 0)?;
        let ch1 = self.chern(g, 1)?;
        let s = self.s_operator(&ch1)?.to_poly().expect("degree 0");
        let ch0p = ch0.to_poly().expect("degree 0");
        let mut rows = Vec::new();
        for lambda in [rat(-1, 2), rat(1, 2)] {
            let diff = &s - &ch0p.scale(&RatFn::constant(lambda.clone()));
            let diff = self.pres.nf(&diff)?;
            let witness = self.commutator_witness(&diff, bound)?;
            rows.push((lambda, witness.is_some()));
        }
        let pairing = trace_functional(&self.pres, &s)?;
        Ok(SRelation { s_ch1: s, pairing, rows })
    }

    /// `tr_σ(xy) = tr_σ(yx)` on random pairs of degree at most `degree`.
    pub fn trace_property(&self, degree: usize, samples: usize, seed: u64) -> Result<TraceProperty, ChernError> {
        let words: Vec<Word> = (0..=degree).flat_map(|k| self.pres.system.irreducible_words(k)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let random = |rng: &mut ChaCha8Rng| {
            let mut p = NCPoly::zero();
            for _ in 0..rng.gen_range(1..=3) {
                let w = words[rng.gen_range(0..words.len())].clone();
                p.add_term(w, RatFn::constant(int(rng.gen_range(-3..=3))));
            }
            p
        };
        let mut failures = Vec::new();
        for _ in 0..samples {
            let (x, y) = (random(&mut rng), random(&mut rng));
            let l = trace_functional(&self.pres, &self.pres.mul(&x, &y)?)?;
            let r = trace_functional(&self.pres, &self.pres.mul(&y, &x)?)?;
            if l != r {
                failures.push((self.pres.render(&x), self.pres.render(&y)));
            }
        }
        Ok(TraceProperty { samples, failures })
    }
}

fn check_bound(c: &Chain, bound: usize) -> Result<(), ChernError> {
    let d = c.max_leg_degree();
    if d > bound {
        Err(ChernError::DegreeBoundExceeded { degree: d, bound })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct CycleCheck {
    pub degree: usize,
    pub boundary_terms: usize,
    pub is_cycle: bool,
    pub vacuous: bool,
    /// `y` with `(1-t) y = β(c)`.
    pub witness: Option<Chain>,
}

#[derive(Debug, Clone)]
pub struct SRelation {
    pub s_ch1: NCPoly,
    /// `tr_σ(S(ch_1))`
    pub pairing: RatFn,
    /// `(λ, S(ch_1) - λ ch_0 is a sum of commutators)`
    pub rows: Vec<(Rational, bool)>,
}

impl SRelation {
    pub fn holds_for(&self, lambda: &Rational) -> Option<bool> {
        self.rows.iter().find(|(l, _)| l == lambda).map(|(_, ok)| *ok)
    }
}

#[derive(Debug, Clone)]
pub struct TraceProperty {
    pub samples: usize,
    pub failures: Vec<(String, String)>,
}

impl TraceProperty {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Everything the Chern suite reports.
#[derive(Debug, Clone)]
pub struct ChernReport {
    pub ch0: NCPoly,
    pub ch0_expected: NCPoly,
    pub sizes: Vec<usize>,
    pub pairing: RatFn,
    pub cycles: Vec<CycleCheck>,
}

impl ChernReport {
    pub fn passed(&self) -> bool {
        self.ch0 == self.ch0_expected && self.pairing == RatFn::from(-1) && self.cycles.iter().all(|c| c.is_cycle)
    }
}

pub fn chern_report(cx: &CyclicComplex, g: &NCMatrix, bound: usize) -> Result<ChernReport, ChernError> {
    let mut sizes = Vec::new();
    let mut cycles = Vec::new();
    let mut ch0 = Chain::zero(0);
    for n in 0..=2 {
        let c = cx.chern(g, n)?;
        sizes.push(c.len());
        cycles.push(cx.cyclic_cycle_check(&c, bound)?);
        if n == 0 {
            ch0 = c;
        }
    }
    Ok(ChernReport {
        ch0: ch0.to_poly().expect("degree 0"),
        ch0_expected: cx.pres.parse("2 - (1-q^2)^2 R")?,
        sizes,
        pairing: cx.pairing_with_trace(&ch0)?,
        cycles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::build_sigma4q;
    use crate::bundle::G_PRINTED;
    use crate::ncpoly::DEFAULT_STEP_LIMIT;

    fn setup() -> (CyclicComplex, NCMatrix) {
        let p = build_sigma4q(DEFAULT_STEP_LIMIT).unwrap();
        let g = NCMatrix::parse(&p, &G_PRINTED).unwrap();
        (CyclicComplex::new(p), g)
    }

    #[test]
    fn boundary_and_rotation() {
        let (cx, _) = setup();
        let p = &cx.pres;
        let (a, as_) = (p.gen("a"), p.gen("a*"));
        let c = Chain::tensor(&[a.clone(), as_.clone()]);
        let b = cx.hochschild_boundary(&c).unwrap();
        assert_eq!(b.to_poly().unwrap(), p.commutator(&a, &as_).unwrap());
        assert_eq!(c.cyclic_t(), Chain::tensor(&[as_.clone(), a.clone()]).scale(&RatFn::from(-1)));
        assert!(cx.hochschild_boundary(&Chain::tensor(&[NCPoly::one(), a.clone()])).unwrap().is_zero());
        let x = Chain::from_poly(&a);
        assert_eq!(x.cyclic_t(), x);
        assert!(!cx.cyclic_cycle_check(&c, 4).unwrap().is_cycle);
        let big = Chain::tensor(&[p.parse("R^3").unwrap(), p.parse("a^2").unwrap()]);
        assert!(matches!(cx.cyclic_cycle_check(&big, 4), Err(ChernError::DegreeBoundExceeded { .. })));
    }

    #[test]
    fn generalized_trace_small_cases() {
        let (cx, g) = setup();
        let id = NCMatrix::identity(2);
        let c = cx.generalized_trace(&[&id, &id]).unwrap();
        assert_eq!(c, Chain::tensor(&[NCPoly::one(), NCPoly::one()]).scale(&RatFn::from(2)));
        assert_eq!(cx.generalized_trace(&[&g]).unwrap().to_poly().unwrap(), g.trace());
        assert!(matches!(cx.generalized_trace(&[&g, &id]), Err(ChernError::DimensionMismatch(4, 2))));
    }

    #[test]
    fn chern_zero_and_pairing() {
        let (cx, g) = setup();
        let ch0 = cx.chern(&g, 0).unwrap();
        assert_eq!(ch0.to_poly().unwrap(), cx.pres.parse("2 - (1-q^2)^2 R").unwrap());
        assert_eq!(cx.pairing_with_trace(&ch0).unwrap(), RatFn::from(-1));
        assert!(cx.pairing_with_trace(&Chain::zero(0)).unwrap().is_zero());
        let r = Chain::from_poly(&cx.pres.gen("R"));
        let d = RatFn::one_minus_q_pow(2);
        assert_eq!(cx.pairing_with_trace(&r).unwrap(), RatFn::one().div(&(&d * &d)).unwrap());
    }

    #[test]
    fn chern_one_is_cyclic_cycle() {
        let (cx, g) = setup();
        let ch1 = cx.chern(&g, 1).unwrap();
        let check = cx.cyclic_cycle_check(&ch1, DEFAULT_DEGREE_BOUND).unwrap();
        assert!(check.is_cycle);
        // not a Hochschild cycle
        assert!(check.boundary_terms > 0);
    }

    #[test]
    fn s_operator_on_chern_one() {
        let (cx, g) = setup();
        let rel = cx.s_relation(&g, DEFAULT_DEGREE_BOUND).unwrap();
        assert_eq!(rel.holds_for(&rat(-1, 2)), Some(true));
        assert_eq!(rel.holds_for(&rat(1, 2)), Some(false));
        assert_eq!(rel.pairing, RatFn::constant(rat(1, 2)));
        // x⊗y⊗z ↦ 1/2 (d0d1 - d0d2 + d1d2)
        let p = &cx.pres;
        let (x, y, z) = (p.gen("a"), p.gen("b"), p.gen("R"));
        let c = Chain::tensor(&[x.clone(), y.clone(), z.clone()]);
        let expected = &(&p.product(&[&x, &y, &z]).unwrap() - &p.product(&[&z, &x, &y]).unwrap())
            + &p.product(&[&y, &z, &x]).unwrap();
        let got = cx.s_operator(&c).unwrap().to_poly().unwrap();
        assert_eq!(got, p.nf(&expected.scale(&RatFn::constant(rat(1, 2)))).unwrap());
    }

    #[test]
    fn trace_is_a_cyclic_cocycle() {
        let (cx, _) = setup();
        assert!(cx.trace_property(3, 20, 7).unwrap().passed());
    }
}
