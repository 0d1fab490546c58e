//! Representations of the 4-sphere: the counit and the Fock representation
//! `σ` on `ℓ²(ℕ)⊗²`, exact traces and truncation diagnostics.

pub mod operator;
pub mod radical;

use std::collections::BTreeMap;

use num_traits::{One, Pow, Signed, ToPrimitive};
use thiserror::Error;

use crate::algebras::{sigma4q_relations, Presentation, ZETA_RELATIONS};
use crate::coeff::{rat, CoeffError, Laurent, RatFn, Rational};
use crate::ncpoly::{parse_poly, Letter, NCPoly, NcError, Word};
pub use operator::{State, TruncatedOperator};
pub use radical::RadicalScalar;

pub const DEFAULT_Q0: (i64, i64) = (1, 2);
pub const DEFAULT_CUTOFF: u32 = 40;

#[derive(Debug, Error)]
pub enum FockError {
    #[error("q0 = {0} is not in (0, 1)")]
    InvalidQ(Rational),
    #[error("cannot add {left} and {right} exactly")]
    RadicalMixing { left: String, right: String },
    #[error("divergent geometric sum for x^{alpha} y^{beta}")]
    DivergentSum { alpha: u32, beta: u32 },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

fn check_q(q0: &Rational) -> Result<(), FockError> {
    if q0.is_positive() && q0 < &Rational::one() {
        Ok(())
    } else {
        Err(FockError::InvalidQ(q0.clone()))
    }
}

fn qpow(q0: &Rational, e: i64) -> Rational {
    Pow::pow(q0, e as i32)
}

/// `√(1 - q0^{2k})`
fn root_one_minus(q0: &Rational, k: i64) -> RadicalScalar {
    RadicalScalar::new(Rational::one(), &(Rational::one() - qpow(q0, 2 * k)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Gen {
    R,
    Rinv,
    A,
    As,
    B,
    Bs,
}

fn gen_of(name: &str) -> Result<Gen, FockError> {
    Ok(match name {
        "R" => Gen::R,
        "Rinv" => Gen::Rinv,
        "a" => Gen::A,
        "a*" => Gen::As,
        "b" => Gen::B,
        "b*" => Gen::Bs,
        other => return Err(FockError::UnknownGenerator(other.to_string())),
    })
}

fn generator(g: Gen, n: u32, q0: &Rational) -> TruncatedOperator {
    let e = |s: State| (s.0 as i64, s.1 as i64);
    match g {
        Gen::R => TruncatedOperator::diagonal(n, q0, |s| {
            let (n1, n2) = e(s);
            RadicalScalar::rational(qpow(q0, 2 * (n1 + n2)))
        }),
        Gen::Rinv => TruncatedOperator::diagonal(n, q0, |s| {
            let (n1, n2) = e(s);
            RadicalScalar::rational(qpow(q0, -2 * (n1 + n2)))
        }),
        // σ(a)|n1,n2⟩ = q^{n1+2n2-1} (1-q^{2n1})^{1/2} |n1-1,n2⟩
        Gen::A => TruncatedOperator::shift(n, q0, |s| {
            let (n1, n2) = e(s);
            (n1 > 0).then(|| ((s.0 - 1, s.1), root_one_minus(q0, n1).scale(&qpow(q0, n1 + 2 * n2 - 1))))
        }),
        // σ(b)|n1,n2⟩ = q^{n1+n2} (1-q^{2(n2+1)})^{1/2} |n1,n2+1⟩
        Gen::B => TruncatedOperator::shift(n, q0, |s| {
            let (n1, n2) = e(s);
            Some(((s.0, s.1 + 1), root_one_minus(q0, n2 + 1).scale(&qpow(q0, n1 + n2))))
        }),
        Gen::As => generator(Gen::A, n, q0).adjoint(),
        Gen::Bs => generator(Gen::B, n, q0).adjoint(),
    }
}

/// Evaluates polynomials in named generators on the truncated Fock space.
pub struct FockRep {
    pub cutoff: u32,
    pub q0: Rational,
    cache: BTreeMap<String, TruncatedOperator>,
}

impl FockRep {
    pub fn new(cutoff: u32, q0: &Rational) -> Result<Self, FockError> {
        check_q(q0)?;
        Ok(FockRep { cutoff, q0: q0.clone(), cache: BTreeMap::new() })
    }

    pub fn generator(&mut self, name: &str) -> Result<TruncatedOperator, FockError> {
        if let Some(op) = self.cache.get(name) {
            return Ok(op.clone());
        }
        let op = generator(gen_of(name)?, self.cutoff, &self.q0);
        self.cache.insert(name.to_string(), op.clone());
        Ok(op)
    }

    /// Registers a named operator, e.g. a stereographic coordinate.
    pub fn define(&mut self, name: &str, op: TruncatedOperator) {
        self.cache.insert(name.to_string(), op);
    }

    pub fn word(&mut self, names: &[String], w: &Word) -> Result<TruncatedOperator, FockError> {
        let mut op = TruncatedOperator::identity(self.cutoff, &self.q0);
        for &x in w.letters() {
            op = op.mul(&self.generator(&names[x as usize])?)?;
        }
        Ok(op)
    }

    /// `σ(p)` with coefficients evaluated at `q0`.
    pub fn eval(&mut self, names: &[String], p: &NCPoly) -> Result<TruncatedOperator, FockError> {
        let mut out = TruncatedOperator::zero(self.cutoff, &self.q0);
        for (w, c) in p.terms() {
            let c = c.eval_at(&self.q0)?;
            out = out.add(&self.word(names, w)?.scale(&c))?;
        }
        Ok(out)
    }
}

/// `σ(x)` for `x` in the presentation's generators.
pub fn rep_sigma(pres: &Presentation, x: &NCPoly, cutoff: u32, q0: &Rational) -> Result<TruncatedOperator, FockError> {
    FockRep::new(cutoff, q0)?.eval(pres.names(), x)
}

/// `ε(x)`: the constant term of the normal form.
pub fn rep_epsilon(pres: &Presentation, x: &NCPoly) -> Result<RatFn, FockError> {
    Ok(pres.nf(x)?.coeff(&Word::empty()))
}

/// A relation evaluated on the truncation.
#[derive(Debug, Clone)]
pub struct RelationCheck {
    pub relation: String,
    pub margin: u32,
    pub interior_states: usize,
    pub nonzero: usize,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.nonzero == 0
    }

    pub fn vacuous(&self) -> bool {
        self.interior_states == 0
    }
}

fn relation_checks(
    rep: &mut FockRep,
    names: &[String],
    rels: Vec<(String, NCPoly)>,
) -> Result<Vec<RelationCheck>, FockError> {
    let mut out = Vec::new();
    for (label, p) in rels {
        let margin = p.degree().unwrap_or(0) as u32;
        let op = rep.eval(names, &p)?;
        out.push(RelationCheck {
            relation: label,
            margin,
            interior_states: op.interior_size(margin),
            nonzero: op.interior_entries(margin).len(),
        });
    }
    Ok(out)
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

pub const SIGMA4_NAMES: [&str; 5] = ["R", "a*", "a", "b*", "b"];

/// Every defining relation (with star images) on the interior band, whose
/// margin is the relation's degree.
pub fn check_relations_on_truncation(cutoff: u32, q0: &Rational) -> Result<Vec<RelationCheck>, FockError> {
    let n = names(&SIGMA4_NAMES);
    let rels = sigma4q_relations(&n, true)?;
    relation_checks(&mut FockRep::new(cutoff, q0)?, &n, rels)
}

/// `σ(ζ1) = σ(R)⁻¹σ(a)`, `σ(ζ2) = σ(b)σ(R)⁻¹` against the stereographic relations.
pub fn rep_zeta_check(cutoff: u32, q0: &Rational) -> Result<Vec<RelationCheck>, FockError> {
    let mut rep = FockRep::new(cutoff, q0)?;
    let (rinv, a, b) = (rep.generator("Rinv")?, rep.generator("a")?, rep.generator("b")?);
    let z1 = rinv.mul(&a)?;
    let z2 = b.mul(&rinv)?;
    rep.define("zeta1*", z1.adjoint());
    rep.define("zeta2*", z2.adjoint());
    rep.define("zeta1", z1);
    rep.define("zeta2", z2);
    let n = names(&["zeta1", "zeta2", "zeta1*", "zeta2*"]);
    let rels = ZETA_RELATIONS
        .iter()
        .map(|line| {
            let (l, r) = line.split_once('=').expect("relation");
            Ok((line.to_string(), &parse_poly(l, &n)? - &parse_poly(r, &n)?))
        })
        .collect::<Result<Vec<_>, NcError>>()?;
    // σ(R)⁻¹ is unbounded near the truncation edge only through shifts; the
    // margin is the relation degree as for the sphere relations.
    relation_checks(&mut rep, &n, rels)
}

/// Diagonal entry function `Σ c_{αβ}(q) x^α y^β` with `x = q^{n1}`, `y = q^{n2}`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiagonalSymbol {
    pub terms: BTreeMap<(u32, u32), Laurent>,
}

impl DiagonalSymbol {
    pub fn one() -> Self {
        let mut t = BTreeMap::new();
        t.insert((0, 0), Laurent::one());
        DiagonalSymbol { terms: t }
    }

    fn mul_term(&self, c: &Laurent, alpha: u32, beta: u32) -> Self {
        let mut out = DiagonalSymbol::default();
        for ((a, b), v) in &self.terms {
            out.add((a + alpha, b + beta), &(v * c));
        }
        out
    }

    fn add(&mut self, k: (u32, u32), v: &Laurent) {
        let e = self.terms.entry(k).or_insert_with(Laurent::zero);
        *e = &*e + v;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    fn sum(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add(*k, v);
        }
        out
    }

    /// `Σ_{n1, n2 >= 0}` of the entry function.
    pub fn geometric_sum(&self) -> Result<RatFn, FockError> {
        let mut out = RatFn::zero();
        for ((a, b), c) in &self.terms {
            if *a == 0 || *b == 0 {
                return Err(FockError::DivergentSum { alpha: *a, beta: *b });
            }
            let den = &RatFn::one_minus_q_pow(*a as i32) * &RatFn::one_minus_q_pow(*b as i32);
            out = &out + &RatFn::from(c.clone()).div(&den)?;
        }
        Ok(out)
    }
}

/// Diagonal symbol of a word, or `None` when the word shifts `n1` or `n2`.
pub fn diagonal_symbol(names: &[String], w: &[Letter]) -> Result<Option<DiagonalSymbol>, FockError> {
    let (mut d1, mut d2) = (0i32, 0i32);
    let mut sym = DiagonalSymbol::one();
    // Radical factors √(1 - q^{2c} x²) (axis 0) and √(1 - q^{2c} y²) (axis 1).
    let mut radicals: BTreeMap<(u8, i32), u32> = BTreeMap::new();
    for &x in w.iter().rev() {
        match gen_of(&names[x as usize])? {
            Gen::R => sym = sym.mul_term(&Laurent::q_pow(2 * (d1 + d2)), 2, 2),
            Gen::Rinv => return Ok(None),
            Gen::A => {
                sym = sym.mul_term(&Laurent::q_pow(d1 + 2 * d2 - 1), 1, 2);
                *radicals.entry((0, d1)).or_default() += 1;
                d1 -= 1;
            }
            Gen::As => {
                sym = sym.mul_term(&Laurent::q_pow(d1 + 2 * d2), 1, 2);
                *radicals.entry((0, d1 + 1)).or_default() += 1;
                d1 += 1;
            }
            Gen::B => {
                sym = sym.mul_term(&Laurent::q_pow(d1 + d2), 1, 1);
                *radicals.entry((1, d2 + 1)).or_default() += 1;
                d2 += 1;
            }
            Gen::Bs => {
                sym = sym.mul_term(&Laurent::q_pow(d1 + d2 - 1), 1, 1);
                *radicals.entry((1, d2)).or_default() += 1;
                d2 -= 1;
            }
        }
    }
    if d1 != 0 || d2 != 0 {
        return Ok(None);
    }
    for ((axis, c), k) in radicals {
        assert!(k % 2 == 0, "closed walks cross each level an even number of times");
        let minus = Laurent::monomial(-Rational::one(), 2 * c);
        for _ in 0..k / 2 {
            let (a, b) = if axis == 0 { (2, 0) } else { (0, 2) };
            sym = sym.sum(&sym.mul_term(&minus, a, b));
        }
    }
    Ok(Some(sym))
}

/// `tr σ(w)` for a nonempty diagonal word; zero for shifting words.
pub fn exact_trace(names: &[String], w: &Word) -> Result<RatFn, FockError> {
    if w.is_empty() {
        return Ok(RatFn::zero());
    }
    match diagonal_symbol(names, w.letters())? {
        Some(s) => s.geometric_sum(),
        None => Ok(RatFn::zero()),
    }
}

/// `tr_σ = tr(σ - ε)` on the normal form.
pub fn trace_functional(pres: &Presentation, x: &NCPoly) -> Result<RatFn, FockError> {
    let mut out = RatFn::zero();
    for (w, c) in pres.nf(x)?.terms() {
        if !w.is_empty() {
            out = &out + &(c * &exact_trace(pres.names(), w)?);
        }
    }
    Ok(out)
}

/// Exact trace set for the listed elements.
#[derive(Debug, Clone)]
pub struct TraceRow {
    pub element: String,
    pub exact: RatFn,
    pub expected: RatFn,
    /// Truncated trace at the cutoff, as a float.
    pub truncated: f64,
    pub delta: f64,
    /// `delta / q0^{2N}`.
    pub constant: f64,
}

impl TraceRow {
    pub fn passed(&self, tol: f64) -> bool {
        self.exact == self.expected && self.delta <= tol
    }
}

/// The printed closed forms: `R^k` for `k = 1..5`, `a a*`, `b b*`.
pub fn printed_traces() -> Vec<(String, RatFn)> {
    let one = RatFn::one();
    let inv = |d: RatFn| one.div(&d).expect("nonzero");
    let mut rows = Vec::new();
    for k in 1..=5 {
        let d = RatFn::one_minus_q_pow(2 * k);
        rows.push((format!("R^{k}"), inv(&d * &d)));
    }
    let d4 = RatFn::one_minus_q_pow(4);
    rows.push(("a a*".to_string(), inv(&d4 * &d4)));
    rows.push(("b b*".to_string(), inv(&RatFn::one_minus_q_pow(2) * &d4)));
    rows
}

pub fn trace_table(pres: &Presentation, cutoff: u32, q0: &Rational) -> Result<Vec<TraceRow>, FockError> {
    let mut rep = FockRep::new(cutoff, q0)?;
    let scale = qpow(q0, 2 * cutoff as i64).to_f64().unwrap_or(0.0);
    let mut rows = Vec::new();
    for (src, expected) in printed_traces() {
        let x = pres.parse(&src)?;
        let exact = trace_functional(pres, &x)?;
        let tr = rep.eval(pres.names(), &parse_poly(&src, pres.names())?)?.trace()?;
        let exact_val = exact.eval_at(q0)?;
        let delta = match tr.as_rational() {
            Some(t) => (t - &exact_val).abs().to_f64().unwrap_or(f64::NAN),
            None => (tr.to_f64() - exact_val.to_f64().unwrap_or(f64::NAN)).abs(),
        };
        rows.push(TraceRow {
            element: src,
            exact,
            expected,
            truncated: tr.to_f64(),
            delta,
            constant: if scale > 0.0 { delta / scale } else { 0.0 },
        });
    }
    Ok(rows)
}

/// Partial sums of `tr|σ(x)|` against the printed bounds.
#[derive(Debug, Clone)]
pub struct TraceClassRow {
    pub generator: String,
    pub partial_sums: Vec<f64>,
    pub limit: f64,
    pub bound: Rational,
    pub monotone: bool,
    pub below_bound: bool,
    /// Bound from `√(1 - x) <= 1` on the radical factors.
    pub sound_bound: Rational,
    pub below_sound_bound: bool,
}

/// `(1-q²)^{-2}`, `(1-q)^{-1}(1-q²)^{-1}`, `(1-q)^{-2}`.
pub fn sound_bounds(q0: &Rational) -> [Rational; 3] {
    let one = Rational::one();
    let q2 = q0 * q0;
    [
        &one / ((&one - &q2) * (&one - &q2)),
        &one / ((&one - q0) * (&one - &q2)),
        &one / ((&one - q0) * (&one - q0)),
    ]
}

/// Printed bounds: `(1-q²)^{-2}`, `(1-q)^{-1}(1-q³)^{-1}`, `(1+q²)(1-q)^{-1}(1-q³)^{-1}`.
pub fn printed_bounds(q0: &Rational) -> [(String, Rational); 3] {
    let one = Rational::one();
    let q2 = q0 * q0;
    let q3 = &q2 * q0;
    let r = &one / ((&one - &q2) * (&one - &q2));
    let a = &one / ((&one - q0) * (&one - &q3));
    let b = (&one + &q2) * &a;
    [("R".to_string(), r), ("a".to_string(), a), ("b".to_string(), b)]
}

pub fn trace_class_diagnostics(cutoff: u32, q0: &Rational) -> Result<Vec<TraceClassRow>, FockError> {
    let mut rep = FockRep::new(cutoff, q0)?;
    let mut rows = Vec::new();
    for ((g, bound), sound_bound) in printed_bounds(q0).into_iter().zip(sound_bounds(q0)) {
        let op = rep.generator(&g)?;
        let partial_sums = op.abs_partial_sums();
        let monotone = partial_sums.windows(2).all(|w| w[0] <= w[1]);
        let exact = if g == "R" { op.trace()?.as_rational() } else { None };
        let below = |b: &Rational| match &exact {
            // Σ q^{2(n1+n2)} over the box stays below (1-q²)^{-2}
            Some(t) => t <= b,
            None => {
                let b = b.to_f64().unwrap_or(f64::NAN);
                partial_sums.iter().all(|s| *s <= b + 1e-12)
            }
        };
        let (below_bound, below_sound_bound) = (below(&bound), below(&sound_bound));
        rows.push(TraceClassRow {
            generator: g,
            limit: *partial_sums.last().unwrap_or(&0.0),
            partial_sums,
            bound,
            monotone,
            below_bound,
            sound_bound,
            below_sound_bound,
        });
    }
    Ok(rows)
}

/// Tolerance for truncated vs exact traces.
pub const TRACE_TOLERANCE: f64 = 1e-12;

pub fn default_q0() -> Rational {
    rat(DEFAULT_Q0.0, DEFAULT_Q0.1)
}

pub fn rational_q(q0: &Rational) -> RatFn {
    RatFn::constant(q0.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::build_sigma4q;
    use crate::coeff::int;
    use crate::ncpoly::DEFAULT_STEP_LIMIT;

    fn s4() -> Presentation {
        build_sigma4q(DEFAULT_STEP_LIMIT).unwrap()
    }

    #[test]
    fn generator_entries() {
        let q = rat(1, 2);
        let mut rep = FockRep::new(6, &q).unwrap();
        let r = rep.generator("R").unwrap();
        assert_eq!(r.get((1, 2), (1, 2)).as_rational(), Some(rat(1, 64)));
        let a = rep.generator("a").unwrap();
        assert!(a.entries().all(|((_, i), _)| i.0 > 0));
        let b = rep.generator("b").unwrap();
        assert_eq!(b.get((0, 1), (0, 0)), RadicalScalar::new(int(1), &rat(3, 4)));
        assert!(FockRep::new(3, &int(1)).is_err());
    }

    #[test]
    fn counit() {
        let p = s4();
        assert_eq!(rep_epsilon(&p, &NCPoly::one()).unwrap(), RatFn::one());
        assert!(rep_epsilon(&p, &p.parse("R^2 + a").unwrap()).unwrap().is_zero());
        assert_eq!(rep_epsilon(&p, &p.parse("2 - (1-q^2)^2 R").unwrap()).unwrap(), RatFn::from(2));
    }

    #[test]
    fn relations_hold_on_interior() {
        for c in check_relations_on_truncation(12, &rat(1, 2)).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
        assert!(check_relations_on_truncation(1, &rat(1, 2)).unwrap().iter().all(|c| c.vacuous() && c.passed()));
        for c in rep_zeta_check(10, &rat(1, 3)).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn exact_traces() {
        let p = s4();
        for row in trace_table(&p, 30, &rat(1, 2)).unwrap() {
            assert!(row.passed(TRACE_TOLERANCE), "{row:?}");
        }
        assert!(trace_functional(&p, &NCPoly::one()).unwrap().is_zero());
        assert!(trace_functional(&p, &p.gen("a")).unwrap().is_zero());
        assert_eq!(trace_functional(&p, &p.parse("2 - (1-q^2)^2 R").unwrap()).unwrap(), RatFn::from(-1));
    }

    #[test]
    fn trace_class_partial_sums() {
        let rows = trace_class_diagnostics(30, &rat(1, 2)).unwrap();
        assert!(rows.iter().all(|r| r.monotone && r.below_sound_bound));
        assert!(rows[0].below_bound);
        // exceeds 16/7 and 20/7
        assert!(rows[1].limit > 2.46 && rows[2].limit > 3.69);
    }
}
