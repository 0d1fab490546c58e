//! Exact scalars in the deformation parameter `q`.
//!
//! Two types are provided:
//!
//! * [`Laurent`]: finite sums `Σ c_k q^k` with rational `c_k` and `k ∈ ℤ`.
//! * [`RatFn`]: quotients of Laurent polynomials kept in lowest terms.
//!
//! Both are immutable values with a unique canonical representation, so
//! equality is structural. There is no floating point anywhere in here.

mod parse;
mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use num_rational::BigRational as Rational;
pub use parse::{parse_rational, parse_scalar};

use poly::DensePoly;

/// The scalar type used as coefficient everywhere in the crate.
pub type Scalar = RatFn;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at q = {0}")]
    PoleAtQ0(String),
    #[error("cannot parse scalar `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn pow_rational(x: &Rational, e: i32) -> Rational {
    let mut acc = Rational::one();
    let base = if e < 0 { x.recip() } else { x.clone() };
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// Laurent polynomial in `q` with rational coefficients.
///
/// Terms are stored sorted by exponent with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: Vec<(i32, Rational)>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Laurent { terms: vec![(exp, c)] }
        }
    }

    /// `q^exp`
    pub fn q_pow(exp: i32) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(it: I) -> Self {
        let mut v: Vec<(i32, Rational)> = it.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, Rational)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Laurent { terms: out }
    }

    pub fn terms(&self) -> &[(i32, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Single term `c q^k`, if that is what this is.
    pub fn as_monomial(&self) -> Option<(i32, &Rational)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((*e, c)),
            _ => None,
        }
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    pub fn lead_coeff(&self) -> Option<&Rational> {
        self.terms.last().map(|t| &t.1)
    }

    pub fn coeff(&self, exp: i32) -> Rational {
        self.terms
            .binary_search_by_key(&exp, |t| t.0)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `q -> q0`. Fails when `q0 = 0` meets a negative power.
    pub fn eval_at(&self, q0: &Rational) -> Result<Rational, CoeffError> {
        if q0.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return Err(CoeffError::PoleAtQ0(q0.to_string()));
        }
        Ok(self
            .terms
            .iter()
            .fold(Rational::zero(), |acc, (e, c)| acc + c * pow_rational(q0, *e)))
    }

    /// Formal derivative in `q`.
    pub fn derivative(&self) -> Self {
        Laurent::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| *e != 0)
                .map(|(e, c)| (e - 1, c * int(*e as i64))),
        )
    }

    fn to_dense(&self) -> (i32, DensePoly) {
        let lo = self.min_exp().unwrap_or(0);
        let hi = self.max_exp().unwrap_or(0);
        let mut v = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, DensePoly::new(v))
    }

    fn from_dense(shift: i32, p: &DensePoly) -> Self {
        Laurent::from_terms(
            p.0.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i32 + shift, c.clone())),
        )
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a[i].1 + &b[j].1;
                    if !s.is_zero() {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Laurent { terms: out }
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        if let Some((e, c)) = rhs.as_monomial() {
            return Laurent {
                terms: self.terms.iter().map(|(f, d)| (f + e, d * c)).collect(),
            };
        }
        if let Some((e, c)) = self.as_monomial() {
            return Laurent {
                terms: rhs.terms.iter().map(|(f, d)| (f + e, d * c)).collect(),
            };
        }
        Laurent::from_terms(
            self.terms
                .iter()
                .flat_map(|(e, c)| rhs.terms.iter().map(move |(f, d)| (e + f, c * d))),
        )
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}*")?,
            }
            match *e {
                0 => {}
                1 => write!(f, "q")?,
                k => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Rational function in `q`, kept as `num / den` in lowest terms.
///
/// `den` is a monic polynomial with nonzero constant term; all powers of
/// `q` are absorbed in `num`. A Laurent polynomial has `den = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Laurent,
    den: Laurent,
}

impl Default for RatFn {
    fn default() -> Self {
        RatFn::zero()
    }
}

impl From<Laurent> for RatFn {
    fn from(num: Laurent) -> Self {
        RatFn { num, den: Laurent::one() }
    }
}

impl From<Rational> for RatFn {
    fn from(c: Rational) -> Self {
        Laurent::constant(c).into()
    }
}

impl From<i64> for RatFn {
    fn from(c: i64) -> Self {
        int(c).into()
    }
}

impl RatFn {
    pub fn zero() -> Self {
        Laurent::zero().into()
    }

    pub fn one() -> Self {
        Laurent::one().into()
    }

    pub fn q() -> Self {
        Laurent::q_pow(1).into()
    }

    pub fn q_pow(k: i32) -> Self {
        Laurent::q_pow(k).into()
    }

    pub fn constant(c: Rational) -> Self {
        c.into()
    }

    /// `1 - q^k`
    pub fn one_minus_q_pow(k: i32) -> Self {
        (&Laurent::one() - &Laurent::q_pow(k)).into()
    }

    /// Builds `num / den` in canonical form.
    pub fn new(num: Laurent, den: Laurent) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Laurent, den: Laurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some((e, c)) = den.as_monomial() {
            let inv = c.recip();
            return RatFn { num: num.shift(-e).scale(&inv), den: Laurent::one() };
        }
        let (dshift, dpoly) = den.to_dense();
        let (nshift, npoly) = num.to_dense();
        // num/den = q^(nshift - dshift) * npoly / dpoly, dpoly(0) != 0
        let g = DensePoly::gcd(&npoly, &dpoly);
        let (np, _) = npoly.div_rem(&g);
        let (dp, _) = dpoly.div_rem(&g);
        let inv = dp.lead().recip();
        let np = np.scale(&inv);
        let dp = dp.scale(&inv);
        RatFn {
            num: Laurent::from_dense(nshift - dshift, &np),
            den: Laurent::from_dense(0, &dp),
        }
    }

    pub fn numer(&self) -> &Laurent {
        &self.num
    }

    pub fn denom(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&Laurent> {
        self.is_laurent().then_some(&self.num)
    }

    /// The constant rational value if this scalar does not depend on q.
    pub fn as_rational(&self) -> Option<Rational> {
        if !self.is_laurent() {
            return None;
        }
        match self.num.terms() {
            [] => Some(Rational::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RatFn) -> Result<Self, CoeffError> {
        if rhs.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, e: i32) -> Result<Self, CoeffError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFn::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatFn { num: self.num.scale(c), den: self.den.clone() }.normalized_zero()
    }

    fn normalized_zero(self) -> Self {
        if self.num.is_zero() {
            RatFn::zero()
        } else {
            self
        }
    }

    /// Exact value at `q = q0`.
    pub fn eval_at(&self, q0: &Rational) -> Result<Rational, CoeffError> {
        let d = self.den.eval_at(q0)?;
        if d.is_zero() {
            return Err(CoeffError::PoleAtQ0(q0.to_string()));
        }
        Ok(self.num.eval_at(q0)? / d)
    }

    /// Formal derivative in `q`.
    pub fn derivative(&self) -> Self {
        if self.is_laurent() {
            return self.num.derivative().into();
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduce(n, &self.den * &self.den)
    }

    /// Canonicalize a possibly non-canonical pair; used to test idempotency.
    pub fn canonical(&self) -> Self {
        Self::reduce(self.num.clone(), self.den.clone())
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return (&self.num + &rhs.num).into();
            }
            return RatFn::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RatFn::reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return (&self.num * &rhs.num).into();
        }
        RatFn::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
owned_ops!(Laurent);
owned_ops!(RatFn);

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |l: &Laurent| {
            if l.terms().len() > 1 {
                format!("({l})")
            } else {
                l.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl serde::Serialize for RatFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
