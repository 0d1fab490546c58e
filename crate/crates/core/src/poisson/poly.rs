//! Commutative polynomials and fractions in `z1..z4, z1*..z4*`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::coeff::Rational;

pub const NVARS: usize = 8;
pub const VAR_NAMES: [&str; NVARS] = ["z1", "z2", "z3", "z4", "z1*", "z2*", "z3*", "z4*"];

pub type Monomial = [u16; NVARS];

/// Variable index of `z_i` (`i` 1-based).
pub fn z(i: usize) -> usize {
    i - 1
}

/// Variable index of `z_i*`.
pub fn zs(i: usize) -> usize {
    i + 3
}

pub fn conj_var(v: usize) -> usize {
    (v + 4) % NVARS
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct CPoly(BTreeMap<Monomial, Rational>);

impl CPoly {
    pub fn zero() -> Self {
        CPoly(BTreeMap::new())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term([0; NVARS], c);
        p
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(v: usize) -> Self {
        let mut m = [0; NVARS];
        m[v] = 1;
        let mut p = Self::zero();
        p.add_term(m, Rational::one());
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        let e = self.0.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> CPoly {
        if c.is_zero() {
            return Self::zero();
        }
        CPoly(self.0.iter().map(|(m, x)| (*m, x * c)).collect())
    }

    pub fn pow(&self, n: u32) -> CPoly {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `∂/∂v`
    pub fn derivative(&self, v: usize) -> CPoly {
        let mut out = Self::zero();
        for (m, c) in &self.0 {
            if m[v] > 0 {
                let mut m2 = *m;
                m2[v] -= 1;
                out.add_term(m2, c * Rational::from_integer(m[v].into()));
            }
        }
        out
    }

    /// Complex conjugation; coefficients are real.
    pub fn conj(&self) -> CPoly {
        let mut out = Self::zero();
        for (m, c) in &self.0 {
            let m2: Monomial = std::array::from_fn(|v| m[conj_var(v)]);
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Normal form modulo `Σ z_i z_i* - 1`, eliminating `z4 z4*`.
    pub fn reduce_sphere(&self) -> CPoly {
        let mut out = Self::zero();
        let mut work: Vec<(Monomial, Rational)> = self.0.iter().map(|(m, c)| (*m, c.clone())).collect();
        while let Some((m, c)) = work.pop() {
            if m[z(4)] > 0 && m[zs(4)] > 0 {
                let mut base = m;
                base[z(4)] -= 1;
                base[zs(4)] -= 1;
                work.push((base, c.clone()));
                for i in 1..=3 {
                    let mut t = base;
                    t[z(i)] += 1;
                    t[zs(i)] += 1;
                    work.push((t, -c.clone()));
                }
            } else {
                out.add_term(m, c);
            }
        }
        out
    }

    pub fn total_degree(&self) -> usize {
        self.0.keys().map(|m| m.iter().map(|&e| e as usize).sum()).max().unwrap_or(0)
    }
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.0.iter().rev() {
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { VAR_NAMES[v].to_string() } else { format!("{}^{e}", VAR_NAMES[v]) })
                .collect();
            match (a.is_one(), vars.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{}", vars.join(" "))?,
                (false, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a} {}", vars.join(" "))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &CPoly {
    type Output = CPoly;
    fn add(self, o: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &o.0 {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &CPoly {
    type Output = CPoly;
    fn sub(self, o: &CPoly) -> CPoly {
        self + &(-o)
    }
}

impl Neg for &CPoly {
    type Output = CPoly;
    fn neg(self) -> CPoly {
        CPoly(self.0.iter().map(|(m, c)| (*m, -c.clone())).collect())
    }
}

impl Mul for &CPoly {
    type Output = CPoly;
    fn mul(self, o: &CPoly) -> CPoly {
        let mut out = CPoly::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &o.0 {
                let m: Monomial = std::array::from_fn(|v| m1[v] + m2[v]);
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

/// `num / den` with `den` a nonzero polynomial.
#[derive(Clone, Debug)]
pub struct Frac {
    pub num: CPoly,
    pub den: CPoly,
}

impl Frac {
    pub fn new(num: CPoly, den: CPoly) -> Self {
        Frac { num, den }
    }

    pub fn poly(p: CPoly) -> Self {
        Frac { num: p, den: CPoly::one() }
    }

    pub fn add(&self, o: &Frac) -> Frac {
        if self.den == o.den {
            return Frac::new(&self.num + &o.num, self.den.clone());
        }
        Frac::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn neg(&self) -> Frac {
        Frac::new(-&self.num, self.den.clone())
    }

    pub fn sub(&self, o: &Frac) -> Frac {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Frac) -> Frac {
        Frac::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn scale(&self, c: &Rational) -> Frac {
        Frac::new(self.num.scale(c), self.den.clone())
    }

    pub fn conj(&self) -> Frac {
        Frac::new(self.num.conj(), self.den.conj())
    }

    /// Equality on the sphere: `n1 d2 - n2 d1 ≡ 0`.
    pub fn eq_on_sphere(&self, o: &Frac) -> bool {
        (&(&self.num * &o.den) - &(&o.num * &self.den)).reduce_sphere().is_zero()
    }
}
