//! Exact scalars `c · √r` with rational `c` and positive integer `r`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::FockError;
use crate::coeff::Rational;

const SMALL_PRIMES: [u32; 25] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

/// `coeff · √radicand`. The radicand is a positive integer with all
/// square factors that gcd splitting and small-prime division detect
/// moved into the coefficient; zero is stored with radicand 1.
#[derive(Clone)]
pub struct RadicalScalar {
    coeff: Rational,
    radicand: BigInt,
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl RadicalScalar {
    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rational(c: Rational) -> Self {
        RadicalScalar { coeff: c, radicand: BigInt::one() }
    }

    /// `c · √r` for a nonnegative rational `r`.
    pub fn new(c: Rational, r: &Rational) -> Self {
        assert!(!r.is_negative(), "negative radicand");
        if c.is_zero() || r.is_zero() {
            return Self::zero();
        }
        // √(p/s) = √(p s) / s
        let s = r.denom().clone();
        let rad = r.numer() * &s;
        Self::canonical(c / Rational::from_integer(s), rad)
    }

    fn canonical(mut coeff: Rational, mut rad: BigInt) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        if let Some(root) = exact_sqrt(&rad) {
            return Self::rational(coeff * Rational::from_integer(root));
        }
        for p in SMALL_PRIMES {
            let p2 = BigInt::from(p * p);
            while (&rad % &p2).is_zero() {
                rad /= &p2;
                coeff *= Rational::from_integer(BigInt::from(p));
            }
        }
        RadicalScalar { coeff, radicand: rad }
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.radicand.is_one().then(|| self.coeff.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let g = num_integer::Integer::gcd(&self.radicand, &o.radicand);
        let rad = (&self.radicand / &g) * (&o.radicand / &g);
        Self::canonical(&self.coeff * &o.coeff * Rational::from_integer(g), rad)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::canonical(&self.coeff * c, self.radicand.clone())
    }

    pub fn neg(&self) -> Self {
        RadicalScalar { coeff: -self.coeff.clone(), radicand: self.radicand.clone() }
    }

    /// Coefficient of `self` over `√r`, when `self` is a rational multiple of it.
    fn over(&self, r: &BigInt) -> Option<Rational> {
        if self.radicand == *r {
            return Some(self.coeff.clone());
        }
        // c √A = c √(AB) / B · √B
        let k = exact_sqrt(&(&self.radicand * r))?;
        Some(&self.coeff * Rational::new(k, r.clone()))
    }

    pub fn add(&self, o: &Self) -> Result<Self, FockError> {
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(o.clone());
        }
        let c = self.over(&o.radicand).ok_or_else(|| FockError::RadicalMixing {
            left: self.to_string(),
            right: o.to_string(),
        })?;
        Ok(Self::canonical(c + &o.coeff, o.radicand.clone()))
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64().unwrap_or(f64::NAN) * self.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    pub fn abs(&self) -> Self {
        RadicalScalar { coeff: self.coeff.abs(), radicand: self.radicand.clone() }
    }
}

impl PartialEq for RadicalScalar {
    fn eq(&self, o: &Self) -> bool {
        match (self.is_zero(), o.is_zero()) {
            (true, true) => true,
            (false, false) => self.over(&o.radicand).is_some_and(|c| c == o.coeff),
            _ => false,
        }
    }
}

impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{} √{}", self.coeff, self.radicand)
        }
    }
}

impl fmt::Debug for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{int, rat};

    #[test]
    fn canonical_forms() {
        let s = RadicalScalar::new(int(1), &rat(3, 4));
        assert_eq!(s.coeff(), &rat(1, 2));
        assert_eq!(s.radicand(), &BigInt::from(3));
        assert_eq!(RadicalScalar::new(int(2), &int(18)).radicand(), &BigInt::from(2));
        assert_eq!(s.mul(&s).as_rational(), Some(rat(3, 4)));
        let t = RadicalScalar::new(int(1), &int(12));
        assert_eq!(t, RadicalScalar::new(int(2), &int(3)));
        assert_eq!(t.add(&s).unwrap(), RadicalScalar::new(rat(5, 2), &int(3)));
        assert!(t.add(&RadicalScalar::new(int(1), &int(2))).is_err());
        assert!((s.to_f64() - 0.75f64.sqrt()).abs() < 1e-15);
    }
}
