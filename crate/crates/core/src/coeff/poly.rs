//! Dense univariate polynomials over the rationals.
//!
//! Only used internally for gcd computations when reducing rational
//! functions; all public scalar types are sparse Laurent polynomials.

use num_traits::{One, Zero};

use super::Rational;

/// Coefficient vector, index = power of q. Trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct DensePoly(pub Vec<Rational>);

impl DensePoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        DensePoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> &Rational {
        self.0.last().expect("lead of zero polynomial")
    }

    pub fn scale(&self, c: &Rational) -> Self {
        DensePoly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        let inv = self.lead().recip();
        self.scale(&inv)
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &DensePoly) -> (DensePoly, DensePoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (DensePoly(Vec::new()), DensePoly::new(r));
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        let inv = d.lead().recip();
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                r[k + j] -= &c * dj;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (DensePoly::new(q), DensePoly::new(r))
    }

    /// Monic gcd; gcd(0, 0) is reported as 1.
    pub fn gcd(a: &DensePoly, b: &DensePoly) -> DensePoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        if x.is_zero() {
            DensePoly(vec![Rational::one()])
        } else {
            x.monic()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> DensePoly {
        DensePoly::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (1 - q^2) = (1-q)(1+q), (1 - q^4) = (1-q)(1+q)(1+q^2)
        let g = DensePoly::gcd(&p(&[1, 0, -1]), &p(&[1, 0, 0, 0, -1]));
        assert_eq!(g, p(&[-1, 0, 1]).monic());
    }

    #[test]
    fn div_rem_exact() {
        let (q, r) = p(&[1, 0, 0, 0, -1]).div_rem(&p(&[1, 0, -1]));
        assert!(r.is_zero());
        assert_eq!(q, p(&[1, 0, 1]));
    }
}
