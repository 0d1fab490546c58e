//! Text grammar for scalars:
//!
//! ```text
//! expr  := [+-] term (('+'|'-') term)*
//! term  := power (('*'|'/') power | power)*
//! power := atom ('^' ['-'] int)?
//! atom  := int | 'q' | '(' expr ')'
//! ```
//!
//! Juxtaposition is multiplication, so `2q^3` and `(1-q)(1+q)` parse.

use num_bigint::BigInt;

use super::{CoeffError, Rational, RatFn};

pub fn parse_scalar(input: &str) -> Result<RatFn, CoeffError> {
    let mut p = Parser { src: input, chars: input.char_indices().collect(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Parses `p/r` or an integer into an exact rational. Decimal points are rejected.
pub fn parse_rational(input: &str) -> Result<Rational, CoeffError> {
    let bad = |reason: &str| CoeffError::Parse { input: input.to_string(), reason: reason.to_string() };
    let s = input.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad("expected integer numerator"))?;
    let d: BigInt = d.parse().map_err(|_| bad("expected integer denominator"))?;
    if d == BigInt::from(0) {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> CoeffError {
        CoeffError::Parse {
            input: self.src.to_string(),
            reason: format!("{reason} at offset {}", self.chars.get(self.pos).map_or(self.src.len(), |c| c.0)),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn expr(&mut self) -> Result<RatFn, CoeffError> {
        let mut neg = false;
        match self.peek() {
            Some('-') => {
                neg = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFn, CoeffError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    acc = acc.div(&d)?;
                }
                Some(c) if c == '(' || c == 'q' || c.is_ascii_digit() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatFn, CoeffError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = self.integer()?;
        let e: i32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
        base.pow(if neg { -e } else { e })
    }

    fn integer(&mut self) -> Result<BigInt, CoeffError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<RatFn, CoeffError> {
        match self.peek() {
            Some('q') => {
                self.pos += 1;
                Ok(RatFn::q())
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFn::from(Rational::from_integer(n)))
            }
            _ => Err(self.err("expected atom")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    #[test]
    fn grammar_samples() {
        let a = parse_scalar("(1-q^2)^2/(1-q^4)").unwrap();
        let b = parse_scalar("(1-q^2)/(1+q^2)").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_scalar("2q^3").unwrap(), parse_scalar("2*q*q*q").unwrap());
        assert_eq!(parse_scalar("(1-q)(1+q)").unwrap(), parse_scalar("1-q^2").unwrap());
        assert!(parse_scalar("1/(q-q)").is_err());
        assert!(parse_scalar("1 +").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -3 ").unwrap(), rat(-3, 1));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
