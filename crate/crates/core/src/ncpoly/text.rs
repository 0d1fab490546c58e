//! Line-oriented presentation files.
//!
//! ```text
//! # comment
//! name sigma4q
//! generators a* a R b* b
//! star a a*
//! star b b*
//! R a = q^-2 a R
//! a a* = q^2 a* a + (1-q^2) R^2
//! ```
//!
//! Generators are listed in increasing precedence. Generators not named
//! in a `star` line are self-adjoint. Each relation is oriented by its
//! leading word. `q` is reserved for the scalar parameter.

use super::{Generator, Letter, NCPoly, NcError, RewriteRule, RewriteSystem, Word};
use crate::coeff::{parse_scalar, Scalar};

#[derive(Debug, Clone)]
pub struct PresentationText {
    pub name: String,
    pub system: RewriteSystem,
    pub relations: Vec<NCPoly>,
}

pub fn parse_presentation(src: &str) -> Result<PresentationText, NcError> {
    let mut name = String::from("unnamed");
    let mut names: Vec<String> = Vec::new();
    let mut stars: Vec<(String, String)> = Vec::new();
    let mut rel_lines: Vec<(usize, String)> = Vec::new();
    for (lineno, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("name") => name = parts.collect::<Vec<_>>().join(" "),
            Some("generators") => names.extend(parts.map(str::to_string)),
            Some("star") => {
                let v: Vec<&str> = parts.collect();
                if v.len() != 2 {
                    return Err(NcError::Parse(format!("line {}: star needs two generators", lineno + 1)));
                }
                stars.push((v[0].to_string(), v[1].to_string()));
            }
            _ => rel_lines.push((lineno + 1, line.to_string())),
        }
    }
    if names.iter().any(|n| n == "q") {
        return Err(NcError::Parse("`q` is reserved".into()));
    }
    let index = |n: &str| {
        names.iter().position(|x| x == n).map(|i| i as Letter).ok_or_else(|| NcError::UnknownGenerator(n.into()))
    };
    let mut alphabet: Vec<Generator> =
        names.iter().enumerate().map(|(i, n)| Generator { name: n.clone(), star: i as Letter }).collect();
    for (x, y) in &stars {
        let (i, j) = (index(x)?, index(y)?);
        alphabet[i as usize].star = j;
        alphabet[j as usize].star = i;
    }
    let mut relations = Vec::new();
    let mut rules = Vec::new();
    for (lineno, line) in rel_lines {
        let (l, r) = line
            .split_once('=')
            .ok_or_else(|| NcError::Parse(format!("line {lineno}: expected `lhs = rhs`")))?;
        let p = &parse_poly(l, &names)? - &parse_poly(r, &names)?;
        if let Some(rule) = RewriteRule::from_relation(&p)? {
            rules.push(rule);
        }
        relations.push(p);
    }
    Ok(PresentationText { name, system: RewriteSystem::new(alphabet, rules), relations })
}

/// Parses a polynomial such as `2 a R - (1-q^2) R^2 + q^-1 b* a`.
pub fn parse_poly(src: &str, names: &[String]) -> Result<NCPoly, NcError> {
    let toks = tokenize(src)?;
    let mut pos = 0;
    let mut out = NCPoly::zero();
    let mut sign = Scalar::one();
    if let Some(Tok::Op(c)) = toks.first() {
        if *c == '-' {
            sign = -Scalar::one();
        }
        pos = 1;
    }
    loop {
        let (term, next) = parse_term(&toks, pos, names, src)?;
        out.add_scaled(&term, &sign);
        pos = next;
        match toks.get(pos) {
            None => return Ok(out),
            Some(Tok::Op('+')) => sign = Scalar::one(),
            Some(Tok::Op('-')) => sign = -Scalar::one(),
            Some(t) => return Err(NcError::Parse(format!("unexpected {t:?} in `{src}`"))),
        }
        pos += 1;
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Scalar(String),
    Op(char),
    Pow(i32),
}

fn tokenize(src: &str) -> Result<Vec<Tok>, NcError> {
    let c: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < c.len() {
        let ch = c[i];
        if ch.is_whitespace() || ch == '*' {
            i += 1;
        } else if ch == '+' || ch == '-' {
            out.push(Tok::Op(ch));
            i += 1;
        } else if ch == '^' {
            let mut j = i + 1;
            if c.get(j) == Some(&'-') {
                j += 1;
            }
            let start = j;
            while j < c.len() && c[j].is_ascii_digit() {
                j += 1;
            }
            let e: i32 = c[i + 1..j].iter().collect::<String>().parse().map_err(|_| {
                NcError::Parse(format!("bad exponent in `{src}` at {start}"))
            })?;
            out.push(Tok::Pow(e));
            i = j;
        } else if ch == '(' {
            let mut depth = 0;
            let mut j = i;
            loop {
                match c.get(j) {
                    Some('(') => depth += 1,
                    Some(')') => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    None => return Err(NcError::Parse(format!("unbalanced parenthesis in `{src}`"))),
                    _ => {}
                }
                j += 1;
            }
            out.push(Tok::Scalar(c[i..=j].iter().collect()));
            i = j + 1;
        } else if ch.is_ascii_digit() {
            let mut j = i;
            while j < c.len() && (c[j].is_ascii_digit() || c[j] == '/') {
                j += 1;
            }
            out.push(Tok::Scalar(c[i..j].iter().collect()));
            i = j;
        } else if ch.is_alphabetic() || ch == '_' {
            let mut j = i;
            while j < c.len() && (c[j].is_alphanumeric() || c[j] == '_') {
                j += 1;
            }
            // a trailing `*` glued to a name is part of it
            if c.get(j) == Some(&'*') && !c.get(j + 1).is_some_and(|x| x.is_alphanumeric() || *x == '(') {
                j += 1;
            }
            let s: String = c[i..j].iter().collect();
            if s == "q" {
                out.push(Tok::Scalar(s));
            } else {
                out.push(Tok::Ident(s));
            }
            i = j;
        } else {
            return Err(NcError::Parse(format!("unexpected character `{ch}` in `{src}`")));
        }
    }
    Ok(out)
}

fn parse_term(toks: &[Tok], mut pos: usize, names: &[String], src: &str) -> Result<(NCPoly, usize), NcError> {
    let mut coeff = Scalar::one();
    let mut word: Vec<Letter> = Vec::new();
    let start = pos;
    while let Some(t) = toks.get(pos) {
        match t {
            Tok::Scalar(s) => {
                let mut text = s.clone();
                if let Some(Tok::Pow(e)) = toks.get(pos + 1) {
                    text = format!("({text})^{e}");
                    pos += 1;
                }
                coeff = &coeff * &parse_scalar(&text)?;
            }
            Tok::Ident(n) => {
                let x = names
                    .iter()
                    .position(|m| m == n)
                    .ok_or_else(|| NcError::UnknownGenerator(n.clone()))? as Letter;
                let mut e = 1;
                if let Some(Tok::Pow(k)) = toks.get(pos + 1) {
                    if *k < 0 {
                        return Err(NcError::Parse(format!("negative power of generator in `{src}`")));
                    }
                    e = *k as usize;
                    pos += 1;
                }
                word.extend(std::iter::repeat_n(x, e));
            }
            Tok::Op(_) => break,
            Tok::Pow(_) => return Err(NcError::Parse(format!("dangling exponent in `{src}`"))),
        }
        pos += 1;
    }
    if pos == start {
        return Err(NcError::Parse(format!("empty term in `{src}`")));
    }
    Ok((NCPoly::term(Word::from(word), coeff), pos))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_small_presentation() {
        let src = "name demo\ngenerators y x x*\nstar x x*\nx y = q^2 y x\nx* x = x x* + (1-q^2) y^2\n";
        let p = parse_presentation(src).unwrap();
        assert_eq!(p.name, "demo");
        assert_eq!(p.system.rules().len(), 2);
        assert_eq!(p.system.star_partner(1), 2);
        let s = &p.system;
        let lhs = s.nf(&parse_poly("x x y", s.names()).unwrap()).unwrap();
        assert_eq!(lhs, parse_poly("q^4 y x x", s.names()).unwrap());
    }

    #[test]
    fn coefficient_forms() {
        let names = vec!["a".to_string(), "a*".to_string()];
        let p = parse_poly("-2 a a* + 1/2 - q^-1*a*", &names).unwrap();
        assert_eq!(p.len(), 3);
        assert!(parse_poly("b", &names).is_err());
    }
}
