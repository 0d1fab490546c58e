use super::{alphabet, specialize, Presentation, MAX_RULES};
use crate::coeff::int;
use crate::ncpoly::{parse_poly, NCPoly, NcError, RewriteSystem, Word};

/// `z4` and `z4*` come last so that they are adjacent in ordered words and
/// the sphere relation can eliminate `z4 z4*` by a single rule.
const S7_NAMES: [&str; 8] = ["z1", "z2", "z3", "z1*", "z2*", "z3*", "z4", "z4*"];
const S7_STARS: [(&str, &str); 4] = [("z1", "z1*"), ("z2", "z2*"), ("z3", "z3*"), ("z4", "z4*")];

const S4_NAMES: [&str; 5] = ["R", "a*", "a", "b*", "b"];
const S4_LOC_NAMES: [&str; 6] = ["R", "Rinv", "a*", "a", "b*", "b"];
const S4_STARS: [(&str, &str); 2] = [("a", "a*"), ("b", "b*")];

/// The defining relations of the 4-sphere as printed.
pub const SIGMA4Q_RELATIONS: [&str; 7] = [
    "R a = q^-2 a R",
    "R b = q^2 b R",
    "a b = q^3 b a",
    "a b* = q^-1 b* a",
    "a a* + q^2 b b* = R - q^2 R^2",
    "a a* = q^2 a* a + (1-q^2) R^2",
    "b* b = q^4 b b* + (1-q^2) R",
];

/// Star images of the first four relations; the last three are self-adjoint.
const SIGMA4Q_STAR_RELATIONS: [&str; 4] =
    ["a* R = q^-2 R a*", "b* R = q^2 R b*", "b* a* = q^3 a* b*", "b a* = q^-1 a* b"];

const LOCALIZATION: [&str; 4] = ["R Rinv = 1", "Rinv R = 1", "Rinv a = q^2 a Rinv", "b Rinv = q^2 Rinv b"];
const LOCALIZATION_STAR: [&str; 2] = ["Rinv a* = q^-2 a* Rinv", "b* Rinv = q^-2 Rinv b*"];

/// The stereographic relations, with `zeta1 = Rinv a`, `zeta2 = b Rinv`.
pub const ZETA_RELATIONS: [&str; 4] = [
    "zeta1 zeta2 = q^-1 zeta2 zeta1",
    "zeta1 zeta1* = q^-2 zeta1* zeta1 + (1-q^2)",
    "zeta1 zeta2* = q^-1 zeta2* zeta1",
    "zeta2 zeta2* = q^2 zeta2* zeta2 - (1-q^2) q^2 - (1-q^2) zeta1* zeta1",
];

fn owned(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Parses `lhs = rhs` lines into labelled polynomials `lhs - rhs`.
fn parse_relations(lines: &[&str], names: &[String]) -> Result<Vec<(String, NCPoly)>, NcError> {
    lines
        .iter()
        .map(|line| {
            let (l, r) = line.split_once('=').ok_or_else(|| NcError::Parse(format!("expected `lhs = rhs`: {line}")))?;
            Ok((line.to_string(), &parse_poly(l, names)? - &parse_poly(r, names)?))
        })
        .collect()
}

fn complete_presentation(
    name: &str,
    names: &[&str],
    stars: &[(&str, &str)],
    labelled: Vec<(String, NCPoly)>,
    step_limit: usize,
) -> Result<Presentation, NcError> {
    let rels: Vec<NCPoly> = labelled.iter().map(|(_, p)| p.clone()).collect();
    let seed = RewriteSystem::from_relations(alphabet(names, stars), &rels, step_limit)?;
    let (system, log) = seed.complete(MAX_RULES)?;
    let stars = Presentation::letter_star(&system);
    let mut pres = Presentation::new(name, system, stars);
    pres.relations = labelled;
    pres.log = log;
    Ok(pres)
}

/// Specializes relations at `q = 1` and adds every commutator.
fn classical_relations(labelled: &[(String, NCPoly)], names: &[&str]) -> Result<Vec<(String, NCPoly)>, NcError> {
    let one = int(1);
    let mut out = Vec::new();
    for (n, p) in labelled {
        let s = specialize(p, &one)?;
        if !s.is_zero() {
            out.push((format!("{n} at q = 1"), s));
        }
    }
    for x in 0..names.len() {
        for y in x + 1..names.len() {
            let w = |a: usize, b: usize| NCPoly::word(Word::from_slice(&[a as u16, b as u16]));
            out.push((format!("{} {} = {} {}", names[y], names[x], names[x], names[y]), &w(y, x) - &w(x, y)));
        }
    }
    Ok(out)
}

fn s7_relations(names: &[String]) -> Result<Vec<(String, NCPoly)>, NcError> {
    let mut lines = Vec::new();
    for i in 1..=4 {
        for j in i + 1..=4 {
            lines.push(format!("z{i} z{j} = q z{j} z{i}"));
            lines.push(format!("z{j}* z{i}* = q z{i}* z{j}*"));
        }
        for j in 1..=4 {
            if i != j {
                lines.push(format!("z{j}* z{i} = q z{i} z{j}*"));
            }
        }
    }
    for k in 1..=4 {
        let tail: Vec<String> = (1..k).map(|j| format!(" + (1-q^2) z{j} z{j}*")).collect();
        lines.push(format!("z{k}* z{k} = z{k} z{k}*{}", tail.concat()));
    }
    lines.push("z1 z1* + z2 z2* + z3 z3* + z4 z4* = 1".into());
    let refs: Vec<&str> = lines.iter().map(String::as_str).collect();
    parse_relations(&refs, names)
}

/// Registers `a, b, R` and their adjoints as sphere elements.
fn register_sphere_elements(pres: &mut Presentation, classical: bool) -> Result<(), NcError> {
    let defs = [("a", "z1 z4* - z2 z3*"), ("b", "z1 z3 + q^-1 z2 z4"), ("R", "z1 z1* + z2 z2*")];
    for (n, src) in defs {
        let mut p = parse_poly(src, pres.names())?;
        if classical {
            p = specialize(&p, &int(1))?;
        }
        let p = pres.nf(&p)?;
        let s = pres.star(&p)?;
        pres.elements.insert(n.to_string(), p);
        if n != "R" {
            pres.elements.insert(format!("{n}*"), s);
        }
    }
    Ok(())
}

/// The odd sphere: `z4 z4*` is eliminated by the sphere relation.
pub fn build_s7q(step_limit: usize) -> Result<Presentation, NcError> {
    let rels = s7_relations(&owned(&S7_NAMES))?;
    let mut pres = complete_presentation("s7q", &S7_NAMES, &S7_STARS, rels, step_limit)?;
    register_sphere_elements(&mut pres, false)?;
    Ok(pres)
}

pub fn build_classical_s7(step_limit: usize) -> Result<Presentation, NcError> {
    let rels = classical_relations(&s7_relations(&owned(&S7_NAMES))?, &S7_NAMES)?;
    let mut pres = complete_presentation("classical-s7", &S7_NAMES, &S7_STARS, rels, step_limit)?;
    register_sphere_elements(&mut pres, true)?;
    Ok(pres)
}

/// Labelled relations of the 4-sphere over the given alphabet.
pub fn sigma4q_relations(names: &[String], with_stars: bool) -> Result<Vec<(String, NCPoly)>, NcError> {
    let mut lines: Vec<&str> = SIGMA4Q_RELATIONS.to_vec();
    if with_stars {
        lines.extend(SIGMA4Q_STAR_RELATIONS);
    }
    parse_relations(&lines, names)
}

/// The uncompleted system obtained from the relations, optionally
/// together with their star images.
pub fn sigma4q_seed(with_stars: bool, step_limit: usize) -> Result<RewriteSystem, NcError> {
    let rels: Vec<NCPoly> = sigma4q_relations(&owned(&S4_NAMES), with_stars)?.into_iter().map(|(_, p)| p).collect();
    RewriteSystem::from_relations(alphabet(&S4_NAMES, &S4_STARS), &rels, step_limit)
}

pub fn build_sigma4q(step_limit: usize) -> Result<Presentation, NcError> {
    let rels = sigma4q_relations(&owned(&S4_NAMES), true)?;
    complete_presentation("sigma4q", &S4_NAMES, &S4_STARS, rels, step_limit)
}

pub fn build_classical_s4(step_limit: usize) -> Result<Presentation, NcError> {
    let rels = classical_relations(&sigma4q_relations(&owned(&S4_NAMES), true)?, &S4_NAMES)?;
    complete_presentation("classical-s4", &S4_NAMES, &S4_STARS, rels, step_limit)
}

/// The 4-sphere with `R` inverted; `zeta1`, `zeta2` and adjoints are
/// registered as elements.
pub fn build_sigma4q_localized(step_limit: usize) -> Result<Presentation, NcError> {
    let names = owned(&S4_LOC_NAMES);
    let mut rels = sigma4q_relations(&names, true)?;
    let mut extra: Vec<&str> = LOCALIZATION.to_vec();
    extra.extend(LOCALIZATION_STAR);
    rels.extend(parse_relations(&extra, &names)?);
    let mut pres = complete_presentation("sigma4q-loc", &S4_LOC_NAMES, &S4_STARS, rels, step_limit)?;
    for (n, src) in [("zeta1", "Rinv a"), ("zeta2", "b Rinv"), ("zeta1*", "a* Rinv"), ("zeta2*", "Rinv b*")] {
        let p = pres.parse(src)?;
        pres.elements.insert(n.to_string(), p);
    }
    Ok(pres)
}

/// Residuals of the stereographic relations in the localized algebra.
pub fn zeta_residuals(loc: &Presentation) -> Result<Vec<(String, NCPoly)>, NcError> {
    let names: Vec<String> = ["zeta1", "zeta2", "zeta1*", "zeta2*"].iter().map(|s| s.to_string()).collect();
    let images: Vec<NCPoly> = names.iter().map(|n| loc.get(n)).collect();
    parse_relations(&ZETA_RELATIONS, &names)?
        .into_iter()
        .map(|(label, p)| {
            let mut out = NCPoly::zero();
            for (w, c) in p.terms() {
                let factors: Vec<&NCPoly> = w.letters().iter().map(|&x| &images[x as usize]).collect();
                out.add_scaled(&loc.product(&factors)?, c);
            }
            Ok((label, out))
        })
        .collect()
}

/// One relation of the 4-sphere pushed into the odd sphere.
#[derive(Debug, Clone)]
pub struct EmbeddingCheck {
    pub relation: String,
    pub residual: NCPoly,
}

impl EmbeddingCheck {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Substitutes the z-expressions of `a, a*, R, b*, b` (registered in
/// `s7`) into every stored relation of `s4` and reduces in `s7`.
pub fn verify_embedding(s4: &Presentation, s7: &Presentation) -> Result<Vec<EmbeddingCheck>, NcError> {
    let images: Vec<NCPoly> = s4.names().iter().map(|n| s7.get(n)).collect();
    s4.relations
        .iter()
        .map(|(label, p)| Ok(EmbeddingCheck { relation: label.clone(), residual: s4.substitute(p, &images, s7)? }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::DEFAULT_STEP_LIMIT;

    #[test]
    fn s7_sample_reductions() {
        let s7 = build_s7q(DEFAULT_STEP_LIMIT).unwrap();
        assert!(s7.system.obstructions().unwrap().is_empty());
        let lhs = s7.parse("z3* z1").unwrap();
        assert_eq!(lhs, s7.parse("q z1 z3*").unwrap());
        assert_eq!(s7.parse("z1 z1* + z2 z2* + z3 z3* + z4 z4*").unwrap(), NCPoly::one());
        assert_eq!(s7.parse("z2* z2").unwrap(), s7.parse("z2 z2* + (1-q^2) z1 z1*").unwrap());
        assert_eq!(s7.parse("z2 z1").unwrap(), s7.parse("q^-1 z1 z2").unwrap());
    }

    #[test]
    fn sigma4q_completes_and_embeds() {
        let s4 = build_sigma4q(DEFAULT_STEP_LIMIT).unwrap();
        assert!(s4.system.obstructions().unwrap().is_empty());
        let s7 = build_s7q(DEFAULT_STEP_LIMIT).unwrap();
        for c in verify_embedding(&s4, &s7).unwrap() {
            assert!(c.passed(), "{}: {}", c.relation, s7.render(&c.residual));
        }
    }

    #[test]
    fn classical_embedding() {
        let s4 = build_classical_s4(DEFAULT_STEP_LIMIT).unwrap();
        let s7 = build_classical_s7(DEFAULT_STEP_LIMIT).unwrap();
        for c in verify_embedding(&s4, &s7).unwrap() {
            assert!(c.passed(), "{}: {}", c.relation, s7.render(&c.residual));
        }
    }

    #[test]
    fn seed_without_stars_is_not_confluent() {
        let seed = sigma4q_seed(false, DEFAULT_STEP_LIMIT).unwrap();
        assert!(!seed.obstructions().unwrap().is_empty());
    }

    #[test]
    fn localized_and_zeta() {
        let loc = build_sigma4q_localized(DEFAULT_STEP_LIMIT).unwrap();
        assert!(loc.system.obstructions().unwrap().is_empty());
        for (n, r) in zeta_residuals(&loc).unwrap() {
            assert!(r.is_zero(), "{n}: {}", loc.render(&r));
        }
        assert_eq!(loc.parse("a Rinv").unwrap(), loc.parse("q^-2 Rinv a").unwrap());
    }

    #[test]
    fn sigma4q_basis_pattern() {
        let s4 = build_sigma4q(DEFAULT_STEP_LIMIT).unwrap();
        let (bs, b) = (s4.letter("b*").unwrap(), s4.letter("b").unwrap());
        for d in 0..=4 {
            let words = s4.system.irreducible_words(d);
            for w in &words {
                let l = w.letters();
                assert!(l.windows(2).all(|p| p[0] <= p[1]));
                assert!(!(l.contains(&bs) && l.contains(&b)));
            }
            // R^j a*^i a^k times a pure b* or b power
            let count: usize = (0..=d).map(|e| (if e == 0 { 1 } else { 2 }) * (d - e + 1) * (d - e + 2) / 2).sum();
            assert_eq!(words.len(), count, "degree {d}");
        }
    }
}
