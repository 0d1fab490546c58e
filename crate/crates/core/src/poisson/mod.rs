//! Semiclassical layer: the Lie bialgebra of u(4), quadratic brackets on
//! `ℂ⁴` and their comparison with `q → 1` limits of commutators.

pub mod bracket;
pub mod lie;
pub mod poly;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebras::{build_s7q, build_sigma4q, build_sigma4q_localized, Presentation};
use crate::coeff::{int, CoeffError, Rational};
use crate::ncpoly::{NCPoly, NcError};
use bracket::{BracketTable, Diagonal};
use poly::{conj_var, z, zs, CPoly, Frac, NVARS, VAR_NAMES};

#[derive(Debug, Error)]
pub enum PoissonError {
    #[error("commutator [{x}, {y}] does not vanish at q = 1")]
    LimitDiverges { x: String, y: String },
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// `lim_{q→1} nf(xy - yx) / (q - 1)`, coefficientwise.
pub fn commutator_limit(pres: &Presentation, x: &NCPoly, y: &NCPoly) -> Result<NCPoly, PoissonError> {
    let c = pres.commutator(x, y)?;
    let one = int(1);
    let mut out = NCPoly::zero();
    for (w, k) in c.terms() {
        if !num_traits::Zero::is_zero(&k.eval_at(&one)?) {
            return Err(PoissonError::LimitDiverges { x: pres.render(x), y: pres.render(y) });
        }
        out.add_term(w.clone(), k.derivative().eval_at(&one)?.into());
    }
    Ok(out)
}

fn mono(u: usize, v: usize) -> CPoly {
    &CPoly::var(u) * &CPoly::var(v)
}

/// `R = z1 z1* + z2 z2*`
pub fn classical_r() -> CPoly {
    &mono(z(1), zs(1)) + &mono(z(2), zs(2))
}

/// `a = z1 z4* - z2 z3*`
pub fn classical_a() -> CPoly {
    &mono(z(1), zs(4)) - &mono(z(2), zs(3))
}

/// `b = z1 z3 + z2 z4`
pub fn classical_b() -> CPoly {
    &mono(z(1), z(3)) + &mono(z(2), z(4))
}

/// Classical value of a generator of S^7_q, the 4-sphere or its localization.
pub fn classical_generator(name: &str) -> Option<Frac> {
    if let Some(v) = VAR_NAMES.iter().position(|n| *n == name) {
        return Some(Frac::poly(CPoly::var(v)));
    }
    let p = match name {
        "R" => classical_r(),
        "a" => classical_a(),
        "a*" => classical_a().conj(),
        "b" => classical_b(),
        "b*" => classical_b().conj(),
        "Rinv" => return Some(Frac::new(CPoly::one(), classical_r())),
        _ => return None,
    };
    Some(Frac::poly(p))
}

/// Commutative image of a polynomial with rational coefficients.
pub fn classical_image(pres: &Presentation, p: &NCPoly) -> Result<Frac, PoissonError> {
    let gens: Vec<Frac> =
        pres.names().iter().map(|n| classical_generator(n).expect("generator has a classical value")).collect();
    let mut out = Frac::poly(CPoly::zero());
    for (w, c) in p.terms() {
        let c: Rational = c.eval_at(&int(1))?;
        let t = w.letters().iter().fold(Frac::poly(CPoly::constant(c)), |acc, &x| acc.mul(&gens[x as usize]));
        out = out.add(&t);
    }
    Ok(out)
}

/// The table `{u, v} = s · lim [u, v]/(q-1)` on the generators of S^7_q.
pub fn derived_table(s7: &Presentation, s: i64) -> Result<BracketTable, PoissonError> {
    let mut entries = vec![vec![CPoly::zero(); NVARS]; NVARS];
    for u in 0..NVARS {
        for v in 0..NVARS {
            let (x, y) = (s7.gen(VAR_NAMES[u]), s7.gen(VAR_NAMES[v]));
            let img = classical_image(s7, &commutator_limit(s7, &x, &y)?)?;
            debug_assert_eq!(img.den, CPoly::one());
            entries[u][v] = img.num.scale(&int(s));
        }
    }
    Ok(BracketTable::from_entries(entries))
}

/// Star-closes a list of brackets using antisymmetry and
/// `{x*, y*} = -{x, y}*`.
fn star_close(
    names: &[&str],
    star: impl Fn(&str) -> String,
    printed: Vec<(&str, &str, Frac)>,
) -> Vec<(String, String, Frac)> {
    let mut out: Vec<(String, String, Frac)> = Vec::new();
    let mut push = |x: String, y: String, p: Frac| {
        if !out.iter().any(|(a, b, _)| *a == x && *b == y) {
            out.push((x, y, p));
        }
    };
    for (x, y, p) in printed {
        let (xs, ys) = (star(x), star(y));
        push(x.to_string(), y.to_string(), p.clone());
        push(y.to_string(), x.to_string(), p.neg());
        push(xs.clone(), ys.clone(), p.conj().neg());
        push(ys, xs, p.conj());
    }
    for x in names {
        push(x.to_string(), x.to_string(), Frac::poly(CPoly::zero()));
    }
    out
}

fn star_name(n: &str) -> String {
    match n.strip_suffix('*') {
        Some(base) => base.to_string(),
        None if n == "R" => n.to_string(),
        None => format!("{n}*"),
    }
}

pub const SIGMA4_GENERATORS: [&str; 5] = ["R", "a", "a*", "b", "b*"];
pub const ZETA_GENERATORS: [&str; 4] = ["zeta1", "zeta2", "zeta1*", "zeta2*"];

/// The printed brackets of `R, a, b`, closed under star and antisymmetry.
pub fn printed_sigma4_table() -> Vec<(String, String, Frac)> {
    let (r, a, b) = (classical_r(), classical_a(), classical_b());
    let (ac, bc) = (a.conj(), b.conj());
    let f = Frac::poly;
    let printed = vec![
        ("a", "R", f((&a * &r).scale(&int(-2)))),
        ("b", "R", f((&b * &r).scale(&int(2)))),
        ("a", "b", f((&a * &b).scale(&int(-3)))),
        ("a", "b*", f(&a * &bc)),
        ("a", "a*", f(&(&a * &ac).scale(&int(-2)) + &(&r * &r).scale(&int(2)))),
        ("b", "b*", f(&(&b * &bc).scale(&int(4)) - &r.scale(&int(2)))),
    ];
    star_close(&SIGMA4_GENERATORS, star_name, printed)
}

pub fn zeta_value(name: &str) -> Frac {
    let r = classical_r();
    let num = match name {
        "zeta1" => classical_a(),
        "zeta2" => classical_b(),
        "zeta1*" => classical_a().conj(),
        "zeta2*" => classical_b().conj(),
        _ => panic!("unknown stereographic coordinate {name}"),
    };
    Frac::new(num, r)
}

/// The printed stereographic brackets, closed under star and antisymmetry.
pub fn printed_zeta_table() -> Vec<(String, String, Frac)> {
    let [z1, z2, z1s, z2s] = ZETA_GENERATORS.map(zeta_value);
    let one = Frac::poly(CPoly::one());
    let n1 = z1.mul(&z1s);
    let n2 = z2.mul(&z2s);
    let printed = vec![
        ("zeta1", "zeta2", z1.mul(&z2)),
        ("zeta1", "zeta1*", one.add(&n1).scale(&int(2))),
        ("zeta1", "zeta2*", z1.mul(&z2s)),
        ("zeta2", "zeta2*", one.add(&n1).add(&n2).scale(&int(-2))),
    ];
    star_close(&ZETA_GENERATORS, star_name, printed)
}

/// One bracket compared with its printed value.
#[derive(Debug, Clone)]
pub struct PairCheck {
    pub x: String,
    pub y: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

fn render(f: &Frac) -> String {
    if f.den == CPoly::one() {
        f.num.to_string()
    } else {
        format!("({}) / ({})", f.num, f.den)
    }
}

/// Verifies a printed table against the bracket of `table`, on the sphere.
pub fn verify_table(
    table: &BracketTable,
    value: impl Fn(&str) -> Frac,
    printed: &[(String, String, Frac)],
) -> Vec<PairCheck> {
    printed
        .iter()
        .map(|(x, y, p)| {
            let got = table.bracket_frac(&value(x), &value(y));
            PairCheck { x: x.clone(), y: y.clone(), expected: render(p), computed: render(&got), passed: got.eq_on_sphere(p) }
        })
        .collect()
}

pub fn sigma4_value(name: &str) -> Frac {
    classical_generator(name).expect("4-sphere generator")
}

/// Ratio between a commutator limit and a printed bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ratio {
    BothZero,
    Sign(i64),
    Mismatch,
}

#[derive(Debug, Clone)]
pub struct LimitPair {
    pub algebra: &'static str,
    pub x: String,
    pub y: String,
    pub limit: String,
    pub printed: String,
    pub ratio: Ratio,
}

#[derive(Debug, Clone)]
pub struct LimitReport {
    pub pairs: Vec<LimitPair>,
    /// The global sign `s` with `limit = s {x, y}` for every pair, if any.
    pub sign: Option<i64>,
}

fn ratio(limit: &Frac, printed: &Frac) -> Ratio {
    let zero = Frac::poly(CPoly::zero());
    match (limit.eq_on_sphere(&zero), printed.eq_on_sphere(&zero)) {
        (true, true) => Ratio::BothZero,
        (true, false) | (false, true) => Ratio::Mismatch,
        _ if limit.eq_on_sphere(printed) => Ratio::Sign(1),
        _ if limit.eq_on_sphere(&printed.neg()) => Ratio::Sign(-1),
        _ => Ratio::Mismatch,
    }
}

fn limit_pairs(
    algebra: &'static str,
    pres: &Presentation,
    printed: &[(String, String, Frac)],
) -> Result<Vec<LimitPair>, PoissonError> {
    let mut out = Vec::new();
    for (x, y, p) in printed {
        let l = classical_image(pres, &commutator_limit(pres, &pres.get(x), &pres.get(y))?)?;
        out.push(LimitPair {
            algebra,
            x: x.clone(),
            y: y.clone(),
            limit: render(&l),
            printed: render(p),
            ratio: ratio(&l, p),
        });
    }
    Ok(out)
}

/// Compares `q → 1` commutator limits on the 4-sphere and the stereographic
/// coordinates with the printed brackets, and finds the global sign.
pub fn semiclassical_limit_check(step_limit: usize) -> Result<LimitReport, PoissonError> {
    let s4 = build_sigma4q(step_limit)?;
    let loc = build_sigma4q_localized(step_limit)?;
    let mut pairs = limit_pairs("sigma4q", &s4, &printed_sigma4_table())?;
    pairs.extend(limit_pairs("sigma4q-loc", &loc, &printed_zeta_table())?);
    let signs: Vec<Ratio> = pairs.iter().map(|p| p.ratio).filter(|r| *r != Ratio::BothZero).collect();
    let sign = match signs.first() {
        Some(Ratio::Sign(s)) if signs.iter().all(|r| *r == Ratio::Sign(*s)) => Some(*s),
        _ => None,
    };
    Ok(LimitReport { pairs, sign })
}

/// The diagonal bracket `{z_j*, z_j}` as printed and as derived.
#[derive(Debug, Clone)]
pub struct DiagonalEntry {
    pub j: usize,
    pub printed: String,
    pub derived: String,
}

/// The full bracket report over the derived table.
#[derive(Debug, Clone)]
pub struct BracketReport {
    pub sign: i64,
    pub diagonal: Vec<DiagonalEntry>,
    /// `c` with `derived = c · printed` on the off-diagonal generator table.
    pub printed_offdiagonal_sign: Option<i64>,
    pub sigma4: Vec<PairCheck>,
    pub zeta: Vec<PairCheck>,
    /// `{Σ z_i z_i* - 1, z_k}` on the sphere.
    pub sphere_casimir: bool,
    /// `{|a|² + |b|² - R(1-R), x}` on the sphere for the 4-sphere generators.
    pub sigma4_relation_respected: bool,
}

impl BracketReport {
    pub fn passed(&self) -> bool {
        self.printed_offdiagonal_sign.is_some()
            && self.sigma4.iter().all(|c| c.passed)
            && self.zeta.iter().all(|c| c.passed)
            && self.sphere_casimir
            && self.sigma4_relation_respected
    }
}

pub fn sphere_function() -> CPoly {
    &(1..=4).fold(CPoly::zero(), |acc, i| &acc + &mono(z(i), zs(i))) - &CPoly::one()
}

pub fn sigma4_sphere_function() -> CPoly {
    let (r, a, b) = (classical_r(), classical_a(), classical_b());
    &(&(&a * &a.conj()) + &(&b * &b.conj())) - &(&r * &(&CPoly::one() - &r))
}

pub fn bracket_report(table: &BracketTable, sign: i64) -> BracketReport {
    let printed = BracketTable::new(Diagonal::Printed);
    let diagonal = (1..=4)
        .map(|j| DiagonalEntry {
            j,
            printed: printed.entry(zs(j), z(j)).to_string(),
            derived: table.entry(zs(j), z(j)).to_string(),
        })
        .collect();
    let offdiag: Vec<(usize, usize)> =
        (0..NVARS).flat_map(|u| (0..NVARS).map(move |v| (u, v))).filter(|&(u, v)| conj_var(u) != v).collect();
    let printed_offdiagonal_sign = [1, -1].into_iter().find(|&c| {
        offdiag.iter().all(|&(u, v)| *table.entry(u, v) == printed.entry(u, v).scale(&int(c)))
    });
    let sigma4 = verify_table(table, sigma4_value, &printed_sigma4_table());
    let zeta = verify_table(table, zeta_value, &printed_zeta_table());
    let sph = sphere_function();
    let sphere_casimir = (0..NVARS).all(|v| table.bracket(&sph, &CPoly::var(v)).reduce_sphere().is_zero());
    let s4 = sigma4_sphere_function();
    let sigma4_relation_respected = SIGMA4_GENERATORS
        .iter()
        .all(|x| table.bracket(&s4, &sigma4_value(x).num).reduce_sphere().is_zero());
    BracketReport {
        sign,
        diagonal,
        printed_offdiagonal_sign,
        sigma4,
        zeta,
        sphere_casimir,
        sigma4_relation_respected,
    }
}

/// Builds the derived table for the sign found by the limit check.
pub fn derive_brackets(step_limit: usize) -> Result<(LimitReport, Option<(BracketTable, BracketReport)>), PoissonError> {
    let limits = semiclassical_limit_check(step_limit)?;
    let Some(s) = limits.sign else { return Ok((limits, None)) };
    let s7 = build_s7q(step_limit)?;
    let table = derived_table(&s7, s)?;
    let report = bracket_report(&table, s);
    Ok((limits, Some((table, report))))
}

#[derive(Debug, Clone)]
pub struct JacobiReport {
    pub triples: usize,
    pub failures: Vec<String>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> CPoly {
    let mut p = CPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let d = rng.gen_range(0..=degree);
        let mut m = [0u16; NVARS];
        for _ in 0..d {
            m[rng.gen_range(0..NVARS)] += 1;
        }
        p.add_term(m, int(rng.gen_range(-3..=3)));
    }
    p
}

/// Jacobi identity on all generator triples and `samples` random triples
/// of degree `<= sample_degree`, exactly on `ℂ⁴`.
pub fn jacobi_check(table: &BracketTable, sample_degree: usize, samples: usize, seed: u64) -> JacobiReport {
    let mut failures = Vec::new();
    let mut triples = 0;
    let vars: Vec<CPoly> = (0..NVARS).map(CPoly::var).collect();
    for u in 0..NVARS {
        for v in u + 1..NVARS {
            for w in v + 1..NVARS {
                triples += 1;
                if !table.jacobi(&vars[u], &vars[v], &vars[w]).is_zero() {
                    failures.push(format!("({}, {}, {})", VAR_NAMES[u], VAR_NAMES[v], VAR_NAMES[w]));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (f, g, h) = (random_poly(&mut rng, sample_degree), random_poly(&mut rng, sample_degree), random_poly(&mut rng, sample_degree));
        triples += 1;
        if !table.jacobi(&f, &g, &h).is_zero() {
            failures.push(format!("({f}, {g}, {h})"));
        }
    }
    JacobiReport { triples, failures }
}
