//! Named verification suites. Each check is recorded, never thrown.

use std::fmt::Display;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::algebras::{self, build_s7q, build_sigma4q, build_sigma4q_localized, verify_embedding, zeta_residuals};
use crate::bundle::{self, NCMatrix, G_PRINTED};
use crate::chern::{self, CyclicComplex};
use crate::coeff::{parse_rational, rat, RatFn, Rational};
use crate::fock;
use crate::ncpoly::{NCPoly, DEFAULT_STEP_LIMIT};
use crate::poisson::{self, lie};
use crate::quotient::{Coaction, Quotient};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const STEP_LIMIT_ENV: &str = "QSPHERE_STEP_LIMIT";

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("unknown suite {0}")]
    UnknownSuite(String),
    #[error("q must be a rational p/r in (0, 1), got {0}")]
    InvalidQ(String),
    #[error("cutoff must be at least 1")]
    InvalidCutoff,
    #[error("degree bound must be at least 2, got {0}")]
    InvalidDegree(usize),
    #[error("invalid step limit {0}")]
    InvalidStepLimit(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Presentations,
    Quotient,
    Bundle,
    Poisson,
    Fock,
    Chern,
}

pub const ALL_SUITES: [Suite; 6] =
    [Suite::Presentations, Suite::Quotient, Suite::Bundle, Suite::Poisson, Suite::Fock, Suite::Chern];

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Presentations => "presentations",
            Suite::Quotient => "quotient",
            Suite::Bundle => "bundle",
            Suite::Poisson => "poisson",
            Suite::Fock => "fock",
            Suite::Chern => "chern",
        }
    }

    /// `all` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>, ConfigError> {
        if s == "all" {
            return Ok(ALL_SUITES.to_vec());
        }
        ALL_SUITES.iter().find(|x| x.name() == s).map(|x| vec![*x]).ok_or_else(|| ConfigError::UnknownSuite(s.into()))
    }
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_SUITES.iter().copied().find(|x| x.name() == s).ok_or_else(|| ConfigError::UnknownSuite(s.into()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteConfig {
    pub suites: Vec<Suite>,
    #[serde(serialize_with = "as_string")]
    pub q0: Rational,
    pub cutoff: u32,
    pub degree_bound: usize,
    pub step_limit: usize,
    pub parallelism: usize,
}

fn as_string<S: serde::Serializer, T: Display>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: ALL_SUITES.to_vec(),
            q0: fock::default_q0(),
            cutoff: fock::DEFAULT_CUTOFF,
            degree_bound: chern::DEFAULT_DEGREE_BOUND,
            step_limit: DEFAULT_STEP_LIMIT,
            parallelism: 1,
        }
    }
}

/// Parses `p/r` (or an integer); decimals are rejected.
pub fn parse_q(s: &str) -> Result<Rational, ConfigError> {
    if s.contains('.') || s.contains('e') {
        return Err(ConfigError::InvalidQ(s.into()));
    }
    let q = parse_rational(s).map_err(|_| ConfigError::InvalidQ(s.into()))?;
    if q <= rat(0, 1) || q >= rat(1, 1) {
        return Err(ConfigError::InvalidQ(s.into()));
    }
    Ok(q)
}

/// Step limit from the environment, if set.
pub fn step_limit_from_env() -> Result<Option<usize>, ConfigError> {
    match std::env::var(STEP_LIMIT_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| ConfigError::InvalidStepLimit(v)),
        Err(_) => Ok(None),
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.q0 <= rat(0, 1) || self.q0 >= rat(1, 1) {
            return Err(ConfigError::InvalidQ(self.q0.to_string()));
        }
        if self.cutoff < 1 {
            return Err(ConfigError::InvalidCutoff);
        }
        if self.degree_bound < 2 {
            return Err(ConfigError::InvalidDegree(self.degree_bound));
        }
        if self.step_limit == 0 {
            return Err(ConfigError::InvalidStepLimit("0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Passed on an empty interior.
    Vacuous,
}

impl Status {
    pub fn passed(self) -> bool {
        self != Status::Fail
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    /// Seconds.
    pub elapsed: f64,
    /// Rendered matrices or tables for the text report.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

/// Runs one check, timing it; errors become failures.
pub fn record(id: &str, anchor: &str, expected: impl Display, f: impl FnOnce() -> Outcome) -> CheckRecord {
    let t = Instant::now();
    let (status, actual) = match f() {
        Ok(x) => x,
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    CheckRecord {
        id: id.into(),
        anchor: anchor.into(),
        status,
        expected: expected.to_string(),
        actual,
        elapsed: t.elapsed().as_secs_f64(),
        detail: None,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: String,
    pub config: SuiteConfig,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: SuiteConfig, checks: Vec<CheckRecord>) -> Self {
        let pass = checks.iter().filter(|c| c.status.passed()).count();
        let fail = checks.len() - pass;
        Report { version: VERSION.into(), config, checks, summary: Summary { pass, fail } }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn find(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn render_text(&self) -> String {
        let w = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Vacuous => "VAC ",
            };
            out.push_str(&format!("{tag} {:<w$}  expected {} | actual {}  ({:.2}s)\n", c.id, c.expected, c.actual, c.elapsed));
            if let Some(d) = &c.detail {
                for line in d.lines() {
                    out.push_str(&format!("    {line}\n"));
                }
            }
        }
        out.push_str(&format!("{} passed, {} failed\n", self.summary.pass, self.summary.fail));
        out
    }
}

/// Collects records for one suite.
struct Recorder {
    prefix: &'static str,
    checks: Vec<CheckRecord>,
}

pub type Outcome = Result<(Status, String), String>;

pub fn ok(passed: bool, actual: impl Display) -> Outcome {
    Ok((if passed { Status::Pass } else { Status::Fail }, actual.to_string()))
}

fn err<E: Display>(e: E) -> String {
    e.to_string()
}

impl Recorder {
    fn new(prefix: &'static str) -> Self {
        Recorder { prefix, checks: Vec::new() }
    }

    fn check(&mut self, id: &str, anchor: &str, expected: impl Display, f: impl FnOnce() -> Outcome) {
        self.checks.push(record(&format!("{}.{id}", self.prefix), anchor, expected, f));
    }

    /// Records a failed setup step and returns `None`.
    fn setup<T, E: Display>(&mut self, id: &str, r: Result<T, E>) -> Option<T> {
        match r {
            Ok(x) => Some(x),
            Err(e) => {
                self.check(id, "plumbing", "setup succeeds", || Err(e.to_string()));
                None
            }
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn presentations(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let mut r = Recorder::new("presentations");
    let sl = cfg.step_limit;
    for name in ["uq4", "s7q", "sigma4q", "sigma4q-loc"] {
        r.check(&format!("confluent.{name}"), "rewriting system completion", "0 obstructions", || {
            let p = algebras::build(name, sl).map_err(err)?;
            let n = p.system.obstructions().map_err(err)?.len();
            ok(n == 0, format!("{n} obstructions, {} rules", p.system.rules().len()))
        });
    }
    let Some(s4) = r.setup("build.sigma4q", build_sigma4q(sl)) else { return r.checks };
    r.check("basis-pattern", "4-sphere PBW basis, no b* b together", "pattern counts for degree <= 4", || {
        let (bs, b) = (s4.letter("b*").map_err(err)?, s4.letter("b").map_err(err)?);
        let mut counts = Vec::new();
        let mut good = true;
        for d in 0..=4usize {
            let words = s4.system.irreducible_words(d);
            good &= words.iter().all(|w| {
                let l = w.letters();
                l.windows(2).all(|p| p[0] <= p[1]) && !(l.contains(&bs) && l.contains(&b))
            });
            let want: usize = (0..=d).map(|e| (if e == 0 { 1 } else { 2 }) * (d - e + 1) * (d - e + 2) / 2).sum();
            good &= words.len() == want;
            counts.push(words.len());
        }
        ok(good, format!("{counts:?}"))
    });
    r.check("embedding", "4-sphere relations in the odd sphere", "all residuals 0", || {
        let s7 = build_s7q(sl).map_err(err)?;
        let checks = verify_embedding(&s4, &s7).map_err(err)?;
        let bad: Vec<_> = checks.iter().filter(|c| !c.passed()).map(|c| c.relation.clone()).collect();
        ok(bad.is_empty(), format!("{} relations, {} nonzero {bad:?}", checks.len(), bad.len()))
    });
    r.check("zeta", "stereographic coordinates", "all residuals 0", || {
        let loc = build_sigma4q_localized(sl).map_err(err)?;
        let res = zeta_residuals(&loc).map_err(err)?;
        let bad = res.iter().filter(|(_, p)| !p.is_zero()).count();
        ok(bad == 0, format!("{} relations, {bad} nonzero", res.len()))
    });
    r.checks
}

fn quotient(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let mut r = Recorder::new("quotient");
    let Some(q) = r.setup("build", Quotient::build(cfg.step_limit)) else { return r.checks };
    r.check("det", "quantum determinant modulo the coideal", "1", || {
        let d = q.reduce(&NCPoly::letter(q.uq.d)).map_err(err)?;
        ok(d == NCPoly::one(), q.pres().render(&d))
    });
    let absorb = cfg.degree_bound.saturating_sub(1).min(3);
    r.check("coideal", "coisotropic coideal", format!("13 elements absorbed up to degree {absorb}"), || {
        let checks = q.check_coideal(absorb).map_err(err)?;
        let bad: Vec<_> = checks.iter().filter(|c| !c.passed()).map(|c| c.element.clone()).collect();
        ok(bad.is_empty() && checks.len() == 13, format!("{} elements, failures {bad:?}", checks.len()))
    });
    let Some(co) = r.setup("coaction", Coaction::build(cfg.step_limit)) else { return r.checks };
    r.check("slice-2", "coinvariants of degree 2", "span{1, R, a, a*, b, b*}", || {
        let s = co.coinvariant_slice(2, &rat(2, 7)).map_err(err)?;
        let names: Vec<_> = s.basis.iter().map(|(n, _)| n.clone()).collect();
        ok(s.spans() && s.basis.len() == 6, format!("dimension {}, basis {names:?}", s.dimension))
    });
    r.checks
}

fn bundle_suite(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let mut r = Recorder::new("bundle");
    let sl = cfg.step_limit;
    let Some(s7) = r.setup("build.s7q", build_s7q(sl)) else { return r.checks };
    let mut proj = None;
    r.check("entries", "projector entries as section pairings", "16 entries match", || {
        let p = bundle::build_g(&s7, sl).map_err(err)?;
        proj = Some(p);
        ok(true, "16 entries match")
    });
    let Some(p) = proj else { return r.checks };
    r.check("idempotent", "projector", "G² = G and G = G†", || {
        let rep = bundle::verify_projector(&p.g, &p.sigma4).map_err(err)?;
        ok(rep.passed(), format!("G²-G zero: {}, G-G† zero: {}", rep.idempotent.is_zero(), rep.selfadjoint.is_zero()))
    });
    r.check("trace", "rank of the projector", "2 - (1-q^2)^2 R", || {
        let want = p.sigma4.parse("2 - (1-q^2)^2 R").map_err(err)?;
        let tr = p.sigma4.nf(&p.g.trace()).map_err(err)?;
        ok(tr == want, p.sigma4.render(&tr))
    });
    r.check("classical", "classical quaternionic and complex projectors", "idempotent, Pauli-equivalent, q=1 match", || {
        let c = bundle::classical_crosscheck(sl).map_err(err)?;
        ok(c.passed(), format!("dictionary {:?}, sections match {}", c.dictionary, c.sections_match))
    });
    if let Some(co) = r.setup("coaction", Coaction::build(sl)) {
        r.check("equivariance", "sections of the associated bundle", "4 sections equivariant", || {
            let f = bundle::sections(&co.s7).map_err(err)?;
            let mut n = 0;
            for s in &f {
                n += bundle::check_cotensor(&co, s).map_err(err)? as usize;
            }
            ok(n == 4, format!("{n} equivariant"))
        });
        let d = cfg.degree_bound.saturating_sub(1).min(3);
        r.check(&format!("slice-{d}"), "module generated by the sections", "matches classical dimension", || {
            let s = bundle::section_slice(&co, d, &rat(2, 7)).map_err(err)?;
            ok(s.spans(), format!("dimension {}, generated {}", s.dimension, s.generated))
        });
    }
    r.checks
}

fn poisson_suite(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let mut r = Recorder::new("poisson");
    let c = lie::Cocycle::standard();
    r.check("coisotropic.diagonal", "diagonal su(2) subalgebra", "false", || {
        let v = c.is_coisotropic(&lie::su2_diagonal()).map_err(|e| format!("{e:?}"))?;
        ok(!v, yes_no(v))
    });
    r.check("coisotropic.conjugated", "conjugated su(2) subalgebra", "true", || {
        let v = c.is_coisotropic(&lie::su2_conjugated()).map_err(|e| format!("{e:?}"))?;
        ok(v, yes_no(v))
    });
    r.check("poisson-lie.u3", "u(3) subalgebra", "true", || {
        let u3 = lie::generated_subalgebra(&lie::u3_generators());
        let v = c.is_poisson_lie(&u3).map_err(|e| format!("{e:?}"))?;
        ok(v && u3.len() == 9, format!("{} (dimension {})", yes_no(v), u3.len()))
    });
    let derived = match poisson::derive_brackets(cfg.step_limit) {
        Ok(x) => x,
        Err(e) => {
            r.check("derive", "semiclassical limit", "setup succeeds", || Err(e.to_string()));
            return r.checks;
        }
    };
    let (limits, table) = derived;
    r.check("global-sign", "semiclassical limit of commutators", "single sign", || {
        ok(limits.sign.is_some(), format!("{:?} over {} pairs", limits.sign, limits.pairs.len()))
    });
    let Some((table, rep)) = table else { return r.checks };
    r.check("sigma4-table", "brackets of the 4-sphere generators", "printed table", || {
        let bad: Vec<_> = rep.sigma4.iter().filter(|p| !p.passed).map(|p| format!("{{{}, {}}}", p.x, p.y)).collect();
        ok(bad.is_empty(), format!("{} pairs, mismatches {bad:?}", rep.sigma4.len()))
    });
    r.check("zeta-table", "brackets of stereographic coordinates", "printed table", || {
        let bad: Vec<_> = rep.zeta.iter().filter(|p| !p.passed).map(|p| format!("{{{}, {}}}", p.x, p.y)).collect();
        ok(bad.is_empty(), format!("{} pairs, mismatches {bad:?}", rep.zeta.len()))
    });
    r.check("casimir", "sphere relations are Casimirs", "true", || {
        ok(rep.sphere_casimir && rep.sigma4_relation_respected, yes_no(rep.sphere_casimir && rep.sigma4_relation_respected))
    });
    r.check("jacobi", "Jacobi identity", "0 residuals", || {
        let j = poisson::jacobi_check(&table, 3, 40, 7);
        ok(j.passed(), format!("{} triples, {} failures", j.triples, j.failures.len()))
    });
    r.checks
}

fn fock_suite(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let mut r = Recorder::new("fock");
    let (n, q0) = (cfg.cutoff, &cfg.q0);
    let relation_records = |r: &mut Recorder, id: &str, anchor: &str, res: Result<Vec<fock::RelationCheck>, fock::FockError>| {
        r.check(id, anchor, "0 on the interior", || {
            let checks = res.map_err(err)?;
            let bad: Vec<_> = checks.iter().filter(|c| !c.passed()).map(|c| c.relation.clone()).collect();
            let vacuous = checks.iter().all(|c| c.vacuous());
            let status = if !bad.is_empty() {
                Status::Fail
            } else if vacuous {
                Status::Vacuous
            } else {
                Status::Pass
            };
            Ok((status, format!("{} relations, failures {bad:?}{}", checks.len(), if vacuous { ", vacuous" } else { "" })))
        });
    };
    relation_records(&mut r, "relations", "Fock representation of the 4-sphere", fock::check_relations_on_truncation(n, q0));
    relation_records(&mut r, "zeta", "Fock representation of stereographic coordinates", fock::rep_zeta_check(n, q0));
    if let Some(s4) = r.setup("build.sigma4q", build_sigma4q(cfg.step_limit)) {
        match fock::trace_table(&s4, n, q0) {
            Ok(rows) => {
                for row in rows {
                    r.check(&format!("trace.{}", row.element.replace(' ', "")), "closed-form Fock traces", &row.expected, || {
                        ok(
                            row.passed(fock::TRACE_TOLERANCE),
                            format!("{} (truncated delta {:.1e}, C = {:.3})", row.exact, row.delta, row.constant),
                        )
                    });
                }
            }
            Err(e) => r.check("trace", "closed-form Fock traces", "exact traces", || Err(e.to_string())),
        }
    }
    match fock::trace_class_diagnostics(n, q0) {
        Ok(rows) => {
            for row in rows {
                r.check(&format!("trace-class.{}", row.generator), "trace-class bound", format!("<= {}", row.bound), || {
                    ok(row.monotone && row.below_bound, format!("{:.6}", row.limit))
                });
                r.check(
                    &format!("trace-class-sound.{}", row.generator),
                    "trace-class bound from |radical| <= 1",
                    format!("<= {}", row.sound_bound),
                    || ok(row.monotone && row.below_sound_bound, format!("{:.6}", row.limit)),
                );
            }
        }
        Err(e) => r.check("trace-class", "trace-class bound", "partial sums", || Err(e.to_string())),
    }
    r.checks
}

fn chern_suite(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let mut r = Recorder::new("chern");
    let Some(s4) = r.setup("build.sigma4q", build_sigma4q(cfg.step_limit)) else { return r.checks };
    let Some(g) = r.setup("projector", NCMatrix::parse(&s4, &G_PRINTED)) else { return r.checks };
    let cx = CyclicComplex::new(s4);
    let bound = cfg.degree_bound;
    let mut ch0 = None;
    r.check("ch0", "Chern character in degree 0", "2 - (1-q^2)^2 R", || {
        let c = cx.chern(&g, 0).map_err(err)?;
        let p = c.to_poly().expect("degree 0");
        let want = cx.pres.parse("2 - (1-q^2)^2 R").map_err(err)?;
        let out = ok(p == want, cx.pres.render(&p));
        ch0 = Some(c);
        out
    });
    if let Some(c) = &ch0 {
        r.check("pairing", "Chern-Connes pairing with the Fock trace", "-1", || {
            let v = cx.pairing_with_trace(c).map_err(err)?;
            ok(v == RatFn::from(-1), v)
        });
    }
    for n in 0..=2 {
        r.check(&format!("cycle.ch{n}"), "Chern characters are cyclic cycles", "true", || {
            let c = cx.chern(&g, n).map_err(err)?;
            let k = cx.cyclic_cycle_check(&c, bound).map_err(err)?;
            let status = match (k.is_cycle, k.vacuous) {
                (false, _) => Status::Fail,
                (true, true) => Status::Vacuous,
                (true, false) => Status::Pass,
            };
            Ok((status, format!("{} ({} terms, boundary {} terms)", yes_no(k.is_cycle), c.len(), k.boundary_terms)))
        });
    }
    r.check("s-operator", "periodicity S(ch1) = -ch0/2", "S(ch1) + ch0/2 is a boundary", || {
        let s = cx.s_relation(&g, bound).map_err(err)?;
        let h = s.holds_for(&rat(-1, 2)).unwrap_or(false);
        ok(h, format!("S(ch1) = {}, tr = {}", cx.pres.render(&s.s_ch1), s.pairing))
    });
    r.check("trace-property", "Fock trace is a cyclic 0-cocycle", "100 pairs", || {
        let t = cx.trace_property(3, 100, 7).map_err(err)?;
        ok(t.passed(), format!("{} pairs, {} failures", t.samples, t.failures.len()))
    });
    r.checks
}

pub fn run_suite(s: Suite, cfg: &SuiteConfig) -> Vec<CheckRecord> {
    match s {
        Suite::Presentations => presentations(cfg),
        Suite::Quotient => quotient(cfg),
        Suite::Bundle => bundle_suite(cfg),
        Suite::Poisson => poisson_suite(cfg),
        Suite::Fock => fock_suite(cfg),
        Suite::Chern => chern_suite(cfg),
    }
}

/// Runs the configured suites, `parallelism` at a time, in suite order.
pub fn run(cfg: &SuiteConfig) -> Result<Report, ConfigError> {
    cfg.validate()?;
    let mut suites = cfg.suites.clone();
    suites.sort();
    suites.dedup();
    let mut checks = Vec::new();
    for chunk in suites.chunks(cfg.parallelism.max(1)) {
        let results: Vec<Vec<CheckRecord>> = std::thread::scope(|sc| {
            let hs: Vec<_> = chunk.iter().map(|&s| sc.spawn(move || run_suite(s, cfg))).collect();
            hs.into_iter().map(|h| h.join().expect("suite thread")).collect()
        });
        checks.extend(results.into_iter().flatten());
    }
    Ok(Report::new(cfg.clone(), checks))
}
