use clap::{Subcommand, ValueEnum};
use qsphere::algebras;
use qsphere::bundle::{self, NCMatrix, G_PRINTED};
use qsphere::chern::CyclicComplex;
use qsphere::coeff::{rat, RatFn};
use qsphere::poisson::{self, lie};
use qsphere::quotient::{Coaction, Quotient};
use qsphere::suite::{self, ok, record, CheckRecord, ConfigError, Status, Suite, SuiteConfig};

/// Generic sample value for numeric rank computations.
fn sample_q() -> qsphere::coeff::Rational {
    rat(2, 7)
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn filtered(s: Suite, cfg: &SuiteConfig, prefix: &str) -> Vec<CheckRecord> {
    suite::run_suite(s, cfg).into_iter().filter(|c| c.id.starts_with(prefix)).collect()
}

#[derive(Subcommand, Debug)]
pub enum QuotientVerb {
    /// The coideal spanning elements and their absorption.
    CheckCoideal,
    /// Class of an expression in the quotient.
    Reduce { expr: String },
    /// Coinvariant slice of the odd sphere at a degree.
    Coinvariants,
}

pub fn quotient(v: &QuotientVerb, cfg: &SuiteConfig) -> Vec<CheckRecord> {
    match v {
        QuotientVerb::CheckCoideal => filtered(Suite::Quotient, cfg, "quotient.coideal"),
        QuotientVerb::Reduce { expr } => {
            let mut detail = String::new();
            let r = record("quotient.reduce", "plumbing", "a class", || {
                let q = Quotient::build(cfg.step_limit).map_err(e)?;
                let x = q.pres().parse(expr).map_err(e)?;
                let c = q.reduce(&x).map_err(e)?;
                detail = q.pres().render(&c);
                ok(true, &detail)
            });
            vec![r]
        }
        QuotientVerb::Coinvariants => {
            let d = cfg.degree_bound;
            let mut detail = String::new();
            let r = record(&format!("quotient.coinvariants-{d}"), "coinvariant slice", "monomials span", || {
                let co = Coaction::build(cfg.step_limit).map_err(e)?;
                let s = co.coinvariant_slice(d, &sample_q()).map_err(e)?;
                detail = s.basis.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>().join(", ");
                ok(s.spans(), format!("dimension {}", s.dimension))
            });
            vec![r.with_detail(detail)]
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum BundleVerb {
    /// Assemble G from the sections.
    #[command(name = "build-G")]
    BuildG,
    /// G² = G and G = G† for the printed matrix.
    VerifyProjector,
    /// q = 1 comparison with the quaternionic instanton projector.
    ClassicalCheck,
    /// Module generated by the sections at the degree bound (at most 3).
    Sections,
}

pub fn bundle(v: &BundleVerb, cfg: &SuiteConfig) -> Vec<CheckRecord> {
    match v {
        BundleVerb::BuildG => {
            let mut detail = String::new();
            let r = record("bundle.build-G", "projector entries as section pairings", "16 entries match", || {
                let s7 = algebras::build_s7q(cfg.step_limit).map_err(e)?;
                let p = bundle::build_g(&s7, cfg.step_limit).map_err(e)?;
                detail = p.g.render(&p.sigma4);
                ok(true, "16 entries match")
            });
            vec![r.with_detail(detail)]
        }
        BundleVerb::VerifyProjector => {
            let mut detail = String::new();
            let r = record("bundle.verify-projector", "projector", "G² = G and G = G†", || {
                let s4 = algebras::build_sigma4q(cfg.step_limit).map_err(e)?;
                let g = NCMatrix::parse(&s4, &G_PRINTED).map_err(e)?;
                let rep = bundle::verify_projector(&g, &s4).map_err(e)?;
                detail = format!(
                    "G² - G:\n{}\nG - G†:\n{}",
                    rep.idempotent.render(&s4),
                    rep.selfadjoint.render(&s4)
                );
                ok(rep.passed(), if rep.passed() { "both zero" } else { "nonzero residual" })
            });
            vec![r.with_detail(detail)]
        }
        BundleVerb::ClassicalCheck => filtered(Suite::Bundle, cfg, "bundle.classical"),
        BundleVerb::Sections => {
            let d = cfg.degree_bound.min(3);
            vec![record(&format!("bundle.sections-{d}"), "module generated by the sections", "spans", || {
                let co = Coaction::build(cfg.step_limit).map_err(e)?;
                let s = bundle::section_slice(&co, d, &sample_q()).map_err(e)?;
                ok(s.spans(), format!("dimension {}, generated {}", s.dimension, s.generated))
            })]
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Subgroup {
    Diag,
    Conjugated,
    U3,
}

#[derive(Subcommand, Debug)]
pub enum PoissonVerb {
    /// Whether a subalgebra of u(4) is coisotropic for the cocycle.
    Coisotropy {
        #[arg(long, value_enum)]
        subgroup: Subgroup,
    },
    /// Derived brackets against the printed tables.
    Brackets,
    /// Commutator limits and the global sign.
    LimitCheck,
}

pub fn poisson(v: &PoissonVerb, cfg: &SuiteConfig) -> Vec<CheckRecord> {
    match v {
        PoissonVerb::Coisotropy { subgroup } => {
            let c = lie::Cocycle::standard();
            let (name, gens, want) = match subgroup {
                Subgroup::Diag => ("diag", lie::su2_diagonal(), false),
                Subgroup::Conjugated => ("conjugated", lie::su2_conjugated(), true),
                Subgroup::U3 => ("u3", lie::generated_subalgebra(&lie::u3_generators()), true),
            };
            vec![record(&format!("poisson.coisotropy.{name}"), "coisotropic subalgebras", want, || {
                let co = c.is_coisotropic(&gens).map_err(|x| format!("{x:?}"))?;
                let pl = c.is_poisson_lie(&gens).map_err(|x| format!("{x:?}"))?;
                ok(co == want, format!("coisotropic {co}, Poisson-Lie {pl}"))
            })]
        }
        PoissonVerb::Brackets => {
            let mut rows = Vec::new();
            match poisson::derive_brackets(cfg.step_limit) {
                Ok((_, Some((_, rep)))) => {
                    for p in rep.sigma4.iter().chain(&rep.zeta) {
                        rows.push(record(&format!("poisson.bracket.{{{},{}}}", p.x, p.y), "bracket table", &p.expected, || {
                            ok(p.passed, &p.computed)
                        }));
                    }
                }
                Ok((_, None)) => rows.push(record("poisson.brackets", "bracket table", "a global sign", || {
                    Ok((Status::Fail, "no single sign".into()))
                })),
                Err(x) => rows.push(record("poisson.brackets", "bracket table", "derived brackets", || Err(e(x)))),
            }
            rows
        }
        PoissonVerb::LimitCheck => {
            let mut detail = String::new();
            let r = record("poisson.limit-check", "semiclassical limit of commutators", "single sign", || {
                let l = poisson::semiclassical_limit_check(cfg.step_limit).map_err(e)?;
                detail = l
                    .pairs
                    .iter()
                    .map(|p| format!("{} [{}, {}]: limit {} printed {} {:?}", p.algebra, p.x, p.y, p.limit, p.printed, p.ratio))
                    .collect::<Vec<_>>()
                    .join("\n");
                ok(l.sign.is_some(), format!("{:?}", l.sign))
            });
            vec![r.with_detail(detail)]
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum FockVerb {
    /// Exact traces against the printed values and the truncation.
    Traces,
    /// Defining relations on the interior of the truncation.
    Relations,
    /// Stereographic relations.
    Zeta,
    /// Partial sums of tr|σ(x)| against the printed bounds.
    TraceClass,
}

pub fn fock(v: &FockVerb, cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let prefix = match v {
        FockVerb::Traces => "fock.trace.",
        FockVerb::Relations => "fock.relations",
        FockVerb::Zeta => "fock.zeta",
        FockVerb::TraceClass => "fock.trace-class",
    };
    filtered(Suite::Fock, cfg, prefix)
}

#[derive(Subcommand, Debug)]
pub enum ChernVerb {
    /// The chain ch_n.
    Class {
        #[arg(long, default_value_t = 0)]
        n: usize,
    },
    /// Pairing of ch_0 with the Fock trace.
    Pairing,
    /// β(ch_n) lies in the image of 1 - t.
    CycleCheck {
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
}

pub fn chern(v: &ChernVerb, cfg: &SuiteConfig) -> Result<Vec<CheckRecord>, ConfigError> {
    let setup = || -> Result<(CyclicComplex, NCMatrix), String> {
        let s4 = algebras::build_sigma4q(cfg.step_limit).map_err(e)?;
        let g = NCMatrix::parse(&s4, &G_PRINTED).map_err(e)?;
        Ok((CyclicComplex::new(s4), g))
    };
    Ok(match v {
        ChernVerb::Class { n } => {
            let n = *n;
            let mut detail = String::new();
            let r = record(&format!("chern.class.ch{n}"), "Chern character", format!("{} legs", 2 * n + 1), || {
                let (cx, g) = setup()?;
                let c = cx.chern(&g, n).map_err(e)?;
                if let Some(p) = c.to_poly() {
                    detail = cx.pres.render(&p);
                }
                ok(c.degree() == 2 * n, format!("{} terms", c.len()))
            });
            vec![if detail.is_empty() { r } else { r.with_detail(detail) }]
        }
        ChernVerb::Pairing => vec![record("chern.pairing", "Chern-Connes pairing with the Fock trace", "-1", || {
            let (cx, g) = setup()?;
            let c = cx.chern(&g, 0).map_err(e)?;
            let v = cx.pairing_with_trace(&c).map_err(e)?;
            ok(v == RatFn::from(-1), v)
        })],
        ChernVerb::CycleCheck { n } => {
            let n = *n;
            vec![record(&format!("chern.cycle.ch{n}"), "Chern characters are cyclic cycles", "true", || {
                let (cx, g) = setup()?;
                let c = cx.chern(&g, n).map_err(e)?;
                let k = cx.cyclic_cycle_check(&c, cfg.degree_bound).map_err(e)?;
                ok(k.is_cycle, format!("{} ({} terms, boundary {} terms)", k.is_cycle, c.len(), k.boundary_terms))
            })]
        }
    })
}

pub fn nf(presentation: &str, expr: &str, cfg: &SuiteConfig) -> CheckRecord {
    record("nf", "plumbing", "a normal form", || {
        let p = algebras::build(presentation, cfg.step_limit).map_err(e)?;
        let x = p.parse(expr).map_err(e)?;
        ok(true, p.render(&x))
    })
}
