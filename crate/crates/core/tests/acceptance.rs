//! Acceptance criteria 1-9. Each test writes one pass/fail line to stderr
//! (bypassing output capture) and then asserts.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use qsphere::algebras::{build, build_s7q, build_sigma4q, verify_embedding, Uq4};
use qsphere::bundle::{build_g, classical_crosscheck, verify_projector, NCMatrix, G_PRINTED};
use qsphere::chern::{Chain, CyclicComplex, DEFAULT_DEGREE_BOUND};
use qsphere::coeff::{rat, RatFn};
use qsphere::fock;
use qsphere::ncpoly::{NCPoly, Tensor, Word, DEFAULT_STEP_LIMIT};
use qsphere::poisson::{self, lie};
use qsphere::quotient::{Coaction, Quotient};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SL: usize = DEFAULT_STEP_LIMIT;

fn line(n: u32, passed: bool, elapsed: Duration, detail: &str) {
    let tag = if passed { "PASS" } else { "FAIL" };
    let msg = format!("criterion {n}: {tag} ({:.2}s) {detail}\n", elapsed.as_secs_f64());
    let _ = std::io::stderr().lock().write_all(msg.as_bytes());
}

/// Collects named sub-checks for one criterion.
struct Criterion {
    n: u32,
    start: Instant,
    limit: Option<Duration>,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new(n: u32, limit: Option<Duration>) -> Self {
        Criterion { n, start: Instant::now(), limit, failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, name: &str, ok: bool, note: impl Into<String>) {
        if !ok {
            self.failures.push(format!("{name}: {}", note.into()));
        }
    }

    fn finish(mut self) {
        let elapsed = self.start.elapsed();
        if let Some(l) = self.limit {
            self.check("runtime", elapsed <= l, format!("{:.1}s > {:.0}s", elapsed.as_secs_f64(), l.as_secs_f64()));
        }
        let passed = self.failures.is_empty();
        let detail = if passed { self.notes.join("; ") } else { self.failures.join("; ") };
        line(self.n, passed, elapsed, &detail);
        assert!(passed, "criterion {}: {}", self.n, self.failures.join("; "));
    }
}

#[test]
fn criterion_1_confluence() {
    let mut c = Criterion::new(1, Some(Duration::from_secs(60)));
    for name in ["uq4", "s7q", "sigma4q", "sigma4q-loc"] {
        let p = build(name, SL).expect("presentation builds");
        let obs = p.system.obstructions().unwrap().len();
        c.check(name, obs == 0, format!("{obs} obstructions"));
    }
    let s4 = build_sigma4q(SL).unwrap();
    let (bs, b) = (s4.letter("b*").unwrap(), s4.letter("b").unwrap());
    let mut counts = Vec::new();
    for d in 0..=4usize {
        let ws = s4.system.irreducible_words(d);
        let pattern = ws.iter().all(|w| {
            let l = w.letters();
            l.windows(2).all(|p| p[0] <= p[1]) && !(l.contains(&bs) && l.contains(&b))
        });
        // a*^i1 a^i2 R^j with (b*^k or b^k): k = 0 once, k > 0 twice
        let want: usize = (0..=d).map(|k| if k == 0 { 1 } else { 2 } * (d - k + 1) * (d - k + 2) / 2).sum();
        c.check(&format!("basis degree {d}"), pattern && ws.len() == want, format!("{} words, expected {want}", ws.len()));
        counts.push(ws.len());
    }
    c.notes.push(format!("0 obstructions in 4 presentations, basis sizes {counts:?}"));
    c.finish();
}

#[test]
fn criterion_2_embedding() {
    let mut c = Criterion::new(2, Some(Duration::from_secs(10)));
    let s4 = build_sigma4q(SL).unwrap();
    let s7 = build_s7q(SL).unwrap();
    let checks = verify_embedding(&s4, &s7).unwrap();
    c.check("relation count", checks.len() >= 7, format!("{}", checks.len()));
    for e in &checks {
        c.check(&e.relation, e.passed(), s7.render(&e.residual));
    }
    c.notes.push(format!("{} relations reduce to 0", checks.len()));
    c.finish();
}

#[test]
fn criterion_3_quotient() {
    let mut c = Criterion::new(3, Some(Duration::from_secs(60)));
    let q = Quotient::build(SL).unwrap();
    let d = q.reduce(&NCPoly::letter(q.uq.d)).unwrap();
    c.check("D", d == NCPoly::one(), q.pres().render(&d));
    let coideal = q.check_coideal(3).unwrap();
    c.check("coideal count", coideal.len() == 13, format!("{}", coideal.len()));
    for k in &coideal {
        c.check(&k.element, k.passed(), format!("{:?}", k.absorb_failures));
    }
    let co = Coaction::build(SL).unwrap();
    let slice = co.coinvariant_slice(2, &rat(2, 7)).unwrap();
    let names: Vec<&str> = slice.basis.iter().map(|(n, _)| n.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    c.check("slice", slice.spans() && sorted == ["1", "R", "a", "a*", "b", "b*"], format!("{names:?}"));
    c.notes.push(format!("13 elements absorbed, slice {names:?}"));
    c.finish();
}

#[test]
fn criterion_4_projector() {
    let mut c = Criterion::new(4, Some(Duration::from_secs(60)));
    let s7 = build_s7q(SL).unwrap();
    let p = build_g(&s7, SL);
    c.check("entries", p.is_ok(), format!("{:?}", p.as_ref().err()));
    if let Ok(p) = p {
        let rep = verify_projector(&p.g, &p.sigma4).unwrap();
        c.check("G² = G", rep.idempotent.is_zero(), rep.idempotent.render(&p.sigma4));
        c.check("G = G†", rep.selfadjoint.is_zero(), rep.selfadjoint.render(&p.sigma4));
        let tr = p.sigma4.nf(&p.g.trace()).unwrap();
        let want = p.sigma4.parse("2 - (1-q^2)^2 R").unwrap();
        c.check("Tr G", tr == want, p.sigma4.render(&tr));
        c.notes.push(format!("G² = G, G = G†, Tr G = {}", p.sigma4.render(&tr)));
    }
    c.finish();
}

#[test]
fn criterion_5_classical() {
    let mut c = Criterion::new(5, None);
    let rep = classical_crosscheck(SL).unwrap();
    c.check("quaternionic idempotent", rep.quaternionic_residual.iter().all(|x| x.is_zero()), "");
    c.check("complex projector", rep.complex.passed(), "");
    c.check("pauli", rep.pauli_difference.is_zero(), "");
    c.check("q = 1 dictionary", rep.dictionary.is_some() && rep.sections_match, format!("{:?}", rep.dictionary));
    c.check("overall", rep.passed(), "");
    c.notes.push(format!("dictionary {:?}", rep.dictionary));
    c.finish();
}

#[test]
fn criterion_6_poisson() {
    let mut c = Criterion::new(6, None);
    let co = lie::Cocycle::standard();
    c.check("diag", co.is_coisotropic(&lie::su2_diagonal()) == Ok(false), "");
    c.check("conjugated", co.is_coisotropic(&lie::su2_conjugated()) == Ok(true), "");
    let u3 = lie::generated_subalgebra(&lie::u3_generators());
    c.check("u(3)", u3.len() == 9 && co.is_poisson_lie(&u3) == Ok(true), format!("dimension {}", u3.len()));
    let (limits, derived) = poisson::derive_brackets(SL).unwrap();
    c.check("global sign", limits.sign.is_some(), format!("{:?}", limits.sign));
    match derived {
        Some((table, rep)) => {
            for p in rep.sigma4.iter().chain(&rep.zeta) {
                c.check(&format!("{{{}, {}}}", p.x, p.y), p.passed, format!("{} vs {}", p.computed, p.expected));
            }
            c.check("casimir", rep.sphere_casimir && rep.sigma4_relation_respected, "");
            let j = poisson::jacobi_check(&table, 3, 40, 7);
            c.check("jacobi", j.passed(), format!("{:?}", j.failures));
            c.notes.push(format!("s = {:?}, {} table pairs, {} Jacobi triples", limits.sign, rep.sigma4.len() + rep.zeta.len(), j.triples));
        }
        None => c.check("derived table", false, "no single sign"),
    }
    c.finish();
}

#[test]
fn criterion_7_representations() {
    let mut c = Criterion::new(7, Some(Duration::from_secs(120)));
    let q0 = rat(1, 2);
    let n = 40;
    for r in fock::check_relations_on_truncation(n, &q0).unwrap() {
        c.check(&r.relation, r.passed() && !r.vacuous(), format!("{} nonzero interior entries", r.nonzero));
    }
    let s4 = build_sigma4q(SL).unwrap();
    for row in fock::trace_table(&s4, n, &q0).unwrap() {
        c.check(&format!("tr {}", row.element), row.exact == row.expected, format!("{} vs {}", row.exact, row.expected));
        c.check(&format!("truncated tr {}", row.element), row.delta <= fock::TRACE_TOLERANCE, format!("delta {:e}", row.delta));
    }
    for row in fock::trace_class_diagnostics(n, &q0).unwrap() {
        c.check(
            &format!("tr|{}| <= {}", row.generator, row.bound),
            row.monotone && row.below_bound,
            format!(
                "partial sums reach {:.6} (corrected bound {} holds: {})",
                row.limit, row.sound_bound, row.below_sound_bound
            ),
        );
    }
    c.finish();
}

#[test]
fn criterion_8_chern_connes() {
    let mut c = Criterion::new(8, Some(Duration::from_secs(300)));
    let s4 = build_sigma4q(SL).unwrap();
    let g = NCMatrix::parse(&s4, &G_PRINTED).unwrap();
    let cx = CyclicComplex::new(s4);
    let ch0 = cx.chern(&g, 0).unwrap();
    let want = cx.pres.parse("2 - (1-q^2)^2 R").unwrap();
    c.check("ch0", ch0.to_poly() == Some(want), cx.pres.render(&ch0.to_poly().unwrap()));
    let pairing = cx.pairing_with_trace(&ch0).unwrap();
    c.check("pairing", pairing == RatFn::from(-1), pairing.to_string());
    for n in [1, 2] {
        let ch = cx.chern(&g, n).unwrap();
        let k = cx.cyclic_cycle_check(&ch, DEFAULT_DEGREE_BOUND).unwrap();
        c.check(&format!("ch{n} cyclic cycle"), k.is_cycle, format!("{} terms", ch.len()));
        c.notes.push(format!("ch{n} cycle ({} terms)", ch.len()));
    }
    let t = cx.trace_property(3, 100, 2024).unwrap();
    c.check("trace property", t.passed(), format!("{:?}", t.failures));
    c.notes.push(format!("pairing {pairing}"));
    c.finish();
}

#[test]
fn criterion_9_property_suites() {
    let mut c = Criterion::new(9, None);
    let mut rng = ChaCha8Rng::seed_from_u64(9);

    // β² = 0 and t^{n+1} = id on random chains
    let s4 = build_sigma4q(SL).unwrap();
    let basis = common::words(&s4, 2);
    let cx = CyclicComplex::new(s4.clone());
    let mut beta_ok = true;
    let mut t_ok = true;
    for deg in 1..=3usize {
        for _ in 0..5 {
            let legs: Vec<NCPoly> = (0..=deg).map(|_| common::random_element(&mut rng, &basis)).collect();
            let ch = Chain::tensor(&legs);
            let b = cx.hochschild_boundary(&ch).unwrap();
            if deg >= 2 {
                beta_ok &= cx.hochschild_boundary(&b).unwrap().is_zero();
            }
            let mut r = ch.clone();
            for _ in 0..=deg {
                r = r.cyclic_t();
            }
            t_ok &= r == ch;
        }
    }
    c.check("β² = 0", beta_ok, "");
    c.check("t^{n+1} = id", t_ok, "");

    // star involution and antihomomorphism, nf idempotency
    // U_q(4) stars are antipodes of degree 3, so its samples use generators
    for (name, degree) in [("s7q", 2), ("sigma4q", 2), ("uq4", 1)] {
        let p = build(name, SL).unwrap();
        let basis = common::words(&p, degree);
        let (mut inv, mut anti, mut idem) = (true, true, true);
        for _ in 0..10 {
            let x = common::random_element(&mut rng, &basis);
            let y = common::random_element(&mut rng, &basis);
            let xs = p.star(&x).unwrap();
            inv &= p.star(&xs).unwrap() == p.nf(&x).unwrap();
            let lhs = p.star(&p.mul(&x, &y).unwrap()).unwrap();
            let rhs = p.mul(&p.star(&y).unwrap(), &xs).unwrap();
            anti &= lhs == rhs;
            let raw = x.concat(&y);
            let n1 = p.nf(&raw).unwrap();
            idem &= p.nf(&n1).unwrap() == n1;
        }
        c.check(&format!("{name} star involution"), inv, "");
        c.check(&format!("{name} star antihomomorphism"), anti, "");
        c.check(&format!("{name} nf idempotent"), idem, "");
    }

    // coassociativity and counit on U_q(4) generators
    let u = Uq4::build(SL).unwrap();
    let (mut coassoc, mut counit) = (true, true);
    let mut gens: Vec<NCPoly> = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| u.t(i, j)).collect();
    gens.push(NCPoly::letter(u.d));
    for g in &gens {
        let d = u.coproduct(g).unwrap();
        let cop = |w: &Word| u.coproduct(&NCPoly::word(w.clone()));
        let left = d.expand_leg(0, cop).unwrap();
        let right = d.expand_leg(1, cop).unwrap();
        coassoc &= left == right;
        let eps = |w: &Word| Ok(u.counit_word(w));
        let want = Tensor::from_poly(&u.pres.nf(g).unwrap());
        counit &= d.contract_leg(0, eps).unwrap() == want && d.contract_leg(1, eps).unwrap() == want;
    }
    c.check("coassociativity", coassoc, "");
    c.check("counit", counit, "");
    c.notes.push("all exact on seeded samples".into());
    c.finish();
}
