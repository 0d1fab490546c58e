use std::cell::Cell;
use std::collections::HashMap;
use std::sync::Mutex;

use super::{Letter, NCPoly, NcError, Word};
use crate::coeff::Scalar;

pub const DEFAULT_STEP_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub star: Letter,
}

/// `lhs -> rhs`, every word of `rhs` strictly smaller than `lhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: NCPoly,
}

impl RewriteRule {
    pub fn new(lhs: Word, rhs: NCPoly, names: &[String]) -> Result<Self, NcError> {
        if let Some((w, _)) = rhs.leading() {
            if *w >= lhs {
                let show = |w: &Word| NCPoly::word(w.clone()).render(names);
                return Err(NcError::RuleOrder { lhs: show(&lhs), word: show(w) });
            }
        }
        Ok(RewriteRule { lhs, rhs })
    }

    /// Orients `p = 0` by its leading word, dividing by the leading coefficient.
    pub fn from_relation(p: &NCPoly) -> Result<Option<Self>, NcError> {
        let Some((lw, lc)) = p.leading() else { return Ok(None) };
        let inv = -lc.inv()?;
        let mut rhs = NCPoly::zero();
        for (w, c) in p.terms() {
            if w != lw {
                rhs.add_term(w.clone(), c * &inv);
            }
        }
        Ok(Some(RewriteRule { lhs: lw.clone(), rhs }))
    }
}

/// One overlap or inclusion ambiguity and its resolution.
#[derive(Debug, Clone)]
pub struct Ambiguity {
    pub word: Word,
    pub rules: (usize, usize),
    pub obstruction: NCPoly,
}

/// Rules added or dropped while completing a system.
#[derive(Debug, Clone, Default)]
pub struct CompletionLog {
    pub rounds: usize,
    pub added: Vec<RewriteRule>,
    pub removed: usize,
}

/// Oriented rules over a fixed alphabet with a memoized normal-form cache.
pub struct RewriteSystem {
    alphabet: Vec<Generator>,
    names: Vec<String>,
    rules: Vec<RewriteRule>,
    by_first: Vec<Vec<usize>>,
    step_limit: usize,
    cache: Mutex<HashMap<Word, NCPoly>>,
}

impl Clone for RewriteSystem {
    fn clone(&self) -> Self {
        let mut s = RewriteSystem::new(self.alphabet.clone(), self.rules.clone());
        s.step_limit = self.step_limit;
        s
    }
}

impl std::fmt::Debug for RewriteSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RewriteSystem")
            .field("generators", &self.names)
            .field("rules", &self.rules.len())
            .finish()
    }
}

impl RewriteSystem {
    /// Rules are taken as given; use [`RewriteRule::new`] to check orientation.
    pub fn new(alphabet: Vec<Generator>, rules: Vec<RewriteRule>) -> Self {
        let names = alphabet.iter().map(|g| g.name.clone()).collect();
        let mut s = RewriteSystem {
            alphabet,
            names,
            rules: Vec::new(),
            by_first: Vec::new(),
            step_limit: DEFAULT_STEP_LIMIT,
            cache: Mutex::new(HashMap::new()),
        };
        s.set_rules(rules);
        s
    }

    fn set_rules(&mut self, mut rules: Vec<RewriteRule>) {
        rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        self.by_first = vec![Vec::new(); self.alphabet.len()];
        for (i, r) in rules.iter().enumerate() {
            if let Some(&x) = r.lhs.letters().first() {
                self.by_first[x as usize].push(i);
            }
        }
        self.rules = rules;
        self.cache.lock().unwrap().clear();
    }

    pub fn with_step_limit(mut self, limit: usize) -> Self {
        self.step_limit = limit;
        self
    }

    pub fn step_limit(&self) -> usize {
        self.step_limit
    }

    pub fn alphabet(&self) -> &[Generator] {
        &self.alphabet
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn letter(&self, name: &str) -> Result<Letter, NcError> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as Letter)
            .ok_or_else(|| NcError::UnknownGenerator(name.to_string()))
    }

    pub fn gen(&self, name: &str) -> NCPoly {
        NCPoly::letter(self.letter(name).expect("generator in alphabet"))
    }

    pub fn render(&self, p: &NCPoly) -> String {
        p.render(&self.names)
    }

    pub fn star_partner(&self, x: Letter) -> Letter {
        self.alphabet[x as usize].star
    }

    /// Letter-level star (no rewriting).
    pub fn star(&self, p: &NCPoly) -> NCPoly {
        p.star_letters(|x| self.star_partner(x))
    }

    pub fn cache_len(&self) -> usize {
        self.cache.lock().unwrap().len()
    }

    /// True when no rule left-hand side occurs in `w`.
    pub fn is_irreducible(&self, w: &Word) -> bool {
        let l = w.letters();
        (0..l.len()).all(|i| self.prefix_rule(&l[i..]).is_none())
    }

    fn prefix_rule(&self, w: &[Letter]) -> Option<&RewriteRule> {
        let first = *w.first()?;
        self.by_first[first as usize]
            .iter()
            .map(|&i| &self.rules[i])
            .find(|r| w.starts_with(r.lhs.letters()))
    }

    pub fn nf(&self, p: &NCPoly) -> Result<NCPoly, NcError> {
        let steps = Cell::new(0usize);
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            let n = self.nf_word_counted(w, &steps)?;
            out.add_scaled(&n, c);
        }
        Ok(out)
    }

    pub fn nf_word(&self, w: &Word) -> Result<NCPoly, NcError> {
        self.nf_word_counted(w, &Cell::new(0))
    }

    /// Normal form of the product `a b`.
    pub fn mul(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, NcError> {
        self.nf(&a.concat(b))
    }

    fn lookup(&self, w: &Word) -> Option<NCPoly> {
        self.cache.lock().unwrap().get(w).cloned()
    }

    fn store(&self, w: Word, p: &NCPoly) {
        self.cache.lock().unwrap().insert(w, p.clone());
    }

    fn nf_word_counted(&self, w: &Word, steps: &Cell<usize>) -> Result<NCPoly, NcError> {
        let l = w.letters();
        if l.is_empty() {
            return Ok(NCPoly::one());
        }
        if let Some(p) = self.lookup(w) {
            return Ok(p);
        }
        let tail = if l.len() == 1 {
            NCPoly::one()
        } else {
            self.nf_word_counted(&Word::from_slice(&l[1..]), steps)?
        };
        let mut out = NCPoly::zero();
        for (u, c) in tail.terms() {
            let p = self.nf_prefixed(l[0], u, steps)?;
            out.add_scaled(&p, c);
        }
        self.store(w.clone(), &out);
        Ok(out)
    }

    /// Normal form of `x u` where `u` is already irreducible; any redex
    /// must then start at position 0.
    fn nf_prefixed(&self, x: Letter, u: &Word, steps: &Cell<usize>) -> Result<NCPoly, NcError> {
        let xu = Word::concat3(&[x], u.letters(), &[]);
        let Some(rule) = self.prefix_rule(xu.letters()) else {
            return Ok(NCPoly::word(xu));
        };
        if let Some(p) = self.lookup(&xu) {
            return Ok(p);
        }
        steps.set(steps.get() + 1);
        if steps.get() > self.step_limit {
            return Err(NcError::StepLimitExceeded(self.step_limit));
        }
        let rest = &xu.letters()[rule.lhs.len()..];
        let mut out = NCPoly::zero();
        for (r, c) in rule.rhs.terms() {
            let w = Word::concat3(r.letters(), rest, &[]);
            let p = self.nf_word_counted(&w, steps)?;
            out.add_scaled(&p, c);
        }
        self.store(xu, &out);
        Ok(out)
    }

    /// All overlap and inclusion ambiguities with their obstructions.
    pub fn overlaps(&self) -> Result<Vec<Ambiguity>, NcError> {
        let mut out = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            let a = r1.lhs.letters();
            for (j, r2) in self.rules.iter().enumerate() {
                let b = r2.lhs.letters();
                // inclusion: b inside a
                if i != j && b.len() <= a.len() {
                    if let Some(pos) = r1.lhs.find(b) {
                        let left = NCPoly::word(Word::from_slice(&a[..pos]));
                        let right = NCPoly::word(Word::from_slice(&a[pos + b.len()..]));
                        let red1 = r1.rhs.clone();
                        let red2 = left.concat(&r2.rhs).concat(&right);
                        let obstruction = self.nf(&(&red1 - &red2))?;
                        out.push(Ambiguity { word: r1.lhs.clone(), rules: (i, j), obstruction });
                    }
                }
                // overlap: suffix of a equals prefix of b
                for k in 1..a.len().min(b.len()) {
                    if a[a.len() - k..] != b[..k] {
                        continue;
                    }
                    let word = Word::concat3(a, &b[k..], &[]);
                    let red1 = r1.rhs.concat(&NCPoly::word(Word::from_slice(&b[k..])));
                    let red2 = NCPoly::word(Word::from_slice(&a[..a.len() - k])).concat(&r2.rhs);
                    let obstruction = self.nf(&(&red1 - &red2))?;
                    out.push(Ambiguity { word, rules: (i, j), obstruction });
                }
            }
        }
        Ok(out)
    }

    /// Nonzero obstructions only.
    pub fn obstructions(&self) -> Result<Vec<Ambiguity>, NcError> {
        Ok(self.overlaps()?.into_iter().filter(|a| !a.obstruction.is_zero()).collect())
    }

    /// Bergman-style completion: resolve obstructions into new rules
    /// until every ambiguity resolves, or `max_rules` is exceeded.
    pub fn complete(&self, max_rules: usize) -> Result<(RewriteSystem, CompletionLog), NcError> {
        let mut sys = self.clone();
        let mut log = CompletionLog::default();
        loop {
            let obs = sys.obstructions()?;
            if obs.is_empty() {
                return Ok((sys, log));
            }
            log.rounds += 1;
            let mut rules = sys.rules.clone();
            let mut new_rules: Vec<RewriteRule> = Vec::new();
            for a in &obs {
                // reduce against rules found earlier in this round
                let tmp = RewriteSystem::new(sys.alphabet.clone(), [rules.clone(), new_rules.clone()].concat())
                    .with_step_limit(sys.step_limit);
                let p = tmp.nf(&a.obstruction)?;
                if let Some(r) = RewriteRule::from_relation(&p)? {
                    new_rules.push(r);
                }
            }
            log.added.extend(new_rules.iter().cloned());
            rules.extend(new_rules);
            if rules.len() > max_rules {
                return Err(NcError::CompletionDiverged { max_rules, pending: obs.len() });
            }
            let (rules, removed) = interreduce(&sys.alphabet, rules, sys.step_limit)?;
            log.removed += removed;
            sys = RewriteSystem::new(sys.alphabet.clone(), rules).with_step_limit(sys.step_limit);
        }
    }

    /// Orients each relation `p = 0` after reducing it by the rules found
    /// so far, then interreduces. Zero relations are skipped.
    pub fn from_relations(alphabet: Vec<Generator>, relations: &[NCPoly], step_limit: usize) -> Result<Self, NcError> {
        let mut sys = RewriteSystem::new(alphabet, Vec::new()).with_step_limit(step_limit);
        for p in relations {
            let r = sys.nf(p)?;
            if let Some(rule) = RewriteRule::from_relation(&r)? {
                let mut rules = sys.rules.clone();
                rules.push(rule);
                let (rules, _) = interreduce(&sys.alphabet, rules, step_limit)?;
                sys.set_rules(rules);
            }
        }
        Ok(sys)
    }

    /// Irreducible words of exactly the given length, in increasing order.
    pub fn irreducible_words(&self, len: usize) -> Vec<Word> {
        let n = self.alphabet.len() as Letter;
        let mut layer = vec![Word::empty()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &layer {
                for x in 0..n {
                    let v = Word::concat3(w.letters(), &[x], &[]);
                    // only suffixes ending at the new letter can be new redexes
                    let l = v.letters();
                    let fresh = (0..l.len()).all(|i| {
                        self.by_first[l[i] as usize]
                            .iter()
                            .all(|&k| self.rules[k].lhs.letters() != &l[i..])
                    });
                    if fresh {
                        next.push(v);
                    }
                }
            }
            layer = next;
        }
        layer.sort();
        layer
    }
}

/// Makes every lhs irreducible with respect to the other rules and
/// normalizes right-hand sides. Rules whose lhs became reducible are fed
/// back as relations, so no information is lost.
fn interreduce(
    alphabet: &[Generator],
    rules: Vec<RewriteRule>,
    limit: usize,
) -> Result<(Vec<RewriteRule>, usize), NcError> {
    let mut rules = rules;
    let mut removed = 0;
    loop {
        rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        let mut kept: Vec<RewriteRule> = Vec::new();
        let mut pending: Vec<NCPoly> = Vec::new();
        for (i, r) in rules.iter().enumerate() {
            let dup = kept.last().is_some_and(|k| k.lhs == r.lhs);
            let covered = rules
                .iter()
                .enumerate()
                .any(|(j, o)| j != i && o.lhs != r.lhs && r.lhs.find(o.lhs.letters()).is_some());
            if dup {
                pending.push(&kept.last().unwrap().rhs - &r.rhs);
            } else if covered {
                pending.push(&NCPoly::word(r.lhs.clone()) - &r.rhs);
            } else {
                kept.push(r.clone());
            }
        }
        removed += rules.len() - kept.len();
        let sys = RewriteSystem::new(alphabet.to_vec(), kept.clone()).with_step_limit(limit);
        let mut fresh = Vec::new();
        for p in &pending {
            let r = sys.nf(p)?;
            if let Some(rule) = RewriteRule::from_relation(&r)? {
                fresh.push(rule);
            }
        }
        if fresh.is_empty() {
            let mut out = Vec::with_capacity(kept.len());
            for r in kept {
                let rhs = sys.nf(&r.rhs)?;
                out.push(RewriteRule { lhs: r.lhs, rhs });
            }
            return Ok((out, removed));
        }
        rules = kept;
        rules.extend(fresh);
    }
}

impl RewriteSystem {
    /// Scalar of the single-word normal form `c w`, if it is one.
    pub fn nf_monomial(&self, w: &Word) -> Result<Option<(Word, Scalar)>, NcError> {
        let p = self.nf_word(w)?;
        if p.len() == 1 {
            let (w, c) = p.terms().next().unwrap();
            return Ok(Some((w.clone(), c.clone())));
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::parse_scalar;

    fn gens(names: &[&str]) -> Vec<Generator> {
        names
            .iter()
            .enumerate()
            .map(|(i, n)| Generator { name: n.to_string(), star: i as Letter })
            .collect()
    }

    fn w(l: &[Letter]) -> Word {
        Word::from_slice(l)
    }

    #[test]
    fn commutative_system_is_complete() {
        // yx -> xy
        let r = RewriteRule { lhs: w(&[1, 0]), rhs: NCPoly::word(w(&[0, 1])) };
        let s = RewriteSystem::new(gens(&["x", "y"]), vec![r]);
        assert!(s.obstructions().unwrap().is_empty());
        let (c, log) = s.complete(10).unwrap();
        assert_eq!(c.rules().len(), 1);
        assert!(log.added.is_empty());
        assert_eq!(s.nf_word(&w(&[1, 1, 0, 1, 0])).unwrap(), NCPoly::word(w(&[0, 0, 1, 1, 1])));
    }

    #[test]
    fn no_overlap_for_xy_to_one() {
        let r = RewriteRule { lhs: w(&[0, 1]), rhs: NCPoly::one() };
        let s = RewriteSystem::new(gens(&["x", "y"]), vec![r]);
        assert!(s.overlaps().unwrap().is_empty());
    }

    #[test]
    fn q_commutation_normal_form() {
        // yx -> q xy ; then y^2 x -> q^2 x y^2
        let q = parse_scalar("q").unwrap();
        let r = RewriteRule { lhs: w(&[1, 0]), rhs: NCPoly::term(w(&[0, 1]), q) };
        let s = RewriteSystem::new(gens(&["x", "y"]), vec![r]);
        let p = s.nf_word(&w(&[1, 1, 0])).unwrap();
        assert_eq!(p, NCPoly::term(w(&[0, 1, 1]), parse_scalar("q^2").unwrap()));
        assert_eq!(s.nf(&p).unwrap(), p);
    }

    #[test]
    fn completion_adds_missing_rule() {
        let r1 = RewriteRule { lhs: w(&[1, 1]), rhs: NCPoly::word(w(&[0])) };
        let r2 = RewriteRule { lhs: w(&[1, 0]), rhs: NCPoly::word(w(&[0, 1])) };
        let s = RewriteSystem::new(gens(&["x", "y"]), vec![r1, r2]);
        let (c, _) = s.complete(20).unwrap();
        assert!(c.obstructions().unwrap().is_empty());
    }

    #[test]
    fn step_limit_detects_loops() {
        // x -> y -> x cannot terminate; built without the order check
        let r1 = RewriteRule { lhs: w(&[0]), rhs: NCPoly::word(w(&[1])) };
        let r2 = RewriteRule { lhs: w(&[1]), rhs: NCPoly::word(w(&[0])) };
        let s = RewriteSystem::new(gens(&["x", "y"]), vec![r1, r2]).with_step_limit(50);
        assert_eq!(s.nf_word(&w(&[0])), Err(NcError::StepLimitExceeded(50)));
    }

    #[test]
    fn misoriented_rule_rejected() {
        let names = vec!["x".to_string(), "y".to_string()];
        assert!(RewriteRule::new(w(&[0, 1]), NCPoly::word(w(&[1, 0])), &names).is_err());
    }
}
