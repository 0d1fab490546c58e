use super::{alphabet, CentralReducer, Presentation, MAX_RULES};
use crate::coeff::{Laurent, Scalar};
use crate::ncpoly::{Letter, NCPoly, NcError, RewriteSystem, Tensor, Word};

/// Generator names in increasing precedence. Letters of the off-diagonal
/// blocks come first, so in an ordered normal word they sit on the left
/// where the right ideal of the quotient can remove them.
pub const UQ4_LETTERS: [&str; 18] = [
    "D", "Dinv", "t14", "t23", "t13", "t24", "t32", "t41", "t31", "t42", "t33", "t34", "t43", "t44", "t22",
    "t12", "t21", "t11",
];

/// `(-q)^k`
pub(crate) fn minus_q_pow(k: i32) -> Scalar {
    let s = if k.rem_euclid(2) == 0 { 1 } else { -1 };
    Scalar::from(Laurent::q_pow(k)).scale(&crate::coeff::int(s))
}

/// U_q(4) with its Hopf structure. `D` is the quantum determinant and
/// `Dinv` its inverse; the relation `det = D` is imposed by division.
#[derive(Debug, Clone)]
pub struct Uq4 {
    pub pres: Presentation,
    t: [[Letter; 4]; 4],
    pub d: Letter,
    pub dinv: Letter,
    det: NCPoly,
}

impl Uq4 {
    pub fn build(step_limit: usize) -> Result<Uq4, NcError> {
        let gens = alphabet(&UQ4_LETTERS, &[("D", "Dinv")]);
        let idx = |n: &str| UQ4_LETTERS.iter().position(|x| *x == n).unwrap() as Letter;
        let mut t = [[0; 4]; 4];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = idx(&format!("t{}{}", i + 1, j + 1));
            }
        }
        let (d, dinv) = (idx("D"), idx("Dinv"));
        let mut labelled = frt_relations(&t);
        let w = |l: &[Letter]| NCPoly::word(Word::from_slice(l));
        labelled.push(("D Dinv = 1".into(), &w(&[d, dinv]) - &NCPoly::one()));
        labelled.push(("Dinv D = 1".into(), &w(&[dinv, d]) - &NCPoly::one()));
        for row in &t {
            for &x in row {
                labelled.push((format!("[{}, D] = 0", UQ4_LETTERS[x as usize]), &w(&[x, d]) - &w(&[d, x])));
                labelled.push((format!("[{}, Dinv] = 0", UQ4_LETTERS[x as usize]), &w(&[x, dinv]) - &w(&[dinv, x])));
            }
        }
        let rels: Vec<NCPoly> = labelled.iter().map(|(_, p)| p.clone()).collect();
        let seed = RewriteSystem::from_relations(gens, &rels, step_limit)?;
        let (system, log) = seed.complete(MAX_RULES)?;
        let mut pres = Presentation::new("uq4", system, Vec::new());
        pres.relations = labelled;
        pres.log = log;
        let mut u = Uq4 { pres, t, d, dinv, det: NCPoly::zero() };
        u.det = u.pres.system.nf(&u.minor(&[0, 1, 2, 3], &[0, 1, 2, 3]))?;
        u.pres.central = Some(CentralReducer::new(&u.det - &NCPoly::letter(d)));
        let mut stars = vec![NCPoly::zero(); UQ4_LETTERS.len()];
        for i in 0..4 {
            for j in 0..4 {
                stars[t[i][j] as usize] = u.antipode_gen(j, i)?;
            }
        }
        stars[d as usize] = NCPoly::letter(dinv);
        stars[dinv as usize] = NCPoly::letter(d);
        u.pres = Presentation { star_images: stars, ..u.pres };
        u.pres.elements.insert("det".into(), u.det.clone());
        Ok(u)
    }

    /// `t_ij`, zero-based indices.
    pub fn t(&self, i: usize, j: usize) -> NCPoly {
        NCPoly::letter(self.t[i][j])
    }

    pub fn t_letter(&self, i: usize, j: usize) -> Letter {
        self.t[i][j]
    }

    /// Zero-based (row, col) of a t-letter.
    pub fn index_of(&self, x: Letter) -> Option<(usize, usize)> {
        (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).find(|&(i, j)| self.t[i][j] == x)
    }

    /// The determinant polynomial in normal form (before identifying it with `D`).
    pub fn det_poly(&self) -> &NCPoly {
        &self.det
    }

    /// Quantum minor: `Σ_σ (-q)^{ℓ(σ)} t_{σ(c1) c1} ... t_{σ(ck) ck}` over
    /// bijections from the sorted columns onto the sorted rows.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> NCPoly {
        let mut out = NCPoly::zero();
        for perm in permutations(rows.len()) {
            let inv = inversions(&perm) as i32;
            let word: Vec<Letter> = cols.iter().zip(&perm).map(|(&c, &p)| self.t[rows[p]][c]).collect();
            out.add_term(Word::from(word), minus_q_pow(inv));
        }
        out
    }

    /// `(-q)^{i-j}` times the minor without row `j` and column `i`.
    pub fn cofactor(&self, i: usize, j: usize) -> Result<NCPoly, NcError> {
        let rows: Vec<usize> = (0..4).filter(|&r| r != j).collect();
        let cols: Vec<usize> = (0..4).filter(|&c| c != i).collect();
        let m = self.pres.system.nf(&self.minor(&rows, &cols))?;
        Ok(m.scale(&minus_q_pow(i as i32 - j as i32)))
    }

    /// `S(t_ij) = (-q)^{i-j} ξ^{ĵ}_{î} D^{-1}`.
    pub fn antipode_gen(&self, i: usize, j: usize) -> Result<NCPoly, NcError> {
        self.pres.system.nf(&self.cofactor(i, j)?.concat(&NCPoly::letter(self.dinv)))
    }

    fn antipode_letter(&self, x: Letter) -> Result<NCPoly, NcError> {
        if x == self.d {
            return Ok(NCPoly::letter(self.dinv));
        }
        if x == self.dinv {
            return Ok(NCPoly::letter(self.d));
        }
        let (i, j) = self.index_of(x).expect("t letter");
        self.antipode_gen(i, j)
    }

    /// Antihomomorphic extension of the generator formula.
    pub fn antipode(&self, p: &NCPoly) -> Result<NCPoly, NcError> {
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            let mut acc = NCPoly::one();
            for &x in w.letters().iter().rev() {
                acc = self.pres.mul(&acc, &self.antipode_letter(x)?)?;
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// `τ = * ∘ S`: the antilinear homomorphism `t_ij ↦ t_ji`, `D ↦ D`.
    pub fn tau(&self, p: &NCPoly) -> Result<NCPoly, NcError> {
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            let img: Vec<Letter> = w
                .letters()
                .iter()
                .map(|&x| match self.index_of(x) {
                    Some((i, j)) => self.t[j][i],
                    None => x,
                })
                .collect();
            out.add_term(Word::from(img), c.clone());
        }
        self.pres.nf(&out)
    }

    fn coproduct_letter(&self, x: Letter) -> Tensor {
        let mut out = Tensor::zero();
        match self.index_of(x) {
            Some((i, j)) => {
                for k in 0..4 {
                    out.add_term(vec![Word::letter(self.t[i][k]), Word::letter(self.t[k][j])], Scalar::one());
                }
            }
            None => out.add_term(vec![Word::letter(x), Word::letter(x)], Scalar::one()),
        }
        out
    }

    /// Multiplicative extension of `Δ t_ij = Σ_k t_ik ⊗ t_kj`, `ΔD = D ⊗ D`.
    pub fn coproduct(&self, p: &NCPoly) -> Result<Tensor, NcError> {
        let nf = |q: &NCPoly| self.pres.nf(q);
        let mut out = Tensor::zero();
        for (w, c) in p.terms() {
            let mut acc = Tensor::unit(2);
            for &x in w.letters() {
                acc = acc.mul_legwise(&self.coproduct_letter(x), &[&nf, &nf])?;
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// `ε(t_ij) = δ_ij`, `ε(D) = 1`, extended multiplicatively.
    pub fn counit_word(&self, w: &Word) -> Scalar {
        let zero = w.letters().iter().any(|&x| matches!(self.index_of(x), Some((i, j)) if i != j));
        if zero {
            Scalar::zero()
        } else {
            Scalar::one()
        }
    }

    pub fn counit(&self, p: &NCPoly) -> Scalar {
        p.terms().fold(Scalar::zero(), |acc, (w, c)| &acc + &(c * &self.counit_word(w)))
    }
}

/// The defining quadratic relations, each as `lhs - rhs`.
fn frt_relations(t: &[[Letter; 4]; 4]) -> Vec<(String, NCPoly)> {
    let q = Scalar::q();
    let w2 = |x: Letter, y: Letter| NCPoly::word(Word::from_slice(&[x, y]));
    let name = |i: usize, j: usize| format!("t{}{}", i + 1, j + 1);
    let q_minus_qinv = &q - &Scalar::q_pow(-1);
    let cells: Vec<(usize, usize)> = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for (n, &(a, b)) in cells.iter().enumerate() {
        for &(c, d) in &cells[n + 1..] {
            let (label, p) = if a == c {
                let (i, j) = (b.min(d), b.max(d));
                let (x, y) = (t[a][i], t[a][j]);
                (format!("{} {} = q {} {}", name(a, i), name(a, j), name(a, j), name(a, i)), &w2(x, y) - &w2(y, x).scale(&q))
            } else if b == d {
                let (i, j) = (a.min(c), a.max(c));
                let (x, y) = (t[i][b], t[j][b]);
                (format!("{} {} = q {} {}", name(i, b), name(j, b), name(j, b), name(i, b)), &w2(x, y) - &w2(y, x).scale(&q))
            } else {
                let ((i, k), (j, l)) = if a < c { ((a, b), (c, d)) } else { ((c, d), (a, b)) };
                let (x, y) = (t[i][k], t[j][l]);
                if k > l {
                    (format!("{} {} = {} {}", name(i, k), name(j, l), name(j, l), name(i, k)), &w2(x, y) - &w2(y, x))
                } else {
                    let extra = w2(t[j][k], t[i][l]).scale(&q_minus_qinv);
                    (
                        format!(
                            "{} {} - {} {} = (q - q^-1) {} {}",
                            name(i, k),
                            name(j, l),
                            name(j, l),
                            name(i, k),
                            name(j, k),
                            name(i, l)
                        ),
                        &(&w2(x, y) - &w2(y, x)) - &extra,
                    )
                }
            };
            out.push((label, p));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out.sort();
    out
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_signs() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(inversions(&[2, 1, 0]), 3);
        assert_eq!(minus_q_pow(3), Scalar::from(Laurent::q_pow(3)).scale(&crate::coeff::int(-1)));
    }

    fn uq4() -> Uq4 {
        Uq4::build(crate::ncpoly::DEFAULT_STEP_LIMIT).unwrap()
    }

    #[test]
    fn completed_system_is_ordered_pbw() {
        let u = uq4();
        assert!(u.pres.system.obstructions().unwrap().is_empty());
        for r in u.pres.system.rules() {
            let l = r.lhs.letters();
            assert!(l.len() == 2 && (l[0] > l[1] || l == [u.d, u.dinv]), "{:?}", l);
        }
        for (n, p) in u.pres.relation_residuals().unwrap() {
            assert!(p.is_zero(), "{n}");
        }
    }

    #[test]
    fn sample_relations() {
        let u = uq4();
        let p = u.pres.parse("t13 t24 - t24 t13").unwrap();
        assert_eq!(p, u.pres.parse("(q - q^-1) t23 t14").unwrap());
        assert!(u.pres.parse("t14 t23 - t23 t14").unwrap().is_zero());
        assert_eq!(u.pres.parse("t11 t21").unwrap(), u.pres.parse("q t21 t11").unwrap());
    }

    #[test]
    fn antipode_axioms() {
        let u = uq4();
        for i in 0..4 {
            for j in 0..4 {
                let mut l = NCPoly::zero();
                let mut r = NCPoly::zero();
                for k in 0..4 {
                    l = &l + &u.pres.mul(&u.antipode_gen(i, k).unwrap(), &u.t(k, j)).unwrap();
                    r = &r + &u.pres.mul(&u.t(i, k), &u.antipode_gen(k, j).unwrap()).unwrap();
                }
                let want = if i == j { NCPoly::one() } else { NCPoly::zero() };
                assert_eq!(l, want, "S(t) t at {i}{j}");
                assert_eq!(r, want, "t S(t) at {i}{j}");
            }
        }
    }

    #[test]
    fn determinant_is_central_and_grouplike() {
        let u = uq4();
        let d = NCPoly::letter(u.d);
        assert_eq!(u.pres.nf(u.det_poly()).unwrap(), d);
        for i in 0..4 {
            for j in 0..4 {
                let det_t = u.pres.system.mul(u.det_poly(), &u.t(i, j)).unwrap();
                let t_det = u.pres.system.mul(&u.t(i, j), u.det_poly()).unwrap();
                assert_eq!(det_t, t_det);
            }
        }
        assert_eq!(u.antipode(&d).unwrap(), NCPoly::letter(u.dinv));
    }

    #[test]
    fn unitarity() {
        let u = uq4();
        for i in 0..4 {
            for j in 0..4 {
                let mut a = NCPoly::zero();
                let mut b = NCPoly::zero();
                for k in 0..4 {
                    a = &a + &u.pres.mul(&u.t(i, k), &u.pres.star(&u.t(j, k)).unwrap()).unwrap();
                    b = &b + &u.pres.mul(&u.pres.star(&u.t(k, i)).unwrap(), &u.t(k, j)).unwrap();
                }
                let want = if i == j { NCPoly::one() } else { NCPoly::zero() };
                assert_eq!(a, want);
                assert_eq!(b, want);
            }
        }
    }
}
