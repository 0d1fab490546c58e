//! Sections of the associated rank-2 bundle, the projector `G` and the
//! classical quaternionic and complex projectors.

use thiserror::Error;

use crate::algebras::{build_classical_s7, build_sigma4q, specialize, Presentation};
use crate::coeff::{int, Rational, Scalar};
use crate::linalg::{kernel, rank, SparseVec};
use crate::ncpoly::{parse_poly, NCPoly, NcError, Tensor, Word};
use crate::quotient::{Coaction, QuotientError, DEGREE_BOUND};

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("entry ({row}, {col}): computed {computed}, expected {expected}")]
    EntryMismatch { row: usize, col: usize, computed: String, expected: String },
    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeBoundExceeded { degree: usize, bound: usize },
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Coeff(#[from] crate::coeff::CoeffError),
}

/// An element `F1 ⊗ e1 + F2 ⊗ e2` of `S^7_q ⊗ ℂ²`.
#[derive(Debug, Clone, PartialEq)]
pub struct Section(pub NCPoly, pub NCPoly);

/// The four generating sections, in the order `f1..f4`.
pub const SECTIONS: [(&str, &str); 4] =
    [("q z1", "q z2"), ("q z2*", "-q^2 z1*"), ("z4", "-z3"), ("q z3*", "z4*")];

/// The printed projector, entries in the 4-sphere generators.
pub const G_PRINTED: [[&str; 4]; 4] = [
    ["q^2 R", "0", "q a", "q^2 b"],
    ["0", "q^2 R", "q b*", "-q^3 a*"],
    ["q a*", "q b", "1 - R", "0"],
    ["q^2 b*", "-q^3 a", "0", "1 - q^4 R"],
];

/// The classical complex projector in `R, A, B`.
pub const G_CLASSICAL: [[&str; 4]; 4] = [
    ["R", "0", "A", "B"],
    ["0", "R", "-B*", "A*"],
    ["A*", "-B", "1 - R", "0"],
    ["B*", "A", "0", "1 - R"],
];

pub fn sections(s7: &Presentation) -> Result<Vec<Section>, NcError> {
    SECTIONS.iter().map(|(a, b)| Ok(Section(s7.parse(a)?, s7.parse(b)?))).collect()
}

/// `⟨F, H⟩ = F1 H1* + F2 H2*`
pub fn pairing(s7: &Presentation, f: &Section, h: &Section) -> Result<NCPoly, NcError> {
    Ok(&s7.mul(&f.0, &s7.star(&h.0)?)? + &s7.mul(&f.1, &s7.star(&h.1)?)?)
}

/// `Δ_r(F_j) = Σ_i F_i ⊗ r_ij` for `j = 1, 2`.
pub fn check_cotensor(co: &Coaction, f: &Section) -> Result<bool, BundleError> {
    let r = block_letters(co)?;
    let comps = [&f.0, &f.1];
    for j in 0..2 {
        let lhs = co.coact_r(comps[j])?;
        let mut rhs = Tensor::zero();
        for i in 0..2 {
            for (w, c) in co.s7.nf(comps[i])?.terms() {
                rhs.add_term(vec![w.clone(), Word::letter(r[i][j])], c.clone());
            }
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

fn block_letters(co: &Coaction) -> Result<[[u16; 2]; 2], NcError> {
    let uq = co.quot.pres();
    Ok([[uq.letter("t11")?, uq.letter("t12")?], [uq.letter("t21")?, uq.letter("t22")?]])
}

/// Square matrix with entries in a presentation.
#[derive(Debug, Clone, PartialEq)]
pub struct NCMatrix {
    pub n: usize,
    pub entries: Vec<NCPoly>,
}

impl NCMatrix {
    pub fn zero(n: usize) -> Self {
        NCMatrix { n, entries: vec![NCPoly::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = NCPoly::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Result<NCPoly, NcError>) -> Result<Self, NcError> {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j)?);
            }
        }
        Ok(NCMatrix { n, entries })
    }

    /// Parses textual entries over the presentation's generators.
    pub fn parse(pres: &Presentation, rows: &[[&str; 4]; 4]) -> Result<Self, NcError> {
        Self::from_fn(4, |i, j| pres.parse(rows[i][j]))
    }

    pub fn get(&self, i: usize, j: usize) -> &NCPoly {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, o: &NCMatrix, pres: &Presentation) -> Result<NCMatrix, NcError> {
        Self::from_fn(self.n, |i, j| {
            let mut s = NCPoly::zero();
            for k in 0..self.n {
                s = &s + &pres.mul(self.get(i, k), o.get(k, j))?;
            }
            Ok(s)
        })
    }

    pub fn sub(&self, o: &NCMatrix) -> NCMatrix {
        NCMatrix { n: self.n, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect() }
    }

    /// `(M†)_ij = (M_ji)*`
    pub fn dagger(&self, pres: &Presentation) -> Result<NCMatrix, NcError> {
        Self::from_fn(self.n, |i, j| pres.star(self.get(j, i)))
    }

    pub fn map(&self, mut f: impl FnMut(&NCPoly) -> Result<NCPoly, NcError>) -> Result<NCMatrix, NcError> {
        Ok(NCMatrix { n: self.n, entries: self.entries.iter().map(&mut f).collect::<Result<_, _>>()? })
    }

    pub fn trace(&self) -> NCPoly {
        (0..self.n).fold(NCPoly::zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(NCPoly::is_zero)
    }

    pub fn render(&self, pres: &Presentation) -> String {
        let cells: Vec<String> = self.entries.iter().map(|p| pres.render(p)).collect();
        let w = cells.iter().map(String::len).max().unwrap_or(1);
        cells.chunks(self.n).map(|r| format!("[ {} ]", r.iter().map(|c| format!("{c:>w$}")).collect::<Vec<_>>().join(" , "))).collect::<Vec<_>>().join("\n")
    }
}

/// Residuals `M² - M` and `M - M†`.
#[derive(Debug, Clone)]
pub struct ProjectorReport {
    pub idempotent: NCMatrix,
    pub selfadjoint: NCMatrix,
}

impl ProjectorReport {
    pub fn passed(&self) -> bool {
        self.idempotent.is_zero() && self.selfadjoint.is_zero()
    }
}

pub fn verify_projector(m: &NCMatrix, pres: &Presentation) -> Result<ProjectorReport, NcError> {
    let m = m.map(|p| pres.nf(p))?;
    Ok(ProjectorReport { idempotent: m.mul(&m, pres)?.sub(&m), selfadjoint: m.sub(&m.dagger(pres)?) })
}

/// The projector computed from the sections (in S^7_q) alongside the
/// printed matrix over the 4-sphere.
#[derive(Debug, Clone)]
pub struct Projector {
    pub sigma4: Presentation,
    /// Printed entries over the 4-sphere.
    pub g: NCMatrix,
    /// `⟨f_i, f_j⟩` in S^7_q.
    pub pairings: NCMatrix,
}

/// Assembles `G_ij = ⟨f_i, f_j⟩` and compares each entry with the printed
/// matrix pushed into S^7_q.
pub fn build_g(s7: &Presentation, step_limit: usize) -> Result<Projector, BundleError> {
    let sigma4 = build_sigma4q(step_limit)?;
    let g = NCMatrix::parse(&sigma4, &G_PRINTED)?;
    let f = sections(s7)?;
    let pairings = NCMatrix::from_fn(4, |i, j| pairing(s7, &f[i], &f[j]))?;
    let images: Vec<NCPoly> = sigma4.names().iter().map(|n| s7.get(n)).collect();
    for i in 0..4 {
        for j in 0..4 {
            let expected = sigma4.substitute(g.get(i, j), &images, s7)?;
            if &expected != pairings.get(i, j) {
                return Err(BundleError::EntryMismatch {
                    row: i + 1,
                    col: j + 1,
                    computed: s7.render(pairings.get(i, j)),
                    expected: s7.render(&expected),
                });
            }
        }
    }
    Ok(Projector { sigma4, g, pairings })
}

/// Dimension evidence for the cotensor module at bounded degree.
#[derive(Debug, Clone)]
pub struct SectionSlice {
    pub degree: usize,
    /// Null space dimension of the equivariance defect on pairs of words.
    pub dimension: usize,
    /// Rank of `{ m f_i }` over 4-sphere monomials `m` of matching degree.
    pub generated: usize,
    /// Every `m f_i` satisfies the cotensor condition at the sample value.
    pub generated_in_kernel: bool,
}

impl SectionSlice {
    pub fn spans(&self) -> bool {
        self.generated_in_kernel && self.generated == self.dimension
    }
}

type Key = (usize, Vec<Word>);

fn eval_tensor(t: &Tensor, j: usize, sign: i64, q0: &Rational, out: &mut SparseVec<Key, Rational>) -> Result<(), BundleError> {
    for (legs, c) in t.terms() {
        let e = c.eval_at(q0)? * Rational::from_integer(sign.into());
        let k = (j, legs.clone());
        let s = out.remove(&k).unwrap_or_else(num_traits::Zero::zero) + e;
        if !num_traits::Zero::is_zero(&s) {
            out.insert(k, s);
        }
    }
    Ok(())
}

fn defect(co: &Coaction, f: &[NCPoly; 2], q0: &Rational) -> Result<SparseVec<Key, Rational>, BundleError> {
    let r = block_letters(co)?;
    let mut v = SparseVec::new();
    for j in 0..2 {
        eval_tensor(&co.coact_r(&f[j])?, j, 1, q0, &mut v)?;
        for i in 0..2 {
            let mut t = Tensor::zero();
            for (w, c) in co.s7.nf(&f[i])?.terms() {
                t.add_term(vec![w.clone(), Word::letter(r[i][j])], c.clone());
            }
            eval_tensor(&t, j, -1, q0, &mut v)?;
        }
    }
    Ok(v)
}

fn coords(p: &NCPoly, slot: usize, q0: &Rational, out: &mut SparseVec<(usize, Word), Rational>) -> Result<(), BundleError> {
    for (w, c) in p.terms() {
        let e = c.eval_at(q0)?;
        if !num_traits::Zero::is_zero(&e) {
            out.insert((slot, w.clone()), e);
        }
    }
    Ok(())
}

/// Solves the cotensor condition on pairs of normal words of length
/// `<= d` at `q = q0`, and compares with the module generated by `f_i`.
pub fn section_slice(co: &Coaction, d: usize, q0: &Rational) -> Result<SectionSlice, BundleError> {
    if d > DEGREE_BOUND {
        return Err(BundleError::DegreeBoundExceeded { degree: d, bound: DEGREE_BOUND });
    }
    let s7 = &co.s7;
    let words: Vec<Word> = (0..=d).flat_map(|k| s7.system.irreducible_words(k)).collect();
    let mut defects = Vec::new();
    for slot in 0..2 {
        for w in &words {
            let mut f = [NCPoly::zero(), NCPoly::zero()];
            f[slot] = NCPoly::word(w.clone());
            defects.push(defect(co, &f, q0)?);
        }
    }
    let dimension = kernel(&defects).len();
    let sigma4 = build_sigma4q(s7.system.step_limit())?;
    let images: Vec<NCPoly> = sigma4.names().iter().map(|n| s7.get(n)).collect();
    let fs = sections(s7)?;
    let mut gens = Vec::new();
    let mut in_kernel = true;
    if d >= 1 {
        for k in 0..=(d - 1) / 2 {
            for w in sigma4.system.irreducible_words(k) {
                let m = sigma4.substitute(&NCPoly::word(w), &images, s7)?;
                for f in &fs {
                    let pair = [s7.mul(&m, &f.0)?, s7.mul(&m, &f.1)?];
                    in_kernel &= defect(co, &pair, q0)?.is_empty();
                    let mut v = SparseVec::new();
                    coords(&pair[0], 0, q0, &mut v)?;
                    coords(&pair[1], 1, q0, &mut v)?;
                    gens.push(v);
                }
            }
        }
    }
    Ok(SectionSlice { degree: d, dimension, generated: rank(&gens), generated_in_kernel: in_kernel })
}

/// A rational quaternion `c0 + c1 i + c2 j + c3 k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalQuaternion(pub [Rational; 4]);

impl RationalQuaternion {
    pub fn new(c: [i64; 4]) -> Self {
        RationalQuaternion(c.map(int))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [a1, b1, c1, d1] = &self.0;
        let [a2, b2, c2, d2] = &o.0;
        RationalQuaternion([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = self.0.clone();
        RationalQuaternion([a, -b, -c, -d])
    }

    /// `|x|² = x x̄`
    pub fn norm2(&self) -> Rational {
        self.0.iter().map(|c| c * c).sum()
    }
}

/// A quaternion `u + v j` with `u, v` in a commutative *-algebra; `j x = x* j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quaternion {
    pub u: NCPoly,
    pub v: NCPoly,
}

impl Quaternion {
    pub fn new(u: NCPoly, v: NCPoly) -> Self {
        Quaternion { u, v }
    }

    pub fn mul(&self, o: &Quaternion, p: &Presentation) -> Result<Quaternion, NcError> {
        // (u + v j)(x + y j) = (u x - v y*) + (u y + v x*) j
        let u = &p.mul(&self.u, &o.u)? - &p.mul(&self.v, &p.star(&o.v)?)?;
        let v = &p.mul(&self.u, &o.v)? + &p.mul(&self.v, &p.star(&o.u)?)?;
        Ok(Quaternion { u, v })
    }

    pub fn conj(&self, p: &Presentation) -> Result<Quaternion, NcError> {
        Ok(Quaternion { u: p.star(&self.u)?, v: -&self.v })
    }

    pub fn add(&self, o: &Quaternion) -> Quaternion {
        Quaternion { u: &self.u + &o.u, v: &self.v + &o.v }
    }

    pub fn sub(&self, o: &Quaternion) -> Quaternion {
        Quaternion { u: &self.u - &o.u, v: &self.v - &o.v }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// Pauli image `[[u, -v], [v*, u*]]`.
    pub fn pauli(&self, p: &Presentation) -> Result<[[NCPoly; 2]; 2], NcError> {
        Ok([[self.u.clone(), -&self.v], [p.star(&self.v)?, p.star(&self.u)?]])
    }
}

#[derive(Debug, Clone)]
pub struct ClassicalReport {
    /// Quaternionic `G² - G`.
    pub quaternionic_residual: Vec<Quaternion>,
    pub complex: ProjectorReport,
    /// Pauli image of the quaternionic matrix minus the complex one.
    pub pauli_difference: NCMatrix,
    /// `|A|² + |B|² - R(1 - R)`
    pub sphere_residual: NCPoly,
    /// `Q - (A - B j)` with `Q = q1 q2*`.
    pub q_residual: Quaternion,
    /// Signs `s` with `G(q=1)_ij = s_i s_j (i* Gc)_ij`, if any.
    pub dictionary: Option<[i64; 4]>,
    /// The complex projector built from its generating sections.
    pub sections_match: bool,
}

impl ClassicalReport {
    pub fn passed(&self) -> bool {
        self.quaternionic_residual.iter().all(Quaternion::is_zero)
            && self.complex.passed()
            && self.pauli_difference.is_zero()
            && self.sphere_residual.is_zero()
            && self.q_residual.is_zero()
            && self.dictionary.is_some()
            && self.sections_match
    }
}

/// The classical checks on the commutative 7-sphere.
pub fn classical_crosscheck(step_limit: usize) -> Result<ClassicalReport, BundleError> {
    let c7 = build_classical_s7(step_limit)?;
    let p = |s: &str| c7.parse(s);
    let r = p("z1 z1* + z2 z2*")?;
    let a_big = p("z1 z3* + z2 z4*")?;
    let b_big = p("z1 z4 - z2 z3")?;
    let one = NCPoly::one();

    let q1 = Quaternion::new(p("z1")?, p("z2")?);
    let q2 = Quaternion::new(p("z3")?, p("z4")?);
    let gq = [
        [q1.mul(&q1.conj(&c7)?, &c7)?, q1.mul(&q2.conj(&c7)?, &c7)?],
        [q2.mul(&q1.conj(&c7)?, &c7)?, q2.mul(&q2.conj(&c7)?, &c7)?],
    ];
    let q_residual = gq[0][1].sub(&Quaternion::new(a_big.clone(), -&b_big));
    let mut quaternionic_residual = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let s = gq[i][0].mul(&gq[0][j], &c7)?.add(&gq[i][1].mul(&gq[1][j], &c7)?);
            quaternionic_residual.push(s.sub(&gq[i][j]));
        }
    }

    let names: Vec<String> = ["R", "A", "B", "A*", "B*"].iter().map(|s| s.to_string()).collect();
    let subs = [r.clone(), a_big.clone(), b_big.clone(), c7.star(&a_big)?, c7.star(&b_big)?];
    let gc = NCMatrix::from_fn(4, |i, j| {
        let e = parse_poly(G_CLASSICAL[i][j], &names)?;
        let mut out = NCPoly::zero();
        for (w, c) in e.terms() {
            let factors: Vec<&NCPoly> = w.letters().iter().map(|&x| &subs[x as usize]).collect();
            out.add_scaled(&c7.product(&factors)?, c);
        }
        Ok(out)
    })?;
    let complex = verify_projector(&gc, &c7)?;

    let mut pauli = NCMatrix::zero(4);
    for bi in 0..2 {
        for bj in 0..2 {
            let m = gq[bi][bj].pauli(&c7)?;
            for i in 0..2 {
                for j in 0..2 {
                    pauli.entries[(2 * bi + i) * 4 + 2 * bj + j] = c7.nf(&m[i][j])?;
                }
            }
        }
    }
    let pauli_difference = pauli.sub(&gc);

    let sphere_residual =
        &(&c7.mul(&a_big, &c7.star(&a_big)?)? + &c7.mul(&b_big, &c7.star(&b_big)?)?) - &c7.mul(&r, &(&one - &r))?;

    let classical_sections = [("z1", "z2"), ("z2*", "-z1*"), ("z3", "z4"), ("z4*", "-z3*")];
    let cs: Vec<Section> =
        classical_sections.iter().map(|(a, b)| Ok(Section(p(a)?, p(b)?))).collect::<Result<_, NcError>>()?;
    let from_sections = NCMatrix::from_fn(4, |i, j| pairing(&c7, &cs[i], &cs[j]))?;
    let sections_match = from_sections == gc;

    let dictionary = sign_dictionary(&c7, &gc, step_limit)?;
    Ok(ClassicalReport {
        quaternionic_residual,
        complex,
        pauli_difference,
        sphere_residual,
        q_residual,
        dictionary,
        sections_match,
    })
}

/// Pulls the complex projector back along `i(z) = (z1, z2, -z4, z3)` and
/// searches diagonal signs matching the `q = 1` specialization of the
/// printed quantum projector.
fn sign_dictionary(c7: &Presentation, gc: &NCMatrix, step_limit: usize) -> Result<Option<[i64; 4]>, BundleError> {
    let images: Vec<NCPoly> = c7
        .names()
        .iter()
        .map(|n| match n.as_str() {
            "z3" => c7.parse("-z4"),
            "z4" => c7.parse("z3"),
            "z3*" => c7.parse("-z4*"),
            "z4*" => c7.parse("z3*"),
            other => Ok(c7.gen(other)),
        })
        .collect::<Result<_, _>>()?;
    let pulled = gc.map(|e| c7.substitute(e, &images, c7))?;
    let sigma4 = build_sigma4q(step_limit)?;
    let g = NCMatrix::parse(&sigma4, &G_PRINTED)?;
    let s4_images: Vec<NCPoly> = sigma4.names().iter().map(|n| c7.get(n)).collect();
    let g1 = g.map(|e| sigma4.substitute(&specialize(e, &int(1))?, &s4_images, c7))?;
    for mask in 0..16u32 {
        let s: [i64; 4] = std::array::from_fn(|i| if mask >> i & 1 == 1 { -1 } else { 1 });
        let ok = (0..4).all(|i| {
            (0..4).all(|j| pulled.get(i, j).scale(&Scalar::from(int(s[i] * s[j]))) == *g1.get(i, j))
        });
        if ok {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::ncpoly::DEFAULT_STEP_LIMIT;

    fn coaction() -> Coaction {
        Coaction::build(DEFAULT_STEP_LIMIT).unwrap()
    }

    #[test]
    fn sections_are_equivariant() {
        let co = coaction();
        for f in sections(&co.s7).unwrap() {
            assert!(check_cotensor(&co, &f).unwrap());
        }
        let bad = Section(co.s7.gen("z1"), NCPoly::zero());
        assert!(!check_cotensor(&co, &bad).unwrap());
    }

    #[test]
    fn projector_matches_and_is_idempotent() {
        let co = coaction();
        let p = build_g(&co.s7, DEFAULT_STEP_LIMIT).unwrap();
        let rep = verify_projector(&p.g, &p.sigma4).unwrap();
        assert!(rep.passed(), "{}", rep.idempotent.render(&p.sigma4));
        assert_eq!(p.sigma4.nf(&p.g.trace()).unwrap(), p.sigma4.parse("2 - (1-q^2)^2 R").unwrap());
        assert!(verify_projector(&NCMatrix::identity(4), &p.sigma4).unwrap().passed());
    }

    #[test]
    fn classical() {
        let rep = classical_crosscheck(DEFAULT_STEP_LIMIT).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.dictionary, Some([1, 1, -1, 1]));
    }

    #[test]
    fn quaternion_units() {
        let [one, i, j, k] = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]].map(RationalQuaternion::new);
        let m1 = RationalQuaternion::new([-1, 0, 0, 0]);
        for u in [&i, &j, &k] {
            assert_eq!(u.mul(u), m1);
        }
        assert_eq!(i.mul(&j), k);
        assert_eq!(j.mul(&k), i);
        assert_eq!(k.mul(&i), j);
        assert_eq!(j.mul(&i), k.mul(&m1));
        let x = RationalQuaternion::new([1, -2, 3, 5]);
        assert_eq!(x.mul(&x.conj()), RationalQuaternion([x.norm2(), int(0), int(0), int(0)]));
        assert_eq!(x.mul(&one), x);
    }

    #[test]
    fn pairings_are_coinvariant_and_sesquilinear() {
        let co = coaction();
        let s7 = &co.s7;
        let f = sections(s7).unwrap();
        for fi in &f {
            for fj in &f {
                assert!(co.is_coinvariant(&pairing(s7, fi, fj).unwrap()).unwrap());
            }
        }
        for x in ["a", "b*", "R"] {
            let x = s7.get(x);
            let xs = s7.star(&x).unwrap();
            for fi in &f {
                for fj in &f {
                    let xf = Section(s7.mul(&x, &fi.0).unwrap(), s7.mul(&x, &fi.1).unwrap());
                    let xh = Section(s7.mul(&x, &fj.0).unwrap(), s7.mul(&x, &fj.1).unwrap());
                    let p = pairing(s7, fi, fj).unwrap();
                    assert_eq!(pairing(s7, &xf, fj).unwrap(), s7.mul(&x, &p).unwrap());
                    assert_eq!(pairing(s7, fi, &xh).unwrap(), s7.mul(&p, &xs).unwrap());
                }
            }
        }
    }

    #[test]
    fn slice_degree_three_matches_classical() {
        let co = coaction();
        let s = section_slice(&co, 3, &rat(2, 7)).unwrap();
        let c = section_slice(&co, 3, &int(1)).unwrap();
        assert!(s.spans(), "{s:?}");
        assert_eq!(s.dimension, c.dimension);
    }

    #[test]
    fn slice_degree_one() {
        let co = coaction();
        let s = section_slice(&co, 1, &rat(2, 7)).unwrap();
        assert_eq!(s.dimension, 4);
        assert!(s.spans());
        assert_eq!(section_slice(&co, 0, &rat(2, 7)).unwrap().dimension, 0);
    }
}
