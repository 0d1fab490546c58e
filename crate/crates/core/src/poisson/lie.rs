//! `u(4)` as a 16-dimensional rational space, the cocycle `δ` and
//! coisotropy tests.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::coeff::{int, rat, Rational};
use crate::linalg::{Echelon, Insert, SparseVec};

#[derive(Debug, Error, PartialEq)]
pub enum LieError {
    #[error("matrix is not antihermitian")]
    NotAntihermitian,
    #[error("element is not in the span of the generated basis")]
    NotInSpan,
    #[error("span is not closed under the bracket")]
    NotASubalgebra,
}

/// Gaussian rational `re + i im`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QI {
    pub re: Rational,
    pub im: Rational,
}

impl QI {
    pub fn new(re: Rational, im: Rational) -> Self {
        QI { re, im }
    }
    pub fn real(re: Rational) -> Self {
        QI { re, im: Rational::zero() }
    }
    pub fn i() -> Self {
        QI::new(Rational::zero(), Rational::one())
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn conj(&self) -> Self {
        QI::new(self.re.clone(), -self.im.clone())
    }
}

impl fmt::Debug for QI {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

impl Add for &QI {
    type Output = QI;
    fn add(self, o: &QI) -> QI {
        QI::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &QI {
    type Output = QI;
    fn sub(self, o: &QI) -> QI {
        QI::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Neg for &QI {
    type Output = QI;
    fn neg(self) -> QI {
        QI::new(-self.re.clone(), -self.im.clone())
    }
}

impl Mul for &QI {
    type Output = QI;
    fn mul(self, o: &QI) -> QI {
        QI::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

/// A 4x4 matrix over `ℚ(i)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Mat4(pub [[QI; 4]; 4]);

impl Mat4 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(i: usize, j: usize, c: QI) -> Self {
        let mut m = Self::zero();
        m.0[i][j] = c;
        m
    }

    pub fn real(rows: [[i64; 4]; 4]) -> Self {
        Mat4(rows.map(|r| r.map(|x| QI::real(int(x)))))
    }

    pub fn mul(&self, o: &Mat4) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut s = QI::default();
                for k in 0..4 {
                    s = &s + &(&self.0[i][k] * &o.0[k][j]);
                }
                out.0[i][j] = s;
            }
        }
        out
    }

    pub fn add(&self, o: &Mat4) -> Mat4 {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] + &o.0[i][j])))
    }

    pub fn sub(&self, o: &Mat4) -> Mat4 {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] - &o.0[i][j])))
    }

    pub fn scale(&self, c: &QI) -> Mat4 {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| c * &self.0[i][j])))
    }

    pub fn dagger(&self) -> Mat4 {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].conj())))
    }
}

pub const DIM: usize = 16;

/// An element of `u(4)`: an antihermitian matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieElement(Mat4);

impl LieElement {
    pub fn new(m: Mat4) -> Result<Self, LieError> {
        if m.dagger() != m.scale(&QI::real(int(-1))) {
            return Err(LieError::NotAntihermitian);
        }
        Ok(LieElement(m))
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn bracket(&self, o: &LieElement) -> LieElement {
        LieElement(self.0.mul(&o.0).sub(&o.0.mul(&self.0)))
    }

    pub fn add(&self, o: &LieElement) -> LieElement {
        LieElement(self.0.add(&o.0))
    }

    pub fn scale(&self, c: &Rational) -> LieElement {
        LieElement(self.0.scale(&QI::real(c.clone())))
    }

    /// `g X g⁻¹` for a real orthogonal `g`.
    pub fn conjugate(&self, g: &Mat4) -> LieElement {
        LieElement(g.mul(&self.0).mul(&g.dagger()))
    }

    /// Coordinates: `Im X_kk`, then `Re X_kl, Im X_kl` for `k < l`.
    pub fn coords(&self) -> SparseVec<usize, Rational> {
        let mut v = SparseVec::new();
        let mut push = |i: usize, c: &Rational| {
            if !c.is_zero() {
                v.insert(i, c.clone());
            }
        };
        for k in 0..4 {
            push(k, &self.0 .0[k][k].im);
        }
        let mut idx = 4;
        for k in 0..4 {
            for l in k + 1..4 {
                push(idx, &self.0 .0[k][l].re);
                push(idx + 1, &self.0 .0[k][l].im);
                idx += 2;
            }
        }
        v
    }

    /// The coordinate basis vector `e_n`.
    pub fn basis(n: usize) -> LieElement {
        let i = QI::i();
        if n < 4 {
            return LieElement(Mat4::unit(n, n, i));
        }
        let mut idx = 4;
        for k in 0..4 {
            for l in k + 1..4 {
                if n == idx {
                    return LieElement(Mat4::unit(k, l, QI::real(int(1))).sub(&Mat4::unit(l, k, QI::real(int(1)))));
                }
                if n == idx + 1 {
                    return LieElement(Mat4::unit(k, l, i.clone()).add(&Mat4::unit(l, k, i.clone())));
                }
                idx += 2;
            }
        }
        panic!("basis index {n} out of range")
    }
}

/// `H_i = i(e_ii - e_{i+1,i+1})`, 1-based.
pub fn h(i: usize) -> LieElement {
    let m = Mat4::unit(i - 1, i - 1, QI::i()).sub(&Mat4::unit(i, i, QI::i()));
    LieElement(m)
}

/// `E_i = (1/2i)(e_{i,i+1} + e_{i+1,i})`
pub fn e(i: usize) -> LieElement {
    let c = QI::new(Rational::zero(), rat(-1, 2));
    LieElement(Mat4::unit(i - 1, i, c.clone()).add(&Mat4::unit(i, i - 1, c)))
}

/// `F_i = (1/2)(e_{i,i+1} - e_{i+1,i})`
pub fn f(i: usize) -> LieElement {
    let c = QI::real(rat(1, 2));
    LieElement(Mat4::unit(i - 1, i, c.clone()).sub(&Mat4::unit(i, i - 1, c)))
}

/// `H = i 𝕀`
pub fn central() -> LieElement {
    (0..4).fold(LieElement(Mat4::zero()), |acc, k| acc.add(&LieElement(Mat4::unit(k, k, QI::i()))))
}

/// The conjugating matrix of the twisted diagonal subgroup.
pub fn g_twist() -> Mat4 {
    Mat4::real([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
}

/// `⟨H_1+H_3, E_1+E_3, F_1+F_3⟩`
pub fn su2_diagonal() -> Vec<LieElement> {
    vec![h(1).add(&h(3)), e(1).add(&e(3)), f(1).add(&f(3))]
}

pub fn su2_conjugated() -> Vec<LieElement> {
    su2_diagonal().iter().map(|x| x.conjugate(&g_twist())).collect()
}

/// `h = H_1/4 + H_2/2 + 3H_3/4 + 3H/4` with `H_i, E_i, F_i` for `i = 1, 2`.
pub fn u3_generators() -> Vec<LieElement> {
    let hh = h(1)
        .scale(&rat(1, 4))
        .add(&h(2).scale(&rat(1, 2)))
        .add(&h(3).scale(&rat(3, 4)))
        .add(&central().scale(&rat(3, 4)));
    vec![hh, h(1), h(2), e(1), e(2), f(1), f(2)]
}

/// An element of `Λ²u(4)` in the coordinate basis `e_i ∧ e_j`, `i < j`.
pub type WedgeElement = SparseVec<(usize, usize), Rational>;

fn wedge_add(w: &mut WedgeElement, i: usize, j: usize, c: Rational) {
    if i == j || c.is_zero() {
        return;
    }
    let (k, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
    let e = w.entry(k).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        w.remove(&k);
    }
}

pub fn wedge(x: &LieElement, y: &LieElement) -> WedgeElement {
    let mut w = WedgeElement::new();
    let (cx, cy) = (x.coords(), y.coords());
    for (i, a) in &cx {
        for (j, b) in &cy {
            wedge_add(&mut w, *i, *j, a * b);
        }
    }
    w
}

fn wedge_axpy(w: &mut WedgeElement, c: &Rational, x: &WedgeElement) {
    for ((i, j), v) in x {
        wedge_add(w, *i, *j, c * v);
    }
}

/// `(ad_X ⊗ 1 + 1 ⊗ ad_X) w`
pub fn ad_wedge(x: &LieElement, w: &WedgeElement) -> WedgeElement {
    let mut out = WedgeElement::new();
    for ((i, j), c) in w {
        let (ei, ej) = (LieElement::basis(*i), LieElement::basis(*j));
        wedge_axpy(&mut out, c, &wedge(&x.bracket(&ei), &ej));
        wedge_axpy(&mut out, c, &wedge(&ei, &x.bracket(&ej)));
    }
    out
}

/// The cocycle `δ` on `u(4)`, extended from its generator values.
pub struct Cocycle {
    basis: Vec<LieElement>,
    deltas: Vec<WedgeElement>,
    echelon: Echelon<usize, Rational>,
}

impl Cocycle {
    /// `δ(H_i) = δ(H) = 0`, `δ(E_i) = E_i ∧ H_i`, `δ(F_i) = F_i ∧ H_i`.
    pub fn standard() -> Self {
        let mut gens = vec![(central(), WedgeElement::new())];
        for i in 1..=3 {
            gens.push((h(i), WedgeElement::new()));
            gens.push((e(i), wedge(&e(i), &h(i))));
            gens.push((f(i), wedge(&f(i), &h(i))));
        }
        Self::extend(gens)
    }

    /// Extends generator values through `δ[X,Y] = ad_X δY - ad_Y δX`.
    pub fn extend(gens: Vec<(LieElement, WedgeElement)>) -> Self {
        let mut c = Cocycle { basis: Vec::new(), deltas: Vec::new(), echelon: Echelon::new() };
        for (x, d) in &gens {
            c.try_add(x.clone(), d.clone());
        }
        let mut frontier = 0;
        while frontier < c.basis.len() && c.basis.len() < DIM {
            let y = c.basis[frontier].clone();
            let dy = c.deltas[frontier].clone();
            for (x, dx) in &gens {
                let mut d = ad_wedge(x, &dy);
                wedge_axpy(&mut d, &int(-1), &ad_wedge(&y, dx));
                c.try_add(x.bracket(&y), d);
            }
            frontier += 1;
        }
        c
    }

    fn try_add(&mut self, x: LieElement, d: WedgeElement) {
        if self.echelon.contains(&x.coords()) {
            return;
        }
        self.echelon.insert(&x.coords());
        self.basis.push(x);
        self.deltas.push(d);
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LieElement] {
        &self.basis
    }

    pub fn delta(&self, x: &LieElement) -> Result<WedgeElement, LieError> {
        let (res, combo) = self.echelon.reduce(&x.coords());
        if !res.is_empty() {
            return Err(LieError::NotInSpan);
        }
        let mut out = WedgeElement::new();
        for (k, c) in combo {
            wedge_axpy(&mut out, &c, &self.deltas[k]);
        }
        Ok(out)
    }

    /// Pairs of basis vectors on which the linear extension violates the
    /// cocycle identity.
    pub fn cocycle_failures(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for k in 0..self.basis.len() {
            for l in k + 1..self.basis.len() {
                let (x, y) = (&self.basis[k], &self.basis[l]);
                let lhs = self.delta(&x.bracket(y)).expect("basis spans u(4)");
                let mut rhs = ad_wedge(x, &self.deltas[l]);
                wedge_axpy(&mut rhs, &int(-1), &ad_wedge(y, &self.deltas[k]));
                if lhs != rhs {
                    bad.push((k, l));
                }
            }
        }
        bad
    }

    /// `δ(𝔥) ⊂ 𝔤 ∧ 𝔥`
    pub fn is_coisotropic(&self, span: &[LieElement]) -> Result<bool, LieError> {
        check_subalgebra(span)?;
        let mut ech: Echelon<(usize, usize), Rational> = Echelon::new();
        for n in 0..DIM {
            for x in span {
                ech.insert(&wedge(&LieElement::basis(n), x));
            }
        }
        self.contained(span, &ech)
    }

    /// `δ(𝔥) ⊂ 𝔥 ∧ 𝔥`
    pub fn is_poisson_lie(&self, span: &[LieElement]) -> Result<bool, LieError> {
        check_subalgebra(span)?;
        let mut ech: Echelon<(usize, usize), Rational> = Echelon::new();
        for x in span {
            for y in span {
                ech.insert(&wedge(x, y));
            }
        }
        self.contained(span, &ech)
    }

    fn contained(&self, span: &[LieElement], ech: &Echelon<(usize, usize), Rational>) -> Result<bool, LieError> {
        for x in span {
            if !ech.contains(&self.delta(x)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn span_echelon(span: &[LieElement]) -> Echelon<usize, Rational> {
    let mut ech = Echelon::new();
    for x in span {
        ech.insert(&x.coords());
    }
    ech
}

pub fn check_subalgebra(span: &[LieElement]) -> Result<(), LieError> {
    let ech = span_echelon(span);
    for x in span {
        for y in span {
            if !ech.contains(&x.bracket(y).coords()) {
                return Err(LieError::NotASubalgebra);
            }
        }
    }
    Ok(())
}

/// A basis of the Lie subalgebra generated by `gens`.
pub fn generated_subalgebra(gens: &[LieElement]) -> Vec<LieElement> {
    let mut ech = Echelon::new();
    let mut basis: Vec<LieElement> = Vec::new();
    for g in gens {
        if let Insert::New(_) = ech.insert(&g.coords()) {
            basis.push(g.clone());
        }
    }
    let mut i = 0;
    while i < basis.len() {
        for j in 0..basis.len() {
            let z = basis[i].bracket(&basis[j]);
            if !ech.contains(&z.coords()) {
                ech.insert(&z.coords());
                basis.push(z);
            }
        }
        i += 1;
    }
    basis
}

/// Dimension of a span.
pub fn span_dimension(span: &[LieElement]) -> usize {
    span_echelon(span).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_antihermitian() {
        for x in [h(1), e(2), f(3), central()] {
            assert!(LieElement::new(x.matrix().clone()).is_ok());
        }
        assert_eq!(LieElement::new(Mat4::unit(0, 1, QI::real(int(1)))), Err(LieError::NotAntihermitian));
        for n in 0..DIM {
            let b = LieElement::basis(n);
            assert_eq!(b.coords(), [(n, int(1))].into_iter().collect());
        }
    }

    #[test]
    fn cocycle_extends_consistently() {
        let c = Cocycle::standard();
        assert_eq!(c.dimension(), DIM);
        assert!(c.cocycle_failures().is_empty());
        assert!(c.delta(&h(2)).unwrap().is_empty());
        assert!(c.delta(&central()).unwrap().is_empty());
        let mut expect = wedge(&e(1), &h(1));
        wedge_axpy(&mut expect, &int(1), &wedge(&e(3), &h(3)));
        assert_eq!(c.delta(&e(1).add(&e(3))).unwrap(), expect);
    }

    #[test]
    fn coisotropy() {
        let c = Cocycle::standard();
        assert!(!c.is_coisotropic(&su2_diagonal()).unwrap());
        assert!(c.is_coisotropic(&su2_conjugated()).unwrap());
        assert!(!c.is_poisson_lie(&su2_conjugated()).unwrap());
        let u3 = generated_subalgebra(&u3_generators());
        assert_eq!(u3.len(), 9);
        assert!(c.is_coisotropic(&u3).unwrap());
        assert!(c.is_poisson_lie(&u3).unwrap());
        assert_eq!(c.is_coisotropic(&[e(1), e(2)]), Err(LieError::NotASubalgebra));
    }
}
