//! Exact sparse linear algebra over ℚ and ℚ(q).
//!
//! Vectors are sparse maps from an ordered coordinate key to a field
//! element, so word and tensor bases never need explicit indexing.

use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::coeff::{RatFn, Rational};
use num_traits::{One, Zero};

pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Division by a nonzero element.
    fn div(&self, o: &Self) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Field for RatFn {
    fn zero() -> Self {
        RatFn::zero()
    }
    fn one() -> Self {
        RatFn::one()
    }
    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        RatFn::div(self, o).expect("nonzero pivot")
    }
}

pub type SparseVec<K, F> = BTreeMap<K, F>;

fn axpy<K: Ord + Clone, F: Field>(y: &mut SparseVec<K, F>, a: &F, x: &SparseVec<K, F>) {
    for (k, v) in x {
        let t = a.mul(v);
        match y.get_mut(k) {
            Some(e) => {
                *e = e.add(&t);
                if e.is_zero() {
                    y.remove(k);
                }
            }
            None => {
                if !t.is_zero() {
                    y.insert(k.clone(), t);
                }
            }
        }
    }
}

/// Result of inserting a vector into an [`Echelon`].
#[derive(Debug, Clone, PartialEq)]
pub enum Insert<F> {
    /// Independent; stored under the given index.
    New(usize),
    /// Dependent: the vector equals `Σ c_i v_i` over earlier inserted vectors.
    Dependent(BTreeMap<usize, F>),
}

/// Incremental row echelon form with combination tracking.
#[derive(Debug, Clone)]
pub struct Echelon<K: Ord + Clone, F: Field> {
    rows: BTreeMap<K, (SparseVec<K, F>, BTreeMap<usize, F>)>,
    inserted: usize,
}

impl<K: Ord + Clone + Debug, F: Field> Default for Echelon<K, F> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new(), inserted: 0 }
    }
}

impl<K: Ord + Clone + Debug, F: Field> Echelon<K, F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors inserted so far.
    pub fn count(&self) -> usize {
        self.inserted
    }

    /// Reduces `v` against the stored rows, returning the residual and the
    /// combination of inserted vectors that was subtracted.
    pub fn reduce(&self, v: &SparseVec<K, F>) -> (SparseVec<K, F>, BTreeMap<usize, F>) {
        let mut v = v.clone();
        let mut combo: BTreeMap<usize, F> = BTreeMap::new();
        let mut cursor: Option<K> = None;
        loop {
            let next = v
                .iter()
                .rev()
                .filter(|(k, _)| cursor.as_ref().is_none_or(|c| *k < c))
                .find(|(k, _)| self.rows.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((k, c)) = next else { break };
            let (row, rc) = &self.rows[&k];
            let neg = F::zero().sub(&c);
            axpy(&mut v, &neg, row);
            axpy(&mut combo, &c, rc);
            cursor = Some(k);
        }
        (v, combo)
    }

    pub fn contains(&self, v: &SparseVec<K, F>) -> bool {
        self.reduce(v).0.is_empty()
    }

    pub fn insert(&mut self, v: &SparseVec<K, F>) -> Insert<F> {
        let idx = self.inserted;
        self.inserted += 1;
        let (res, combo) = self.reduce(v);
        let Some((lead, lc)) = res.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return Insert::Dependent(combo);
        };
        let inv = F::one().div(&lc);
        let row: SparseVec<K, F> = res.into_iter().map(|(k, c)| (k, c.mul(&inv))).collect();
        let mut rc: BTreeMap<usize, F> = BTreeMap::new();
        rc.insert(idx, inv.clone());
        let neg = F::zero().sub(&inv);
        axpy(&mut rc, &neg, &combo);
        self.rows.insert(lead, (row, rc));
        Insert::New(idx)
    }
}

/// Basis of the null space of the linear map sending the `i`-th input
/// to `images[i]`, as coefficient vectors over the inputs.
pub fn kernel<K: Ord + Clone + Debug, F: Field>(images: &[SparseVec<K, F>]) -> Vec<BTreeMap<usize, F>> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for (i, v) in images.iter().enumerate() {
        if let Insert::Dependent(combo) = e.insert(v) {
            let mut k: BTreeMap<usize, F> = combo.into_iter().map(|(j, c)| (j, F::zero().sub(&c))).collect();
            k.insert(i, F::one());
            out.push(k);
        }
    }
    out
}

/// Rank of a family of sparse vectors.
pub fn rank<K: Ord + Clone + Debug, F: Field>(vs: &[SparseVec<K, F>]) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

/// Finds `x` with `Σ x_i gens[i] = target`, if one exists.
pub fn solve<K: Ord + Clone + Debug, F: Field>(
    gens: &[SparseVec<K, F>],
    target: &SparseVec<K, F>,
) -> Option<BTreeMap<usize, F>> {
    let mut e = Echelon::new();
    for g in gens {
        e.insert(g);
    }
    let (res, combo) = e.reduce(target);
    res.is_empty().then_some(combo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{int, rat};

    fn v(xs: &[(u32, i64)]) -> SparseVec<u32, Rational> {
        xs.iter().map(|&(k, c)| (k, int(c))).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let vs = vec![v(&[(0, 1), (1, 2)]), v(&[(1, 1)]), v(&[(0, 2), (1, 5)])];
        assert_eq!(rank(&vs), 2);
        let k = kernel(&vs);
        assert_eq!(k.len(), 1);
        let mut sum: SparseVec<u32, Rational> = SparseVec::new();
        for (i, c) in &k[0] {
            axpy(&mut sum, c, &vs[*i]);
        }
        assert!(sum.is_empty());
    }

    #[test]
    fn solve_reports_combination() {
        let gens = vec![v(&[(0, 1)]), v(&[(0, 1), (2, 1)])];
        let x = solve(&gens, &v(&[(0, 3), (2, 2)])).unwrap();
        assert_eq!(x[&0], int(1));
        assert_eq!(x[&1], int(2));
        assert!(solve(&gens, &v(&[(1, 1)])).is_none());
        assert_eq!(rat(1, 2).div(&int(2)), rat(1, 4));
    }

    #[test]
    fn symbolic_field() {
        let q = RatFn::q();
        let a: SparseVec<u8, RatFn> = [(0, q.clone()), (1, RatFn::one())].into_iter().collect();
        let b: SparseVec<u8, RatFn> = [(0, &q * &q), (1, q.clone())].into_iter().collect();
        assert_eq!(rank(&[a, b]), 1);
    }
}
