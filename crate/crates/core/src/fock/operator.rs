//! Truncated operators on `ℓ²(ℕ)⊗²` with exact radical entries.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::radical::RadicalScalar;
use super::FockError;
use crate::coeff::Rational;

/// A basis state `|n1, n2⟩`.
pub type State = (u32, u32);

/// Matrix entries `⟨out| X |in⟩` on states with `n1, n2 <= cutoff`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedOperator {
    pub cutoff: u32,
    pub q0: Rational,
    entries: BTreeMap<(State, State), RadicalScalar>,
}

impl TruncatedOperator {
    pub fn zero(cutoff: u32, q0: &Rational) -> Self {
        TruncatedOperator { cutoff, q0: q0.clone(), entries: BTreeMap::new() }
    }

    pub fn states(cutoff: u32) -> impl Iterator<Item = State> {
        (0..=cutoff).flat_map(move |n1| (0..=cutoff).map(move |n2| (n1, n2)))
    }

    pub fn identity(cutoff: u32, q0: &Rational) -> Self {
        Self::diagonal(cutoff, q0, |_| RadicalScalar::one())
    }

    pub fn diagonal(cutoff: u32, q0: &Rational, f: impl Fn(State) -> RadicalScalar) -> Self {
        let mut op = Self::zero(cutoff, q0);
        for s in Self::states(cutoff) {
            op.set(s, s, f(s));
        }
        op
    }

    /// The weighted shift `|s⟩ ↦ w(s) |t(s)⟩`, dropping targets outside the box.
    pub fn shift(cutoff: u32, q0: &Rational, f: impl Fn(State) -> Option<(State, RadicalScalar)>) -> Self {
        let mut op = Self::zero(cutoff, q0);
        for s in Self::states(cutoff) {
            if let Some((t, w)) = f(s) {
                if t.0 <= cutoff && t.1 <= cutoff {
                    op.set(t, s, w);
                }
            }
        }
        op
    }

    pub fn set(&mut self, out: State, inp: State, v: RadicalScalar) {
        if v.is_zero() {
            self.entries.remove(&(out, inp));
        } else {
            self.entries.insert((out, inp), v);
        }
    }

    pub fn get(&self, out: State, inp: State) -> RadicalScalar {
        self.entries.get(&(out, inp)).cloned().unwrap_or_else(RadicalScalar::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(State, State), &RadicalScalar)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn accumulate(&mut self, k: (State, State), v: RadicalScalar) -> Result<(), FockError> {
        let cur = self.entries.remove(&k).unwrap_or_else(RadicalScalar::zero);
        let s = cur.add(&v)?;
        if !s.is_zero() {
            self.entries.insert(k, s);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, FockError> {
        let mut out = self.clone();
        for (k, v) in &o.entries {
            out.accumulate(*k, v.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.cutoff, &self.q0);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.entries {
            out.entries.insert(*k, v.scale(c));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Result<Self, FockError> {
        let mut by_col: BTreeMap<State, Vec<(State, &RadicalScalar)>> = BTreeMap::new();
        for ((out, inp), v) in &self.entries {
            by_col.entry(*inp).or_default().push((*out, v));
        }
        let mut res = Self::zero(self.cutoff, &self.q0);
        for ((mid, inp), w) in &o.entries {
            if let Some(col) = by_col.get(mid) {
                for (out, v) in col {
                    res.accumulate((*out, *inp), v.mul(w))?;
                }
            }
        }
        Ok(res)
    }

    /// Entries are real, so the adjoint is the transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.cutoff, &self.q0);
        for ((o, i), v) in &self.entries {
            out.entries.insert((*i, *o), v.clone());
        }
        out
    }

    /// Nonzero entries whose in and out indices are all `<= cutoff - margin`.
    pub fn interior_entries(&self, margin: u32) -> Vec<((State, State), RadicalScalar)> {
        let Some(lim) = self.cutoff.checked_sub(margin) else { return Vec::new() };
        let inside = |s: &State| s.0 <= lim && s.1 <= lim;
        self.entries.iter().filter(|((o, i), _)| inside(o) && inside(i)).map(|(k, v)| (*k, v.clone())).collect()
    }

    /// Number of states in the interior band.
    pub fn interior_size(&self, margin: u32) -> usize {
        self.cutoff.checked_sub(margin).map_or(0, |l| ((l + 1) * (l + 1)) as usize)
    }

    pub fn trace(&self) -> Result<RadicalScalar, FockError> {
        let mut t = RadicalScalar::zero();
        for ((o, i), v) in &self.entries {
            if o == i {
                t = t.add(v)?;
            }
        }
        Ok(t)
    }

    /// `Σ |entries|` over columns with `max(n1, n2) <= k`, for `k = 0..=cutoff`.
    pub fn abs_partial_sums(&self) -> Vec<f64> {
        let mut per_level = vec![0f64; self.cutoff as usize + 1];
        for ((_, i), v) in &self.entries {
            per_level[i.0.max(i.1) as usize] += v.abs().to_f64();
        }
        per_level
            .iter()
            .scan(0f64, |acc, x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }
}
