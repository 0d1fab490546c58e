//! Quadratic Poisson brackets on `ℂ⁴` given by a generator table.

use super::poly::{conj_var, z, zs, CPoly, Frac, NVARS};
use crate::coeff::int;

/// Diagonal entry `{z_j*, z_j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diagonal {
    /// As printed: `Σ_{i<j} z_j z_j* = (j-1) z_j z_j*`.
    Printed,
    /// `c Σ_{i<j} z_i z_i*`.
    Lower(i64),
}

#[derive(Clone, Debug)]
pub struct BracketTable {
    entries: Vec<Vec<CPoly>>,
}

fn mono(u: usize, v: usize) -> CPoly {
    &CPoly::var(u) * &CPoly::var(v)
}

impl BracketTable {
    /// The generator table with the given diagonal.
    pub fn new(diag: Diagonal) -> Self {
        let mut e = vec![vec![CPoly::zero(); NVARS]; NVARS];
        let mut set = |u: usize, v: usize, p: CPoly| {
            e[v][u] = -&p;
            e[u][v] = p;
        };
        for i in 1..=4 {
            for j in i + 1..=4 {
                set(z(i), z(j), mono(z(i), z(j)));
                set(zs(i), zs(j), -&mono(zs(i), zs(j)));
            }
            for j in 1..=4 {
                if i != j {
                    set(z(i), zs(j), -&mono(z(i), zs(j)));
                }
            }
        }
        for j in 1..=4 {
            let d = match diag {
                Diagonal::Printed => mono(z(j), zs(j)).scale(&int(j as i64 - 1)),
                Diagonal::Lower(c) => {
                    (1..j).fold(CPoly::zero(), |acc, i| &acc + &mono(z(i), zs(i))).scale(&int(c))
                }
            };
            set(zs(j), z(j), d);
        }
        BracketTable { entries: e }
    }

    pub fn from_entries(entries: Vec<Vec<CPoly>>) -> Self {
        BracketTable { entries }
    }

    pub fn entry(&self, u: usize, v: usize) -> &CPoly {
        &self.entries[u][v]
    }

    /// Biderivation extension.
    pub fn bracket(&self, f: &CPoly, g: &CPoly) -> CPoly {
        let df: Vec<CPoly> = (0..NVARS).map(|u| f.derivative(u)).collect();
        let dg: Vec<CPoly> = (0..NVARS).map(|v| g.derivative(v)).collect();
        let mut out = CPoly::zero();
        for u in 0..NVARS {
            if df[u].is_zero() {
                continue;
            }
            for v in 0..NVARS {
                if dg[v].is_zero() || self.entries[u][v].is_zero() {
                    continue;
                }
                out = &out + &(&(&df[u] * &dg[v]) * &self.entries[u][v]);
            }
        }
        out
    }

    /// Leibniz extension to fractions.
    pub fn bracket_frac(&self, f: &Frac, g: &Frac) -> Frac {
        let (n1, d1, n2, d2) = (&f.num, &f.den, &g.num, &g.den);
        let t1 = &(&self.bracket(n1, n2) * d1) * d2;
        let t2 = &(&self.bracket(d1, n2) * n1) * d2;
        let t3 = &(&self.bracket(n1, d2) * n2) * d1;
        let t4 = &(&self.bracket(d1, d2) * n1) * n2;
        let num = &(&(&t1 - &t2) - &t3) + &t4;
        let d = &(d1 * d1) * &(d2 * d2);
        Frac::new(num, d)
    }

    /// `{f*, g*} = -{f, g}*` on generators.
    pub fn is_antireal(&self) -> bool {
        (0..NVARS).all(|u| (0..NVARS).all(|v| self.entries[conj_var(u)][conj_var(v)] == -&self.entries[u][v].conj()))
    }

    pub fn jacobi(&self, f: &CPoly, g: &CPoly, h: &CPoly) -> CPoly {
        let a = self.bracket(&self.bracket(f, g), h);
        let b = self.bracket(&self.bracket(g, h), f);
        let c = self.bracket(&self.bracket(h, f), g);
        &(&a + &b) + &c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::poly::z;

    #[test]
    fn antisymmetric_and_leibniz() {
        let t = BracketTable::new(Diagonal::Lower(2));
        let (x, y, w) = (CPoly::var(z(1)), CPoly::var(zs(3)), CPoly::var(z(4)));
        assert_eq!(t.bracket(&x, &y), -&t.bracket(&y, &x));
        let xy = &x * &y;
        assert_eq!(t.bracket(&xy, &w), &(&t.bracket(&x, &w) * &y) + &(&x * &t.bracket(&y, &w)));
        assert!(t.bracket(&CPoly::one(), &x).is_zero());
        assert!(t.is_antireal());
    }

    #[test]
    fn fraction_leibniz() {
        let t = BracketTable::new(Diagonal::Lower(2));
        let (x, y) = (CPoly::var(z(1)), CPoly::var(z(2)));
        let f = Frac::new(x.clone(), y.clone());
        // {x/y, y} = {x, y}/y
        let got = t.bracket_frac(&f, &Frac::poly(y.clone()));
        assert!(got.eq_on_sphere(&Frac::new(t.bracket(&x, &y), y)));
    }
}
