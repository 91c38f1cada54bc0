use std::collections::BTreeMap;

use crate::scalars::Cyclotomic;

/// Square sparse matrix over Q(ζ_m), stored row by row.
///
/// Acts on row vectors from the right: `e_a · M = Σ_b M[a][b] e_b`, so the
/// word `g·h` is represented by `M_g · M_h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    m: u64,
    dim: usize,
    rows: Vec<BTreeMap<usize, Cyclotomic>>,
}

impl SparseMatrix {
    pub fn zero(m: u64, dim: usize) -> Self {
        SparseMatrix { m, dim, rows: vec![BTreeMap::new(); dim] }
    }

    pub fn identity(m: u64, dim: usize) -> Self {
        Self::scalar(&Cyclotomic::one(m), dim)
    }

    pub fn scalar(c: &Cyclotomic, dim: usize) -> Self {
        let mut out = Self::zero(c.m(), dim);
        for i in 0..dim {
            out.set(i, i, c.clone());
        }
        out
    }

    pub fn field(&self) -> u64 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Cyclotomic> {
        self.rows[i].get(&j)
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, Cyclotomic> {
        &self.rows[i]
    }

    /// Sets an entry; zero values remove it.
    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        assert!(i < self.dim && j < self.dim, "entry ({i}, {j}) outside {0}×{0}", self.dim);
        if v.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, v);
        }
    }

    fn accumulate(&mut self, i: usize, j: usize, v: &Cyclotomic) {
        let slot = self.rows[i].entry(j).or_insert_with(|| Cyclotomic::zero(self.m));
        *slot = &*slot + v;
        if slot.is_zero() {
            self.rows[i].remove(&j);
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Cyclotomic)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    fn check_shape(&self, other: &Self) {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        assert_eq!(self.m, other.m, "matrices over different fields");
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_shape(other);
        let mut out = Self::zero(self.m, self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    out.accumulate(i, *j, &(a * b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_shape(other);
        let mut out = self.clone();
        for (i, j, v) in other.entries() {
            out.accumulate(i, j, v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-&Cyclotomic::one(self.m)))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero(self.m, self.dim);
        for (i, j, v) in self.entries() {
            out.set(i, j, v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.m, self.dim);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(i, j, _)| i == j)
    }

    pub fn diagonal(&self) -> Vec<Cyclotomic> {
        (0..self.dim)
            .map(|i| self.get(i, i).cloned().unwrap_or_else(|| Cyclotomic::zero(self.m)))
            .collect()
    }

    /// `Some(c)` when the matrix equals `c·I` (including `c = 0`).
    pub fn scalar_value(&self) -> Option<Cyclotomic> {
        if !self.is_diagonal() {
            return None;
        }
        let diag = self.diagonal();
        let first = diag.first().cloned().unwrap_or_else(|| Cyclotomic::zero(self.m));
        diag.iter().all(|d| *d == first).then_some(first)
    }

    /// At most one nonzero entry in every row.
    pub fn is_row_monomial(&self) -> bool {
        self.rows.iter().all(|r| r.len() <= 1)
    }

    pub fn block_diagonal(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "matrices over different fields");
        let mut out = Self::zero(self.m, self.dim + other.dim);
        for (i, j, v) in self.entries() {
            out.set(i, j, v.clone());
        }
        for (i, j, v) in other.entries() {
            out.set(self.dim + i, self.dim + j, v.clone());
        }
        out
    }

    /// `N[s][t] = M[perm[s]][perm[t]]`, i.e. conjugation by the permutation
    /// that lists old indices in their new order.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim);
        let mut inverse = vec![0; self.dim];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let mut out = Self::zero(self.m, self.dim);
        for (i, j, v) in self.entries() {
            out.set(inverse[i], inverse[j], v.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(e: i64) -> Cyclotomic {
        Cyclotomic::zeta_pow(5, e)
    }

    #[test]
    fn product_follows_right_action_convention() {
        // shift e_0 → e_1 → e_2 → e_0
        let mut s = SparseMatrix::zero(5, 3);
        for i in 0..3 {
            s.set(i, (i + 1) % 3, z(i as i64));
        }
        let mut d = SparseMatrix::zero(5, 3);
        for i in 0..3 {
            d.set(i, i, z(1));
        }
        // e_0 · s · d = z(0)·e_1 · d = z(1)·e_1
        let sd = s.mul(&d);
        assert_eq!(sd.get(0, 1), Some(&z(1)));
        assert!(s.is_row_monomial());
        let cube = s.pow(3);
        assert_eq!(cube.scalar_value(), Some(&(&z(0) * &z(1)) * &z(2)));
    }

    #[test]
    fn scalar_detection() {
        assert_eq!(SparseMatrix::zero(3, 4).scalar_value(), Some(Cyclotomic::zero(3)));
        let mut m = SparseMatrix::identity(3, 2);
        assert_eq!(m.scalar_value(), Some(Cyclotomic::one(3)));
        m.set(0, 1, Cyclotomic::one(3));
        assert_eq!(m.scalar_value(), None);
        assert!(m.sub(&m).is_zero());
    }

    #[test]
    fn permutation_conjugates() {
        let mut a = SparseMatrix::zero(5, 3);
        a.set(0, 1, z(1));
        a.set(2, 0, z(2));
        let perm = [2, 0, 1];
        let b = a.permuted(&perm);
        for s in 0..3 {
            for t in 0..3 {
                assert_eq!(b.get(s, t), a.get(perm[s], perm[t]));
            }
        }
    }
}
