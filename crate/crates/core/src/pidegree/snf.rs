//! Smith normal form over the integers with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.data[i][i] = BigInt::from(1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        self.data
            .iter()
            .map(|r| r.iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += a * &other.data[k][j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        self.data
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j][i] = self.data[i][j].clone();
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.data[i][j].is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.data {
            r.swap(a, b);
        }
    }

    /// row[target] += factor · row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        let src = self.data[source].clone();
        for (t, s) in self.data[target].iter_mut().zip(src) {
            *t += factor * s;
        }
    }

    /// col[target] += factor · col[source]
    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        for r in &mut self.data {
            let s = r[source].clone();
            r[target] += factor * s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in &mut self.data[i] {
            *v = -&*v;
        }
    }
}

/// `U · M · V = diag(divisors)` with `U`, `V` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// Elementary divisors `d_1 | d_2 | ⋯`, nonnegative, zeros last; length
    /// `min(rows, cols)`.
    pub divisors: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub diagonal: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.divisors.iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = min_abs_position(&a, (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)))) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a.data[i][t].is_zero() {
                    continue;
                }
                let f = -a.data[i][t].div_floor(&a.data[t][t]);
                a.add_row(i, t, &f);
                u.add_row(i, t, &f);
                clean &= a.data[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a.data[t][j].is_zero() {
                    continue;
                }
                let f = -a.data[t][j].div_floor(&a.data[t][t]);
                a.add_col(j, t, &f);
                v.add_col(j, t, &f);
                clean &= a.data[t][j].is_zero();
            }
            if !clean {
                // a remainder is now smaller than the pivot; move it into place
                let line = std::iter::once((t, t))
                    .chain((t + 1..rows).map(|i| (i, t)))
                    .chain((t + 1..cols).map(|j| (t, j)));
                let (pi, pj) = min_abs_position(&a, line).expect("pivot row is nonzero");
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // enforce divisibility of the trailing block by the pivot
            let bad_row = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a.data[i][j].is_multiple_of(&a.data[t][t])));
            match bad_row {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.data[t][t].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    let divisors = (0..rows.min(cols)).map(|i| a.data[i][i].clone()).collect();
    SnfResult { divisors, u, v, diagonal: a }
}

fn min_abs_position(
    a: &IntMatrix,
    positions: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    positions
        .filter(|&(i, j)| !a.data[i][j].is_zero())
        .min_by(|&(i, j), &(k, l)| a.data[i][j].abs().cmp(&a.data[k][l].abs()))
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = m.data.clone();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) -> SnfResult {
        let snf = smith_normal_form(m);
        assert_eq!(snf.u.mul(m).mul(&snf.v), snf.diagonal);
        assert!(snf.diagonal.is_diagonal());
        assert_eq!(determinant(&snf.u).abs(), BigInt::from(1));
        assert_eq!(determinant(&snf.v).abs(), BigInt::from(1));
        for w in snf.divisors.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zeros must come last");
            } else {
                assert!(w[1].is_multiple_of(&w[0]), "divisibility chain {:?}", snf.divisors);
            }
        }
        snf
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn trivial_cases() {
        let z = check(&IntMatrix::zeros(3, 3));
        assert_eq!(z.divisors, ints(&[0, 0, 0]));
        assert_eq!(z.u, IntMatrix::identity(3));
        assert_eq!(z.v, IntMatrix::identity(3));
        assert_eq!(check(&IntMatrix::identity(2)).divisors, ints(&[1, 1]));
    }

    #[test]
    fn textbook_example() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(check(&m).divisors, ints(&[2, 6, 12]));
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(check(&m).divisors, ints(&[1, 6]));
    }

    #[test]
    fn rectangular() {
        let m = IntMatrix::from_rows(&[vec![4, 6, 8]]);
        assert_eq!(check(&m).divisors, ints(&[2]));
        let m = IntMatrix::from_rows(&[vec![3], vec![9], vec![0]]);
        assert_eq!(check(&m).divisors, ints(&[3]));
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntMatrix::from_rows(&[vec![0, 2, 1], vec![1, 1, 1], vec![3, 0, 4]]);
        // 0·(4−0) − 2·(4−3) + 1·(0−3) = −5
        assert_eq!(determinant(&m), BigInt::from(-5));
    }

    proptest! {
        #[test]
        fn random_matrices(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-6i64..7, 16)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
            let m = IntMatrix::from_rows(&data);
            let snf = check(&m);
            if rows == cols {
                let prod: BigInt = snf.divisors.iter().product();
                prop_assert_eq!(prod, determinant(&m).abs());
            }
        }
    }
}
