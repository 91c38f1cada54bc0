use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::repmod::{GeneratorMatrices, SparseMatrix};
use crate::scalars::Cyclotomic;

/// Default cap on `d` for the commutant solve (`d²` unknowns).
pub const DEFAULT_COMMUTANT_GUARD: usize = 27;

type Row = BTreeMap<usize, Cyclotomic>;

/// Incremental row echelon form over Q(ζ_m). Each stored row is monic at
/// its smallest column, which is the key it is stored under.
struct Echelon {
    m: u64,
    pivots: HashMap<usize, Row>,
}

impl Echelon {
    fn new(m: u64) -> Self {
        Echelon { m, pivots: HashMap::new() }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn insert(&mut self, mut row: Row) -> Result<()> {
        while let Some((&col, lead)) = row.iter().next() {
            let Some(pivot) = self.pivots.get(&col) else {
                let inv = lead.inv()?;
                for v in row.values_mut() {
                    *v = &*v * &inv;
                }
                self.pivots.insert(col, row);
                return Ok(());
            };
            let factor = lead.clone();
            for (c, p) in pivot {
                let slot = row.entry(*c).or_insert_with(|| Cyclotomic::zero(self.m));
                *slot = &*slot - &(&factor * p);
                if slot.is_zero() {
                    row.remove(c);
                }
            }
        }
        Ok(())
    }
}

/// Equations `(X·M − M·X)[r][c] = 0` with `X[i][j]` at unknown `i·d + j`.
fn commutator_equations(mat: &SparseMatrix) -> Vec<Row> {
    let d = mat.dim();
    let m = mat.field();
    let mut eqs: BTreeMap<(usize, usize), Row> = BTreeMap::new();
    let mut push = |r: usize, c: usize, var: usize, v: Cyclotomic| {
        let row = eqs.entry((r, c)).or_default();
        let slot = row.entry(var).or_insert_with(|| Cyclotomic::zero(m));
        *slot = &*slot + &v;
        if slot.is_zero() {
            row.remove(&var);
        }
    };
    for (k, c, v) in mat.entries() {
        // X[r][k]·M[k][c] for every r
        for r in 0..d {
            push(r, c, r * d + k, v.clone());
        }
    }
    for (r, k, v) in mat.entries() {
        // −M[r][k]·X[k][c] for every c
        for c in 0..d {
            push(r, c, k * d + c, -v);
        }
    }
    eqs.into_values().filter(|row| !row.is_empty()).collect()
}

/// Dimension of `{X : X·M_g = M_g·X for every generator g}` over Q(ζ_m).
pub fn commutant_dimension(mats: &GeneratorMatrices) -> Result<usize> {
    commutant_dimension_with_guard(mats, DEFAULT_COMMUTANT_GUARD)
}

pub fn commutant_dimension_with_guard(mats: &GeneratorMatrices, guard: usize) -> Result<usize> {
    let d = mats.dimension();
    if d > guard {
        return Err(Error::DimensionGuard { dim: d, cap: guard });
    }
    let mut ech = Echelon::new(mats.m());
    for (_, mat) in mats.iter() {
        for eq in commutator_equations(mat) {
            ech.insert(eq)?;
            if ech.rank() == d * d - 1 {
                // scalars always commute, so the dimension is at least 1
                return Ok(1);
            }
        }
    }
    Ok(d * d - ech.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_rank() {
        let m = 3;
        let one = Cyclotomic::one(m);
        let q = Cyclotomic::zeta_pow(m, 1);
        let mut e = Echelon::new(m);
        let row = |pairs: &[(usize, &Cyclotomic)]| pairs.iter().map(|(c, v)| (*c, (*v).clone())).collect::<Row>();
        e.insert(row(&[(0, &one), (1, &q)])).unwrap();
        e.insert(row(&[(0, &q), (1, &(&q * &q))])).unwrap();
        assert_eq!(e.rank(), 1);
        e.insert(row(&[(1, &one), (2, &one)])).unwrap();
        assert_eq!(e.rank(), 2);
    }
}
