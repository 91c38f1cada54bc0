//! PI-degree of `O_q(oK^{2n})` through its associated quasipolynomial
//! algebra: drop the additive correction terms, read off the skew-symmetric
//! exponent matrix `H`, and take the square root of `|image(H mod m)|`.

mod snf;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};

pub use snf::{determinant, smith_normal_form, IntMatrix, SnfResult};

/// Upper bound on `m^{cols}` accepted by [`brute_force_image`].
pub const ORACLE_LIMIT: u128 = 1_000_000;

/// Skew-symmetric matrix of q-commutation exponents, generator order
/// `x_1..x_n, y_1..y_n`: `g_a g_b = q^{H[a][b]} g_b g_a` in the associated
/// quasipolynomial algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkewExponentMatrix {
    pub n: usize,
    pub entries: Vec<Vec<i64>>,
}

impl SkewExponentMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let s = self.size();
        (0..s).all(|i| (0..s).all(|j| self.entries[i][j] == -self.entries[j][i]))
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.entries)
    }
}

/// Exponent matrix of the associated quasipolynomial algebra.
pub fn build_h(n: usize) -> SkewExponentMatrix {
    let size = 2 * n;
    let (x, y) = (|i: usize| i - 1, |i: usize| n + i - 1);
    let mut h = vec![vec![0i64; size]; size];
    let mut set = |a: usize, b: usize, v: i64| {
        h[a][b] = v;
        h[b][a] = -v;
    };
    for i in 1..=n {
        for j in 1..=n {
            if i < j {
                set(x(i), x(j), 1); // x_i x_j = q x_j x_i
                set(y(i), y(j), -1); // y_i y_j = q^{-1} y_j y_i
            }
            if i != j {
                set(x(i), y(j), -1); // x_i y_j = q^{-1} y_j x_i
            }
            // x_i y_i: b = 1, the additive part is dropped
        }
    }
    SkewExponentMatrix { n, entries: h }
}

fn check_modulus(m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidModulus(0));
    }
    Ok(())
}

/// `|{H·a mod m : a ∈ Z^{cols}}| = Π m / gcd(d_i, m)` over the elementary
/// divisors (with `gcd(0, m) = m`).
pub fn image_cardinality(h: &IntMatrix, m: u64) -> Result<u64> {
    check_modulus(m)?;
    let snf = smith_normal_form(h);
    image_from_divisors(&snf.divisors, m)
}

fn image_from_divisors(divisors: &[BigInt], m: u64) -> Result<u64> {
    let mb = BigInt::from(m);
    divisors.iter().try_fold(1u64, |acc, d| {
        let g = d.gcd(&mb).to_u64().expect("gcd divides m");
        acc.checked_mul(m / g).ok_or(Error::Overflow("image cardinality"))
    })
}

/// Enumerates `H·a mod m` over all `a ∈ (Z/m)^{cols}`.
pub fn brute_force_image(h: &IntMatrix, m: u64) -> Result<u64> {
    check_modulus(m)?;
    let cols = h.cols();
    let total = (m as u128).checked_pow(cols as u32).unwrap_or(u128::MAX);
    if total > ORACLE_LIMIT {
        return Err(Error::OracleGuard(total));
    }
    let entries: Vec<Vec<i64>> = h.to_i64_rows().ok_or(Error::Overflow("oracle entries"))?;
    let mi = m as i64;
    let mut seen = HashSet::new();
    let mut a = vec![0i64; cols];
    for _ in 0..total {
        let image: Vec<i64> = entries
            .iter()
            .map(|row| row.iter().zip(&a).map(|(r, x)| r * x).sum::<i64>().rem_euclid(mi))
            .collect();
        seen.insert(image);
        for slot in a.iter_mut() {
            *slot += 1;
            if *slot < mi {
                break;
            }
            *slot = 0;
        }
    }
    Ok(seen.len() as u64)
}

/// A basis of the lattice `K = {a ∈ Z^{cols} : H·a ≡ 0 (mod m)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelBasis {
    pub m: u64,
    pub vectors: Vec<Vec<i64>>,
}

impl KernelBasis {
    /// Basis vectors with entries reduced into `[0, m)`. Together with
    /// `m·Z^{cols}` these still generate `K`.
    pub fn reduced(&self) -> Vec<Vec<i64>> {
        let m = self.m as i64;
        self.vectors
            .iter()
            .map(|v| v.iter().map(|x| x.rem_euclid(m)).collect())
            .collect()
    }

    /// `[K : m·Z^{cols}]`, the number of kernel points in `[0, m)^{cols}`.
    pub fn points_mod_m(&self) -> Result<u64> {
        let det = determinant(&IntMatrix::from_rows(&self.vectors)).abs();
        let m = self.m as u128;
        let cols = self.vectors.len() as u32;
        let total = m.checked_pow(cols).ok_or(Error::Overflow("m^cols"))?;
        let det = det.to_u128().ok_or(Error::Overflow("kernel index"))?;
        u64::try_from(total / det).map_err(|_| Error::Overflow("kernel points"))
    }
}

fn is_in_kernel(h: &IntMatrix, m: u64, v: &[BigInt]) -> bool {
    let mb = BigInt::from(m);
    h.mul_vec(v).iter().all(|x| x.is_multiple_of(&mb))
}

/// Kernel lattice from the Smith form: columns of `V` scaled by
/// `m / gcd(d_i, m)`. Every vector is checked against `H` before returning.
pub fn kernel_basis(h: &IntMatrix, m: u64) -> Result<KernelBasis> {
    check_modulus(m)?;
    let snf = smith_normal_form(h);
    kernel_from_snf(h, &snf, m)
}

fn kernel_from_snf(h: &IntMatrix, snf: &SnfResult, m: u64) -> Result<KernelBasis> {
    let mb = BigInt::from(m);
    let mut vectors = Vec::with_capacity(h.cols());
    for j in 0..h.cols() {
        let scale = match snf.divisors.get(j) {
            Some(d) => &mb / d.gcd(&mb),
            None => BigInt::from(1),
        };
        let v: Vec<BigInt> = snf.v.column(j).into_iter().map(|x| x * &scale).collect();
        assert!(is_in_kernel(h, m, &v), "kernel vector fails H·a ≡ 0");
        let v = v
            .iter()
            .map(|x| x.to_i64().ok_or(Error::Overflow("kernel vector")))
            .collect::<Result<Vec<_>>>()?;
        vectors.push(v);
    }
    Ok(KernelBasis { m, vectors })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub n: usize,
    pub m: u64,
    /// Cardinality of the image of `H` in `(Z/m)^{2n}`.
    pub h: u64,
    pub degree: u64,
    /// `m^{n-1}`.
    pub expected: u64,
    pub matches_expected: bool,
    pub elementary_divisors: Vec<i64>,
    pub rank: usize,
    pub kernel_basis: Vec<Vec<i64>>,
}

/// PI-degree as `√|image(H mod m)|`; `m` must be odd ≥ 3, or 1.
pub fn pi_degree(n: usize, m: u64) -> Result<DegreeReport> {
    if n == 0 {
        return Err(Error::Precondition("n ≥ 1".into()));
    }
    if m != 1 && (m < 3 || m % 2 == 0) {
        return Err(Error::InvalidModulus(m as i64));
    }
    let hm = build_h(n).to_int_matrix();
    let snf = smith_normal_form(&hm);
    let h = image_from_divisors(&snf.divisors, m)?;
    let degree = h.sqrt();
    if degree * degree != h {
        return Err(Error::NotPerfectSquare(h));
    }
    let expected = m.checked_pow(n as u32 - 1).ok_or(Error::Overflow("m^(n-1)"))?;
    let kernel = kernel_from_snf(&hm, &snf, m)?;
    let elementary_divisors = snf
        .divisors
        .iter()
        .map(|d| d.to_i64().ok_or(Error::Overflow("divisor")))
        .collect::<Result<Vec<_>>>()?;
    Ok(DegreeReport {
        n,
        m,
        h,
        degree,
        expected,
        matches_expected: degree == expected,
        elementary_divisors,
        rank: snf.rank(),
        kernel_basis: kernel.vectors,
    })
}
