//! Dense univariate polynomials (ascending coefficient order) used to build
//! and invert in Q(ζ_m).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;

pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The m-th cyclotomic polynomial Φ_m, coefficients in ascending degree.
///
/// Computed as (x^m − 1) / Π_{d | m, d < m} Φ_d by exact division.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic_polynomial requires m ≥ 1");
    let mut numerator = vec![BigInt::zero(); m as usize + 1];
    numerator[0] = BigInt::from(-1);
    numerator[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m % d == 0) {
        let divisor = cyclotomic_polynomial(d);
        let (quotient, remainder) = int_div_rem_monic(&numerator, &divisor);
        debug_assert!(remainder.iter().all(Zero::is_zero));
        numerator = quotient;
    }
    numerator
}

/// Division by a monic integer polynomial.
fn int_div_rem_monic(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (vec![BigInt::zero()], rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - db] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            rem[i - db + j] -= &c * bj;
        }
    }
    rem.truncate(db);
    (quot, rem)
}

pub(crate) fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Polynomial long division over Q. `b` must be nonzero.
pub(crate) fn div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = &b[db];
    let mut rem: Vec<Rational> = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / lead;
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            rem[dr - db + j] -= &c * bj;
        }
        quot[dr - db] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Returns `s` with `s·a ≡ 1 (mod modulus)`, or `None` when `a` and the
/// modulus share a factor.
pub(crate) fn inverse_mod(a: &[Rational], modulus: &[Rational]) -> Option<Vec<Rational>> {
    // Extended Euclid tracking only the coefficient of `a`.
    let (mut r0, mut r1) = (modulus.to_vec(), a.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::one()]);
    while degree(&r1).is_some() {
        let (q, r) = div_rem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is the gcd; it must be a nonzero constant.
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = r0[0].clone();
    let mut inv: Vec<Rational> = s0.into_iter().map(|x| x / &c).collect();
    let (_, rem) = div_rem(&inv, modulus);
    inv = rem;
    Some(inv)
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(9), ints(&[1, 0, 0, 1, 0, 0, 1]));
    }

    #[test]
    fn phi_15_vanishes_at_primitive_roots() {
        let phi = cyclotomic_polynomial(15);
        assert_eq!(phi.len(), 9);
        assert_eq!(phi, ints(&[1, -1, 0, 1, -1, 1, 0, -1, 1]));
        // Numeric root check; f64 is ample for degree 8 with unit coefficients.
        for k in (1..15).filter(|k| gcd_i64(*k, 15) == 1) {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / 15.0;
            let (mut re, mut im) = (0.0f64, 0.0f64);
            for (j, c) in phi.iter().enumerate() {
                let c: f64 = c.to_string().parse().unwrap();
                re += c * (theta * j as f64).cos();
                im += c * (theta * j as f64).sin();
            }
            assert!(re.abs() < 1e-12 && im.abs() < 1e-12, "k={k}: {re} {im}");
        }
    }

    #[test]
    fn product_of_divisor_polynomials_is_x_m_minus_1() {
        for m in 1..=30u64 {
            let mut prod = vec![Rational::one()];
            for d in (1..=m).filter(|d| m % d == 0) {
                let p: Vec<Rational> = cyclotomic_polynomial(d)
                    .into_iter()
                    .map(Rational::from_integer)
                    .collect();
                prod = mul(&prod, &p);
            }
            let mut expected = vec![Rational::zero(); m as usize + 1];
            expected[0] = -Rational::one();
            expected[m as usize] = Rational::one();
            assert_eq!(prod, expected, "m={m}");
            assert_eq!(
                cyclotomic_polynomial(m).len() as u64 - 1,
                euler_phi(m),
                "deg Φ_{m}"
            );
        }
    }
}
