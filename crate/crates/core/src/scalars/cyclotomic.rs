use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{self, cyclotomic_polynomial, euler_phi, gcd_i64};
use super::{fmt_rational, parse_rational, Coefficient, Rational};
use crate::error::{Error, Result};

/// The field Q(ζ_m) with basis 1, ζ, …, ζ^{φ(m)−1} modulo Φ_m.
#[derive(Debug)]
pub struct CyclotomicField {
    m: u64,
    degree: usize,
    modulus: Vec<BigInt>,
    /// `x^j mod Φ_m` for `j < max(m, 2φ(m) − 1)`.
    powers: Vec<Vec<BigInt>>,
}

impl CyclotomicField {
    /// Shared instance for `m`. Fields are cached for the life of the process.
    pub fn get(m: u64) -> Arc<CyclotomicField> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().expect("cyclotomic field cache poisoned");
        guard
            .entry(m)
            .or_insert_with(|| Arc::new(CyclotomicField::build(m)))
            .clone()
    }

    fn build(m: u64) -> Self {
        assert!(m >= 1);
        let modulus = cyclotomic_polynomial(m);
        let degree = euler_phi(m) as usize;
        let count = (m as usize).max(2 * degree);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![BigInt::zero(); degree];
        if degree > 0 {
            cur[0] = BigInt::one();
        }
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x, then fold the overflow coefficient back with Φ_m
            let top = cur.pop().unwrap_or_default();
            cur.insert(0, BigInt::zero());
            if !top.is_zero() {
                for (j, c) in modulus.iter().enumerate().take(degree) {
                    cur[j] -= &top * c;
                }
            }
        }
        CyclotomicField { m, degree, modulus, powers }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// φ(m), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    fn zeta_power(&self, e: i64) -> Vec<Rational> {
        let j = e.rem_euclid(self.m as i64) as usize;
        self.powers[j]
            .iter()
            .cloned()
            .map(Rational::from_integer)
            .collect()
    }
}

/// An exact element of Q(ζ_m).
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(m: u64) -> Self {
        let field = CyclotomicField::get(m);
        let coeffs = vec![Rational::zero(); field.degree];
        Cyclotomic { field, coeffs }
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational(m, Rational::one())
    }

    pub fn from_rational(m: u64, r: Rational) -> Self {
        let mut c = Self::zero(m);
        c.coeffs[0] = r;
        c
    }

    pub fn from_integer(m: u64, v: i64) -> Self {
        Self::from_rational(m, Rational::from_integer(v.into()))
    }

    /// ζ^e for any integer exponent (reduced mod m).
    pub fn zeta_pow(m: u64, e: i64) -> Self {
        let field = CyclotomicField::get(m);
        let coeffs = field.zeta_power(e);
        Cyclotomic { field, coeffs }
    }

    /// Builds an element from coefficients of ζ^0, ζ^1, …; vectors longer
    /// than φ(m) are reduced modulo Φ_m.
    pub fn from_coeffs(m: u64, coeffs: Vec<Rational>) -> Self {
        let mut out = Self::zero(m);
        for (j, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j < out.field.degree {
                out.coeffs[j] += c;
            } else {
                let power = out.field.zeta_power(j as i64);
                for (s, p) in power.iter().enumerate() {
                    out.coeffs[s] += &c * p;
                }
            }
        }
        out
    }

    pub fn m(&self) -> u64 {
        self.field.m
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(j, c)| if j == 0 { c.is_one() } else { c.is_zero() })
    }

    fn check_same_field(&self, other: &Self) {
        assert_eq!(
            self.field.m, other.field.m,
            "cyclotomic operands from different fields"
        );
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus: Vec<Rational> = self
            .field
            .modulus
            .iter()
            .cloned()
            .map(Rational::from_integer)
            .collect();
        let inv = poly::inverse_mod(&self.coeffs, &modulus)
            .expect("nonzero element of a field is invertible");
        Ok(Self::from_coeffs(self.field.m, inv))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Cyclotomic::one(self.field.m);
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &sq;
            }
            exp >>= 1;
            if exp > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Exponent `j` with `self = ζ^j`, if this element is a power of ζ.
    pub fn as_zeta_power(&self) -> Option<u64> {
        (0..self.field.m).find(|&j| self.field.zeta_power(j as i64) == self.coeffs)
    }

    /// Textual encoding: array of rational strings, lowest power first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(fmt_rational).collect()
    }

    /// Parses an array of rational strings (length at most φ(m)).
    pub fn from_strings<S: AsRef<str>>(m: u64, parts: &[S]) -> Result<Self> {
        let field = CyclotomicField::get(m);
        if parts.len() > field.degree {
            return Err(Error::Parse(format!(
                "cyclotomic literal has {} coefficients, Q(ζ_{m}) has dimension {}",
                parts.len(),
                field.degree
            )));
        }
        let coeffs = parts
            .iter()
            .map(|p| parse_rational(p.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(m, coeffs))
    }

    /// Parses a scalar literal: a rational (`"-2/3"`) or a power of q
    /// (`"q"`, `"q^-2"`, `"3*q^2"`), where `q = ζ^k`.
    pub fn parse_scalar(root: &RootOfUnity, s: &str) -> Result<Self> {
        let s = s.trim();
        let (coef, rest) = match s.split_once('*') {
            Some((a, b)) => (parse_rational(a)?, b.trim()),
            None if s.starts_with('q') || s.starts_with("-q") => (Rational::one(), s),
            None => return Ok(Self::from_rational(root.m, parse_rational(s)?)),
        };
        let (sign, rest) = match rest.strip_prefix('-') {
            Some(r) => (-Rational::one(), r),
            None => (Rational::one(), rest),
        };
        let exp = match rest.strip_prefix('q') {
            Some("") => 1,
            Some(e) => e
                .strip_prefix('^')
                .and_then(|e| e.trim_matches(|c| c == '(' || c == ')').parse::<i64>().ok())
                .ok_or_else(|| Error::Parse(format!("bad q-power literal `{s}`")))?,
            None => return Err(Error::Parse(format!("bad scalar literal `{s}`"))),
        };
        Ok(root.q_pow(exp).scale(&(coef * sign)))
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic(m={}, {:?})", self.field.m, self.to_strings())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = fmt_rational(&c.abs());
            if wrote {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            match (j, abs.as_str()) {
                (0, _) => write!(f, "{abs}")?,
                (1, "1") => write!(f, "ζ")?,
                (1, _) => write!(f, "{abs}ζ")?,
                (_, "1") => write!(f, "ζ^{j}")?,
                _ => write!(f, "{abs}ζ^{j}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_same_field(rhs);
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_same_field(rhs);
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_same_field(rhs);
        let field = &self.field;
        let d = field.degree;
        let mut raw = vec![Rational::zero(); (2 * d).saturating_sub(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        let mut coeffs: Vec<Rational> = raw[..d.min(raw.len())].to_vec();
        coeffs.resize(d, Rational::zero());
        for (t, c) in raw.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (s, p) in field.powers[t].iter().enumerate() {
                if !p.is_zero() {
                    coeffs[s] += c * p;
                }
            }
        }
        Cyclotomic { field: field.clone(), coeffs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// A choice of primitive m-th root of unity `q = ζ_m^k` with m odd ≥ 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootOfUnity {
    pub m: u64,
    pub k: i64,
}

impl RootOfUnity {
    pub fn new(m: i64, k: i64) -> Result<Self> {
        if m < 3 || m % 2 == 0 {
            return Err(Error::InvalidModulus(m));
        }
        if gcd_i64(k, m) != 1 {
            return Err(Error::NotPrimitive { m: m as u64, k });
        }
        Ok(RootOfUnity { m: m as u64, k: k.rem_euclid(m) })
    }

    /// `q^e = ζ^{k·e}`.
    pub fn q_pow(&self, e: i64) -> Cyclotomic {
        let m = self.m as i64;
        let exp = (self.k as i128 * e as i128).rem_euclid(m as i128) as i64;
        Cyclotomic::zeta_pow(self.m, exp)
    }

    pub fn q(&self) -> Cyclotomic {
        self.q_pow(1)
    }
}

/// ζ^k as a validated primitive root of unity.
pub fn root_of_unity(m: i64, k: i64) -> Result<Cyclotomic> {
    Ok(RootOfUnity::new(m, k)?.q())
}

impl Coefficient for Cyclotomic {
    type Domain = RootOfUnity;

    fn zero(domain: &RootOfUnity) -> Self {
        Cyclotomic::zero(domain.m)
    }
    fn one(domain: &RootOfUnity) -> Self {
        Cyclotomic::one(domain.m)
    }
    fn from_rational(domain: &RootOfUnity, r: Rational) -> Self {
        Cyclotomic::from_rational(domain.m, r)
    }
    fn q_power(domain: &RootOfUnity, e: i64) -> Self {
        domain.q_pow(e)
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn checked_div(&self, other: &Self) -> Option<Self> {
        self.div(other).ok()
    }
}
