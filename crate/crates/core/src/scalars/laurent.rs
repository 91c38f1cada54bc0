use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cyclotomic::{Cyclotomic, RootOfUnity};
use super::{fmt_rational, poly, Coefficient, Rational};
use crate::error::Result;

/// Domain marker: `q` is a formal, transcendental parameter.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenericQ;

/// Laurent polynomial in `q` with rational coefficients. Zero coefficients
/// are never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct QLaurent {
    terms: BTreeMap<i64, Rational>,
}

impl QLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        QLaurent { terms }
    }

    pub fn q_pow(e: i64) -> Self {
        Self::monomial(Rational::one(), e)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Evaluates at `q = ζ_m^k`.
    pub fn substitute(&self, m: i64, k: i64) -> Result<Cyclotomic> {
        let root = RootOfUnity::new(m, k)?;
        Ok(self.evaluate(&root))
    }

    pub fn evaluate(&self, root: &RootOfUnity) -> Cyclotomic {
        self.terms
            .iter()
            .fold(Cyclotomic::zero(root.m), |acc, (e, c)| {
                &acc + &root.q_pow(*e).scale(c)
            })
    }

    /// `(lowest exponent, dense ascending coefficients)`.
    fn to_dense(&self) -> Option<(i64, Vec<Rational>)> {
        let lo = *self.terms.keys().next()?;
        let hi = *self.terms.keys().next_back()?;
        let mut dense = vec![Rational::zero(); (hi - lo) as usize + 1];
        for (e, c) in &self.terms {
            dense[(e - lo) as usize] = c.clone();
        }
        Some((lo, dense))
    }

    fn from_dense(lo: i64, dense: &[Rational]) -> Self {
        let mut out = QLaurent::zero();
        for (j, c) in dense.iter().enumerate() {
            out.add_term(lo + j as i64, c);
        }
        out
    }

    /// Exact division in Q[q, q^{-1}].
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        let (lb, b) = other.to_dense()?;
        let Some((la, a)) = self.to_dense() else {
            return Some(QLaurent::zero());
        };
        let (quot, rem) = poly::div_rem(&a, &b);
        if !rem.iter().all(Zero::is_zero) {
            return None;
        }
        Some(Self::from_dense(la - lb, &quot))
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QLaurent({self})")
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let abs = fmt_rational(&c.abs());
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            match (*e, abs.as_str()) {
                (0, _) => write!(f, "{abs}")?,
                (1, "1") => write!(f, "q")?,
                (1, _) => write!(f, "{abs}*q")?,
                (_, "1") => write!(f, "q^{e}")?,
                _ => write!(f, "{abs}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a QLaurent> for &'a QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl<'a> Sub<&'a QLaurent> for &'a QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        self + &(-rhs)
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a QLaurent> for &'a QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl Coefficient for QLaurent {
    type Domain = GenericQ;

    fn zero(_: &GenericQ) -> Self {
        QLaurent::zero()
    }
    fn one(_: &GenericQ) -> Self {
        QLaurent::one()
    }
    fn from_rational(_: &GenericQ, r: Rational) -> Self {
        QLaurent::constant(r)
    }
    fn q_power(_: &GenericQ, e: i64) -> Self {
        QLaurent::q_pow(e)
    }
    fn is_zero(&self) -> bool {
        QLaurent::is_zero(self)
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
        self.exact_div(other)
    }
}
