//! Exact scalars: rationals, the cyclotomic field Q(ζ_m), and Laurent
//! polynomials in a generic parameter `q`.
//!
//! Both coefficient rings used by the rewriter implement [`Coefficient`], a
//! small ring interface parameterised by a *domain* value that knows what `q`
//! means (a formal symbol, or a chosen primitive root of unity).

mod cyclotomic;
mod laurent;
mod poly;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use cyclotomic::{root_of_unity, Cyclotomic, CyclotomicField, RootOfUnity};
pub use laurent::{GenericQ, QLaurent};
pub use poly::{cyclotomic_polynomial, euler_phi};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Parses `"3"`, `"-2/3"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Ring interface shared by the coefficient types of [`crate::rewriter::NcPoly`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    /// Context that fixes the meaning of `q`.
    type Domain: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(domain: &Self::Domain) -> Self;
    fn one(domain: &Self::Domain) -> Self;
    fn from_rational(domain: &Self::Domain, r: Rational) -> Self;
    /// `q^e` in this domain.
    fn q_power(domain: &Self::Domain, e: i64) -> Self;

    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Exact quotient, or `None` when `other` does not divide `self`.
    fn checked_div(&self, other: &Self) -> Option<Self>;
}
