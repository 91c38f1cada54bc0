//! Noncommutative polynomials in `x_1..x_n, y_1..y_n` and their normal form
//! with respect to the defining relations of `O_q(oK^{2n})`:
//!
//! ```text
//! y_i y_j = q^{-1} y_j y_i            (i < j)
//! x_i y_j = q^{-1} y_j x_i            (i ≠ j)
//! x_i x_j = q x_j x_i                 (i < j)
//! x_i y_i = y_i x_i + Σ_{l<i} (1 − q^{-2}) y_l x_l
//! ```
//!
//! Words are straightened into the order `y_1 < x_1 < y_2 < x_2 < ⋯`. Every
//! rule either swaps an adjacent descent (fewer inversions, same letters) or
//! replaces `x_i y_i` by letters of strictly smaller index, so straightening
//! terminates; see [`termination_measure`].

mod checks;
mod parse;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{Coefficient, Cyclotomic, QLaurent, RootOfUnity};

pub use checks::{
    check_covariant, check_local_confluence, resolve_overlap, verify_central_powers,
    verify_remark_identities, ConfluenceReport, CovarianceResult, IdentityCheck, IdentityReport,
};
pub use parse::parse_element;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GenKind {
    X,
    Y,
}

/// A generator `x_i` or `y_i` (1-based index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gen {
    pub kind: GenKind,
    pub index: usize,
}

impl Gen {
    pub const fn x(index: usize) -> Self {
        Gen { kind: GenKind::X, index }
    }

    pub const fn y(index: usize) -> Self {
        Gen { kind: GenKind::Y, index }
    }

    /// Position in the canonical order `y_1 < x_1 < y_2 < x_2 < ⋯`.
    pub fn rank(self) -> usize {
        match self.kind {
            GenKind::Y => 2 * self.index - 2,
            GenKind::X => 2 * self.index - 1,
        }
    }

    /// All generators for rank `n`, in the order `x_1..x_n, y_1..y_n`.
    pub fn all(n: usize) -> Vec<Gen> {
        (1..=n).map(Gen::x).chain((1..=n).map(Gen::y)).collect()
    }

    pub fn name(self) -> String {
        self.to_string()
    }

    /// Parses `x3` / `y1`.
    pub fn parse(s: &str) -> Option<Gen> {
        let (kind, rest) = match s.as_bytes().first()? {
            b'x' => (GenKind::X, &s[1..]),
            b'y' => (GenKind::Y, &s[1..]),
            _ => return None,
        };
        let index: usize = rest.parse().ok()?;
        (index >= 1).then_some(Gen { kind, index })
    }
}

impl Ord for Gen {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for Gen {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            GenKind::X => 'x',
            GenKind::Y => 'y',
        };
        write!(f, "{c}{}", self.index)
    }
}

/// A monomial of the free algebra. Ordered by length, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn is_normal(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// `(letter indices sorted decreasingly, inversions w.r.t. the canonical
/// order)`. Every rewrite step strictly decreases this pair lexicographically.
pub fn termination_measure(word: &[Gen]) -> (Vec<usize>, usize) {
    let mut indices: Vec<usize> = word.iter().map(|g| g.index).collect();
    indices.sort_unstable_by(|a, b| b.cmp(a));
    let mut inversions = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                inversions += 1;
            }
        }
    }
    (indices, inversions)
}

/// A noncommutative polynomial with coefficients in `C`.
#[derive(Clone, PartialEq)]
pub struct NcPoly<C: Coefficient> {
    domain: C::Domain,
    n: usize,
    terms: BTreeMap<Word, C>,
}

/// Generic-`q` polynomial.
pub type GenericPoly = NcPoly<QLaurent>;
/// Polynomial at a root of unity.
pub type RootPoly = NcPoly<Cyclotomic>;

impl<C: Coefficient> NcPoly<C> {
    pub fn zero(domain: &C::Domain, n: usize) -> Self {
        NcPoly { domain: domain.clone(), n, terms: BTreeMap::new() }
    }

    pub fn scalar(domain: &C::Domain, n: usize, c: C) -> Self {
        let mut p = Self::zero(domain, n);
        p.add_term(Word::empty(), c);
        p
    }

    pub fn one(domain: &C::Domain, n: usize) -> Self {
        Self::scalar(domain, n, C::one(domain))
    }

    pub fn generator(domain: &C::Domain, n: usize, g: Gen) -> Result<Self> {
        Self::word(domain, n, vec![g])
    }

    /// The unreduced monomial `letters` with coefficient 1.
    pub fn word(domain: &C::Domain, n: usize, letters: Vec<Gen>) -> Result<Self> {
        if let Some(g) = letters.iter().find(|g| g.index == 0 || g.index > n) {
            return Err(Error::IndexOutOfRange(format!("{g} with n = {n}")));
        }
        let mut p = Self::zero(domain, n);
        p.add_term(Word(letters), C::one(domain));
        Ok(p)
    }

    pub fn domain(&self) -> &C::Domain {
        &self.domain
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> std::collections::btree_map::Iter<'_, Word, C> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&C> {
        self.terms.get(w)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(Word::is_normal)
    }

    fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                *existing = existing.plus(&c);
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.n, other.n, "polynomials over different ranks");
        assert_eq!(self.domain, other.domain, "polynomials over different coefficient domains");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&C::one(&self.domain).negated())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(&self.domain, self.n);
        for (w, d) in &self.terms {
            out.add_term(w.clone(), c.times(d));
        }
        out
    }

    /// Product in the free algebra (concatenation), without straightening.
    pub fn free_product(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = Self::zero(&self.domain, self.n);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca.times(cb));
            }
        }
        out
    }

    /// Straightened product.
    pub fn multiply(&self, other: &Self) -> Self {
        self.free_product(other).straighten()
    }

    /// Straightened `self^e`.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.domain, self.n);
        for _ in 0..e {
            acc = acc.multiply(self);
        }
        acc
    }

    /// The unique normal form: every word sorted into the canonical order.
    pub fn straighten(&self) -> Self {
        let mut engine = Straightener::new(&self.domain);
        engine.straighten(self)
    }

    /// Maps coefficients into another domain.
    pub fn map_coefficients<D: Coefficient>(
        &self,
        domain: &D::Domain,
        f: impl Fn(&C) -> D,
    ) -> NcPoly<D> {
        let mut out = NcPoly::zero(domain, self.n);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }
}

impl NcPoly<QLaurent> {
    /// Specialises generic `q` to `q = ζ_m^k`.
    pub fn substitute(&self, root: &RootOfUnity) -> NcPoly<Cyclotomic> {
        self.map_coefficients(root, |c| c.evaluate(root))
    }
}

impl<C: Coefficient> fmt::Debug for NcPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcPoly({self})")
    }
}

impl<C: Coefficient> fmt::Display for NcPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let cs = c.to_string();
            let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
            match (cs.as_str(), w.0.is_empty()) {
                (_, true) => write!(f, "{cs}")?,
                ("1", false) => write!(f, "{w}")?,
                ("-1", false) => write!(f, "-{w}")?,
                _ => write!(f, "{cs}*{w}")?,
            }
        }
        Ok(())
    }
}

/// `(1 − q^{-2})` in the given domain.
pub fn one_minus_q_inv2<C: Coefficient>(domain: &C::Domain) -> C {
    C::one(domain).minus(&C::q_power(domain, -2))
}

/// The right-hand side of the rewrite rule for the adjacent pair `a b`, or
/// `None` when `a ≤ b` (no rule applies).
pub fn rewrite_pair<C: Coefficient>(domain: &C::Domain, a: Gen, b: Gen) -> Option<Vec<(C, [Gen; 2])>> {
    use GenKind::{X, Y};
    if a <= b {
        return None;
    }
    let q = |e| C::q_power(domain, e);
    let rhs = match (a.kind, b.kind) {
        // y_j y_i = q y_i y_j  (i < j)
        (Y, Y) => vec![(q(1), [b, a])],
        // x_j x_i = q^{-1} x_i x_j  (i < j)
        (X, X) => vec![(q(-1), [b, a])],
        // y_j x_i = q x_i y_j  (i < j)
        (Y, X) => vec![(q(1), [b, a])],
        // x_i y_j = q^{-1} y_j x_i  (j < i)
        (X, Y) if a.index != b.index => vec![(q(-1), [b, a])],
        // x_i y_i = y_i x_i + Σ_{l<i} (1 − q^{-2}) y_l x_l
        (X, Y) => {
            let mut rhs = vec![(C::one(domain), [b, a])];
            let c = one_minus_q_inv2::<C>(domain);
            rhs.extend((1..a.index).map(|l| (c.clone(), [Gen::y(l), Gen::x(l)])));
            rhs
        }
    };
    Some(rhs)
}

/// Applies the rule at position `pos` of `word` once.
pub fn rewrite_at<C: Coefficient>(domain: &C::Domain, word: &[Gen], pos: usize) -> Option<Vec<(C, Word)>> {
    let rhs = rewrite_pair::<C>(domain, word[pos], word[pos + 1])?;
    Some(
        rhs.into_iter()
            .map(|(c, pair)| {
                let mut w = Vec::with_capacity(word.len());
                w.extend_from_slice(&word[..pos]);
                w.extend_from_slice(&pair);
                w.extend_from_slice(&word[pos + 2..]);
                (c, Word(w))
            })
            .collect(),
    )
}

/// Memoising normal-form engine (leftmost-descent strategy).
pub(crate) struct Straightener<C: Coefficient> {
    domain: C::Domain,
    cache: HashMap<Word, Vec<(Word, C)>>,
}

impl<C: Coefficient> Straightener<C> {
    pub(crate) fn new(domain: &C::Domain) -> Self {
        Straightener { domain: domain.clone(), cache: HashMap::new() }
    }

    pub(crate) fn straighten(&mut self, p: &NcPoly<C>) -> NcPoly<C> {
        let mut out = NcPoly::zero(&self.domain, p.n);
        for (w, c) in &p.terms {
            for (nw, nc) in self.normal_form(w) {
                out.add_term(nw, c.times(&nc));
            }
        }
        out
    }

    pub(crate) fn normal_form(&mut self, w: &Word) -> Vec<(Word, C)> {
        if let Some(hit) = self.cache.get(w) {
            return hit.clone();
        }
        let result = match w.0.windows(2).position(|p| p[0] > p[1]) {
            None => vec![(w.clone(), C::one(&self.domain))],
            Some(pos) => {
                let mut acc: BTreeMap<Word, C> = BTreeMap::new();
                let step = rewrite_at::<C>(&self.domain, &w.0, pos).expect("descent has a rule");
                for (c, next) in step {
                    for (nw, nc) in self.normal_form(&next) {
                        let v = c.times(&nc);
                        let slot = acc.entry(nw).or_insert_with(|| C::zero(&self.domain));
                        *slot = slot.plus(&v);
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            }
        };
        self.cache.insert(w.clone(), result.clone());
        result
    }
}

/// `ω_i = Σ_{l≤i} (1 − q^{-2}) y_l x_l`, already in normal form.
pub fn omega<C: Coefficient>(domain: &C::Domain, i: usize, n: usize) -> Result<NcPoly<C>> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange(format!("ω_{i} with n = {n}")));
    }
    let c = one_minus_q_inv2::<C>(domain);
    let mut p = NcPoly::zero(domain, n);
    for l in 1..=i {
        p.add_term(Word(vec![Gen::y(l), Gen::x(l)]), c.clone());
    }
    Ok(p)
}
