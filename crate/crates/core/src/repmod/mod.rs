//! Explicit Ω-torsionfree simple modules of dimension m^{n−1}, as monomial
//! generator matrices over Q(ζ_m).
//!
//! Basis vectors `e(a)` are indexed by `a = (a_2, …, a_n) ∈ [0, m)^{n−1}`;
//! row `Σ a_i·m^{i−2}` holds `e(a)` (so `a_2` varies fastest). Directions
//! with `α_i ≠ 0` are built with `x_i`, directions with `α_i = 0` with `y_i`.

mod export;
mod matrix;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewriter::{Gen, GenKind, NcPoly};
use crate::scalars::{Cyclotomic, RootOfUnity};

pub use export::MatrixExport;
pub use matrix::SparseMatrix;

/// Default cap on the module dimension accepted by [`build_module`].
pub const DEFAULT_MAX_DIM: usize = 4096;

/// Parameters of the module: seed eigenvalues and central values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleParams {
    root: RootOfUnity,
    n: usize,
    alpha1: Cyclotomic,
    alpha: Vec<Cyclotomic>,
    beta: Vec<Cyclotomic>,
    lambda: Vec<Cyclotomic>,
}

impl ModuleParams {
    /// `alpha` and `beta` hold indices `2..=n`, `lambda` holds `1..=n`.
    pub fn new(
        root: RootOfUnity,
        n: usize,
        alpha1: Cyclotomic,
        alpha: Vec<Cyclotomic>,
        beta: Vec<Cyclotomic>,
        lambda: Vec<Cyclotomic>,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition(format!("module needs n ≥ 2 (got {n})")));
        }
        let lengths = [("alpha", alpha.len(), n - 1), ("beta", beta.len(), n - 1), ("lambda", lambda.len(), n)];
        for (name, got, want) in lengths {
            if got != want {
                return Err(Error::DimensionMismatch(format!("{name} has {got} entries, expected {want}")));
            }
        }
        let all = std::iter::once(&alpha1).chain(&alpha).chain(&beta).chain(&lambda);
        if all.into_iter().any(|c| c.m() != root.m) {
            return Err(Error::DimensionMismatch(format!("parameters must lie in Q(ζ_{})", root.m)));
        }
        Ok(ModuleParams { root, n, alpha1, alpha, beta, lambda })
    }

    pub fn root(&self) -> RootOfUnity {
        self.root
    }

    pub fn m(&self) -> u64 {
        self.root.m
    }

    pub fn k(&self) -> i64 {
        self.root.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha1(&self) -> &Cyclotomic {
        &self.alpha1
    }

    /// `α_i` for `2 ≤ i ≤ n`.
    pub fn alpha(&self, i: usize) -> &Cyclotomic {
        &self.alpha[i - 2]
    }

    /// `β_i` for `2 ≤ i ≤ n`.
    pub fn beta(&self, i: usize) -> &Cyclotomic {
        &self.beta[i - 2]
    }

    /// `λ_i` for `1 ≤ i ≤ n`.
    pub fn lambda(&self, i: usize) -> &Cyclotomic {
        &self.lambda[i - 1]
    }

    pub fn set_beta(&mut self, i: usize, value: Cyclotomic) {
        self.beta[i - 2] = value;
    }

    /// `y_i^m` on a direction built by `x_i`:
    /// `(λ_i^m − λ_{i−1}^m) / (α_i (1 − q^{−2})^m)`.
    pub fn derived_beta(&self, i: usize) -> Result<Cyclotomic> {
        if !(2..=self.n).contains(&i) {
            return Err(Error::IndexOutOfRange(format!("beta index {i} outside 2..={}", self.n)));
        }
        let alpha = self.alpha(i);
        if alpha.is_zero() {
            return Err(Error::Precondition(format!("beta_{i} is free when alpha_{i} = 0")));
        }
        let m = self.m() as i64;
        let c = &Cyclotomic::one(self.m()) - &self.root.q_pow(-2);
        let num = &self.lambda(i).pow(m)? - &self.lambda(i - 1).pow(m)?;
        num.div(&(alpha * &c.pow(m)?))
    }

    pub fn set_lambda(&mut self, i: usize, value: Cyclotomic) {
        self.lambda[i - 1] = value;
    }

    /// On a direction built by `y_i` the seed satisfies `v·x_i = 0`, which
    /// pins `λ_i = q^{−2} λ_{i−1}`. `None` when `λ_i` is free.
    pub fn forced_lambda(&self, i: usize) -> Option<Cyclotomic> {
        (i >= 2 && i <= self.n && self.alpha(i).is_zero()).then(|| &self.root.q_pow(-2) * self.lambda(i - 1))
    }

    /// Checks the constraints that tie parameters together.
    pub fn check_consistency(&self) -> Result<()> {
        for i in 2..=self.n {
            if let Some(forced) = self.forced_lambda(i) {
                if &forced != self.lambda(i) {
                    return Err(Error::Precondition(format!(
                        "alpha_{i} = 0 forces lambda_{i} = q^-2 lambda_{} = {forced}, got {}",
                        i - 1,
                        self.lambda(i)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> Result<u128> {
        dimension(self.m(), self.n)
    }
}

/// `m^{n−1}`.
pub fn dimension(m: u64, n: usize) -> Result<u128> {
    if n < 2 {
        return Err(Error::Precondition(format!("module needs n ≥ 2 (got {n})")));
    }
    u32::try_from(n - 1)
        .ok()
        .and_then(|e| (m as u128).checked_pow(e))
        .ok_or(Error::Overflow("module dimension"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    I,
    II,
    III,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::I => "I",
            Case::II => "II",
            Case::III => "III",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseTag {
    pub tag: Case,
    /// `{i ≥ 2 : α_i = 0}`
    pub i_set: Vec<usize>,
    /// `{i ≥ 2 : β_i = 0}`
    pub j_set: Vec<usize>,
}

impl CaseTag {
    /// Whether direction `i` is built from `y_i`.
    pub fn is_y_direction(&self, i: usize) -> bool {
        self.i_set.contains(&i)
    }
}

pub fn classify_case(params: &ModuleParams) -> Result<CaseTag> {
    for i in 1..=params.n {
        if params.lambda(i).is_zero() {
            return Err(Error::TorsionParameters(format!(
                "lambda_{i} = 0, so omega_{i} is not invertible on the module"
            )));
        }
    }
    if params.alpha1.is_zero() {
        return Err(Error::UnsupportedAlpha1);
    }
    let i_set: Vec<usize> = (2..=params.n).filter(|&i| params.alpha(i).is_zero()).collect();
    let j_set: Vec<usize> = (2..=params.n).filter(|&i| params.beta(i).is_zero()).collect();
    let tag = if i_set.is_empty() {
        Case::I
    } else if i_set.iter().any(|i| j_set.contains(i)) {
        Case::III
    } else {
        Case::II
    };
    Ok(CaseTag { tag, i_set, j_set })
}

/// `a = (a_2, …, a_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BasisIndex(pub Vec<usize>);

impl BasisIndex {
    pub fn zero(n: usize) -> Self {
        BasisIndex(vec![0; n.saturating_sub(1)])
    }

    /// Decodes a row number (`a_2` is the least significant digit).
    pub fn from_row(mut row: usize, m: u64, n: usize) -> Self {
        let m = m as usize;
        let mut digits = Vec::with_capacity(n - 1);
        for _ in 2..=n {
            digits.push(row % m);
            row /= m;
        }
        BasisIndex(digits)
    }

    pub fn row(&self, m: u64) -> usize {
        self.0.iter().rev().fold(0, |acc, &d| acc * m as usize + d)
    }

    /// `a_i` for `2 ≤ i ≤ n`.
    pub fn get(&self, i: usize) -> usize {
        self.0[i - 2]
    }

    fn with(&self, i: usize, value: usize) -> Self {
        let mut out = self.clone();
        out.0[i - 2] = value;
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "e({})", parts.join(","))
    }
}

/// Row-independent constants of the action formulas.
struct Actor<'a> {
    params: &'a ModuleParams,
    case: CaseTag,
    /// scalar part of `y_1`: `α_1^{−1} λ_1 (1 − q^{−2})^{−1}`
    y1: Cyclotomic,
    /// `y_i` on an x-direction, indexed `[i][a_i]`, all factors except the q-power
    y_down: HashMap<(usize, usize), Cyclotomic>,
    /// `x_i` on a y-direction, `−[a_i]_{q²} λ_{i−1}`, indexed `[i][a_i]`
    x_down: HashMap<(usize, usize), Cyclotomic>,
}

impl<'a> Actor<'a> {
    fn new(params: &'a ModuleParams) -> Result<Self> {
        let case = classify_case(params)?;
        params.check_consistency()?;
        let root = params.root;
        let m = params.m();
        let one = Cyclotomic::one(m);
        let c = (&one - &root.q_pow(-2)).inv()?;
        let y1 = &(&params.alpha1.inv()? * params.lambda(1)) * &c;
        let mut y_down = HashMap::new();
        let mut x_down = HashMap::new();
        let q2_minus_1 = &root.q_pow(2) - &one;
        for i in 2..=params.n {
            let (li, lprev) = (params.lambda(i), params.lambda(i - 1));
            for a in 0..m as usize {
                if case.is_y_direction(i) {
                    let bracket = (&one - &root.q_pow(2 * a as i64)).div(&q2_minus_1)?;
                    x_down.insert((i, a), &bracket * lprev);
                } else if a == 0 {
                    let v = &(li - lprev) * &c;
                    y_down.insert((i, a), &v * &params.alpha(i).inv()?);
                } else {
                    let v = li - &(&root.q_pow(-2 * a as i64) * lprev);
                    y_down.insert((i, a), &v * &c);
                }
            }
        }
        Ok(Actor { params, case, y1, y_down, x_down })
    }

    fn act(&self, a: &BasisIndex, g: Gen) -> Result<Option<(Cyclotomic, BasisIndex)>> {
        let p = self.params;
        let n = p.n;
        if g.index == 0 || g.index > n {
            return Err(Error::IndexOutOfRange(format!("generator {g} for n = {n}")));
        }
        if a.0.len() != n - 1 || a.0.iter().any(|&d| d as u64 >= p.m()) {
            return Err(Error::IndexOutOfRange(format!("basis index {a} for n = {n}, m = {}", p.m())));
        }
        let root = p.root;
        let top = p.m() as usize - 1;
        let y_dir = |j: usize| self.case.is_y_direction(j);
        // Σ_{2≤j<i} a_j
        let below = |i: usize| (2..i).map(|j| a.get(j) as i64).sum::<i64>();
        // exponent of Π_{j>i} (q^{−2a_j} or q^{2a_j})
        let above = |i: usize| {
            (i + 1..=n)
                .map(|j| if y_dir(j) { 2 * a.get(j) as i64 } else { -2 * a.get(j) as i64 })
                .sum::<i64>()
        };
        let weight: i64 = (2..=n)
            .map(|j| if y_dir(j) { -(a.get(j) as i64) } else { a.get(j) as i64 })
            .sum();

        let i = g.index;
        if i == 1 {
            let scalar = match g.kind {
                GenKind::X => &p.alpha1,
                GenKind::Y => &self.y1,
            };
            return Ok(Some((scalar * &root.q_pow(-weight), a.clone())));
        }
        let ai = a.get(i);
        let out = match (g.kind, y_dir(i)) {
            // basis-building generator: raise a_i, wrapping through the central value
            (GenKind::X, false) | (GenKind::Y, true) => {
                let sign = if g.kind == GenKind::X { 1 } else { -1 };
                let shift = root.q_pow(sign * below(i));
                if ai < top {
                    Some((shift, a.with(i, ai + 1)))
                } else {
                    let central = if g.kind == GenKind::X { p.alpha(i) } else { p.beta(i) };
                    let coeff = &shift * central;
                    (!coeff.is_zero()).then(|| (coeff, a.with(i, 0)))
                }
            }
            (GenKind::Y, false) => {
                let scalar = &self.y_down[&(i, ai)] * &root.q_pow(above(i) - below(i));
                let target = if ai == 0 { top } else { ai - 1 };
                Some((scalar, a.with(i, target)))
            }
            (GenKind::X, true) => {
                if ai == 0 {
                    None
                } else {
                    let scalar = &self.x_down[&(i, ai)] * &root.q_pow(above(i) + below(i));
                    Some((scalar, a.with(i, ai - 1)))
                }
            }
        };
        Ok(out.filter(|(c, _)| !c.is_zero()))
    }
}

/// Single-row evaluation `e(a)·g = coefficient · e(target)`; `None` means zero.
pub fn act(a: &BasisIndex, g: Gen, params: &ModuleParams) -> Result<Option<(Cyclotomic, BasisIndex)>> {
    Actor::new(params)?.act(a, g)
}

/// Matrices of all `2n` generators on the basis `e(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrices {
    pub root: RootOfUnity,
    pub n: usize,
    pub case: CaseTag,
    pub basis: Vec<BasisIndex>,
    pub params: Option<ModuleParams>,
    x: Vec<SparseMatrix>,
    y: Vec<SparseMatrix>,
}

impl GeneratorMatrices {
    /// Assembles matrices given in the order `x_1..x_n`, `y_1..y_n`.
    pub fn from_parts(
        root: RootOfUnity,
        n: usize,
        case: CaseTag,
        basis: Vec<BasisIndex>,
        params: Option<ModuleParams>,
        x: Vec<SparseMatrix>,
        y: Vec<SparseMatrix>,
    ) -> Result<Self> {
        let d = basis.len();
        if x.len() != n || y.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "expected {n} x- and y-matrices, got {} and {}",
                x.len(),
                y.len()
            )));
        }
        for (idx, mat) in x.iter().chain(&y).enumerate() {
            if mat.dim() != d || mat.field() != root.m {
                return Err(Error::DimensionMismatch(format!(
                    "matrix #{idx} is {}×{} over Q(ζ_{}), expected {d}×{d} over Q(ζ_{})",
                    mat.dim(),
                    mat.dim(),
                    mat.field(),
                    root.m
                )));
            }
        }
        Ok(GeneratorMatrices { root, n, case, basis, params, x, y })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn m(&self) -> u64 {
        self.root.m
    }

    pub fn get(&self, g: Gen) -> &SparseMatrix {
        match g.kind {
            GenKind::X => &self.x[g.index - 1],
            GenKind::Y => &self.y[g.index - 1],
        }
    }

    pub fn get_mut(&mut self, g: Gen) -> &mut SparseMatrix {
        match g.kind {
            GenKind::X => &mut self.x[g.index - 1],
            GenKind::Y => &mut self.y[g.index - 1],
        }
    }

    /// `(generator, matrix)` in the order `x_1..x_n, y_1..y_n`.
    pub fn iter(&self) -> impl Iterator<Item = (Gen, &SparseMatrix)> {
        Gen::all(self.n).into_iter().map(move |g| (g, self.get(g)))
    }

    pub fn row_of(&self, a: &BasisIndex) -> Option<usize> {
        self.basis.iter().position(|b| b == a)
    }

    /// Matrix of a noncommutative polynomial (words multiply left to right).
    pub fn evaluate(&self, p: &NcPoly<Cyclotomic>) -> Result<SparseMatrix> {
        if p.rank() > self.n {
            return Err(Error::DimensionMismatch(format!(
                "element of rank {} evaluated on a module for n = {}",
                p.rank(),
                self.n
            )));
        }
        let d = self.dimension();
        let mut out = SparseMatrix::zero(self.m(), d);
        for (word, coeff) in p.terms() {
            let mut acc = SparseMatrix::identity(self.m(), d);
            for &g in word.letters() {
                acc = acc.mul(self.get(g));
            }
            out = out.add(&acc.scale(coeff));
        }
        Ok(out)
    }

    /// Direct sum `self ⊕ other` (both must share `q` and `n`).
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.root != other.root || self.n != other.n {
            return Err(Error::DimensionMismatch("direct sum of incompatible modules".into()));
        }
        let join = |a: &[SparseMatrix], b: &[SparseMatrix]| -> Vec<SparseMatrix> {
            a.iter().zip(b).map(|(p, q)| p.block_diagonal(q)).collect()
        };
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().cloned());
        Ok(GeneratorMatrices {
            root: self.root,
            n: self.n,
            case: self.case.clone(),
            basis,
            params: self.params.clone(),
            x: join(&self.x, &other.x),
            y: join(&self.y, &other.y),
        })
    }

    /// Re-enumerates the basis: new position `s` holds old basis vector `perm[s]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let d = self.dimension();
        let mut seen = vec![false; d];
        if perm.len() != d || perm.iter().any(|&p| p >= d || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Precondition("not a permutation of the basis".into()));
        }
        Ok(GeneratorMatrices {
            root: self.root,
            n: self.n,
            case: self.case.clone(),
            basis: perm.iter().map(|&p| self.basis[p].clone()).collect(),
            params: self.params.clone(),
            x: self.x.iter().map(|mat| mat.permuted(perm)).collect(),
            y: self.y.iter().map(|mat| mat.permuted(perm)).collect(),
        })
    }
}

pub fn build_module(params: &ModuleParams) -> Result<GeneratorMatrices> {
    build_module_with_cap(params, DEFAULT_MAX_DIM)
}

pub fn build_module_with_cap(params: &ModuleParams, max_dim: usize) -> Result<GeneratorMatrices> {
    let actor = Actor::new(params)?;
    let dim = params.dimension()?;
    if dim > max_dim as u128 {
        return Err(Error::DimensionGuard { dim: usize::try_from(dim).unwrap_or(usize::MAX), cap: max_dim });
    }
    let d = dim as usize;
    let (m, n) = (params.m(), params.n);
    let basis: Vec<BasisIndex> = (0..d).map(|r| BasisIndex::from_row(r, m, n)).collect();
    let matrix = |g: Gen| -> Result<SparseMatrix> {
        let mut mat = SparseMatrix::zero(m, d);
        for (row, a) in basis.iter().enumerate() {
            if let Some((coeff, target)) = actor.act(a, g)? {
                mat.set(row, target.row(m), coeff);
            }
        }
        Ok(mat)
    };
    let x = (1..=n).map(|i| matrix(Gen::x(i))).collect::<Result<Vec<_>>>()?;
    let y = (1..=n).map(|i| matrix(Gen::y(i))).collect::<Result<Vec<_>>>()?;
    Ok(GeneratorMatrices {
        root: params.root,
        n,
        case: actor.case.clone(),
        basis,
        params: Some(params.clone()),
        x,
        y,
    })
}
