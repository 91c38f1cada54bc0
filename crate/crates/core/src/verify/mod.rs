//! Exact checks on generator matrices: defining relations, ω-structure,
//! central values, eigenvalue separation, and absolute irreducibility via
//! the commutant.

mod commutant;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pidegree::pi_degree;
use crate::repmod::{GeneratorMatrices, ModuleParams, SparseMatrix};
use crate::rewriter::{omega, Gen, GenKind};
use crate::scalars::{Cyclotomic, RootOfUnity};

pub use commutant::{commutant_dimension, commutant_dimension_with_guard, DEFAULT_COMMUTANT_GUARD};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub id: String,
    pub residual_zero: bool,
}

fn check_shapes(mats: &GeneratorMatrices) -> Result<()> {
    let d = mats.dimension();
    for (g, mat) in mats.iter() {
        if mat.dim() != d || mat.field() != mats.m() {
            return Err(Error::DimensionMismatch(format!("matrix of {g} is {0}×{0}, basis has {d}", mat.dim())));
        }
    }
    Ok(())
}

/// Residual of every defining relation, for all index pairs.
pub fn relation_residuals(mats: &GeneratorMatrices) -> Result<Vec<RelationCheck>> {
    check_shapes(mats)?;
    let root = mats.root;
    let m = |g: Gen| mats.get(g);
    let prod = |a: Gen, b: Gen| m(a).mul(m(b));
    let mut out = Vec::new();
    let mut record = |id: String, residual: SparseMatrix| {
        out.push(RelationCheck { id, residual_zero: residual.is_zero() });
    };
    let n = mats.n;
    for j in 1..=n {
        for i in 1..j {
            let (xi, xj, yi, yj) = (Gen::x(i), Gen::x(j), Gen::y(i), Gen::y(j));
            record(format!("{yj}*{yi} = q*{yi}*{yj}"), prod(yj, yi).sub(&prod(yi, yj).scale(&root.q())));
            record(format!("{xj}*{xi} = q^-1*{xi}*{xj}"), prod(xj, xi).sub(&prod(xi, xj).scale(&root.q_pow(-1))));
            record(format!("{yj}*{xi} = q*{xi}*{yj}"), prod(yj, xi).sub(&prod(xi, yj).scale(&root.q())));
            record(format!("{xj}*{yi} = q^-1*{yi}*{xj}"), prod(xj, yi).sub(&prod(yi, xj).scale(&root.q_pow(-1))));
        }
    }
    let c = &Cyclotomic::one(root.m) - &root.q_pow(-2);
    for i in 1..=n {
        let (xi, yi) = (Gen::x(i), Gen::y(i));
        let mut residual = prod(xi, yi).sub(&prod(yi, xi));
        for l in 1..i {
            residual = residual.sub(&prod(Gen::y(l), Gen::x(l)).scale(&c));
        }
        record(format!("{xi}*{yi} - {yi}*{xi} = (1-q^-2)*sum_(l<{i}) y_l*x_l"), residual);
    }
    Ok(out)
}

/// Relations whose residual is not the zero matrix (empty for a module).
pub fn check_relations(mats: &GeneratorMatrices) -> Result<Vec<RelationCheck>> {
    Ok(relation_residuals(mats)?.into_iter().filter(|r| !r.residual_zero).collect())
}

fn seed_row(mats: &GeneratorMatrices) -> Result<usize> {
    mats.basis
        .iter()
        .position(|a| a.is_zero())
        .ok_or_else(|| Error::Precondition("basis has no seed vector e(0,…,0)".into()))
}

fn params_for<'a>(mats: &GeneratorMatrices, params: &'a ModuleParams) -> Result<&'a ModuleParams> {
    if params.root() != mats.root || params.n() != mats.n {
        return Err(Error::DimensionMismatch("parameters do not match the matrices".into()));
    }
    Ok(params)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaCheck {
    pub i: usize,
    pub diagonal: bool,
    pub seed_eigenvalue: Cyclotomic,
    pub seed_matches_lambda: bool,
    pub invertible: bool,
}

impl OmegaCheck {
    pub fn passed(&self) -> bool {
        self.diagonal && self.seed_matches_lambda && self.invertible
    }
}

pub fn omega_matrix(mats: &GeneratorMatrices, i: usize) -> Result<SparseMatrix> {
    mats.evaluate(&omega::<Cyclotomic>(&mats.root, i, mats.n)?)
}

pub fn check_omega_action(mats: &GeneratorMatrices, params: &ModuleParams) -> Result<Vec<OmegaCheck>> {
    let params = params_for(mats, params)?;
    let seed = seed_row(mats)?;
    (1..=mats.n)
        .map(|i| {
            let w = omega_matrix(mats, i)?;
            let diag = w.diagonal();
            let seed_eigenvalue = diag[seed].clone();
            Ok(OmegaCheck {
                i,
                diagonal: w.is_diagonal(),
                seed_matches_lambda: &seed_eigenvalue == params.lambda(i),
                seed_eigenvalue,
                invertible: diag.iter().all(|v| !v.is_zero()),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralScalar {
    /// e.g. `"x2^m"`
    pub power: String,
    /// `None` when the m-th power is not a scalar matrix.
    pub value: Option<Cyclotomic>,
    pub expected: Cyclotomic,
    pub matches: bool,
}

/// Central value each generator's m-th power must take.
pub fn expected_central_value(params: &ModuleParams, g: Gen) -> Result<Cyclotomic> {
    let m = params.m() as i64;
    let i = g.index;
    Ok(match (g.kind, i) {
        (GenKind::X, 1) => params.alpha1().pow(m)?,
        (GenKind::Y, 1) => {
            let c = &Cyclotomic::one(params.m()) - &params.root().q_pow(-2);
            (params.lambda(1).div(&(params.alpha1() * &c))?).pow(m)?
        }
        (GenKind::X, _) => params.alpha(i).clone(),
        (GenKind::Y, _) => params.beta(i).clone(),
    })
}

pub fn check_central_scalars(mats: &GeneratorMatrices, params: &ModuleParams) -> Result<Vec<CentralScalar>> {
    let params = params_for(mats, params)?;
    let m = mats.m() as u32;
    mats.iter()
        .map(|(g, mat)| {
            let value = mat.pow(m).scalar_value();
            let expected = expected_central_value(params, g)?;
            Ok(CentralScalar {
                power: format!("{g}^m"),
                matches: value.as_ref() == Some(&expected),
                value,
                expected,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenSeparation {
    pub r: usize,
    pub diagonal: bool,
    /// Rows that agree above `r`, differ at `r`, and share an eigenvalue.
    pub collisions: Vec<(usize, usize)>,
}

impl EigenSeparation {
    pub fn passed(&self) -> bool {
        self.diagonal && self.collisions.is_empty()
    }
}

/// For `2 ≤ r ≤ n`: `x_r y_r` is diagonal and separates basis vectors that
/// first differ (from the top) at position `r`.
pub fn check_eigen_separation(mats: &GeneratorMatrices) -> Result<Vec<EigenSeparation>> {
    check_shapes(mats)?;
    let n = mats.n;
    let mut out = Vec::new();
    for r in 2..=n {
        let d = mats.get(Gen::x(r)).mul(mats.get(Gen::y(r)));
        let diag = d.diagonal();
        let mut groups: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
        for (row, a) in mats.basis.iter().enumerate() {
            groups.entry(&a.0[r - 1..]).or_default().push(row);
        }
        let mut collisions = Vec::new();
        for rows in groups.values() {
            for (s, &p) in rows.iter().enumerate() {
                for &t in &rows[s + 1..] {
                    let (a, b) = (&mats.basis[p], &mats.basis[t]);
                    if a.get(r) != b.get(r) && diag[p] == diag[t] {
                        collisions.push((p, t));
                    }
                }
            }
        }
        out.push(EigenSeparation { r, diagonal: d.is_diagonal(), collisions });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionBound {
    pub dimension: u64,
    pub pi_degree: u64,
    pub bound_holds: bool,
    pub saturated: bool,
}

pub fn check_dimension_bound(params: &ModuleParams) -> Result<DimensionBound> {
    let dimension = u64::try_from(params.dimension()?).map_err(|_| Error::Overflow("module dimension"))?;
    let pi_degree = pi_degree(params.n(), params.m())?.degree;
    Ok(DimensionBound { dimension, pi_degree, bound_holds: dimension <= pi_degree, saturated: dimension == pi_degree })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Commutant {
    /// `None` when the guard skipped the solve.
    pub dimension: Option<usize>,
    pub guard: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub m: u64,
    pub k: i64,
    pub n: usize,
    pub case: String,
    pub dimension: usize,
    pub relations_checked: usize,
    pub relation_failures: Vec<RelationCheck>,
    pub omega: Vec<OmegaCheck>,
    pub omega_diagonal: Vec<bool>,
    pub omega_seed_eigenvalues: Vec<Cyclotomic>,
    pub central_scalars: Vec<CentralScalar>,
    pub eigen_separation: Vec<EigenSeparation>,
    pub commutant: Commutant,
    pub pi_degree: u64,
    pub saturated: bool,
}

impl VerificationReport {
    pub fn relations_passed(&self) -> bool {
        self.relation_failures.is_empty()
    }

    pub fn omega_passed(&self) -> bool {
        self.omega.iter().all(OmegaCheck::passed)
    }

    pub fn central_passed(&self) -> bool {
        self.central_scalars.iter().all(|c| c.matches)
    }

    pub fn separation_passed(&self) -> bool {
        self.eigen_separation.iter().all(EigenSeparation::passed)
    }

    pub fn commutant_passed(&self) -> Option<bool> {
        self.commutant.dimension.map(|d| d == 1)
    }

    /// Every check that ran passed.
    pub fn passed(&self) -> bool {
        self.relations_passed()
            && self.omega_passed()
            && self.central_passed()
            && self.separation_passed()
            && self.commutant_passed() != Some(false)
            && self.saturated
    }

    pub fn commutant_skipped(&self) -> bool {
        self.commutant.dimension.is_none()
    }

    pub fn summary(&self) -> String {
        let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
        let mut s = String::new();
        let _ = writeln!(s, "module n={} m={} k={} case {} dimension {}", self.n, self.m, self.k, self.case, self.dimension);
        let _ = writeln!(
            s,
            "{} relations ({} checked, {} failing)",
            mark(self.relations_passed()),
            self.relations_checked,
            self.relation_failures.len()
        );
        for f in &self.relation_failures {
            let _ = writeln!(s, "     violated: {}", f.id);
        }
        let _ = writeln!(s, "{} omega action (diagonal, seed eigenvalue lambda_i, invertible)", mark(self.omega_passed()));
        let _ = writeln!(s, "{} central scalars", mark(self.central_passed()));
        for c in self.central_scalars.iter().filter(|c| !c.matches) {
            let got = c.value.as_ref().map_or("not scalar".to_string(), ToString::to_string);
            let _ = writeln!(s, "     {}: got {got}, expected {}", c.power, c.expected);
        }
        let _ = writeln!(s, "{} eigenvalue separation", mark(self.separation_passed()));
        match self.commutant.dimension {
            Some(d) => {
                let _ = writeln!(s, "{} commutant dimension {d}", mark(d == 1));
            }
            None => {
                let _ = writeln!(
                    s,
                    "SKIP commutant: dimension {} exceeds guard {} (raise --max-commutant-dim)",
                    self.dimension, self.commutant.guard
                );
            }
        }
        let _ = writeln!(s, "{} dimension {} = PI-degree {}", mark(self.saturated), self.dimension, self.pi_degree);
        s
    }
}

/// Runs every check; the commutant solve is skipped above `commutant_guard`.
pub fn verify_module(mats: &GeneratorMatrices, params: &ModuleParams, commutant_guard: usize) -> Result<VerificationReport> {
    let residuals = relation_residuals(mats)?;
    let omega = check_omega_action(mats, params)?;
    let central_scalars = check_central_scalars(mats, params)?;
    let eigen_separation = check_eigen_separation(mats)?;
    let commutant = match commutant_dimension_with_guard(mats, commutant_guard) {
        Ok(d) => Some(d),
        Err(Error::DimensionGuard { .. }) => None,
        Err(e) => return Err(e),
    };
    let pi = pi_degree(mats.n, mats.m())?.degree;
    let root: RootOfUnity = mats.root;
    Ok(VerificationReport {
        m: root.m,
        k: root.k,
        n: mats.n,
        case: mats.case.tag.to_string(),
        dimension: mats.dimension(),
        relations_checked: residuals.len(),
        relation_failures: residuals.into_iter().filter(|r| !r.residual_zero).collect(),
        omega_diagonal: omega.iter().map(|o| o.diagonal).collect(),
        omega_seed_eigenvalues: omega.iter().map(|o| o.seed_eigenvalue.clone()).collect(),
        omega,
        central_scalars,
        eigen_separation,
        commutant: Commutant { dimension: commutant, guard: commutant_guard },
        pi_degree: pi,
        saturated: mats.dimension() as u64 == pi,
    })
}
