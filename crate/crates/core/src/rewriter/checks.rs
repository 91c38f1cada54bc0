//! Symbolic identity checks built on the straightener.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{Coefficient, Cyclotomic, GenericQ, QLaurent, RootOfUnity};

use super::{omega, rewrite_at, Gen, NcPoly, Straightener, Word};

/// Covariance factor of `p` against one generator: `p·g = c·g·p`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceResult<C> {
    pub generator: Gen,
    /// `None` when `p` does not quasicommute with `g`.
    pub factor: Option<C>,
}

/// For each generator `g`, finds `c` with `p·g = c·g·p` by comparing the
/// coefficients at the leading word of `g·p`, then confirms the whole
/// difference straightens to zero.
pub fn check_covariant<C: Coefficient>(p: &NcPoly<C>) -> Result<Vec<CovarianceResult<C>>> {
    let p = p.straighten();
    if p.is_zero() {
        return Err(Error::ZeroElement);
    }
    let domain = p.domain().clone();
    let n = p.rank();
    Gen::all(n)
        .into_iter()
        .map(|g| {
            let gp = NcPoly::generator(&domain, n, g)?;
            let left = p.multiply(&gp);
            let right = gp.multiply(&p);
            let factor = right.terms().next_back().and_then(|(w, rc)| {
                let lc = left.coefficient(w)?;
                let c = lc.checked_div(rc)?;
                left.sub(&right.scale(&c)).is_zero().then_some(c)
            });
            Ok(CovarianceResult { generator: g, factor })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub label: String,
    pub passed: bool,
    /// Straightened `lhs − rhs`; `"0"` on success.
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    pub domain: String,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check_identity<C: Coefficient>(
    engine: &mut Straightener<C>,
    label: String,
    lhs: &NcPoly<C>,
    rhs: &NcPoly<C>,
) -> IdentityCheck {
    let residual = engine.straighten(&lhs.sub(rhs));
    IdentityCheck { label, passed: residual.is_zero(), residual: residual.to_string() }
}

/// Normality of ω_i over generic `q`:
/// `ω_i x_j = q² x_j ω_i`, `ω_i y_j = q^{-2} y_j ω_i` for `i < j`;
/// `ω_i` commutes with `x_j, y_j` for `j ≤ i`; `ω_i ω_j = ω_j ω_i`.
pub fn verify_remark_identities(n: usize) -> Result<IdentityReport> {
    if n == 0 {
        return Err(Error::Precondition("n ≥ 1".into()));
    }
    let d = GenericQ;
    let mut engine = Straightener::<QLaurent>::new(&d);
    let omegas = (1..=n).map(|i| omega::<QLaurent>(&d, i, n)).collect::<Result<Vec<_>>>()?;
    let gen = |g: Gen| NcPoly::<QLaurent>::generator(&d, n, g);
    let mut checks = Vec::new();
    for i in 1..=n {
        let w = &omegas[i - 1];
        for j in 1..=n {
            for (g, name) in [(Gen::x(j), "x"), (Gen::y(j), "y")] {
                let gp = gen(g)?;
                let (c, c_label) = match (j > i, name) {
                    (true, "x") => (QLaurent::q_pow(2), "q^2·"),
                    (true, _) => (QLaurent::q_pow(-2), "q^-2·"),
                    (false, _) => (QLaurent::one(), ""),
                };
                let label = format!("ω_{i}·{g} = {c_label}{g}·ω_{i}");
                checks.push(check_identity(
                    &mut engine,
                    label,
                    &w.free_product(&gp),
                    &gp.free_product(w).scale(&c),
                ));
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let (wi, wj) = (&omegas[i - 1], &omegas[j - 1]);
            checks.push(check_identity(
                &mut engine,
                format!("ω_{i}·ω_{j} = ω_{j}·ω_{i}"),
                &wi.free_product(wj),
                &wj.free_product(wi),
            ));
        }
    }
    Ok(IdentityReport { n, domain: "generic q".into(), checks })
}

/// Centrality of `x_i^m` and `y_i^m` at `q = ζ_m^k`, against every generator.
pub fn verify_central_powers(n: usize, m: i64, k: i64) -> Result<IdentityReport> {
    if n == 0 {
        return Err(Error::Precondition("n ≥ 1".into()));
    }
    let root = RootOfUnity::new(m, k)?;
    let mut engine = Straightener::<Cyclotomic>::new(&root);
    let gens = Gen::all(n);
    let mut checks = Vec::new();
    for &base in &gens {
        let power = NcPoly::<Cyclotomic>::word(&root, n, vec![base; m as usize])?;
        let power = engine.straighten(&power);
        for &g in &gens {
            let gp = NcPoly::generator(&root, n, g)?;
            checks.push(check_identity(
                &mut engine,
                format!("{base}^{m}·{g} = {g}·{base}^{m}"),
                &power.free_product(&gp),
                &gp.free_product(&power),
            ));
        }
    }
    Ok(IdentityReport { n, domain: format!("q = ζ_{}^{}", root.m, root.k), checks })
}

/// Normal forms of a word obtained by first applying the rule at each
/// position where one applies, then straightening.
pub fn resolve_overlap(n: usize, word: &[Gen]) -> Vec<(usize, NcPoly<QLaurent>)> {
    let d = GenericQ;
    let mut engine = Straightener::<QLaurent>::new(&d);
    (0..word.len().saturating_sub(1))
        .filter_map(|pos| {
            let step = rewrite_at::<QLaurent>(&d, word, pos)?;
            let mut p = NcPoly::zero(&d, n);
            for (c, w) in step {
                for (nw, nc) in engine.normal_form(&w) {
                    p.add_term(nw, c.times(&nc));
                }
            }
            Some((pos, p))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfluenceReport {
    pub n: usize,
    pub words_checked: usize,
    /// Length-3 words where two rules overlap.
    pub ambiguities: usize,
    pub failures: Vec<String>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Resolves every length-3 overlap `a b c` (both `ab` and `bc` reducible)
/// both ways and compares normal forms over generic `q`.
pub fn check_local_confluence(n: usize) -> Result<ConfluenceReport> {
    if n == 0 {
        return Err(Error::Precondition("n ≥ 1".into()));
    }
    let gens = Gen::all(n);
    let mut report = ConfluenceReport { n, words_checked: 0, ambiguities: 0, failures: Vec::new() };
    for &a in &gens {
        for &b in &gens {
            for &c in &gens {
                report.words_checked += 1;
                let word = [a, b, c];
                let resolutions = resolve_overlap(n, &word);
                if resolutions.len() < 2 {
                    continue;
                }
                report.ambiguities += 1;
                let (_, first) = &resolutions[0];
                for (pos, other) in &resolutions[1..] {
                    if other != first {
                        report.failures.push(format!(
                            "{}: position 0 gives {first}, position {pos} gives {other}",
                            Word(word.to_vec())
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covariance_of_omega_and_generators() {
        let d = GenericQ;
        let w1 = omega::<QLaurent>(&d, 1, 2).unwrap();
        let res = check_covariant(&w1).unwrap();
        let factor = |g: Gen| res.iter().find(|r| r.generator == g).unwrap().factor.clone();
        assert_eq!(factor(Gen::x(2)), Some(QLaurent::q_pow(2)));
        assert_eq!(factor(Gen::y(2)), Some(QLaurent::q_pow(-2)));
        assert_eq!(factor(Gen::x(1)), Some(QLaurent::one()));

        let x1 = NcPoly::<QLaurent>::generator(&d, 2, Gen::x(1)).unwrap();
        let res = check_covariant(&x1).unwrap();
        let y2 = res.iter().find(|r| r.generator == Gen::y(2)).unwrap();
        assert_eq!(y2.factor, Some(QLaurent::q_pow(-1)));

        // x_2 does not quasicommute with y_2 (correction term)
        let x2 = NcPoly::<QLaurent>::generator(&d, 2, Gen::x(2)).unwrap();
        let res = check_covariant(&x2).unwrap();
        assert_eq!(res.iter().find(|r| r.generator == Gen::y(2)).unwrap().factor, None);

        assert_eq!(check_covariant(&NcPoly::<QLaurent>::zero(&d, 2)), Err(Error::ZeroElement));
    }

    #[test]
    fn remark_identity_counts() {
        for (n, count) in [(1, 2), (2, 9), (3, 21)] {
            let r = verify_remark_identities(n).unwrap();
            assert_eq!(r.checks.len(), count);
            assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn central_powers_small() {
        for (n, m) in [(1, 3), (2, 3)] {
            let r = verify_central_powers(n, m, 1).unwrap();
            assert_eq!(r.checks.len(), 4 * n * n);
            assert!(r.all_passed());
        }
        // x_2^2 is not central at m = 3: the m-th power is essential
        let root = RootOfUnity::new(3, 1).unwrap();
        let x2sq = NcPoly::<Cyclotomic>::word(&root, 2, vec![Gen::x(2); 2]).unwrap();
        let y2 = NcPoly::generator(&root, 2, Gen::y(2)).unwrap();
        assert!(!x2sq.multiply(&y2).sub(&y2.multiply(&x2sq)).is_zero());
    }

    #[test]
    fn named_overlaps_agree() {
        for word in [
            [Gen::x(2), Gen::x(1), Gen::y(1)],
            [Gen::x(2), Gen::y(2), Gen::y(1)],
        ] {
            let res = resolve_overlap(2, &word);
            assert_eq!(res.len(), 2, "{word:?}");
            assert_eq!(res[0].1, res[1].1);
        }
        let res = resolve_overlap(1, &[Gen::x(1), Gen::y(1), Gen::y(1)]);
        assert_eq!(res.len(), 1);
    }

    #[test]
    fn confluence_small() {
        let r = check_local_confluence(2).unwrap();
        assert_eq!(r.words_checked, 64);
        assert!(r.ambiguities > 0);
        assert!(r.passed(), "{:?}", r.failures);
    }
}
