//! Acceptance gate: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use qeuclid_core::config::parse_config_str;
use qeuclid_core::pidegree::{brute_force_image, build_h, image_cardinality, pi_degree};
use qeuclid_core::repmod::{build_module, classify_case, dimension, Case, ModuleParams};
use qeuclid_core::rewriter::{check_local_confluence, verify_central_powers, verify_remark_identities, Gen};
use qeuclid_core::verify::{
    check_central_scalars, check_dimension_bound, check_eigen_separation, check_omega_action, check_relations,
    commutant_dimension,
};

const PI_DEGREE_EACH: Duration = Duration::from_secs(1);
const ORACLE_TOTAL: Duration = Duration::from_secs(5);
const IDENTITIES_TOTAL: Duration = Duration::from_secs(60);
const CONFLUENCE_TOTAL: Duration = Duration::from_secs(30);
const MODULE_EACH: Duration = Duration::from_secs(30);
const DRAWS_PER_CASE: usize = 5;
const SEED: u64 = 0x5eed_0001;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let mut slowest = Duration::ZERO;
    for n in 1..=4usize {
        for m in [3u64, 5, 7, 9] {
            let t = Instant::now();
            let report = pi_degree(n, m).map_err(|e| format!("n={n} m={m}: {e}"))?;
            let took = t.elapsed();
            slowest = slowest.max(took);
            let expected = m.pow(n as u32 - 1);
            ensure(report.degree == expected, || format!("n={n} m={m}: degree {} ≠ {expected}", report.degree))?;
            ensure(took < PI_DEGREE_EACH, || format!("n={n} m={m}: {took:?} ≥ {PI_DEGREE_EACH:?}"))?;
        }
    }
    Ok(format!("16 (n,m) pairs give m^(n-1); slowest {slowest:?}"))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    for n in [1usize, 2] {
        for m in [3u64, 5] {
            let h = build_h(n).to_int_matrix();
            let fast = image_cardinality(&h, m).map_err(|e| e.to_string())?;
            let slow = brute_force_image(&h, m).map_err(|e| e.to_string())?;
            ensure(fast == slow, || format!("n={n} m={m}: SNF {fast} vs enumeration {slow}"))?;
        }
    }
    let took = t.elapsed();
    ensure(took < ORACLE_TOTAL, || format!("took {took:?}"))?;
    Ok(format!("SNF image size equals enumeration for 4 pairs in {took:?}"))
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let mut checks = 0;
    for n in 1..=3 {
        let r = verify_remark_identities(n).map_err(|e| e.to_string())?;
        ensure(r.all_passed(), || format!("normality identities fail for n={n}"))?;
        checks += r.checks.len();
    }
    for (n, m) in [(2usize, 3i64), (2, 5), (3, 3)] {
        let r = verify_central_powers(n, m, 1).map_err(|e| e.to_string())?;
        ensure(r.all_passed(), || format!("centrality fails for n={n} m={m}"))?;
        checks += r.checks.len();
    }
    let took = t.elapsed();
    ensure(took < IDENTITIES_TOTAL, || format!("took {took:?}"))?;
    Ok(format!("{checks} identities straighten to 0 in {took:?}"))
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let mut ambiguities = 0;
    for n in 1..=3 {
        let r = check_local_confluence(n).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("n={n}: {:?}", r.failures))?;
        ambiguities += r.ambiguities;
    }
    let took = t.elapsed();
    ensure(took < CONFLUENCE_TOTAL, || format!("took {took:?}"))?;
    Ok(format!("{ambiguities} overlap ambiguities resolve for n ≤ 3 in {took:?}"))
}

fn random_scalar(rng: &mut ChaCha8Rng, m: i64) -> Value {
    let mut num: i64 = rng.random_range(1..=4);
    if rng.random_bool(0.5) {
        num = -num;
    }
    let den: i64 = rng.random_range(1..=3);
    let e: i64 = rng.random_range(0..m);
    json!(format!("{num}/{den}*q^{e}"))
}

/// A pseudo-random instance of the requested case. `y_dirs` lists the
/// directions with α_i = 0; in Case III the first of them also has β = 0.
fn draw(rng: &mut ChaCha8Rng, case: Case, n: usize, m: i64) -> ModuleParams {
    let k = loop {
        let k = rng.random_range(1..m);
        if (1..=k).filter(|d| k % d == 0 && m % d == 0).count() == 1 {
            break k;
        }
    };
    let mut y_dirs: Vec<usize> = (2..=n).filter(|_| rng.random_bool(0.5)).collect();
    if case != Case::I && y_dirs.is_empty() {
        y_dirs.push(rng.random_range(2..=n));
    }
    if case == Case::I {
        y_dirs.clear();
    }
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for i in 2..=n {
        if y_dirs.contains(&i) {
            alpha.push(json!("0"));
            let nilpotent = case == Case::III && i == y_dirs[0];
            beta.push(if nilpotent { json!("0") } else { random_scalar(rng, m) });
        } else {
            alpha.push(random_scalar(rng, m));
            beta.push(json!("auto"));
        }
    }
    let lambda: Vec<Value> = (1..=n)
        .map(|i| if y_dirs.contains(&i) { json!("auto") } else { random_scalar(rng, m) })
        .collect();
    let cfg = json!({
        "m": m, "k": k, "n": n,
        "alpha1": random_scalar(rng, m),
        "alpha": alpha, "beta": beta, "lambda": lambda,
    });
    parse_config_str(&cfg.to_string()).and_then(|c| c.to_params()).expect("drawn config is valid")
}

fn check_instance(p: &ModuleParams, expected: Case) -> Result<Duration, String> {
    let t = Instant::now();
    let label = format!("case {expected:?} n={} m={} k={}", p.n(), p.m(), p.k());
    let err = |e: qeuclid_core::Error| format!("{label}: {e}");
    ensure(classify_case(p).map_err(err)?.tag == expected, || format!("{label}: misclassified"))?;
    let mats = build_module(p).map_err(err)?;
    let d = dimension(p.m(), p.n()).map_err(err)?;
    ensure(mats.dimension() as u128 == d, || format!("{label}: dimension {}", mats.dimension()))?;
    let bad = check_relations(&mats).map_err(err)?;
    ensure(bad.is_empty(), || format!("{label}: relations {:?}", bad))?;
    let omega = check_omega_action(&mats, p).map_err(err)?;
    ensure(omega.iter().all(|o| o.passed()), || format!("{label}: omega {omega:?}"))?;
    let central = check_central_scalars(&mats, p).map_err(err)?;
    ensure(central.iter().all(|c| c.matches), || format!("{label}: central scalars"))?;
    let sep = check_eigen_separation(&mats).map_err(err)?;
    ensure(sep.iter().all(|s| s.passed()), || format!("{label}: eigenvalue separation"))?;
    let comm = commutant_dimension(&mats).map_err(err)?;
    ensure(comm == 1, || format!("{label}: commutant dimension {comm}"))?;
    let bound = check_dimension_bound(p).map_err(err)?;
    ensure(bound.saturated, || format!("{label}: dimension {} vs PI-degree {}", bound.dimension, bound.pi_degree))?;
    let took = t.elapsed();
    ensure(took < MODULE_EACH, || format!("{label}: took {took:?}"))?;
    Ok(took)
}

fn instances() -> Vec<(Case, ModuleParams)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for case in [Case::I, Case::II, Case::III] {
        for (n, m) in [(2usize, 3i64), (2, 5), (3, 3)] {
            for _ in 0..DRAWS_PER_CASE {
                out.push((case, draw(&mut rng, case, n, m)));
            }
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let all = instances();
    let mut slowest = Duration::ZERO;
    for (case, p) in &all {
        slowest = slowest.max(check_instance(p, *case)?);
    }
    Ok(format!("{} instances (3 cases × 3 shapes × {DRAWS_PER_CASE} draws) fully verified; slowest {slowest:?}", all.len()))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    for (case, p) in instances().iter().filter(|(c, _)| *c == Case::III) {
        let tag = classify_case(p).map_err(|e| e.to_string())?;
        let mats = build_module(p).map_err(|e| e.to_string())?;
        for j in tag.i_set.iter().filter(|j| tag.j_set.contains(j)) {
            let y = mats.get(Gen::y(*j));
            let m = p.m() as u32;
            ensure(!y.pow(m - 1).is_zero(), || format!("{case:?}: y{j}^(m-1) = 0"))?;
            ensure(y.pow(m).is_zero(), || format!("{case:?}: y{j}^m ≠ 0"))?;
            checked += 1;
        }
    }
    ensure(checked > 0, || "no nilpotent direction drawn".into())?;
    Ok(format!("{checked} directions j ∈ I∩J: y_j^(m-1) ≠ 0 and y_j^m = 0"))
}

fn criterion_7() -> Outcome {
    const BASE: &str = r#"{"m":3,"k":1,"n":2,"alpha1":"1","alpha":["1"],"beta":["auto"],"lambda":["1","1"]}"#;
    // (a) torsion parameters
    let e = parse_config_str(&BASE.replace(r#"["1","1"]"#, r#"["1","0"]"#)).err();
    ensure(e.as_ref().is_some_and(|e| e.to_string().contains("torsion parameters")), || format!("(a) got {e:?}"))?;
    // (b) even m
    let e = parse_config_str(&BASE.replace(r#""m":3"#, r#""m":4"#)).err();
    ensure(e.as_ref().is_some_and(|e| e.to_string().contains("m must be odd")), || format!("(b) got {e:?}"))?;
    // (c) every single-entry tampering by a factor q is caught
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut mutations = 0;
    for (case, n, m) in [(Case::I, 2, 3), (Case::II, 2, 5), (Case::III, 3, 3)] {
        let p = draw(&mut rng, case, n, m);
        let mats = build_module(&p).map_err(|e| e.to_string())?;
        let q = p.root().q();
        for g in Gen::all(n) {
            let entries: Vec<_> = mats.get(g).entries().map(|(i, j, v)| (i, j, v.clone())).collect();
            for (i, j, v) in entries {
                let mut bad = mats.clone();
                bad.get_mut(g).set(i, j, &v * &q);
                let rel_ok = check_relations(&bad).map_err(|e| e.to_string())?.is_empty();
                let cen_ok = check_central_scalars(&bad, &p).map_err(|e| e.to_string())?.iter().all(|c| c.matches);
                ensure(!(rel_ok && cen_ok), || format!("(c) {case:?}: {g}[{i}][{j}] undetected"))?;
                mutations += 1;
            }
        }
    }
    // (d) direct sum
    let p = draw(&mut rng, Case::I, 2, 3);
    let mats = build_module(&p).map_err(|e| e.to_string())?;
    let sum = mats.direct_sum(&mats).map_err(|e| e.to_string())?;
    let comm = commutant_dimension(&sum).map_err(|e| e.to_string())?;
    ensure(comm >= 2, || format!("(d) direct sum commutant {comm}"))?;
    Ok(format!("(a) λ=0 and (b) m=4 rejected; (c) {mutations} single-entry mutations caught; (d) M⊕M commutant {comm}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("1 PI-degree reproduction", criterion_1),
        ("2 oracle equivalence", criterion_2),
        ("3 symbolic identity suite", criterion_3),
        ("4 local confluence", criterion_4),
        ("5 module construction and verification", criterion_5),
        ("6 Case III nilpotency", criterion_6),
        ("7 negative controls", criterion_7),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS [{name}] {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL [{name}] {why}");
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
