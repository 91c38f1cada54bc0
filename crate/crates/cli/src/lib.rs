//! Command-line front end for `qeuclid-core`.
//!
//! Exit codes: 0 all checks pass, 2 configuration or usage error, 3 a check
//! failed, 4 a size guard was exceeded, 1 anything else.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use qeuclid_core::config::{parse_config, InstanceConfig};
use qeuclid_core::pidegree::pi_degree;
use qeuclid_core::repmod::{build_module_with_cap, GeneratorMatrices, ModuleParams, DEFAULT_MAX_DIM};
use qeuclid_core::rewriter::{check_local_confluence, parse_element, verify_central_powers, verify_remark_identities};
use qeuclid_core::scalars::{Cyclotomic, GenericQ, QLaurent, RootOfUnity};
use qeuclid_core::verify::{verify_module, DEFAULT_COMMUTANT_GUARD};
use qeuclid_core::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;
pub const EXIT_GUARD: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "qeuclid", version, about = "Exact computations for quantum Euclidean space at roots of unity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// PI-degree from the Smith normal form of the exponent matrix
    PiDegree(PiDegreeArgs),
    /// Build the generator matrices of a module and export them
    Build(BuildArgs),
    /// Run the verification suite on a module
    Verify(VerifyArgs),
    /// Check the normality and centrality identities with the rewriter
    Identities(IdentitiesArgs),
    /// Print the normal form of an element
    Straighten(StraightenArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Emit the machine-readable JSON report
    #[arg(long)]
    pub json: bool,
    /// Write the report to a file instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PiDegreeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Matrix file to write (standard output when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print a JSON summary instead of text
    #[arg(long)]
    pub json: bool,
    /// Largest module dimension to build
    #[arg(long)]
    pub max_dim: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, conflicts_with = "matrices", required_unless_present = "matrices")]
    pub config: Option<PathBuf>,
    /// Matrix file written by `build`
    #[arg(long)]
    pub matrices: Option<PathBuf>,
    /// Largest module dimension to build
    #[arg(long)]
    pub max_dim: Option<usize>,
    /// Largest dimension for the commutant solve
    #[arg(long)]
    pub max_commutant_dim: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct IdentitiesArgs {
    #[arg(long)]
    pub n: usize,
    /// Also check the centrality of m-th powers at q = ζ_m^k
    #[arg(long)]
    pub m: Option<i64>,
    #[arg(long, default_value_t = 1)]
    pub k: i64,
    /// Also check local confluence of the rewriting rules
    #[arg(long)]
    pub confluence: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct StraightenArgs {
    #[arg(long)]
    pub n: usize,
    /// Evaluate at q = ζ_m^k instead of generic q
    #[arg(long)]
    pub m: Option<i64>,
    #[arg(long, default_value_t = 1)]
    pub k: i64,
    /// Element such as `x2*y1 - q^-1*y1*x2`
    pub element: String,
}

/// Result of one command: exit code and the text for each stream.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct Envelope<'a, R: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    config: Value,
    passed: bool,
    exit_code: i32,
    timing_ms: f64,
    report: R,
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Config { .. }
        | Error::InvalidModulus(_)
        | Error::NotPrimitive { .. }
        | Error::Parse(_)
        | Error::TorsionParameters(_)
        | Error::UnsupportedAlpha1
        | Error::Precondition(_)
        | Error::IndexOutOfRange(_)
        | Error::DimensionMismatch(_) => EXIT_CONFIG,
        Error::DimensionGuard { .. } | Error::OracleGuard(_) => EXIT_GUARD,
        _ => EXIT_INTERNAL,
    }
}

fn failure(err: &Error) -> Outcome {
    Outcome { code: exit_code_for(err), stderr: format!("error: {err}\n"), ..Outcome::default() }
}

pub fn run(cli: Cli) -> Outcome {
    let result = match &cli.command {
        Command::PiDegree(a) => cmd_pi_degree(a),
        Command::Build(a) => cmd_build(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Identities(a) => cmd_identities(a),
        Command::Straighten(a) => cmd_straighten(a),
    };
    result.unwrap_or_else(|e| failure(&e))
}

fn elapsed_ms(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn render<R: Serialize>(
    command: &str,
    config: Value,
    code: i32,
    start: Instant,
    report: &R,
    text: String,
    output: &OutputArgs,
) -> Result<Outcome, Error> {
    let body = if output.json {
        let env = Envelope {
            tool: "qeuclid",
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            passed: code == EXIT_PASS,
            exit_code: code,
            timing_ms: elapsed_ms(start),
            report,
        };
        serde_json::to_string_pretty(&env).expect("reports serialize") + "\n"
    } else {
        text
    };
    emit(code, body, output.out.as_deref())
}

fn emit(code: i32, body: String, out: Option<&Path>) -> Result<Outcome, Error> {
    match out {
        Some(path) => {
            std::fs::write(path, &body)
                .map_err(|e| Error::Config { field: "--out".into(), message: format!("{}: {e}", path.display()) })?;
            Ok(Outcome { code, ..Outcome::default() })
        }
        None => Ok(Outcome { code, stdout: body, ..Outcome::default() }),
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn cmd_pi_degree(a: &PiDegreeArgs) -> Result<Outcome, Error> {
    let start = Instant::now();
    let report = pi_degree(a.n, a.m)?;
    let code = if report.matches_expected { EXIT_PASS } else { EXIT_CHECK_FAILED };
    let text = format!(
        "{} PI-degree n={} m={}: |image| = {}, degree = {}, expected m^(n-1) = {}\nelementary divisors: {:?}\n",
        mark(report.matches_expected),
        report.n,
        report.m,
        report.h,
        report.degree,
        report.expected,
        report.elementary_divisors
    );
    let config = serde_json::json!({ "n": a.n, "m": a.m });
    render("pi-degree", config, code, start, &report, text, &a.output)
}

fn load_params(path: &Path) -> Result<(InstanceConfig, ModuleParams), Error> {
    let cfg = parse_config(path)?;
    let params = cfg.to_params()?;
    Ok((cfg, params))
}

fn guard(flag: Option<usize>, from_config: Option<usize>, default: usize) -> usize {
    flag.or(from_config).unwrap_or(default)
}

pub fn cmd_build(a: &BuildArgs) -> Result<Outcome, Error> {
    let start = Instant::now();
    let (cfg, params) = load_params(&a.config)?;
    let guards = cfg.guards.clone().unwrap_or_default();
    let mats = build_module_with_cap(&params, guard(a.max_dim, guards.max_dim, DEFAULT_MAX_DIM))?;
    let matrices = mats.to_json() + "\n";
    let Some(out) = &a.out else {
        return Ok(Outcome { code: EXIT_PASS, stdout: matrices, ..Outcome::default() });
    };
    emit(EXIT_PASS, matrices, Some(out))?;
    #[derive(Serialize)]
    struct BuildReport<'a> {
        case: &'a qeuclid_core::repmod::CaseTag,
        dimension: usize,
        nonzeros: usize,
        matrices: String,
    }
    let report = BuildReport {
        case: &mats.case,
        dimension: mats.dimension(),
        nonzeros: mats.iter().map(|(_, m)| m.nnz()).sum(),
        matrices: out.display().to_string(),
    };
    let text = format!(
        "built case {} module: n={} m={} k={}, dimension {}, {} nonzero entries -> {}\n",
        mats.case.tag,
        mats.n,
        mats.m(),
        mats.root.k,
        report.dimension,
        report.nonzeros,
        report.matrices
    );
    let output = OutputArgs { json: a.json, out: None };
    render("build", config_value(&cfg), EXIT_PASS, start, &report, text, &output)
}

fn config_value(cfg: &InstanceConfig) -> Value {
    serde_json::to_value(cfg).expect("config serializes")
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, Error> {
    let start = Instant::now();
    let (config, mats, params, from_config_guard): (Value, GeneratorMatrices, ModuleParams, Option<usize>) =
        match (&a.config, &a.matrices) {
            (Some(path), _) => {
                let (cfg, params) = load_params(path)?;
                let guards = cfg.guards.clone().unwrap_or_default();
                let mats = build_module_with_cap(&params, guard(a.max_dim, guards.max_dim, DEFAULT_MAX_DIM))?;
                (config_value(&cfg), mats, params, guards.max_commutant_dim)
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
                    field: "--matrices".into(),
                    message: format!("{}: {e}", path.display()),
                })?;
                let mats = GeneratorMatrices::from_json(&text)?;
                let params = mats.params.clone().ok_or_else(|| Error::Config {
                    field: "params".into(),
                    message: "matrix file carries no module parameters".into(),
                })?;
                (config_value(&InstanceConfig::from_params(&params)), mats, params, None)
            }
            (None, None) => {
                return Err(Error::Config { field: "--config".into(), message: "give --config or --matrices".into() })
            }
        };
    let cap = guard(a.max_commutant_dim, from_config_guard, DEFAULT_COMMUTANT_GUARD);
    let report = verify_module(&mats, &params, cap)?;
    let code = if !report.passed() {
        EXIT_CHECK_FAILED
    } else if report.commutant_skipped() {
        EXIT_GUARD
    } else {
        EXIT_PASS
    };
    let text = report.summary();
    render("verify", config, code, start, &report, text, &a.output)
}

pub fn cmd_identities(a: &IdentitiesArgs) -> Result<Outcome, Error> {
    let start = Instant::now();
    let remark = verify_remark_identities(a.n)?;
    let central = a.m.map(|m| verify_central_powers(a.n, m, a.k)).transpose()?;
    let confluence = if a.confluence { Some(check_local_confluence(a.n)?) } else { None };
    let passed = remark.all_passed()
        && central.as_ref().is_none_or(|c| c.all_passed())
        && confluence.as_ref().is_none_or(|c| c.passed());
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{} normality identities over generic q, n={} ({} checks)",
        mark(remark.all_passed()),
        a.n,
        remark.checks.len()
    );
    for f in remark.failures() {
        let _ = writeln!(text, "     {}: residual {}", f.label, f.residual);
    }
    if let Some(c) = &central {
        let _ = writeln!(text, "{} centrality of m-th powers over {} ({} checks)", mark(c.all_passed()), c.domain, c.checks.len());
        for f in c.failures() {
            let _ = writeln!(text, "     {}: residual {}", f.label, f.residual);
        }
    }
    if let Some(c) = &confluence {
        let _ = writeln!(
            text,
            "{} local confluence: {} ambiguities in {} words",
            mark(c.passed()),
            c.ambiguities,
            c.words_checked
        );
        for f in &c.failures {
            let _ = writeln!(text, "     {f}");
        }
    }
    #[derive(Serialize)]
    struct IdentitiesReport<'a> {
        remark: &'a qeuclid_core::rewriter::IdentityReport,
        central_powers: Option<&'a qeuclid_core::rewriter::IdentityReport>,
        confluence: Option<&'a qeuclid_core::rewriter::ConfluenceReport>,
    }
    let report = IdentitiesReport { remark: &remark, central_powers: central.as_ref(), confluence: confluence.as_ref() };
    let config = serde_json::json!({ "n": a.n, "m": a.m, "k": a.k, "confluence": a.confluence });
    let code = if passed { EXIT_PASS } else { EXIT_CHECK_FAILED };
    render("identities", config, code, start, &report, text, &a.output)
}

pub fn cmd_straighten(a: &StraightenArgs) -> Result<Outcome, Error> {
    let text = match a.m {
        None => parse_element::<QLaurent>(&GenericQ, a.n, &a.element)?.straighten().to_string(),
        Some(m) => {
            let root = RootOfUnity::new(m, a.k)?;
            parse_element::<Cyclotomic>(&root, a.n, &a.element)?.straighten().to_string()
        }
    };
    Ok(Outcome { code: EXIT_PASS, stdout: text + "\n", ..Outcome::default() })
}
