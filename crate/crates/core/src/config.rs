//! JSON instance files for module construction.
//!
//! ```json
//! { "m": 3, "k": 1, "n": 2,
//!   "alpha1": "1", "alpha": ["1"], "beta": ["auto"], "lambda": ["1", "q"] }
//! ```
//!
//! A scalar literal is an integer, a string (`"-2/3"`, `"q^-1"`, `"2*q^2"`,
//! or `"auto"` for a β or λ that is determined by the other parameters), or an
//! array of rational strings giving coefficients of `1, ζ, ζ², …`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::repmod::{classify_case, ModuleParams};
use crate::scalars::{Cyclotomic, RootOfUnity};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Int(i64),
    Text(String),
    Coeffs(Vec<String>),
}

impl Literal {
    pub fn exact(c: &Cyclotomic) -> Self {
        Literal::Coeffs(c.to_strings())
    }

    fn is_auto(&self) -> bool {
        matches!(self, Literal::Text(s) if s.trim() == "auto")
    }

    fn parse(&self, root: &RootOfUnity, field: &str) -> Result<Cyclotomic> {
        let res = match self {
            Literal::Int(v) => Ok(Cyclotomic::from_integer(root.m, *v)),
            Literal::Text(s) => Cyclotomic::parse_scalar(root, s),
            Literal::Coeffs(parts) => Cyclotomic::from_strings(root.m, parts),
        };
        res.map_err(|e| config_error(field, e.to_string()))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Guards {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_commutant_dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    pub m: i64,
    pub k: i64,
    pub n: usize,
    pub alpha1: Literal,
    /// indices 2..=n
    pub alpha: Vec<Literal>,
    /// indices 2..=n
    pub beta: Vec<Literal>,
    /// indices 1..=n
    pub lambda: Vec<Literal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guards: Option<Guards>,
}

fn config_error(field: &str, message: impl Into<String>) -> Error {
    Error::Config { field: field.to_string(), message: message.into() }
}

pub fn parse_config_str(text: &str) -> Result<InstanceConfig> {
    let cfg: InstanceConfig = serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        // serde reports the offending field inside the message
        let field = msg
            .split('`')
            .nth(1)
            .filter(|_| msg.contains("field"))
            .unwrap_or("<root>")
            .to_string();
        Error::Config { field, message: msg }
    })?;
    cfg.to_params()?;
    Ok(cfg)
}

pub fn parse_config(path: impl AsRef<Path>) -> Result<InstanceConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| config_error("<file>", format!("{}: {e}", path.display())))?;
    parse_config_str(&text)
}

impl InstanceConfig {
    /// Exact literal form of `params`.
    pub fn from_params(params: &ModuleParams) -> Self {
        let n = params.n();
        InstanceConfig {
            m: params.m() as i64,
            k: params.k(),
            n,
            alpha1: Literal::exact(params.alpha1()),
            alpha: (2..=n).map(|i| Literal::exact(params.alpha(i))).collect(),
            beta: (2..=n).map(|i| Literal::exact(params.beta(i))).collect(),
            lambda: (1..=n).map(|i| Literal::exact(params.lambda(i))).collect(),
            guards: None,
        }
    }

    /// Validates and resolves the literals. `"auto"` β and λ entries are replaced by
    /// the value forced by α and λ.
    pub fn to_params(&self) -> Result<ModuleParams> {
        let root = RootOfUnity::new(self.m, self.k).map_err(|e| match e {
            Error::InvalidModulus(_) => config_error("m", e.to_string()),
            _ => config_error("k", e.to_string()),
        })?;
        if self.n < 2 {
            return Err(config_error("n", format!("n must be ≥ 2 (got {})", self.n)));
        }
        let n = self.n;
        for (name, got, want) in [
            ("alpha", self.alpha.len(), n - 1),
            ("beta", self.beta.len(), n - 1),
            ("lambda", self.lambda.len(), n),
        ] {
            if got != want {
                return Err(config_error(name, format!("expected {want} entries, got {got}")));
            }
        }
        let alpha1 = self.alpha1.parse(&root, "alpha1")?;
        let list = |name: &str, items: &[Literal], first: usize| -> Result<Vec<Cyclotomic>> {
            items
                .iter()
                .enumerate()
                .map(|(j, lit)| {
                    if lit.is_auto() {
                        Ok(Cyclotomic::zero(root.m))
                    } else {
                        lit.parse(&root, &format!("{name}[{}]", j + first))
                    }
                })
                .collect()
        };
        let alpha = list("alpha", &self.alpha, 2)?;
        let beta = list("beta", &self.beta, 2)?;
        let lambda = list("lambda", &self.lambda, 1)?;
        if let Some(j) = self.alpha.iter().position(Literal::is_auto) {
            return Err(config_error(&format!("alpha[{}]", j + 2), "`auto` is only accepted for beta and lambda"));
        }
        if self.alpha1.is_auto() {
            return Err(config_error("alpha1", "`auto` is only accepted for beta and lambda"));
        }
        if self.lambda[0].is_auto() {
            return Err(config_error("lambda[1]", "lambda_1 is free and cannot be `auto`"));
        }
        let mut params = ModuleParams::new(root, n, alpha1.clone(), alpha, beta, lambda)?;
        for i in 2..=n {
            let field = format!("lambda[{i}]");
            match (params.forced_lambda(i), self.lambda[i - 1].is_auto()) {
                (Some(forced), true) => params.set_lambda(i, forced),
                (None, true) => {
                    return Err(config_error(&field, format!("`auto` needs alpha_{i} = 0; lambda_{i} is free otherwise")))
                }
                (Some(forced), false) if &forced != params.lambda(i) => {
                    return Err(config_error(
                        &field,
                        format!("alpha_{i} = 0 forces lambda_{i} = q^-2 lambda_{} = {forced}; use \"auto\"", i - 1),
                    ))
                }
                _ => {}
            }
        }
        if let Some(i) = (1..=n).find(|&i| params.lambda(i).is_zero()) {
            return Err(config_error(&format!("lambda[{i}]"), "torsion parameters: every lambda_i must be nonzero"));
        }
        if alpha1.is_zero() {
            return Err(config_error("alpha1", Error::UnsupportedAlpha1.to_string()));
        }
        for (j, lit) in self.beta.iter().enumerate() {
            let i = j + 2;
            if lit.is_auto() {
                let value = params
                    .derived_beta(i)
                    .map_err(|e| config_error(&format!("beta[{i}]"), format!("`auto` needs alpha_{i} ≠ 0 ({e})")))?;
                params.set_beta(i, value);
            }
        }
        classify_case(&params)?;
        Ok(params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"{"m":3,"k":1,"n":2,"alpha1":1,"alpha":["1"],"beta":["auto"],"lambda":["1","q"]}"#;

    fn field_of(text: &str) -> String {
        match parse_config_str(text) {
            Err(Error::Config { field, .. }) => field,
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn accepts_literals_and_auto() {
        let cfg = parse_config_str(GOOD).unwrap();
        let p = cfg.to_params().unwrap();
        assert_eq!(p.lambda(2), &p.root().q());
        assert_eq!(p.beta(2), &p.derived_beta(2).unwrap());
        // exact form round-trips
        let back = InstanceConfig::from_params(&p).to_params().unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn distinct_errors() {
        assert_eq!(field_of(&GOOD.replace("\"m\":3", "\"m\":4")), "m");
        assert_eq!(field_of(&GOOD.replace("\"k\":1", "\"k\":3")), "k");
        assert_eq!(field_of(&GOOD.replace("\"n\":2", "\"n\":1")), "n");
        assert_eq!(field_of(&GOOD.replace("[\"1\",\"q\"]", "[\"1\",\"0\"]")), "lambda[2]");
        assert_eq!(field_of(&GOOD.replace("\"alpha1\":1", "\"alpha1\":0")), "alpha1");
        assert_eq!(field_of(&GOOD.replace("[\"1\",\"q\"]", "[\"1\",\"q^x\"]")), "lambda[2]");
        assert_eq!(field_of(&GOOD.replace("[\"1\",\"q\"]", "[\"1\"]")), "lambda");
        assert_eq!(field_of(&GOOD.replace(",\"alpha1\":1", "")), "alpha1");
        let torsion = parse_config_str(&GOOD.replace("[\"1\",\"q\"]", "[\"0\",\"q\"]")).unwrap_err();
        assert!(torsion.to_string().contains("torsion parameters"));
    }

    #[test]
    fn auto_beta_needs_x_direction() {
        let text = GOOD.replace("\"alpha\":[\"1\"]", "\"alpha\":[\"0\"]");
        assert_eq!(field_of(&text), "beta[2]");
    }
}
