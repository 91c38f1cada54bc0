use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{BasisIndex, CaseTag, GeneratorMatrices, SparseMatrix};
use crate::config::InstanceConfig;
use crate::error::{Error, Result};
use crate::rewriter::Gen;
use crate::scalars::{Cyclotomic, RootOfUnity};

/// Serialized generator matrices. Coefficients are arrays of rational
/// strings (powers of ζ_m in ascending order), so the round trip is exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixExport {
    pub m: u64,
    pub k: i64,
    pub n: usize,
    pub case: CaseTag,
    pub dimension: usize,
    pub basis: Vec<BasisIndex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<InstanceConfig>,
    /// generator name → `[row, col, coefficients]`
    pub generators: BTreeMap<String, Vec<(usize, usize, Vec<String>)>>,
}

impl MatrixExport {
    pub fn from_matrices(mats: &GeneratorMatrices) -> Self {
        let generators = mats
            .iter()
            .map(|(g, mat)| {
                let triplets = mat.entries().map(|(i, j, v)| (i, j, v.to_strings())).collect();
                (g.name(), triplets)
            })
            .collect();
        MatrixExport {
            m: mats.root.m,
            k: mats.root.k,
            n: mats.n,
            case: mats.case.clone(),
            dimension: mats.dimension(),
            basis: mats.basis.clone(),
            params: mats.params.as_ref().map(InstanceConfig::from_params),
            generators,
        }
    }

    pub fn to_matrices(&self) -> Result<GeneratorMatrices> {
        let root = RootOfUnity::new(self.m as i64, self.k)?;
        let d = self.dimension;
        if self.basis.len() != d {
            return Err(Error::DimensionMismatch(format!("{} basis labels for dimension {d}", self.basis.len())));
        }
        let params = self.params.as_ref().map(InstanceConfig::to_params).transpose()?;
        let read = |g: Gen| -> Result<SparseMatrix> {
            let triplets = self
                .generators
                .get(&g.name())
                .ok_or_else(|| Error::Parse(format!("missing matrix for {g}")))?;
            let mut mat = SparseMatrix::zero(self.m, d);
            for (i, j, coeffs) in triplets {
                if *i >= d || *j >= d {
                    return Err(Error::IndexOutOfRange(format!("entry ({i}, {j}) of {g} in dimension {d}")));
                }
                mat.set(*i, *j, Cyclotomic::from_strings(self.m, coeffs)?);
            }
            Ok(mat)
        };
        let x = (1..=self.n).map(|i| read(Gen::x(i))).collect::<Result<Vec<_>>>()?;
        let y = (1..=self.n).map(|i| read(Gen::y(i))).collect::<Result<Vec<_>>>()?;
        GeneratorMatrices::from_parts(root, self.n, self.case.clone(), self.basis.clone(), params, x, y)
    }
}

impl GeneratorMatrices {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&MatrixExport::from_matrices(self)).expect("export is serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let export: MatrixExport = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        export.to_matrices()
    }
}
