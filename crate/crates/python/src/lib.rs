//! Python bindings: `import qeuclid`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use qeuclid_core::config::parse_config_str;
use qeuclid_core::pidegree::{self, build_h, IntMatrix};
use qeuclid_core::repmod::{build_module_with_cap, GeneratorMatrices, ModuleParams, DEFAULT_MAX_DIM};
use qeuclid_core::rewriter::{self, parse_element, Gen};
use qeuclid_core::scalars::{Cyclotomic, GenericQ, QLaurent, RootOfUnity};
use qeuclid_core::verify::{self, DEFAULT_COMMUTANT_GUARD};
use qeuclid_core::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::DimensionGuard { .. } | Error::OracleGuard(_) | Error::Overflow(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any().unbind(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any().unbind(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any().unbind(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any().unbind(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any().unbind(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any().unbind()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_any().unbind()
        }
    })
}

fn report<T: serde::Serialize>(py: Python<'_>, r: &T) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(r).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &v)
}

/// PI-degree report for rank `n` at an odd `m` (or `m = 1`).
#[pyfunction]
fn pi_degree(py: Python<'_>, n: usize, m: u64) -> PyResult<Py<PyAny>> {
    report(py, &pidegree::pi_degree(n, m).map_err(py_err)?)
}

/// Size of the image of the exponent matrix mod m, from its Smith form.
#[pyfunction]
fn image_cardinality(n: usize, m: u64) -> PyResult<u64> {
    pidegree::image_cardinality(&build_h(n).to_int_matrix(), m).map_err(py_err)
}

/// Same count by enumeration (small instances only).
#[pyfunction]
fn brute_force_image(n: usize, m: u64) -> PyResult<u64> {
    pidegree::brute_force_image(&build_h(n).to_int_matrix(), m).map_err(py_err)
}

/// Smith normal form of an integer matrix: `{"divisors", "u", "v"}` with
/// `u · a · v` diagonal.
#[pyfunction]
fn smith_normal_form(py: Python<'_>, rows: Vec<Vec<i64>>) -> PyResult<Py<PyAny>> {
    if rows.iter().any(|r| r.len() != rows.first().map_or(0, Vec::len)) {
        return Err(PyValueError::new_err("ragged matrix"));
    }
    let snf = pidegree::smith_normal_form(&IntMatrix::from_rows(&rows));
    let big = |m: &IntMatrix| m.to_i64_rows().ok_or_else(|| PyRuntimeError::new_err("entry exceeds 64 bits"));
    let divisors: Vec<String> = snf.divisors.iter().map(ToString::to_string).collect();
    let v = serde_json::json!({ "divisors": divisors, "u": big(&snf.u)?, "v": big(&snf.v)? });
    to_py(py, &v)
}

/// Normality identities of the ω_i over generic q.
#[pyfunction]
fn verify_identities(py: Python<'_>, n: usize) -> PyResult<Py<PyAny>> {
    report(py, &rewriter::verify_remark_identities(n).map_err(py_err)?)
}

/// Centrality of `x_i^m`, `y_i^m` at `q = ζ_m^k`.
#[pyfunction]
#[pyo3(signature = (n, m, k = 1))]
fn verify_central_powers(py: Python<'_>, n: usize, m: i64, k: i64) -> PyResult<Py<PyAny>> {
    report(py, &rewriter::verify_central_powers(n, m, k).map_err(py_err)?)
}

#[pyfunction]
fn check_local_confluence(py: Python<'_>, n: usize) -> PyResult<Py<PyAny>> {
    report(py, &rewriter::check_local_confluence(n).map_err(py_err)?)
}

/// Normal form of an element such as `"x2*y1 - q^-1*y1*x2"`; generic q
/// unless `m` is given.
#[pyfunction]
#[pyo3(signature = (n, element, m = None, k = 1))]
fn straighten(n: usize, element: &str, m: Option<i64>, k: i64) -> PyResult<String> {
    Ok(match m {
        None => parse_element::<QLaurent>(&GenericQ, n, element).map_err(py_err)?.straighten().to_string(),
        Some(m) => {
            let root = RootOfUnity::new(m, k).map_err(py_err)?;
            parse_element::<Cyclotomic>(&root, n, element).map_err(py_err)?.straighten().to_string()
        }
    })
}

/// A module given by its generator matrices.
#[pyclass(frozen)]
struct Module {
    mats: GeneratorMatrices,
    params: ModuleParams,
}

#[pymethods]
impl Module {
    /// Builds the module described by an instance config (JSON text).
    #[staticmethod]
    #[pyo3(signature = (text, max_dim = DEFAULT_MAX_DIM))]
    fn from_config(text: &str, max_dim: usize) -> PyResult<Self> {
        let params = parse_config_str(text).and_then(|c| c.to_params()).map_err(py_err)?;
        let mats = build_module_with_cap(&params, max_dim).map_err(py_err)?;
        Ok(Module { mats, params })
    }

    /// Loads matrices exported by `to_json` or the `build` command.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let mats = GeneratorMatrices::from_json(text).map_err(py_err)?;
        let params = mats
            .params
            .clone()
            .ok_or_else(|| PyValueError::new_err("matrix file carries no module parameters"))?;
        Ok(Module { mats, params })
    }

    fn to_json(&self) -> String {
        self.mats.to_json()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.mats.dimension()
    }

    #[getter]
    fn case(&self) -> String {
        self.mats.case.tag.to_string()
    }

    #[getter]
    fn n(&self) -> usize {
        self.mats.n
    }

    #[getter]
    fn m(&self) -> u64 {
        self.mats.m()
    }

    /// Basis labels `(a_2, …, a_n)` in row order.
    #[getter]
    fn basis(&self) -> Vec<Vec<usize>> {
        self.mats.basis.iter().map(|a| a.0.clone()).collect()
    }

    /// Sparse entries `(row, col, coefficients)` of a generator such as `"x2"`;
    /// coefficients are rational strings for 1, ζ, ζ², ….
    fn matrix(&self, generator: &str) -> PyResult<Vec<(usize, usize, Vec<String>)>> {
        let g = Gen::parse(generator)
            .filter(|g| g.index >= 1 && g.index <= self.mats.n)
            .ok_or_else(|| PyValueError::new_err(format!("no generator `{generator}`")))?;
        Ok(self.mats.get(g).entries().map(|(i, j, v)| (i, j, v.to_strings())).collect())
    }

    /// Violated defining relations (empty for a genuine module).
    fn relation_failures(&self) -> PyResult<Vec<String>> {
        Ok(verify::check_relations(&self.mats).map_err(py_err)?.into_iter().map(|r| r.id).collect())
    }

    #[pyo3(signature = (guard = DEFAULT_COMMUTANT_GUARD))]
    fn commutant_dimension(&self, guard: usize) -> PyResult<usize> {
        verify::commutant_dimension_with_guard(&self.mats, guard).map_err(py_err)
    }

    /// Full verification report as a dict.
    #[pyo3(signature = (max_commutant_dim = DEFAULT_COMMUTANT_GUARD))]
    fn verify(&self, py: Python<'_>, max_commutant_dim: usize) -> PyResult<Py<PyAny>> {
        let r = verify::verify_module(&self.mats, &self.params, max_commutant_dim).map_err(py_err)?;
        let mut v = serde_json::to_value(&r).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        v["passed"] = Value::Bool(r.passed());
        to_py(py, &v)
    }

    /// Direct sum with another module over the same root of unity.
    fn direct_sum(&self, other: &Module) -> PyResult<Module> {
        let mats = self.mats.direct_sum(&other.mats).map_err(py_err)?;
        Ok(Module { mats, params: self.params.clone() })
    }

    fn __repr__(&self) -> String {
        format!(
            "Module(case={}, n={}, m={}, k={}, dimension={})",
            self.mats.case.tag,
            self.mats.n,
            self.mats.m(),
            self.mats.root.k,
            self.mats.dimension()
        )
    }
}

#[pymodule]
fn qeuclid(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(pi_degree, m)?)?;
    m.add_function(wrap_pyfunction!(image_cardinality, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_image, m)?)?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identities, m)?)?;
    m.add_function(wrap_pyfunction!(verify_central_powers, m)?)?;
    m.add_function(wrap_pyfunction!(check_local_confluence, m)?)?;
    m.add_function(wrap_pyfunction!(straighten, m)?)?;
    m.add_class::<Module>()?;
    Ok(())
}
