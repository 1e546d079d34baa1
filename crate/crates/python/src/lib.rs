//! Python module `bfei`: truth tables, metrics, constructions, sweeps and
//! the reproduction suite. Reports are returned as plain dictionaries with
//! the same fields as the JSON documents.

use bfei_core::construct::{gb_construction_report, ot_recursion_metrics, palindromic_extend};
use bfei_core::search::{self, Filter, FunctionClass, Metric, SearchJob};
use bfei_core::verify::{run_verification_suite, Scope};
use bfei_core::{AnfExpression, ExactValue};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_dict<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyDict>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    py.import("json")?
        .call_method1("loads", (text,))?
        .cast_into::<PyDict>()
        .map_err(|e| value_error(e.to_string()))
}

/// A Boolean function given by its truth table.
#[pyclass(name = "TruthTable", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyTruthTable {
    inner: bfei_core::TruthTable,
}

#[pymethods]
impl PyTruthTable {
    /// From a hex table: bit `x` is `f(x)`, `X1` the low bit of `x`.
    #[new]
    fn new(hex: &str, n: usize) -> PyResult<Self> {
        let inner = bfei_core::TruthTable::from_hex(n, hex).map_err(value_error)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_anf(expr: &str, n: usize) -> PyResult<Self> {
        let anf = AnfExpression::parse(expr, n).map_err(value_error)?;
        Ok(Self {
            inner: anf.to_truth_table(),
        })
    }

    #[staticmethod]
    fn from_bits(bits: &str) -> PyResult<Self> {
        let inner = bfei_core::TruthTable::from_bit_string(bits).map_err(value_error)?;
        Ok(Self { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn hex(&self) -> String {
        self.inner.to_hex()
    }

    #[getter]
    fn weight(&self) -> u64 {
        self.inner.weight()
    }

    fn __call__(&self, x: u64) -> PyResult<bool> {
        if x >= self.inner.len() {
            return Err(value_error(format!("point {x} out of range")));
        }
        Ok(self.inner.get(x))
    }

    fn __len__(&self) -> usize {
        self.inner.len() as usize
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "TruthTable('{}', n={})",
            self.inner.to_hex(),
            self.inner.n()
        )
    }
}

/// Walsh correlations `Σ_x (-1)^{f(x) ⊕ ⟨α,x⟩}` for every `α`.
#[pyfunction]
fn walsh(f: &PyTruthTable) -> PyResult<Vec<i64>> {
    Ok(bfei_core::walsh_transform(&f.inner)
        .map_err(value_error)?
        .into_correlations())
}

#[pyfunction]
fn analyze<'py>(py: Python<'py>, f: &PyTruthTable) -> PyResult<Bound<'py, PyDict>> {
    to_dict(py, &bfei_core::analyze(&f.inner).map_err(value_error)?)
}

#[pyfunction]
fn ot_report<'py>(py: Python<'py>, g: &PyTruthTable, m: u32) -> PyResult<Bound<'py, PyDict>> {
    to_dict(py, &ot_recursion_metrics(&g.inner, m).map_err(value_error)?)
}

#[pyfunction]
fn gb_report<'py>(py: Python<'py>, g: &PyTruthTable, b: bool) -> PyResult<Bound<'py, PyDict>> {
    to_dict(
        py,
        &gb_construction_report(&g.inner, b).map_err(value_error)?,
    )
}

#[pyfunction]
fn palindrome(g: &PyTruthTable, b: bool) -> PyResult<PyTruthTable> {
    let (inner, _) = palindromic_extend(&g.inner, b).map_err(value_error)?;
    Ok(PyTruthTable { inner })
}

fn parse_class(s: &str) -> PyResult<FunctionClass> {
    match s {
        "general" => Ok(FunctionClass::General),
        "symmetric" => Ok(FunctionClass::Symmetric),
        "rotsym" | "rotation-symmetric" => Ok(FunctionClass::RotationSymmetric),
        _ => Err(value_error(format!("unknown class {s:?}"))),
    }
}

fn parse_metric(s: &str) -> PyResult<Metric> {
    match s {
        "mei" => Ok(Metric::Mei),
        "ei" => Ok(Metric::Ei),
        _ => s
            .strip_prefix("ot-mei:")
            .and_then(|m| m.parse().ok())
            .map(|m| Metric::OtMei { m })
            .ok_or_else(|| value_error(format!("unknown metric {s:?}"))),
    }
}

fn parse_filter(s: &str) -> PyResult<Filter> {
    match s {
        "balanced" => Ok(Filter::Balanced),
        "plateaued" => Ok(Filter::Plateaued),
        "weight1-max-walsh" => Ok(Filter::Weight1MaxWalsh),
        _ => s
            .strip_prefix("resilient:")
            .and_then(|t| t.parse().ok())
            .map(Filter::Resilient)
            .ok_or_else(|| value_error(format!("unknown filter {s:?}"))),
    }
}

/// Exhaustive sweep; the GIL is released while it runs.
#[pyfunction]
#[pyo3(signature = (class_, n, metric, filters = Vec::new(), count_achieving = None, threads = 0, witness_cap = 64))]
#[allow(clippy::too_many_arguments)]
fn sweep<'py>(
    py: Python<'py>,
    class_: &str,
    n: usize,
    metric: &str,
    filters: Vec<String>,
    count_achieving: Option<&str>,
    threads: usize,
    witness_cap: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let mut job = SearchJob::new(parse_class(class_)?, n, parse_metric(metric)?)
        .threads(threads)
        .witness_cap(witness_cap);
    for f in &filters {
        job = job.filter(parse_filter(f)?);
    }
    if let Some(t) = count_achieving {
        job = job.count_achieving(ExactValue::parse(t).map_err(value_error)?);
    }
    let result = py.detach(|| search::sweep(&job)).map_err(value_error)?;
    to_dict(py, &result)
}

#[pyfunction]
fn check_conjecture<'py>(
    py: Python<'py>,
    n_min: usize,
    n_max: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let report = py
        .detach(|| search::check_conjecture(n_min..=n_max))
        .map_err(value_error)?;
    to_dict(py, &report)
}

/// Runs the reproduction suite: `"fast"`, `"full"` or a list of claim ids.
#[pyfunction]
#[pyo3(signature = (scope = "fast", only = None))]
fn verify<'py>(
    py: Python<'py>,
    scope: &str,
    only: Option<Vec<String>>,
) -> PyResult<Bound<'py, PyDict>> {
    let scope = match only {
        Some(ids) => Scope::Only(ids),
        None => scope.parse().map_err(value_error)?,
    };
    let ledger = py.detach(|| run_verification_suite(&scope));
    to_dict(py, &ledger)
}

#[pymodule]
fn bfei(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTruthTable>()?;
    m.add_function(wrap_pyfunction!(walsh, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(ot_report, m)?)?;
    m.add_function(wrap_pyfunction!(gb_report, m)?)?;
    m.add_function(wrap_pyfunction!(palindrome, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(check_conjecture, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
