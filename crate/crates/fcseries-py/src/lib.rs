//! Python bindings for the `fcseries` crate.

use fcseries::algebraic::{oracle_roots as oracle, solve_all, AlgebraicEquation};
use fcseries::casebook::{brioschi_analysis, run_case};
use fcseries::fc::{fc_number as fc_f64, fc_number_exact as fc_exact, genfun_eval, FcParams};
use fcseries::{Complex64, FcError};
use num_rational::BigRational;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: FcError) -> PyErr {
    match e {
        FcError::Inconsistent(_) | FcError::OracleFailure(_) | FcError::Indeterminate(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn rational(s: &str) -> PyResult<BigRational> {
    s.trim()
        .parse()
        .map_err(|_| PyValueError::new_err(format!("not a rational: {s:?}")))
}

fn to_python<'py>(py: Python<'py>, v: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// `A_t(μ, r)` in floating point.
#[pyfunction]
fn fc_number(mu: f64, r: f64, t: u64) -> f64 {
    fc_f64(FcParams::new(mu, r), t)
}

/// `A_t(μ, r)` for rational `μ`, `r` given as strings such as `"5/2"`.
#[pyfunction]
fn fc_number_exact(mu: &str, r: &str, t: u64) -> PyResult<String> {
    Ok(fc_exact(&rational(mu)?, &rational(r)?, t).to_string())
}

/// `ℬ(μ; r; z)` truncated at `terms`, with its tail estimate.
#[pyfunction]
#[pyo3(signature = (mu, r, z, terms = 200))]
fn genfun(mu: f64, r: f64, z: Complex64, terms: usize) -> (Complex64, f64) {
    let v = genfun_eval(FcParams::new(mu, r), z, terms);
    (v.value, v.tail_estimate)
}

/// Roots of `a0 + a1 x + ... + an x^n` from convergent series, one dict per root.
#[pyfunction]
fn solve<'py>(py: Python<'py>, coeffs: Vec<Complex64>) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let eq = AlgebraicEquation::new(coeffs).map_err(err)?;
    let roots = solve_all(&eq).map_err(err)?;
    roots
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("pivot", (r.pivot.p, r.pivot.q))?;
            d.set_item("branch", r.branch)?;
            d.set_item("value", r.value)?;
            d.set_item("truncation", r.truncation)?;
            d.set_item("tail_estimate", r.tail_estimate)?;
            d.set_item("residual", r.residual)?;
            Ok(d)
        })
        .collect()
}

/// All roots by Aberth iteration, independent of the series.
#[pyfunction]
fn oracle_roots(coeffs: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
    let eq = AlgebraicEquation::new(coeffs).map_err(err)?;
    oracle(&eq).map_err(err)
}

/// One casebook entry as `{name, status, max_error, citations}`.
#[pyfunction]
fn casebook<'py>(py: Python<'py>, name: &str) -> PyResult<Bound<'py, PyAny>> {
    to_python(py, &run_case(name).map_err(err)?)
}

/// Per-pivot verdict for the Brioschi quintic with parameter `c`.
#[pyfunction]
fn brioschi<'py>(py: Python<'py>, c: Complex64) -> PyResult<Bound<'py, PyAny>> {
    to_python(py, &brioschi_analysis(c).map_err(err)?)
}

#[pymodule]
#[pyo3(name = "fcseries")]
fn fcseries_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(fc_number, m)?)?;
    m.add_function(wrap_pyfunction!(fc_number_exact, m)?)?;
    m.add_function(wrap_pyfunction!(genfun, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_roots, m)?)?;
    m.add_function(wrap_pyfunction!(casebook, m)?)?;
    m.add_function(wrap_pyfunction!(brioschi, m)?)?;
    Ok(())
}
