//! Python bindings. Every call goes through the command line front end with JSON output,
//! so the Python side sees exactly what `pqb --format json` prints.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;

/// Runs `pqb` with the given arguments; returns (exit status, stdout, stderr).
#[pyfunction]
fn cli(args: Vec<String>) -> (i32, String, String) {
    let mut v = vec!["pqb".to_string()];
    v.extend(args);
    pqb_core::cli::run(v)
}

fn json_call(py: Python<'_>, args: Vec<String>) -> PyResult<Py<PyAny>> {
    let mut v = vec!["--format".to_string(), "json".to_string()];
    v.extend(args);
    let (code, out, err) = cli(v);
    match code {
        0 | 1 if !out.is_empty() => {
            let json = PyModule::import(py, "json")?;
            Ok(json.call_method1("loads", (out,))?.unbind())
        }
        2 => Err(PyValueError::new_err(err.trim().to_string())),
        _ => Err(PyRuntimeError::new_err(err.trim().to_string())),
    }
}

#[pyfunction]
fn hom_dim(m: usize, s: usize) -> usize {
    pqb_core::tanglecat::hom_basis(m, s).len()
}

#[pyfunction]
#[pyo3(signature = (word, source=None))]
fn normal_form(py: Python<'_>, word: String, source: Option<usize>) -> PyResult<Py<PyAny>> {
    let mut args = vec!["normal-form".to_string(), word];
    if let Some(m) = source {
        args.extend(["--source".to_string(), m.to_string()]);
    }
    json_call(py, args)
}

#[pyfunction]
fn mult(py: Python<'_>, l: usize, a: String, b: String) -> PyResult<Py<PyAny>> {
    json_call(py, vec!["mult".into(), "-l".into(), l.to_string(), a, b])
}

#[pyfunction]
#[pyo3(signature = (l, lam, gen=String::new()))]
fn module(py: Python<'_>, l: usize, lam: String, gen: String) -> PyResult<Py<PyAny>> {
    let args = ["module", "-l", &l.to_string(), "--lambda", &lam, "--gen", &gen];
    json_call(py, args.iter().map(|s| s.to_string()).collect())
}

#[pyfunction]
#[pyo3(signature = (l, lam=None))]
fn gram(py: Python<'_>, l: usize, lam: Option<String>) -> PyResult<Py<PyAny>> {
    let mut args = vec!["gram".to_string(), "-l".into(), l.to_string()];
    if let Some(x) = lam {
        args.extend(["--lambda".to_string(), x]);
    }
    json_call(py, args)
}

#[pyfunction]
fn blocks(py: Python<'_>, l: usize) -> PyResult<Py<PyAny>> {
    json_call(py, vec!["blocks".into(), "-l".into(), l.to_string()])
}

#[pyfunction]
#[pyo3(signature = (l, n=4, seed=1, only=None))]
fn verify(py: Python<'_>, l: usize, n: usize, seed: u64, only: Option<String>) -> PyResult<Py<PyAny>> {
    let mut args = vec!["verify".to_string(), "-l".into(), l.to_string(), "-n".into(), n.to_string()];
    args.extend(["--seed".to_string(), seed.to_string()]);
    if let Some(p) = only {
        args.extend(["--only".to_string(), p]);
    }
    json_call(py, args)
}

#[pymodule]
fn pqbrauer(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(cli, m)?)?;
    m.add_function(wrap_pyfunction!(hom_dim, m)?)?;
    m.add_function(wrap_pyfunction!(normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(mult, m)?)?;
    m.add_function(wrap_pyfunction!(module, m)?)?;
    m.add_function(wrap_pyfunction!(gram, m)?)?;
    m.add_function(wrap_pyfunction!(blocks, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
