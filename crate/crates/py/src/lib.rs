//! Python bindings: recipes in, plain Python values out.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use saxl_core::recipe::{self, EvalOptions, Evaluated};
use saxl_core::report::{self, Analyses, RunOptions};
use saxl_core::{bases, prob, saxl as sx, suites, Error};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } | Error::Invalid(_) => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn eval(recipe: &str) -> PyResult<Evaluated> {
    recipe::evaluate(recipe, &EvalOptions::default()).map_err(to_py)
}

/// Degree and order (as a decimal string) of the group a recipe builds.
#[pyfunction]
fn describe(recipe: &str) -> PyResult<(usize, String)> {
    let e = eval(recipe)?;
    Ok((e.group.degree(), e.group.order().to_string()))
}

/// Minimal base size and a witness base.
#[pyfunction]
fn base_size(recipe: &str) -> PyResult<(usize, Vec<usize>)> {
    let r = bases::base_size(&eval(recipe)?.group);
    Ok((r.b, r.witness))
}

/// Edges (u, v, orbital id) of the Saxl graph.
#[pyfunction]
fn saxl_edges(recipe: &str) -> PyResult<Vec<(usize, usize, usize)>> {
    let g = eval(recipe)?.group;
    Ok(sx::saxl_graph(&g).map_err(to_py)?.edges())
}

/// Exact Q(G,k) as "num/den".
#[pyfunction]
fn q_exact(recipe: &str, k: usize) -> PyResult<String> {
    let g = eval(recipe)?.group;
    Ok(prob::rational_string(&prob::q_exact(&g, k).map_err(to_py)?))
}

/// Full JSON report, as produced by `saxl run --all`.
#[pyfunction]
#[pyo3(signature = (recipe, seed = 1))]
fn report_json(recipe: &str, seed: u64) -> PyResult<String> {
    let e = eval(recipe)?;
    let opts = RunOptions { seed, ..Default::default() };
    Ok(report::run(&e, &Analyses::all(), &opts).to_json())
}

/// Rows (case, expected, computed, matches) of a bundled table.
#[pyfunction]
fn reproduce_table(name: &str) -> PyResult<Vec<(String, String, String, bool)>> {
    let rows = suites::reproduce(name, &EvalOptions::default()).map_err(to_py)?;
    Ok(rows.into_iter().map(|r| (r.case, r.expected, r.computed, r.matches)).collect())
}

#[pymodule]
fn saxl(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(describe, m)?)?;
    m.add_function(wrap_pyfunction!(base_size, m)?)?;
    m.add_function(wrap_pyfunction!(saxl_edges, m)?)?;
    m.add_function(wrap_pyfunction!(q_exact, m)?)?;
    m.add_function(wrap_pyfunction!(report_json, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce_table, m)?)?;
    Ok(())
}
