//! Python bindings. Structured results cross the boundary as JSON and are decoded with
//! the standard `json` module.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rootfacet_core::ideals::{facet_ideal, facet_ideals, facet_json};
use rootfacet_core::triangulate::{maximal_reduced_subsets, simplex_det, verify_triangulation, VerifyOptions};
use rootfacet_core::weyl::{boundary_inventory as inventory, fundamental_coweight, orbit_size as orbit};
use rootfacet_core::{Error, FacetIdeal, RootSystem};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn system(name: &str) -> PyResult<RootSystem> {
    RootSystem::parse(name).map_err(err)
}

/// `alpha` is 1-based.
fn facet(rs: &RootSystem, alpha: usize) -> PyResult<FacetIdeal> {
    if alpha == 0 {
        return Err(PyValueError::new_err("alpha is 1-based"));
    }
    facet_ideal(rs, alpha - 1).map_err(err)
}

fn decode<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

/// Positive roots as coefficient lists over the simple roots.
#[pyfunction]
fn positive_roots(name: &str) -> PyResult<Vec<Vec<i64>>> {
    Ok(system(name)?.positive_roots().iter().map(|r| r.coeffs().to_vec()).collect())
}

#[pyfunction]
fn facets<'py>(py: Python<'py>, name: &str) -> PyResult<Bound<'py, PyAny>> {
    let rs = system(name)?;
    let fs = facet_ideals(&rs).map_err(err)?;
    decode(py, &serde_json::Value::Array(fs.iter().map(|f| facet_json(&rs, f)).collect()))
}

/// The maximal reduced subsets of the facet ideal at `alpha`, as lists of roots.
#[pyfunction]
fn triangulate(name: &str, alpha: usize) -> PyResult<Vec<Vec<Vec<i64>>>> {
    let rs = system(name)?;
    let f = facet(&rs, alpha)?;
    let sets = maximal_reduced_subsets(&rs, &f).map_err(err)?;
    Ok(sets.iter().map(|r| r.members.iter().map(|&i| rs.coeffs(i).to_vec()).collect()).collect())
}

#[pyfunction]
fn simplex_dets(name: &str, alpha: usize) -> PyResult<Vec<i64>> {
    let rs = system(name)?;
    let f = facet(&rs, alpha)?;
    let sets = maximal_reduced_subsets(&rs, &f).map_err(err)?;
    sets.iter().map(|r| simplex_det(&rs, &f, &r.members).map_err(err)).collect()
}

#[pyfunction]
#[pyo3(signature = (name, alpha, max_pairs = 10_000, check_order = true))]
fn verify<'py>(
    py: Python<'py>,
    name: &str,
    alpha: usize,
    max_pairs: usize,
    check_order: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let rs = system(name)?;
    let f = facet(&rs, alpha)?;
    let opts = VerifyOptions { max_pairs, check_order, ..Default::default() };
    let rep = py.detach(|| verify_triangulation(&rs, &f, &opts)).map_err(err)?;
    decode(py, &rep.json())
}

/// Size of the Weyl orbit of the fundamental coweight at `alpha` (1-based).
#[pyfunction]
fn orbit_size(name: &str, alpha: usize) -> PyResult<usize> {
    let rs = system(name)?;
    if alpha == 0 || alpha > rs.rank() {
        return Err(PyValueError::new_err(format!("alpha must lie in 1..={}", rs.rank())));
    }
    orbit(&rs, &fundamental_coweight(&rs, alpha - 1)).map_err(err)
}

#[pyfunction]
fn boundary_inventory<'py>(py: Python<'py>, name: &str) -> PyResult<Bound<'py, PyAny>> {
    let rs = system(name)?;
    let inv = py.detach(|| inventory(&rs)).map_err(err)?;
    decode(py, &serde_json::to_value(&inv).map_err(|e| PyValueError::new_err(e.to_string()))?)
}

#[pymodule]
fn rootfacet(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(positive_roots, m)?)?;
    m.add_function(wrap_pyfunction!(facets, m)?)?;
    m.add_function(wrap_pyfunction!(triangulate, m)?)?;
    m.add_function(wrap_pyfunction!(simplex_dets, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_size, m)?)?;
    m.add_function(wrap_pyfunction!(boundary_inventory, m)?)?;
    Ok(())
}
