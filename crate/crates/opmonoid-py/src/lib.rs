//! Python bindings for the `opmonoid` crate.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use opmonoid::collapse::{self, SearchConfig, SearchMode};
use opmonoid::{kuratowski, words, DiagramCatalog, EndoMap, Params, Poset, Word};

fn params(m: u32, n: u32) -> PyResult<Params> {
    Params::new(m, n).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Representative of a word in C(m,n).
#[pyfunction]
fn normal_form(m: u32, n: u32, word: &str) -> PyResult<String> {
    let p = params(m, n)?;
    let w: Word = word.parse().map_err(value_err)?;
    Ok(words::normal_form(&w, &p).word().to_string())
}

#[pyfunction]
fn multiply(m: u32, n: u32, a: &str, b: &str) -> PyResult<String> {
    let p = params(m, n)?;
    let x = words::parse_normal_form(a, &p).map_err(value_err)?;
    let y = words::parse_normal_form(b, &p).map_err(value_err)?;
    Ok(words::multiply(x, y, &p).map_err(value_err)?.word().to_string())
}

#[pyfunction]
fn leq(m: u32, n: u32, a: &str, b: &str) -> PyResult<bool> {
    let p = params(m, n)?;
    let x = words::parse_normal_form(a, &p).map_err(value_err)?;
    let y = words::parse_normal_form(b, &p).map_err(value_err)?;
    words::leq(x, y, &p).map_err(value_err)
}

#[pyfunction]
fn wset(m: u32, n: u32) -> PyResult<Vec<String>> {
    Ok(words::wset(&params(m, n)?).iter().map(|f| f.word().to_string()).collect())
}

#[pyfunction]
fn hasse_dot(m: u32, n: u32) -> PyResult<String> {
    Ok(words::hasse(&params(m, n)?).to_dot())
}

/// Number of posets on `n` points up to isomorphism.
#[pyfunction]
fn count_posets(n: usize) -> usize {
    opmonoid::enumerate_posets(n).len()
}

/// Kuratowski label of a closure `c` and interior `i` on the poset with
/// the given covering pairs.
#[pyfunction]
fn classify_kuratowski(n: usize, covers: Vec<(usize, usize)>, c: Vec<usize>, i: Vec<usize>) -> PyResult<String> {
    let p = Poset::from_covers(n, &covers).map_err(value_err)?;
    let c = EndoMap::new(c).map_err(value_err)?;
    let i = EndoMap::new(i).map_err(value_err)?;
    Ok(kuratowski::classify(&p, &c, &i).map_err(value_err)?.name.to_string())
}

/// Collapse search report as JSON.
#[pyfunction]
#[pyo3(signature = (m, n, max_points, exhaustive=false))]
fn search_collapses(m: u32, n: u32, max_points: usize, exhaustive: bool) -> PyResult<String> {
    let p = params(m, n)?;
    if max_points > collapse::MAX_SEARCH_POINTS {
        return Err(PyValueError::new_err("max_points too large"));
    }
    let mode = if exhaustive { SearchMode::Exhaustive } else { SearchMode::Witness };
    let report = collapse::search_collapses(&SearchConfig::new(p, max_points, mode));
    serde_json::to_string(&report).map_err(value_err)
}

/// Critical pairs of a catalog given as JSON `{"nodes": [...], "edges": [[a, b, kind], ...]}`.
#[pyfunction]
fn critical_pairs(catalog_json: &str) -> PyResult<Vec<(String, String)>> {
    let d = DiagramCatalog::from_json(catalog_json).map_err(value_err)?;
    Ok(d.critical_pairs().into_iter().map(|(a, b)| (d.nodes[a].clone(), d.nodes[b].clone())).collect())
}

#[pymodule]
fn opmonoid_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(multiply, m)?)?;
    m.add_function(wrap_pyfunction!(leq, m)?)?;
    m.add_function(wrap_pyfunction!(wset, m)?)?;
    m.add_function(wrap_pyfunction!(hasse_dot, m)?)?;
    m.add_function(wrap_pyfunction!(count_posets, m)?)?;
    m.add_function(wrap_pyfunction!(classify_kuratowski, m)?)?;
    m.add_function(wrap_pyfunction!(search_collapses, m)?)?;
    m.add_function(wrap_pyfunction!(critical_pairs, m)?)?;
    Ok(())
}
