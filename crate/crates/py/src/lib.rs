//! Python module `mixed_moore`: graphs, bounds, constructions, spectra and
//! search.

use std::collections::BTreeMap;

use mixed_moore::bounds::{self, BoundParams};
use mixed_moore::{canon, constructions, io, search, spectral};
use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(mixed_moore, BudgetExceeded, PyException);

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Mixed graph on vertices `0..n` with undirected edges and directed arcs.
#[pyclass(
    name = "MixedGraph",
    module = "mixed_moore",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
pub struct PyMixedGraph {
    inner: mixed_moore::MixedGraph,
}

impl From<mixed_moore::MixedGraph> for PyMixedGraph {
    fn from(inner: mixed_moore::MixedGraph) -> Self {
        PyMixedGraph { inner }
    }
}

#[pymethods]
impl PyMixedGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new(), arcs = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>, arcs: Vec<(usize, usize)>) -> PyResult<Self> {
        mixed_moore::MixedGraph::build(n, &edges, &arcs)
            .map(Self::from)
            .map_err(value_err)
    }

    /// Parse the plain-text graph format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        io::parse(text).map(|p| p.graph.into()).map_err(value_err)
    }

    fn to_text(&self) -> String {
        io::serialize(&self.inner)
    }

    fn to_dot(&self) -> String {
        io::to_dot(&self.inner)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    #[getter]
    fn arcs(&self) -> Vec<(usize, usize)> {
        self.inner.arcs().to_vec()
    }

    /// Directed diameter, `None` when not strongly connected.
    fn diameter(&self) -> Option<usize> {
        self.inner.diameter()
    }

    /// `(r, z)` when totally regular.
    fn total_regularity(&self) -> Option<(usize, usize)> {
        self.inner.total_regularity()
    }

    fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        self.inner.bipartition()
    }

    fn girth(&self) -> Option<usize> {
        self.inner.girth_underlying()
    }

    fn shortest_path_count(&self, u: usize, v: usize) -> PyResult<u128> {
        self.inner.shortest_path_count(u, v).map_err(value_err)
    }

    fn converse(&self) -> Self {
        self.inner.converse().into()
    }

    /// Relabel by `perm[old] = new`.
    fn relabel(&self, perm: Vec<usize>) -> PyResult<Self> {
        let mut seen = vec![false; self.inner.order()];
        if perm.len() != seen.len()
            || perm
                .iter()
                .any(|&p| p >= seen.len() || std::mem::replace(&mut seen[p], true))
        {
            return Err(PyValueError::new_err(
                "perm must be a permutation of range(order)",
            ));
        }
        Ok(self.inner.relabel(&perm).into())
    }

    /// Characteristic polynomial coefficients, constant term first.
    fn char_poly(&self) -> Vec<BigInt> {
        spectral::graph_char_poly(&self.inner).coeffs().to_vec()
    }

    /// Hex string of the canonical form.
    fn canonical_form(&self) -> String {
        canon::canonical_form(&self.inner).to_hex()
    }

    fn is_isomorphic(&self, other: &PyMixedGraph) -> bool {
        canon::is_isomorphic(&self.inner, &other.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "MixedGraph(n={}, edges={}, arcs={})",
            self.inner.order(),
            self.inner.edges().len(),
            self.inner.arcs().len()
        )
    }
}

fn params(r: u32, z: u32, k: u32) -> PyResult<BoundParams> {
    BoundParams::new(r, z, k).map_err(value_err)
}

#[pyfunction]
fn mixed_moore_bound(r: u32, z: u32, k: u32) -> PyResult<i128> {
    bounds::mixed_moore_bound(params(r, z, k)?)
        .map(|b| b.value)
        .map_err(value_err)
}

#[pyfunction]
fn bipartite_mixed_moore_bound(r: u32, z: u32, k: u32) -> PyResult<i128> {
    bounds::bipartite_mixed_moore_bound(params(r, z, k)?)
        .map(|b| b.value)
        .map_err(value_err)
}

/// `{(d, k): [c0, c1, ...]}`, the bound as a polynomial in `z`.
#[pyfunction]
fn bounds_table(dmax: u32, kmax: u32) -> PyResult<BTreeMap<(u32, u32), Vec<i128>>> {
    let t = bounds::bounds_table(dmax, kmax).map_err(value_err)?;
    Ok(t.cells
        .iter()
        .map(|c| ((c.d, c.k), c.poly.0.clone()))
        .collect())
}

#[pyfunction]
fn complete_bipartite(d: usize) -> PyResult<PyMixedGraph> {
    constructions::complete_bipartite(d)
        .map(Into::into)
        .map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (n, directed = false))]
fn cycle(n: usize, directed: bool) -> PyResult<PyMixedGraph> {
    constructions::cycle(n, directed)
        .map(Into::into)
        .map_err(value_err)
}

#[pyfunction]
fn line_digraph(g: &PyMixedGraph) -> PyResult<PyMixedGraph> {
    constructions::line_digraph(&g.inner)
        .map(|(l, _)| l.into())
        .map_err(value_err)
}

#[pyfunction]
fn projective_plane_incidence(q: u32) -> PyResult<PyMixedGraph> {
    constructions::projective_plane_incidence(q)
        .map(Into::into)
        .map_err(value_err)
}

#[pyfunction]
fn tutte_coxeter() -> PyMixedGraph {
    constructions::tutte_coxeter().into()
}

#[pyfunction]
fn moore_mixed_k3(d: usize) -> PyResult<PyMixedGraph> {
    constructions::moore_mixed_k3(d)
        .map(Into::into)
        .map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (k, q = None))]
fn dense_family(k: u32, q: Option<u32>) -> PyResult<PyMixedGraph> {
    constructions::dense_family(k, q)
        .map(Into::into)
        .map_err(value_err)
}

#[pyfunction]
fn fig2a() -> PyMixedGraph {
    constructions::fig2a().into()
}

#[pyfunction]
fn verify_spectrum_k3(g: &PyMixedGraph) -> PyResult<bool> {
    spectral::verify_spectrum_k3(&g.inner).map_err(value_err)
}

#[pyfunction]
fn hoffman_identity(g: &PyMixedGraph) -> PyResult<bool> {
    spectral::hoffman_identity(&g.inner).map_err(value_err)
}

#[pyfunction]
fn cospectral(g: &PyMixedGraph, h: &PyMixedGraph) -> PyResult<bool> {
    spectral::cospectral(&g.inner, &h.inner).map_err(value_err)
}

/// Result of an enumeration.
#[pyclass(name = "SearchCertificate", module = "mixed_moore", frozen)]
pub struct PyCertificate {
    inner: search::SearchCertificate,
}

#[pymethods]
impl PyCertificate {
    #[getter]
    fn count(&self) -> usize {
        self.inner.count()
    }

    #[getter]
    fn representatives(&self) -> Vec<PyMixedGraph> {
        self.inner
            .representatives
            .iter()
            .cloned()
            .map(Into::into)
            .collect()
    }

    #[getter]
    fn converse(&self) -> Vec<usize> {
        self.inner.converse.clone()
    }

    /// `(nodes, prunes, leaves)`
    #[getter]
    fn stats(&self) -> (u64, u64, u64) {
        let s = self.inner.stats;
        (s.nodes, s.prunes, s.leaves)
    }

    fn to_text(&self) -> String {
        io::write_certificate(&self.inner)
    }

    fn __repr__(&self) -> String {
        let s = &self.inner.spec;
        format!(
            "SearchCertificate(r={}, z={}, k={}, n={}, count={})",
            s.r,
            s.z,
            s.k,
            s.n,
            self.inner.count()
        )
    }
}

fn search_err(e: search::SearchError) -> PyErr {
    match e {
        search::SearchError::BudgetExceeded(_) => BudgetExceeded::new_err(e.to_string()),
        search::SearchError::InvalidSpec(_) => value_err(e),
    }
}

fn options(max_order: usize, threads: Option<usize>) -> search::SearchOptions {
    search::SearchOptions {
        max_order,
        threads,
        ..search::SearchOptions::default()
    }
}

#[pyfunction]
#[pyo3(signature = (r, z, k, n, max_order = 14, threads = None))]
fn enumerate(
    py: Python<'_>,
    r: usize,
    z: usize,
    k: usize,
    n: usize,
    max_order: usize,
    threads: Option<usize>,
) -> PyResult<PyCertificate> {
    let spec = search::SearchSpec::count_all(r, z, k, n);
    let opts = options(max_order, threads);
    py.detach(|| search::enumerate(spec, &opts))
        .map(|inner| PyCertificate { inner })
        .map_err(search_err)
}

#[pyfunction]
#[pyo3(signature = (r, z, k, max_order = 14, threads = None))]
fn find_almost_moore(
    py: Python<'_>,
    r: usize,
    z: usize,
    k: usize,
    max_order: usize,
    threads: Option<usize>,
) -> PyResult<PyCertificate> {
    let opts = options(max_order, threads);
    py.detach(|| search::find_almost_moore(r, z, k, &opts))
        .map(|inner| PyCertificate { inner })
        .map_err(search_err)
}

#[pymodule(name = "mixed_moore")]
fn mixed_moore_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMixedGraph>()?;
    m.add_class::<PyCertificate>()?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_function(wrap_pyfunction!(mixed_moore_bound, m)?)?;
    m.add_function(wrap_pyfunction!(bipartite_mixed_moore_bound, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_table, m)?)?;
    m.add_function(wrap_pyfunction!(complete_bipartite, m)?)?;
    m.add_function(wrap_pyfunction!(cycle, m)?)?;
    m.add_function(wrap_pyfunction!(line_digraph, m)?)?;
    m.add_function(wrap_pyfunction!(projective_plane_incidence, m)?)?;
    m.add_function(wrap_pyfunction!(tutte_coxeter, m)?)?;
    m.add_function(wrap_pyfunction!(moore_mixed_k3, m)?)?;
    m.add_function(wrap_pyfunction!(dense_family, m)?)?;
    m.add_function(wrap_pyfunction!(fig2a, m)?)?;
    m.add_function(wrap_pyfunction!(verify_spectrum_k3, m)?)?;
    m.add_function(wrap_pyfunction!(hoffman_identity, m)?)?;
    m.add_function(wrap_pyfunction!(cospectral, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(find_almost_moore, m)?)?;
    Ok(())
}
