//! Python bindings: graphs, refinement verdicts, certificates, exact
//! distances, Furer pairs and pebble games. Vertices are 0-based here; edge
//! list text stays 1-based.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyBytes;

use lab::furer::{make_pair, FurerGraph};
use lab::gdwl::{DistValue, DistanceKind};
use lab::pebble::{GameSpec, Winner};
use lab::{AlgorithmSpec, Error};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn algorithm(name: &str, max_rounds: Option<usize>) -> PyResult<AlgorithmSpec> {
    let spec: AlgorithmSpec = name.parse().map_err(py_err)?;
    Ok(match max_rounds {
        Some(cap) => spec.with_max_rounds(cap),
        None => spec,
    })
}

/// Simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "wl_lab", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGraph {
    inner: lab::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: lab::Graph::new(n, &edges).map_err(py_err)? })
    }

    /// Parses `n m` followed by `m` lines of 1-based `u v`.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: lab::Graph::parse_edge_list(text).map_err(py_err)? })
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn is_connected(&self) -> PyResult<bool> {
        self.inner.is_connected().map_err(py_err)
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    fn permute(&self, perm: Vec<usize>) -> PyResult<Self> {
        let p = lab::VertexPermutation::new(perm).map_err(py_err)?;
        Ok(PyGraph { inner: self.inner.permute(&p).map_err(py_err)? })
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }
}

/// Outcome of one joint refinement of two graphs.
#[pyclass(name = "Verdict", module = "wl_lab", frozen, get_all)]
struct PyVerdict {
    distinguishes: bool,
    rounds: usize,
    stable: bool,
    /// Joint number of color classes after each round, from round 0.
    class_counts: Vec<usize>,
}

#[pymethods]
impl PyVerdict {
    fn __bool__(&self) -> bool {
        self.distinguishes
    }

    fn __repr__(&self) -> String {
        format!("Verdict(distinguishes={}, rounds={})", if self.distinguishes { "True" } else { "False" }, self.rounds)
    }
}

/// Every built-in algorithm name.
#[pyfunction]
fn algorithms() -> Vec<&'static str> {
    lab::algorithm::NAMES.to_vec()
}

/// Refines `g` and `h` jointly with `alg` and reports whether they separate.
#[pyfunction]
#[pyo3(signature = (alg, g, h, max_rounds=None))]
fn distinguish(py: Python<'_>, alg: &str, g: &PyGraph, h: &PyGraph, max_rounds: Option<usize>) -> PyResult<PyVerdict> {
    let spec = algorithm(alg, max_rounds)?;
    let v = py.detach(|| spec.distinguish(&g.inner, &h.inner)).map_err(py_err)?;
    Ok(PyVerdict { distinguishes: v.distinguishes, rounds: v.rounds, stable: v.stable, class_counts: v.class_counts })
}

/// Isomorphism-invariant certificate bytes of `g` under `alg`.
#[pyfunction]
fn certificate<'py>(py: Python<'py>, alg: &str, g: &PyGraph) -> PyResult<Bound<'py, PyBytes>> {
    let spec = algorithm(alg, None)?;
    let cert = py.detach(|| spec.certificate(&g.inner)).map_err(py_err)?;
    Ok(PyBytes::new(py, cert.bytes()))
}

/// Hex digest of the certificate.
#[pyfunction]
fn certificate_digest(py: Python<'_>, alg: &str, g: &PyGraph) -> PyResult<String> {
    let spec = algorithm(alg, None)?;
    let cert = py.detach(|| spec.certificate(&g.inner)).map_err(py_err)?;
    Ok(cert.digest())
}

/// Exact distance matrix as `fractions.Fraction`, with `inf` between components.
#[pyfunction]
fn distances(py: Python<'_>, g: &PyGraph, kind: &str) -> PyResult<Vec<Vec<Py<PyAny>>>> {
    let kind: DistanceKind = kind.parse().map_err(py_err)?;
    let d = py.detach(|| lab::gdwl::distances(&g.inner, kind)).map_err(py_err)?;
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    let n = g.inner.n();
    let mut rows = Vec::with_capacity(n);
    for chunk in d.chunks(n.max(1)) {
        let row = chunk
            .iter()
            .map(|x| match x {
                DistValue::Finite(r) => Ok(fraction.call1((r.to_string(),))?.unbind()),
                DistValue::Infinite => Ok(f64::INFINITY.into_pyobject(py)?.into_any().unbind()),
            })
            .collect::<PyResult<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Furer graph of `base` twisted on the given base edges, optionally with
/// the vertex-identifying chains attached.
#[pyfunction]
#[pyo3(signature = (base, twists=Vec::new(), augment=false))]
fn furer_graph(base: &PyGraph, twists: Vec<(usize, usize)>, augment: bool) -> PyResult<PyGraph> {
    let fg = FurerGraph::with_twists(&base.inner, &twists).map_err(py_err)?;
    let inner = if augment { fg.augment() } else { fg.graph().clone() };
    Ok(PyGraph { inner })
}

/// Augmented Furer graphs of `base` and of its twist on the smallest edge.
#[pyfunction]
fn furer_pair(base: &PyGraph) -> PyResult<(PyGraph, PyGraph)> {
    let (g, h) = make_pair(&base.inner).map_err(py_err)?;
    Ok((PyGraph { inner: g }, PyGraph { inner: h }))
}

/// Winner of the pebble game of `alg` on `g` and `h`: "spoiler" or "duplicator".
#[pyfunction]
fn pebble_winner(py: Python<'_>, alg: &str, g: &PyGraph, h: &PyGraph) -> PyResult<&'static str> {
    let spec = GameSpec::from_algorithm(&algorithm(alg, None)?).map_err(py_err)?;
    let sol = py.detach(|| lab::pebble::solve(&g.inner, &h.inner, &spec)).map_err(py_err)?;
    Ok(match sol.winner {
        Winner::Spoiler => "spoiler",
        Winner::Duplicator => "duplicator",
    })
}

#[pymodule]
fn wl_lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(algorithms, m)?)?;
    m.add_function(wrap_pyfunction!(distinguish, m)?)?;
    m.add_function(wrap_pyfunction!(certificate, m)?)?;
    m.add_function(wrap_pyfunction!(certificate_digest, m)?)?;
    m.add_function(wrap_pyfunction!(distances, m)?)?;
    m.add_function(wrap_pyfunction!(furer_graph, m)?)?;
    m.add_function(wrap_pyfunction!(furer_pair, m)?)?;
    m.add_function(wrap_pyfunction!(pebble_winner, m)?)?;
    Ok(())
}
