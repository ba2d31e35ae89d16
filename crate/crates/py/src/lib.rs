//! Python bindings. Structured reports cross the boundary as JSON and are decoded with the
//! standard `json` module, so they match the CLI's `--json` output field for field.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use homtop::dichotomy::{self, CrossOptions};
use homtop::graph::{self as graph_core, GraphFormat};
use homtop::mhom::{self as mhom_core, DEFAULT_MAX_ELEMENTS};
use homtop::polysearch::{self as poly_core, SearchOptions};
use homtop::poset as poset_core;
use homtop::topology::{self, VerdictOptions, DEFAULT_FACE_BUDGET};

fn err(e: homtop::Error) -> PyErr {
    if e.is_budget() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "Graph", module = "homtop_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph(graph_core::Graph);

#[pymethods]
impl PyGraph {
    /// Parses an edge list (one `u v` pair per line) or, with `format="graph6"`, a graph6 string.
    #[new]
    #[pyo3(signature = (text, format = "edge-list"))]
    fn new(text: &str, format: &str) -> PyResult<Self> {
        let format = match format {
            "edge-list" => GraphFormat::EdgeList,
            "graph6" => GraphFormat::Graph6,
            other => return Err(PyValueError::new_err(format!("unknown format {other:?}"))),
        };
        graph_core::parse_graph(text, format).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        graph_core::Graph::from_edges(n, &edges).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph(graph_core::Graph::complete(n))
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        PyGraph(graph_core::Graph::cycle(n))
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        PyGraph(graph_core::Graph::path(n))
    }

    #[staticmethod]
    fn loop_vertex() -> Self {
        PyGraph(graph_core::Graph::loop_vertex())
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges()
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        u < self.0.n() && v < self.0.n() && self.0.adjacent(u, v)
    }

    fn has_loop(&self) -> bool {
        self.0.has_loop().is_some()
    }

    fn is_bipartite(&self) -> bool {
        graph_core::is_bipartite(&self.0).is_partition()
    }

    /// graph6 when loopless, `n:u-v,...` otherwise.
    fn key(&self) -> String {
        dichotomy::graph_key(&self.0)
    }

    #[pyo3(signature = (max_vertices = graph_core::DEFAULT_CORE_MAX_VERTICES))]
    fn core(&self, max_vertices: usize) -> PyResult<PyGraph> {
        graph_core::compute_core(&self.0, max_vertices).map(|c| PyGraph(c.core)).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    fn __eq__(&self, other: &PyGraph) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Graph({:?})", dichotomy::graph_key(&self.0))
    }
}

#[pyclass(name = "IdentitySystem", module = "homtop_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyIdentitySystem(poly_core::IdentitySystem);

#[pymethods]
impl PyIdentitySystem {
    /// A preset name (`siggers4`, `siggers6-paper`, `siggers6-corrected`) or inline JSON.
    #[new]
    fn new(name_or_json: &str) -> PyResult<Self> {
        name_or_json.parse().map(PyIdentitySystem).map_err(err)
    }

    #[staticmethod]
    fn presets() -> Vec<&'static str> {
        poly_core::PRESETS.to_vec()
    }

    #[getter]
    fn arity(&self) -> usize {
        self.0.arity
    }

    #[getter]
    fn idempotent(&self) -> bool {
        self.0.idempotent
    }

    fn with_idempotent(&self, idempotent: bool) -> PyResult<Self> {
        self.0.clone().with_idempotent(idempotent).map(PyIdentitySystem).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("IdentitySystem({:?})", self.0.to_string())
    }
}

#[pyclass(name = "Polymorphism", module = "homtop_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPolymorphism(poly_core::PolymorphismTable);

#[pymethods]
impl PyPolymorphism {
    #[new]
    fn new(graph: &PyGraph, arity: usize, table: Vec<usize>) -> PyResult<Self> {
        poly_core::PolymorphismTable::new(graph.0.clone(), arity, table).map(PyPolymorphism).map_err(err)
    }

    #[getter]
    fn arity(&self) -> usize {
        self.0.arity
    }

    #[getter]
    fn table(&self) -> Vec<usize> {
        self.0.table.clone()
    }

    fn __call__(&self, args: Vec<usize>) -> PyResult<usize> {
        if args.len() != self.0.arity || args.iter().any(|&v| v >= self.0.graph.n()) {
            return Err(PyValueError::new_err("arguments must be arity-many vertices"));
        }
        Ok(self.0.eval(&args))
    }

    /// `None` when the table is a polymorphism satisfying `system`, else a counterexample.
    fn verify(&self, py: Python<'_>, system: &PyIdentitySystem) -> PyResult<Option<Py<PyAny>>> {
        match poly_core::verify_polymorphism(&self.0.graph, &self.0, &system.0) {
            Ok(()) => Ok(None),
            Err(c) => to_py(py, &c).map(Some),
        }
    }

    /// Per-coordinate patterns and binary tables derived from the identities.
    fn taylor_witness(&self, py: Python<'_>, system: &PyIdentitySystem) -> PyResult<Py<PyAny>> {
        let d = poly_core::derive_taylor_witness(&system.0, &self.0).map_err(err)?;
        to_py(py, &d)
    }
}

#[pyclass(name = "SearchResult", module = "homtop_py", frozen)]
struct PySearchResult(poly_core::SearchOutcome);

#[pymethods]
impl PySearchResult {
    /// `SAT`, `UNSAT` or `TIMEOUT`.
    #[getter]
    fn status(&self) -> &'static str {
        match self.0.status {
            poly_core::SearchStatus::Sat => "SAT",
            poly_core::SearchStatus::Unsat => "UNSAT",
            poly_core::SearchStatus::Timeout => "TIMEOUT",
        }
    }

    #[getter]
    fn polymorphism(&self) -> Option<PyPolymorphism> {
        self.0.table.clone().map(PyPolymorphism)
    }

    #[getter]
    fn stats(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.0.stats)
    }

    fn __repr__(&self) -> String {
        format!("SearchResult({}, nodes={})", self.status(), self.0.stats.nodes)
    }
}

#[pyclass(name = "Mhom", module = "homtop_py", frozen)]
struct PyMhom(mhom_core::MhomPoset);

#[pymethods]
impl PyMhom {
    #[new]
    #[pyo3(signature = (g, h, max_elements = DEFAULT_MAX_ELEMENTS))]
    fn new(g: &PyGraph, h: &PyGraph, max_elements: usize) -> PyResult<Self> {
        mhom_core::build_mhom(&g.0, &h.0, max_elements).map(PyMhom).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    /// Elements as lists of vertex sets, one per source vertex.
    fn elements(&self) -> Vec<Vec<Vec<usize>>> {
        self.0.elements.iter().map(|m| m.sets()).collect()
    }

    fn leq(&self, a: usize, b: usize) -> PyResult<bool> {
        if a >= self.0.len() || b >= self.0.len() {
            return Err(PyValueError::new_err("element index out of range"));
        }
        Ok(self.0.poset.leq(a, b))
    }

    fn covers(&self) -> Vec<(usize, usize)> {
        self.0.poset.cover_pairs()
    }

    /// Image of each element under the flip; needs a 2-vertex source.
    fn flip(&self) -> PyResult<Vec<usize>> {
        mhom_core::flip_map(&self.0).map(|f| f.map.values).map_err(err)
    }

    fn edge_flip_witness(&self, py: Python<'_>) -> PyResult<Option<Py<PyAny>>> {
        mhom_core::edge_flip_witness_in(&self.0).map(|w| to_py(py, &w)).transpose()
    }

    /// Betti numbers of the order complex up to its top dimension.
    #[pyo3(signature = (max_faces = DEFAULT_FACE_BUDGET))]
    fn betti(&self, max_faces: usize) -> PyResult<Vec<usize>> {
        let c = topology::order_complex(&self.0.poset, None, max_faces).map_err(err)?;
        Ok(topology::homology(&c, c.max_dim().unwrap_or(0)).iter().map(|g| g.betti).collect())
    }

    /// Lefschetz number of the flip.
    #[pyo3(signature = (max_faces = DEFAULT_FACE_BUDGET))]
    fn flip_lefschetz(&self, max_faces: usize) -> PyResult<i64> {
        let c = topology::order_complex(&self.0.poset, None, max_faces).map_err(err)?;
        let f = mhom_core::flip_map(&self.0).map_err(err)?;
        topology::lefschetz_number(&c, &f.map.values).map_err(err)
    }

    /// Contractibility verdict per connected component.
    fn components(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &topology::contractibility_verdict(&self.0.poset, &VerdictOptions::default()))
    }

    fn dump(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.0.dump())
    }

    /// Checks the sub-Taylor conditions for the operations induced by `witness`, given as the
    /// polymorphism it is derived from.
    #[pyo3(signature = (polymorphism, system, budget = 100_000, seed = 0))]
    fn verify_sub_taylor(
        &self,
        py: Python<'_>,
        polymorphism: &PyPolymorphism,
        system: &PyIdentitySystem,
        budget: usize,
        seed: u64,
    ) -> PyResult<Py<PyAny>> {
        let d = poly_core::derive_taylor_witness(&system.0, &polymorphism.0).map_err(err)?;
        let Some(w) = d.witness else {
            return Err(PyValueError::new_err(format!(
                "identities do not separate coordinates {:?}",
                d.failed_coordinates
            )));
        };
        let r = mhom_core::verify_sub_taylor(&w, &self.0, budget, seed).map_err(err)?;
        to_py(py, &r)
    }
}

#[pyclass(name = "Poset", module = "homtop_py", frozen)]
struct PyPoset(poset_core::Poset);

#[pymethods]
impl PyPoset {
    /// Poset on `0..k` generated by the strict relations `a < b`.
    #[new]
    fn new(k: usize, relations: Vec<(usize, usize)>) -> PyResult<Self> {
        poset_core::Poset::from_strict_relations(k, &relations).map(PyPoset).map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        poset_core::parse_poset(text).map(PyPoset).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn leq(&self, a: usize, b: usize) -> PyResult<bool> {
        if a >= self.0.len() || b >= self.0.len() {
            return Err(PyValueError::new_err("element index out of range"));
        }
        Ok(self.0.leq(a, b))
    }

    /// Removed elements and the residual's size; the residual is returned as a new poset.
    fn dismantle(&self, py: Python<'_>) -> PyResult<(Py<PyAny>, PyPoset)> {
        let t = poset_core::dismantle(&self.0);
        Ok((to_py(py, &t.removed)?, PyPoset(t.residual)))
    }

    #[pyo3(signature = (max_size = 6))]
    fn ramified(&self, py: Python<'_>, max_size: usize) -> PyResult<Py<PyAny>> {
        to_py(py, &poset_core::is_ramified_certified(&self.0, max_size).map_err(err)?)
    }

    #[pyo3(signature = (max_faces = DEFAULT_FACE_BUDGET))]
    fn homology(&self, py: Python<'_>, max_faces: usize) -> PyResult<Py<PyAny>> {
        let c = topology::order_complex(&self.0, None, max_faces).map_err(err)?;
        to_py(py, &topology::homology(&c, c.max_dim().unwrap_or(0)))
    }

    fn components(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &topology::contractibility_verdict(&self.0, &VerdictOptions::default()))
    }
}

/// `"P"` or `"NP-complete"`, with the reason, as a dict.
#[pyfunction]
fn classify(py: Python<'_>, graph: &PyGraph) -> PyResult<Py<PyAny>> {
    to_py(py, &dichotomy::classify(&graph.0))
}

#[pyfunction]
#[pyo3(signature = (graph, system = None, seed = 0, time_ms = Some(60_000), max_nodes = None))]
fn search(
    graph: &PyGraph,
    system: Option<&PyIdentitySystem>,
    seed: u64,
    time_ms: Option<u64>,
    max_nodes: Option<u64>,
) -> PyResult<PySearchResult> {
    let sys = system.map_or_else(poly_core::IdentitySystem::siggers4, |s| s.0.clone());
    let opts = SearchOptions {
        seed,
        time_ms,
        max_nodes,
        ..SearchOptions::default()
    };
    poly_core::search_polymorphism(&graph.0, &sys, &opts).map(PySearchResult).map_err(err)
}

/// Classification checked against core search, mhom topology and the flip.
#[pyfunction]
#[pyo3(signature = (graph, system = None, seed = 0, time_ms = Some(60_000)))]
fn cross_validate(
    py: Python<'_>,
    graph: &PyGraph,
    system: Option<&PyIdentitySystem>,
    seed: u64,
    time_ms: Option<u64>,
) -> PyResult<Py<PyAny>> {
    let mut opts = CrossOptions::default();
    if let Some(s) = system {
        opts.identity = s.0.clone();
    }
    opts.search.seed = seed;
    opts.search.time_ms = time_ms;
    let report = py.detach(|| dichotomy::cross_validate(&graph.0, &opts));
    to_py(py, &report)
}

/// Every graph on exactly `n` vertices, one per isomorphism class.
#[pyfunction]
#[pyo3(signature = (n, connected = false))]
fn all_graphs(n: usize, connected: bool) -> Vec<PyGraph> {
    graph_core::all_graphs(n, connected).into_iter().map(PyGraph).collect()
}

#[pymodule]
fn homtop_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyIdentitySystem>()?;
    m.add_class::<PyPolymorphism>()?;
    m.add_class::<PySearchResult>()?;
    m.add_class::<PyMhom>()?;
    m.add_class::<PyPoset>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(cross_validate, m)?)?;
    m.add_function(wrap_pyfunction!(all_graphs, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
