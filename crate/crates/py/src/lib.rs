//! Python bindings. Structured results (solver output, profiles, reports)
//! are returned as JSON strings; decode them with `json.loads`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use clubgraph::chroma::{self, Budget};
use clubgraph::consim::Mode;
use clubgraph::graphcore::{self, Graph};
use clubgraph::ladder;
use clubgraph::report::{self, parse_audits, AnchorSpec, SimRequest};
use clubgraph::specker::{self, SpeckerSpec};
use clubgraph::textio;
use clubgraph::typealg::{self, DisjointType, OrdinalSet};

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn set(xs: Vec<u64>) -> PyResult<OrdinalSet> {
    OrdinalSet::new(xs).map_err(value_err)
}

fn dtype(t: &str) -> PyResult<DisjointType> {
    t.parse().map_err(value_err)
}

fn budget(max_nodes: Option<u64>) -> Budget {
    Budget {
        max_nodes,
        max_millis: None,
    }
}

/// A simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", frozen)]
pub struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: Graph::from_edges(n, edges).map_err(value_err)?,
        })
    }

    /// Parses the `p n m` / `e u v` text format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: textio::parse_graph(text).map_err(value_err)?,
        })
    }

    fn to_text(&self) -> String {
        textio::emit_graph(&self.inner)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.vertex_count() {
            return Err(value_err(format!("unknown vertex {v}")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn is_forest(&self) -> bool {
        graphcore::is_forest(&self.inner)
    }

    /// Vertices of a shortest odd cycle (first vertex repeated at the end),
    /// optionally only looking at lengths up to `max_len`.
    #[pyo3(signature = (max_len = None))]
    fn shortest_odd_cycle(&self, max_len: Option<usize>) -> Option<Vec<usize>> {
        let limit = max_len.unwrap_or(self.inner.vertex_count());
        graphcore::shortest_odd_cycle_within(&self.inner, limit).map(|w| w.0)
    }

    /// Reduces an odd closed walk to an odd cycle no longer than it.
    fn extract_odd_cycle(&self, walk: Vec<usize>) -> PyResult<Vec<usize>> {
        graphcore::extract_odd_cycle(&self.inner, &graphcore::Walk(walk))
            .map(|w| w.0)
            .map_err(value_err)
    }

    /// A proper 2-coloring, or `None` when the graph has an odd cycle.
    fn two_coloring(&self) -> Option<Vec<usize>> {
        chroma::two_coloring(&self.inner).ok().map(|c| c.colors)
    }

    fn is_proper_coloring(&self, colors: Vec<usize>) -> PyResult<bool> {
        let c = chroma::Coloring::from_colors(colors);
        Ok(chroma::verify_coloring(&self.inner, &c).map_err(value_err)?.is_proper())
    }

    /// Exact chromatic number with certificate, as JSON.
    #[pyo3(signature = (max_nodes = None))]
    fn chromatic_number(&self, py: Python<'_>, max_nodes: Option<u64>) -> String {
        let g = &self.inner;
        let r = py.detach(|| chroma::chromatic_number(g, budget(max_nodes)));
        serde_json::to_string(&r).expect("serializable")
    }

    /// `f_G(k)` for `2 <= k <= k_max`, as JSON.
    #[pyo3(signature = (k_max, max_nodes = None))]
    fn fg_profile(&self, py: Python<'_>, k_max: usize, max_nodes: Option<u64>) -> String {
        let g = &self.inner;
        let r = py.detach(|| chroma::fg_profile(g, k_max, budget(max_nodes)));
        serde_json::to_string(&r).expect("serializable")
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(vertices={}, edges={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// `tp(a, b)` of two disjoint, equal-sized sets.
#[pyfunction]
fn tp(a: Vec<u64>, b: Vec<u64>) -> PyResult<String> {
    Ok(typealg::tp(&set(a)?, &set(b)?).map_err(value_err)?.to_string())
}

/// `t^n_s`.
#[pyfunction]
fn canonical(n: usize, s: usize) -> PyResult<String> {
    Ok(DisjointType::canonical(n, s).map_err(value_err)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (*types))]
fn concat(types: Vec<String>) -> PyResult<String> {
    let mut acc = DisjointType::empty();
    for t in &types {
        acc = acc.concat(&dtype(t)?);
    }
    Ok(acc.to_string())
}

#[pyfunction]
fn ones_before_zeros(t: &str) -> PyResult<Vec<usize>> {
    Ok(dtype(t)?.ones_before_zeros())
}

/// `G(alpha, t)`, vertices numbered by colexicographic rank.
#[pyfunction]
#[pyo3(signature = (alpha, t, max_vertices = 1_000_000))]
fn specker_graph(py: Python<'_>, alpha: u64, t: &str, max_vertices: u64) -> PyResult<PyGraph> {
    let spec = SpeckerSpec::new(alpha, dtype(t)?);
    let g = py
        .detach(|| specker::build_specker(&spec, max_vertices))
        .map_err(value_err)?;
    Ok(PyGraph { inner: g })
}

#[pyfunction]
fn specker_neighbors(alpha: u64, t: &str, subset: Vec<u64>) -> PyResult<Vec<Vec<u64>>> {
    let spec = SpeckerSpec::new(alpha, dtype(t)?);
    let ns = spec.neighbors(&set(subset)?).map_err(value_err)?;
    Ok(ns.into_iter().map(OrdinalSet::into_vec).collect())
}

#[pyfunction]
fn subset_rank(subset: Vec<u64>) -> PyResult<u64> {
    let s = set(subset)?;
    let n = s.len();
    specker::subset_rank(&s, n).map_err(value_err)
}

#[pyfunction]
fn subset_unrank(rank: u64, n: usize) -> Vec<u64> {
    specker::subset_unrank(rank, n).into_vec()
}

/// A seeded ladder system as JSON.
#[pyfunction]
fn generate_ladders(seed: u64, anchors: &str, length: usize) -> PyResult<String> {
    let spec: AnchorSpec = anchors.parse().map_err(value_err)?;
    let l = ladder::generate_ladders(seed, &spec.anchors(), length).map_err(value_err)?;
    Ok(serde_json::to_string(&l).expect("serializable"))
}

/// Runs a simulation with audits and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (
    mode,
    seed = 0,
    anchors = "200:1000-50000",
    f = vec![3, 3, 3, 3],
    color_count = 4,
    generator_count = 8,
    planted_p = 0.25,
    adversary_seed = None,
    audits = "all",
    threads = 1,
))]
#[allow(clippy::too_many_arguments)]
fn simulate(
    py: Python<'_>,
    mode: &str,
    seed: u64,
    anchors: &str,
    f: Vec<u64>,
    color_count: u32,
    generator_count: usize,
    planted_p: f64,
    adversary_seed: Option<u64>,
    audits: &str,
    threads: usize,
) -> PyResult<String> {
    let mode: Mode = mode.parse().map_err(value_err)?;
    let mut req = SimRequest::new(mode, seed, anchors.parse().map_err(value_err)?, f);
    req.color_count = color_count;
    req.generator_count = generator_count;
    req.planted_p = planted_p;
    req.adversary_seed = adversary_seed;
    req.audits = parse_audits(audits, mode).map_err(value_err)?;
    let r = py.detach(|| report::simulate(&req, threads)).map_err(value_err)?;
    Ok(r.to_json())
}

/// Regenerates a report; returns whether it matched byte for byte.
#[pyfunction]
#[pyo3(signature = (report_json, threads = 1))]
fn rerun(py: Python<'_>, report_json: &str, threads: usize) -> PyResult<bool> {
    py.detach(|| report::rerun(report_json, threads))
        .map(|(_, same)| same)
        .map_err(value_err)
}

/// Specker graphs, exact coloring and ladder-system simulations.
#[pymodule(name = "clubgraph")]
mod clubgraph_module {
    #[pymodule_export]
    use super::{
        canonical, concat, generate_ladders, ones_before_zeros, rerun, simulate, specker_graph, specker_neighbors,
        subset_rank, subset_unrank, tp, PyGraph,
    };
}
