//! Python bindings, importable as `zf`.
//!
//! Vertices are 1-based integers for plain graphs and `(column, row)`
//! tuples for products. Reports come back as dictionaries with the same
//! shape as the command line's JSON output.

use pyo3::prelude::*;
use zf_core::theorems::ConstructionSpec;
use zf_core::{CaseId, Factor, RootSet};

pyo3::create_exception!(
    zf,
    SearchAborted,
    pyo3::exceptions::PyException,
    "An exhaustive search hit its budget."
);

fn to_py(e: zf_core::Error) -> PyErr {
    match e {
        zf_core::Error::SearchAborted {
            reason,
            lower,
            upper,
        } => {
            let reason = match reason {
                zf_core::AbortReason::TimeLimit => "time_limit",
                zf_core::AbortReason::OrderLimit => "order_limit",
            };
            SearchAborted::new_err((reason, lower, upper))
        }
        other => pyo3::exceptions::PyValueError::new_err(other.to_string()),
    }
}

/// Builds a construction spec from keyword-style parameters.
#[allow(clippy::too_many_arguments)]
pub fn construction_spec(
    case: &str,
    w: Option<usize>,
    h: Option<usize>,
    root: Option<Vec<usize>>,
    m: Option<usize>,
    r: Option<usize>,
    outer: Option<&str>,
    inner: Option<&str>,
) -> zf_core::Result<ConstructionSpec> {
    let case: CaseId = case.parse()?;
    let mut spec = if case.is_general() {
        let (Some(outer), Some(inner)) = (outer, inner) else {
            return Err(zf_core::Error::Parse(format!(
                "{case} needs outer and inner factors"
            )));
        };
        let (outer, inner): (Factor, Factor) = (outer.parse()?, inner.parse()?);
        let root = root.map(|u| RootSet::new(u, outer.order())).transpose()?;
        ConstructionSpec::general(case, outer, root, inner)?
    } else {
        let (Some(w), Some(h)) = (w, h) else {
            return Err(zf_core::Error::Parse(format!("{case} needs w and h")));
        };
        let spec = ConstructionSpec::new(case, w, h);
        match root {
            Some(u) => spec.with_root(RootSet::new(u, w)?),
            None => spec,
        }
    };
    if let Some(m) = m {
        spec = spec.with_m(m);
    }
    if let Some(r) = r {
        spec = spec.with_r(r);
    }
    Ok(spec)
}

#[pymodule]
mod zf {
    use std::time::Duration;

    use pyo3::exceptions::PyValueError;
    use pyo3::prelude::*;
    use pyo3::types::{PyList, PyString, PyTuple};
    use zf_core::minrank::{
        matches_pattern, p2_ph_graph, p2_ph_witness_matrix, rank_exact, RationalMatrix,
    };
    use zf_core::solver::zero_forcing_number_from;
    use zf_core::theorems::verify_construction as verify;
    use zf_core::{
        all_minimum_sets, are_isomorphic as iso, closure, forcing_closure, Instance, IsoOutcome,
        ProductExpression, SearchBudget, VertexId, VertexLabel, VertexSet,
    };

    use super::{construction_spec, to_py};

    #[pymodule_export]
    use super::SearchAborted;

    fn json_to_py<'py, T: serde::Serialize>(
        py: Python<'py>,
        value: &T,
    ) -> PyResult<Bound<'py, PyAny>> {
        let text =
            serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
        py.import("json")?.call_method1("loads", (text,))
    }

    fn budget(max_order: usize, time_limit: Option<f64>) -> PyResult<SearchBudget> {
        let mut b = SearchBudget::default().with_max_order(max_order);
        if let Some(s) = time_limit {
            let d =
                Duration::try_from_secs_f64(s).map_err(|e| PyValueError::new_err(e.to_string()))?;
            b = b.with_time_limit(d);
        }
        Ok(b)
    }

    /// A simple undirected graph.
    #[pyclass(frozen, eq, skip_from_py_object, module = "zf")]
    #[derive(Clone, PartialEq)]
    pub struct Graph {
        pub(crate) inner: zf_core::Graph,
    }

    #[pymethods]
    impl Graph {
        /// `Graph(order, edges)` with 1-based `(u, v)` pairs.
        #[new]
        fn new(order: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
            let inner = zf_core::Graph::from_edge_list(order, &edges).map_err(to_py)?;
            Ok(Graph { inner })
        }

        #[staticmethod]
        fn path(n: usize) -> PyResult<Self> {
            Ok(Graph {
                inner: zf_core::Graph::path(n).map_err(to_py)?,
            })
        }

        #[staticmethod]
        fn cycle(n: usize) -> PyResult<Self> {
            Ok(Graph {
                inner: zf_core::Graph::cycle(n).map_err(to_py)?,
            })
        }

        #[staticmethod]
        fn complete(n: usize) -> PyResult<Self> {
            Ok(Graph {
                inner: zf_core::Graph::complete(n).map_err(to_py)?,
            })
        }

        /// Parses the `n m` header plus `u v` lines format.
        #[staticmethod]
        fn parse_edge_list(text: &str) -> PyResult<Self> {
            Ok(Graph {
                inner: zf_core::Graph::parse_edge_list(text).map_err(to_py)?,
            })
        }

        #[getter]
        fn order(&self) -> usize {
            self.inner.order()
        }

        #[getter]
        fn edge_count(&self) -> usize {
            self.inner.edge_count()
        }

        fn edges(&self) -> Vec<(usize, usize)> {
            self.inner.edges().map(|(u, v)| (u + 1, v + 1)).collect()
        }

        fn to_edge_list(&self) -> String {
            self.inner.to_edge_list()
        }

        #[pyo3(signature = (name = "G"))]
        fn to_dot(&self, name: &str) -> String {
            self.inner.to_dot(name)
        }

        fn __repr__(&self) -> String {
            format!(
                "Graph(order={}, edges={})",
                self.inner.order(),
                self.inner.edge_count()
            )
        }
    }

    /// A graph built from an expression such as `P4({1,3}) x P3`.
    #[pyclass(frozen, module = "zf")]
    pub struct Structure {
        name: String,
        inner: Instance,
    }

    impl Structure {
        fn label<'py>(&self, py: Python<'py>, v: usize) -> PyResult<Bound<'py, PyAny>> {
            Ok(match self.inner.label(VertexId(v)) {
                VertexLabel::Plain(n) => n.into_pyobject(py)?.into_any(),
                VertexLabel::Pair([i, j]) => PyTuple::new(py, [i, j])?.into_any(),
            })
        }

        fn labels<'py>(&self, py: Python<'py>, set: &VertexSet) -> PyResult<Bound<'py, PyList>> {
            let items = set
                .iter()
                .map(|v| self.label(py, v))
                .collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)
        }

        /// Accepts a string in command-line syntax or a list of labels.
        fn vertex_set(&self, set: &Bound<'_, PyAny>) -> PyResult<VertexSet> {
            if let Ok(text) = set.cast::<PyString>() {
                return self.inner.parse_set(&text.to_cow()?).map_err(to_py);
            }
            let text = match &self.inner {
                Instance::Plain(_) => {
                    let labels: Vec<usize> = set.extract()?;
                    labels
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                }
                Instance::Product(_) => {
                    let labels: Vec<(usize, usize)> = set.extract()?;
                    labels
                        .iter()
                        .map(|(i, j)| format!("({i},{j})"))
                        .collect::<Vec<_>>()
                        .join(",")
                }
            };
            self.inner.parse_set(&text).map_err(to_py)
        }
    }

    #[pymethods]
    impl Structure {
        #[new]
        fn new(expression: &str) -> PyResult<Self> {
            let expr: ProductExpression = expression.parse().map_err(to_py)?;
            let inner = expr.build().map_err(to_py)?;
            Ok(Structure {
                name: expr.to_string(),
                inner,
            })
        }

        #[getter]
        fn name(&self) -> &str {
            &self.name
        }

        #[getter]
        fn order(&self) -> usize {
            self.inner.graph().order()
        }

        #[getter]
        fn graph(&self) -> Graph {
            Graph {
                inner: self.inner.graph().clone(),
            }
        }

        fn vertices<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
            self.labels(py, &VertexSet::full(self.order()))
        }

        /// The filled set once no more forces apply.
        fn closure<'py>(
            &self,
            py: Python<'py>,
            set: &Bound<'py, PyAny>,
        ) -> PyResult<Bound<'py, PyList>> {
            let s = self.vertex_set(set)?;
            self.labels(py, &closure(self.inner.graph(), &s))
        }

        fn is_zero_forcing_set(&self, set: &Bound<'_, PyAny>) -> PyResult<bool> {
            let s = self.vertex_set(set)?;
            Ok(closure(self.inner.graph(), &s).is_full())
        }

        /// Number of synchronous rounds, or `None` if the set does not force.
        fn propagation_time(&self, set: &Bound<'_, PyAny>) -> PyResult<Option<usize>> {
            let s = self.vertex_set(set)?;
            Ok(forcing_closure(self.inner.graph(), &s).propagation_time())
        }

        /// Round-by-round forces, as in `zf force`.
        fn chronicle<'py>(
            &self,
            py: Python<'py>,
            set: &Bound<'py, PyAny>,
        ) -> PyResult<Bound<'py, PyAny>> {
            let s = self.vertex_set(set)?;
            let record = forcing_closure(self.inner.graph(), &s).record(|v| self.inner.label(v));
            json_to_py(py, &record)
        }

        /// `(z, witness)`; raises `SearchAborted` when the budget runs out.
        #[pyo3(signature = (max_order = 24, time_limit = None, lower_bound = 1))]
        fn zero_forcing_number<'py>(
            &self,
            py: Python<'py>,
            max_order: usize,
            time_limit: Option<f64>,
            lower_bound: usize,
        ) -> PyResult<(usize, Bound<'py, PyList>)> {
            let b = budget(max_order, time_limit)?;
            let g = self.inner.graph();
            let cert = py
                .detach(|| zero_forcing_number_from(g, &b, lower_bound))
                .map_err(to_py)?;
            Ok((cert.z, self.labels(py, &cert.witness)?))
        }

        #[pyo3(signature = (max_order = 24, time_limit = None))]
        fn all_minimum_sets<'py>(
            &self,
            py: Python<'py>,
            max_order: usize,
            time_limit: Option<f64>,
        ) -> PyResult<Vec<Bound<'py, PyList>>> {
            let b = budget(max_order, time_limit)?;
            let g = self.inner.graph();
            let sets = py.detach(|| all_minimum_sets(g, &b)).map_err(to_py)?;
            sets.iter().map(|s| self.labels(py, s)).collect()
        }

        fn to_dot(&self) -> String {
            self.inner.to_dot(&self.name)
        }

        fn to_edge_list(&self) -> String {
            self.inner.graph().to_edge_list()
        }

        fn __repr__(&self) -> String {
            format!("Structure({:?})", self.name)
        }
    }

    /// Builds a case's explicit set and checks it; returns the bound report.
    #[pyfunction]
    #[pyo3(signature = (case, w = None, h = None, root = None, m = None, r = None, outer = None, inner = None))]
    #[allow(clippy::too_many_arguments)]
    fn verify_construction<'py>(
        py: Python<'py>,
        case: &str,
        w: Option<usize>,
        h: Option<usize>,
        root: Option<Vec<usize>>,
        m: Option<usize>,
        r: Option<usize>,
        outer: Option<&str>,
        inner: Option<&str>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let spec = construction_spec(case, w, h, root, m, r, outer, inner).map_err(to_py)?;
        let report = verify(&spec).map_err(to_py)?;
        json_to_py(py, &report)
    }

    /// The comparison against the summary tables, as a dictionary.
    #[pyfunction]
    #[pyo3(signature = (all_placements = false))]
    fn tables<'py>(py: Python<'py>, all_placements: bool) -> PyResult<Bound<'py, PyAny>> {
        let report = py.detach(|| zf_core::theorems::tables(all_placements));
        json_to_py(py, &report)
    }

    #[pyfunction]
    #[pyo3(signature = (all_placements = false))]
    fn tables_markdown(py: Python<'_>, all_placements: bool) -> String {
        py.detach(|| zf_core::theorems::tables(all_placements).to_markdown())
    }

    /// Rank and lower bound of the witness matrix for `P2({1}) x Ph`.
    #[pyfunction]
    fn minrank<'py>(py: Python<'py>, h: usize) -> PyResult<Bound<'py, PyAny>> {
        let g = p2_ph_graph(h).map_err(to_py)?;
        let m = p2_ph_witness_matrix(h).map_err(to_py)?;
        let rank = rank_exact(&m);
        let value = serde_json::json!({
            "h": h,
            "n": g.order(),
            "rank": rank,
            "lower_bound": g.order() - rank,
            "pattern_matches": matches_pattern(&m, &g).map_err(to_py)?,
        });
        json_to_py(py, &value)
    }

    /// The witness matrix as CSV of rationals.
    #[pyfunction]
    fn witness_matrix_csv(h: usize) -> PyResult<String> {
        Ok(p2_ph_witness_matrix(h).map_err(to_py)?.to_csv())
    }

    /// Exact rank over the rationals of an integer matrix.
    #[pyfunction(name = "rank_exact")]
    fn rank_of(rows: Vec<Vec<i64>>) -> PyResult<usize> {
        Ok(rank_exact(
            &RationalMatrix::from_integers(&rows).map_err(to_py)?,
        ))
    }

    /// A 1-based vertex mapping from `a` to `b`, or `None`.
    #[pyfunction]
    #[pyo3(signature = (a, b, max_order = 24))]
    fn are_isomorphic(
        py: Python<'_>,
        a: &Graph,
        b: &Graph,
        max_order: usize,
    ) -> PyResult<Option<Vec<usize>>> {
        let budget = SearchBudget::default().with_max_order(max_order);
        let (ga, gb) = (&a.inner, &b.inner);
        match py.detach(|| iso(ga, gb, &budget)).map_err(to_py)? {
            IsoOutcome::Isomorphic(w) => Ok(Some(w.mapping.iter().map(|v| v.label()).collect())),
            IsoOutcome::NotIsomorphic(_) => Ok(None),
        }
    }
}
