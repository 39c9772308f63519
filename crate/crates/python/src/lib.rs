//! Python bindings: diagrams, small roots, automata, growth analysis and the
//! brute-force oracle.  Generators are 1-based on this side, as in the
//! diagram text format.

use coxeter_growth::algebra::DEFAULT_DEGREE_CAP;
use coxeter_growth::oracle::DEFAULT_ELEMENT_CAP;
use coxeter_growth::{
    admissible_labelling, analysis, bfs_group, count_words, infinity_spanned, parse_diagram, perron_certificate,
    AnalysisConfig, Automaton, CoxeterDiagram, Error, Label, Pipeline,
};
use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

/// Input and configuration problems become `ValueError`; exceeded caps and
/// internal invariant failures become `RuntimeError`.
fn py_err(e: Error) -> PyErr {
    match e.exit_code() {
        2 => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_python<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn zero_based(v: usize, rank: usize) -> PyResult<usize> {
    if v == 0 || v > rank {
        return Err(PyValueError::new_err(format!("generator {v} out of range 1..={rank}")));
    }
    Ok(v - 1)
}

fn label_from(m: Option<u32>) -> Label {
    m.map_or(Label::Infinity, Label::Finite)
}

#[pyclass(name = "Diagram", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyDiagram {
    inner: CoxeterDiagram,
}

#[pymethods]
impl PyDiagram {
    /// `edges` holds `(i, j, m)` with 1-based vertices; `m = None` means infinity.
    #[new]
    fn new(rank: usize, edges: Vec<(usize, usize, Option<u32>)>) -> PyResult<Self> {
        let mut e = Vec::with_capacity(edges.len());
        for (i, j, m) in edges {
            e.push((zero_based(i, rank)?, zero_based(j, rank)?, label_from(m)));
        }
        Ok(PyDiagram {
            inner: CoxeterDiagram::from_edges(rank, &e).map_err(py_err)?,
        })
    }

    /// Parses the diagram text format (Coxeter or geometric).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyDiagram {
            inner: parse_diagram(text).map_err(py_err)?.to_coxeter(),
        })
    }

    #[staticmethod]
    fn universal(rank: usize) -> PyResult<Self> {
        Ok(PyDiagram {
            inner: CoxeterDiagram::universal(rank).map_err(py_err)?,
        })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// `m_ij`, `None` for infinity.
    fn label(&self, i: usize, j: usize) -> PyResult<Option<u32>> {
        let n = self.inner.rank();
        Ok(self.inner.label(zero_based(i, n)?, zero_based(j, n)?).finite())
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn is_free_product(&self) -> bool {
        self.inner.is_free_product()
    }

    fn is_infinity_spanned(&self) -> bool {
        infinity_spanned(&self.inner).is_some()
    }

    /// Generators in admissible order, or `None` when not infinity-spanned.
    fn admissible_order(&self) -> PyResult<Option<Vec<usize>>> {
        let Some(tree) = infinity_spanned(&self.inner) else { return Ok(None) };
        let l = admissible_labelling(&self.inner, &tree).map_err(py_err)?;
        Ok(Some(l.order().iter().map(|v| v + 1).collect()))
    }

    /// Vertex `v` becomes `perm[v - 1]`.
    fn relabel(&self, perm: Vec<usize>) -> PyResult<Self> {
        let n = self.inner.rank();
        let p = perm.into_iter().map(|v| zero_based(v, n)).collect::<PyResult<Vec<_>>>()?;
        Ok(PyDiagram {
            inner: self.inner.relabel(&p).map_err(py_err)?,
        })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Diagram(rank={})", self.inner.rank())
    }
}

#[pyclass(name = "Automaton", frozen)]
pub struct PyAutomaton {
    inner: Automaton,
}

#[pymethods]
impl PyAutomaton {
    #[getter]
    fn kind(&self) -> String {
        self.inner.kind().to_string()
    }

    #[getter]
    fn state_count(&self) -> usize {
        self.inner.state_count()
    }

    /// Generator order, least first.
    #[getter]
    fn order(&self) -> Vec<usize> {
        self.inner.order().iter().map(|g| g + 1).collect()
    }

    /// Small-root indices making up each state; state 0 is the start.
    fn states(&self) -> Vec<Vec<usize>> {
        self.inner.states().to_vec()
    }

    /// Target state, or `None` for the fail state.
    fn transition(&self, state: usize, generator: usize) -> PyResult<Option<usize>> {
        if state >= self.inner.state_count() {
            return Err(PyValueError::new_err(format!("no state {state}")));
        }
        Ok(self.inner.transition(state, zero_based(generator, self.inner.alphabet())?))
    }

    fn accepts(&self, word: Vec<usize>) -> PyResult<bool> {
        let n = self.inner.alphabet();
        let w = word.into_iter().map(|g| zero_based(g, n)).collect::<PyResult<Vec<_>>>()?;
        Ok(self.inner.run(&w).is_some())
    }

    /// Accepted words of each length `0..=k`.
    fn count_words(&self, k: usize) -> Vec<BigUint> {
        count_words(&self.inner, k)
    }

    fn perron_certificate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &perron_certificate(&self.inner))
    }

    fn to_dot(&self) -> PyResult<String> {
        self.inner.export_dot().map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("Automaton(kind={}, states={})", self.inner.kind(), self.inner.state_count())
    }
}

/// Full growth report as a dict (same layout as the CLI's JSON output).
#[pyfunction]
#[pyo3(signature = (diagram, k = 30, tol = 1e-9, oracle = false, corroborate = false))]
fn analyze<'py>(
    py: Python<'py>,
    diagram: &PyDiagram,
    k: usize,
    tol: f64,
    oracle: bool,
    corroborate: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let cfg = AnalysisConfig {
        k,
        tol,
        oracle,
        corroborate,
        ..AnalysisConfig::default()
    };
    let report = py.detach(|| analysis::analyze(&diagram.inner, &cfg)).map_err(py_err)?;
    to_python(py, &report)
}

/// Small roots with exact and decimal coordinates.
#[pyfunction]
#[pyo3(signature = (diagram, digits = 30))]
fn small_roots<'py>(py: Python<'py>, diagram: &PyDiagram, digits: usize) -> PyResult<Bound<'py, PyAny>> {
    let cfg = AnalysisConfig::default();
    let s = coxeter_growth::small_roots(&diagram.inner, cfg.caps.degree, cfg.caps.sigma).map_err(py_err)?;
    to_python(py, &s.report(digits))
}

/// `(shortlex, geo)` automata of a connected diagram.
#[pyfunction]
fn automata(py: Python<'_>, diagram: &PyDiagram) -> PyResult<(PyAutomaton, PyAutomaton)> {
    let p = py
        .detach(|| Pipeline::new(&diagram.inner, &AnalysisConfig::default()))
        .map_err(py_err)?;
    Ok((PyAutomaton { inner: p.shortlex }, PyAutomaton { inner: p.geo }))
}

/// Element and geodesic counts `(w, g)` up to `depth` by enumeration.
#[pyfunction]
#[pyo3(signature = (diagram, depth = 8))]
fn oracle_counts(py: Python<'_>, diagram: &PyDiagram, depth: usize) -> PyResult<(Vec<BigUint>, Vec<BigUint>)> {
    let ball = py
        .detach(|| bfs_group(&diagram.inner, depth, DEFAULT_DEGREE_CAP, DEFAULT_ELEMENT_CAP))
        .map_err(py_err)?;
    Ok((ball.element_counts(), ball.geodesic_counts()))
}

#[pymodule]
pub fn coxeter_growth_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDiagram>()?;
    m.add_class::<PyAutomaton>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(small_roots, m)?)?;
    m.add_function(wrap_pyfunction!(automata, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_counts, m)?)?;
    Ok(())
}
