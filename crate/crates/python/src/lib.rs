//! Python bindings for `rnass`.
//!
//! Counts and ranks cross the boundary as Python `int`s of any size.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use rnass::codec::{self, Alphabet};
use rnass::counting::{self, StructureParams};
use rnass::{oracle, ranking};

fn value_error(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// A validated secondary structure. Accepts `*` or `.` for unpaired bases.
#[pyclass(name = "MotzkinWord", module = "rnass", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyMotzkinWord {
    inner: codec::MotzkinWord,
}

#[pymethods]
impl PyMotzkinWord {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        let inner = codec::MotzkinWord::parse(text, Alphabet::Dot).map_err(value_error)?;
        Ok(Self { inner })
    }

    /// Word encoded by `variant` in context `(n, m)`; `m` defaults to the
    /// number of pair nodes.
    #[staticmethod]
    #[pyo3(signature = (variant, n, m=None))]
    fn from_variant(variant: &str, n: usize, m: Option<usize>) -> PyResult<Self> {
        let tree = codec::parse_variant(variant).map_err(value_error)?;
        let m = m.unwrap_or_else(|| tree.pair_count());
        let inner = codec::variant_to_structure(&tree, n, m).map_err(value_error)?;
        Ok(Self { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.pairs()
    }

    #[pyo3(signature = (dot=false))]
    fn to_text(&self, dot: bool) -> String {
        self.inner.to_text(if dot { Alphabet::Dot } else { Alphabet::Star })
    }

    fn to_variant(&self) -> String {
        codec::print_variant(&codec::structure_to_variant(&self.inner))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("MotzkinWord('{}')", self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut hasher = std::collections::hash_map::DefaultHasher::new();
        self.inner.hash(&mut hasher);
        hasher.finish()
    }
}

#[derive(FromPyObject)]
enum StructureArg {
    Word(PyMotzkinWord),
    Text(String),
}

impl StructureArg {
    fn into_word(self) -> PyResult<codec::MotzkinWord> {
        match self {
            StructureArg::Word(word) => Ok(word.inner),
            StructureArg::Text(text) => {
                codec::MotzkinWord::parse(&text, Alphabet::Dot).map_err(value_error)
            }
        }
    }
}

/// Immutable table of structure counts for `n <= n_max`, `m <= m_max`.
#[pyclass(name = "CountTable", module = "rnass", frozen)]
pub struct PyCountTable {
    inner: counting::CountTable,
}

#[pymethods]
impl PyCountTable {
    #[new]
    fn new(n_max: usize, m_max: usize) -> Self {
        Self {
            inner: counting::CountTable::build(n_max, m_max),
        }
    }

    #[getter]
    fn n_max(&self) -> usize {
        self.inner.n_max()
    }

    #[getter]
    fn m_max(&self) -> usize {
        self.inner.m_max()
    }

    fn count(&self, n: usize, m: usize) -> PyResult<BigUint> {
        self.inner
            .get(n, m)
            .cloned()
            .ok_or_else(|| PyValueError::new_err(format!("({n}, {m}) is outside the table")))
    }

    fn rank(&self, py: Python<'_>, structure: StructureArg) -> PyResult<BigUint> {
        let word = structure.into_word()?;
        py.detach(|| ranking::rank_structure(&word, &self.inner))
            .map_err(value_error)
    }

    fn unrank(&self, py: Python<'_>, rank: BigUint, n: usize, m: usize) -> PyResult<PyMotzkinWord> {
        let inner = py
            .detach(|| ranking::unrank_structure(&rank, n, m, &self.inner))
            .map_err(value_error)?;
        Ok(PyMotzkinWord { inner })
    }

    fn rank_variant(&self, variant: &str, n: usize, m: usize) -> PyResult<BigUint> {
        let tree = codec::parse_variant(variant).map_err(value_error)?;
        ranking::rank_variant(&tree, n, m, &self.inner).map_err(value_error)
    }

    fn unrank_variant(&self, rank: BigUint, n: usize, m: usize) -> PyResult<String> {
        let tree = ranking::unrank_variant(&rank, n, m, &self.inner).map_err(value_error)?;
        Ok(codec::print_variant(&tree))
    }

    /// Structures with ranks in `start..stop`, in rank order.
    #[pyo3(signature = (n, m, start=None, stop=None))]
    fn enumerate(
        &self,
        n: usize,
        m: usize,
        start: Option<BigUint>,
        stop: Option<BigUint>,
    ) -> PyResult<Vec<PyMotzkinWord>> {
        let start = start.unwrap_or_default();
        let stop = stop.unwrap_or_else(|| counting::count_explicit(StructureParams::new(n, m)));
        let words = ranking::enumerate(n, m, &start, &stop, &self.inner).map_err(value_error)?;
        Ok(words.map(|inner| PyMotzkinWord { inner }).collect())
    }

    #[pyo3(signature = (n, m, k, seed=0))]
    fn sample(&self, n: usize, m: usize, k: usize, seed: u64) -> PyResult<Vec<PyMotzkinWord>> {
        let mut rng = ranking::seeded_source(seed);
        let words = ranking::sample(n, m, k, &mut rng, &self.inner).map_err(value_error)?;
        Ok(words.into_iter().map(|inner| PyMotzkinWord { inner }).collect())
    }
}

/// Number of structures of length `n` with `m` base-pairs.
#[pyfunction]
fn count(n: usize, m: usize) -> BigUint {
    counting::count_explicit(StructureParams::new(n, m))
}

#[pyfunction]
fn count_recurrence(n: usize, m: usize) -> BigUint {
    counting::count_recurrence(StructureParams::new(n, m))
}

#[pyfunction]
fn narayana(n: u64, k: u64) -> PyResult<BigUint> {
    counting::narayana(n, k).map_err(value_error)
}

#[pyfunction]
fn rank(structure: StructureArg) -> PyResult<BigUint> {
    let word = structure.into_word()?;
    let table = counting::CountTable::build(word.len(), word.pairs());
    ranking::rank_structure(&word, &table).map_err(value_error)
}

#[pyfunction]
fn unrank(n: usize, m: usize, rank: BigUint) -> PyResult<PyMotzkinWord> {
    let table = counting::CountTable::build(n, m);
    let inner = ranking::unrank_structure(&rank, n, m, &table).map_err(value_error)?;
    Ok(PyMotzkinWord { inner })
}

#[pyfunction]
fn to_variant(structure: StructureArg) -> PyResult<String> {
    let word = structure.into_word()?;
    Ok(codec::print_variant(&codec::structure_to_variant(&word)))
}

#[pyfunction]
#[pyo3(signature = (variant, n, m=None))]
fn to_structure(variant: &str, n: usize, m: Option<usize>) -> PyResult<String> {
    Ok(PyMotzkinWord::from_variant(variant, n, m)?.inner.to_string())
}

/// Brute-force check of one context; returns the report as a dict.
#[pyfunction]
fn verify_bijection<'py>(py: Python<'py>, n: usize, m: usize) -> PyResult<Bound<'py, PyDict>> {
    let report = oracle::verify_bijection(n, m).map_err(value_error)?;
    let dict = PyDict::new(py);
    dict.set_item("n", report.n)?;
    dict.set_item("m", report.m)?;
    dict.set_item("count", report.count)?;
    dict.set_item("oracle_count", report.oracle_count)?;
    dict.set_item("passed", report.passed)?;
    dict.set_item("counterexample", report.counterexample)?;
    Ok(dict)
}

#[pymodule]
#[pyo3(name = "rnass")]
pub fn rnass_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMotzkinWord>()?;
    m.add_class::<PyCountTable>()?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(count_recurrence, m)?)?;
    m.add_function(wrap_pyfunction!(narayana, m)?)?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(unrank, m)?)?;
    m.add_function(wrap_pyfunction!(to_variant, m)?)?;
    m.add_function(wrap_pyfunction!(to_structure, m)?)?;
    m.add_function(wrap_pyfunction!(verify_bijection, m)?)?;
    Ok(())
}
