//! Python bindings: presentations are passed around as document text, reports
//! come back as `Report` objects with text, machine and record views.

use homleib::construct::{derived_algebra, omni_gl_example, sub_adjacent, Construction, ConstructError, Policy};
use homleib::corpus::{corpus_entry, corpus_list, corpus_root, corpus_run, parse_point};
use homleib::identities::{
    catalog, check_bimodule_with, check_matched_pair_with, check_named, check_variety_with, CheckError, CheckOptions,
    Context, Report as CoreReport,
};
use homleib::linalg::LinearMap;
use homleib::model::{load_action, load_matrix, load_presentation, save_presentation, AlgebraPresentation, ModelError};
use homleib::scalar::FieldSpec;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(homleib, ConstructionError, PyException, "A construction hypothesis or its re-verification failed.");

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn check_err(e: CheckError) -> PyErr {
    value_err(e)
}

fn construct_err(e: ConstructError) -> PyErr {
    match e {
        ConstructError::Unsupported(_) | ConstructError::Check(_) => value_err(e),
        _ => ConstructionError::new_err(e.to_string()),
    }
}

fn model_err(e: ModelError) -> PyErr {
    value_err(e)
}

/// The verdicts of a check, in order.
#[pyclass(module = "homleib", frozen)]
#[derive(Clone)]
pub struct Report {
    inner: CoreReport,
}

#[pymethods]
impl Report {
    /// Whether every entry passed.
    #[getter]
    fn passed(&self) -> bool {
        self.inner.passed()
    }

    /// One line per entry, e.g. `PASS hom_leibniz (8 assignments)`.
    fn text(&self) -> String {
        self.inner.render_text()
    }

    /// The structured document (a JSON array of records).
    fn machine(&self) -> String {
        self.inner.render_machine()
    }

    /// The entries as dictionaries with keys identity, status, assignment, residual, assignments, note.
    fn records<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        self.inner
            .entries
            .iter()
            .map(|e| {
                let d = PyDict::new(py);
                d.set_item("identity", &e.identity)?;
                d.set_item("status", e.status.name())?;
                d.set_item("assignment", e.assignment.clone())?;
                d.set_item("residual", e.residual.as_ref().map(|r| r.0.iter().map(|s| s.render(&self.inner.field)).collect::<Vec<_>>()))?;
                d.set_item("assignments", e.assignments)?;
                d.set_item("note", e.note.clone())?;
                Ok(d)
            })
            .collect()
    }

    /// Parse a machine rendering back into a report over the given field.
    #[staticmethod]
    #[pyo3(signature = (text, field = "rationals"))]
    fn parse(text: &str, field: &str) -> PyResult<Report> {
        let field = FieldSpec::parse(field).map_err(value_err)?;
        CoreReport::parse_machine(text, &field).map(|inner| Report { inner }).map_err(PyValueError::new_err)
    }

    fn __len__(&self) -> usize {
        self.inner.entries.len()
    }

    fn __bool__(&self) -> bool {
        self.inner.passed()
    }

    fn __repr__(&self) -> String {
        let failed = self.inner.entries.iter().filter(|e| !e.passed()).count();
        format!("<Report {} entries, {failed} not passing>", self.inner.entries.len())
    }
}

impl From<CoreReport> for Report {
    fn from(inner: CoreReport) -> Self {
        Report { inner }
    }
}

/// An algebra given by structure constants, loaded from a presentation document.
#[pyclass(module = "homleib", frozen)]
#[derive(Clone)]
pub struct Presentation {
    inner: AlgebraPresentation,
}

fn options(jobs: Option<usize>) -> CheckOptions {
    CheckOptions { jobs }
}

fn policy(lenient: bool) -> Policy {
    if lenient {
        Policy::Lenient
    } else {
        Policy::Strict
    }
}

/// A constructed presentation with its evidence.
fn built(c: Construction<AlgebraPresentation>) -> (Presentation, Report, Report) {
    (Presentation { inner: c.value }, c.preconditions.into(), c.verification.into())
}

#[pymethods]
impl Presentation {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        load_presentation(text).map(|inner| Presentation { inner }).map_err(model_err)
    }

    /// Load a presentation file.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| value_err(format!("{path}: {e}")))?;
        Presentation::new(&text)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim
    }

    #[getter]
    fn variety(&self) -> &'static str {
        self.inner.variety.name()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field.to_string()
    }

    /// The canonical document text.
    fn to_text(&self) -> String {
        save_presentation(&self.inner)
    }

    /// Substitute rational values for the field parameters, e.g. `"p=2,q=1/2"`.
    fn specialize(&self, point: &str) -> PyResult<Presentation> {
        let at = parse_point(point).map_err(PyValueError::new_err)?;
        let values = homleib::corpus::point_for(&self.inner.field, &at).map_err(PyValueError::new_err)?;
        self.inner.specialize(&values).map(|inner| Presentation { inner }).map_err(value_err)
    }

    /// The defining identities of the declared variety (and multiplicativity if claimed).
    #[pyo3(signature = (jobs = None))]
    fn check_variety(&self, jobs: Option<usize>) -> PyResult<Report> {
        check_variety_with(&self.inner, options(jobs)).map(Report::from).map_err(check_err)
    }

    /// Named catalog identities evaluated in the algebra context.
    #[pyo3(signature = (*names, jobs = None))]
    fn check_identity(&self, names: Vec<String>, jobs: Option<usize>) -> PyResult<Report> {
        if let Some(n) = names.iter().find(|n| catalog().get(n).is_none()) {
            return Err(value_err(format!("unknown identity `{n}`")));
        }
        self.inner.validate().map_err(model_err)?;
        check_named(&names, &Context::algebra(&self.inner), options(jobs)).map(Report::from).map_err(check_err)
    }

    /// The bimodule conditions for an action document.
    #[pyo3(signature = (action, jobs = None))]
    fn check_bimodule(&self, action: &str, jobs: Option<usize>) -> PyResult<Report> {
        let a = load_action(action).map_err(model_err)?;
        check_bimodule_with(&self.inner, &a, options(jobs)).map(Report::from).map_err(check_err)
    }

    /// The sub-adjacent algebra, with precondition and verification reports.
    #[pyo3(signature = (lenient = false))]
    fn sub_adjacent(&self, lenient: bool) -> PyResult<(Presentation, Report, Report)> {
        sub_adjacent(&self.inner, policy(lenient)).map(built).map_err(construct_err)
    }

    /// The n-th derived algebra of type 1 or 2.
    #[pyo3(signature = (kind, n, lenient = false))]
    fn derived(&self, kind: u8, n: u32, lenient: bool) -> PyResult<(Presentation, Report, Report)> {
        derived_algebra(&self.inner, kind, n, policy(lenient)).map(built).map_err(construct_err)
    }

    fn __eq__(&self, other: &Presentation) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("<Presentation {} of dimension {} over {}>", self.inner.variety, self.inner.dim, self.inner.field)
    }
}

/// The matched-pair conditions for algebras `a`, `b` and action documents.
#[pyfunction]
#[pyo3(signature = (a, b, a_on_b, b_on_a, jobs = None))]
fn check_matched_pair(a: &Presentation, b: &Presentation, a_on_b: &str, b_on_a: &str, jobs: Option<usize>) -> PyResult<Report> {
    let ab = load_action(a_on_b).map_err(model_err)?;
    let ba = load_action(b_on_a).map_err(model_err)?;
    check_matched_pair_with(&a.inner, &b.inner, &ab, &ba, options(jobs)).map(Report::from).map_err(check_err)
}

/// The dendriform structure on gl(V) ⊕ V; `beta` is `"id"` or a matrix document.
#[pyfunction]
#[pyo3(signature = (n, beta = "id", field = "rationals", lenient = false))]
fn omni(n: usize, beta: &str, field: &str, lenient: bool) -> PyResult<(Presentation, Report, Report)> {
    let field = FieldSpec::parse(field).map_err(value_err)?;
    let beta = if beta == "id" { LinearMap::identity(n) } else { load_matrix(beta, &field).map_err(model_err)? };
    omni_gl_example(n, &beta, &field, policy(lenient)).map(built).map_err(construct_err)
}

/// Names of the catalog identities, in catalog order.
#[pyfunction]
fn identities() -> Vec<String> {
    catalog().names().map(str::to_string).collect()
}

/// Ids of the bundled corpus entries.
#[pyfunction]
fn corpus_ids() -> PyResult<Vec<String>> {
    Ok(corpus_list(&corpus_root()).map_err(value_err)?.into_iter().map(|e| e.id).collect())
}

/// The rendered report of one corpus entry.
#[pyfunction]
fn corpus_report(id: &str) -> PyResult<String> {
    let entry = corpus_entry(&corpus_root(), id).map_err(value_err)?;
    corpus_run(&entry).map_err(value_err)
}

#[pymodule]
#[pyo3(name = "homleib")]
fn homleib_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Presentation>()?;
    m.add_class::<Report>()?;
    m.add("ConstructionError", m.py().get_type::<ConstructionError>())?;
    m.add_function(wrap_pyfunction!(check_matched_pair, m)?)?;
    m.add_function(wrap_pyfunction!(omni, m)?)?;
    m.add_function(wrap_pyfunction!(identities, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_ids, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_report, m)?)?;
    Ok(())
}
