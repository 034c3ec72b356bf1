//! Python bindings for `granule-core`.
//!
//! Granules are passed as sequences whose items are object names (`str`) or
//! zero-based object indices (`int`). Results report objects by name.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use granule_core::approximation::{self as approx, ApproximationError, Direction};
use granule_core::bitset::{AttributeSet, ObjectSet};
use granule_core::context::{self as context, CompoundContext, Flavor, FormalContext};
use granule_core::definability::{self as definability, Mode, Verdict};
use granule_core::derivation;
use granule_core::formula::{render, Description, Scope, Style};
use granule_core::lattice::{self, ConceptLattice, Guard, LatticeError};

create_exception!(granule, GranuleError, PyException, "Base class for granule errors.");
create_exception!(granule, InapplicableError, GranuleError, "The operation is undefined for this granule.");
create_exception!(granule, TooLargeError, GranuleError, "The context exceeds an enumeration size guard.");

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn lattice_error(e: LatticeError) -> PyErr {
    match e {
        LatticeError::TooLarge { .. } => TooLargeError::new_err(e.to_string()),
        other => value_error(other),
    }
}

fn approximation_error(e: ApproximationError) -> PyErr {
    match e {
        ApproximationError::Inapplicable(r) => InapplicableError::new_err(r.as_str()),
        other => value_error(other),
    }
}

fn parse_mode(mode: &str) -> PyResult<Mode> {
    mode.parse().map_err(PyValueError::new_err)
}

fn style(ascii: bool) -> Style {
    if ascii {
        Style::Ascii
    } else {
        Style::Unicode
    }
}

fn guard(force: bool) -> Guard {
    if force {
        Guard::Force
    } else {
        Guard::Enforce
    }
}

fn object_set(objects: &[String], granule: &[Bound<'_, PyAny>]) -> PyResult<ObjectSet> {
    let mut set = ObjectSet::empty(objects.len());
    for item in granule {
        let index = if let Ok(name) = item.extract::<String>() {
            objects
                .iter()
                .position(|o| *o == name)
                .ok_or_else(|| PyValueError::new_err(format!("unknown object `{name}`")))?
        } else {
            let i: usize = item.extract()?;
            if i >= objects.len() {
                return Err(PyValueError::new_err(format!("object index {i} out of range")));
            }
            i
        };
        set.insert(index);
    }
    Ok(set)
}

fn attribute_set(ctx: &FormalContext, names: &[String]) -> PyResult<AttributeSet> {
    let indices = names
        .iter()
        .map(|n| ctx.attribute_index(n).ok_or_else(|| PyValueError::new_err(format!("unknown attribute `{n}`"))))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(AttributeSet::from_indices(ctx.n_attributes(), indices))
}

fn names_of(objects: &[String], set: &ObjectSet) -> Vec<String> {
    set.iter().map(|i| objects[i].clone()).collect()
}

fn strings(names: Vec<&str>) -> Vec<String> {
    names.into_iter().map(String::from).collect()
}

/// Outcome of a definability check.
#[pyclass(name = "Verdict", module = "granule", frozen, get_all)]
struct PyVerdict {
    /// `"definable"`, `"indefinable"` or `"inapplicable"`.
    status: String,
    /// Rendered description when definable.
    description: Option<String>,
    /// Why the check does not apply, when inapplicable.
    reason: Option<String>,
    /// The closure of the granule, when indefinable.
    witness: Option<Vec<String>>,
}

#[pymethods]
impl PyVerdict {
    #[getter]
    fn definable(&self) -> bool {
        self.status == "definable"
    }

    fn __bool__(&self) -> bool {
        self.definable()
    }

    fn __repr__(&self) -> String {
        match (&self.description, &self.reason) {
            (Some(d), _) => format!("Verdict(definable, {d:?})"),
            (None, Some(r)) => format!("Verdict({}, reason={r:?})", self.status),
            (None, None) => format!("Verdict({})", self.status),
        }
    }
}

impl PyVerdict {
    fn new(scope: Scope<'_>, v: &Verdict, ascii: bool) -> Self {
        Self {
            status: v.status.as_str().to_string(),
            description: v.description.as_ref().map(|d| render(scope, d, style(ascii)).expect("in scope")),
            reason: v.reason.map(|r| r.as_str().to_string()),
            witness: v.witness.as_ref().map(|w| names_of(scope.objects(), w)),
        }
    }
}

/// Nearest definable granules above or below a granule.
#[pyclass(name = "Approximation", module = "granule", frozen, get_all)]
struct PyApproximation {
    direction: String,
    mode: String,
    /// True when the granule is itself definable.
    exact: bool,
    /// `(objects, description)` pairs; the description is `None` for an
    /// empty lower approximation.
    granules: Vec<(Vec<String>, Option<String>)>,
}

#[pymethods]
impl PyApproximation {
    fn __len__(&self) -> usize {
        self.granules.len()
    }

    fn __repr__(&self) -> String {
        format!("Approximation({} {}, {:?})", self.direction, self.mode, self.granules)
    }
}

impl PyApproximation {
    fn new(scope: Scope<'_>, a: &approx::Approximation, ascii: bool) -> Self {
        let render_one = |d: &Description| render(scope, d, style(ascii)).expect("in scope");
        Self {
            direction: a.direction.as_str().to_string(),
            mode: a.mode.as_str().to_string(),
            exact: a.exact,
            granules: a.granules.iter().map(|(g, d)| (names_of(scope.objects(), g), d.as_ref().map(render_one))).collect(),
        }
    }
}

/// A concept: extent and intent by name.
#[pyclass(name = "Concept", module = "granule", frozen, get_all)]
struct PyConcept {
    extent: Vec<String>,
    /// Intent attributes; the A-part for common-and-necessary concepts.
    intent: Vec<String>,
    /// The disjunctive B-part, for common-and-necessary concepts only.
    b_intent: Option<Vec<String>>,
    system: String,
}

#[pymethods]
impl PyConcept {
    fn __repr__(&self) -> String {
        match &self.b_intent {
            Some(b) => format!("Concept({:?}, {:?}, {:?})", self.extent, self.intent, b),
            None => format!("Concept({:?}, {:?})", self.extent, self.intent),
        }
    }
}

fn lattice_concepts(ctx: &FormalContext, l: &ConceptLattice) -> Vec<PyConcept> {
    l.concepts()
        .iter()
        .map(|c| PyConcept {
            extent: strings(ctx.object_names(&c.extent)),
            intent: strings(ctx.attribute_names(&c.intent)),
            b_intent: None,
            system: c.system.as_str().to_string(),
        })
        .collect()
}

/// A formal context: objects, attributes and a binary incidence relation.
#[pyclass(name = "Context", module = "granule", frozen)]
struct PyContext {
    inner: FormalContext,
}

#[pymethods]
impl PyContext {
    #[new]
    fn new(objects: Vec<String>, attributes: Vec<String>, incidence: Vec<Vec<bool>>) -> PyResult<Self> {
        FormalContext::new(objects, attributes, incidence).map(|inner| Self { inner }).map_err(value_error)
    }

    /// Parses Burmeister `.cxt` or JSON text, detected from its content.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        context::parse_context(text).map(|inner| Self { inner }).map_err(value_error)
    }

    #[staticmethod]
    fn read(path: std::path::PathBuf) -> PyResult<Self> {
        let text = std::fs::read_to_string(&path).map_err(|e| value_error(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    #[getter]
    fn objects(&self) -> Vec<String> {
        self.inner.objects().to_vec()
    }

    #[getter]
    fn attributes(&self) -> Vec<String> {
        self.inner.attributes().to_vec()
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        (self.inner.n_objects(), self.inner.n_attributes())
    }

    fn incidence(&self) -> Vec<Vec<bool>> {
        self.inner.incidence()
    }

    fn to_cxt(&self) -> String {
        context::to_cxt(&self.inner)
    }

    fn to_json(&self) -> String {
        context::to_json(&self.inner)
    }

    #[pyo3(signature = (prefix = "not_"))]
    fn complement(&self, prefix: &str) -> Self {
        Self { inner: self.inner.complement(prefix) }
    }

    /// The three-way compound context of this context and its complement.
    #[pyo3(signature = (prefix = "not_"))]
    fn appose_negation(&self, prefix: &str) -> PyCompoundContext {
        PyCompoundContext { inner: self.inner.appose_negation_with_prefix(prefix) }
    }

    /// Attributes shared by every object of `granule`.
    fn intent(&self, granule: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
        let x = object_set(self.inner.objects(), &granule)?;
        Ok(strings(self.inner.attribute_names(&derivation::intent(&self.inner, &x))))
    }

    /// Objects having every attribute in `attributes`.
    fn extent(&self, attributes: Vec<String>) -> PyResult<Vec<String>> {
        let b = attribute_set(&self.inner, &attributes)?;
        Ok(strings(self.inner.object_names(&derivation::extent(&self.inner, &b))))
    }

    /// `variant` is `formal`, `object_oriented` or `three_way`.
    #[pyo3(signature = (variant = "formal", force = false))]
    fn concepts(&self, variant: &str, force: bool) -> PyResult<Vec<PyConcept>> {
        let g = guard(force);
        match variant.replace('-', "_").as_str() {
            "formal" => Ok(lattice_concepts(&self.inner, &lattice::enumerate_formal(&self.inner, g).map_err(lattice_error)?)),
            "object_oriented" => Ok(lattice_concepts(
                &self.inner,
                &lattice::enumerate_object_oriented(&self.inner, g).map_err(lattice_error)?,
            )),
            "three_way" => self.appose_negation("not_").concepts(force),
            other => Err(PyValueError::new_err(format!("unknown variant `{other}`"))),
        }
    }

    /// Checks `granule` in mode `wedge`, `vee` or `three_way`.
    #[pyo3(signature = (granule, mode = "wedge", ascii = false))]
    fn define(&self, granule: Vec<Bound<'_, PyAny>>, mode: &str, ascii: bool) -> PyResult<PyVerdict> {
        let x = object_set(self.inner.objects(), &granule)?;
        match parse_mode(mode)? {
            Mode::ThreeWay => self.appose_negation("not_").define_set(&x, Mode::ThreeWay, ascii),
            m => {
                let scope = Scope::from(&self.inner);
                let v = definability::define(scope, m, &x).map_err(value_error)?;
                Ok(PyVerdict::new(scope, &v, ascii))
            }
        }
    }

    /// Every inclusion-minimal description of `granule`, shortest first.
    #[pyo3(signature = (granule, mode = "wedge", ascii = false))]
    fn minimal_descriptions(&self, granule: Vec<Bound<'_, PyAny>>, mode: &str, ascii: bool) -> PyResult<Vec<String>> {
        let x = object_set(self.inner.objects(), &granule)?;
        match parse_mode(mode)? {
            Mode::ThreeWay => self.appose_negation("not_").minimal_set(&x, Mode::ThreeWay, ascii),
            m => minimal(Scope::from(&self.inner), m, &x, ascii),
        }
    }

    /// `direction` is `upper` or `lower`.
    #[pyo3(signature = (granule, direction = "upper", mode = "wedge", ascii = false))]
    fn approximate(
        &self,
        granule: Vec<Bound<'_, PyAny>>,
        direction: &str,
        mode: &str,
        ascii: bool,
    ) -> PyResult<PyApproximation> {
        let x = object_set(self.inner.objects(), &granule)?;
        let d: Direction = direction.parse().map_err(PyValueError::new_err)?;
        match parse_mode(mode)? {
            Mode::ThreeWay => self.appose_negation("not_").approximate_set(&x, Mode::ThreeWay, d, ascii),
            m => approximate_in(Scope::from(&self.inner), m, d, &x, ascii),
        }
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Context({} objects, {} attributes)", self.inner.n_objects(), self.inner.n_attributes())
    }
}

fn minimal(scope: Scope<'_>, mode: Mode, x: &ObjectSet, ascii: bool) -> PyResult<Vec<String>> {
    let found = definability::minimal_descriptions(scope, mode, x).map_err(value_error)?;
    Ok(found.iter().map(|d| render(scope, d, style(ascii)).expect("in scope")).collect())
}

fn approximate_in(scope: Scope<'_>, mode: Mode, d: Direction, x: &ObjectSet, ascii: bool) -> PyResult<PyApproximation> {
    let a = approx::approximate(scope, mode, d, x).map_err(approximation_error)?;
    Ok(PyApproximation::new(scope, &a, ascii))
}

/// Two blocks over one object set: three-way (a context beside its
/// complement) or common-and-necessary (a conjunctive A-block and a
/// disjunctive B-block).
#[pyclass(name = "CompoundContext", module = "granule", frozen)]
struct PyCompoundContext {
    inner: CompoundContext,
}

impl PyCompoundContext {
    fn default_mode(&self) -> Mode {
        match self.inner.flavor() {
            Flavor::ThreeWay => Mode::ThreeWay,
            Flavor::CommonNecessary => Mode::Cn,
        }
    }

    fn mode(&self, mode: Option<&str>) -> PyResult<Mode> {
        mode.map_or(Ok(self.default_mode()), parse_mode)
    }

    fn define_set(&self, x: &ObjectSet, mode: Mode, ascii: bool) -> PyResult<PyVerdict> {
        let scope = Scope::from(&self.inner);
        let v = match definability::define(scope, mode, x) {
            Err(definability::DefinabilityError::Derivation(derivation::DerivationError::EmptyGranule)) => {
                Verdict::inapplicable(definability::Reason::EmptyGranule)
            }
            other => other.map_err(value_error)?,
        };
        Ok(PyVerdict::new(scope, &v, ascii))
    }

    fn minimal_set(&self, x: &ObjectSet, mode: Mode, ascii: bool) -> PyResult<Vec<String>> {
        minimal(Scope::from(&self.inner), mode, x, ascii)
    }

    fn approximate_set(&self, x: &ObjectSet, mode: Mode, d: Direction, ascii: bool) -> PyResult<PyApproximation> {
        approximate_in(Scope::from(&self.inner), mode, d, x, ascii)
    }
}

#[pymethods]
impl PyCompoundContext {
    /// Pairs an A-block with a B-block over the same objects.
    #[staticmethod]
    fn common_necessary(a: &PyContext, b: &PyContext) -> PyResult<Self> {
        CompoundContext::common_necessary(a.inner.clone(), b.inner.clone()).map(|inner| Self { inner }).map_err(value_error)
    }

    #[staticmethod]
    fn parse_json(text: &str) -> PyResult<Self> {
        context::parse_compound_json(text).map(|inner| Self { inner }).map_err(value_error)
    }

    fn to_json(&self) -> String {
        context::to_compound_json(&self.inner)
    }

    /// `three_way` or `common_necessary`.
    #[getter]
    fn flavor(&self) -> &'static str {
        self.inner.flavor().as_str()
    }

    #[getter]
    fn objects(&self) -> Vec<String> {
        self.inner.objects().to_vec()
    }

    #[getter]
    fn a_block(&self) -> PyContext {
        PyContext { inner: self.inner.a_block().clone() }
    }

    #[getter]
    fn b_block(&self) -> PyContext {
        PyContext { inner: self.inner.b_block().clone() }
    }

    /// Three-way concepts, or common-and-necessary concepts.
    #[pyo3(signature = (force = false))]
    fn concepts(&self, force: bool) -> PyResult<Vec<PyConcept>> {
        match self.inner.flavor() {
            Flavor::ThreeWay => {
                let l = lattice::enumerate_three_way_compound(&self.inner, guard(force)).map_err(lattice_error)?;
                Ok(lattice_concepts(self.inner.joined(), &l))
            }
            Flavor::CommonNecessary => {
                let (a, b) = (self.inner.a_block(), self.inner.b_block());
                let list = lattice::enumerate_cn(&self.inner, guard(force)).map_err(lattice_error)?;
                Ok(list
                    .iter()
                    .map(|c| PyConcept {
                        extent: strings(a.object_names(&c.extent)),
                        intent: strings(a.attribute_names(&c.intent.a_part)),
                        b_intent: Some(strings(b.attribute_names(&c.intent.b_part))),
                        system: "common_necessary".to_string(),
                    })
                    .collect())
            }
        }
    }

    /// The mode defaults to the flavor of the context.
    #[pyo3(signature = (granule, mode = None, ascii = false))]
    fn define(&self, granule: Vec<Bound<'_, PyAny>>, mode: Option<&str>, ascii: bool) -> PyResult<PyVerdict> {
        let x = object_set(self.inner.objects(), &granule)?;
        self.define_set(&x, self.mode(mode)?, ascii)
    }

    #[pyo3(signature = (granule, mode = None, ascii = false))]
    fn minimal_descriptions(&self, granule: Vec<Bound<'_, PyAny>>, mode: Option<&str>, ascii: bool) -> PyResult<Vec<String>> {
        let x = object_set(self.inner.objects(), &granule)?;
        self.minimal_set(&x, self.mode(mode)?, ascii)
    }

    #[pyo3(signature = (granule, direction = "upper", mode = None, ascii = false))]
    fn approximate(
        &self,
        granule: Vec<Bound<'_, PyAny>>,
        direction: &str,
        mode: Option<&str>,
        ascii: bool,
    ) -> PyResult<PyApproximation> {
        let x = object_set(self.inner.objects(), &granule)?;
        let d: Direction = direction.parse().map_err(PyValueError::new_err)?;
        self.approximate_set(&x, self.mode(mode)?, d, ascii)
    }

    fn __repr__(&self) -> String {
        format!(
            "CompoundContext({}, {} objects, {}+{} attributes)",
            self.flavor(),
            self.inner.n_objects(),
            self.inner.a_block().n_attributes(),
            self.inner.b_block().n_attributes()
        )
    }
}

#[pymodule]
fn granule(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyContext>()?;
    m.add_class::<PyCompoundContext>()?;
    m.add_class::<PyVerdict>()?;
    m.add_class::<PyApproximation>()?;
    m.add_class::<PyConcept>()?;
    m.add("GranuleError", m.py().get_type::<GranuleError>())?;
    m.add("InapplicableError", m.py().get_type::<InapplicableError>())?;
    m.add("TooLargeError", m.py().get_type::<TooLargeError>())?;
    Ok(())
}
