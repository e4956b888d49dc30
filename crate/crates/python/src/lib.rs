//! Python bindings. Labels cross the boundary as strings (ints are accepted
//! on input); sets and measures may be given either as Python containers or
//! as the spec strings understood by the command line tool.

use std::collections::BTreeSet;

use fusionkit_core::foelner::{self, FoelnerReport, Strategy};
use fusionkit_core::spectral::{self, AmenabilityConfig};
use fusionkit_core::{
    catalog, ringfile, specs, verify_axioms, Dim, FusionError as CoreError, FusionRing, Label, LoadOptions, ProbMeasure,
    Quantity, RealElement, RingFile, Weight,
};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList, PyString};

create_exception!(fusionkit, FusionError, PyValueError);

fn err(e: CoreError) -> PyErr {
    FusionError::new_err(e.to_string())
}

fn label_text(obj: &Bound<'_, PyAny>) -> PyResult<String> {
    match obj.cast::<PyString>() {
        Ok(s) => Ok(s.to_str()?.to_owned()),
        Err(_) => Ok(obj.str()?.to_str()?.to_owned()),
    }
}

fn weight_py(py: Python<'_>, w: &Weight) -> PyResult<Py<PyAny>> {
    Ok(match w.as_exact() {
        Some(n) => n.clone().into_pyobject(py)?.into_any().unbind(),
        None => w.to_f64().into_pyobject(py)?.into_any().unbind(),
    })
}

fn quantity_py(py: Python<'_>, q: &Quantity) -> PyResult<Py<PyAny>> {
    let exact = match q {
        Quantity::Exact(r) if r.denom() == &1.into() => Some(r.numer().clone()),
        _ => None,
    };
    Ok(match exact {
        Some(n) => n.into_pyobject(py)?.into_any().unbind(),
        None => q.to_f64().into_pyobject(py)?.into_any().unbind(),
    })
}

fn strings<'a>(labels: impl IntoIterator<Item = &'a Label>) -> Vec<String> {
    labels.into_iter().map(Label::to_string).collect()
}

/// A based ring with a dimension function.
#[pyclass(frozen, name = "Ring", module = "fusionkit")]
struct Ring {
    inner: FusionRing,
}

impl Ring {
    fn wrap(inner: FusionRing) -> Ring {
        Ring { inner }
    }

    fn label(&self, obj: &Bound<'_, PyAny>) -> PyResult<Label> {
        self.inner.parse_label(&label_text(obj)?).map_err(err)
    }

    fn labels(&self, obj: &Bound<'_, PyAny>, generators: &[Label]) -> PyResult<Vec<Label>> {
        if let Ok(s) = obj.cast::<PyString>() {
            return specs::parse_set(&self.inner, s.to_str()?, generators).map_err(err);
        }
        obj.try_iter()?.map(|item| self.label(&item?)).collect()
    }

    fn support(&self, obj: Option<&Bound<'_, PyAny>>) -> PyResult<Vec<Label>> {
        match obj {
            None => Ok(self.inner.generators()),
            Some(o) => match o.cast::<PyString>() {
                Ok(s) => specs::parse_label_list(&self.inner, s.to_str()?).map_err(err),
                Err(_) => o.try_iter()?.map(|item| self.label(&item?)).collect(),
            },
        }
    }

    fn measure(&self, obj: Option<&Bound<'_, PyAny>>) -> PyResult<ProbMeasure> {
        let Some(obj) = obj else {
            return specs::parse_measure(&self.inner, "uniform-gens").map_err(err);
        };
        if let Ok(s) = obj.cast::<PyString>() {
            return specs::parse_measure(&self.inner, s.to_str()?).map_err(err);
        }
        let dict = obj.cast::<PyDict>()?;
        let mut weights = Vec::new();
        for (k, v) in dict.iter() {
            weights.push((self.label(&k)?, v.extract::<f64>()?));
        }
        ProbMeasure::new(&self.inner, weights).map_err(err)
    }

    fn function(&self, obj: &Bound<'_, PyAny>, generators: &[Label]) -> PyResult<RealElement> {
        if let Ok(s) = obj.cast::<PyString>() {
            return specs::parse_function(&self.inner, s.to_str()?, generators).map_err(err);
        }
        if let Ok(dict) = obj.cast::<PyDict>() {
            let mut values = Vec::new();
            for (k, v) in dict.iter() {
                values.push((self.label(&k)?, v.extract::<f64>()?));
            }
            return RealElement::from_map(&self.inner, values).validated().map_err(err);
        }
        let set = self.labels(obj, generators)?;
        Ok(RealElement::indicator(&self.inner, &set))
    }

    fn from_doc(doc: RingFile, strict: bool) -> PyResult<Ring> {
        let options = LoadOptions { verify_axioms: strict, require_closure: strict };
        doc.build(options).map(Ring::wrap).map_err(err)
    }
}

fn report_dict<'py>(py: Python<'py>, report: &FoelnerReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("condition", report.condition.to_string())?;
    d.set_item("generators", strings(&report.generators))?;
    d.set_item("set", strings(&report.set))?;
    d.set_item("epsilon", report.epsilon)?;
    d.set_item("lhs", quantity_py(py, &report.lhs)?)?;
    d.set_item("rhs", quantity_py(py, &report.rhs)?)?;
    d.set_item("ratio", report.ratio)?;
    d.set_item("satisfied", report.satisfied)?;
    let per = PyDict::new(py);
    for (label, q) in &report.per_generator {
        per.set_item(label.to_string(), quantity_py(py, q)?)?;
    }
    d.set_item("per_generator", per)?;
    d.set_item("support_identity", report.support_identity)?;
    Ok(d)
}

#[pymethods]
impl Ring {
    #[staticmethod]
    fn su2() -> Ring {
        Ring::wrap(catalog::su2())
    }

    #[staticmethod]
    fn deformed_su2(n: u64) -> PyResult<Ring> {
        catalog::deformed_su2(n).map(Ring::wrap).map_err(err)
    }

    #[staticmethod]
    fn zd(d: usize) -> PyResult<Ring> {
        catalog::zd(d).map(Ring::wrap).map_err(err)
    }

    #[staticmethod]
    fn free_group(rank: usize) -> PyResult<Ring> {
        catalog::free_group(rank).map(Ring::wrap).map_err(err)
    }

    #[staticmethod]
    fn cyclic(n: usize) -> PyResult<Ring> {
        catalog::cyclic(n).map(Ring::wrap).map_err(err)
    }

    #[staticmethod]
    fn trivial() -> Ring {
        Ring::wrap(catalog::trivial())
    }

    #[staticmethod]
    fn tensor(left: &Ring, right: &Ring) -> Ring {
        Ring::wrap(catalog::tensor_product(&left.inner, &right.inner))
    }

    /// Build from a ring document (JSON text). With `strict=False` the axioms
    /// are not verified and missing products only fail when requested.
    #[staticmethod]
    #[pyo3(signature = (text, strict = true))]
    fn from_json(text: &str, strict: bool) -> PyResult<Ring> {
        Ring::from_doc(RingFile::parse(text).map_err(err)?, strict)
    }

    #[staticmethod]
    #[pyo3(signature = (path, strict = true))]
    fn load(path: &str, strict: bool) -> PyResult<Ring> {
        Ring::from_doc(RingFile::read(path).map_err(err)?, strict)
    }

    fn __repr__(&self) -> String {
        format!("Ring({})", self.inner.description())
    }

    #[getter]
    fn unit(&self) -> String {
        self.inner.unit().to_string()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        strings(&self.inner.generators())
    }

    /// All labels of a finite ring, `None` for infinite ones.
    #[getter]
    fn basis(&self) -> Option<Vec<String>> {
        self.inner.finite_basis().map(|b| strings(&b))
    }

    fn conjugate(&self, label: &Bound<'_, PyAny>) -> PyResult<String> {
        let l = self.label(label)?;
        self.inner.conjugate(&l).map(|c| c.to_string()).map_err(err)
    }

    /// Dimension as an int when exact, a float otherwise.
    fn dim(&self, py: Python<'_>, label: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        let l = self.label(label)?;
        Ok(match self.inner.dim(&l).map_err(err)? {
            Dim::Int(n) => n.into_pyobject(py)?.into_any().unbind(),
            other => other.to_f64().into_pyobject(py)?.into_any().unbind(),
        })
    }

    fn sigma(&self, py: Python<'_>, label: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        let l = self.label(label)?;
        weight_py(py, &self.inner.sigma(&l).map_err(err)?)
    }

    /// Fusion product as `{label: multiplicity}`.
    fn product(&self, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<Vec<(String, u64)>> {
        let (a, b) = (self.label(a)?, self.label(b)?);
        let p = self.inner.product(&a, &b).map_err(err)?;
        Ok(p.iter().map(|(l, k)| (l.to_string(), *k)).collect())
    }

    fn coefficient(&self, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>, c: &Bound<'_, PyAny>) -> PyResult<u64> {
        let (a, b, c) = (self.label(a)?, self.label(b)?, self.label(c)?);
        self.inner.coefficient(&a, &b, &c).map_err(err)
    }

    /// Ball of the given radius around the unit, generated by `support`.
    #[pyo3(signature = (radius, support = None, cap = 1_000_000))]
    fn window(&self, radius: usize, support: Option<&Bound<'_, PyAny>>, cap: usize) -> PyResult<Vec<String>> {
        let gens = self.support(support)?;
        let w = spectral::build_window(&self.inner, &gens, radius, cap).map_err(err)?;
        Ok(strings(w.labels()))
    }

    /// Check the axioms on a window. Returns `(name, passed, witness)` rows.
    #[pyo3(signature = (window = None, radius = 3))]
    fn verify_axioms(
        &self,
        window: Option<&Bound<'_, PyAny>>,
        radius: usize,
    ) -> PyResult<Vec<(String, bool, Option<String>)>> {
        let gens = self.inner.generators();
        let labels = match window {
            Some(w) => self.labels(w, &gens)?,
            None if gens.is_empty() => vec![self.inner.unit()],
            None => spectral::build_window(&self.inner, &gens, radius, specs::BALL_CAP)
                .map_err(err)?
                .labels()
                .to_vec(),
        };
        let report = verify_axioms(&self.inner, &labels).map_err(err)?;
        Ok(report.checks.iter().map(|c| (c.axiom.name().to_owned(), c.passed, c.witness.clone())).collect())
    }

    /// Largest eigenvalue of the compressed `l_μ` on nested windows, with
    /// the heuristic amenability verdict.
    #[pyo3(signature = (radii, measure = None, tol = 1e-10, cap = 50_000, max_iter = 200_000))]
    fn spectrum<'py>(
        &self,
        py: Python<'py>,
        radii: Vec<usize>,
        measure: Option<&Bound<'_, PyAny>>,
        tol: f64,
        cap: usize,
        max_iter: usize,
    ) -> PyResult<Bound<'py, PyDict>> {
        let mu = self.measure(measure)?;
        let config = AmenabilityConfig { cap, tol, max_iter, ..AmenabilityConfig::default() };
        let ring = self.inner.clone();
        let rep = py
            .detach(move || spectral::amenability_estimate(&ring, &mu, &radii, &config))
            .map_err(err)?;
        let d = PyDict::new(py);
        let rows = PyList::empty(py);
        for e in &rep.estimates {
            rows.append((e.radius, e.window_size, e.lambda_max))?;
        }
        d.set_item("estimates", rows)?;
        d.set_item("monotone", rep.monotone)?;
        d.set_item("gap", rep.gap)?;
        d.set_item("verdict", rep.verdict.to_string())?;
        Ok(d)
    }

    /// Boundary `∂_S(F)` as a sorted list of labels.
    fn boundary(&self, support: &Bound<'_, PyAny>, set: &Bound<'_, PyAny>) -> PyResult<Vec<String>> {
        let gens = self.support(Some(support))?;
        let f = self.labels(set, &gens)?;
        let b = foelner::boundary(&self.inner, &gens, &f).map_err(err)?;
        Ok(strings(&b.labels()))
    }

    fn fc1<'py>(
        &self,
        py: Python<'py>,
        measure: &Bound<'_, PyAny>,
        set: &Bound<'_, PyAny>,
        eps: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let mu = self.measure(Some(measure))?;
        let gens: Vec<Label> = mu.support().cloned().collect();
        let f = self.labels(set, &gens)?;
        report_dict(py, &foelner::fc1_check(&self.inner, &mu, &f, eps).map_err(err)?)
    }

    fn fc2<'py>(
        &self,
        py: Python<'py>,
        support: &Bound<'_, PyAny>,
        set: &Bound<'_, PyAny>,
        eps: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let gens = self.support(Some(support))?;
        let f = self.labels(set, &gens)?;
        report_dict(py, &foelner::fc2_check(&self.inner, &gens, &f, eps).map_err(err)?)
    }

    fn fc3<'py>(
        &self,
        py: Python<'py>,
        support: &Bound<'_, PyAny>,
        set: &Bound<'_, PyAny>,
        eps: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let gens = self.support(Some(support))?;
        let f = self.labels(set, &gens)?;
        report_dict(py, &foelner::fc3_check(&self.inner, &gens, &f, eps).map_err(err)?)
    }

    /// `‖f‖_{μ,r}`; `f` is a `{label: value}` dict, a set of labels or a spec string.
    #[pyo3(signature = (measure, f, r = 1.0))]
    fn dirichlet(&self, measure: &Bound<'_, PyAny>, f: &Bound<'_, PyAny>, r: f64) -> PyResult<f64> {
        let mu = self.measure(Some(measure))?;
        let gens: Vec<Label> = mu.support().cloned().collect();
        let f = self.function(f, &gens)?;
        foelner::dirichlet_norm(&mu, &f, r).map_err(err)
    }

    #[pyo3(signature = (measure, f, r = 1.0))]
    fn norm(&self, measure: &Bound<'_, PyAny>, f: &Bound<'_, PyAny>, r: f64) -> PyResult<f64> {
        let mu = self.measure(Some(measure))?;
        let gens: Vec<Label> = mu.support().cloned().collect();
        self.function(f, &gens)?.norm_sigma(r).map_err(err)
    }

    fn transition(&self, measure: &Bound<'_, PyAny>, xi: &Bound<'_, PyAny>, eta: &Bound<'_, PyAny>) -> PyResult<f64> {
        let mu = self.measure(Some(measure))?;
        foelner::transition_kernel(&mu, &self.label(xi)?, &self.label(eta)?).map_err(err)
    }

    /// Search for a Følner set; never raises on an exhausted budget, check `found`.
    #[pyo3(signature = (support, eps, strategy = "balls", budget = 10_000))]
    fn foelner_search<'py>(
        &self,
        py: Python<'py>,
        support: &Bound<'_, PyAny>,
        eps: f64,
        strategy: &str,
        budget: usize,
    ) -> PyResult<Bound<'py, PyDict>> {
        let gens = self.support(Some(support))?;
        let strategy: Strategy = strategy.parse().map_err(err)?;
        let ring = self.inner.clone();
        let res = py
            .detach(move || foelner::foelner_search(&ring, &gens, eps, strategy, budget))
            .map_err(err)?;
        let d = report_dict(py, &res.report)?;
        d.set_item("found", res.found)?;
        d.set_item("strategy", res.strategy.to_string())?;
        let curve = PyList::empty(py);
        for p in &res.curve {
            curve.append((p.step, p.set_size, weight_py(py, &p.weight_f)?, weight_py(py, &p.weight_boundary)?, p.ratio))?;
        }
        d.set_item("curve", curve)?;
        Ok(d)
    }

    /// Table document for the ball of the given radius, as JSON text.
    #[pyo3(signature = (radius, support = None))]
    fn export(&self, radius: usize, support: Option<&Bound<'_, PyAny>>) -> PyResult<String> {
        let gens = self.support(support)?;
        let labels: BTreeSet<Label> = if gens.is_empty() {
            [self.inner.unit()].into()
        } else {
            spectral::build_window(&self.inner, &gens, radius, specs::BALL_CAP)
                .map_err(err)?
                .labels()
                .iter()
                .cloned()
                .collect()
        };
        let window = spectral::TruncationWindow::from_labels(&self.inner, labels).map_err(err)?;
        Ok(ringfile::export_window(&self.inner, &window).map_err(err)?.to_json())
    }
}

#[pymodule]
fn fusionkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add("FusionError", m.py().get_type::<FusionError>())?;
    Ok(())
}
