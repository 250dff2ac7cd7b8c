//! Python bindings. Values at a pole are returned as `None`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use tb::covering::{
    mobius_l, rational_to_blaschke, BlaschkeProduct, CoveringMap, DiscCover, HalfPlaneCover,
    LatticeMode, RationalCover,
};
use tb::divisor::{
    random_divisor as draw, validate_blaschke as check_blaschke,
    validate_classical as check_classical, validate_disc as check_disc,
    validate_halfplane as check_halfplane, Annulus, BlaschkeDivisor, ClassicalDivisor, DiscDivisor,
    Divisor, HalfPlaneDivisor, LatticeReport, SurfaceSpec, Target,
};
use tb::quadrature::QuadratureOptions;
use tb::theta::ThetaParams;
use tb::verify::{
    check_reciprocity_case_i, check_reciprocity_case_ii, verify_map, VerificationReport,
};
use tb::{Complex64, Extended};

fn py_err(e: tb::Error) -> PyErr {
    match e {
        tb::Error::InvalidArgument(_)
        | tb::Error::InvalidDivisor(_)
        | tb::Error::CompletionFailure(_)
        | tb::Error::GenerationExhausted { .. } => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn parse_mode(name: &str) -> PyResult<LatticeMode> {
    match name {
        "enforce" => Ok(LatticeMode::Enforce),
        "nearest-integer" => Ok(LatticeMode::NearestInteger),
        "period-compensated" => Ok(LatticeMode::PeriodCompensated),
        _ => Err(PyValueError::new_err(format!(
            "unknown lattice mode {name:?}; use enforce, nearest-integer or period-compensated"
        ))),
    }
}

fn parse_target(name: &str) -> PyResult<Target> {
    match name {
        "halfplane" => Ok(Target::HalfPlane),
        "disc" => Ok(Target::Disc),
        "classical-rational" => Ok(Target::ClassicalRational),
        "classical-blaschke" => Ok(Target::ClassicalBlaschke),
        _ => Err(PyValueError::new_err(format!("unknown target {name:?}"))),
    }
}

fn annulus(t: f64) -> PyResult<Annulus> {
    Annulus::new(t).map_err(py_err)
}

fn finite(v: Extended) -> Option<Complex64> {
    v.finite()
}

fn lattice_dict<'py>(py: Python<'py>, r: &LatticeReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("valid", r.valid)?;
    d.set_item("condition_value", r.condition_value)?;
    d.set_item("nearest_integer", r.nearest_integer)?;
    d.set_item("deviation", r.deviation)?;
    let violations: Vec<(String, String)> = r
        .violations
        .iter()
        .map(|v| (v.clause().to_string(), v.to_string()))
        .collect();
    d.set_item("violations", violations)?;
    Ok(d)
}

fn report_dict<'py>(py: Python<'py>, r: &VerificationReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("overall", r.overall())?;
    let checks = r
        .checks
        .iter()
        .map(|c| {
            let e = PyDict::new(py);
            e.set_item("name", &c.name)?;
            e.set_item("measured_error", c.measured_error)?;
            e.set_item("tolerance", c.tolerance)?;
            e.set_item("pass", c.pass)?;
            e.set_item("details", &c.details)?;
            Ok(e)
        })
        .collect::<PyResult<Vec<_>>>()?;
    d.set_item("checks", checks)?;
    Ok(d)
}

fn verify_any<'py>(py: Python<'py>, map: CoveringMap, tol: f64) -> PyResult<Bound<'py, PyDict>> {
    let report = verify_map(&map, tol).map_err(py_err)?;
    report_dict(py, &report)
}

/// `theta1(x)` for the nome `exp(-pi T)`.
#[pyfunction]
#[pyo3(signature = (x, t))]
fn theta1(x: Complex64, t: f64) -> PyResult<Complex64> {
    let p = ThetaParams::new(t).map_err(py_err)?;
    tb::theta::theta1(x, &p).map_err(py_err)
}

/// `theta1'(x) / theta1(x)`.
#[pyfunction]
#[pyo3(signature = (x, t))]
fn theta1_logderiv(x: Complex64, t: f64) -> PyResult<Complex64> {
    let p = ThetaParams::new(t).map_err(py_err)?;
    tb::theta::theta1_logderiv(x, &p).map_err(py_err)
}

/// The Cayley map `(u - i) / (u + i)`; `None` stands for infinity.
#[pyfunction]
fn cayley(u: Option<Complex64>) -> Option<Complex64> {
    finite(mobius_l(u.map_or(Extended::Infinity, Extended::Finite)))
}

#[pyfunction]
#[pyo3(signature = (zeros, poles, t))]
fn validate_halfplane<'py>(
    py: Python<'py>,
    zeros: Vec<Complex64>,
    poles: Vec<Complex64>,
    t: f64,
) -> PyResult<Bound<'py, PyDict>> {
    lattice_dict(
        py,
        &check_halfplane(&HalfPlaneDivisor::new(zeros, poles), &annulus(t)?),
    )
}

#[pyfunction]
#[pyo3(signature = (zeros, t))]
fn validate_disc<'py>(
    py: Python<'py>,
    zeros: Vec<Complex64>,
    t: f64,
) -> PyResult<Bound<'py, PyDict>> {
    lattice_dict(py, &check_disc(&DiscDivisor::new(zeros), &annulus(t)?))
}

#[pyfunction]
fn validate_classical<'py>(
    py: Python<'py>,
    zeros: Vec<f64>,
    poles: Vec<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    lattice_dict(py, &check_classical(&ClassicalDivisor::new(zeros, poles)))
}

#[pyfunction]
fn validate_blaschke<'py>(py: Python<'py>, zeros: Vec<Complex64>) -> PyResult<Bound<'py, PyDict>> {
    lattice_dict(py, &check_blaschke(&BlaschkeDivisor::new(zeros)))
}

/// A random valid divisor as `{"zeros": [...], "poles": [...]}`; rational
/// divisors use real numbers, and `poles` is omitted where the target has
/// none of its own.
#[pyfunction]
#[pyo3(signature = (seed, n, target, t = 1.0))]
fn random_divisor<'py>(
    py: Python<'py>,
    seed: u64,
    n: usize,
    target: &str,
    t: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let target = parse_target(target)?;
    let surface = match target {
        Target::HalfPlane | Target::Disc => SurfaceSpec::Annulus(annulus(t)?),
        _ => SurfaceSpec::Disc,
    };
    let d = PyDict::new(py);
    match draw(seed, n, target, &surface).map_err(py_err)? {
        Divisor::HalfPlane(h) => {
            d.set_item("zeros", h.zeros)?;
            d.set_item("poles", h.poles)?;
        }
        Divisor::Disc(h) => d.set_item("zeros", h.zeros)?,
        Divisor::Classical(c) => {
            d.set_item("zeros", c.zeros)?;
            d.set_item("poles", c.poles)?;
        }
        Divisor::Blaschke(b) => d.set_item("zeros", b.zeros)?,
    }
    Ok(d)
}

/// Reciprocity for a zero and a pole on the ovals.
#[pyfunction]
#[pyo3(signature = (z, p, t))]
fn reciprocity_boundary<'py>(
    py: Python<'py>,
    z: Complex64,
    p: Complex64,
    t: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let r = check_reciprocity_case_i(z, p, &annulus(t)?, QuadratureOptions::default())
        .map_err(py_err)?;
    report_dict(py, &r)
}

/// Reciprocity for an interior zero and its mirror pole.
#[pyfunction]
#[pyo3(signature = (z, t))]
fn reciprocity_mirror<'py>(py: Python<'py>, z: Complex64, t: f64) -> PyResult<Bound<'py, PyDict>> {
    let r =
        check_reciprocity_case_ii(z, &annulus(t)?, QuadratureOptions::default()).map_err(py_err)?;
    report_dict(py, &r)
}

/// Cover of the upper half-plane by the annulus of modulus `t`.
#[pyclass(name = "HalfPlaneCover", frozen)]
struct PyHalfPlaneCover {
    inner: HalfPlaneCover,
}

#[pymethods]
impl PyHalfPlaneCover {
    #[new]
    #[pyo3(signature = (zeros, poles, t, mode = "enforce"))]
    fn new(zeros: Vec<Complex64>, poles: Vec<Complex64>, t: f64, mode: &str) -> PyResult<Self> {
        let inner = HalfPlaneCover::with_mode(
            HalfPlaneDivisor::new(zeros, poles),
            annulus(t)?,
            parse_mode(mode)?,
        )
        .map_err(py_err)?;
        Ok(Self { inner })
    }

    fn __call__(&self, x: Complex64) -> Option<Complex64> {
        finite(self.inner.eval(x))
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn m(&self) -> i64 {
        self.inner.m()
    }

    #[getter]
    fn kappa(&self) -> Complex64 {
        self.inner.kappa()
    }

    #[getter]
    fn scale(&self) -> f64 {
        self.inner.scale()
    }

    #[getter]
    fn reference_point(&self) -> Complex64 {
        self.inner.reference_point()
    }

    /// `dh / h` at `x`.
    fn eta(&self, x: Complex64) -> PyResult<Complex64> {
        self.inner.eta().eval(x).map_err(py_err)
    }

    #[pyo3(signature = (tol = 1e-8))]
    fn verify<'py>(&self, py: Python<'py>, tol: f64) -> PyResult<Bound<'py, PyDict>> {
        verify_any(py, CoveringMap::HalfPlane(self.inner.clone()), tol)
    }
}

/// Cover of the unit disc by the annulus of modulus `t`.
#[pyclass(name = "DiscCover", frozen)]
struct PyDiscCover {
    inner: DiscCover,
}

#[pymethods]
impl PyDiscCover {
    #[new]
    #[pyo3(signature = (zeros, t, phase = 0.0, mode = "enforce"))]
    fn new(zeros: Vec<Complex64>, t: f64, phase: f64, mode: &str) -> PyResult<Self> {
        let inner = DiscCover::with_mode(
            DiscDivisor::new(zeros),
            annulus(t)?,
            phase,
            parse_mode(mode)?,
        )
        .map_err(py_err)?;
        Ok(Self { inner })
    }

    fn __call__(&self, x: Complex64) -> Option<Complex64> {
        finite(self.inner.eval(x))
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn poles(&self) -> Vec<Complex64> {
        self.inner.divisor().poles()
    }

    fn eta(&self, x: Complex64) -> PyResult<Complex64> {
        self.inner.eta().eval(x).map_err(py_err)
    }

    #[pyo3(signature = (tol = 1e-8))]
    fn verify<'py>(&self, py: Python<'py>, tol: f64) -> PyResult<Bound<'py, PyDict>> {
        verify_any(py, CoveringMap::Disc(self.inner.clone()), tol)
    }
}

/// Real rational self-map of the upper half-plane.
#[pyclass(name = "RationalCover", frozen)]
struct PyRationalCover {
    inner: RationalCover,
}

#[pymethods]
impl PyRationalCover {
    /// Only `abs(scale)` matters; the sign is the one preserving the
    /// half-plane.
    #[new]
    #[pyo3(signature = (zeros, poles, scale = 1.0))]
    fn new(zeros: Vec<f64>, poles: Vec<f64>, scale: f64) -> PyResult<Self> {
        let inner = RationalCover::with_scale(ClassicalDivisor::new(zeros, poles), scale)
            .map_err(py_err)?;
        Ok(Self { inner })
    }

    fn __call__(&self, u: Complex64) -> Option<Complex64> {
        finite(self.inner.eval(u))
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn scale(&self) -> f64 {
        self.inner.scale()
    }

    /// The Blaschke product conjugate to this map under the Cayley map.
    fn to_blaschke(&self) -> PyResult<PyBlaschkeProduct> {
        Ok(PyBlaschkeProduct {
            inner: rational_to_blaschke(&self.inner).map_err(py_err)?,
        })
    }

    #[pyo3(signature = (tol = 1e-8))]
    fn verify<'py>(&self, py: Python<'py>, tol: f64) -> PyResult<Bound<'py, PyDict>> {
        verify_any(py, CoveringMap::Rational(self.inner.clone()), tol)
    }
}

/// Finite Blaschke product.
#[pyclass(name = "BlaschkeProduct", frozen)]
struct PyBlaschkeProduct {
    inner: BlaschkeProduct,
}

#[pymethods]
impl PyBlaschkeProduct {
    #[new]
    #[pyo3(signature = (zeros, phase = 0.0))]
    fn new(zeros: Vec<Complex64>, phase: f64) -> PyResult<Self> {
        let inner = BlaschkeProduct::new(BlaschkeDivisor::new(zeros), phase).map_err(py_err)?;
        Ok(Self { inner })
    }

    fn __call__(&self, w: Complex64) -> Option<Complex64> {
        finite(self.inner.eval(w))
    }

    #[getter]
    fn zeros(&self) -> Vec<Complex64> {
        self.inner.zeros().to_vec()
    }

    #[getter]
    fn phase(&self) -> Complex64 {
        self.inner.phase()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[pyo3(signature = (tol = 1e-8))]
    fn verify<'py>(&self, py: Python<'py>, tol: f64) -> PyResult<Bound<'py, PyDict>> {
        verify_any(py, CoveringMap::Blaschke(self.inner.clone()), tol)
    }
}

#[pymodule]
fn theta_blaschke(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(theta1, m)?)?;
    m.add_function(wrap_pyfunction!(theta1_logderiv, m)?)?;
    m.add_function(wrap_pyfunction!(cayley, m)?)?;
    m.add_function(wrap_pyfunction!(validate_halfplane, m)?)?;
    m.add_function(wrap_pyfunction!(validate_disc, m)?)?;
    m.add_function(wrap_pyfunction!(validate_classical, m)?)?;
    m.add_function(wrap_pyfunction!(validate_blaschke, m)?)?;
    m.add_function(wrap_pyfunction!(random_divisor, m)?)?;
    m.add_function(wrap_pyfunction!(reciprocity_boundary, m)?)?;
    m.add_function(wrap_pyfunction!(reciprocity_mirror, m)?)?;
    m.add_class::<PyHalfPlaneCover>()?;
    m.add_class::<PyDiscCover>()?;
    m.add_class::<PyRationalCover>()?;
    m.add_class::<PyBlaschkeProduct>()?;
    Ok(())
}
