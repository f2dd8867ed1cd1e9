//! Python bindings: a `Form` class wrapping binary forms plus functions for
//! rank certificates, witness construction, censuses, and decompositions.
//!
//! Exactness carries over the boundary: coefficients go in as ints, strings
//! ("p/q"), or `fractions.Fraction`, and come back as `Fraction`. Structured
//! results (certificates, witnesses, reports) cross as parsed JSON, so they
//! match the CLI's serialized artifacts field for field.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use pyo3::exceptions::{PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde::Serialize;

use waring::hypdecide::DEFAULT_TRIALS;
use waring::rat::{q_from_string, q_to_string, Q};
use waring::witnesses::{
    default_intersection_pair, witness_dminus1, witness_generic_span, witness_hyperbolic,
    witness_intersection, WitnessForm,
};
use waring::{Basis, BinaryForm, Distribution};

fn py_err(e: waring::Error) -> PyErr {
    use waring::Error as E;
    match e {
        E::Io(_) => PyIOError::new_err(e.to_string()),
        E::HypothesisFailed(_)
        | E::VerifyFailed(_)
        | E::ResampleExhausted(_)
        | E::IllConditioned { .. }
        | E::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn q_to_fraction<'py>(py: Python<'py>, value: &Q) -> PyResult<Bound<'py, PyAny>> {
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    fraction.call1((value.numer().clone(), value.denom().clone()))
}

/// Accepts int, fractions.Fraction (anything with integer numerator and
/// denominator attributes), or a "p/q" string. Floats are rejected to keep
/// the arithmetic exact.
fn value_to_q(value: &Bound<'_, PyAny>) -> PyResult<Q> {
    if let Ok(n) = value.extract::<BigInt>() {
        return Ok(Q::from(n));
    }
    if let (Ok(numer), Ok(denom)) = (value.getattr("numerator"), value.getattr("denominator")) {
        if let (Ok(n), Ok(d)) = (numer.extract::<BigInt>(), denom.extract::<BigInt>()) {
            if d.is_zero() {
                return Err(PyValueError::new_err("zero denominator"));
            }
            return Ok(Q::new(n, d));
        }
    }
    if let Ok(text) = value.extract::<String>() {
        return q_from_string(&text).map_err(PyValueError::new_err);
    }
    Err(PyValueError::new_err(
        "coefficients must be int, Fraction, or a 'p/q' string (floats are not exact)",
    ))
}

fn parse_basis(name: &str) -> PyResult<Basis> {
    match name {
        "monomial" => Ok(Basis::Monomial),
        "normalized" => Ok(Basis::Normalized),
        _ => Err(PyValueError::new_err(
            "basis must be 'monomial' or 'normalized'",
        )),
    }
}

fn parse_distribution(name: &str) -> PyResult<Distribution> {
    match name {
        "uniform" => Ok(Distribution::Uniform),
        "gauss-approx" | "gauss_approx" => Ok(Distribution::GaussApprox),
        _ => Err(PyValueError::new_err(
            "distribution must be 'uniform' or 'gauss-approx'",
        )),
    }
}

/// Serializes through serde_json and parses with Python's json module, so
/// Python sees plain dicts and lists.
fn to_py_json<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Inverse direction: accepts a JSON string or any json.dumps-able object.
fn from_py_json(value: &Bound<'_, PyAny>) -> PyResult<String> {
    if let Ok(text) = value.extract::<String>() {
        return Ok(text);
    }
    value
        .py()
        .import("json")?
        .call_method1("dumps", (value,))?
        .extract()
}

fn poly_string(f: &BinaryForm) -> String {
    let d = f.degree();
    let coeffs = f.monomial_coeffs();
    let mut out = String::new();
    for i in (0..=d).rev() {
        let c = &coeffs[i];
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let mag = c.abs();
        let xs = match i {
            0 => None,
            1 => Some("x".to_string()),
            _ => Some(format!("x^{i}")),
        };
        let ys = match d - i {
            0 => None,
            1 => Some("y".to_string()),
            k => Some(format!("y^{k}")),
        };
        let vars: Vec<String> = [xs, ys].into_iter().flatten().collect();
        if vars.is_empty() {
            out.push_str(&q_to_string(&mag));
        } else {
            if !mag.is_one() {
                out.push_str(&q_to_string(&mag));
                out.push('*');
            }
            out.push_str(&vars.join("*"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A binary form with exact rational coefficients.
#[pyclass(frozen)]
struct Form {
    inner: BinaryForm,
}

#[pymethods]
impl Form {
    /// Form(degree, coeffs, basis="monomial"): coeffs[i] multiplies
    /// x^i y^(degree-i) (times binomial(degree, i) in the normalized basis).
    #[new]
    #[pyo3(signature = (degree, coeffs, basis="monomial"))]
    fn new(degree: usize, coeffs: Vec<Bound<'_, PyAny>>, basis: &str) -> PyResult<Self> {
        let coeffs = coeffs
            .iter()
            .map(value_to_q)
            .collect::<PyResult<Vec<Q>>>()?;
        let inner = BinaryForm::new(degree, coeffs, parse_basis(basis)?).map_err(py_err)?;
        Ok(Form { inner })
    }

    /// (alpha x + beta y)^degree.
    #[staticmethod]
    fn pure_power(
        alpha: &Bound<'_, PyAny>,
        beta: &Bound<'_, PyAny>,
        degree: usize,
    ) -> PyResult<Self> {
        let inner = BinaryForm::pure_power(&value_to_q(alpha)?, &value_to_q(beta)?, degree);
        Ok(Form { inner })
    }

    /// Seeded random form, coefficients on the 2^-20 grid.
    #[staticmethod]
    #[pyo3(signature = (degree, seed, distribution="uniform"))]
    fn random(degree: usize, seed: u64, distribution: &str) -> PyResult<Self> {
        let inner = waring::forms::random_form(degree, parse_distribution(distribution)?, seed)
            .map_err(py_err)?;
        Ok(Form { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner: BinaryForm =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Form { inner })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[pyo3(signature = (basis="monomial"))]
    fn coeffs<'py>(&self, py: Python<'py>, basis: &str) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.inner
            .coeffs(parse_basis(basis)?)
            .iter()
            .map(|c| q_to_fraction(py, c))
            .collect()
    }

    fn evaluate<'py>(
        &self,
        py: Python<'py>,
        x: &Bound<'_, PyAny>,
        y: &Bound<'_, PyAny>,
    ) -> PyResult<Bound<'py, PyAny>> {
        q_to_fraction(py, &self.inner.eval(&value_to_q(x)?, &value_to_q(y)?))
    }

    fn derivative_x(&self) -> PyResult<Form> {
        Ok(Form {
            inner: self.inner.x_derivative().map_err(py_err)?,
        })
    }

    fn derivative_y(&self) -> PyResult<Form> {
        Ok(Form {
            inner: self.inner.y_derivative().map_err(py_err)?,
        })
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// True when the form has degree-many distinct real roots.
    fn is_hyperbolic(&self) -> PyResult<bool> {
        self.inner.is_hyperbolic().map_err(py_err)
    }

    fn is_squarefree(&self) -> PyResult<bool> {
        self.inner.is_squarefree().map_err(py_err)
    }

    fn discriminant<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        q_to_fraction(py, &self.inner.discriminant().map_err(py_err)?)
    }

    /// Number of distinct real projective roots.
    fn real_root_count(&self) -> PyResult<usize> {
        let affine = self.inner.sturm_count(None).map_err(py_err)?;
        let at_infinity = self.inner.infinity_multiplicity().map_err(py_err)?;
        Ok(affine + usize::from(at_infinity > 0))
    }

    fn scale(&self, factor: &Bound<'_, PyAny>) -> PyResult<Form> {
        Ok(Form {
            inner: self.inner.scale(&value_to_q(factor)?),
        })
    }

    fn __add__(&self, other: &Form) -> PyResult<Form> {
        Ok(Form {
            inner: self.inner.add(&other.inner).map_err(py_err)?,
        })
    }

    fn __mul__(&self, other: &Form) -> Form {
        Form {
            inner: self.inner.mul(&other.inner),
        }
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        match other.extract::<PyRef<'_, Form>>() {
            Ok(o) => self.inner == o.inner,
            Err(_) => false,
        }
    }

    fn __repr__(&self) -> String {
        format!("Form({})", poly_string(&self.inner))
    }

    fn __str__(&self) -> String {
        poly_string(&self.inner)
    }
}

/// Full rank certificate as a dict: complex rank, real bracket, exactness,
/// and the evidence list.
#[pyfunction]
#[pyo3(signature = (form, trials=DEFAULT_TRIALS, seed=0))]
fn rank<'py>(py: Python<'py>, form: &Form, trials: u32, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let certificate = waring::rank::rank_certificate(&form.inner, trials, seed).map_err(py_err)?;
    to_py_json(py, &certificate)
}

#[pyfunction]
fn complex_rank(form: &Form) -> PyResult<u32> {
    Ok(waring::rank::complex_rank(&form.inner).map_err(py_err)?.0)
}

/// Re-runs every check recorded in a certificate dict (or JSON string);
/// raises RuntimeError naming the first failure.
#[pyfunction]
fn verify_certificate(value: &Bound<'_, PyAny>) -> PyResult<()> {
    let certificate: waring::rank::RankCertificate =
        serde_json::from_str(&from_py_json(value)?)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
    certificate.verify().map_err(py_err)
}

/// Constructs a certified witness of the given family as a dict. Kinds:
/// "hyperbolic", "generic-span", "intersection" (built-in supports),
/// "dminus1".
#[pyfunction]
#[pyo3(signature = (kind, degree, seed=0))]
fn witness<'py>(
    py: Python<'py>,
    kind: &str,
    degree: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let witness = match kind {
        "hyperbolic" => witness_hyperbolic(degree, seed),
        "generic-span" | "generic_span" => witness_generic_span(degree, seed),
        "intersection" => {
            let (w, s) = default_intersection_pair(degree).map_err(py_err)?;
            witness_intersection(degree, &w, &s)
        }
        "dminus1" => witness_dminus1(degree, seed),
        _ => {
            return Err(PyValueError::new_err(
                "kind must be 'hyperbolic', 'generic-span', 'intersection', or 'dminus1'",
            ))
        }
    }
    .map_err(py_err)?;
    to_py_json(py, &witness)
}

/// Audit a witness dict (or JSON string) from scratch; raises RuntimeError
/// naming the first failing check.
#[pyfunction]
fn verify_witness(value: &Bound<'_, PyAny>) -> PyResult<()> {
    let witness: WitnessForm = serde_json::from_str(&from_py_json(value)?)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    witness.verify().map_err(py_err)
}

/// Seeded Monte Carlo rank census; the report dict is identical for every
/// jobs value.
#[pyfunction]
#[pyo3(signature = (degree, samples, seed=0, jobs=0, trials=DEFAULT_TRIALS, probes=0, resample_on_reject=false, distribution="uniform"))]
#[allow(clippy::too_many_arguments)]
fn census<'py>(
    py: Python<'py>,
    degree: usize,
    samples: u64,
    seed: u64,
    jobs: usize,
    trials: u32,
    probes: u32,
    resample_on_reject: bool,
    distribution: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let mut config = waring::census::CensusConfig::new(degree, samples, seed);
    config.trials = trials;
    config.stability_probes = probes;
    config.resample_on_reject = resample_on_reject;
    config.distribution = parse_distribution(distribution)?;
    let report = waring::census::run_census(&config, jobs).map_err(py_err)?;
    to_py_json(py, &report)
}

/// Numeric power-sum decomposition along a hyperbolic apolar witness; taken
/// from a fresh certificate when none is passed.
#[pyfunction]
#[pyo3(signature = (form, witness=None, precision_bits=64, trials=DEFAULT_TRIALS, seed=0))]
fn decompose<'py>(
    py: Python<'py>,
    form: &Form,
    witness: Option<&Form>,
    precision_bits: u32,
    trials: u32,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let h = match witness {
        Some(w) => w.inner.clone(),
        None => {
            let certificate =
                waring::rank::rank_certificate(&form.inner, trials, seed).map_err(py_err)?;
            certificate
                .evidence
                .iter()
                .find_map(|item| match item {
                    waring::rank::Evidence::UpperWitness { witness, .. } => Some(witness.clone()),
                    _ => None,
                })
                .ok_or_else(|| {
                    PyValueError::new_err(
                        "certificate carries no apolar witness; pass one explicitly",
                    )
                })?
        }
    };
    let decomposition =
        waring::rank::decompose(&form.inner, &h, precision_bits).map_err(py_err)?;
    to_py_json(py, &decomposition)
}

/// Basis of the apolar kernel in degree r, as Forms.
#[pyfunction]
fn apolar_kernel_basis(form: &Form, r: usize) -> PyResult<Vec<Form>> {
    let space = waring::apolarity::apolar_kernel(&form.inner, r).map_err(py_err)?;
    Ok(space
        .basis()
        .iter()
        .map(|f| Form { inner: f.clone() })
        .collect())
}

/// Apolar contraction of f by h (h acting as a differential operator).
#[pyfunction]
fn contract(h: &Form, f: &Form) -> PyResult<Form> {
    Ok(Form {
        inner: waring::apolarity::contract(&h.inner, &f.inner).map_err(py_err)?,
    })
}

#[pymodule]
fn waring_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Form>()?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(complex_rank, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    m.add_function(wrap_pyfunction!(verify_witness, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(apolar_kernel_basis, m)?)?;
    m.add_function(wrap_pyfunction!(contract, m)?)?;
    m.add("SCHEMA_VERSION", waring::SCHEMA_VERSION)?;
    m.add("DEFAULT_TRIALS", DEFAULT_TRIALS)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
