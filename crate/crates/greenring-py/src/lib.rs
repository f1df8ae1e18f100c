//! Python bindings for the `greenring` library.
//!
//! Exposes the presented rings as a `Ring` class with `Element` arithmetic,
//! plus the module-level Dickson helpers and the monomial-basis closed forms
//! of the stable bi-Frobenius structure.
//!
//! ```python
//! from greenring_py import Ring
//! r = Ring("stable", n=4)
//! f2 = r.parse("F_2")
//! print(f2 * f2)          # y*F_1 + F_3
//! print(r.fpdim()[4])     # 1.4142135623...
//! assert r.verify_bifrobenius()["pass"]
//! ```

use std::collections::BTreeMap;

use num::BigInt;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use greenring::based::BasedRing;
use greenring::bifrob;
use greenring::dickson;
use greenring::presented::{RingElement, RingKind, RingSpec};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_kind(kind: &str) -> PyResult<(RingKind, bool)> {
    match kind {
        "radford" | "radford-green" | "green" => Ok((RingKind::RadfordGreen, false)),
        "taft" => Ok((RingKind::RadfordGreen, true)),
        "grothendieck" => Ok((RingKind::Grothendieck, false)),
        "stable" => Ok((RingKind::Stable, false)),
        other => Err(value_err(format!(
            "unknown ring kind {other:?}: expected radford, taft, grothendieck or stable"
        ))),
    }
}

/// One of the three presented rings of a Radford Hopf algebra.
#[pyclass(frozen)]
struct Ring {
    spec: RingSpec,
}

impl Ring {
    fn based(&self) -> PyResult<BasedRing> {
        let mut ring = BasedRing::from_presented(&self.spec).map_err(value_err)?;
        let _ = ring.detect_involution();
        Ok(ring)
    }

    fn based_with_involution(&self) -> PyResult<BasedRing> {
        let mut ring = BasedRing::from_presented(&self.spec).map_err(value_err)?;
        ring.detect_involution().map_err(value_err)?;
        Ok(ring)
    }
}

#[pymethods]
impl Ring {
    /// Ring("radford" | "taft" | "grothendieck" | "stable", n, m=1)
    #[new]
    #[pyo3(signature = (kind, n, m = 1))]
    fn new(kind: &str, n: u32, m: u32) -> PyResult<Self> {
        let (kind, force_taft) = parse_kind(kind)?;
        let m = if force_taft { 1 } else { m };
        let spec = RingSpec::new(kind, n, m).map_err(value_err)?;
        Ok(Ring { spec })
    }

    #[getter]
    fn kind(&self) -> String {
        self.spec.kind().to_string()
    }

    #[getter]
    fn n(&self) -> u32 {
        self.spec.n()
    }

    #[getter]
    fn m(&self) -> u32 {
        self.spec.m()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.spec.rank()
    }

    fn labels(&self) -> Vec<String> {
        self.spec.basis().iter().map(|l| l.to_string()).collect()
    }

    fn unit_index(&self) -> usize {
        self.spec.unit_index()
    }

    fn one(&self) -> Element {
        Element { inner: RingElement::unit(self.spec) }
    }

    fn zero(&self) -> Element {
        Element { inner: RingElement::zero(self.spec) }
    }

    fn basis_element(&self, index: usize) -> PyResult<Element> {
        let basis = self.spec.basis();
        let label = basis
            .get(index)
            .ok_or_else(|| value_err(format!("basis index {index} out of range")))?;
        Ok(Element {
            inner: RingElement::from_label(self.spec, *label).map_err(value_err)?,
        })
    }

    /// Parses an expression (`"Z^2 - Y"`, `"y^2*F_3"`, ...) to normal form.
    fn parse(&self, src: &str) -> PyResult<Element> {
        let inner = greenring::cli::expr::parse_element(src, self.spec).map_err(value_err)?;
        Ok(Element { inner })
    }

    /// Nonzero structure constants as `(i, j, k, N)` tuples.
    fn structure_constants(&self) -> PyResult<Vec<(usize, usize, usize, i64)>> {
        Ok(self.based()?.constants())
    }

    fn gram(&self) -> PyResult<Vec<Vec<i64>>> {
        Ok(self.based()?.gram())
    }

    fn left_radical(&self) -> PyResult<Vec<Vec<BigInt>>> {
        Ok(self.based()?.gram_and_radicals().left_radical)
    }

    fn right_radical(&self) -> PyResult<Vec<Vec<BigInt>>> {
        Ok(self.based()?.gram_and_radicals().right_radical)
    }

    fn nondegenerate(&self) -> PyResult<bool> {
        Ok(self.based()?.gram_and_radicals().nondegenerate)
    }

    /// The duality permutation `i -> i*` read off the unit coefficients.
    fn involution(&self) -> PyResult<Vec<usize>> {
        Ok(self.based_with_involution()?.involution().expect("just detected").to_vec())
    }

    #[pyo3(signature = (tol = 1e-9))]
    fn fpdim(&self, tol: f64) -> PyResult<Vec<f64>> {
        self.based()?.fpdim(tol).map_err(value_err)
    }

    fn is_transitive(&self) -> PyResult<bool> {
        Ok(self.based()?.check_transitive().transitive)
    }

    /// Verifies the group-like axioms (G1)-(G3); returns a report dict.
    #[pyo3(signature = (tol = 1e-9))]
    fn verify_group_like<'py>(&self, py: Python<'py>, tol: f64) -> PyResult<Bound<'py, PyDict>> {
        let ring = self.based_with_involution()?;
        let fpdims = ring.fpdim(tol).map_err(value_err)?;
        let g = bifrob::grouplike_build(&ring, &fpdims).map_err(value_err)?;
        report_to_dict(py, &bifrob::grouplike_verify(&g, tol))
    }

    /// Verifies the bi-Frobenius structure (phi, t, S, Delta); returns a
    /// report dict.
    #[pyo3(signature = (tol = 1e-9))]
    fn verify_bifrobenius<'py>(&self, py: Python<'py>, tol: f64) -> PyResult<Bound<'py, PyDict>> {
        let ring = self.based_with_involution()?;
        let fpdims = ring.fpdim(tol).map_err(value_err)?;
        let g = bifrob::grouplike_build(&ring, &fpdims).map_err(value_err)?;
        let b = bifrob::bifrob_build(&g);
        let stable_n = (self.spec.kind() == RingKind::Stable).then(|| self.spec.n());
        let report = bifrob::bifrob_verify(&g, &b, stable_n, tol).map_err(value_err)?;
        report_to_dict(py, &report)
    }

    /// Antipode matrix on the canonical basis (stable rings).
    fn antipode_matrix(&self) -> PyResult<Vec<Vec<i64>>> {
        let ring = self.based_with_involution()?;
        let fpdims = ring.fpdim(1e-9).map_err(value_err)?;
        let g = bifrob::grouplike_build(&ring, &fpdims).map_err(value_err)?;
        Ok(bifrob::bifrob_build(&g).antipode)
    }

    /// Kernel generators of the stable projection (Green rings): the normal
    /// forms of `y^i F_n` followed by the `X_j`.
    fn projective_kernel_basis(&self) -> PyResult<Vec<Element>> {
        let basis = self.spec.projective_kernel_basis().map_err(value_err)?;
        Ok(basis.into_iter().map(|inner| Element { inner }).collect())
    }

    /// The monomial `y^i z^j` expanded over the F-basis (stable rings).
    fn monomial(&self, i: u32, j: u32) -> PyResult<Element> {
        Ok(Element { inner: self.spec.to_f_basis(i, j).map_err(value_err)? })
    }

    fn __repr__(&self) -> String {
        match self.spec.kind() {
            RingKind::Stable => format!("Ring(\"stable\", n={})", self.spec.n()),
            kind => format!("Ring(\"{kind}\", n={}, m={})", self.spec.n(), self.spec.m()),
        }
    }
}

fn report_to_dict<'py>(py: Python<'py>, report: &bifrob::VerifyReport) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("pass", report.pass)?;
    let checks: Vec<Bound<'py, PyDict>> = report
        .checks
        .iter()
        .map(|c| {
            let d = PyDict::new(py);
            d.set_item("name", &c.name)?;
            d.set_item("exact", c.exact)?;
            d.set_item("worst_residual", c.worst)?;
            d.set_item("witness", c.witness.as_deref())?;
            d.set_item("pass", c.pass)?;
            Ok(d)
        })
        .collect::<PyResult<_>>()?;
    dict.set_item("checks", checks)?;
    dict.set_item("violations", report.violations())?;
    Ok(dict)
}

/// An element of a presented ring in normal form.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Element {
    inner: RingElement,
}

#[pymethods]
impl Element {
    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element(\"{}\")", self.inner)
    }

    fn __add__(&self, other: &Element) -> PyResult<Element> {
        Ok(Element { inner: self.inner.add(&other.inner).map_err(value_err)? })
    }

    fn __sub__(&self, other: &Element) -> PyResult<Element> {
        Ok(Element { inner: self.inner.sub(&other.inner).map_err(value_err)? })
    }

    fn __mul__(&self, other: &Element) -> PyResult<Element> {
        Ok(Element { inner: self.inner.mul(&other.inner).map_err(value_err)? })
    }

    fn __neg__(&self) -> Element {
        Element { inner: self.inner.neg() }
    }

    fn __pow__(&self, exp: u32, modulo: Option<u32>) -> PyResult<Element> {
        if modulo.is_some() {
            return Err(PyZeroDivisionError::new_err("modular powers are not defined here"));
        }
        let mut acc = RingElement::unit(self.inner.spec());
        let mut base = self.inner.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).map_err(value_err)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).map_err(value_err)?;
            }
        }
        Ok(Element { inner: acc })
    }

    fn __eq__(&self, other: &Element) -> bool {
        self.inner == other.inner
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Nonzero coordinates as a dict from basis label to integer.
    fn coeffs(&self) -> BTreeMap<String, BigInt> {
        self.inner
            .coeffs()
            .map(|(label, c)| (label.to_string(), c.clone()))
            .collect()
    }

    /// Image under `Y -> y, Z -> z, X_j -> 0` (Green ring elements only).
    fn stable_projection(&self) -> PyResult<Element> {
        Ok(Element { inner: self.inner.stable_projection().map_err(value_err)? })
    }

    /// Image under `Y -> Y, Z -> 1 + Y, X_j -> X_j` (Green ring elements only).
    fn grothendieck_projection(&self) -> PyResult<Element> {
        Ok(Element { inner: self.inner.grothendieck_projection().map_err(value_err)? })
    }

    /// Stable elements: coordinates over the monomial basis `y^i z^j`,
    /// as a dict from `"y^i*z^j"` to integer.
    fn to_monomial_basis(&self) -> PyResult<BTreeMap<String, BigInt>> {
        let coords = self.inner.to_monomial_basis().map_err(value_err)?;
        Ok(coords
            .into_iter()
            .map(|((i, j), c)| (monomial_name(i, j), c))
            .collect())
    }
}

fn monomial_name(i: u32, j: u32) -> String {
    let mut parts = Vec::new();
    match i {
        0 => {}
        1 => parts.push("y".to_string()),
        _ => parts.push(format!("y^{i}")),
    }
    match j {
        0 => {}
        1 => parts.push("z".to_string()),
        _ => parts.push(format!("z^{j}")),
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Rendered Dickson polynomial `F_k(Y, Z)` of the second type.
#[pyfunction]
fn dickson_poly(k: u32) -> PyResult<String> {
    Ok(dickson::dickson_f(k).map_err(value_err)?.to_string())
}

/// `q_j = F_j(1, 2 cos(pi/n))`.
#[pyfunction]
fn q_eval(n: u32, j: u32) -> PyResult<f64> {
    dickson::q_eval(n, j).map_err(value_err)
}

/// Closed form of `phi(y^i z^j)` as an exact fraction `(numerator, denominator)`.
#[pyfunction]
fn phi_monomial(n: u32, i: u32, j: u32) -> PyResult<(BigInt, BigInt)> {
    let v = bifrob::stable_phi_monomial(n, i, j).map_err(value_err)?;
    Ok((v.numer().clone(), v.denom().clone()))
}

/// Closed form of `S(y^i z^j)` as a dict over the F-basis.
#[pyfunction]
fn antipode_monomial(n: u32, i: u32, j: u32) -> PyResult<BTreeMap<String, BigInt>> {
    let e = bifrob::stable_antipode_monomial(n, i, j).map_err(value_err)?;
    Ok(e.coeffs().map(|(l, c)| (l.to_string(), c.clone())).collect())
}

/// Diagonal comultiplication legs of `Delta(y^i z^j)` with their weights.
#[pyfunction]
fn delta_monomial(n: u32, i: u32, j: u32) -> PyResult<Vec<(String, f64)>> {
    let legs = bifrob::delta_monomial(n, i, j).map_err(value_err)?;
    Ok(legs
        .into_iter()
        .map(|((y, f), w)| {
            let label = greenring::presented::BasisLabel::StableF { y_exp: y, f_index: f };
            (label.to_string(), w)
        })
        .collect())
}

#[pymodule]
fn greenring_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add_class::<Element>()?;
    m.add_function(wrap_pyfunction!(dickson_poly, m)?)?;
    m.add_function(wrap_pyfunction!(q_eval, m)?)?;
    m.add_function(wrap_pyfunction!(phi_monomial, m)?)?;
    m.add_function(wrap_pyfunction!(antipode_monomial, m)?)?;
    m.add_function(wrap_pyfunction!(delta_monomial, m)?)?;
    Ok(())
}
