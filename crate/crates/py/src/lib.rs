//! Python bindings. Polynomials cross the boundary as lists of Python ints,
//! lowest degree first.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use nsbetti::blocks::{self as core_blocks, StandardBlocks};
use nsbetti::moduli::{self, Component};
use nsbetti::{weil, AlgebraError, CheckReport, GenusPair, IntPoly};

fn err(e: AlgebraError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn pair(g1: u32, g2: u32) -> PyResult<GenusPair> {
    GenusPair::new(g1, g2).map_err(err)
}

fn component(name: &str) -> PyResult<Component> {
    name.parse::<Component>()
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

fn coeffs(p: &IntPoly) -> Vec<BigInt> {
    p.coeffs().to_vec()
}

/// Betti numbers of one component for one genus pair.
#[pyclass(frozen, name = "BettiTable", module = "nsbetti")]
pub struct PyBettiTable {
    inner: moduli::BettiTable,
}

#[pymethods]
impl PyBettiTable {
    #[new]
    #[pyo3(signature = (g1, g2, component = "m12"))]
    fn new(g1: u32, g2: u32, component: &str) -> PyResult<Self> {
        let inner = moduli::betti_table(pair(g1, g2)?, self::component(component)?).map_err(err)?;
        Ok(PyBettiTable { inner })
    }

    #[getter]
    fn g1(&self) -> u32 {
        self.inner.genus.g1
    }

    #[getter]
    fn g2(&self) -> u32 {
        self.inner.genus.g2
    }

    #[getter]
    fn component(&self) -> &'static str {
        self.inner.component.as_str()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree
    }

    #[getter]
    fn euler_char(&self) -> BigInt {
        self.inner.euler_char.clone()
    }

    #[getter]
    fn betti(&self) -> Vec<BigInt> {
        self.inner.coeffs.clone()
    }

    fn __len__(&self) -> usize {
        self.inner.coeffs.len()
    }

    fn __getitem__(&self, i: usize) -> PyResult<BigInt> {
        self.inner
            .betti(i)
            .cloned()
            .ok_or_else(|| pyo3::exceptions::PyIndexError::new_err(i))
    }

    fn __repr__(&self) -> String {
        format!(
            "BettiTable(g1={}, g2={}, component='{}', degree={})",
            self.inner.genus.g1,
            self.inner.genus.g2,
            self.inner.component.as_str(),
            self.inner.degree
        )
    }
}

/// A list of named checks. Informational entries do not affect `passed`.
#[pyclass(frozen, name = "Report", module = "nsbetti")]
pub struct PyReport {
    inner: CheckReport,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn passed(&self) -> bool {
        self.inner.all_passed()
    }

    /// `(name, status, witness)` triples in check order.
    #[getter]
    fn checks(&self) -> Vec<(String, &'static str, String)> {
        self.inner
            .checks()
            .iter()
            .map(|c| (c.name.clone(), c.status(), c.witness.clone()))
            .collect()
    }

    fn failures(&self) -> Vec<(String, String)> {
        self.inner
            .failures()
            .map(|c| (c.name.clone(), c.witness.clone()))
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Report(checks={}, passed={})",
            self.inner.len(),
            self.inner.all_passed()
        )
    }
}

#[pyfunction]
fn p_moduli_fixed_det(g: u32) -> PyResult<Vec<BigInt>> {
    Ok(coeffs(&core_blocks::p_moduli_fixed_det(g).map_err(err)?))
}

#[pyfunction]
fn p_jacobian(g: u32) -> Vec<BigInt> {
    coeffs(&core_blocks::p_jacobian(g))
}

#[pyfunction]
fn p_projective(n: u32) -> Vec<BigInt> {
    coeffs(&core_blocks::p_projective(n))
}

#[pyfunction]
fn p_kummer_desing(g: u32) -> Vec<BigInt> {
    coeffs(&core_blocks::p_kummer_desing(g))
}

#[pyfunction]
fn poincare_m12(g1: u32, g2: u32) -> PyResult<Vec<BigInt>> {
    Ok(coeffs(&moduli::poincare_m12(pair(g1, g2)?).map_err(err)?))
}

#[pyfunction]
fn poincare_m21(g1: u32, g2: u32) -> PyResult<Vec<BigInt>> {
    Ok(coeffs(&moduli::poincare_m21(pair(g1, g2)?).map_err(err)?))
}

#[pyfunction]
fn intersection_poincare(g1: u32, g2: u32) -> PyResult<Vec<BigInt>> {
    Ok(coeffs(
        &moduli::intersection_poincare(pair(g1, g2)?).map_err(err)?,
    ))
}

#[pyfunction]
fn verify_blocks(g: u32) -> PyReport {
    PyReport {
        inner: core_blocks::verify_blocks(g, &StandardBlocks),
    }
}

#[pyfunction]
#[pyo3(signature = (g1, g2, component = "m12"))]
fn verify_component(g1: u32, g2: u32, component: &str) -> PyResult<PyReport> {
    Ok(PyReport {
        inner: moduli::verify_component(pair(g1, g2)?, self::component(component)?),
    })
}

/// Point-count route against the closed form. Releases the GIL while running.
#[pyfunction]
fn verify_kirwan_consistency(py: Python<'_>, g1: u32, g2: u32) -> PyResult<PyReport> {
    let gp = pair(g1, g2)?;
    let inner = py.detach(|| weil::verify_kirwan_consistency(gp));
    Ok(PyReport { inner })
}

#[pymodule]
#[pyo3(name = "nsbetti")]
fn nsbetti_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBettiTable>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(p_moduli_fixed_det, m)?)?;
    m.add_function(wrap_pyfunction!(p_jacobian, m)?)?;
    m.add_function(wrap_pyfunction!(p_projective, m)?)?;
    m.add_function(wrap_pyfunction!(p_kummer_desing, m)?)?;
    m.add_function(wrap_pyfunction!(poincare_m12, m)?)?;
    m.add_function(wrap_pyfunction!(poincare_m21, m)?)?;
    m.add_function(wrap_pyfunction!(intersection_poincare, m)?)?;
    m.add_function(wrap_pyfunction!(verify_blocks, m)?)?;
    m.add_function(wrap_pyfunction!(verify_component, m)?)?;
    m.add_function(wrap_pyfunction!(verify_kirwan_consistency, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
