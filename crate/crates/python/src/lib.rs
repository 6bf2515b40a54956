//! Python bindings. Structured results come back as plain dicts and lists.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use torsion_sieve::algebra::{parse_rational, GaloisField, Rationals, SmallField as CoreField};
use torsion_sieve::curves::{moduli, Level, ModuliPoint as CorePoint, DEFAULT_ENUM_BOUND};
use torsion_sieve::family::FamilyParams;
use torsion_sieve::hecke::{hecke_tq, required_degree, HeckeOptions};
use torsion_sieve::{classno, cusps, existence, family, gonality};
use torsion_sieve_lmfdb::{default_fixture_dir, default_manifest, Client, FixtureStore};

create_exception!(torsion_sieve_py, SieveError, PyException);

fn core_err(e: torsion_sieve::Error) -> PyErr {
    match e {
        torsion_sieve::Error::InvalidInput(_)
        | torsion_sieve::Error::Unsupported(_)
        | torsion_sieve::Error::CharacteristicDividesLevel { .. } => PyValueError::new_err(e.to_string()),
        _ => SieveError::new_err(e.to_string()),
    }
}

fn lmfdb_err(e: torsion_sieve_lmfdb::Error) -> PyErr {
    SieveError::new_err(e.to_string())
}

/// Round-trips through `json` so every result is a builtin Python value.
fn to_py<T: Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| SieveError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (s,))?.unbind())
}

/// `F_{p^k}` in a polynomial basis.
#[pyclass(name = "SmallField", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySmallField {
    inner: CoreField,
}

#[pymethods]
impl PySmallField {
    #[new]
    fn new(p: u64, k: u32) -> PyResult<Self> {
        Ok(PySmallField { inner: CoreField::new(p, k).map_err(core_err)? })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    #[getter]
    fn order(&self) -> u64 {
        self.inner.p().pow(self.inner.degree())
    }

    /// Every point of `Y_1(m, n)` over this field, in canonical order.
    #[pyo3(signature = (m, n, enum_bound = DEFAULT_ENUM_BOUND, seed = 0))]
    fn moduli_points(&self, m: u64, n: u64, enum_bound: u64, seed: u64) -> PyResult<Vec<PyModuliPoint>> {
        let level = Level::new(m, n).map_err(core_err)?;
        let set = moduli::enumerate_moduli(&self.inner, level, enum_bound, seed).map_err(core_err)?;
        Ok(set.points.into_iter().map(|x| PyModuliPoint { field: self.inner.clone(), inner: x }).collect())
    }

    fn __repr__(&self) -> String {
        format!("SmallField({}, {})", self.inner.p(), self.inner.degree())
    }
}

/// A point `(b, c)` of `Y_1(m, n)` in Tate normal form coordinates.
#[pyclass(name = "ModuliPoint", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyModuliPoint {
    field: CoreField,
    inner: CorePoint<u32>,
}

#[pymethods]
impl PyModuliPoint {
    #[getter]
    fn level(&self) -> (u64, u64) {
        (self.inner.level.m, self.inner.level.n)
    }

    /// Coordinates of `b` in the polynomial basis.
    #[getter]
    fn b(&self) -> Vec<u64> {
        self.field.coeffs(&self.inner.b)
    }

    #[getter]
    fn c(&self) -> Vec<u64> {
        self.field.coeffs(&self.inner.c)
    }

    fn residue_degree(&self) -> u32 {
        moduli::residue_degree(&self.field, &self.inner)
    }

    fn diamond(&self, a: i64) -> PyResult<PyModuliPoint> {
        let x = moduli::diamond(&self.field, &self.inner, a).map_err(core_err)?;
        Ok(PyModuliPoint { field: self.field.clone(), inner: x })
    }

    fn frobenius(&self) -> PyModuliPoint {
        PyModuliPoint { field: self.field.clone(), inner: moduli::frobenius(&self.field, &self.inner) }
    }

    /// Degree and Galois stability of `T_q(x)`.
    fn hecke(&self, py: Python<'_>, q: u64) -> PyResult<Py<PyAny>> {
        let opts = HeckeOptions::default();
        let r = required_degree(&self.field, &self.inner, q, &opts).map_err(core_err)?;
        let img = hecke_tq(&self.field, &self.inner, q, &opts).map_err(core_err)?;
        let summary = serde_json::json!({
            "rel_degree": r,
            "degree": img.degree(),
            "effective": img.divisor.is_effective(),
            "galois_stable": img.is_galois_stable(),
        });
        to_py(py, &summary)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        use std::collections::hash_map::DefaultHasher;
        use std::hash::{Hash, Hasher};
        let mut h = DefaultHasher::new();
        (self.inner.level.m, self.inner.level.n, self.inner.b, self.inner.c).hash(&mut h);
        h.finish()
    }

    fn __repr__(&self) -> String {
        format!("ModuliPoint(level={:?}, b={:?}, c={:?})", self.level(), self.b(), self.c())
    }
}

#[pyfunction]
#[pyo3(signature = (m, n, p, d, enum_bound = DEFAULT_ENUM_BOUND, seed = 0))]
fn torsion_group_exists(py: Python<'_>, m: u64, n: u64, p: u64, d: u32, enum_bound: u64, seed: u64) -> PyResult<Py<PyAny>> {
    to_py(py, &existence::torsion_group_exists(m, n, p, d, enum_bound, seed).map_err(core_err)?)
}

#[pyfunction]
#[pyo3(signature = (m, n, p, enum_bound = DEFAULT_ENUM_BOUND, seed = 0))]
fn reduction_report(py: Python<'_>, m: u64, n: u64, p: u64, enum_bound: u64, seed: u64) -> PyResult<Py<PyAny>> {
    to_py(py, &existence::reduction_report(m, n, p, enum_bound, seed).map_err(core_err)?)
}

#[pyfunction]
fn admissible_traces(py: Python<'_>, p: u64, a: u32) -> PyResult<Py<PyAny>> {
    to_py(py, &existence::admissible_traces(p, a).map_err(core_err)?)
}

#[pyfunction]
fn cusp_inventory(py: Python<'_>, m: u64, n: u64) -> PyResult<Py<PyAny>> {
    to_py(py, &cusps::cusp_inventory(m, n).map_err(core_err)?)
}

#[pyfunction]
fn cusp_residue_degrees(py: Python<'_>, m: u64, n: u64, p: u64) -> PyResult<Py<PyAny>> {
    to_py(py, &cusps::cusp_residue_degrees(m, n, p).map_err(core_err)?)
}

#[pyfunction]
fn closed_form_cusp_count(n: u64) -> u64 {
    cusps::closed_form_cusp_count(n)
}

/// `(modulus, residues)`; modulus at most 2 means no condition.
#[pyfunction]
fn cc_condition(m: u64, n: u64, p: u64, parts: Vec<u32>) -> PyResult<(u64, Vec<u64>)> {
    let c = cusps::combined_cc_condition(m, n, p, &parts).map_err(core_err)?;
    Ok((c.modulus, c.residues))
}

#[pyfunction]
fn gonality_table(py: Python<'_>, table: u8) -> PyResult<Py<PyAny>> {
    match table {
        2 => to_py(py, &gonality::ds_table().map_err(core_err)?),
        3 => to_py(py, &gonality::higher_degree_table().map_err(core_err)?),
        4 => to_py(py, &gonality::quintic_table().map_err(core_err)?),
        _ => Err(PyValueError::new_err(format!("no gonality table {table}; expected 2, 3 or 4"))),
    }
}

#[pyfunction]
fn class_number(delta: u64) -> PyResult<u64> {
    classno::class_number(delta).map_err(core_err)
}

#[pyfunction]
#[pyo3(signature = (d, discriminant_bound = classno::DEFAULT_DISCRIMINANT_BOUND))]
fn sporadic_x0(py: Python<'_>, d: u64, discriminant_bound: u64) -> PyResult<Py<PyAny>> {
    to_py(py, &classno::sporadic_search(d, discriminant_bound).map_err(core_err)?)
}

#[pyfunction]
fn verify_identities(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_py(py, &family::verify_identities())
}

/// Jain's `(t, q)` for rational `(b, c)` given as strings such as `"3/7"`.
#[pyfunction]
fn jain_parameters(b: &str, c: &str) -> PyResult<(String, String)> {
    let params = FamilyParams { b: parse_rational(b).map_err(core_err)?, c: parse_rational(c).map_err(core_err)? };
    let (t, q, back) = family::jain_roundtrip(&Rationals, &params).map_err(core_err)?;
    if back != params {
        return Err(SieveError::new_err("Jain round trip did not return (b, c)"));
    }
    Ok((t.to_string(), q.to_string()))
}

/// Audits the shipped LMFDB claims against the fixture cache, offline.
#[pyfunction]
#[pyo3(signature = (fixtures = None))]
fn rank_check(py: Python<'_>, fixtures: Option<std::path::PathBuf>) -> PyResult<Py<PyAny>> {
    let client = Client::offline(FixtureStore::new(fixtures.unwrap_or_else(default_fixture_dir)));
    to_py(py, &default_manifest().audit_all(&client).map_err(lmfdb_err)?)
}

#[pymodule]
fn torsion_sieve_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SieveError", m.py().get_type::<SieveError>())?;
    m.add_class::<PySmallField>()?;
    m.add_class::<PyModuliPoint>()?;
    m.add_function(wrap_pyfunction!(torsion_group_exists, m)?)?;
    m.add_function(wrap_pyfunction!(reduction_report, m)?)?;
    m.add_function(wrap_pyfunction!(admissible_traces, m)?)?;
    m.add_function(wrap_pyfunction!(cusp_inventory, m)?)?;
    m.add_function(wrap_pyfunction!(cusp_residue_degrees, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_cusp_count, m)?)?;
    m.add_function(wrap_pyfunction!(cc_condition, m)?)?;
    m.add_function(wrap_pyfunction!(gonality_table, m)?)?;
    m.add_function(wrap_pyfunction!(class_number, m)?)?;
    m.add_function(wrap_pyfunction!(sporadic_x0, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identities, m)?)?;
    m.add_function(wrap_pyfunction!(jain_parameters, m)?)?;
    m.add_function(wrap_pyfunction!(rank_check, m)?)?;
    Ok(())
}
