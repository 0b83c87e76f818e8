//! Python bindings. Rationals cross the boundary as `fractions.Fraction`,
//! enumerators as dicts from exponent tuples to coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use sowkit::good::{self, DEFAULT_GOOD_LIMIT};
use sowkit::ldpc;
use sowkit::oracle::{self, DEFAULT_CODEWORD_LIMIT};
use sowkit::{BigRat, EnsembleKind, EnsembleSpec, Enumerator, KMatrix, OrbitTable};

create_exception!(pysowkit, InfeasibleError, PyValueError, "Requested computation exceeds a size limit.");

pub fn to_py_err(e: sowkit::Error) -> PyErr {
    match e {
        sowkit::Error::Infeasible { .. } => InfeasibleError::new_err(e.to_string()),
        sowkit::Error::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

pub fn parse_kind(kind: &str) -> PyResult<EnsembleKind> {
    match kind {
        "one" | "I" | "1" => Ok(EnsembleKind::One),
        "two" | "II" | "2" => Ok(EnsembleKind::Two),
        _ => Err(PyValueError::new_err(format!("unknown ensemble kind {kind:?}"))),
    }
}

fn table(q: u64) -> PyResult<OrbitTable> {
    OrbitTable::for_order(q).map_err(to_py_err)
}

fn fraction<'py>(py: Python<'py>, r: &BigRat) -> PyResult<Bound<'py, PyAny>> {
    let cls = py.import("fractions")?.getattr("Fraction")?;
    cls.call1((r.numer().clone(), r.denom().clone()))
}

/// Anything with integer `numerator` and `denominator` (int, Fraction).
fn extract_rat(obj: &Bound<'_, PyAny>) -> PyResult<BigRat> {
    let n: BigInt = obj.getattr("numerator")?.extract()?;
    let d: BigInt = obj.getattr("denominator")?.extract()?;
    if d == BigInt::from(0) {
        return Err(PyZeroDivisionError::new_err("zero denominator"));
    }
    Ok(BigRat::new(n, d))
}

fn poly_to_dict<'py>(py: Python<'py>, p: &Enumerator) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    for (e, c) in p.terms() {
        out.set_item(PyTuple::new(py, e)?, fraction(py, c)?)?;
    }
    Ok(out)
}

fn dict_to_poly(nvars: usize, d: &Bound<'_, PyDict>) -> PyResult<Enumerator> {
    let mut terms = BTreeMap::new();
    for (k, v) in d.iter() {
        let e: Vec<u32> = k.extract()?;
        terms.insert(e, extract_rat(&v)?);
    }
    Enumerator::from_terms(nvars, terms).map_err(to_py_err)
}

/// Orbit representatives and sizes, in the canonical order.
#[pyfunction]
fn orbits(q: u64) -> PyResult<Vec<((u32, u32), usize)>> {
    let t = table(q)?;
    Ok((0..t.len())
        .map(|s| {
            let (a, b) = t.representative(s);
            ((a.index(), b.index()), t.size(s))
        })
        .collect())
}

#[pyfunction]
fn orbit_labels(q: u64) -> PyResult<Vec<String>> {
    Ok(table(q)?.labels())
}

/// Split-orbit weight of a pair of vectors given as element indices.
#[pyfunction]
fn sow(q: u64, u: Vec<u32>, v: Vec<u32>) -> PyResult<Vec<u32>> {
    let t = table(q)?;
    let f = t.field();
    let conv = |x: &[u32]| x.iter().map(|&i| f.element(i)).collect::<sowkit::Result<Vec<_>>>();
    let s = t.sow(&conv(&u).map_err(to_py_err)?, &conv(&v).map_err(to_py_err)?).map_err(to_py_err)?;
    Ok(s.0)
}

#[pyfunction]
fn kmatrix(q: u64) -> PyResult<Vec<Vec<i64>>> {
    Ok(KMatrix::build(&table(q)?).entries)
}

#[pyfunction]
fn repetition_enumerator<'py>(py: Python<'py>, q: u64, c: u32) -> PyResult<Bound<'py, PyDict>> {
    let p = ldpc::repetition_enumerator(c, &table(q)?).map_err(to_py_err)?;
    poly_to_dict(py, &p)
}

#[pyfunction]
fn check_enumerator<'py>(py: Python<'py>, q: u64, d: u32) -> PyResult<Bound<'py, PyDict>> {
    let t = table(q)?;
    let p = ldpc::check_enumerator(d, &t, &KMatrix::build(&t)).map_err(to_py_err)?;
    poly_to_dict(py, &p)
}

/// Enumerator of the dual pair from the enumerator of `(U, V)`.
#[pyfunction]
fn transform<'py>(
    py: Python<'py>,
    q: u64,
    w: &Bound<'py, PyDict>,
    size_u: &Bound<'py, PyAny>,
    size_v: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyDict>> {
    let t = table(q)?;
    let w = dict_to_poly(t.len(), w)?;
    let out = sowkit::transform(&w, &extract_rat(size_u)?, &extract_rat(size_v)?, &KMatrix::build(&t))
        .map_err(to_py_err)?;
    poly_to_dict(py, &out)
}

fn spec(kind: &str, q: u32, c: u32, d: u32, n: u32) -> PyResult<EnsembleSpec> {
    EnsembleSpec::new(parse_kind(kind)?, q, c, d, n).map_err(to_py_err)
}

/// Expected split-orbit distribution of an LDPC ensemble.
#[pyfunction]
fn ldpc_expected<'py>(py: Python<'py>, kind: &str, q: u32, c: u32, d: u32, n: u32) -> PyResult<Bound<'py, PyDict>> {
    let s = spec(kind, q, c, d, n)?;
    let t = table(q as u64)?;
    let dist = py
        .detach(|| ldpc::expected_distribution(&s, &t, &KMatrix::build(&t)))
        .map_err(to_py_err)?;
    let out = PyDict::new(py);
    for (i, v) in &dist.values {
        out.set_item(PyTuple::new(py, &i.0)?, fraction(py, v)?)?;
    }
    Ok(out)
}

#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn ldpc_second_moment<'py>(
    py: Python<'py>,
    kind: &str,
    q: u32,
    c: u32,
    d: u32,
    n: u32,
    j: u32,
    k: u32,
) -> PyResult<Bound<'py, PyAny>> {
    let s = spec(kind, q, c, d, n)?;
    let t = table(q as u64)?;
    let dist = ldpc::expected_distribution(&s, &t, &KMatrix::build(&t)).map_err(to_py_err)?;
    fraction(py, &ldpc::expected_second_moment(&dist, j, k).map_err(to_py_err)?)
}

/// Per-index Monte Carlo `(mean, standard error)` plus the mass of `|C|^2`.
#[pyfunction]
#[pyo3(signature = (kind, q, c, d, n, trials=10_000, seed=0))]
#[allow(clippy::too_many_arguments)]
fn ldpc_monte_carlo<'py>(
    py: Python<'py>,
    kind: &str,
    q: u32,
    c: u32,
    d: u32,
    n: u32,
    trials: u64,
    seed: u64,
) -> PyResult<(Bound<'py, PyDict>, (f64, f64))> {
    let s = spec(kind, q, c, d, n)?;
    let t = table(q as u64)?;
    let mc = py
        .detach(|| oracle::monte_carlo_ldpc(&s, &t, trials, seed, DEFAULT_CODEWORD_LIMIT))
        .map_err(to_py_err)?;
    let out = PyDict::new(py);
    for i in mc.sums.keys() {
        out.set_item(PyTuple::new(py, &i.0)?, mc.mean_se(i))?;
    }
    Ok((out, mc.mass_mean_se()))
}

#[pyfunction]
#[pyo3(signature = (q, m, n, side="par"))]
fn theorem4<'py>(py: Python<'py>, q: u64, m: u32, n: u32, side: &str) -> PyResult<Bound<'py, PyDict>> {
    let t = table(q)?;
    let p = match side {
        "gen" => good::theorem4_generator(m, n, &t),
        "par" => good::theorem4_parity(m, n, &t),
        _ => return Err(PyValueError::new_err("side must be 'gen' or 'par'")),
    }
    .map_err(to_py_err)?;
    poly_to_dict(py, &p)
}

/// `(A1 is 1-good, A1 is 2-good, A2 is 2-good)` for the GF(8) rank-metric examples.
#[pyfunction]
fn mrd_demo() -> PyResult<(bool, bool, bool)> {
    let (a1, a2) = good::mrd_examples().map_err(to_py_err)?;
    let g = |e, k| good::is_k_good(e, k, DEFAULT_GOOD_LIMIT).map_err(to_py_err);
    Ok((g(&a1, 1)?, g(&a1, 2)?, g(&a2, 2)?))
}

#[pyfunction]
fn rate_bound(q: u32) -> f64 {
    good::rate_bound(q)
}

#[pyfunction]
fn intersecting<'py>(py: Python<'py>, q: u32, m: u32, n: u32) -> PyResult<Bound<'py, PyDict>> {
    let r = good::intersecting_report(q, m, n).map_err(to_py_err)?;
    let out = PyDict::new(py);
    out.set_item("union_bound", fraction(py, &r.union_bound)?)?;
    out.set_item("rate", r.rate)?;
    out.set_item("rate_bound", r.rate_bound)?;
    out.set_item("expected_size", fraction(py, &r.expected_size)?)?;
    out.set_item("variance", fraction(py, &r.variance)?)?;
    out.set_item("variance_bound", fraction(py, &r.variance_bound)?)?;
    out.set_item("deviation", r.deviation)?;
    out.set_item("chebyshev_bound", fraction(py, &r.chebyshev_bound)?)?;
    Ok(out)
}

#[pymodule]
pub fn pysowkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("InfeasibleError", m.py().get_type::<InfeasibleError>())?;
    m.add_function(wrap_pyfunction!(orbits, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_labels, m)?)?;
    m.add_function(wrap_pyfunction!(sow, m)?)?;
    m.add_function(wrap_pyfunction!(kmatrix, m)?)?;
    m.add_function(wrap_pyfunction!(repetition_enumerator, m)?)?;
    m.add_function(wrap_pyfunction!(check_enumerator, m)?)?;
    m.add_function(wrap_pyfunction!(transform, m)?)?;
    m.add_function(wrap_pyfunction!(ldpc_expected, m)?)?;
    m.add_function(wrap_pyfunction!(ldpc_second_moment, m)?)?;
    m.add_function(wrap_pyfunction!(ldpc_monte_carlo, m)?)?;
    m.add_function(wrap_pyfunction!(theorem4, m)?)?;
    m.add_function(wrap_pyfunction!(mrd_demo, m)?)?;
    m.add_function(wrap_pyfunction!(rate_bound, m)?)?;
    m.add_function(wrap_pyfunction!(intersecting, m)?)?;
    Ok(())
}
