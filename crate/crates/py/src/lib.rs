//! Python bindings: exact component counts, expectation sums, saddle-point
//! evaluation, merge classification, and the Monte Carlo simulator, all
//! mirroring the Rust crate's semantics (including its error taxonomy:
//! domain misuse raises ValueError, declared resource ceilings raise
//! RuntimeError).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use hyperphase::enumeration::egf::hypertree_egf;
use hyperphase::enumeration::lambda::wright_lambda_table;
use hyperphase::enumeration::oracle::{
    connected_count as oracle_count, connected_count_oracle, excess_slice,
};
use hyperphase::expectation::{
    expected_ell_creations, expected_unicyclic_creations, expected_unicyclic_statics,
    expected_v0_mass, expected_vell_mass, gamma_sum_check, ExpectationResult,
};
use hyperphase::sim::{monte_carlo, run_process, StopRule, SummaryStat};
use hyperphase::transition::{classify, TransitionKind};
use hyperphase::Error;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Domain(_) => PyValueError::new_err(e.to_string()),
        Error::Resource(_) => PyRuntimeError::new_err(e.to_string()),
    }
}

#[pyfunction]
fn version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

/// The default master seed used across the toolkit.
#[pyfunction]
fn default_seed() -> u64 {
    hyperphase::DEFAULT_SEED
}

/// Wright-style constant λ_ℓ as an exact fraction (numerator, denominator).
#[pyfunction]
fn lambda_value(ell: usize) -> (BigInt, BigInt) {
    let table = wright_lambda_table(ell);
    let v: &BigRational = table.value(ell);
    (v.numer().clone(), v.denom().clone())
}

/// Number of b-uniform hypertrees on n labeled vertices.
#[pyfunction]
fn hypertree_count(b: usize, n: usize) -> PyResult<BigInt> {
    if b < 2 {
        return Err(PyValueError::new_err("need b >= 2"));
    }
    let count = hypertree_egf::<BigRational>(b, n).egf_count(n);
    Ok(count.to_integer())
}

/// Number of connected b-uniform hypergraphs on n labeled vertices with
/// exactly k edges.
#[pyfunction]
fn connected_count(b: usize, n: usize, k: usize) -> PyResult<BigInt> {
    if b < 2 || n < 1 {
        return Err(PyValueError::new_err("need b >= 2 and n >= 1"));
    }
    let oracle = connected_count_oracle(b, n, k).map_err(to_py_err)?;
    Ok(oracle_count(&oracle, n, k))
}

/// Exact connected counts at one excess: a dict {n: count} for n ≤ n_max.
#[pyfunction]
fn excess_counts(b: usize, n_max: usize, ell: i64) -> PyResult<BTreeMap<usize, BigInt>> {
    if b < 2 || ell < -1 {
        return Err(PyValueError::new_err("need b >= 2 and ell >= -1"));
    }
    let k_max = ((n_max as i64 + ell.max(0)) / (b as i64 - 1) + 1) as usize;
    let oracle = connected_count_oracle(b, n_max, k_max).map_err(to_py_err)?;
    Ok(excess_slice(&oracle, b, ell).into_iter().collect())
}

fn expectation_dict(py: Python<'_>, r: &ExpectationResult) -> PyResult<Py<PyDict>> {
    let d = PyDict::new(py);
    d.set_item("value", r.value)?;
    d.set_item("value_ln", r.value_ln)?;
    d.set_item("asymptotic", r.asymptotic)?;
    d.set_item("ratio", r.ratio)?;
    d.set_item("regime_ok", r.regime_ok)?;
    Ok(d.into())
}

/// Expected lifetime cycle creations at excess 0, against (1/3)·ln n.
#[pyfunction]
#[pyo3(signature = (n, b = 3))]
fn expect_unicyclic(py: Python<'_>, n: u64, b: usize) -> PyResult<Py<PyDict>> {
    check_nb(n, b)?;
    expectation_dict(py, &expected_unicyclic_creations(n, b))
}

/// Expected static excess-0 components, against ≈1.9747·(b−1)^{1/3}·n^{1/3}.
#[pyfunction]
#[pyo3(signature = (n, b = 3))]
fn expect_static0(py: Python<'_>, n: u64, b: usize) -> PyResult<Py<PyDict>> {
    check_nb(n, b)?;
    expectation_dict(py, &expected_unicyclic_statics(n, b))
}

/// Expected excess-0 creation mass, against ≈1.2879·n^{2/3}/(b−1)^{1/3}.
#[pyfunction]
#[pyo3(signature = (n, b = 3))]
fn expect_v0(py: Python<'_>, n: u64, b: usize) -> PyResult<Py<PyDict>> {
    check_nb(n, b)?;
    expectation_dict(py, &expected_v0_mass(n, b))
}

/// Damped power sum Σ k^u·exp(−γk³) against its Γ-integral limit.
#[pyfunction]
#[pyo3(signature = (u, n, b = 3))]
fn expect_gamma_sum(py: Python<'_>, u: f64, n: u64, b: usize) -> PyResult<Py<PyDict>> {
    check_nb(n, b)?;
    if !u.is_finite() || u < 0.0 {
        return Err(PyValueError::new_err("need finite u >= 0"));
    }
    expectation_dict(py, &gamma_sum_check(u, n, b))
}

/// Expected creations at fixed excess ℓ ≥ 1 (limit value 1).
#[pyfunction]
#[pyo3(signature = (n, ell, b = 3))]
fn expect_ell_creations(py: Python<'_>, n: u64, ell: u64, b: usize) -> PyResult<Py<PyDict>> {
    check_nb(n, b)?;
    let r = expected_ell_creations(n, b, ell).map_err(to_py_err)?;
    expectation_dict(py, &r)
}

/// Expected vertex mass at excess ℓ, against (12ℓ(b−1))^{1/3}·n^{2/3}.
#[pyfunction]
#[pyo3(signature = (n, ell, b = 3))]
fn expect_vell(py: Python<'_>, n: u64, ell: u64, b: usize) -> PyResult<Py<PyDict>> {
    check_nb(n, b)?;
    let r = expected_vell_mass(n, b, ell).map_err(to_py_err)?;
    expectation_dict(py, &r)
}

fn check_nb(n: u64, b: usize) -> PyResult<()> {
    if !(2..=6).contains(&b) || n < b as u64 {
        return Err(PyValueError::new_err(format!(
            "need 2 <= b <= 6 and n >= b, got n = {n}, b = {b}"
        )));
    }
    Ok(())
}

/// Saddle-point main term for the coefficient family behind the
/// high-excess counts: returns the saddle u0, discriminant, and ln of the
/// approximation.
#[pyfunction]
fn saddle(py: Python<'_>, b: usize, n: u64, xi_n: u64, beta: u32) -> PyResult<Py<PyDict>> {
    let e = hyperphase::saddle::h_saddle(b, n, xi_n, beta).map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("n", e.n)?;
    d.set_item("b", e.b)?;
    d.set_item("xi_n", e.xi_n)?;
    d.set_item("beta", e.beta)?;
    d.set_item("xi", e.xi)?;
    d.set_item("delta", e.delta)?;
    d.set_item("u0", e.u0)?;
    d.set_item("phi_u0", e.phi_u0)?;
    d.set_item("approx_ln", e.approx_ln)?;
    Ok(d.into())
}

/// ln of the exact series coefficient the saddle approximates.
#[pyfunction]
fn saddle_exact_ln(b: usize, n: u64, xi_n: u64, beta: u32, order: usize) -> PyResult<f64> {
    hyperphase::saddle::h_exact_ln(b, n, xi_n, beta, order).map_err(to_py_err)
}

/// Classify one merge step from the excesses of the distinct components a
/// new edge touches: kind plus the resulting excess.
#[pyfunction]
fn classify_merge(py: Python<'_>, excesses: Vec<i64>, b: usize) -> PyResult<Py<PyDict>> {
    if excesses.is_empty() || excesses.len() > b || b < 2 || excesses.iter().any(|&e| e < -1) {
        return Err(PyValueError::new_err(
            "need 1..=b excesses, each >= -1, and b >= 2",
        ));
    }
    let kind = classify(&excesses, b);
    let d = PyDict::new(py);
    let (name, ell) = match kind {
        TransitionKind::TreeMerge => ("tree-merge", -1),
        TransitionKind::Creation { ell } => ("creation", ell),
        TransitionKind::Growth { ell, .. } => ("growth", ell),
        TransitionKind::MulticyclicMerge { ell, .. } => ("multicyclic-merge", ell),
    };
    d.set_item("kind", name)?;
    d.set_item("ell_new", ell)?;
    Ok(d.into())
}

fn stat_dict(py: Python<'_>, s: &SummaryStat) -> PyResult<Py<PyDict>> {
    let d = PyDict::new(py);
    d.set_item("mean", s.mean)?;
    d.set_item("variance", s.variance)?;
    d.set_item("std_error", s.std_error)?;
    Ok(d.into())
}

fn map_dict(py: Python<'_>, m: &BTreeMap<i64, u64>) -> PyResult<Py<PyDict>> {
    let d = PyDict::new(py);
    for (k, v) in m {
        d.set_item(k, v)?;
    }
    Ok(d.into())
}

fn check_sim_args(n: u64, b: usize, lmax: i64) -> PyResult<()> {
    if !(2..=6).contains(&b) || n < b as u64 || n >= (1 << 21) {
        return Err(PyValueError::new_err(format!(
            "need 2 <= b <= 6 and b <= n < 2^21, got n = {n}, b = {b}"
        )));
    }
    if lmax < 0 {
        return Err(PyValueError::new_err("need lmax >= 0"));
    }
    Ok(())
}

/// One full process run: event counts, vertex masses, and final shape.
#[pyfunction]
#[pyo3(signature = (n, b = 3, seed = None, lmax = 8))]
fn run_one(
    py: Python<'_>,
    n: u64,
    b: usize,
    seed: Option<u64>,
    lmax: i64,
) -> PyResult<Py<PyDict>> {
    check_sim_args(n, b, lmax)?;
    let seed = seed.unwrap_or(hyperphase::DEFAULT_SEED);
    let stats = run_process(n, b, seed, StopRule::ConnectedAndExcessExceeds(lmax));
    let d = PyDict::new(py);
    d.set_item("n", stats.n)?;
    d.set_item("b", stats.b)?;
    d.set_item("seed", stats.seed)?;
    d.set_item("edges_added", stats.edges_added)?;
    d.set_item("creations", map_dict(py, &stats.creations)?)?;
    d.set_item("statics", map_dict(py, &stats.statics)?)?;
    d.set_item("v", map_dict(py, &stats.v)?)?;
    d.set_item("vmax", map_dict(py, &stats.vmax)?)?;
    d.set_item("beta_events", map_dict(py, &stats.beta_events)?)?;
    d.set_item("tree_merges", stats.tree_merges)?;
    d.set_item("multicyclic_components", stats.multicyclic_components)?;
    d.set_item("components", stats.components)?;
    d.set_item("final_excess", stats.final_excess)?;
    Ok(d.into())
}

/// Monte Carlo over the process: per-excess mean/variance/standard error
/// for creations, statics, vertex masses, maxima, and multicyclic merges.
#[pyfunction]
#[pyo3(signature = (n, b = 3, reps = 100, seed = None, lmax = 8))]
fn simulate(
    py: Python<'_>,
    n: u64,
    b: usize,
    reps: u64,
    seed: Option<u64>,
    lmax: i64,
) -> PyResult<Py<PyDict>> {
    check_sim_args(n, b, lmax)?;
    if reps < 1 {
        return Err(PyValueError::new_err("need reps >= 1"));
    }
    let seed = seed.unwrap_or(hyperphase::DEFAULT_SEED);
    let summary = monte_carlo(n, b, reps, seed, StopRule::ConnectedAndExcessExceeds(lmax));
    let d = PyDict::new(py);
    d.set_item("n", summary.n)?;
    d.set_item("b", summary.b)?;
    d.set_item("reps", summary.reps)?;
    d.set_item("master_seed", summary.master_seed)?;
    for (name, map) in [
        ("creations", &summary.creations),
        ("statics", &summary.statics),
        ("v", &summary.v),
        ("vmax", &summary.vmax),
        ("beta_events", &summary.beta_events),
    ] {
        let group = PyDict::new(py);
        for (ell, s) in map {
            group.set_item(ell, stat_dict(py, s)?)?;
        }
        d.set_item(name, group)?;
    }
    Ok(d.into())
}

#[pymodule]
fn hyperphase_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(version, m)?)?;
    m.add_function(wrap_pyfunction!(default_seed, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_value, m)?)?;
    m.add_function(wrap_pyfunction!(hypertree_count, m)?)?;
    m.add_function(wrap_pyfunction!(connected_count, m)?)?;
    m.add_function(wrap_pyfunction!(excess_counts, m)?)?;
    m.add_function(wrap_pyfunction!(expect_unicyclic, m)?)?;
    m.add_function(wrap_pyfunction!(expect_static0, m)?)?;
    m.add_function(wrap_pyfunction!(expect_v0, m)?)?;
    m.add_function(wrap_pyfunction!(expect_gamma_sum, m)?)?;
    m.add_function(wrap_pyfunction!(expect_ell_creations, m)?)?;
    m.add_function(wrap_pyfunction!(expect_vell, m)?)?;
    m.add_function(wrap_pyfunction!(saddle, m)?)?;
    m.add_function(wrap_pyfunction!(saddle_exact_ln, m)?)?;
    m.add_function(wrap_pyfunction!(classify_merge, m)?)?;
    m.add_function(wrap_pyfunction!(run_one, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    Ok(())
}
