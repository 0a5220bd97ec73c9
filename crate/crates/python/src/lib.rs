//! Python module `greenring`.

use gr::finite_group as fg;
use gr::green::{self, CyclicContext, FactorizedClass};
use gr::jordan::{self, Method, DEFAULT_CAP};
use gr::kp::KpTable;
use gr::lie::{self, DynkinType};
use gr::reductive::{self as red, RootSystem};
use gr::util::rational_string;
use gr::verlinde::{self, VerlindeRing};
use gr::RingElement;
use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn err(e: gr::Error) -> PyErr {
    if e.is_internal() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

type Pairs = Vec<(usize, BigInt)>;

fn element(pairs: Vec<(usize, i64)>) -> RingElement {
    RingElement::from_pairs(pairs)
}

/// `L_i L_j` in `Ver_p` as `[(k, coeff)]`.
#[pyfunction]
fn fuse(p: u64, i: usize, j: usize) -> PyResult<Pairs> {
    Ok(verlinde::fuse(p, i, j).map_err(err)?.to_pairs())
}

/// `V^n` in `Ver_p`, with `V` given as `[(k, coeff)]`.
#[pyfunction]
fn ver_pow(p: u64, v: Vec<(usize, i64)>, n: u32) -> PyResult<Pairs> {
    let ring = VerlindeRing::get(p).map_err(err)?;
    Ok(ring.pow(&element(v), n).map_err(err)?.to_pairs())
}

/// `(value, err)` of `delta(V)` in `Ver_p`.
#[pyfunction]
fn delta(p: u64, v: Vec<(usize, i64)>) -> PyResult<(f64, f64)> {
    let a = verlinde::delta(p, &element(v)).map_err(err)?.evaluate();
    Ok((a.value, a.err))
}

/// `[(n, d_n, c_n)]` for `n = 1..=n_max` in `Ver_p`.
#[pyfunction]
fn dn_sequence(p: u64, v: Vec<(usize, i64)>, n_max: u32) -> PyResult<Vec<(u32, BigInt, f64)>> {
    let seq = verlinde::dn_sequence(p, &element(v), n_max).map_err(err)?;
    Ok(seq.into_iter().map(|e| (e.n, e.d_n, e.c_n.value)).collect())
}

/// Structure constants of `K_p`: `table[i][j]` is `X_i X_j` as pairs.
#[pyfunction]
fn kp_table(p: u64) -> PyResult<Vec<Vec<Pairs>>> {
    let k = KpTable::get(p).map_err(err)?;
    let n = k.table().size();
    (0..n)
        .map(|i| (0..n).map(|j| Ok(k.product(i, j).map_err(err)?.to_pairs())).collect())
        .collect()
}

/// `u_a u_b` in the semisimplified Green ring of `Z/p^n`.
#[pyfunction]
fn ssmul(p: u64, n: u32, a: u64, b: u64) -> PyResult<Pairs> {
    let ctx = CyclicContext::new(p, n).map_err(err)?;
    Ok(green::ssbar_mul(&ctx, a, b).map_err(err)?.to_pairs())
}

/// `(base, levels)` coordinates of `u_r`.
#[pyfunction]
fn factorize(p: u64, n: u32, r: u64) -> PyResult<(usize, Vec<usize>)> {
    let ctx = CyclicContext::new(p, n).map_err(err)?;
    let c = green::factorize(&ctx, r).map_err(err)?;
    Ok((c.base, c.levels))
}

/// Inverse of [`factorize`].
#[pyfunction]
fn reconstruct(p: u64, n: u32, base: usize, levels: Vec<usize>) -> PyResult<u64> {
    let ctx = CyclicContext::new(p, n).map_err(err)?;
    green::reconstruct(&ctx, &FactorizedClass { base, levels }).map_err(err)
}

/// Jordan block sizes of `J_a (x) J_b` in characteristic `p`.
#[pyfunction]
#[pyo3(signature = (p, a, b, cap = DEFAULT_CAP))]
fn jordan_type(p: u64, a: u64, b: u64, cap: u64) -> PyResult<Vec<u64>> {
    Ok(jordan::jordan_type(p, a, b, cap, Method::Graded).map_err(err)?.parts.clone())
}

/// Simple constituents of the adjoint representation of `type_name` mod `p`.
#[pyfunction]
fn g_decomp(type_name: &str, p: u64) -> PyResult<Vec<u64>> {
    let t: DynkinType = type_name.parse().map_err(err)?;
    lie::g_decomp(t, p).map_err(err)
}

/// `gauss_d(r)` for odd `r >= 5`.
#[pyfunction]
fn gauss_d(r: u64) -> PyResult<BigInt> {
    lie::gauss_d(r).map_err(err)
}

/// `(exact, ln)` of `d_n(V, s)`; `exact` is a fraction string or `None`.
#[pyfunction]
fn dns(system: &str, preset: &str, n: u32, s: f64) -> PyResult<(Option<String>, f64)> {
    let sys = RootSystem::builtin(system).map_err(err)?;
    let v = red::preset(&sys, preset).map_err(err)?;
    let d = red::dns(&sys, &v, n, s).map_err(err)?;
    Ok((d.exact.as_ref().map(rational_string), d.ln_value))
}

/// The limiting constant `C_V(s)`.
#[pyfunction]
fn cvs(system: &str, preset: &str, s: f64) -> PyResult<f64> {
    let sys = RootSystem::builtin(system).map_err(err)?;
    let v = red::preset(&sys, preset).map_err(err)?;
    red::cvs(&sys, &v, s).map_err(err)
}

/// `c_n(V)` for a built-in character table, as `(exact or None, value)`.
#[pyfunction]
fn group_cn(table: &str, rep: &str, n: u32) -> PyResult<(Option<String>, f64)> {
    let t = fg::builtin_table(table).map_err(err)?;
    let mult = t.parse_rep(rep).map_err(err)?;
    let c = fg::cn(&t, &mult, n).map_err(err)?;
    Ok((c.exact.as_ref().map(rational_string), c.value))
}

#[pymodule]
fn greenring(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(fuse, m)?)?;
    m.add_function(wrap_pyfunction!(ver_pow, m)?)?;
    m.add_function(wrap_pyfunction!(delta, m)?)?;
    m.add_function(wrap_pyfunction!(dn_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(kp_table, m)?)?;
    m.add_function(wrap_pyfunction!(ssmul, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct, m)?)?;
    m.add_function(wrap_pyfunction!(jordan_type, m)?)?;
    m.add_function(wrap_pyfunction!(g_decomp, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_d, m)?)?;
    m.add_function(wrap_pyfunction!(dns, m)?)?;
    m.add_function(wrap_pyfunction!(cvs, m)?)?;
    m.add_function(wrap_pyfunction!(group_cn, m)?)?;
    Ok(())
}
