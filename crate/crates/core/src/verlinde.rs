//! The Verlinde fusion ring `Gr(Ver_p)`, the growth character `delta`, the
//! sequences `d_n`, `c_n`, the constant `K_V`, and evaluators for the
//! growth bounds in characteristic `p`.
//!
//! The simple object `L_k` (`1 <= k <= p-1`) is basis index `k`. Fusion is the
//! truncated Clebsch-Gordan rule
//! `L_i L_j = sum L_k`, `k = |i-j|+1, |i-j|+3, ..., min(i+j-1, 2p-1-i-j)`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::f64::consts::{LN_2, PI};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quantum::{self, Approx};
use crate::ring::{summand_count, FusionTable, RingElement};
use crate::util::{big_to_f64, require_prime};

/// Truncated Clebsch-Gordan fusion of `L_i` and `L_j` in `Ver_p`.
pub fn fuse(p: u64, i: usize, j: usize) -> Result<RingElement> {
    require_prime(p)?;
    let top = (p - 1) as usize;
    for k in [i, j] {
        if k < 1 || k > top {
            return Err(Error::OutOfRange { index: k as u64, lo: 1, hi: top as u64 });
        }
    }
    let lo = i.abs_diff(j) + 1;
    let hi = (i + j - 1).min(2 * p as usize - 1 - i - j);
    Ok(RingElement::from_pairs((lo..=hi).step_by(2).map(|k| (k, 1))))
}

/// `Gr(Ver_p)` with its structure constants.
#[derive(Debug)]
pub struct VerlindeRing {
    p: u64,
    table: FusionTable,
}

static RINGS: OnceLock<Mutex<HashMap<u64, Arc<VerlindeRing>>>> = OnceLock::new();

impl VerlindeRing {
    pub fn new(p: u64) -> Result<Self> {
        require_prime(p)?;
        let size = (p - 1) as usize;
        let table = FusionTable::from_fn(1, size, 1, |i, j| fuse(p, i, j).expect("indices in range"))?;
        Ok(VerlindeRing { p, table })
    }

    /// Shared, lazily built ring for `p`.
    pub fn get(p: u64) -> Result<Arc<VerlindeRing>> {
        let cache = RINGS.get_or_init(Default::default);
        if let Some(r) = cache.lock().expect("ring cache poisoned").get(&p) {
            return Ok(r.clone());
        }
        let ring = Arc::new(VerlindeRing::new(p)?);
        Ok(cache.lock().expect("ring cache poisoned").entry(p).or_insert(ring).clone())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn table(&self) -> &FusionTable {
        &self.table
    }

    pub fn simple(&self, k: usize) -> Result<RingElement> {
        self.table.check_index(k)?;
        Ok(RingElement::basis(k))
    }

    /// Element `sum coeffs[k-1] L_k` from a dense coefficient vector.
    pub fn element<C: Into<BigInt> + Clone>(&self, coeffs: &[C]) -> Result<RingElement> {
        if coeffs.len() > self.table.size() {
            return Err(Error::Precondition(format!(
                "object has {} coefficients, Ver_{} has {} simples",
                coeffs.len(),
                self.p,
                self.table.size()
            )));
        }
        Ok(RingElement::from_dense(1, coeffs))
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.table.mul(a, b)
    }

    pub fn pow(&self, a: &RingElement, n: u32) -> Result<RingElement> {
        self.table.pow(a, n)
    }
}

/// `delta(V) = sum m_k [k]_q`, stored as the multiplicity vector `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaValue {
    pub p: u64,
    #[serde(serialize_with = "crate::util::ser_big_vec")]
    pub m: Vec<BigInt>,
}

impl DeltaValue {
    pub fn from_element(p: u64, v: &RingElement) -> Result<Self> {
        let size = (p - 1) as usize;
        let mut m = vec![BigInt::zero(); size];
        for (k, c) in v.iter() {
            if k < 1 || k > size {
                return Err(Error::InvalidBasis { index: k, lo: 1, hi: size + 1 });
            }
            m[k - 1] = c.clone();
        }
        Ok(DeltaValue { p, m })
    }

    pub fn one(p: u64) -> Self {
        let mut m = vec![BigInt::zero(); (p - 1) as usize];
        m[0] = 1.into();
        DeltaValue { p, m }
    }

    /// `[k]_q` as a value.
    pub fn qint(p: u64, k: usize) -> Self {
        let mut m = vec![BigInt::zero(); (p - 1) as usize];
        if k >= 1 && k < p as usize {
            m[k - 1] = 1.into();
        }
        DeltaValue { p, m }
    }

    pub fn to_element(&self) -> RingElement {
        RingElement::from_dense(1, &self.m)
    }

    /// Product through the fusion rules, which is how `[i]_q [j]_q` expands.
    pub fn mul(&self, other: &DeltaValue) -> Result<DeltaValue> {
        let ring = VerlindeRing::get(self.p)?;
        let prod = ring.mul(&self.to_element(), &other.to_element())?;
        DeltaValue::from_element(self.p, &prod)
    }

    pub fn scale(&self, k: &BigInt) -> DeltaValue {
        DeltaValue { p: self.p, m: self.m.iter().map(|c| c * k).collect() }
    }

    pub fn evaluate(&self) -> Approx {
        quantum::evaluate(self.p, &self.m)
    }

    /// Exact comparison of the real numbers represented.
    pub fn cmp_value(&self, other: &DeltaValue) -> Ordering {
        quantum::compare(self.p, &self.m, &other.m)
    }

    pub fn value_eq(&self, other: &DeltaValue) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

pub fn delta(p: u64, v: &RingElement) -> Result<DeltaValue> {
    require_prime(p)?;
    v.require_nonnegative()?;
    DeltaValue::from_element(p, v)
}

#[derive(Clone, Debug, Serialize)]
pub struct DnEntry {
    pub n: u32,
    #[serde(serialize_with = "crate::util::ser_big")]
    pub d_n: BigInt,
    /// `delta(V)^n` as an exact multiplicity vector.
    pub delta_pow: DeltaValue,
    pub c_n: Approx,
}

/// `(n, d_n, c_n)` for `n = 1..=horizon`.
pub fn dn_sequence(p: u64, v: &RingElement, horizon: u32) -> Result<Vec<DnEntry>> {
    let ring = VerlindeRing::get(p)?;
    v.require_nonnegative()?;
    if v.is_zero() {
        return Err(Error::Precondition("zero object has no growth sequence".into()));
    }
    if horizon == 0 {
        return Err(Error::Precondition("horizon must be >= 1".into()));
    }
    let powers = ring.table().powers(v, horizon)?;
    powers
        .iter()
        .enumerate()
        .map(|(k, pw)| {
            let d_n = summand_count(pw, |_| false)?;
            let delta_pow = DeltaValue::from_element(p, pw)?;
            let c_n = ratio(&d_n, &delta_pow.evaluate());
            Ok(DnEntry { n: k as u32 + 1, d_n, delta_pow, c_n })
        })
        .collect()
}

pub(crate) fn ratio(num: &BigInt, den: &Approx) -> Approx {
    let d = big_to_f64(num);
    let value = d / den.value;
    let rel = den.err / den.value + 2.0 * f64::EPSILON;
    Approx { value, err: value.abs() * rel }
}

#[derive(Clone, Debug, Serialize)]
pub struct Closure {
    pub indices: BTreeSet<usize>,
    /// Simple `L_k` in the closure with the largest `delta`.
    pub k_max: usize,
    pub k_v: Approx,
}

/// Smallest fusion-closed set of simples containing the unit and the support
/// of `V` (every simple of `Ver_p` is self-dual), and `K_V` over it.
pub fn support_closure(p: u64, v: &RingElement) -> Result<Closure> {
    let ring = VerlindeRing::get(p)?;
    if v.is_zero() {
        return Err(Error::Precondition("zero object".into()));
    }
    ring.table().check_element(v)?;
    let mut set: BTreeSet<usize> = v.support().collect();
    set.insert(1);
    loop {
        let mut next = set.clone();
        for &i in &set {
            for &j in &set {
                next.extend(ring.table().product(i, j)?.support());
            }
        }
        if next.len() == set.len() {
            break;
        }
        set = next;
    }
    let k_max = set
        .iter()
        .copied()
        .max_by(|&a, &b| DeltaValue::qint(p, a).cmp_value(&DeltaValue::qint(p, b)).then(b.cmp(&a)))
        .expect("closure contains the unit");
    Ok(Closure { k_v: Approx { value: quantum::qint(p, k_max as u64), err: 4.0 * f64::EPSILON }, indices: set, k_max })
}

#[derive(Clone, Debug, Serialize)]
pub struct P0Witness {
    pub n: u32,
    /// `c_n - 1/K_V`, numerically.
    pub margin: Approx,
    /// Exact verdict of `d_n K_V >= delta(V)^n`.
    pub holds: bool,
}

/// Checks `c_n >= 1/K_V` for `n <= horizon`.
pub fn check_p0(p: u64, v: &RingElement, horizon: u32) -> Result<Vec<P0Witness>> {
    let seq = dn_sequence(p, v, horizon)?;
    let closure = support_closure(p, v)?;
    let kv = DeltaValue::qint(p, closure.k_max);
    seq.into_iter()
        .map(|e| {
            let lhs = kv.scale(&e.d_n);
            let holds = lhs.cmp_value(&e.delta_pow) != Ordering::Less;
            let inv = 1.0 / closure.k_v.value;
            let value = e.c_n.value - inv;
            let err = e.c_n.err + closure.k_v.err * inv * inv + 2.0 * f64::EPSILON * (e.c_n.value.abs() + inv);
            Ok(P0Witness { n: e.n, margin: Approx { value, err }, holds })
        })
        .collect()
}

/// The constant `C` in the Jordan-Schur bound `(Cp)^(d-1)` for groups of
/// order prime to `p`, as stated for `p = 3, 5`.
pub const JORDAN_SCHUR_C: f64 = 24.0 * 24.0 * 24.0 * 24.0 * 24.0 * 24.0 * 24.0;

/// Linear coefficient `a_p`: `4 log 3 / 3` for `p = 2`, `24` for `p = 3`, and
/// for `p >= 5` the value `log 3 / 3 + log(C p)` with `C = 24^7`.
pub fn default_a(p: u64) -> Result<f64> {
    require_prime(p)?;
    Ok(match p {
        2 => 4.0 * 3f64.ln() / 3.0,
        3 => 24.0,
        _ => 3f64.ln() / 3.0 + (JORDAN_SCHUR_C * p as f64).ln(),
    })
}

fn require_d(d: f64) -> Result<()> {
    if d.is_finite() && d >= 1.0 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("delta must be >= 1, got {d}")))
    }
}

/// Upper bound for `lambda(V) = log(1/c(V))` in terms of `d = delta(V)`.
pub fn bound_lambda(p: u64, d: f64, a_p: Option<f64>) -> Result<f64> {
    require_d(d)?;
    let a = match a_p {
        Some(a) => a,
        None => default_a(p)?,
    };
    require_prime(p)?;
    Ok(if p <= 3 { a * d } else { a * d + PI * LN_2 / 2.0 * (p - 2) as f64 * d * d })
}

/// `log(3^(4d/3 - 1))`, the `p = 2` bound on `K_V` for simple `V`.
pub fn log_bound_kv_p2(d: f64) -> Result<f64> {
    require_d(d)?;
    Ok((4.0 * d / 3.0 - 1.0) * 3f64.ln())
}

/// `log f_p(d)`: `a_p d` for `p = 2, 3`, plus `(pi/2)(p-2) d^2 log 2` otherwise.
pub fn log_bound_fp(p: u64, d: f64, a_p: Option<f64>) -> Result<f64> {
    // same closed form as the lambda bound: log f_p(d) = a_p d + (pi/2)(p-2) d^2 log 2
    bound_lambda(p, d, a_p)
}

#[derive(Clone, Debug, Serialize)]
pub struct QintRow {
    pub k: u64,
    pub min_k: u64,
    pub middle: Approx,
    pub upper: Approx,
}

#[derive(Clone, Debug, Serialize)]
pub struct QintCheck {
    pub p: u64,
    pub rows: Vec<QintRow>,
    pub holds: bool,
}

/// Verifies `min(k, p-k) <= (p/2)[k]_q sin(pi/p) <= (pi/2)[k]_q` for `1 <= k < p`.
/// A correctly rounded double: half an ulp of error.
fn rounded(x: f64) -> Approx {
    Approx { value: x, err: x.abs() * f64::EPSILON / 2.0 }
}

pub fn qint_inequality_check(p: u64) -> Result<QintCheck> {
    if p < 2 {
        return Err(Error::Precondition("p must be >= 2".into()));
    }
    const PREC: u32 = 192;
    let pi = quantum::fixed_pi(PREC);
    let one = BigInt::from(1) << PREC as usize;
    // values within 2^-150 of each other count as equal
    let tol = BigInt::from(1) << (PREC as usize - 150);
    let s1 = quantum::fixed_sin(&(&pi / BigInt::from(p)), PREC);
    let mut rows = Vec::new();
    let mut holds = true;
    for k in 1..p {
        let mk = k.min(p - k);
        let sk = quantum::fixed_sin(&(&pi * BigInt::from(k.min(p - k)) / BigInt::from(p)), PREC);
        // middle = (p/2) sin(k pi/p); upper = (pi/2) sin(k pi/p) / sin(pi/p)
        let middle = &sk * BigInt::from(p) / BigInt::from(2);
        let upper = ((&pi * &sk) >> PREC as usize) * &one / (&s1 * BigInt::from(2));
        let lower = &one * BigInt::from(mk);
        let ok = &middle - &lower >= -&tol && &upper - &middle >= -&tol;
        holds &= ok;
        rows.push(QintRow {
            k,
            min_k: mk,
            middle: rounded(quantum::fixed_to_f64(&middle, PREC)),
            upper: rounded(quantum::fixed_to_f64(&upper, PREC)),
        });
    }
    Ok(QintCheck { p, rows, holds })
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundConsistency {
    pub delta: f64,
    pub log_k_v: Approx,
    pub bound_lambda: Approx,
    pub log_f_p: Approx,
    pub holds: bool,
}

/// `log K_V <= bound_lambda(p, delta(V))` and `K_V <= f_p(delta(V))`; since
/// `c(V) >= 1/K_V`, the first implies `lambda(V) <= bound_lambda`.
pub fn bound_consistency(p: u64, delta_value: f64, k_v: f64, a_p: Option<f64>) -> Result<BoundConsistency> {
    let bound = bound_lambda(p, delta_value, a_p)?;
    let log_f = log_bound_fp(p, delta_value, a_p)?;
    let log_k_v = k_v.ln();
    let holds = log_k_v <= bound * (1.0 + 1e-12) && log_k_v <= log_f * (1.0 + 1e-12);
    let ulps = |x: f64| Approx { value: x, err: x.abs() * 8.0 * f64::EPSILON };
    Ok(BoundConsistency {
        delta: delta_value,
        log_k_v: ulps(log_k_v),
        bound_lambda: ulps(bound),
        log_f_p: ulps(log_f),
        holds,
    })
}

impl DeltaValue {
    /// Integer value when every `[k]_q` is an integer (`p = 2, 3`).
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.p > 3 {
            return None;
        }
        Some(self.m.iter().sum())
    }
}
