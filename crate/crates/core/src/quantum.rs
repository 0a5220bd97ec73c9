//! Quantum integers `[k]_q = sin(k pi / p) / sin(pi / p)` at `q = exp(i pi / p)`
//! and rigorous sign decisions for integer combinations of them.
//!
//! Combinations `sum_k e_k [k]_q` are first evaluated in `f64` with an error
//! bound. When the bound does not separate the value from zero the
//! evaluation is repeated in binary fixed point on big integers, doubling the
//! precision until it does. Exact zeros are detected algebraically before any
//! numerics: the `[k]_q` for `1 <= k <= (p-1)/2` are linearly independent over
//! the rationals and `[k]_q = [p-k]_q`.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Value of `[k]_q` for `0 <= k <= p`. `[0]_q = [p]_q = 0`.
pub fn qint(p: u64, k: u64) -> f64 {
    if k == 0 || k >= p {
        return 0.0;
    }
    if p == 2 {
        return 1.0;
    }
    let x = std::f64::consts::PI / p as f64;
    // sin(k pi/p) evaluated on the nearer half to keep the argument small
    let kk = k.min(p - k) as f64;
    (kk * x).sin() / x.sin()
}

/// A float with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Approx {
    pub value: f64,
    pub err: f64,
}

impl Approx {
    pub fn exact(value: f64) -> Self {
        Approx { value, err: 0.0 }
    }

    pub fn lo(&self) -> f64 {
        self.value - self.err
    }

    pub fn hi(&self) -> f64 {
        self.value + self.err
    }
}

const QINT_REL_ERR: f64 = 16.0 * f64::EPSILON;

/// Folds coefficients onto `1..=(p-1)/2` using `[k]_q = [p-k]_q`.
/// Entry `j` of the result is the coefficient of `[j+1]_q`.
pub fn fold(p: u64, coeffs: &[BigInt]) -> Vec<BigInt> {
    if p == 2 {
        return vec![coeffs.iter().sum()];
    }
    let half = ((p - 1) / 2) as usize;
    let mut out = vec![BigInt::zero(); half];
    for (j, c) in coeffs.iter().enumerate() {
        let k = j as u64 + 1;
        if k >= p {
            continue;
        }
        let kk = k.min(p - k) as usize;
        out[kk - 1] += c;
    }
    out
}

/// `sum_k coeffs[k-1] [k]_q` in floating point with an absolute error bound.
pub fn evaluate(p: u64, coeffs: &[BigInt]) -> Approx {
    let mut value = 0.0;
    let mut abs_sum = 0.0;
    for (j, c) in coeffs.iter().enumerate() {
        let q = qint(p, j as u64 + 1);
        let term = c.to_f64().unwrap_or(f64::INFINITY) * q;
        value += term;
        abs_sum += term.abs();
    }
    let n = coeffs.len().max(1) as f64;
    Approx { value, err: abs_sum * (QINT_REL_ERR + 2.0 * n * f64::EPSILON) }
}

/// Sign of `sum_k coeffs[k-1] [k]_q`, decided exactly.
pub fn sign(p: u64, coeffs: &[BigInt]) -> Ordering {
    let folded = fold(p, coeffs);
    if folded.iter().all(Zero::is_zero) {
        return Ordering::Equal;
    }
    let approx = evaluate(p, &folded);
    if approx.lo() > 0.0 {
        return Ordering::Greater;
    }
    if approx.hi() < 0.0 {
        return Ordering::Less;
    }
    let mut bits = 256;
    loop {
        if let Some(ord) = fixed_sign(p, &folded, bits) {
            return ord;
        }
        bits *= 2;
    }
}

/// Compares two combinations `a` and `b` of quantum integers.
pub fn compare(p: u64, a: &[BigInt], b: &[BigInt]) -> Ordering {
    let n = a.len().max(b.len());
    let diff: Vec<BigInt> = (0..n)
        .map(|k| a.get(k).cloned().unwrap_or_default() - b.get(k).cloned().unwrap_or_default())
        .collect();
    sign(p, &diff)
}

fn fixed_sign(p: u64, folded: &[BigInt], bits: u32) -> Option<Ordering> {
    let guard = 32;
    let prec = bits + guard;
    let pi = fixed_pi(prec);
    let step = &pi / BigInt::from(p);
    // sum e_j sin(j pi/p); dividing by sin(pi/p) > 0 does not change the sign
    let mut total = BigInt::zero();
    let mut weight = BigInt::zero();
    for (j, c) in folded.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let x = &step * BigInt::from(j as u64 + 1);
        total += c * fixed_sin(&x, prec);
        weight += c.abs();
    }
    // each sin carries at most ~2^(guard-2) ulps of error at this precision
    let tol = (weight + BigInt::one()) << (guard as usize);
    if total.abs() > tol {
        Some(if total.sign() == Sign::Minus { Ordering::Less } else { Ordering::Greater })
    } else {
        None
    }
}

/// `pi * 2^prec`, rounded, via Machin's formula.
pub fn fixed_pi(prec: u32) -> BigInt {
    let one = BigInt::one() << (prec as usize);
    let a = fixed_atan_inv(5, &one);
    let b = fixed_atan_inv(239, &one);
    (a * 16) - (b * 4)
}

fn fixed_atan_inv(x: u64, one: &BigInt) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = one / &x;
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power = &power / &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// `sin(x)` for a fixed-point `x` in `[0, pi]`, by Taylor series.
pub fn fixed_sin(x: &BigInt, prec: u32) -> BigInt {
    let shift = prec as usize;
    let x2 = (x * x) >> shift;
    let mut term = x.clone();
    let mut sum = x.clone();
    let mut n: u64 = 1;
    loop {
        term = -((&term * &x2) >> shift) / BigInt::from((n + 1) * (n + 2));
        if term.is_zero() {
            break;
        }
        sum += &term;
        n += 2;
    }
    sum
}

/// Fixed-point value converted to `f64`.
pub fn fixed_to_f64(x: &BigInt, prec: u32) -> f64 {
    let bits = x.bits();
    if bits > 1000 {
        return f64::INFINITY;
    }
    let keep = 60i64;
    let drop = (bits as i64 - keep).max(0);
    let top = (x >> (drop as usize)).to_f64().unwrap_or(0.0);
    top * 2f64.powi(drop as i32 - prec as i32)
}
