//! Jordan type of `J_a (x) J_b` over `F_p`, the ground truth for products in
//! the Green ring of a cyclic `p`-group.
//!
//! `J_a (x) J_b` acts on `k[X,Y]/(X^a, Y^b)` as multiplication by
//! `(1+X)(1+Y)`, so `J_a (x) J_b - I` is multiplication by `X + Y + XY`. The
//! substitution `Y -> Y(1+X)` is an automorphism turning this into
//! multiplication by `X + Y`, which is homogeneous of degree one. Hence
//! `rank (M - I)^k` is a sum over degrees `d` of the ranks of the small maps
//! `A_d -> A_{d+k}`, each with entries `binom(k, t) mod p`. That is the
//! default method; [`Method::Dense`] builds the Kronecker product literally.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::RingElement;
use crate::util::require_prime;

/// Default bound on `a * b`.
pub const DEFAULT_CAP: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Method {
    #[default]
    Graded,
    Dense,
}

/// Block sizes, ascending, together with the rank sequence they came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JordanType {
    pub parts: Vec<u64>,
    /// `rank (M - I)^k` for `k = 0, 1, ...` down to the first zero.
    pub ranks: Vec<u64>,
}

impl JordanType {
    fn from_ranks(ranks: Vec<u64>) -> Result<Self> {
        let mut parts = Vec::new();
        let at_least = |k: usize| -> i64 {
            let lo = ranks.get(k).copied().unwrap_or(0) as i64;
            ranks[k - 1] as i64 - lo
        };
        for k in 1..ranks.len() {
            let exact = at_least(k) - if k + 1 < ranks.len() { at_least(k + 1) } else { 0 };
            if exact < 0 {
                return Err(Error::Internal(format!("inconsistent rank sequence {ranks:?}")));
            }
            parts.extend(std::iter::repeat_n(k as u64, exact as usize));
        }
        Ok(JordanType { parts, ranks })
    }

    pub fn dimension(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// `sum v_r` over the blocks.
    pub fn to_element(&self) -> RingElement {
        RingElement::from_pairs(self.parts.iter().map(|&r| (r as usize, 1)))
    }
}

fn binom_mod(n: u64, k: u64, p: u64) -> u64 {
    // Lucas
    let (mut n, mut k) = (n, k);
    let mut out = 1u64;
    while k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        out = out * small_binom_mod(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    out
}

fn small_binom_mod(n: u64, k: u64, p: u64) -> u64 {
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * inv_mod(den, p) % p
}

fn inv_mod(x: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (x % p, p - 2, 1u64);
    if p == 2 {
        return x % 2;
    }
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Rank over `F_p` of a dense matrix with entries already reduced mod `p`.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> u64 {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col], p);
        for c in col..ncols {
            rows[rank][c] = rows[rank][c] * inv % p;
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            let f = row[col];
            if f != 0 {
                for c in col..ncols {
                    row[c] = (row[c] + (p - f) * prow[c]) % p;
                }
            }
        }
        rank += 1;
    }
    rank as u64
}

/// Rank over `F_2` of bit-packed rows.
pub fn rank_f2(mut rows: Vec<Vec<u64>>, ncols: usize) -> u64 {
    let mut rank = 0;
    for col in 0..ncols {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if row[w] & bit != 0 {
                for (x, y) in row[w..].iter_mut().zip(&prow[w..]) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank as u64
}

fn graded_ranks(p: u64, a: u64, b: u64) -> Vec<u64> {
    let top = a + b - 2;
    // X-exponents present in degree d
    let range = |d: u64| d.saturating_sub(b - 1)..=d.min(a - 1);
    let mut ranks = vec![a * b];
    let mut k = 1;
    while *ranks.last().unwrap() > 0 {
        let mut total = 0;
        for d in 0..=top.saturating_sub(k) {
            let (src, dst) = (range(d), range(d + k));
            let rows: Vec<Vec<u64>> = src
                .clone()
                .map(|i| {
                    dst.clone()
                        .map(|i2| if i2 >= i && i2 - i <= k { binom_mod(k, i2 - i, p) } else { 0 })
                        .collect()
                })
                .collect();
            total += rank_mod_p(rows, p);
        }
        ranks.push(total);
        k += 1;
    }
    ranks
}

fn dense_ranks(p: u64, a: u64, b: u64) -> Vec<u64> {
    let (a, b) = (a as usize, b as usize);
    let s = a * b;
    // N = J_a (x) J_b - I on the basis e_i (x) f_j, index i*b + j, J = I + shift
    let mut n = vec![vec![0u64; s]; s];
    for i in 0..a {
        for j in 0..b {
            let row = i * b + j;
            if i + 1 < a {
                n[row][(i + 1) * b + j] = 1;
            }
            if j + 1 < b {
                n[row][i * b + j + 1] = 1;
            }
            if i + 1 < a && j + 1 < b {
                n[row][(i + 1) * b + j + 1] = 1;
            }
        }
    }
    let rank = |m: &Vec<Vec<u64>>| -> u64 {
        if p == 2 {
            let words = s.div_ceil(64);
            let packed = m
                .iter()
                .map(|row| {
                    let mut w = vec![0u64; words];
                    for (c, &x) in row.iter().enumerate() {
                        if x & 1 == 1 {
                            w[c / 64] |= 1 << (c % 64);
                        }
                    }
                    w
                })
                .collect();
            rank_f2(packed, s)
        } else {
            rank_mod_p(m.clone(), p)
        }
    };
    let mut ranks = vec![s as u64];
    let mut power = n.clone();
    loop {
        let r = rank(&power);
        ranks.push(r);
        if r == 0 {
            break;
        }
        power = mat_mul(&power, &n, p);
    }
    ranks
}

fn mat_mul(x: &[Vec<u64>], y: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let s = y.first().map_or(0, Vec::len);
    x.iter()
        .map(|row| {
            let mut out = vec![0u64; s];
            for (k, &f) in row.iter().enumerate() {
                if f != 0 {
                    for (o, &v) in out.iter_mut().zip(&y[k]) {
                        *o = (*o + f * v) % p;
                    }
                }
            }
            out
        })
        .collect()
}

type Key = (u64, u64, u64, Method);
static MEMO: OnceLock<Mutex<HashMap<Key, Arc<JordanType>>>> = OnceLock::new();

/// Jordan type of `J_a (x) J_b` over `F_p`.
pub fn jordan_type(p: u64, a: u64, b: u64, cap: u64, method: Method) -> Result<Arc<JordanType>> {
    require_prime(p)?;
    if a == 0 || b == 0 {
        return Err(Error::Precondition("block sizes must be positive".into()));
    }
    let size = a.saturating_mul(b);
    if size > cap {
        return Err(Error::CapExceeded { a, b, size, cap });
    }
    let key = (p, a.min(b), a.max(b), method);
    let memo = MEMO.get_or_init(Default::default);
    if let Some(hit) = memo.lock().expect("oracle memo poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let ranks = match method {
        Method::Graded => graded_ranks(p, key.1, key.2),
        Method::Dense => dense_ranks(p, key.1, key.2),
    };
    let jt = Arc::new(JordanType::from_ranks(ranks)?);
    if jt.dimension() != size {
        return Err(Error::Internal(format!("J_{a} (x) J_{b}: blocks sum to {}", jt.dimension())));
    }
    Ok(memo.lock().expect("oracle memo poisoned").entry(key).or_insert(jt).clone())
}

/// `v_a v_b` in the Green ring of `Z/p^n`.
pub fn oracle_mul(p: u64, n: u32, a: u64, b: u64, cap: u64) -> Result<Arc<JordanType>> {
    let order = p
        .checked_pow(n)
        .ok_or_else(|| Error::Precondition(format!("{p}^{n} overflows")))?;
    for x in [a, b] {
        if x == 0 || x > order {
            return Err(Error::OutOfRange { index: x, lo: 1, hi: order });
        }
    }
    let jt = jordan_type(p, a, b, cap, Method::Graded)?;
    if jt.parts.iter().any(|&r| r > order) {
        return Err(Error::Internal(format!("block larger than {order} in v_{a} v_{b}")));
    }
    Ok(jt)
}

/// Bilinear extension of [`oracle_mul`] to v-basis elements.
pub fn green_mul_oracle(p: u64, n: u32, x: &RingElement, y: &RingElement, cap: u64) -> Result<RingElement> {
    x.require_nonnegative()?;
    y.require_nonnegative()?;
    let mut out = RingElement::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            let jt = oracle_mul(p, n, a as u64, b as u64, cap)?;
            let c: BigInt = ca * cb;
            out.add_scaled(&jt.to_element(), &c);
        }
    }
    Ok(out)
}
