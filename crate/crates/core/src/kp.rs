//! The based ring `K_p` with basis `X_0, ..., X_{p-1}` (index `i` is `X_i`),
//! defined by
//!
//! `X_0 = 1`, `X_1 X_i = X_{i-1} + X_i + X_{i+1}` for `1 <= i <= p-2`,
//! `X_1 X_{p-1} = X_{p-2}`,
//!
//! and its maps to `Gr(Ver_p)` and to the integers.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{FusionTable, RingElement};
use crate::util::require_prime;
use crate::verlinde::{DeltaValue, VerlindeRing};

#[derive(Debug)]
pub struct KpTable {
    p: u64,
    table: FusionTable,
}

static TABLES: OnceLock<Mutex<HashMap<u64, Arc<KpTable>>>> = OnceLock::new();

/// `X_1 X_j` from the defining relations.
fn x1_times(p: usize, j: usize) -> RingElement {
    match j {
        0 => RingElement::basis(1),
        _ if j == p - 1 => RingElement::basis(p - 2),
        _ => RingElement::from_pairs([(j - 1, 1), (j, 1), (j + 1, 1)]),
    }
}

fn x1_times_element(p: usize, a: &RingElement) -> RingElement {
    let mut out = RingElement::zero();
    for (j, c) in a.iter() {
        out.add_scaled(&x1_times(p, j), c);
    }
    out
}

/// Builds the multiplication table of `K_p` by the recursion
/// `X_{i+1} X_j = X_1 (X_i X_j) - X_i X_j - X_{i-1} X_j` and verifies it.
pub fn generate_kp(p: u64) -> Result<KpTable> {
    require_prime(p)?;
    let n = p as usize;
    let mut rows: Vec<Vec<RingElement>> = Vec::with_capacity(n);
    rows.push((0..n).map(RingElement::basis).collect());
    rows.push((0..n).map(|j| x1_times(n, j)).collect());
    for i in 1..n.saturating_sub(1) {
        let next: Vec<RingElement> = (0..n)
            .map(|j| {
                let cur = &rows[i][j];
                &(&x1_times_element(n, cur) - cur) - &rows[i - 1][j]
            })
            .collect();
        rows.push(next);
    }
    rows.truncate(n);
    for (i, row) in rows.iter().enumerate() {
        for (j, prod) in row.iter().enumerate() {
            if !prod.is_nonnegative() {
                return Err(Error::Internal(format!("K_{p}: X_{i} X_{j} = {prod} has a negative constant")));
            }
            if prod != &rows[j][i] {
                return Err(Error::Internal(format!("K_{p}: X_{i} X_{j} != X_{j} X_{i}")));
            }
        }
    }
    let table = FusionTable::from_fn(0, n, 0, |i, j| rows[i][j].clone())?;
    if let Some((i, j, k)) = table.find_nonassociative(n) {
        return Err(Error::Internal(format!("K_{p} is not associative at ({i}, {j}, {k})")));
    }
    Ok(KpTable { p, table })
}

impl KpTable {
    pub fn get(p: u64) -> Result<Arc<KpTable>> {
        let cache = TABLES.get_or_init(Default::default);
        if let Some(t) = cache.lock().expect("K_p cache poisoned").get(&p) {
            return Ok(t.clone());
        }
        let t = Arc::new(generate_kp(p)?);
        Ok(cache.lock().expect("K_p cache poisoned").entry(p).or_insert(t).clone())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn table(&self) -> &FusionTable {
        &self.table
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.table.mul(a, b)
    }

    pub fn product(&self, i: usize, j: usize) -> Result<&RingElement> {
        self.table.product(i, j)
    }
}

/// JSON form of the table: `{"p": P, "table": [[pair-list, ...], ...]}`.
#[derive(Serialize)]
pub struct KpTableJson<'a> {
    pub p: u64,
    pub table: Vec<Vec<&'a RingElement>>,
}

impl KpTable {
    pub fn to_json(&self) -> KpTableJson<'_> {
        KpTableJson { p: self.p, table: self.table.rows() }
    }
}

/// Images of `X_0, ..., X_{p-1}` in `Gr(Ver_p)` under the ring map fixed by
/// `X_1 -> x1`, computed by `X_{i+1} = X_1 X_i - X_i - X_{i-1}`.
pub fn images_in_verlinde(p: u64, x1: &RingElement) -> Result<Vec<RingElement>> {
    let ring = VerlindeRing::get(p)?;
    let n = p as usize;
    let mut out = vec![RingElement::basis(1), x1.clone()];
    for i in 1..n - 1 {
        let next = &(&ring.mul(x1, &out[i])? - &out[i]) - &out[i - 1];
        out.push(next);
    }
    out.truncate(n);
    Ok(out)
}

fn require_odd_at_least_5(p: u64) -> Result<()> {
    require_prime(p)?;
    if p < 5 {
        return Err(Error::Precondition(format!("p must be >= 5, got {p}")));
    }
    Ok(())
}

fn check_x_index(p: u64, i: usize) -> Result<()> {
    if i as u64 >= p {
        return Err(Error::OutOfRange { index: i as u64, lo: 0, hi: p - 1 });
    }
    Ok(())
}

/// `phi_1(X_i)`, the based-ring map with `X_1 -> L_1 + L_{p-2}`.
pub fn phi1(p: u64, i: usize) -> Result<RingElement> {
    require_odd_at_least_5(p)?;
    check_x_index(p, i)?;
    let x1 = RingElement::from_pairs([(1, 1), (p as usize - 2, 1)]);
    let img = images_in_verlinde(p, &x1)?.swap_remove(i);
    if !img.is_nonnegative() || img.support().any(|k| k % 2 == 0) {
        return Err(Error::Internal(format!("phi_1(X_{i}) = {img} is not a positive odd combination")));
    }
    Ok(img)
}

/// `phi_2(X_i)`, the ring map with `X_1 -> L_3`.
pub fn phi2(p: u64, i: usize) -> Result<RingElement> {
    require_odd_at_least_5(p)?;
    check_x_index(p, i)?;
    Ok(images_in_verlinde(p, &RingElement::basis(3))?.swap_remove(i))
}

/// `phi_3(X_i) = (-1)^i`.
pub fn phi3(p: u64, i: usize) -> Result<i64> {
    require_prime(p)?;
    check_x_index(p, i)?;
    Ok(if i % 2 == 0 { 1 } else { -1 })
}

/// Frobenius-Perron character `X_i -> [i+1]_q + [i]_q` with `[p]_q = 0`.
pub fn fpdim_char(p: u64, i: usize) -> Result<DeltaValue> {
    require_prime(p)?;
    check_x_index(p, i)?;
    let mut m = vec![BigInt::from(0); (p - 1) as usize];
    if i + 1 < p as usize {
        m[i] += BigInt::one();
    }
    if i >= 1 {
        m[i - 1] += BigInt::one();
    }
    Ok(DeltaValue { p, m })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(pairs: &[(usize, i64)]) -> RingElement {
        RingElement::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn k3_matches_relations() {
        let t = KpTable::get(3).unwrap();
        assert_eq!(t.product(1, 1).unwrap(), &el(&[(0, 1), (1, 1), (2, 1)]));
        assert_eq!(t.product(1, 2).unwrap(), &el(&[(1, 1)]));
        assert_eq!(t.product(2, 2).unwrap(), &el(&[(0, 1)]));
    }

    #[test]
    fn k2_is_group_ring() {
        let t = KpTable::get(2).unwrap();
        assert_eq!(t.product(1, 1).unwrap(), &el(&[(0, 1)]));
        assert_eq!(t.product(0, 1).unwrap(), &el(&[(1, 1)]));
    }

    #[test]
    fn k5_involution_example() {
        let t = KpTable::get(5).unwrap();
        assert_eq!(t.product(2, 4).unwrap(), &el(&[(2, 1)]));
    }

    #[test]
    fn phi_examples() {
        for p in [5u64, 7, 11] {
            assert_eq!(phi1(p, 0).unwrap(), RingElement::basis(1));
            assert_eq!(phi1(p, 1).unwrap(), el(&[(1, 1), (p as usize - 2, 1)]));
        }
        // (L_1+L_3)^2 - (L_1+L_3) - L_1 at p = 5:
        // (L_1+L_3)^2 = L_1 + 2 L_3 + (L_1 + L_3) = 2 L_1 + 3 L_3
        assert_eq!(phi1(5, 2).unwrap(), el(&[(3, 2)]));
        assert!(phi1(3, 1).is_err());
        assert_eq!(phi3(7, 4).unwrap(), 1);
        assert_eq!(phi3(7, 3).unwrap(), -1);
    }

    #[test]
    fn fpdim_examples() {
        assert_eq!(fpdim_char(7, 0).unwrap(), DeltaValue::one(7));
        assert_eq!(fpdim_char(7, 6).unwrap(), DeltaValue::qint(7, 6));
        let x1 = fpdim_char(3, 1).unwrap().evaluate().value;
        assert!((x1 - 2.0).abs() < 1e-14);
    }
}
