//! The Green ring of `Z/p^n` over a field of characteristic `p`.
//!
//! `v_r` (`1 <= r <= p^n`) is the indecomposable module of dimension `r`, a
//! single Jordan block. Classes with `p | r` are negligible; the quotient by
//! them has basis `u_r` (`p` not dividing `r`) and factors as
//! `Gr(Ver_p) (x) K_p^(n-1)`. Both `v` and `u` elements are [`RingElement`]s
//! indexed by `r`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kp::{fpdim_char, KpTable};
use crate::ring::RingElement;
use crate::util::require_prime;
use crate::verlinde::{ratio, DeltaValue, DnEntry, VerlindeRing};

/// Largest group order accepted unless a caller raises it.
pub const DEFAULT_ORDER_CAP: u64 = 1 << 62;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicContext {
    p: u64,
    n: u32,
    ladder: Vec<u64>,
    order: u64,
}

impl CyclicContext {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        Self::with_cap(p, n, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(p: u64, n: u32, cap: u64) -> Result<Self> {
        require_prime(p)?;
        if n == 0 {
            return Err(Error::Precondition("need at least one level".into()));
        }
        let order = p
            .checked_pow(n)
            .filter(|&o| o <= cap)
            .ok_or_else(|| Error::Precondition(format!("{p}^{n} exceeds the order cap {cap}")))?;
        let ladder = (1..n).map(|t| p.pow(t)).collect();
        Ok(CyclicContext { p, n, ladder, order })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn levels(&self) -> u32 {
        self.n
    }

    /// `p^n`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `[p, p^2, ..., p^(n-1)]`.
    pub fn ladder(&self) -> &[u64] {
        &self.ladder
    }

    fn check_level(&self, q: u64) -> Result<()> {
        if self.ladder.contains(&q) {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "q = {q} is not one of p, ..., p^(n-1) for p = {}, n = {}",
                self.p, self.n
            )))
        }
    }

    pub fn check_index(&self, r: u64) -> Result<()> {
        if r == 0 || r > self.order {
            return Err(Error::OutOfRange { index: r, lo: 1, hi: self.order });
        }
        Ok(())
    }

    pub fn is_negligible(&self, r: u64) -> bool {
        r % self.p == 0
    }

    fn check_u_index(&self, r: u64) -> Result<()> {
        self.check_index(r)?;
        if self.is_negligible(r) {
            return Err(Error::Negligible(r));
        }
        Ok(())
    }

    fn check_u_element(&self, a: &RingElement) -> Result<()> {
        a.support().try_for_each(|r| self.check_u_index(r as u64))
    }
}

fn v_pairs(terms: &[(u64, i64)]) -> RingElement {
    let mut out = RingElement::zero();
    for &(r, c) in terms {
        // v_0 = 0
        if r != 0 {
            out.add_term(r as usize, BigInt::from(c));
        }
    }
    out
}

/// `w v_r` with `w = v_{q+1} - v_{q-1}`.
pub fn w_mul(ctx: &CyclicContext, q: u64, r: u64) -> Result<RingElement> {
    ctx.check_level(q)?;
    let pq = ctx.p * q;
    if r == 0 || r > pq {
        return Err(Error::OutOfRange { index: r, lo: 1, hi: pq });
    }
    Ok(if r <= q {
        v_pairs(&[(r + q, 1), (q - r, -1)])
    } else if r < (ctx.p - 1) * q {
        v_pairs(&[(r + q, 1), (r - q, 1)])
    } else {
        v_pairs(&[(r - q, 1), (pq, 2), (2 * pq - r - q, -1)])
    })
}

/// `v_{q-1} v_r`.
pub fn vq1_mul(ctx: &CyclicContext, q: u64, r: u64) -> Result<RingElement> {
    ctx.check_level(q)?;
    let pq = ctx.p * q;
    if r == 0 || r > pq {
        return Err(Error::OutOfRange { index: r, lo: 1, hi: pq });
    }
    let q_i = q as i64;
    let out = if r < q {
        v_pairs(&[(q - r, 1), (q, r as i64 - 1)])
    } else {
        let (r0, r1) = (r / q, r % q);
        let r1_i = r1 as i64;
        v_pairs(&[(q * (r0 + 1), r1_i - 1), (q * (r0 + 1) - r1, 1), (q * r0, q_i - r1_i - 1)])
    };
    if !out.is_nonnegative() || out.max_index().is_some_and(|m| m as u64 > pq) {
        return Err(Error::Internal(format!("v_{} v_{r} evaluated to {out}", q - 1)));
    }
    Ok(out)
}

/// Image in the semisimplified ring: negligible `v_r` dropped, `v_r -> u_r`.
pub fn project(ctx: &CyclicContext, a: &RingElement) -> RingElement {
    a.filter(|r| !ctx.is_negligible(r as u64))
}

/// A `u_r` written as `L_base (x) X_{levels[0]} (x) ... (x) X_{levels[n-2]}`,
/// where `levels[t-1]` belongs to `q = p^t`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FactorizedClass {
    pub base: usize,
    pub levels: Vec<usize>,
}

pub fn factorize(ctx: &CyclicContext, r: u64) -> Result<FactorizedClass> {
    ctx.check_u_index(r)?;
    let mut levels = vec![0; ctx.ladder.len()];
    let mut r = r;
    for (t, &q) in ctx.ladder.iter().enumerate().rev() {
        let m = r % (2 * q);
        let x = if m < q {
            let k = (r - m) / (2 * q);
            r = m;
            2 * k
        } else {
            let rr = 2 * q - m;
            let k = (r + rr) / (2 * q);
            r = rr;
            2 * k - 1
        };
        levels[t] = x as usize;
    }
    Ok(FactorizedClass { base: r as usize, levels })
}

pub fn reconstruct(ctx: &CyclicContext, c: &FactorizedClass) -> Result<u64> {
    let p = ctx.p as usize;
    if c.base == 0 || c.base >= p {
        return Err(Error::MalformedClass(format!("base index {} outside 1..={}", c.base, p - 1)));
    }
    if c.levels.len() != ctx.ladder.len() {
        return Err(Error::MalformedClass(format!(
            "expected {} level indices, got {}",
            ctx.ladder.len(),
            c.levels.len()
        )));
    }
    let mut r = c.base as u64;
    for (&x, &q) in c.levels.iter().zip(&ctx.ladder) {
        if x >= p {
            return Err(Error::MalformedClass(format!("level index {x} outside 0..={}", p - 1)));
        }
        let x = x as u64;
        r = match x {
            0 => r,
            _ if x % 2 == 1 => (x + 1) * q - r,
            _ => x * q + r,
        };
    }
    Ok(r)
}

/// Element of the semisimplified ring in factorized coordinates.
pub type Factorized = BTreeMap<FactorizedClass, BigInt>;

pub fn to_factorized(ctx: &CyclicContext, a: &RingElement) -> Result<Factorized> {
    let mut out = Factorized::new();
    for (r, c) in a.iter() {
        *out.entry(factorize(ctx, r as u64)?).or_default() += c;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

pub fn from_factorized(ctx: &CyclicContext, a: &Factorized) -> Result<RingElement> {
    let mut out = RingElement::zero();
    for (cls, c) in a {
        out.add_term(reconstruct(ctx, cls)? as usize, c.clone());
    }
    Ok(out)
}

/// Product of two factorized elements, level by level.
pub fn factorized_mul(ctx: &CyclicContext, a: &Factorized, b: &Factorized) -> Result<Factorized> {
    let ver = VerlindeRing::get(ctx.p)?;
    let kp = KpTable::get(ctx.p)?;
    let mut out = Factorized::new();
    for (ca, xa) in a {
        for (cb, xb) in b {
            let coeff = xa * xb;
            // partial products: (base, levels so far) -> multiplicity
            let mut partial: Vec<(FactorizedClass, BigInt)> = ver
                .table()
                .product(ca.base, cb.base)?
                .iter()
                .map(|(k, m)| (FactorizedClass { base: k, levels: Vec::new() }, m * &coeff))
                .collect();
            for (&la, &lb) in ca.levels.iter().zip(&cb.levels) {
                let prod = kp.product(la, lb)?;
                partial = partial
                    .into_iter()
                    .flat_map(|(cls, m)| {
                        prod.iter().map(move |(x, n)| {
                            let mut next = cls.clone();
                            next.levels.push(x);
                            (next, &m * n)
                        })
                    })
                    .collect();
            }
            for (cls, m) in partial {
                *out.entry(cls).or_default() += m;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Product of two u-basis elements in the semisimplified ring.
pub fn ssbar_mul_elements(ctx: &CyclicContext, a: &RingElement, b: &RingElement) -> Result<RingElement> {
    ctx.check_u_element(a)?;
    ctx.check_u_element(b)?;
    let prod = factorized_mul(ctx, &to_factorized(ctx, a)?, &to_factorized(ctx, b)?)?;
    from_factorized(ctx, &prod)
}

/// `u_r u_s`.
pub fn ssbar_mul(ctx: &CyclicContext, r: u64, s: u64) -> Result<RingElement> {
    ssbar_mul_elements(ctx, &RingElement::basis(r as usize), &RingElement::basis(s as usize))
}

/// `delta(u_r)` as an exact combination of quantum integers.
pub fn delta_class(ctx: &CyclicContext, r: u64) -> Result<DeltaValue> {
    let c = factorize(ctx, r)?;
    let mut d = DeltaValue::qint(ctx.p, c.base);
    for &x in &c.levels {
        d = d.mul(&fpdim_char(ctx.p, x)?)?;
    }
    Ok(d)
}

pub fn delta_cyclic(ctx: &CyclicContext, v: &RingElement) -> Result<DeltaValue> {
    ctx.check_u_element(v)?;
    v.require_nonnegative()?;
    let mut m = vec![BigInt::zero(); (ctx.p - 1) as usize];
    for (r, c) in v.iter() {
        let d = delta_class(ctx, r as u64)?;
        for (acc, x) in m.iter_mut().zip(&d.m) {
            *acc += c * x;
        }
    }
    Ok(DeltaValue { p: ctx.p, m })
}

/// `(n, d_n, c_n)` for `n = 1..=horizon`, by powering in factorized form.
pub fn dn_cyclic(ctx: &CyclicContext, v: &RingElement, horizon: u32) -> Result<Vec<DnEntry>> {
    if v.is_zero() {
        return Err(Error::Precondition("zero object has no growth sequence".into()));
    }
    if horizon == 0 {
        return Err(Error::Precondition("horizon must be >= 1".into()));
    }
    let delta = delta_cyclic(ctx, v)?;
    let base = to_factorized(ctx, v)?;
    let mut power = base.clone();
    let mut delta_pow = delta.clone();
    let mut out = Vec::with_capacity(horizon as usize);
    for n in 1..=horizon {
        if n > 1 {
            power = factorized_mul(ctx, &power, &base)?;
            delta_pow = delta_pow.mul(&delta)?;
        }
        let d_n: BigInt = power.values().sum();
        if d_n.is_negative() {
            return Err(Error::Internal(format!("negative summand count at n = {n}")));
        }
        let c_n = ratio(&d_n, &delta_pow.evaluate());
        out.push(DnEntry { n, d_n, delta_pow: delta_pow.clone(), c_n });
    }
    Ok(out)
}

/// Tagged JSON form of a u-basis element.
#[derive(Serialize)]
pub struct UBasis<'a> {
    pub basis: &'static str,
    pub terms: &'a RingElement,
}

pub fn u_json(a: &RingElement) -> UBasis<'_> {
    UBasis { basis: "u", terms: a }
}

/// Total dimension `sum r * coeff(v_r)` of a v-basis element.
pub fn dimension(a: &RingElement) -> BigInt {
    a.iter().map(|(r, c)| c * BigInt::from(r)).sum()
}

/// Whether every term of `a` is one.
pub fn is_single_class(a: &RingElement) -> bool {
    a.len() == 1 && a.iter().all(|(_, c)| c.is_one())
}
