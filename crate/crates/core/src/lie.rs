//! Dynkin-type data and the decomposition of `g_Q` into simple objects of
//! `Ver_p^+` by mirror pruning of `2 m_i + 1` over the exponents `m_i`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::util::require_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DynkinType {
    A(u32),
    B(u32),
    C(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_uppercase();
        let bad = || Error::UnknownName(format!("Dynkin type {s:?}"));
        let (head, rest) = s.split_at(1.min(s.len()));
        let n: u32 = rest.trim_start_matches('_').parse().map_err(|_| bad())?;
        let t = match (head, n) {
            ("A", n) if n >= 1 => DynkinType::A(n),
            ("B", n) if n >= 2 => DynkinType::B(n),
            ("C", n) if n >= 2 => DynkinType::C(n),
            ("D", n) if n >= 4 => DynkinType::D(n),
            ("E", 6) => DynkinType::E6,
            ("E", 7) => DynkinType::E7,
            ("E", 8) => DynkinType::E8,
            ("F", 4) => DynkinType::F4,
            ("G", 2) => DynkinType::G2,
            _ => return Err(bad()),
        };
        Ok(t)
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::B(n) => write!(f, "B{n}"),
            DynkinType::C(n) => write!(f, "C{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E6 => f.write_str("E6"),
            DynkinType::E7 => f.write_str("E7"),
            DynkinType::E8 => f.write_str("E8"),
            DynkinType::F4 => f.write_str("F4"),
            DynkinType::G2 => f.write_str("G2"),
        }
    }
}

impl Serialize for DynkinType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl DynkinType {
    pub fn rank(&self) -> u32 {
        match *self {
            DynkinType::A(n) | DynkinType::B(n) | DynkinType::C(n) | DynkinType::D(n) => n,
            DynkinType::E6 => 6,
            DynkinType::E7 => 7,
            DynkinType::E8 => 8,
            DynkinType::F4 => 4,
            DynkinType::G2 => 2,
        }
    }

    pub fn exponents(&self) -> Vec<u64> {
        match *self {
            DynkinType::A(n) => (1..=n as u64).collect(),
            DynkinType::B(n) | DynkinType::C(n) => (0..n as u64).map(|i| 2 * i + 1).collect(),
            DynkinType::D(n) => {
                let mut e: Vec<u64> = (0..n as u64 - 1).map(|i| 2 * i + 1).collect();
                e.push(n as u64 - 1);
                e.sort_unstable();
                e
            }
            DynkinType::E6 => vec![1, 4, 5, 7, 8, 11],
            DynkinType::E7 => vec![1, 5, 7, 9, 11, 13, 17],
            DynkinType::E8 => vec![1, 7, 11, 13, 17, 19, 23, 29],
            DynkinType::F4 => vec![1, 5, 7, 11],
            DynkinType::G2 => vec![1, 5],
        }
    }

    pub fn coxeter(&self) -> u64 {
        match *self {
            DynkinType::A(n) => n as u64 + 1,
            DynkinType::B(n) | DynkinType::C(n) => 2 * n as u64,
            DynkinType::D(n) => 2 * n as u64 - 2,
            DynkinType::E6 => 12,
            DynkinType::E7 => 18,
            DynkinType::E8 => 30,
            DynkinType::F4 => 12,
            DynkinType::G2 => 6,
        }
    }

    pub fn dual_coxeter(&self) -> u64 {
        match *self {
            DynkinType::B(n) => 2 * n as u64 - 1,
            DynkinType::C(n) => n as u64 + 1,
            DynkinType::F4 => 9,
            DynkinType::G2 => 4,
            t => t.coxeter(),
        }
    }

    /// Type of the dual root system.
    pub fn dual(&self) -> DynkinType {
        match *self {
            DynkinType::B(n) => DynkinType::C(n),
            DynkinType::C(n) => DynkinType::B(n),
            t => t,
        }
    }

    pub fn lacedness(&self) -> u64 {
        match self {
            DynkinType::B(_) | DynkinType::C(_) | DynkinType::F4 => 2,
            DynkinType::G2 => 3,
            _ => 1,
        }
    }

    pub fn dimension(&self) -> u64 {
        self.rank() as u64 * (self.coxeter() + 1)
    }

    pub fn summary(&self) -> TypeSummary {
        TypeSummary {
            name: *self,
            rank: self.rank(),
            exponents: self.exponents(),
            coxeter: self.coxeter(),
            dual_coxeter: self.dual_coxeter(),
            dual_type_dual_coxeter: self.dual().dual_coxeter(),
            lacedness: self.lacedness(),
            dimension: self.dimension(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TypeSummary {
    pub name: DynkinType,
    pub rank: u32,
    pub exponents: Vec<u64>,
    pub coxeter: u64,
    pub dual_coxeter: u64,
    pub dual_type_dual_coxeter: u64,
    pub lacedness: u64,
    pub dimension: u64,
}

/// `{2 m_i + 1}` with `p` removed and every `k > p` removed together with one
/// copy of `2p - k`, largest first. Result sorted ascending.
pub fn g_decomp(t: DynkinType, p: u64) -> Result<Vec<u64>> {
    require_prime(p)?;
    if p <= t.coxeter() {
        return Err(Error::Precondition(format!("need p > h = {} for {t}, got p = {p}", t.coxeter())));
    }
    let mut parts: Vec<u64> = t.exponents().iter().map(|m| 2 * m + 1).collect();
    parts.sort_unstable();
    if let Some(i) = parts.iter().position(|&k| k == p) {
        parts.remove(i);
    }
    while let Some(&k) = parts.last().filter(|&&k| k > p) {
        parts.pop();
        let mirror = 2 * p - k;
        let i = parts
            .iter()
            .position(|&x| x == mirror)
            .ok_or_else(|| Error::Internal(format!("{t} at p = {p}: {k} has no mirror {mirror}")))?;
        parts.remove(i);
    }
    Ok(parts)
}

#[derive(Clone, Debug, Serialize)]
pub struct StrangeCheck {
    pub name: DynkinType,
    /// `sum m (m+1) (2m+1) / 3`
    pub lhs: BigInt,
    /// `l h^v h^v(dual) (h+1) r / 6`
    pub rhs: BigInt,
    pub holds: bool,
}

/// Both sides of the strange formula; compared after clearing denominators.
pub fn strange_check(t: DynkinType) -> StrangeCheck {
    let lhs6: BigInt = t
        .exponents()
        .iter()
        .map(|&m| BigInt::from(2) * BigInt::from(m) * (m + 1) * (2 * m + 1))
        .sum();
    let rhs6 = BigInt::from(t.lacedness())
        * t.dual_coxeter()
        * t.dual().dual_coxeter()
        * (t.coxeter() + 1)
        * t.rank();
    StrangeCheck { name: t, lhs: &lhs6 / 6, rhs: &rhs6 / 6, holds: lhs6 == rhs6 }
}

/// Coefficients of the Gaussian binomial `binom(n, k)_q`, lowest degree first.
pub fn gaussian_binomial(n: usize, k: usize) -> Vec<BigInt> {
    if k > n {
        return vec![BigInt::zero()];
    }
    // rows[j] = binom(i, j)_q for the current i
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for i in 1..=n {
        let mut next = Vec::with_capacity(i.min(k) + 1);
        for j in 0..=i.min(k) {
            // binom(i, j) = binom(i-1, j-1) + q^j binom(i-1, j)
            let mut c: Vec<BigInt> = if j >= 1 { rows[j - 1].clone() } else { Vec::new() };
            if j < rows.len() && j < i {
                let shifted = &rows[j];
                if c.len() < shifted.len() + j {
                    c.resize(shifted.len() + j, BigInt::zero());
                }
                for (d, x) in shifted.iter().enumerate() {
                    c[d + j] += x;
                }
            }
            if c.is_empty() {
                c.push(BigInt::from(1));
            }
            next.push(c);
        }
        rows = next;
    }
    rows.swap_remove(k)
}

/// `a_0(r) - a_2(r)`: coefficients at `q^0` and `q^2` of `binom(r, 4)_q`
/// written symmetrically about its middle degree `2(r-4)`.
pub fn gauss_d(r: u64) -> Result<BigInt> {
    if r < 5 || r % 2 == 0 {
        return Err(Error::Precondition(format!("r must be odd and >= 5, got {r}")));
    }
    let poly = gaussian_binomial(r as usize, 4);
    let mid = 2 * (r as usize - 4);
    let at = |d: usize| poly.get(d).cloned().unwrap_or_default();
    Ok(at(mid) - at(mid + 2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank2Entry {
    pub name: String,
    pub parts: Vec<u64>,
}

/// Rank-two simple Lie algebras of `Ver_p^+` arising from `g_{Q,p}`.
pub fn rank2_catalogue(p: u64) -> Result<Vec<Rank2Entry>> {
    require_prime(p)?;
    if p < 5 {
        return Err(Error::Precondition(format!("p must be >= 5, got {p}")));
    }
    let mut out = Vec::new();
    let mut push = |name: &str, parts: Vec<u64>| out.push(Rank2Entry { name: name.into(), parts });
    if p >= 7 {
        push("A2", vec![3, 5]);
    }
    if p >= 11 {
        push("B2", vec![3, 7]);
        push("D2*", vec![3, p - 2]);
    }
    if p >= 17 {
        push("G2", vec![3, 11]);
    }
    if p == 23 {
        push("E2*", vec![3, 15]);
    }
    if p == 37 {
        push("E2**", vec![3, 23]);
    }
    Ok(out)
}

/// Exceptional-type decompositions that differ from characteristic zero.
pub const EXCEPTIONAL_TABLE: &[(DynkinType, u64, &[u64])] = &[
    (DynkinType::F4, 17, &[3, 15]),
    (DynkinType::E6, 17, &[3, 9, 15]),
    (DynkinType::F4, 19, &[3, 11]),
    (DynkinType::E6, 19, &[3, 9, 11, 17]),
    (DynkinType::F4, 23, &[3, 11, 15]),
    (DynkinType::E6, 23, &[3, 9, 11, 15, 17]),
    (DynkinType::E7, 23, &[3, 15]),
    (DynkinType::E7, 29, &[3, 11, 15, 19, 27]),
    (DynkinType::E7, 31, &[3, 11, 15, 19, 23]),
    (DynkinType::E8, 37, &[3, 23]),
    (DynkinType::E8, 41, &[3, 15, 27, 39]),
    (DynkinType::E8, 43, &[3, 15, 23, 35]),
    (DynkinType::E8, 47, &[3, 15, 23, 27, 39]),
    (DynkinType::E8, 53, &[3, 15, 23, 27, 35, 39]),
    (DynkinType::E8, 59, &[3, 15, 23, 27, 35, 39, 47]),
];

/// All nine families at a few ranks.
pub fn sample_types() -> Vec<DynkinType> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push(DynkinType::A(n));
        if n >= 2 {
            out.push(DynkinType::B(n));
            out.push(DynkinType::C(n));
        }
        if n >= 4 {
            out.push(DynkinType::D(n));
        }
    }
    out.extend([DynkinType::E6, DynkinType::E7, DynkinType::E8, DynkinType::F4, DynkinType::G2]);
    out
}
