//! Sparse exact arithmetic in based rings.
//!
//! A [`RingElement`] is a finite integer combination of basis indices. What an
//! index means is decided by whoever builds the ring: `L_k` in the Verlinde
//! ring, `X_i` in `K_p`, `v_r`/`u_r` in the Green rings of cyclic groups.
//! A [`FusionTable`] stores the structure constants of a finite based ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer combination of basis elements, kept in canonical form: no stored
/// coefficient is zero.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    coeffs: BTreeMap<usize, BigInt>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(index: usize) -> Self {
        Self::term(index, BigInt::one())
    }

    pub fn term(index: usize, coeff: BigInt) -> Self {
        let mut out = Self::zero();
        out.add_term(index, coeff);
        out
    }

    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (i, c) in pairs {
            out.add_term(i, c.into());
        }
        out
    }

    /// Element with coefficient `coeffs[k]` on index `offset + k`.
    pub fn from_dense<C: Into<BigInt> + Clone>(offset: usize, coeffs: &[C]) -> Self {
        Self::from_pairs(coeffs.iter().enumerate().map(|(k, c)| (offset + k, c.clone())))
    }

    pub fn add_term(&mut self, index: usize, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.coeffs.entry(index) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &RingElement, scale: &BigInt) {
        if scale.is_zero() {
            return;
        }
        for (&i, c) in &other.coeffs {
            self.add_term(i, c * scale);
        }
    }

    pub fn coeff(&self, index: usize) -> BigInt {
        self.coeffs.get(&index).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> + '_ {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| c.is_positive())
    }

    /// First index carrying a negative coefficient, reported as a
    /// not-an-object error.
    pub fn require_nonnegative(&self) -> Result<()> {
        match self.coeffs.iter().find(|(_, c)| c.is_negative()) {
            Some((&index, c)) => Err(Error::NotAnObject { index, coeff: c.to_string() }),
            None => Ok(()),
        }
    }

    /// Sum of all coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn map_indices(&self, mut f: impl FnMut(usize) -> usize) -> RingElement {
        Self::from_pairs(self.coeffs.iter().map(|(&i, c)| (f(i), c.clone())))
    }

    pub fn filter(&self, mut keep: impl FnMut(usize) -> bool) -> RingElement {
        RingElement {
            coeffs: self.coeffs.iter().filter(|(&i, _)| keep(i)).map(|(&i, c)| (i, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> RingElement {
        if k.is_zero() {
            return Self::zero();
        }
        RingElement { coeffs: self.coeffs.iter().map(|(&i, c)| (i, c * k)).collect() }
    }

    pub fn to_pairs(&self) -> Vec<(usize, BigInt)> {
        self.coeffs.iter().map(|(&i, c)| (i, c.clone())).collect()
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "e{i}")?;
            } else {
                write!(f, "{mag}*e{i}")?;
            }
        }
        Ok(())
    }
}

impl Add<&RingElement> for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(mut self, rhs: RingElement) -> RingElement {
        self += &rhs;
        self
    }
}

impl AddAssign<&RingElement> for RingElement {
    fn add_assign(&mut self, rhs: &RingElement) {
        for (&i, c) in &rhs.coeffs {
            self.add_term(i, c.clone());
        }
    }
}

impl Sub<&RingElement> for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (&i, c) in &rhs.coeffs {
            out.add_term(i, -c);
        }
        out
    }
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: RingElement) -> RingElement {
        &self - &rhs
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement { coeffs: self.coeffs.iter().map(|(&i, c)| (i, -c)).collect() }
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

impl Mul<&BigInt> for &RingElement {
    type Output = RingElement;
    fn mul(self, k: &BigInt) -> RingElement {
        self.scale(k)
    }
}

// JSON form: [[index, "coefficient"], ...] sorted by index.
impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(usize, String)> = self.coeffs.iter().map(|(&i, c)| (i, c.to_string())).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(usize, String)> = Vec::deserialize(d)?;
        let mut out = RingElement::zero();
        for (i, c) in pairs {
            let c: BigInt = c.parse().map_err(|_| D::Error::custom(format!("bad coefficient {c:?}")))?;
            out.add_term(i, c);
        }
        Ok(out)
    }
}

/// Structure constants of a commutative based ring on the contiguous index
/// range `offset .. offset + size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTable {
    offset: usize,
    size: usize,
    unit: usize,
    products: Vec<RingElement>,
}

impl FusionTable {
    /// Builds a table from a product rule. The rule is only called for
    /// `i <= j`; the table is symmetric by construction.
    pub fn from_fn(
        offset: usize,
        size: usize,
        unit: usize,
        mut rule: impl FnMut(usize, usize) -> RingElement,
    ) -> Result<Self> {
        let mut products = vec![RingElement::zero(); size * size];
        for a in 0..size {
            for b in a..size {
                let prod = rule(offset + a, offset + b);
                products[a * size + b] = prod.clone();
                products[b * size + a] = prod;
            }
        }
        let table = FusionTable { offset, size, unit, products };
        table.check_index(unit)?;
        for prod in &table.products {
            for i in prod.support() {
                table.check_index(i)?;
            }
        }
        Ok(table)
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.size
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if self.indices().contains(&index) {
            Ok(())
        } else {
            Err(Error::InvalidBasis { index, lo: self.offset, hi: self.offset + self.size })
        }
    }

    /// Product of two basis elements.
    pub fn product(&self, i: usize, j: usize) -> Result<&RingElement> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(&self.products[(i - self.offset) * self.size + (j - self.offset)])
    }

    pub fn unit_element(&self) -> RingElement {
        RingElement::basis(self.unit)
    }

    pub fn check_element(&self, a: &RingElement) -> Result<()> {
        a.support().try_for_each(|i| self.check_index(i))
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        let mut out = RingElement::zero();
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                let prod = &self.products[(i - self.offset) * self.size + (j - self.offset)];
                out.add_scaled(prod, &(ca * cb));
            }
        }
        Ok(out)
    }

    /// `a^n` for `n >= 1`, by binary exponentiation.
    pub fn pow(&self, a: &RingElement, n: u32) -> Result<RingElement> {
        if n == 0 {
            return Err(Error::Precondition("power exponent must be >= 1".into()));
        }
        self.check_element(a)?;
        let mut result: Option<RingElement> = None;
        let mut base = a.clone();
        let mut e = n;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => self.mul(&r, &base)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = self.mul(&base, &base)?;
        }
        Ok(result.expect("n >= 1"))
    }

    /// The sequence `a, a^2, ..., a^n` by repeated multiplication.
    pub fn powers(&self, a: &RingElement, n: u32) -> Result<Vec<RingElement>> {
        let mut out = Vec::with_capacity(n as usize);
        let mut cur = a.clone();
        self.check_element(a)?;
        for k in 0..n {
            if k > 0 {
                cur = self.mul(&cur, a)?;
            }
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// First `(i, j)` where `e_i e_j != e_j e_i`, if any.
    pub fn find_noncommuting(&self) -> Option<(usize, usize)> {
        for a in 0..self.size {
            for b in a + 1..self.size {
                if self.products[a * self.size + b] != self.products[b * self.size + a] {
                    return Some((a + self.offset, b + self.offset));
                }
            }
        }
        None
    }

    /// First triple violating associativity among the first `cap` indices.
    pub fn find_nonassociative(&self, cap: usize) -> Option<(usize, usize, usize)> {
        let n = self.size.min(cap);
        let idx: Vec<usize> = (0..n).map(|k| k + self.offset).collect();
        for &i in &idx {
            for &j in &idx {
                let ij = self.products[(i - self.offset) * self.size + (j - self.offset)].clone();
                for &k in &idx {
                    let left = self.mul(&ij, &RingElement::basis(k)).ok()?;
                    let jk = &self.products[(j - self.offset) * self.size + (k - self.offset)];
                    let right = self.mul(&RingElement::basis(i), jk).ok()?;
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// First index whose product with the unit is not itself.
    pub fn find_unit_failure(&self) -> Option<usize> {
        self.indices().find(|&i| self.products[(self.unit - self.offset) * self.size + (i - self.offset)] != RingElement::basis(i))
    }

    pub fn has_nonnegative_constants(&self) -> bool {
        self.products.iter().all(RingElement::is_nonnegative)
    }

    /// Dense `size x size` view of the structure constants, each entry a
    /// pair list.
    pub fn rows(&self) -> Vec<Vec<&RingElement>> {
        (0..self.size).map(|a| (0..self.size).map(|b| &self.products[a * self.size + b]).collect()).collect()
    }
}

/// Number of summands of `a` whose index is not negligible.
pub fn summand_count(a: &RingElement, negligible: impl Fn(usize) -> bool) -> Result<BigInt> {
    a.require_nonnegative()?;
    Ok(a.iter().filter(|(i, _)| !negligible(*i)).map(|(_, c)| c).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_group_ring() -> FusionTable {
        // basis 0 = 1, 1 = g with g^2 = 1
        FusionTable::from_fn(0, 2, 0, |i, j| RingElement::basis((i + j) % 2)).unwrap()
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let mut a = RingElement::from_pairs([(3, 2), (5, -1)]);
        a.add_term(3, BigInt::from(-2));
        assert_eq!(a, RingElement::from_pairs([(5, -1)]));
        assert_eq!(a.len(), 1);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn json_is_sorted_pair_list() {
        let a = RingElement::from_pairs([(7, 3), (1, -12)]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"[[1,"-12"],[7,"3"]]"#);
        let back: RingElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn unit_and_powers() {
        let t = z2_group_ring();
        let g = RingElement::basis(1);
        assert_eq!(t.mul(&t.unit_element(), &g).unwrap(), g);
        assert_eq!(t.pow(&t.unit_element(), 5).unwrap(), t.unit_element());
        assert_eq!(t.pow(&g, 2).unwrap(), t.unit_element());
        let v = RingElement::from_pairs([(0, 1), (1, 1)]);
        assert_eq!(t.pow(&v, 3).unwrap(), RingElement::from_pairs([(0, 4), (1, 4)]));
        assert!(t.pow(&v, 0).is_err());
    }

    #[test]
    fn invalid_basis_is_rejected() {
        let t = z2_group_ring();
        let err = t.mul(&RingElement::basis(2), &RingElement::basis(0)).unwrap_err();
        assert!(matches!(err, Error::InvalidBasis { index: 2, .. }));
    }

    #[test]
    fn summand_count_rules() {
        let a = RingElement::from_pairs([(1, 1), (3, 1)]);
        assert_eq!(summand_count(&a, |_| false).unwrap(), BigInt::from(2));
        assert_eq!(summand_count(&a, |i| i % 3 == 0).unwrap(), BigInt::from(1));
        let bad = RingElement::from_pairs([(1, 1), (2, -1)]);
        assert!(matches!(summand_count(&bad, |_| false), Err(Error::NotAnObject { index: 2, .. })));
    }
}
