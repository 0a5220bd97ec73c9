//! Tensor powers of representations of semisimple groups in characteristic
//! zero: exact decomposition by the Weyl character formula and the
//! asymptotic constant `C_V(s)`.
//!
//! Weights are integer vectors in fundamental-weight coordinates,
//! `lambda_i = <lambda, alpha_i^v>`. The invariant form is normalized so long
//! roots have squared length 2 in every simple factor.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::num::NonZeroUsize;

use gauss_quad::{FiniteAboveNegOneF64, GaussJacobi};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::util::{bigint_ln, rational_to_f64};

pub type Weight = Vec<i64>;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

struct SimpleData {
    name: &'static str,
    cartan: &'static [&'static [i64]],
    /// squared lengths of the simple roots as (numerator, denominator)
    root_sq: &'static [(i64, i64)],
    degrees: &'static [u32],
}

const SIMPLE: &[SimpleData] = &[
    SimpleData { name: "A1", cartan: &[&[2]], root_sq: &[(2, 1)], degrees: &[2] },
    SimpleData { name: "A2", cartan: &[&[2, -1], &[-1, 2]], root_sq: &[(2, 1), (2, 1)], degrees: &[2, 3] },
    SimpleData { name: "B2", cartan: &[&[2, -1], &[-2, 2]], root_sq: &[(2, 1), (1, 1)], degrees: &[2, 4] },
    SimpleData { name: "G2", cartan: &[&[2, -3], &[-1, 2]], root_sq: &[(2, 3), (2, 1)], degrees: &[2, 6] },
];

#[derive(Clone, Debug, Serialize)]
pub struct Factor {
    pub name: String,
    pub offset: usize,
    pub rank: usize,
    pub degrees: Vec<u32>,
    pub lacedness: u32,
    pub positive_roots: usize,
    pub short_positive_roots: usize,
    pub weyl_order: usize,
}

#[derive(Clone, Debug)]
pub struct WeylElement {
    /// `w = s_{word[0]} s_{word[1]} ...`
    pub word: Vec<usize>,
    pub rho_image: Weight,
    pub sign: i64,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    name: String,
    cartan: Vec<Vec<i64>>,
    root_sq: Vec<BigRational>,
    gram: Vec<Vec<BigRational>>,
    positive_roots: Vec<Weight>,
    weyl: Vec<WeylElement>,
    factors: Vec<Factor>,
}

fn invert(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let prow = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(prow) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl RootSystem {
    /// `A1`, `A2`, `B2`, `G2`, or a product such as `A1xA2`.
    pub fn builtin(name: &str) -> Result<Self> {
        let parts: Vec<&SimpleData> = name
            .split(['x', 'X', '*'])
            .map(|part| {
                let part = part.trim();
                SIMPLE
                    .iter()
                    .find(|d| d.name.eq_ignore_ascii_case(part))
                    .ok_or_else(|| Error::UnknownName(format!("root system {part:?}")))
            })
            .collect::<Result<_>>()?;
        let rank: usize = parts.iter().map(|d| d.cartan.len()).sum();
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut root_sq = Vec::with_capacity(rank);
        let mut offset = 0;
        for d in &parts {
            for (i, row) in d.cartan.iter().enumerate() {
                for (j, &c) in row.iter().enumerate() {
                    cartan[offset + i][offset + j] = c;
                }
            }
            root_sq.extend(d.root_sq.iter().map(|&(a, b)| BigRational::new(a.into(), b.into())));
            offset += d.cartan.len();
        }
        let c_rat: Vec<Vec<BigRational>> = cartan.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let c_inv = invert(&c_rat).ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
        // (w_i, w_j) = (C^-1)_{ji} |alpha_j|^2 / 2
        let gram: Vec<Vec<BigRational>> = (0..rank)
            .map(|i| (0..rank).map(|j| &c_inv[j][i] * &root_sq[j] / q(2)).collect())
            .collect();
        let mut sys = RootSystem {
            name: parts.iter().map(|d| d.name).collect::<Vec<_>>().join("x"),
            cartan,
            root_sq,
            gram,
            positive_roots: Vec::new(),
            weyl: Vec::new(),
            factors: Vec::new(),
        };
        sys.weyl = sys.enumerate_weyl();
        sys.positive_roots = sys.enumerate_positive_roots();
        let mut offset = 0;
        for d in &parts {
            let r = d.cartan.len();
            let block = offset..offset + r;
            let in_block = |w: &Weight| w.iter().enumerate().all(|(i, &x)| x == 0 || block.contains(&i));
            let roots: Vec<&Weight> = sys.positive_roots.iter().filter(|a| in_block(a)).collect();
            let lens: Vec<BigRational> = roots.iter().map(|a| sys.inner(a, a)).collect();
            let long = lens.iter().max().cloned().unwrap_or_else(BigRational::one);
            let short = lens.iter().min().cloned().unwrap_or_else(BigRational::one);
            let ratio = &long / &short;
            let weyl_order = sys.weyl.iter().filter(|w| in_block(&sys.sub(&sys.rho(), &w.rho_image))).count();
            sys.factors.push(Factor {
                name: d.name.to_string(),
                offset,
                rank: r,
                degrees: d.degrees.to_vec(),
                lacedness: ratio.to_integer().to_u32().unwrap_or(1),
                positive_roots: roots.len(),
                short_positive_roots: if ratio.is_one() { 0 } else { lens.iter().filter(|l| **l < long).count() },
                weyl_order,
            });
            offset += r;
        }
        sys.validate()?;
        Ok(sys)
    }

    fn validate(&self) -> Result<()> {
        for f in &self.factors {
            let prod: usize = f.degrees.iter().map(|&d| d as usize).product();
            let exps: usize = f.degrees.iter().map(|&d| d as usize - 1).sum();
            if prod != f.weyl_order || exps != f.positive_roots {
                return Err(Error::Internal(format!("root data for {} are inconsistent", f.name)));
            }
        }
        let two_rho = self
            .positive_roots
            .iter()
            .fold(vec![0; self.rank()], |acc, a| self.add(&acc, a));
        if two_rho != vec![2; self.rank()] {
            return Err(Error::Internal("positive roots do not sum to 2 rho".into()));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram(&self) -> &[Vec<BigRational>] {
        &self.gram
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn weyl_group(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn rho(&self) -> Weight {
        vec![1; self.rank()]
    }

    /// Simple root `alpha_j` in fundamental-weight coordinates.
    pub fn simple_root(&self, j: usize) -> Weight {
        self.cartan.iter().map(|row| row[j]).collect()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.factors.iter().flat_map(|f| f.degrees.iter().copied()).collect()
    }

    fn add(&self, a: &[i64], b: &[i64]) -> Weight {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn sub(&self, a: &[i64], b: &[i64]) -> Weight {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> BigRational {
        let mut s = BigRational::zero();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    s += &self.gram[i][j] * q(x * y);
                }
            }
        }
        s
    }

    /// `(lambda, alpha^v) = 2 (lambda, alpha) / (alpha, alpha)`.
    pub fn coroot_pairing(&self, lambda: &[i64], alpha: &[i64]) -> BigRational {
        q(2) * self.inner(lambda, alpha) / self.inner(alpha, alpha)
    }

    pub fn reflect(&self, i: usize, lambda: &[i64]) -> Weight {
        let k = lambda[i];
        lambda.iter().zip(&self.cartan).map(|(&x, row)| x - k * row[i]).collect()
    }

    pub fn apply(&self, w: &WeylElement, lambda: &[i64]) -> Weight {
        w.word.iter().rev().fold(lambda.to_vec(), |acc, &i| self.reflect(i, &acc))
    }

    fn enumerate_weyl(&self) -> Vec<WeylElement> {
        let rho = self.rho();
        let mut seen: HashMap<Weight, usize> = HashMap::new();
        let mut out = vec![WeylElement { word: Vec::new(), rho_image: rho.clone(), sign: 1 }];
        seen.insert(rho, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for i in 0..self.rank() {
                let img = self.reflect(i, &out[k].rho_image);
                if seen.contains_key(&img) {
                    continue;
                }
                let mut word = vec![i];
                word.extend(&out[k].word);
                seen.insert(img.clone(), out.len());
                queue.push_back(out.len());
                out.push(WeylElement { word, rho_image: img, sign: -out[k].sign });
            }
        }
        out
    }

    fn enumerate_positive_roots(&self) -> Vec<Weight> {
        let rho = self.rho();
        let mut roots: Vec<Weight> = Vec::new();
        for j in 0..self.rank() {
            let a = self.simple_root(j);
            for w in &self.weyl {
                let b = self.apply(w, &a);
                if self.inner(&b, &rho).is_positive() && !roots.contains(&b) {
                    roots.push(b);
                }
            }
        }
        roots.sort();
        roots
    }

    pub fn is_dominant(&self, mu: &[i64]) -> bool {
        mu.iter().all(|&x| x >= 0)
    }

    fn check_weight(&self, mu: &[i64]) -> Result<()> {
        if mu.len() != self.rank() {
            return Err(Error::Precondition(format!("weight {mu:?} should have {} coordinates", self.rank())));
        }
        Ok(())
    }

    /// Dimension of `L_mu` by the Weyl dimension formula.
    pub fn weyl_dim(&self, mu: &[i64]) -> Result<BigInt> {
        self.check_weight(mu)?;
        if !self.is_dominant(mu) {
            return Err(Error::Precondition(format!("{mu:?} is not dominant")));
        }
        let rho = self.rho();
        let shifted = self.add(mu, &rho);
        let mut d = BigRational::one();
        for a in &self.positive_roots {
            d *= self.coroot_pairing(&shifted, a) / self.coroot_pairing(&rho, a);
        }
        if !d.is_integer() || !d.is_positive() {
            return Err(Error::Internal(format!("Weyl dimension of {mu:?} came out as {d}")));
        }
        Ok(d.to_integer())
    }
}

/// Weight multiset with big-integer multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightDistribution(pub BTreeMap<Weight, BigInt>);

impl WeightDistribution {
    pub fn from_weights<I: IntoIterator<Item = Weight>>(weights: I) -> Self {
        let mut m = BTreeMap::new();
        for w in weights {
            *m.entry(w).or_insert_with(BigInt::zero) += 1;
        }
        WeightDistribution(m)
    }

    pub fn dim(&self) -> BigInt {
        self.0.values().sum()
    }

    pub fn get(&self, w: &[i64]) -> BigInt {
        self.0.get(w).cloned().unwrap_or_default()
    }

    pub fn convolve(&self, other: &Self) -> Self {
        let mut m: BTreeMap<Weight, BigInt> = BTreeMap::new();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                let w: Weight = a.iter().zip(b).map(|(i, j)| i + j).collect();
                *m.entry(w).or_insert_with(BigInt::zero) += x * y;
            }
        }
        WeightDistribution(m)
    }

    pub fn is_w_invariant(&self, sys: &RootSystem) -> bool {
        self.0.iter().all(|(w, m)| (0..sys.rank()).all(|i| &self.get(&sys.reflect(i, w)) == m))
    }

    /// Restriction to the coordinates `range`.
    pub fn marginal(&self, range: std::ops::Range<usize>) -> Self {
        let mut m = BTreeMap::new();
        for (w, x) in &self.0 {
            *m.entry(w[range.clone()].to_vec()).or_insert_with(BigInt::zero) += x;
        }
        WeightDistribution(m)
    }
}

pub fn tensor_power(v: &WeightDistribution, n: u32) -> Result<WeightDistribution> {
    if n == 0 {
        return Err(Error::Precondition("tensor power needs n >= 1".into()));
    }
    let mut out = v.clone();
    for _ in 1..n {
        out = out.convolve(v);
    }
    Ok(out)
}

/// Built-in weight data. For products, give one name per factor separated by
/// commas, e.g. `L1,standard`.
pub fn preset(sys: &RootSystem, name: &str) -> Result<WeightDistribution> {
    let names: Vec<&str> = name.split(',').map(str::trim).collect();
    if names.len() != sys.factors().len() {
        return Err(Error::Precondition(format!(
            "{} needs {} preset names, got {name:?}",
            sys.name(),
            sys.factors().len()
        )));
    }
    let mut out = WeightDistribution::from_weights([Vec::new()]);
    for (f, nm) in sys.factors().iter().zip(names) {
        let single = RootSystem::builtin(&f.name)?;
        out = outer(&out, &simple_preset(&single, nm)?);
    }
    Ok(out)
}

fn outer(a: &WeightDistribution, b: &WeightDistribution) -> WeightDistribution {
    let mut m = BTreeMap::new();
    for (x, cx) in &a.0 {
        for (y, cy) in &b.0 {
            let mut w = x.clone();
            w.extend(y);
            m.insert(w, cx * cy);
        }
    }
    WeightDistribution(m)
}

fn simple_preset(sys: &RootSystem, name: &str) -> Result<WeightDistribution> {
    let all_roots = || {
        sys.positive_roots()
            .iter()
            .flat_map(|a| [a.clone(), a.iter().map(|x| -x).collect()])
            .collect::<Vec<_>>()
    };
    let zeros = |k: usize| std::iter::repeat_n(vec![0; sys.rank()], k);
    let lower = name.to_ascii_lowercase();
    let weights: Vec<Weight> = match (sys.name(), lower.as_str()) {
        (_, "trivial") => zeros(1).collect(),
        (_, "adjoint") => all_roots().into_iter().chain(zeros(sys.rank())).collect(),
        ("A1", s) if s.starts_with('l') => {
            let j: i64 = s[1..]
                .trim_matches(|c| c == '(' || c == ')')
                .parse()
                .map_err(|_| Error::UnknownName(format!("A1 preset {name:?}")))?;
            if j < 0 {
                return Err(Error::Precondition("L(j) needs j >= 0".into()));
            }
            (0..=j).map(|k| vec![j - 2 * k]).collect()
        }
        ("A2", "standard") => vec![vec![1, 0], vec![-1, 1], vec![0, -1]],
        ("A2", "dual") => vec![vec![0, 1], vec![1, -1], vec![-1, 0]],
        ("B2", "vector") | ("G2", "7-dim") | ("G2", "seven") => {
            let long = all_roots().iter().map(|a| sys.inner(a, a)).max().unwrap_or_else(BigRational::one);
            all_roots().into_iter().filter(|a| sys.inner(a, a) < long).chain(zeros(1)).collect()
        }
        ("B2", "spin") => vec![vec![0, 1], vec![1, -1], vec![-1, 1], vec![0, -1]],
        _ => return Err(Error::UnknownName(format!("preset {name:?} for {}", sys.name()))),
    };
    Ok(WeightDistribution::from_weights(weights))
}

/// `[M : L_mu] = sum_w (-1)^w dim M[mu + rho - w rho]`.
pub fn simple_multiplicity(sys: &RootSystem, m: &WeightDistribution, mu: &[i64]) -> Result<BigInt> {
    sys.check_weight(mu)?;
    if !sys.is_dominant(mu) {
        return Err(Error::Precondition(format!("{mu:?} is not dominant")));
    }
    let rho = sys.rho();
    let base = sys.add(mu, &rho);
    let mut total = BigInt::zero();
    for w in sys.weyl_group() {
        let c = m.get(&sys.sub(&base, &w.rho_image));
        if w.sign > 0 {
            total += c;
        } else {
            total -= c;
        }
    }
    if total.is_negative() {
        return Err(Error::NotARepresentation(format!("[M : L{mu:?}] = {total}")));
    }
    Ok(total)
}

/// All nonzero `[M : L_mu]`.
pub fn decompose(sys: &RootSystem, m: &WeightDistribution) -> Result<BTreeMap<Weight, BigInt>> {
    let mut out = BTreeMap::new();
    for mu in m.0.keys().filter(|w| sys.is_dominant(w)) {
        let k = simple_multiplicity(sys, m, mu)?;
        if !k.is_zero() {
            out.insert(mu.clone(), k);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct DnsValue {
    /// Present when `s` is an integer.
    #[serde(serialize_with = "ser_opt_rational")]
    pub exact: Option<BigRational>,
    pub ln_value: f64,
}

fn ser_opt_rational<S: serde::Serializer>(x: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(q) => crate::util::ser_rational(q, s),
        None => s.serialize_none(),
    }
}

impl DnsValue {
    pub fn value(&self) -> f64 {
        match &self.exact {
            Some(q) => rational_to_f64(q),
            None => self.ln_value.exp(),
        }
    }
}

fn ln_sum_exp(terms: &[f64]) -> f64 {
    let m = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
}

fn check_s(s: f64) -> Result<()> {
    if !s.is_finite() || s < -1.0 {
        return Err(Error::Precondition(format!("s must be a real number >= -1, got {s}")));
    }
    Ok(())
}

/// `d_n(V, s) = sum_mu [V^n : L_mu] (dim L_mu)^s` from a decomposition.
pub fn dns_from_decomposition(sys: &RootSystem, dec: &BTreeMap<Weight, BigInt>, s: f64) -> Result<DnsValue> {
    let integral_s = s.fract() == 0.0 && s.abs() < 64.0;
    let mut exact = integral_s.then(BigRational::zero);
    let mut logs = Vec::with_capacity(dec.len());
    for (mu, k) in dec {
        let d = sys.weyl_dim(mu)?;
        if let Some(acc) = exact.as_mut() {
            let e = s as i32;
            let pw = BigRational::from_integer(d.clone()).pow(e);
            *acc += pw * BigRational::from_integer(k.clone());
        }
        logs.push(bigint_ln(k) + s * bigint_ln(&d));
    }
    let ln_value = match &exact {
        Some(x) => bigint_ln(x.numer()) - bigint_ln(x.denom()),
        None => ln_sum_exp(&logs),
    };
    Ok(DnsValue { exact, ln_value })
}

pub fn dns(sys: &RootSystem, v: &WeightDistribution, n: u32, s: f64) -> Result<DnsValue> {
    check_s(s)?;
    let dec = decompose(sys, &tensor_power(v, n)?)?;
    dns_from_decomposition(sys, &dec, s)
}

fn total_positive_roots(sys: &RootSystem) -> usize {
    sys.positive_roots().len()
}

/// `d_n(V,s) / ((dim V)^n n^{(s-1)|R_+|/2})`, from a precomputed `d_n`.
pub fn asym_ratio_from(sys: &RootSystem, v: &WeightDistribution, n: u32, s: f64, d_n: &DnsValue) -> f64 {
    let ln_dim = bigint_ln(&v.dim());
    let expo = (s - 1.0) * total_positive_roots(sys) as f64 / 2.0;
    (d_n.ln_value - n as f64 * ln_dim - expo * (n as f64).ln()).exp()
}

pub fn asym_ratio(sys: &RootSystem, v: &WeightDistribution, s: f64, n: u32) -> Result<f64> {
    let d = dns(sys, v, n, s)?;
    Ok(asym_ratio_from(sys, v, n, s, &d))
}

/// `ln binom(n, floor(n/2))`.
pub fn ln_central_binomial(n: u64) -> f64 {
    let k = n / 2;
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

/// `binom(n, floor(n/2)) / 2^n * sqrt(n)`, the `s = 0` ratio for `A1`, `L(1)`.
pub fn a1_ratio_closed_form(n: u64) -> f64 {
    (ln_central_binomial(n) - n as f64 * std::f64::consts::LN_2 + 0.5 * (n as f64).ln()).exp()
}

/// `gamma_V` for each simple factor: `Q^{-1} = gamma_V ( , )` where
/// `Q(h) = Tr_V(h^2) / dim V`.
pub fn gamma(sys: &RootSystem, v: &WeightDistribution) -> Result<Vec<BigRational>> {
    sys.factors()
        .iter()
        .map(|f| {
            let range = f.offset..f.offset + f.rank;
            let marg = v.marginal(range.clone());
            gamma_simple(&sys.gram[range.clone()].iter().map(|r| r[range.clone()].to_vec()).collect::<Vec<_>>(), &marg, &f.name)
        })
        .collect()
}

fn gamma_simple(gram: &[Vec<BigRational>], v: &WeightDistribution, name: &str) -> Result<BigRational> {
    let r = gram.len();
    let dim = BigRational::from_integer(v.dim());
    if dim.is_zero() {
        return Err(Error::Precondition("empty weight data".into()));
    }
    let qm: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let s: BigInt = v.0.iter().map(|(w, m)| m * BigInt::from(w[i] * w[j])).sum();
                    BigRational::from_integer(s) / &dim
                })
                .collect()
        })
        .collect();
    let inv = invert(&qm).ok_or_else(|| Error::NotSimple(format!("trace form of V on {name} is degenerate")))?;
    let g = &inv[0][0] / &gram[0][0];
    for i in 0..r {
        for j in 0..r {
            if inv[i][j] != &g * &gram[i][j] {
                return Err(Error::NotSimple(format!("trace form of V on {name} is not proportional to the invariant form")));
            }
        }
    }
    Ok(g)
}

fn ln_factorial(n: u32) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// `C_V(s)`, product of the closed form over simple factors.
pub fn cvs(sys: &RootSystem, v: &WeightDistribution, s: f64) -> Result<f64> {
    check_s(s)?;
    let gammas = gamma(sys, v)?;
    let mut ln_c = 0.0;
    for (f, g) in sys.factors().iter().zip(&gammas) {
        let ln_g = rational_to_f64(g).ln();
        ln_c += (1.0 - s) / 2.0 * f.positive_roots as f64 * ln_g;
        ln_c -= (f.weyl_order as f64).ln();
        ln_c -= (1.0 - s) / 2.0 * f.short_positive_roots as f64 * (f.lacedness as f64).ln();
        for &d in &f.degrees {
            ln_c += -s * ln_factorial(d - 1) + ln_gamma(1.0 + (s + 1.0) * d as f64 / 2.0) - ln_gamma((s + 3.0) / 2.0);
        }
    }
    Ok(ln_c.exp())
}

#[derive(Clone, Debug, Serialize)]
pub struct MmoCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    /// Quadrature order per arc at which the angular integral settled.
    pub order: usize,
}

/// Orthonormal coordinates of the positive coroots, from a Cholesky factor
/// of the Gram matrix.
fn coroot_vectors(sys: &RootSystem) -> Vec<Vec<f64>> {
    let r = sys.rank();
    let g: Vec<Vec<f64>> = sys.gram.iter().map(|row| row.iter().map(rational_to_f64).collect()).collect();
    let mut l = vec![vec![0.0; r]; r];
    for i in 0..r {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            l[i][j] = if i == j { (g[i][i] - s).sqrt() } else { (g[i][j] - s) / l[j][j] };
        }
    }
    sys.positive_roots()
        .iter()
        .map(|a| {
            let scale = 2.0 / rational_to_f64(&sys.inner(a, a));
            // x = L^T a
            (0..r).map(|k| scale * (k..r).map(|i| l[i][k] * a[i] as f64).sum::<f64>()).collect()
        })
        .collect()
}

/// Right side of the Macdonald-Mehta-Opdam identity.
pub fn mmo_rhs(sys: &RootSystem, s: f64) -> f64 {
    let mut ln = 0.0;
    for f in sys.factors() {
        ln += (s + 1.0) / 2.0 * f.short_positive_roots as f64 * (f.lacedness as f64).ln();
        for &d in &f.degrees {
            ln += ln_gamma(1.0 + (s + 1.0) * d as f64 / 2.0) - ln_gamma((s + 3.0) / 2.0);
        }
    }
    ln.exp()
}

/// Compares `(2 pi)^{-r/2} int exp(-|x|^2/2) prod |(x, alpha^v)|^{s+1} dx`,
/// computed numerically in polar coordinates, with [`mmo_rhs`].
pub fn mmo_check(sys: &RootSystem, s: f64, tol: f64) -> Result<MmoCheck> {
    check_s(s)?;
    let r = sys.rank();
    if r > 2 {
        return Err(Error::Precondition(format!("numerical check limited to rank <= 2, got {r}")));
    }
    let coroots = coroot_vectors(sys);
    let e = s + 1.0;
    let angular_weight = |u: &[f64]| -> f64 {
        coroots.iter().map(|a| a.iter().zip(u).map(|(x, y)| x * y).sum::<f64>().abs().powf(e)).product()
    };
    // radial moment int_0^inf exp(-t^2/2) t^m dt
    let m = coroots.len() as f64 * e + r as f64 - 1.0;
    let radial = ((m - 1.0) / 2.0 * std::f64::consts::LN_2 + ln_gamma((m + 1.0) / 2.0)).exp();
    let (angular, order) = if r == 1 {
        (angular_weight(&[1.0]) + angular_weight(&[-1.0]), 1)
    } else {
        angular_integral(&coroots, e, tol, &angular_weight)?
    };
    let lhs = (2.0 * std::f64::consts::PI).powf(-(r as f64) / 2.0) * radial * angular;
    let rhs = mmo_rhs(sys, s);
    Ok(MmoCheck { lhs, rhs, residual: (lhs - rhs).abs() / rhs, order })
}

const MAX_ORDER: usize = 256;

/// Integral over the unit circle, split at the zeros of the root linear
/// forms. Each arc uses a Gauss-Jacobi rule whose weight absorbs the
/// `|.|^e` behaviour at both ends.
fn angular_integral(coroots: &[Vec<f64>], e: f64, tol: f64, f: &dyn Fn(&[f64]) -> f64) -> Result<(f64, usize)> {
    use std::f64::consts::{FRAC_PI_2, TAU};
    let mut cuts: Vec<f64> = coroots
        .iter()
        .flat_map(|a| {
            let phi = a[1].atan2(a[0]);
            [(phi + FRAC_PI_2).rem_euclid(TAU), (phi - FRAC_PI_2).rem_euclid(TAU)]
        })
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let arcs: Vec<(f64, f64)> = (0..cuts.len())
        .map(|k| {
            let a = cuts[k];
            let b = if k + 1 < cuts.len() { cuts[k + 1] } else { cuts[0] + TAU };
            (a, b)
        })
        .collect();
    let expo = FiniteAboveNegOneF64::new(e).ok_or_else(|| Error::Precondition(format!("exponent {e} must exceed -1")))?;
    let integrate = |order: usize| -> f64 {
        let rule = GaussJacobi::new(NonZeroUsize::new(order).expect("nonzero order"), expo, expo);
        arcs.iter()
            .map(|&(a, b)| {
                let half = (b - a) / 2.0;
                rule.integrate(a, b, |t| {
                    let x = (t - (a + b) / 2.0) / half;
                    f(&[t.cos(), t.sin()]) / ((1.0 - x) * (1.0 + x)).powf(e)
                })
            })
            .sum()
    };
    let mut order = 8;
    let mut prev = integrate(order);
    while order < MAX_ORDER {
        order *= 2;
        let cur = integrate(order);
        if (cur - prev).abs() <= tol * cur.abs() {
            return Ok((cur, order));
        }
        prev = cur;
    }
    Err(Error::Quadrature { residual: (integrate(MAX_ORDER) - prev).abs() / prev.abs() })
}

/// Summary of a system's data for display.
#[derive(Clone, Debug, Serialize)]
pub struct RootSystemSummary {
    pub name: String,
    pub rank: usize,
    pub positive_roots: Vec<Weight>,
    pub weyl_order: usize,
    pub degrees: Vec<u32>,
    pub factors: Vec<Factor>,
}

impl RootSystem {
    pub fn summary(&self) -> RootSystemSummary {
        RootSystemSummary {
            name: self.name.clone(),
            rank: self.rank(),
            positive_roots: self.positive_roots.clone(),
            weyl_order: self.weyl.len(),
            degrees: self.degrees(),
            factors: self.factors.clone(),
        }
    }

    pub fn root_squared_lengths(&self) -> &[BigRational] {
        &self.root_sq
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> RootSystem {
        RootSystem::builtin("A1").unwrap()
    }

    #[test]
    fn builtin_data() {
        let s = a1();
        assert_eq!((s.rank(), s.positive_roots().len(), s.weyl_group().len()), (1, 1, 2));
        let s = RootSystem::builtin("A2").unwrap();
        assert_eq!((s.positive_roots().len(), s.weyl_group().len()), (3, 6));
        let s = RootSystem::builtin("B2").unwrap();
        let f = &s.factors()[0];
        assert_eq!((f.positive_roots, f.short_positive_roots, f.lacedness), (4, 2, 2));
        let s = RootSystem::builtin("G2").unwrap();
        let f = &s.factors()[0];
        assert_eq!((f.positive_roots, f.short_positive_roots, f.lacedness, f.weyl_order), (6, 3, 3, 12));
        let s = RootSystem::builtin("A1xB2").unwrap();
        assert_eq!((s.rank(), s.weyl_group().len(), s.degrees()), (3, 16, vec![2, 2, 4]));
        assert!(RootSystem::builtin("E9").is_err());
    }

    #[test]
    fn a1_power_and_multiplicities() {
        let s = a1();
        let v = preset(&s, "L1").unwrap();
        let p4 = tensor_power(&v, 4).unwrap();
        let expect: Vec<(i64, i64)> = vec![(-4, 1), (-2, 4), (0, 6), (2, 4), (4, 1)];
        for (w, m) in expect {
            assert_eq!(p4.get(&[w]), BigInt::from(m));
        }
        assert_eq!(simple_multiplicity(&s, &p4, &[0]).unwrap(), BigInt::from(2));
        assert_eq!(simple_multiplicity(&s, &p4, &[4]).unwrap(), BigInt::one());
        assert_eq!(tensor_power(&v, 1).unwrap(), v);
    }

    #[test]
    fn weyl_dimensions() {
        let a2 = RootSystem::builtin("A2").unwrap();
        assert_eq!(a2.weyl_dim(&[1, 1]).unwrap(), BigInt::from(8));
        assert_eq!(a2.weyl_dim(&[0, 0]).unwrap(), BigInt::one());
        assert_eq!(a1().weyl_dim(&[5]).unwrap(), BigInt::from(6));
        let g2 = RootSystem::builtin("G2").unwrap();
        // short fundamental weight: 7, long: 14
        assert_eq!(g2.weyl_dim(&[1, 0]).unwrap(), BigInt::from(7));
        assert_eq!(g2.weyl_dim(&[0, 1]).unwrap(), BigInt::from(14));
        let b2 = RootSystem::builtin("B2").unwrap();
        assert_eq!(b2.weyl_dim(&[1, 0]).unwrap(), BigInt::from(5));
        assert_eq!(b2.weyl_dim(&[0, 1]).unwrap(), BigInt::from(4));
    }

    #[test]
    fn dns_examples() {
        let s = a1();
        let v = preset(&s, "L1").unwrap();
        assert_eq!(dns(&s, &v, 10, 0.0).unwrap().exact, Some(q(252)));
        assert_eq!(dns(&s, &v, 2, -1.0).unwrap().exact, Some(BigRational::new(4.into(), 3.into())));
        assert_eq!(dns(&s, &v, 7, 1.0).unwrap().exact, Some(q(128)));
    }

    #[test]
    fn gamma_and_cv() {
        let s = a1();
        for j in 1..6i64 {
            let v = preset(&s, &format!("L{j}")).unwrap();
            assert_eq!(gamma(&s, &v).unwrap(), vec![BigRational::new(6.into(), (j * (j + 2)).into())]);
            for sv in [-1.0, 0.0, 0.5, 2.0] {
                let expect = 2.0 / std::f64::consts::PI.sqrt()
                    * (2.0 * (j * (j + 2)) as f64 / 3.0).powf((sv - 1.0) / 2.0)
                    * ln_gamma(sv / 2.0 + 1.0).exp();
                assert!((cvs(&s, &v, sv).unwrap() / expect - 1.0).abs() < 1e-12);
            }
        }
        let c = cvs(&s, &preset(&s, "L1").unwrap(), 0.0).unwrap();
        assert!((c - (2.0 / std::f64::consts::PI).sqrt()).abs() < 1e-14);
        let two = RootSystem::builtin("A1xA1").unwrap();
        assert!(gamma(&two, &preset(&two, "L1,trivial").unwrap()).is_err());
    }

    #[test]
    fn mmo_small() {
        for name in ["A1", "A2", "B2", "G2", "A1xA1"] {
            let sys = RootSystem::builtin(name).unwrap();
            for s in [-1.0, 0.0, 0.5, 1.0, 2.0] {
                let r = mmo_check(&sys, s, 1e-12).unwrap();
                assert!(r.residual < 1e-9, "{name} s = {s}: {r:?}");
            }
        }
    }
}
