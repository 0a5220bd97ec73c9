//! Growth of tensor powers of representations of finite groups in the
//! non-modular case, from character tables.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::util::{parse_rational, rational_string, rational_to_f64};

/// Comparison tolerance for tables with irrational entries.
pub const COMPLEX_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub name: String,
    pub size: u64,
    pub inverse: usize,
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub name: String,
    pub order: u64,
    pub classes: Vec<ClassInfo>,
    pub irreps: Vec<String>,
    /// Exact values, present when every entry is rational.
    pub exact: Option<Vec<Vec<BigRational>>>,
    pub values: Vec<Vec<Complex64>>,
}

fn r(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl CharacterTable {
    pub fn rational(name: &str, classes: Vec<ClassInfo>, irreps: Vec<String>, chars: Vec<Vec<BigRational>>) -> Result<Self> {
        let order = classes.iter().map(|c| c.size).sum();
        let values = chars
            .iter()
            .map(|row| row.iter().map(|x| Complex64::new(rational_to_f64(x), 0.0)).collect())
            .collect();
        let t = CharacterTable { name: name.into(), order, classes, irreps, exact: Some(chars), values };
        t.validate()?;
        Ok(t)
    }

    pub fn complex(name: &str, classes: Vec<ClassInfo>, irreps: Vec<String>, values: Vec<Vec<Complex64>>) -> Result<Self> {
        let order = classes.iter().map(|c| c.size).sum();
        let t = CharacterTable { name: name.into(), order, classes, irreps, exact: None, values };
        t.validate()?;
        Ok(t)
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    fn validate(&self) -> Result<()> {
        let k = self.classes.len();
        let bad = |m: String| Err(Error::Precondition(format!("character table {}: {m}", self.name)));
        if k == 0 || self.values.len() != k || self.values.iter().any(|row| row.len() != k) {
            return bad(format!("needs a square table with {k} classes"));
        }
        if self.irreps.len() != k {
            return bad("one name per irreducible required".into());
        }
        if self.classes.iter().any(|c| c.inverse >= k || c.size == 0) {
            return bad("class sizes must be positive and inverse indices in range".into());
        }
        let g = self.order as f64;
        for i in 0..k {
            for j in 0..k {
                let row = self.row_inner_f(&self.values[i], &self.values[j]);
                let col: Complex64 = (0..k).map(|l| self.values[l][i] * self.values[l][self.classes[j].inverse]).sum();
                let row_want = if i == j { 1.0 } else { 0.0 };
                let col_want = if i == j { g / self.classes[i].size as f64 } else { 0.0 };
                if (row - row_want).norm() > COMPLEX_TOL * g || (col - col_want).norm() > COMPLEX_TOL * g {
                    return bad(format!("orthogonality fails at ({i}, {j})"));
                }
            }
        }
        if let Some(ex) = &self.exact {
            for i in 0..k {
                for j in 0..k {
                    let row = self.row_inner_exact(&ex[i], &ex[j]);
                    if row != if i == j { BigRational::one() } else { BigRational::zero() } {
                        return bad(format!("exact row orthogonality fails at ({i}, {j})"));
                    }
                }
            }
            let dims: BigRational = (0..k).map(|l| &ex[l][self.identity()] * &ex[l][self.identity()]).sum();
            if dims != r(self.order as i64) {
                return bad("sum of squared dimensions differs from the group order".into());
            }
        }
        Ok(())
    }

    /// `<a, b> = |G|^-1 sum_c |c| a(c) b(c^-1)`.
    fn row_inner_f(&self, a: &[Complex64], b: &[Complex64]) -> Complex64 {
        let s: Complex64 = self
            .classes
            .iter()
            .enumerate()
            .map(|(c, cl)| a[c] * b[cl.inverse] * cl.size as f64)
            .sum();
        s / self.order as f64
    }

    fn row_inner_exact(&self, a: &[BigRational], b: &[BigRational]) -> BigRational {
        let s: BigRational = self
            .classes
            .iter()
            .enumerate()
            .map(|(c, cl)| &a[c] * &b[cl.inverse] * r(cl.size as i64))
            .sum();
        s / r(self.order as i64)
    }

    /// The class of the identity: the only column where every irreducible
    /// takes its degree, a positive real maximum of `|chi|` over the row.
    pub fn identity(&self) -> usize {
        (0..self.num_classes())
            .find(|&c| {
                self.values.iter().all(|row| {
                    let top = row.iter().map(|z| z.norm()).fold(0.0, f64::max);
                    (row[c] - Complex64::new(top, 0.0)).norm() < COMPLEX_TOL * top.max(1.0)
                })
            })
            .unwrap_or(0)
    }

    pub fn dims(&self) -> Vec<u64> {
        let e = self.identity();
        self.values.iter().map(|row| row[e].re.round() as u64).collect()
    }

    pub fn irrep_index(&self, name: &str) -> Result<usize> {
        self.irreps
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownName(format!("irreducible {name:?} of {}", self.name)))
    }

    /// Parses `name`, `k*name + ...`, or a comma list of multiplicities.
    pub fn parse_rep(&self, spec: &str) -> Result<Vec<u64>> {
        let k = self.num_classes();
        let spec = spec.trim();
        if spec.split(',').all(|t| t.trim().parse::<u64>().is_ok()) {
            let m: Vec<u64> = spec.split(',').map(|t| t.trim().parse().unwrap_or(0)).collect();
            if m.len() != k {
                return Err(Error::Parse(format!("expected {k} multiplicities, got {}", m.len())));
            }
            return Ok(m);
        }
        let alias = if spec == "standard" && self.name.starts_with('S') { self.standard_name() } else { None };
        let mut m = vec![0; k];
        for term in alias.as_deref().unwrap_or(spec).split('+') {
            let (mult, name) = match term.trim().split_once('*') {
                Some((a, b)) => (a.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad multiplicity in {term:?}")))?, b.trim()),
                None => (1, term.trim()),
            };
            m[self.irrep_index(name)?] += mult;
        }
        Ok(m)
    }

    fn standard_name(&self) -> Option<String> {
        let m: usize = self.name[1..].parse().ok()?;
        Some(partition_name(&[m - 1, 1]))
    }

    fn char_exact(&self, mult: &[u64]) -> Option<Vec<BigRational>> {
        let ex = self.exact.as_ref()?;
        Some(
            (0..self.num_classes())
                .map(|c| mult.iter().zip(ex).map(|(&m, row)| r(m as i64) * &row[c]).sum())
                .collect(),
        )
    }

    fn char_f(&self, mult: &[u64]) -> Vec<Complex64> {
        (0..self.num_classes())
            .map(|c| mult.iter().zip(&self.values).map(|(&m, row)| row[c] * m as f64).sum())
            .collect()
    }

    fn check_rep(&self, mult: &[u64]) -> Result<()> {
        if mult.len() != self.num_classes() {
            return Err(Error::Precondition(format!("representation needs {} multiplicities", self.num_classes())));
        }
        if mult.iter().all(|&m| m == 0) {
            return Err(Error::Precondition("zero representation".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CnValue {
    pub n: u32,
    /// Number of simple summands of `V^n`.
    #[serde(serialize_with = "crate::util::ser_big")]
    pub summands: BigInt,
    #[serde(serialize_with = "ser_opt")]
    pub exact: Option<BigRational>,
    pub value: f64,
}

fn ser_opt<S: serde::Serializer>(x: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(q) => s.serialize_str(&rational_string(q)),
        None => s.serialize_none(),
    }
}

/// `c_n(V) = (number of simple summands of V^n) / (dim V)^n`.
pub fn cn(table: &CharacterTable, mult: &[u64], n: u32) -> Result<CnValue> {
    table.check_rep(mult)?;
    if n == 0 {
        return Err(Error::Precondition("n must be >= 1".into()));
    }
    let e = table.identity();
    if let Some(chi) = table.char_exact(mult) {
        let ex = table.exact.as_ref().expect("exact table");
        let pw: Vec<BigRational> = chi.iter().map(|x| x.pow(n as i32)).collect();
        let mut total = BigInt::zero();
        for row in ex {
            let ip = table.row_inner_exact(&pw, row);
            if !ip.is_integer() || ip.is_negative() {
                return Err(Error::NotARepresentation(format!("inner product {ip} is not a multiplicity")));
            }
            total += ip.to_integer();
        }
        let c = BigRational::new(total.clone(), chi[e].to_integer().pow(n));
        let value = rational_to_f64(&c);
        return Ok(CnValue { n, summands: total, exact: Some(c), value });
    }
    let chi = table.char_f(mult);
    let dim = chi[e].re;
    // normalize before powering to stay in range
    let pw: Vec<Complex64> = chi.iter().map(|x| (x / dim).powu(n)).collect();
    let mut c = 0.0;
    for row in &table.values {
        let ip = table.row_inner_f(&pw, row);
        let scaled = ip * dim.powi(n as i32);
        if scaled.im.abs() > COMPLEX_TOL * scaled.norm().max(1.0)
            || (scaled.re - scaled.re.round()).abs() > COMPLEX_TOL * scaled.re.abs().max(1.0)
        {
            return Err(Error::NotARepresentation(format!("inner product {scaled} is not an integer")));
        }
        c += ip.re;
    }
    let summands = BigInt::from((c * dim.powi(n as i32)).round() as i128);
    Ok(CnValue { n, summands, exact: None, value: c })
}

/// `c(V) = (sum_L dim L) / |G|`, after checking `|chi_V(g)| < dim V` for `g != 1`.
pub fn climit(table: &CharacterTable, mult: &[u64]) -> Result<BigRational> {
    table.check_rep(mult)?;
    let e = table.identity();
    let chi = table.char_f(mult);
    let dim = chi[e].re;
    for (c, cl) in table.classes.iter().enumerate() {
        if c == e {
            continue;
        }
        let violated = match table.char_exact(mult) {
            Some(x) => &x[c] * &x[cl.inverse] >= &x[e] * &x[e],
            None => (chi[c] * chi[cl.inverse]).re >= dim * dim - COMPLEX_TOL,
        };
        if violated {
            return Err(Error::PropInapplicable {
                class: cl.name.clone(),
                reason: "|chi_V(g)| equals dim V on a nontrivial class".into(),
            });
        }
    }
    let total: u64 = table.dims().iter().sum();
    Ok(BigRational::new(total.into(), table.order.into()))
}

/// `sqrt(k(G) / |G|)`.
pub fn cs_bound(table: &CharacterTable) -> f64 {
    (table.num_classes() as f64 / table.order as f64).sqrt()
}

fn partition_name(p: &[usize]) -> String {
    format!("[{}]", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// Partitions of `m` in reverse lexicographic order.
pub fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

/// `chi^lambda(mu)` by the Murnaghan-Nakayama rule on beta-sets.
pub fn mn_character(lambda: &[usize], mu: &[usize]) -> i64 {
    let len = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &l)| l + len - 1 - i).collect();
    mn_rec(&beta, mu)
}

fn mn_rec(beta: &[usize], mu: &[usize]) -> i64 {
    let Some((&k, rest)) = mu.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - k && x < b).count();
        let mut next = beta.to_vec();
        next[idx] = b - k;
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(&next, rest);
    }
    total
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Size of the conjugacy class of cycle type `mu` in `S_m`.
fn class_size(mu: &[usize]) -> BigInt {
    let m: usize = mu.iter().sum();
    let mut z = BigInt::one();
    let mut k = 0;
    while k < mu.len() {
        let part = mu[k];
        let count = mu.iter().filter(|&&x| x == part).count();
        z *= BigInt::from(part).pow(count as u32) * factorial(count);
        k += count;
    }
    factorial(m) / z
}

/// Character table of `S_m`; irreducibles and classes both indexed by
/// partitions.
pub fn sm_table(m: usize) -> Result<CharacterTable> {
    if !(1..=8).contains(&m) {
        return Err(Error::Precondition(format!("S_m tables are built for 1 <= m <= 8, got {m}")));
    }
    let parts = partitions(m);
    let classes = parts
        .iter()
        .enumerate()
        .map(|(i, mu)| ClassInfo {
            name: partition_name(mu).replace('[', "(").replace(']', ")"),
            size: class_size(mu).to_u64().expect("class size fits"),
            inverse: i,
        })
        .collect();
    let chars = parts
        .iter()
        .map(|la| parts.iter().map(|mu| r(mn_character(la, mu))).collect())
        .collect();
    CharacterTable::rational(&format!("S{m}"), classes, parts.iter().map(|p| partition_name(p)).collect(), chars)
}

/// `(sum_L dim L / |S_m|` from the table, the involution sum)`.
pub fn sm_climit(m: usize) -> Result<(BigRational, BigRational)> {
    let t = sm_table(m)?;
    let from_table = BigRational::new(t.dims().iter().sum::<u64>().into(), t.order.into());
    let closed: BigRational = (0..=m / 2)
        .map(|k| BigRational::new(BigInt::one(), factorial(m - 2 * k) * factorial(k) * BigInt::from(2).pow(k as u32)))
        .sum();
    Ok((from_table, closed))
}

fn order8(name: &str, class_names: [&str; 5]) -> Result<CharacterTable> {
    let classes = class_names
        .iter()
        .zip([1, 1, 2, 2, 2])
        .enumerate()
        .map(|(i, (n, s))| ClassInfo { name: n.to_string(), size: s, inverse: i })
        .collect();
    let rows: [[i64; 5]; 5] = [
        [1, 1, 1, 1, 1],
        [1, 1, 1, -1, -1],
        [1, 1, -1, 1, -1],
        [1, 1, -1, -1, 1],
        [2, -2, 0, 0, 0],
    ];
    let chars = rows.iter().map(|row| row.iter().map(|&x| r(x)).collect()).collect();
    let irreps = ["1", "a", "b", "c", "2d"].iter().map(|s| s.to_string()).collect();
    CharacterTable::rational(name, classes, irreps, chars)
}

/// `S3`..`S8`, `D4` (dihedral of order 8), `Q8`, or `trivial`.
pub fn builtin_table(name: &str) -> Result<CharacterTable> {
    match name {
        "D4" => order8("D4", ["e", "r2", "r", "s", "sr"]),
        "Q8" => order8("Q8", ["1", "-1", "i", "j", "k"]),
        "trivial" | "C1" => CharacterTable::rational(
            "trivial",
            vec![ClassInfo { name: "e".into(), size: 1, inverse: 0 }],
            vec!["1".into()],
            vec![vec![BigRational::one()]],
        ),
        _ => match name.strip_prefix('S').and_then(|m| m.parse::<usize>().ok()) {
            Some(m) => sm_table(m),
            None => Err(Error::UnknownName(format!("character table {name:?}"))),
        },
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    #[serde(default)]
    name: Option<String>,
    order: u64,
    classes: Vec<ClassInfo>,
    #[serde(default)]
    irreps: Option<Vec<String>>,
    chars: Vec<Vec<Value>>,
}

enum Entry {
    Exact(BigRational),
    Complex(Complex64),
}

fn parse_entry(v: &Value) -> Result<Entry> {
    match v {
        Value::String(s) => parse_rational(s).map(Entry::Exact),
        Value::Number(n) if n.is_i64() => Ok(Entry::Exact(r(n.as_i64().unwrap_or_default()))),
        Value::Number(n) => Ok(Entry::Complex(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0))),
        Value::Array(a) if a.len() == 2 => match (a[0].as_f64(), a[1].as_f64()) {
            (Some(re), Some(im)) => Ok(Entry::Complex(Complex64::new(re, im))),
            _ => Err(Error::Parse(format!("bad complex entry {v}"))),
        },
        _ => Err(Error::Parse(format!("bad character value {v}"))),
    }
}

/// Reads `{"order", "classes": [{"name", "size", "inverse"}], "chars"}`.
/// Entries are rational strings, integers, or `[re, im]` pairs.
pub fn table_from_json(text: &str) -> Result<CharacterTable> {
    let raw: TableJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let name = raw.name.unwrap_or_else(|| "user".into());
    let k = raw.classes.len();
    let irreps = raw.irreps.unwrap_or_else(|| (0..k).map(|i| format!("chi{i}")).collect());
    let entries: Vec<Vec<Entry>> = raw.chars.iter().map(|row| row.iter().map(parse_entry).collect()).collect::<Result<_>>()?;
    let size_sum: u64 = raw.classes.iter().map(|c| c.size).sum();
    if size_sum != raw.order {
        return Err(Error::Precondition(format!("class sizes sum to {size_sum}, not {}", raw.order)));
    }
    if entries.iter().flatten().all(|e| matches!(e, Entry::Exact(_))) {
        let chars = entries
            .into_iter()
            .map(|row| row.into_iter().map(|e| if let Entry::Exact(q) = e { q } else { unreachable!() }).collect())
            .collect();
        CharacterTable::rational(&name, raw.classes, irreps, chars)
    } else {
        let vals = entries
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| match e {
                        Entry::Exact(q) => Complex64::new(rational_to_f64(&q), 0.0),
                        Entry::Complex(z) => z,
                    })
                    .collect()
            })
            .collect();
        CharacterTable::complex(&name, raw.classes, irreps, vals)
    }
}

impl CharacterTable {
    pub fn to_json(&self) -> Value {
        let chars: Vec<Vec<Value>> = match &self.exact {
            Some(ex) => ex.iter().map(|row| row.iter().map(|x| Value::String(rational_string(x))).collect()).collect(),
            None => self.values.iter().map(|row| row.iter().map(|z| serde_json::json!([z.re, z.im])).collect()).collect(),
        };
        serde_json::json!({
            "name": self.name,
            "order": self.order,
            "classes": self.classes,
            "irreps": self.irreps,
            "chars": chars,
        })
    }
}
