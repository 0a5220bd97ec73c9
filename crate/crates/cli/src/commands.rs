//! Subcommand handlers. Each returns a [`Record`].

use clap::{Args, Subcommand, ValueEnum};
use greenring::finite_group::{self as fg, CharacterTable};
use greenring::green::{self, CyclicContext, FactorizedClass};
use greenring::jordan::{self, Method};
use greenring::kp::{self, KpTable};
use greenring::lie::{self, DynkinType};
use greenring::reductive::{self as red, RootSystem, WeightDistribution};
use greenring::util::{rational_string, rational_to_f64};
use greenring::verlinde::{self, VerlindeRing};
use greenring::{Error, Result, RingElement};
use num_bigint::BigInt;
use serde_json::{json, to_value, Value};

use crate::output::{approx, Record};

const EPS: f64 = f64::EPSILON;
const MMO_QUAD_TOL: f64 = 1e-12;

fn val<T: serde::Serialize>(x: T) -> Value {
    to_value(x).expect("serializable")
}

/// `"0,1,0,0"` as dense coefficients on indices `offset..`, or sparse
/// `"index:coeff,..."`.
fn parse_element(s: &str, offset: usize) -> Result<RingElement> {
    let s = s.trim();
    let bad = |t: &str| Error::Parse(format!("bad coefficient {t:?} in {s:?}"));
    if s.contains(':') {
        let mut out = RingElement::zero();
        for term in s.split(',') {
            let (i, c) = term.split_once(':').ok_or_else(|| bad(term))?;
            let i: usize = i.trim().parse().map_err(|_| bad(term))?;
            let c: BigInt = c.trim().parse().map_err(|_| bad(term))?;
            out.add_term(i, c);
        }
        return Ok(out);
    }
    let coeffs: Vec<BigInt> = s.split(',').map(|t| t.trim().parse().map_err(|_| bad(t))).collect::<Result<_>>()?;
    Ok(RingElement::from_dense(offset, &coeffs))
}

/// A single index `"99"` means that basis class; otherwise as [`parse_element`].
fn parse_class_or_element(s: &str) -> Result<RingElement> {
    match s.trim().parse::<usize>() {
        Ok(r) => Ok(RingElement::basis(r)),
        Err(_) => parse_element(s, 1),
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad index {t:?}"))))
        .collect()
}

fn ver_object(p: u64, s: &str) -> Result<RingElement> {
    let v = parse_element(s, 1)?;
    if !s.contains(':') && v.max_index().is_some_and(|m| m as u64 >= p) {
        return Err(Error::Precondition(format!("object needs at most {} coefficients", p - 1)));
    }
    VerlindeRing::get(p)?.table().check_element(&v)?;
    Ok(v)
}

fn delta_json(d: &verlinde::DeltaValue) -> Value {
    let a = d.evaluate();
    json!({ "m": val(d), "numeric": approx(a.value, a.err) })
}

// ---------------------------------------------------------------- verlinde

#[derive(Subcommand, Debug)]
pub enum VerlindeCmd {
    /// Fusion product `L_i L_j`.
    Fuse {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// `delta(V)` of an object given as coefficients on `L_1..L_{p-1}`.
    Delta(ObjectArgs),
    /// `V^n`.
    Pow {
        #[command(flatten)]
        obj: ObjectArgs,
        #[arg(long)]
        n: u32,
    },
    /// `d_n` and `c_n` for `n = 1..=N`.
    Dn {
        #[command(flatten)]
        obj: ObjectArgs,
        #[arg(long)]
        n: u32,
    },
    /// Fusion closure of the support and `K_V`.
    Closure(ObjectArgs),
    /// Checks `c_n >= 1/K_V` for `n = 1..=N`.
    P0 {
        #[command(flatten)]
        obj: ObjectArgs,
        #[arg(long)]
        n: u32,
    },
    /// Bound evaluators at `delta = D`.
    Bound {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        delta: f64,
        /// Overrides the linear coefficient `a_p`.
        #[arg(long)]
        a: Option<f64>,
    },
    /// `min(k, p-k) <= (p/2)[k]_q sin(pi/p) <= (pi/2)[k]_q` for every k.
    Qint {
        #[arg(long)]
        p: u64,
    },
    /// `log K_V` against both bounds for an object.
    Consistency(ObjectArgs),
}

#[derive(Args, Debug)]
pub struct ObjectArgs {
    #[arg(long)]
    p: u64,
    /// Dense coefficients `c_1,...,c_{p-1}` or sparse `k:c,...`.
    #[arg(long)]
    object: String,
}

pub fn verlinde(cmd: VerlindeCmd) -> Result<Record> {
    Ok(match cmd {
        VerlindeCmd::Fuse { p, i, j } => {
            let r = verlinde::fuse(p, i, j)?;
            Record::new("verlinde fuse", json!({ "p": p, "i": i, "j": j }), val(&r)).columns(&["index", "coeff"])
        }
        VerlindeCmd::Delta(o) => {
            let v = ver_object(o.p, &o.object)?;
            let d = verlinde::delta(o.p, &v)?;
            Record::new("verlinde delta", json!({ "p": o.p, "object": val(&v) }), delta_json(&d))
        }
        VerlindeCmd::Pow { obj, n } => {
            let v = ver_object(obj.p, &obj.object)?;
            let r = VerlindeRing::get(obj.p)?.pow(&v, n)?;
            Record::new("verlinde pow", json!({ "p": obj.p, "object": val(&v), "n": n }), val(&r))
                .columns(&["index", "coeff"])
        }
        VerlindeCmd::Dn { obj, n } => {
            let v = ver_object(obj.p, &obj.object)?;
            let seq = verlinde::dn_sequence(obj.p, &v, n)?;
            Record::new("verlinde dn", json!({ "p": obj.p, "object": val(&v), "n": n }), val(&seq))
        }
        VerlindeCmd::Closure(o) => {
            let v = ver_object(o.p, &o.object)?;
            let c = verlinde::support_closure(o.p, &v)?;
            Record::new("verlinde closure", json!({ "p": o.p, "object": val(&v) }), val(&c))
        }
        VerlindeCmd::P0 { obj, n } => {
            let v = ver_object(obj.p, &obj.object)?;
            let w = verlinde::check_p0(obj.p, &v, n)?;
            Record::new("verlinde p0", json!({ "p": obj.p, "object": val(&v), "n": n }), val(&w))
        }
        VerlindeCmd::Bound { p, delta, a } => {
            let b = verlinde::bound_lambda(p, delta, a)?;
            let f = verlinde::log_bound_fp(p, delta, a)?;
            let tol = |x: f64| x.abs() * 4.0 * EPS;
            let ap = a.map_or_else(|| verlinde::default_a(p), Ok)?;
            let mut res = json!({
                "a_p": approx(ap, tol(ap)),
                "bound_lambda": approx(b, tol(b)),
                "log_f_p": approx(f, tol(f)),
            });
            if p == 2 {
                let k = verlinde::log_bound_kv_p2(delta)?;
                res["log_bound_kv"] = approx(k, tol(k));
            }
            Record::new("verlinde bound", json!({ "p": p, "delta": delta, "a": a }), res)
        }
        VerlindeCmd::Qint { p } => {
            let q = verlinde::qint_inequality_check(p)?;
            Record::new("verlinde qint", json!({ "p": p }), val(&q))
        }
        VerlindeCmd::Consistency(o) => {
            let v = ver_object(o.p, &o.object)?;
            let d = verlinde::delta(o.p, &v)?.evaluate();
            let kv = verlinde::support_closure(o.p, &v)?.k_v.value;
            let mut res = val(verlinde::bound_consistency(o.p, d.value, kv, None)?);
            res["delta"] = approx(d.value, d.err);
            Record::new("verlinde consistency", json!({ "p": o.p, "object": val(&v) }), res)
        }
    })
}

// ---------------------------------------------------------------- kp

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PhiMap {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    Fpdim,
}

#[derive(Subcommand, Debug)]
pub enum KpCmd {
    /// Full structure-constant table of `K_p`.
    Table {
        #[arg(long)]
        p: u64,
    },
    /// Image of `X_i` under one of the ring maps out of `K_p`.
    Phi {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        i: usize,
        #[arg(long, value_enum)]
        map: PhiMap,
    },
}

pub fn kp(cmd: KpCmd) -> Result<Record> {
    Ok(match cmd {
        KpCmd::Table { p } => {
            let t = KpTable::get(p)?;
            Record::new("kp table", json!({ "p": p }), val(t.to_json()))
        }
        KpCmd::Phi { p, i, map } => {
            let res = match map {
                PhiMap::One => val(kp::phi1(p, i)?),
                PhiMap::Two => val(kp::phi2(p, i)?),
                PhiMap::Three => val(kp::phi3(p, i)?),
                PhiMap::Fpdim => delta_json(&kp::fpdim_char(p, i)?),
            };
            Record::new("kp phi", json!({ "p": p, "i": i, "map": format!("{map:?}").to_lowercase() }), res)
        }
    })
}

// ---------------------------------------------------------------- green

#[derive(Args, Debug)]
pub struct GroupArgs {
    #[arg(long)]
    p: u64,
    /// `n` in `Z/p^n`.
    #[arg(long)]
    levels: u32,
}

impl GroupArgs {
    fn ctx(&self) -> Result<CyclicContext> {
        CyclicContext::new(self.p, self.levels)
    }

    fn json(&self) -> Value {
        json!({ "p": self.p, "levels": self.levels })
    }
}

#[derive(Subcommand, Debug)]
pub enum GreenCmd {
    /// `w v_r` with `w = v_{q+1} - v_{q-1}`.
    Wv {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u64,
    },
    /// `v_{q-1} v_r`.
    Vq1 {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u64,
    },
    /// Drops negligible classes.
    Project {
        #[command(flatten)]
        g: GroupArgs,
        /// Sparse `r:c,...` over the v-basis, or a single index.
        #[arg(long)]
        element: String,
    },
    /// Coordinates of `u_r` in `Ver_p (x) K_p^(n-1)`.
    Factorize {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long)]
        r: u64,
    },
    /// Inverse of `factorize`.
    Reconstruct {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long)]
        base: usize,
        /// `K_p` indices for `q = p, ..., p^(n-1)`.
        #[arg(long, default_value = "")]
        x: String,
    },
    /// Product in the semisimplified ring.
    Ssmul {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Compute through the Jordan-form oracle and project.
        #[arg(long)]
        oracle: bool,
    },
    /// Product in the full Green ring, by the Jordan-form oracle.
    Mul {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Accepted for symmetry with `ssmul`; this product always uses the oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = MethodArg::Graded)]
        method: MethodArg,
    },
    /// `d_n`, `c_n` of an object of the semisimplified ring.
    Dn {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long)]
        object: String,
        #[arg(long)]
        n: u32,
    },
    /// `delta` of an object of the semisimplified ring.
    Delta {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long)]
        object: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Graded,
    Dense,
}

pub fn green(cmd: GreenCmd, cap: u64) -> Result<Record> {
    Ok(match cmd {
        GreenCmd::Wv { g, q, r } => {
            let res = green::w_mul(&g.ctx()?, q, r)?;
            let mut params = g.json();
            params["q"] = q.into();
            params["r"] = r.into();
            Record::new("green wv", params, val(&res)).basis("v").columns(&["index", "coeff"])
        }
        GreenCmd::Vq1 { g, q, r } => {
            let res = green::vq1_mul(&g.ctx()?, q, r)?;
            let mut params = g.json();
            params["q"] = q.into();
            params["r"] = r.into();
            Record::new("green vq1", params, val(&res)).basis("v").columns(&["index", "coeff"])
        }
        GreenCmd::Project { g, element } => {
            let ctx = g.ctx()?;
            let a = parse_class_or_element(&element)?;
            a.support().try_for_each(|r| ctx.check_index(r as u64))?;
            let res = green::project(&ctx, &a);
            let mut params = g.json();
            params["element"] = val(&a);
            Record::new("green project", params, val(&res)).basis("u").columns(&["index", "coeff"])
        }
        GreenCmd::Factorize { g, r } => {
            let c = green::factorize(&g.ctx()?, r)?;
            let mut params = g.json();
            params["r"] = r.into();
            Record::new("green factorize", params, val(&c))
        }
        GreenCmd::Reconstruct { g, base, x } => {
            let c = FactorizedClass { base, levels: parse_list(&x)? };
            let r = green::reconstruct(&g.ctx()?, &c)?;
            let mut params = g.json();
            params["class"] = val(&c);
            Record::new("green reconstruct", params, r.into())
        }
        GreenCmd::Ssmul { g, a, b, oracle } => {
            let ctx = g.ctx()?;
            let (x, y) = (parse_class_or_element(&a)?, parse_class_or_element(&b)?);
            let res = if oracle {
                for r in x.support().chain(y.support()) {
                    if ctx.is_negligible(r as u64) {
                        return Err(Error::Negligible(r as u64));
                    }
                }
                green::project(&ctx, &jordan::green_mul_oracle(g.p, g.levels, &x, &y, cap)?)
            } else {
                green::ssbar_mul_elements(&ctx, &x, &y)?
            };
            let mut params = g.json();
            params["a"] = val(&x);
            params["b"] = val(&y);
            params["oracle"] = oracle.into();
            Record::new("green ssmul", params, val(&res)).basis("u").columns(&["index", "coeff"])
        }
        GreenCmd::Mul { g, a, b, oracle: _, method } => {
            let (x, y) = (parse_class_or_element(&a)?, parse_class_or_element(&b)?);
            let res = match method {
                MethodArg::Graded => jordan::green_mul_oracle(g.p, g.levels, &x, &y, cap)?,
                MethodArg::Dense => {
                    let ctx = g.ctx()?;
                    let mut out = RingElement::zero();
                    for (i, ci) in x.iter() {
                        for (j, cj) in y.iter() {
                            ctx.check_index(i as u64)?;
                            ctx.check_index(j as u64)?;
                            let jt = jordan::jordan_type(g.p, i as u64, j as u64, cap, Method::Dense)?;
                            out.add_scaled(&jt.to_element(), &(ci * cj));
                        }
                    }
                    out
                }
            };
            let mut params = g.json();
            params["a"] = val(&x);
            params["b"] = val(&y);
            Record::new("green mul", params, val(&res)).basis("v").columns(&["index", "coeff"])
        }
        GreenCmd::Dn { g, object, n } => {
            let ctx = g.ctx()?;
            let v = parse_class_or_element(&object)?;
            let seq = green::dn_cyclic(&ctx, &v, n)?;
            let mut params = g.json();
            params["object"] = val(&v);
            params["n"] = n.into();
            Record::new("green dn", params, val(&seq))
        }
        GreenCmd::Delta { g, object } => {
            let ctx = g.ctx()?;
            let v = parse_class_or_element(&object)?;
            let d = green::delta_cyclic(&ctx, &v)?;
            let mut params = g.json();
            params["object"] = val(&v);
            Record::new("green delta", params, delta_json(&d))
        }
    })
}

// ---------------------------------------------------------------- asym

#[derive(Args, Debug)]
pub struct AsymArgs {
    /// `A1`, `A2`, `B2`, `G2`, or a product such as `A1xA2`.
    #[arg(long)]
    system: String,
    /// Weight data of V, e.g. `standard`, `adjoint`, `L3`; comma-separated per factor.
    #[arg(long)]
    preset: String,
    #[arg(long)]
    n: u32,
    /// First n of the emitted range (defaults to `--n`).
    #[arg(long)]
    n_from: Option<u32>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    s: f64,
    /// Include `d_n(V,s) / ((dim V)^n n^{(s-1)|R+|/2})`.
    #[arg(long)]
    ratio: bool,
    /// Include the limiting constant `C_V(s)`.
    #[arg(long)]
    cv: bool,
    /// Include the numerical check of the Macdonald-Mehta-Opdam identity.
    #[arg(long)]
    mmo: bool,
    /// Use `binom(n, floor(n/2))` for `A1`, `L1`, `s = 0`.
    #[arg(long)]
    closed_form: bool,
}

/// `x` given its natural log, as decimal scientific notation.
fn sci_from_ln(ln: f64) -> String {
    let l10 = ln / std::f64::consts::LN_10;
    let e = l10.floor();
    format!("{:.12}e{}", 10f64.powf(l10 - e), e as i64)
}

fn a1_l1(sys: &RootSystem, rep: &WeightDistribution) -> bool {
    sys.name() == "A1" && rep.0.len() == 2 && rep.dim() == BigInt::from(2)
}

pub fn asym(a: AsymArgs) -> Result<Record> {
    let sys = RootSystem::builtin(&a.system)?;
    let rep = red::preset(&sys, &a.preset)?;
    let from = a.n_from.unwrap_or(a.n);
    if from == 0 || from > a.n {
        return Err(Error::Precondition(format!("need 1 <= n_from <= n, got {from}..{}", a.n)));
    }
    if a.closed_form && !(a1_l1(&sys, &rep) && a.s == 0.0) {
        return Err(Error::Precondition("closed form applies to A1, L1, s = 0 only".into()));
    }
    let cv = if a.cv { Some(red::cvs(&sys, &rep, a.s)?) } else { None };
    let mmo = if a.mmo { Some(red::mmo_check(&sys, a.s, MMO_QUAD_TOL)?) } else { None };
    let r_plus = sys.positive_roots().len() as f64;
    let ln_dim = greenring::util::bigint_ln(&rep.dim());
    let mut rows = Vec::new();
    let mut power: Option<WeightDistribution> = None;
    for n in from..=a.n {
        let (d_n_s, ln_value) = if a.closed_form {
            let ln = red::ln_central_binomial(n as u64);
            (sci_from_ln(ln), ln)
        } else {
            power = Some(match power.take() {
                None => red::tensor_power(&rep, n)?,
                Some(p) => p.convolve(&rep),
            });
            let dec = red::decompose(&sys, power.as_ref().expect("set above"))?;
            let d = red::dns_from_decomposition(&sys, &dec, a.s)?;
            let text = d.exact.as_ref().map_or_else(|| sci_from_ln(d.ln_value), rational_string);
            (text, d.ln_value)
        };
        let mut row = json!({ "n": n, "d_n_s": d_n_s });
        if a.ratio {
            let expo = (a.s - 1.0) * r_plus / 2.0;
            let ln_ratio = ln_value - n as f64 * ln_dim - expo * (n as f64).ln();
            let value = ln_ratio.exp();
            // rounding in the three logarithms dominates
            let err = value * 8.0 * EPS * (ln_value.abs() + n as f64 * ln_dim + expo.abs() * (n as f64).ln() + 1.0);
            row["ratio"] = approx(value, err);
        }
        if let Some(c) = cv {
            row["cv_target"] = approx(c, c * 64.0 * EPS * (1.0 + r_plus));
        }
        if let Some(m) = &mmo {
            // the angular quadrature is refined until successive orders agree to MMO_QUAD_TOL
            let quad = m.lhs.abs() * MMO_QUAD_TOL;
            row["mmo_lhs"] = approx(m.lhs, quad);
            row["mmo_rhs"] = approx(m.rhs, m.rhs.abs() * 16.0 * EPS);
            row["mmo_residual"] = approx(m.residual, MMO_QUAD_TOL);
        }
        rows.push(row);
    }
    let params = json!({
        "system": sys.name(),
        "preset": a.preset,
        "n_from": from,
        "n": a.n,
        "s": a.s,
        "closed_form": a.closed_form,
    });
    Ok(Record::new("asym", params, Value::Array(rows)))
}

// ---------------------------------------------------------------- group

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// `c_1, ..., c_N`.
    Cn {
        #[command(flatten)]
        t: TableArgs,
        #[arg(long)]
        rep: String,
        #[arg(long)]
        n: u32,
    },
    /// `c(V) = (sum_L dim L)/|G|` when the hypothesis holds.
    Climit {
        #[command(flatten)]
        t: TableArgs,
        #[arg(long)]
        rep: String,
    },
    /// `sqrt(k(G)/|G|)`.
    Bound {
        #[command(flatten)]
        t: TableArgs,
    },
    /// Prints the character table.
    Table {
        #[command(flatten)]
        t: TableArgs,
    },
    /// `c(V)` for `S_m` from its table and from the involution count.
    Sm {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Built-in name (`S3`..`S8`, `D4`, `Q8`, `trivial`) or `@path` to a JSON table.
    #[arg(long)]
    table: String,
}

impl TableArgs {
    fn load(&self) -> Result<CharacterTable> {
        match self.table.strip_prefix('@') {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
                fg::table_from_json(&text)
            }
            None => fg::builtin_table(&self.table),
        }
    }
}

fn cn_json(t: &CharacterTable, c: &fg::CnValue) -> Value {
    let err = if t.exact.is_some() { c.value.abs() * EPS } else { fg::COMPLEX_TOL };
    json!({
        "n": c.n,
        "summands": c.summands.to_string(),
        "exact": c.exact.as_ref().map(rational_string),
        "value": approx(c.value, err),
    })
}

pub fn group(cmd: GroupCmd) -> Result<Record> {
    Ok(match cmd {
        GroupCmd::Cn { t, rep, n } => {
            let table = t.load()?;
            let mult = table.parse_rep(&rep)?;
            let rows: Vec<Value> = (1..=n).map(|k| fg::cn(&table, &mult, k).map(|c| cn_json(&table, &c))).collect::<Result<_>>()?;
            Record::new("group cn", json!({ "table": table.name, "rep": mult, "n": n }), Value::Array(rows))
        }
        GroupCmd::Climit { t, rep } => {
            let table = t.load()?;
            let mult = table.parse_rep(&rep)?;
            let c = fg::climit(&table, &mult)?;
            let b = fg::cs_bound(&table);
            let res = json!({
                "exact": rational_string(&c),
                "value": approx(rational_to_f64(&c), rational_to_f64(&c) * EPS),
                "cs_bound": approx(b, b * 2.0 * EPS),
            });
            Record::new("group climit", json!({ "table": table.name, "rep": mult }), res)
        }
        GroupCmd::Bound { t } => {
            let table = t.load()?;
            let b = fg::cs_bound(&table);
            let res = json!({ "classes": table.num_classes(), "order": table.order, "cs_bound": approx(b, b * 2.0 * EPS) });
            Record::new("group bound", json!({ "table": table.name }), res)
        }
        GroupCmd::Table { t } => {
            let table = t.load()?;
            Record::new("group table", json!({ "table": table.name }), table.to_json())
        }
        GroupCmd::Sm { m } => {
            let (a, b) = fg::sm_climit(m)?;
            let res = json!({ "from_table": rational_string(&a), "closed_form": rational_string(&b), "equal": a == b });
            Record::new("group sm", json!({ "m": m }), res)
        }
    })
}

// ---------------------------------------------------------------- lie

#[derive(Subcommand, Debug)]
pub enum LieCmd {
    /// Simple constituents of `g_Q` in characteristic p.
    Gdecomp {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        p: u64,
    },
    /// Both sides of the strange formula.
    Strange {
        #[arg(long = "type")]
        ty: Option<String>,
        /// Every family at ranks up to 8.
        #[arg(long)]
        all: bool,
    },
    /// `d_r` from the Gauss polynomial `binom(r, 4)_q`.
    Gaussd {
        #[arg(long)]
        r: u64,
        /// Emit every odd r from 5 to this bound instead.
        #[arg(long)]
        r_max: Option<u64>,
    },
    /// Rank-two entries at p.
    Rank2 {
        #[arg(long)]
        p: u64,
    },
    /// Exponents, Coxeter numbers and lacedness.
    Info {
        #[arg(long = "type")]
        ty: String,
    },
}

pub fn lie_cmd(cmd: LieCmd) -> Result<Record> {
    Ok(match cmd {
        LieCmd::Gdecomp { ty, p } => {
            let t: DynkinType = ty.parse()?;
            let parts = lie::g_decomp(t, p)?;
            Record::new("lie gdecomp", json!({ "type": t, "p": p }), val(parts))
        }
        LieCmd::Strange { ty, all } => {
            let types = match (ty, all) {
                (Some(t), false) => vec![t.parse()?],
                (None, true) => lie::sample_types(),
                _ => return Err(Error::Precondition("give exactly one of --type or --all".into())),
            };
            let rows: Vec<Value> = types
                .into_iter()
                .map(|t| {
                    let c = lie::strange_check(t);
                    json!({ "type": t, "lhs": c.lhs.to_string(), "rhs": c.rhs.to_string(), "holds": c.holds })
                })
                .collect();
            Record::new("lie strange", json!({ "all": all }), Value::Array(rows))
        }
        LieCmd::Gaussd { r, r_max } => {
            let rs: Vec<u64> = match r_max {
                Some(top) => (5..=top).step_by(2).collect(),
                None => vec![r],
            };
            let rows: Vec<Value> = rs
                .into_iter()
                .map(|r| lie::gauss_d(r).map(|d| json!({ "r": r, "d": d.to_string() })))
                .collect::<Result<_>>()?;
            Record::new("lie gaussd", json!({ "r": r, "r_max": r_max }), Value::Array(rows))
        }
        LieCmd::Rank2 { p } => {
            let rows = lie::rank2_catalogue(p)?;
            Record::new("lie rank2", json!({ "p": p }), val(rows))
        }
        LieCmd::Info { ty } => {
            let t: DynkinType = ty.parse()?;
            Record::new("lie info", json!({ "type": t }), val(t.summary()))
        }
    })
}
