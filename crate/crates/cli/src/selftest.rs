//! Fixed fixtures plus seeded random oracle cross-checks, run in parallel.

use std::process::ExitCode;

use greenring::finite_group::{builtin_table, cn, sm_climit};
use greenring::green::{factorize, project, reconstruct, ssbar_mul, vq1_mul, w_mul, CyclicContext, FactorizedClass};
use greenring::jordan::oracle_mul;
use greenring::kp::KpTable;
use greenring::lie::{g_decomp, gauss_d, DynkinType, EXCEPTIONAL_TABLE};
use greenring::reductive::{a1_ratio_closed_form, dns, mmo_check, preset, RootSystem};
use greenring::verlinde::{dn_sequence, VerlindeRing};
use greenring::RingElement;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::output::{emit, Format, Record};

/// `Ok(Some(m))` reports how far inside its tolerance a numeric check landed.
type Check = Box<dyn Fn() -> Result<Option<f64>, String> + Send + Sync>;

struct Fixture {
    id: String,
    /// `golden` for published values, `derived` for values computed
    /// independently, `random` for seeded oracle samples.
    kind: &'static str,
    check: Check,
}

fn fx(id: impl Into<String>, kind: &'static str, check: Check) -> Fixture {
    Fixture { id: id.into(), kind, check }
}

fn el(pairs: &[(usize, i64)]) -> RingElement {
    RingElement::from_pairs(pairs.iter().copied())
}

fn expect<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> Result<Option<f64>, String> {
    if got == want {
        Ok(None)
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

fn fixed() -> Vec<Fixture> {
    let mut v: Vec<Fixture> = vec![
        fx(
            "u99-u53",
            "golden",
            Box::new(|| {
                let c = CyclicContext::new(2, 7).map_err(|e| e.to_string())?;
                expect(ssbar_mul(&c, 99, 53).map_err(|e| e.to_string())?, el(&[(87, 1)]))
            }),
        ),
        fx(
            "u99-factor",
            "golden",
            Box::new(|| {
                let c = CyclicContext::new(2, 7).map_err(|e| e.to_string())?;
                expect(factorize(&c, 99).map_err(|e| e.to_string())?, FactorizedClass { base: 1, levels: vec![1, 0, 0, 1, 0, 1] })
            }),
        ),
        fx(
            "u87-reconstruct",
            "golden",
            Box::new(|| {
                let c = CyclicContext::new(2, 7).map_err(|e| e.to_string())?;
                let f = FactorizedClass { base: 1, levels: vec![0, 1, 1, 1, 1, 1] };
                expect(reconstruct(&c, &f).map_err(|e| e.to_string())?, 87)
            }),
        ),
        fx(
            "u1023-factor",
            "golden",
            Box::new(|| {
                let c = CyclicContext::new(5, 5).map_err(|e| e.to_string())?;
                expect(factorize(&c, 1023).map_err(|e| e.to_string())?, FactorizedClass { base: 3, levels: vec![4, 0, 1, 1] })
            }),
        ),
        fx(
            "k3-table",
            "golden",
            Box::new(|| {
                let k = KpTable::get(3).map_err(|e| e.to_string())?;
                expect(k.product(1, 1).map_err(|e| e.to_string())?.clone(), el(&[(0, 1), (1, 1), (2, 1)]))?;
                expect(k.product(2, 2).map_err(|e| e.to_string())?.clone(), el(&[(0, 1)]))
            }),
        ),
        fx(
            "green-formulas-p3",
            "golden",
            Box::new(|| {
                let c = CyclicContext::new(3, 2).map_err(|e| e.to_string())?;
                expect(w_mul(&c, 3, 7).map_err(|e| e.to_string())?, el(&[(4, 1), (9, 2), (8, -1)]))?;
                expect(vq1_mul(&c, 3, 3).map_err(|e| e.to_string())?, el(&[(3, 2)]))
            }),
        ),
        fx(
            "ver5-fibonacci",
            "derived",
            Box::new(|| {
                let seq = dn_sequence(5, &el(&[(2, 1)]), 5).map_err(|e| e.to_string())?;
                let d: Vec<String> = seq.iter().map(|e| e.d_n.to_string()).collect();
                expect(d, ["1", "2", "3", "5", "8"].map(String::from).to_vec())
            }),
        ),
        fx(
            "ver-comm-assoc",
            "derived",
            Box::new(|| {
                for p in [2u64, 3, 5, 7, 11, 13] {
                    let ring = VerlindeRing::get(p).map_err(|e| e.to_string())?;
                    let t = ring.table();
                    if t.find_noncommuting().is_some() || t.find_nonassociative(usize::MAX).is_some() {
                        return Err(format!("Ver_{p} fails ring axioms"));
                    }
                }
                Ok(None)
            }),
        ),
        fx(
            "gauss-d",
            "golden",
            Box::new(|| {
                let ds: Vec<BigInt> = (5..=17).step_by(2).map(|r| gauss_d(r).unwrap()).collect();
                expect(ds, [0, 1, 1, 1, 2, 2, 2].into_iter().map(BigInt::from).collect())
            }),
        ),
        fx(
            "cl1-asym",
            "golden",
            Box::new(|| {
                let err = (a1_ratio_closed_form(10_000) / (2.0 / std::f64::consts::PI).sqrt() - 1.0).abs();
                if err <= 1e-3 {
                    Ok(Some(1e-3 - err))
                } else {
                    Err(format!("relative error {err:.3e}"))
                }
            }),
        ),
        fx(
            "mmo-b2",
            "derived",
            Box::new(|| {
                let sys = RootSystem::builtin("B2").map_err(|e| e.to_string())?;
                let m = mmo_check(&sys, 2.0, 1e-12).map_err(|e| e.to_string())?;
                if m.residual < 1e-6 {
                    Ok(Some(1e-6 - m.residual))
                } else {
                    Err(format!("residual {:.3e}", m.residual))
                }
            }),
        ),
        fx(
            "s1-dimension-g2",
            "derived",
            Box::new(|| {
                let sys = RootSystem::builtin("G2").map_err(|e| e.to_string())?;
                let v = preset(&sys, "7-dim").map_err(|e| e.to_string())?;
                let d = dns(&sys, &v, 6, 1.0).map_err(|e| e.to_string())?;
                expect(d.exact.map(|r| r.to_integer()), Some(BigInt::from(7).pow(6)))
            }),
        ),
        fx(
            "d4-cn",
            "derived",
            Box::new(|| {
                let t = builtin_table("D4").map_err(|e| e.to_string())?;
                let mult = t.parse_rep("0,0,0,0,1").map_err(|e| e.to_string())?;
                let c2 = cn(&t, &mult, 2).map_err(|e| e.to_string())?;
                expect(c2.summands.to_string(), "4".to_string())
            }),
        ),
        fx(
            "sm-climit",
            "derived",
            Box::new(|| {
                for m in 3..=7 {
                    let (a, b) = sm_climit(m).map_err(|e| e.to_string())?;
                    expect(a, b)?;
                }
                Ok(None)
            }),
        ),
    ];
    for &(t, p, want) in EXCEPTIONAL_TABLE {
        let id = format!("{}-p{p}", t.to_string().to_lowercase());
        v.push(fx(id, "golden", Box::new(move || expect(g_decomp(t, p).map_err(|e| e.to_string())?, want.to_vec()))));
    }
    v.push(fx(
        "d7-p17",
        "golden",
        Box::new(|| expect(g_decomp(DynkinType::D(7), 17).map_err(|e| e.to_string())?, vec![3, 7, 13])),
    ));
    v
}

/// Random products at small orders, projected oracle against the closed rule.
fn random(seed: u64, cap: u64) -> Vec<Fixture> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut v: Vec<Fixture> = Vec::new();
    for (p, n) in [(2u64, 4u32), (3, 3), (5, 2), (7, 2)] {
        let order = p.pow(n);
        let pairs: Vec<(u64, u64)> = (0..8)
            .map(|_| loop {
                let a = rng.gen_range(1..=order);
                let b = rng.gen_range(1..=order);
                if a % p != 0 && b % p != 0 && a * b <= cap.max(1) {
                    break (a, b);
                }
            })
            .collect();
        v.push(fx(
            format!("random-oracle-p{p}-n{n}"),
            "random",
            Box::new(move || {
                let ctx = CyclicContext::new(p, n).map_err(|e| e.to_string())?;
                for &(a, b) in &pairs {
                    let lhs = project(&ctx, &oracle_mul(p, n, a, b, cap).map_err(|e| e.to_string())?.to_element());
                    let rhs = ssbar_mul(&ctx, a, b).map_err(|e| e.to_string())?;
                    if lhs != rhs {
                        return Err(format!("v{a} v{b}: oracle {lhs}, rule {rhs}"));
                    }
                }
                Ok(None)
            }),
        ));
    }
    v
}

pub fn run(seed: u64, cap: u64, format: Format) -> ExitCode {
    let mut all = fixed();
    all.extend(random(seed, cap));
    all.sort_by(|a, b| a.id.cmp(&b.id));
    let results: Vec<Result<Option<f64>, String>> = all
        .par_iter()
        .map(|f| {
            std::panic::catch_unwind(std::panic::AssertUnwindSafe(&f.check)).unwrap_or_else(|_| Err("panicked".into()))
        })
        .collect();
    let failed: Vec<&str> = all.iter().zip(&results).filter(|(_, r)| r.is_err()).map(|(f, _)| f.id.as_str()).collect();
    let rows: Vec<Value> = all
        .iter()
        .zip(&results)
        .map(|(f, r)| {
            json!({
                "id": f.id,
                "kind": f.kind,
                "pass": r.is_ok(),
                "margin": r.as_ref().ok().copied().flatten(),
                "detail": r.as_ref().err().cloned().unwrap_or_default(),
            })
        })
        .collect();
    let rec = Record::new("selftest", json!({ "seed": seed, "cap_oracle": cap }), Value::Array(rows));
    let _ = emit(&rec, format, &mut std::io::stdout().lock());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        for id in &failed {
            eprintln!("selftest failed: {id}");
        }
        ExitCode::from(3)
    }
}
