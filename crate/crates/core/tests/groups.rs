use greenring::finite_group::{builtin_table, climit, cn, cs_bound, sm_climit, sm_table, CharacterTable};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn tables() -> Vec<CharacterTable> {
    let mut out: Vec<CharacterTable> = ["D4", "Q8", "trivial"].iter().map(|n| builtin_table(n).unwrap()).collect();
    out.extend((3..=8).map(|m| sm_table(m).unwrap()));
    out
}

fn exact_orthogonality(t: &CharacterTable) {
    let x = t.exact.as_ref().expect("rational table");
    let order = BigRational::from_integer(t.order.into());
    let k = t.num_classes();
    for a in 0..k {
        for b in 0..k {
            let row: BigRational = (0..k)
                .map(|c| BigRational::from_integer(t.classes[c].size.into()) * &x[a][c] * &x[b][t.classes[c].inverse])
                .sum();
            let want = if a == b { order.clone() } else { BigRational::zero() };
            assert_eq!(row, want, "{} rows {a}, {b}", t.name);
        }
    }
    for c in 0..k {
        for d in 0..k {
            let col: BigRational = (0..k).map(|a| &x[a][c] * &x[a][t.classes[d].inverse]).sum();
            let want = if c == d {
                order.clone() / BigRational::from_integer(t.classes[c].size.into())
            } else {
                BigRational::zero()
            };
            assert_eq!(col, want, "{} columns {c}, {d}", t.name);
        }
    }
    let sq: u64 = t.dims().iter().map(|d| d * d).sum();
    assert_eq!(sq, t.order);
    assert_eq!(t.classes.iter().map(|c| c.size).sum::<u64>(), t.order);
}

#[test]
fn orthogonality_holds_exactly() {
    for t in tables() {
        exact_orthogonality(&t);
    }
}

#[test]
fn involution_formula_matches_tables() {
    for m in 3..=8 {
        let (from_table, closed) = sm_climit(m).unwrap();
        assert_eq!(from_table, closed, "m = {m}");
    }
}

#[test]
fn d4_oscillation() {
    let t = builtin_table("D4").unwrap();
    let v = t.parse_rep("2d").unwrap();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    for k in 1..=10 {
        assert_eq!(cn(&t, &v, 2 * k).unwrap().exact.unwrap(), BigRational::one());
        assert_eq!(cn(&t, &v, 2 * k + 1).unwrap().exact.unwrap(), half);
    }
}

#[test]
fn converges_geometrically_to_limit() {
    for m in 3..=5 {
        let t = sm_table(m).unwrap();
        let v = t.parse_rep("standard").unwrap();
        let lim = climit(&t, &v).unwrap();
        assert!(greenring::util::rational_to_f64(&lim) <= cs_bound(&t) + 1e-12);
        let gaps: Vec<f64> = (1..=40)
            .map(|n| (cn(&t, &v, n).unwrap().value - greenring::util::rational_to_f64(&lim)).abs())
            .collect();
        // running maximum from the tail is non-increasing and eventually tiny
        let mut env = vec![0.0; gaps.len()];
        let mut run = 0.0f64;
        for i in (0..gaps.len()).rev() {
            run = run.max(gaps[i]);
            env[i] = run;
        }
        assert!(env.windows(2).all(|w| w[0] >= w[1]));
        assert!(env[39] < 1e-3 * env[0].max(1e-300) || env[39] < 1e-12, "S{m}: {:?}", &env[..5]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cn_in_unit_interval_and_supermultiplicative(ti in 0..9usize, seed in prop::collection::vec(0u64..3, 22), n in 1u32..6, m in 1u32..6) {
        let t = &tables()[ti];
        let mut mult: Vec<u64> = seed.into_iter().take(t.irreps.len()).collect();
        mult.resize(t.irreps.len(), 0);
        if mult.iter().all(|&x| x == 0) {
            mult[0] = 1;
        }
        let cnm = cn(t, &mult, n + m).unwrap().exact.unwrap();
        let c_n = cn(t, &mult, n).unwrap().exact.unwrap();
        let c_m = cn(t, &mult, m).unwrap().exact.unwrap();
        prop_assert!(cnm > BigRational::zero() && cnm <= BigRational::one());
        prop_assert!(cnm >= c_n * c_m);
    }
}
