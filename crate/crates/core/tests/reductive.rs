use greenring::reductive::{
    a1_ratio_closed_form, cvs, decompose, dns, preset, tensor_power, RootSystem,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

const PRESETS: &[(&str, &str)] = &[
    ("A1", "L1"),
    ("A1", "L2"),
    ("A1", "L3"),
    ("A1", "trivial"),
    ("A2", "standard"),
    ("A2", "dual"),
    ("A2", "adjoint"),
    ("B2", "vector"),
    ("B2", "spin"),
    ("B2", "adjoint"),
    ("G2", "7-dim"),
    ("G2", "adjoint"),
    ("A1xA1", "L1,L2"),
];

#[test]
fn s_equals_one_counts_dimension() {
    for &(name, pre) in PRESETS {
        let sys = RootSystem::builtin(name).unwrap();
        let v = preset(&sys, pre).unwrap();
        let dim = v.dim();
        let max_n = 12;
        for n in 1..=max_n {
            let d = dns(&sys, &v, n, 1.0).unwrap();
            assert_eq!(d.exact.unwrap(), BigRational::from_integer(dim.pow(n)), "{name} {pre} n = {n}");
        }
    }
}

#[test]
fn multiplicities_nonnegative_and_invariant() {
    for &(name, pre) in PRESETS {
        let sys = RootSystem::builtin(name).unwrap();
        let v = preset(&sys, pre).unwrap();
        assert!(v.is_w_invariant(&sys));
        for n in 1..=5 {
            let t = tensor_power(&v, n).unwrap();
            assert!(t.is_w_invariant(&sys), "{name} {pre} n = {n}");
            assert!(decompose(&sys, &t).unwrap().values().all(|k| !k.is_negative()));
        }
    }
}

#[test]
fn weyl_group_order_and_roots() {
    for name in ["A1", "A2", "B2", "G2", "A1xA2", "A1xA1"] {
        let sys = RootSystem::builtin(name).unwrap();
        let prod: usize = sys.degrees().iter().map(|&d| d as usize).product();
        assert_eq!(sys.weyl_group().len(), prod, "{name}");
        let sum: u32 = sys.degrees().iter().map(|d| d - 1).sum();
        assert_eq!(sys.positive_roots().len(), sum as usize, "{name}");
        for f in sys.factors() {
            assert_eq!(f.weyl_order, f.degrees.iter().map(|&d| d as usize).product::<usize>());
        }
    }
}

#[test]
fn weyl_dimension_integral_on_sweep() {
    for name in ["A1", "A2", "B2", "G2"] {
        let sys = RootSystem::builtin(name).unwrap();
        let r = sys.rank();
        let mut mu = vec![0i64; r];
        loop {
            let d = sys.weyl_dim(&mu).unwrap();
            assert!(d >= BigInt::one(), "{name} {mu:?}");
            let mut i = 0;
            while i < r && mu[i] == 10 {
                mu[i] = 0;
                i += 1;
            }
            if i == r {
                break;
            }
            mu[i] += 1;
        }
    }
}

#[test]
fn a1_ratio_error_decays() {
    let target = (2.0 / std::f64::consts::PI).sqrt();
    for n in [100u64, 1000, 10_000, 100_000] {
        let err = (a1_ratio_closed_form(n) / target - 1.0).abs();
        assert!(err <= 1.0 / (2.0 * n as f64), "n = {n}, err = {err}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cv_is_one_at_s_one(i in 0..PRESETS.len()) {
        let (name, pre) = PRESETS[i];
        prop_assume!(pre != "trivial");
        let sys = RootSystem::builtin(name).unwrap();
        let v = preset(&sys, pre).unwrap();
        let c = cvs(&sys, &v, 1.0).unwrap();
        prop_assert!((c - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dims_of_summands_add_up(i in 0..PRESETS.len(), n in 1u32..7) {
        let (name, pre) = PRESETS[i];
        let sys = RootSystem::builtin(name).unwrap();
        let v = preset(&sys, pre).unwrap();
        let dec = decompose(&sys, &tensor_power(&v, n).unwrap()).unwrap();
        let total: BigInt = dec.iter().map(|(mu, k)| k * sys.weyl_dim(mu).unwrap()).sum();
        prop_assert_eq!(total, v.dim().pow(n));
    }
}
