use num_bigint::BigUint;
use proptest::prelude::*;

use airpockets::automata::{count_dp, dfs_table, enumerate, enumerate_ending, Layer, ModelId, PathWord, Sampler};
use airpockets::kernel;
use airpockets::scalar::is_canonical;
use airpockets::{Rational, Series, SeriesF64};

fn series(max_order: usize) -> impl Strategy<Value = Series> {
    (0..=max_order)
        .prop_flat_map(|order| prop::collection::vec((-20i64..=20, 1i64..=6), order + 1))
        .prop_map(|pairs| {
            let order = pairs.len() - 1;
            let coeffs = pairs
                .into_iter()
                .map(|(n, d)| Rational::new(n.into(), d.into()))
                .collect();
            Series::make_poly(coeffs, order).unwrap()
        })
}

fn unit_series(max_order: usize) -> impl Strategy<Value = Series> {
    series(max_order).prop_map(|s| {
        let mut c = s.into_coeffs();
        c[0] = Rational::from_integer(1.into());
        let order = c.len() - 1;
        Series::make_poly(c, order).unwrap()
    })
}

fn model() -> impl Strategy<Value = ModelId> {
    prop::sample::select(ModelId::ALL.to_vec())
}

proptest! {
    #[test]
    fn shifts_invert(a in series(20), m in 0usize..=20) {
        prop_assert_eq!(a.mul_z_pow(m).div_z_pow(m).unwrap(), a.clone());
        prop_assert_eq!(a.mul_z_pow(m).order(), a.order() + m);
    }

    #[test]
    fn rational_sqrt_round_trip(a in unit_series(15)) {
        let root = a.sqrt_unit().unwrap();
        prop_assert_eq!(&root * &root, a);
    }

    #[test]
    fn coefficients_stay_canonical(a in series(12), b in unit_series(12)) {
        let q = a.try_div(&b).unwrap();
        let r = b.sqrt_unit().unwrap();
        for s in [&a * &b, &a - &b, q, r] {
            prop_assert!(s.coeffs().iter().all(is_canonical));
        }
    }

    #[test]
    fn distributive(a in series(10), b in series(10), c in series(10)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn enumerated_words_revalidate(model in model(), n in 0usize..=7) {
        let cap = n + 2;
        for w in enumerate(model, n, cap) {
            let again = PathWord::new(model, w.steps().to_vec()).unwrap();
            prop_assert_eq!(&again, &w);
            prop_assert_eq!(PathWord::parse(model, &w.to_string()).unwrap(), w);
        }
    }

    #[test]
    fn sampled_words_are_valid(model in model(), n in 1usize..=10, level in 0usize..=4, seed: u64) {
        if let Ok(sampler) = Sampler::new(model, n, level) {
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            let w = sampler.sample(&mut rng);
            let again = PathWord::new(model, w.steps().to_vec()).unwrap();
            prop_assert_eq!(again.end_level(), level);
            prop_assert_eq!(again.len(), n);
        }
    }
}

#[test]
fn dfs_and_dp_agree_for_every_model() {
    for model in ModelId::ALL {
        let dp = count_dp(model, 12);
        let dfs = dfs_table(model, 12);
        assert_eq!(dfs.first_difference(&dp), None, "{model}");
    }
}

#[test]
fn dap_lr_layers_match_f_and_g() {
    let table = count_dp(ModelId::DapLr, 12);
    for k in 0..=12 {
        let f = kernel::dap_f::<Rational>(k, 12).unwrap();
        let g = kernel::dap_g::<Rational>(k, 12).unwrap();
        for n in 0..=12 {
            let up = BigUint::try_from(f.coeffs()[n].to_integer()).unwrap();
            let down = BigUint::try_from(g.coeffs()[n].to_integer()).unwrap();
            assert_eq!(table.get(n, k, Layer::AfterUp), Some(&up), "f n={n} k={k}");
            assert_eq!(table.get(n, k, Layer::AfterDown), Some(&down), "g n={n} k={k}");
        }
    }
}

#[test]
fn dap_rl_after_down_layer_matches_a() {
    let table = count_dp(ModelId::DapRl, 12);
    for k in 0..=12 {
        let a = kernel::rl_a::<Rational>(k, 12).unwrap();
        for n in 0..=12 {
            let want = BigUint::try_from(a.coeffs()[n].to_integer()).unwrap();
            assert_eq!(table.get(n, k, Layer::AfterDown), Some(&want), "n={n} k={k}");
        }
    }
}

#[test]
fn rl_a_counts_paths_ending_with_a_down_step() {
    let a0 = kernel::rl_a::<Rational>(0, 10).unwrap();
    for n in 1..=10 {
        let ends_down = enumerate_ending(ModelId::DapRl, n, 0)
            .iter()
            .filter(|w| w.end_layer() == Layer::AfterDown)
            .count();
        assert_eq!(a0.coeffs()[n], Rational::from_integer(ends_down.into()), "n={n}");
    }
}

#[test]
fn rl_b_support_starts_at_one_step() {
    for k in 1..=6 {
        let b = kernel::rl_b::<Rational>(k, 10).unwrap();
        assert_eq!(b.coeffs()[0], Rational::from_integer(0.into()));
        assert!(b.coeffs()[1..].iter().all(|c| *c >= Rational::from_integer(1.into())));
    }
}

#[test]
fn skew_solved_layer_totals_match_a1_and_c1() {
    let table = count_dp(ModelId::SkewSolved, 14);
    let a1 = kernel::skew_a1::<Rational>(14).unwrap();
    let c1 = kernel::skew_c1::<Rational>(14).unwrap();
    for n in 0..=14 {
        let sum = |layer| -> BigUint { (0..=n).filter_map(|k| table.get(n, k, layer)).sum() };
        assert_eq!(Rational::from_integer(sum(Layer::AfterUp).into()), a1.coeffs()[n]);
        assert_eq!(Rational::from_integer(sum(Layer::AfterRed).into()), c1.coeffs()[n]);
    }
}

#[test]
fn total_counts_every_partial_path() {
    let total = kernel::dap_total::<Rational>(12).unwrap();
    let table = count_dp(ModelId::DapLr, 12);
    for n in 0..=12 {
        let all: BigUint = (0..=12).filter_map(|k| table.level_total(n, k)).sum();
        assert_eq!(Rational::from_integer(all.into()), total.coeffs()[n], "n={n}");
    }
}

#[test]
fn float_and_exact_roots_agree() {
    let exact = kernel::dap_s2::<Rational>(25).unwrap();
    let approx: SeriesF64 = kernel::dap_s2::<f64>(25).unwrap();
    for (e, a) in exact.coeffs().iter().zip(approx.coeffs()) {
        let e: f64 = e.to_integer().to_string().parse().unwrap();
        assert!((e - a).abs() <= 1e-9 * e.abs().max(1.0));
    }
}
