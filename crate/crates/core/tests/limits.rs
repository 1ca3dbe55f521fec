use num_complex::Complex64;
use proptest::prelude::*;

use jackbessel::bessel::SeriesConfig;
use jackbessel::limits::{lim_bessel_a, lim_bessel_b, psi_eval, psi_hat, psi_log_derivative_series, series_psi_hat, tilde_p};
use jackbessel::vk::{sort_ll_desc, VKParams};
use jackbessel::JackParam;

fn k_strategy() -> impl Strategy<Value = JackParam> {
    prop_oneof![Just((1, 2)), Just((1, 1)), Just((2, 1)), Just((5, 2))]
        .prop_map(|(a, b)| JackParam::from_ratio(a, b).unwrap())
}

fn omega() -> impl Strategy<Value = VKParams> {
    (prop::collection::vec(-0.8f64..0.8, 0..3), -2.0f64..2.0, 0.0f64..1.0)
        .prop_map(|(alpha, beta, gamma)| VKParams::new(sort_ll_desc(&alpha), beta, gamma).unwrap())
}

fn omega_plus() -> impl Strategy<Value = VKParams> {
    (prop::collection::vec(0.0f64..0.5, 0..3), 0.0f64..1.0).prop_map(|(mut alpha, extra)| {
        alpha.sort_by(|a, b| b.total_cmp(a));
        let beta = alpha.iter().sum::<f64>() + extra;
        VKParams::new(alpha, beta, 0.0).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn type_a_limit_is_bounded_by_its_value_at_zero(w in omega(), k in k_strategy(), x in prop::collection::vec(-3.0f64..3.0, 1..4)) {
        let zero = vec![0.0; x.len()];
        prop_assert_eq!(lim_bessel_a(&w, &k, &zero), Complex64::new(1.0, 0.0));
        prop_assert!(lim_bessel_a(&w, &k, &x).norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn type_b_limit_is_real_in_unit_interval(w in omega_plus(), k in k_strategy(), x in prop::collection::vec(-3.0f64..3.0, 1..4)) {
        let v = lim_bessel_b(&w, &k, &x).unwrap();
        prop_assert!(v > 0.0 && v <= 1.0);
        let flipped: Vec<f64> = x.iter().rev().map(|v| -v).collect();
        prop_assert!((lim_bessel_b(&w, &k, &flipped).unwrap() - v).abs() <= 1e-14);
    }

    #[test]
    fn log_derivative(w in omega(), k in k_strategy(), z in -0.05f64..0.05) {
        let h = 1e-5;
        let z = Complex64::new(z, 0.0);
        let fd = ((psi_eval(&w, &k, z + h).unwrap()).ln() - (psi_eval(&w, &k, z - h).unwrap()).ln()) / (2.0 * h);
        let series = psi_log_derivative_series(&w, &k, z, 30);
        prop_assert!((fd - series).norm() <= 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn jack_series_matches_product(w in omega(), k in k_strategy(), z in prop::collection::vec((-0.1f64..0.1, -0.1f64..0.1), 1..3)) {
        let z: Vec<Complex64> = z.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
        let cfg = SeriesConfig { max_degree: 14, rel_tol: 1e-12, stagnation_window: 2 };
        let series = series_psi_hat(&w, &k, &z, &cfg).unwrap().value;
        let product = psi_hat(&w, &k, &z).unwrap();
        prop_assert!((series - product).norm() <= 1e-8 * product.norm());
    }
}

#[test]
fn tilde_power_sums() {
    let w = VKParams::new(vec![0.5, -0.25], 1.0, 0.25).unwrap();
    assert_eq!(tilde_p(&w, 0), 1.0);
    assert_eq!(tilde_p(&w, 1), 1.0);
    assert_eq!(tilde_p(&w, 2), 0.25 + 0.25 + 0.0625);
    assert_eq!(tilde_p(&w, 3), 0.125 - 0.015625);
}

#[test]
fn type_b_limit_needs_the_cone() {
    let k = JackParam::from_ratio(1, 1).unwrap();
    let w = VKParams::new(vec![0.5], 1.0, 0.1).unwrap();
    assert!(lim_bessel_b(&w, &k, &[0.5]).is_err());
    let w = VKParams::new(vec![-0.5], 1.0, 0.0).unwrap();
    assert!(lim_bessel_b(&w, &k, &[0.5]).is_err());
}

#[test]
fn pure_gaussian_limit() {
    // α = 0, β = 0: Ψ̂(ix/k) = exp(−γ Σ x² / 2k)
    let k = JackParam::from_ratio(2, 1).unwrap();
    let w = VKParams::new(vec![], 0.0, 0.5).unwrap();
    let v = lim_bessel_a(&w, &k, &[1.0, -2.0]);
    assert!((v.re - (-0.5 * 5.0 / 4.0f64).exp()).abs() < 1e-15);
    assert!(v.im.abs() < 1e-15);
}
