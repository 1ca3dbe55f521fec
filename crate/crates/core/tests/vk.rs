use proptest::prelude::*;

use jackbessel::vk::{
    estimate_row, generate_vk, sort_ll_desc, generate_vk_plus, is_ll_descending, vk_min_n, vk_plus_min_n, TriangularArray,
    VKParams, VKParamsPlus,
};

fn omega() -> impl Strategy<Value = VKParams> {
    (prop::collection::vec(-0.6f64..0.6, 0..3), -1.5f64..1.5, 0.0f64..0.5)
        .prop_map(|(alpha, beta, gamma)| VKParams::new(sort_ll_desc(&alpha), beta, gamma).unwrap())
}

fn omega_plus() -> impl Strategy<Value = VKParamsPlus> {
    (prop::collection::vec(0.0f64..0.4, 0..3), 0.0f64..0.5)
        .prop_map(|(mut alpha, extra)| {
            alpha.sort_by(|a, b| b.total_cmp(a));
            let beta = alpha.iter().sum::<f64>() + extra;
            VKParamsPlus::new(alpha, beta).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_rows_hit_the_parameters(w in omega(), extra in 0usize..40) {
        let n = vk_min_n(&w).unwrap() + extra;
        let row = generate_vk(&w, n).unwrap();
        prop_assert_eq!(row.len(), n);
        prop_assert!(is_ll_descending(&row));
        let est = estimate_row(&row, w.alpha().len());
        for (a, b) in est.alpha_hat.iter().zip(w.alpha()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
        prop_assert!((est.beta_hat - w.beta()).abs() <= 1e-12 * (1.0 + w.beta().abs()) * n as f64);
        if w.gamma() > 0.0 {
            prop_assert!((est.delta_hat - w.delta()).abs() <= 1e-12 * (1.0 + w.delta()) * n as f64);
            prop_assert!(est.gamma_hat >= -1e-12);
        }
    }

    #[test]
    fn nonnegative_rows(w in omega_plus(), extra in 0usize..40) {
        let n = vk_plus_min_n(&w) + extra;
        let row = generate_vk_plus(&w, n).unwrap();
        prop_assert_eq!(row.len(), n);
        prop_assert!(row.iter().all(|&v| v >= 0.0));
        prop_assert!(is_ll_descending(&row));
        let est = estimate_row(&row, w.alpha().len());
        for (a, b) in est.alpha_hat.iter().zip(w.alpha()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
        prop_assert!((est.beta_hat - w.beta()).abs() <= 1e-12 * n as f64);
    }

    #[test]
    fn array_text_round_trip(rows in prop::collection::vec(prop::collection::vec(-1e6f64..1e6, 1..12), 0..5)) {
        let mut arr = TriangularArray::new();
        for row in &rows {
            arr.insert(row.len(), sort_ll_desc(row)).unwrap();
        }
        let back = TriangularArray::parse(&arr.to_text()).unwrap();
        prop_assert_eq!(back, arr);
    }
}

#[test]
fn gamma_hat_tends_to_gamma() {
    let w = VKParams::new(vec![0.5, 0.25], 1.0, 0.25).unwrap();
    let gammas: Vec<f64> = [8, 16, 32, 64]
        .iter()
        .map(|&n| estimate_row(&generate_vk(&w, n).unwrap(), 2).gamma_hat)
        .collect();
    for g in gammas {
        assert!((g - 0.25).abs() < 1e-12, "{g}");
    }
}

#[test]
fn rejects_bad_parameters() {
    assert!(VKParams::new(vec![0.1], 0.0, -0.1).is_err());
    assert!(VKParams::new(vec![f64::NAN], 0.0, 0.0).is_err());
    assert!(VKParamsPlus::new(vec![0.5, 0.5], 0.5).is_err());
    assert!(VKParamsPlus::new(vec![-0.1], 1.0).is_err());
    let w = VKParams::new(vec![0.5, 0.25], 1.0, 0.25).unwrap();
    assert!(generate_vk(&w, vk_min_n(&w).unwrap() - 1).is_err());
}

#[test]
fn rows_must_have_their_own_length() {
    let mut arr = TriangularArray::new();
    assert!(arr.insert(3, vec![1.0, 2.0]).is_err());
    assert!(TriangularArray::parse("1\n1 2 3\n").is_err());
}
