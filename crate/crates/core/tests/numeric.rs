use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use jackbessel::numeric::{f64_to_ratio, parse_rational, ratio_to_f64, Dd, Field};

fn exact(x: Dd) -> BigRational {
    f64_to_ratio(x.hi()).unwrap() + f64_to_ratio(x.lo()).unwrap()
}

fn rel_err(x: Dd, want: &BigRational) -> f64 {
    let scale = ratio_to_f64(want).abs().max(1e-300);
    ratio_to_f64(&(exact(x) - want)).abs() / scale
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![-1e6f64..1e6, -1.0f64..1.0]
}

proptest! {
    #[test]
    fn sums_are_exact(a in finite(), b in finite()) {
        let want = f64_to_ratio(a).unwrap() + f64_to_ratio(b).unwrap();
        prop_assert_eq!(exact(Dd::new(a) + Dd::new(b)), want);
    }

    #[test]
    fn products_are_exact(a in finite(), b in finite()) {
        let want = f64_to_ratio(a).unwrap() * f64_to_ratio(b).unwrap();
        prop_assert_eq!(exact(Dd::new(a) * Dd::new(b)), want);
    }

    #[test]
    fn rationals_to_about_106_bits(n in -10_000i64..10_000, d in 1i64..10_000, m in 1i64..1000) {
        let r = BigRational::new(BigInt::from(n), BigInt::from(d));
        prop_assert!(rel_err(Dd::from_ratio(&r), &r) <= 1e-31);
        let s = BigRational::new(BigInt::from(m), BigInt::from(7));
        let q = Dd::from_ratio(&r) / Dd::from_ratio(&s);
        if n != 0 {
            prop_assert!(rel_err(q, &(&r / &s)) <= 1e-30);
        }
    }
}

#[test]
fn parses_rationals() {
    assert_eq!(parse_rational("3/4").unwrap(), BigRational::new(3.into(), 4.into()));
    assert_eq!(parse_rational("-2").unwrap(), BigRational::from_integer((-2).into()));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("a").is_err());
}
