//! Scalar abstractions shared by the exact and the floating-point paths.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

mod dd;
pub use dd::{c64, cdd, norm, Cdd, Dd};

/// Field operations needed by the symmetric-function recursions.
///
/// Implemented for [`BigRational`] (exact), `f64`, [`Complex64`] and the
/// double-double types [`Dd`] and [`Cdd`].
pub trait Field:
    Clone
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_ratio(r: &BigRational) -> Self;

    fn from_i64(v: i64) -> Self;

    /// Coefficient given both exactly and as its nearest double; floating
    /// types take the double and skip the rational conversion.
    fn from_coeff(exact: &BigRational, _approx: f64) -> Self {
        Self::from_ratio(exact)
    }

    fn pow_u32(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Field for BigRational {
    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Field for f64 {
    fn from_ratio(r: &BigRational) -> Self {
        ratio_to_f64(r)
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_coeff(_exact: &BigRational, approx: f64) -> Self {
        approx
    }

    fn pow_u32(&self, e: u32) -> Self {
        self.powi(e as i32)
    }
}

impl Field for Complex64 {
    fn from_ratio(r: &BigRational) -> Self {
        Complex64::new(ratio_to_f64(r), 0.0)
    }

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn from_coeff(_exact: &BigRational, approx: f64) -> Self {
        Complex64::new(approx, 0.0)
    }

    fn pow_u32(&self, e: u32) -> Self {
        self.powu(e)
    }
}

/// Floating-point scalars (real or complex) used at evaluation time.
pub trait Scalar: Field + Copy + Send + Sync + 'static {
    fn modulus(&self) -> f64;
    fn to_c64(self) -> Complex64;
}

impl Scalar for f64 {
    fn modulus(&self) -> f64 {
        self.abs()
    }

    fn to_c64(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
}

impl Scalar for Complex64 {
    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn to_c64(self) -> Complex64 {
        self
    }
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // extreme magnitudes: fall back to a scaled division
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact rational value of a finite double.
pub fn f64_to_ratio(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::domain(format!("non-finite value {x}")))
}

/// Parses `"3"`, `"-1/2"`, `"0.25"` or `"1e-3"` into an exact rational.
///
/// Decimal strings are read digit by digit, so `"0.1"` is exactly `1/10`
/// rather than the nearest double.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = |why: &str| Error::parse(format!("rational {s:?}: {why}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad("numerator"))?;
        let d: BigInt = d.trim().parse().map_err(|_| bad("denominator"))?;
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| bad("exponent"))?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad("no digits"));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad("unexpected character"));
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse().map_err(|_| bad("digits"))?;
    let all = all / BigInt::from(10);
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        BigRational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Rising factorial `(x)_m = x (x+1) ⋯ (x+m-1)`.
pub fn rising<T: Field>(x: &T, m: u32) -> T {
    let mut acc = T::one();
    for i in 0..m {
        acc = acc * (x.clone() + T::from_i64(i as i64));
    }
    acc
}

pub fn factorial<T: Field>(m: u32) -> T {
    let mut acc = T::one();
    for i in 2..=m {
        acc = acc * T::from_i64(i as i64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("1/2").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), q(-3, 1));
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("2.5e-1").unwrap(), q(1, 4));
        assert_eq!(parse_rational("1e2").unwrap(), q(100, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn rising_factorial() {
        assert_eq!(rising(&q(1, 2), 3), q(15, 8));
        assert_eq!(rising(&2.0f64, 0), 1.0);
        assert_eq!(factorial::<f64>(5), 120.0);
    }
}
