//! Double-double arithmetic: an unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`,
//! good for about 106 bits.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{Num, One, Zero};

use super::{f64_to_ratio, ratio_to_f64, Field};

#[derive(Clone, Copy, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

/// Complex double-double.
pub type Cdd = Complex<Dd>;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 { -self } else { self }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite()
    }

    fn from_parts(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::new(x)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            o => Some(o),
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        Dd::from_parts(s, e + f)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        Dd::from_parts(p, e + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::new(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::new(q2);
        let q3 = r.hi / b.hi;
        Dd::from_parts(q1, q2) + Dd::new(q3)
    }
}

impl Rem for Dd {
    type Output = Dd;
    fn rem(self, b: Dd) -> Dd {
        let q = (self / b).to_f64().trunc();
        self - b * Dd::new(q)
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl SubAssign for Dd {
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}

impl MulAssign for Dd {
    fn mul_assign(&mut self, b: Dd) {
        *self = *self * b;
    }
}

impl Sum for Dd {
    fn sum<I: Iterator<Item = Dd>>(iter: I) -> Dd {
        iter.fold(Dd::zero(), |a, b| a + b)
    }
}

impl Zero for Dd {
    fn zero() -> Self {
        Dd::new(0.0)
    }

    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for Dd {
    fn one() -> Self {
        Dd::new(1.0)
    }
}

impl Num for Dd {
    type FromStrRadixErr = num_traits::ParseFloatError;

    fn from_str_radix(s: &str, radix: u32) -> std::result::Result<Self, Self::FromStrRadixErr> {
        f64::from_str_radix(s, radix).map(Dd::new)
    }
}

impl Field for Dd {
    fn from_ratio(r: &BigRational) -> Self {
        let hi = ratio_to_f64(r);
        if !hi.is_finite() {
            return Dd::new(hi);
        }
        let rest = r - f64_to_ratio(hi).expect("finite");
        Dd::from_parts(hi, ratio_to_f64(&rest))
    }

    fn from_i64(v: i64) -> Self {
        let hi = v as f64;
        // the cast is exact below 2^53; the correction covers the rest
        let lo = (v as i128 - hi as i128) as f64;
        Dd::from_parts(hi, lo)
    }
}

impl Field for Cdd {
    fn from_ratio(r: &BigRational) -> Self {
        Complex::new(Dd::from_ratio(r), Dd::zero())
    }

    fn from_i64(v: i64) -> Self {
        Complex::new(Dd::from_i64(v), Dd::zero())
    }
}

/// Widens a double complex number.
pub fn cdd(z: Complex64) -> Cdd {
    Complex::new(Dd::new(z.re), Dd::new(z.im))
}

/// Rounds to the nearest double complex number.
pub fn c64(z: Cdd) -> Complex64 {
    Complex64::new(z.re.to_f64(), z.im.to_f64())
}

/// `|z|` to double precision.
pub fn norm(z: &Cdd) -> f64 {
    c64(*z).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn exact(x: Dd) -> BigRational {
        f64_to_ratio(x.hi).unwrap() + f64_to_ratio(x.lo).unwrap()
    }

    fn close(x: Dd, want: &BigRational, tol: f64) -> bool {
        let err = ratio_to_f64(&(exact(x) - want)).abs();
        err <= tol * ratio_to_f64(want).abs()
    }

    #[test]
    fn division_is_double_double_accurate() {
        let third = Dd::new(1.0) / Dd::new(3.0);
        assert!(third.lo != 0.0);
        assert!(close(third, &q(1, 3), 1e-31));
        assert!(close(Dd::new(10.0) / Dd::new(7.0), &q(10, 7), 1e-31));
        assert!(close(Dd::from_ratio(&q(2, 3)) * Dd::new(3.0), &q(2, 1), 1e-31));
    }

    #[test]
    fn cancellation_keeps_low_word() {
        let big = Dd::new(1e16);
        let x = (big + Dd::new(1.0)) - big;
        assert_eq!(x.to_f64(), 1.0);
        let y = Dd::from_ratio(&q(1, 10)) * Dd::new(1e20) - Dd::new(1e19);
        assert!(y.to_f64().abs() < 1e-12);
    }

    #[test]
    fn complex_arithmetic() {
        let a = cdd(Complex64::new(1.0, 2.0));
        let b = cdd(Complex64::new(-0.5, 0.25));
        assert_eq!(c64(a * b), Complex64::new(1.0, 2.0) * Complex64::new(-0.5, 0.25));
        let back = (a / b) * b - a;
        assert!(norm(&back) < 1e-30);
    }

    #[test]
    fn integers_round_trip() {
        assert_eq!(exact(Dd::from_i64((1 << 60) + 1)), q((1 << 60) + 1, 1));
        assert_eq!(Dd::from_i64(-7).to_f64(), -7.0);
    }
}
