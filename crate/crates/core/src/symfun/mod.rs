//! Symmetric functions: power sums, Jack polynomials `C_κ` of index
//! `α = 1/k` in the power-sum basis, and the Taylor coefficients `g_j` of
//! `Φ(λ; z) = Π_j (1 − λ_j z)^{−k}`.

mod cache;
pub mod jack;
pub mod transition;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{factorial, parse_rational, ratio_to_f64, rising, Field};
use crate::partitions::Partition;

pub use cache::inject_fault;

/// Root multiplicity `k > 0`; the Jack index is `α = 1/k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct JackParam(BigRational);

impl JackParam {
    pub fn new(k: BigRational) -> Result<Self> {
        if !k.is_positive() {
            return Err(Error::domain(format!("multiplicity k must be positive, got {k}")));
        }
        Ok(JackParam(k))
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::domain("zero denominator in multiplicity"));
        }
        JackParam::new(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn k(&self) -> &BigRational {
        &self.0
    }

    pub fn k_f64(&self) -> f64 {
        ratio_to_f64(&self.0)
    }

    /// `α = 1/k`.
    pub fn alpha(&self) -> BigRational {
        self.0.recip()
    }
}

impl fmt::Display for JackParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::str::FromStr for JackParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        JackParam::new(parse_rational(s)?)
    }
}

impl TryFrom<String> for JackParam {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<JackParam> for String {
    fn from(k: JackParam) -> Self {
        k.to_string()
    }
}

/// `p_m(x) = Σ_i x_i^m`, with `p_0 ≡ 1`.
pub fn power_sum<T: Field>(m: u32, x: &[T]) -> T {
    if m == 0 {
        return T::one();
    }
    x.iter().fold(T::zero(), |acc, xi| acc + xi.pow_u32(m))
}

/// `[p_1(x), …, p_max(x)]` with index 0 holding `p_0 = 1`.
pub fn power_sums<T: Field>(max: u32, x: &[T]) -> Vec<T> {
    let mut out = vec![T::one()];
    let mut powers: Vec<T> = x.to_vec();
    for _ in 1..=max {
        out.push(powers.iter().fold(T::zero(), |acc, v| acc + v.clone()));
        for (p, xi) in powers.iter_mut().zip(x) {
            *p = p.clone() * xi.clone();
        }
    }
    out
}

/// A homogeneous symmetric function in the power-sum basis with exact
/// rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PExpansion {
    degree: u32,
    coeffs: BTreeMap<Partition, BigRational>,
    float_terms: Vec<(Partition, f64)>,
}

impl PExpansion {
    /// Builds an expansion, dropping zero coefficients.
    pub fn new(degree: u32, coeffs: impl IntoIterator<Item = (Partition, BigRational)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (mu, c) in coeffs {
            if mu.weight() != degree {
                return Err(Error::precondition(format!(
                    "term {mu} has weight {} in an expansion of degree {degree}",
                    mu.weight()
                )));
            }
            if !c.is_zero() {
                map.insert(mu, c);
            }
        }
        let float_terms = map.iter().map(|(mu, c)| (mu.clone(), ratio_to_f64(c))).collect();
        Ok(PExpansion { degree, coeffs: map, float_terms })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, BigRational> {
        &self.coeffs
    }

    pub fn coeff(&self, mu: &Partition) -> BigRational {
        self.coeffs.get(mu).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Evaluates `Σ_μ d_μ Π_i p_{μ_i}(x)` in the scalar type of `x`.
    pub fn eval<T: Field>(&self, x: &[T]) -> T {
        let sums = power_sums(self.degree, x);
        self.eval_with_power_sums(|m| sums[m as usize].clone())
    }

    /// Evaluates with the power sums supplied by `p` (`p(0)` is never asked).
    pub fn eval_with_power_sums<T: Field>(&self, p: impl Fn(u32) -> T) -> T {
        let mut total = T::zero();
        for ((mu, c), (_, approx)) in self.coeffs.iter().zip(&self.float_terms) {
            let mut term = T::from_coeff(c, *approx);
            for &part in mu.parts() {
                term = term * p(part);
            }
            total = total + term;
        }
        total
    }

    /// Exact evaluation with rational power sums.
    pub fn eval_exact(&self, p: impl Fn(u32) -> BigRational) -> BigRational {
        self.coeffs.iter().fold(BigRational::zero(), |acc, (mu, c)| {
            acc + mu.parts().iter().fold(c.clone(), |t, &part| t * p(part))
        })
    }
}

/// `C_κ` (index `1/k`) in the power-sum basis, memoized per `(κ, k)`.
///
/// The monic monomial expansion comes from the eigenoperator recursion in
/// [`jack`], is rescaled to the `C` normalization with the hook-length
/// formula and converted to power sums with [`transition`]. The cost grows
/// with the number of partitions of `|κ|`; degrees up to about 20 are cheap.
pub fn jack_p_expansion(kappa: &Partition, k: &JackParam) -> Arc<PExpansion> {
    cache::get_or_compute(kappa, k, || compute_p_expansion(kappa, k))
}

fn compute_p_expansion(kappa: &Partition, k: &JackParam) -> PExpansion {
    let degree = kappa.weight();
    let alpha = k.alpha();
    let monic = jack::monic_monomial_coeffs(kappa, &alpha, degree as usize);
    let scale = jack::c_normalization(kappa, &alpha);
    let monomial: Vec<(Partition, BigRational)> = monic.into_iter().map(|(mu, c)| (mu, c * &scale)).collect();
    let table = transition::TransitionTable::for_degree(degree);
    PExpansion::new(degree, table.monomial_to_power_sum(&monomial)).expect("homogeneous by construction")
}

/// `C_κ(x)`; exactly zero when `κ` has more parts than `x` has coordinates.
pub fn jack_eval<T: Field>(kappa: &Partition, k: &JackParam, x: &[T]) -> T {
    if kappa.len() > x.len() {
        return T::zero();
    }
    jack_p_expansion(kappa, k).eval(x)
}

/// `C_κ(1_n)` in exact arithmetic.
pub fn jack_at_ones(kappa: &Partition, k: &JackParam, n: usize) -> BigRational {
    if kappa.len() > n {
        return BigRational::zero();
    }
    let n = BigRational::from_integer(BigInt::from(n));
    jack_p_expansion(kappa, k).eval_exact(|_| n.clone())
}

/// `g_0, …, g_J` of `Φ(λ; z) = Σ_j g_j z^j`, from the recursion
/// `j g_j = k Σ_{m=1}^{j} p_m(λ) g_{j−m}` implied by
/// `d/dz log Φ = k Σ_m p_{m+1}(λ) z^m`.
pub fn g_coeffs<T: Field>(lambda: &[T], k: &JackParam, max_j: u32) -> Vec<T> {
    let sums = power_sums(max_j, lambda);
    g_coeffs_from_power_sums(&sums, &T::from_ratio(k.k()), max_j)
}

/// Same recursion driven by precomputed power sums `p[0..=max_j]`.
pub fn g_coeffs_from_power_sums<T: Field>(p: &[T], k: &T, max_j: u32) -> Vec<T> {
    let mut g = vec![T::one()];
    for j in 1..=max_j as usize {
        let mut acc = T::zero();
        for m in 1..=j {
            acc = acc + p[m].clone() * g[j - m].clone();
        }
        g.push(k.clone() * acc / T::from_i64(j as i64));
    }
    g
}

/// `g_j(λ)` by its defining sum over weakly increasing index tuples
/// `i_1 ≤ … ≤ i_j`, weighting each by `Π_l (k)_{m_l} / m_l!`.
///
/// The number of tuples is `C(n + j − 1, j)`; intended for `n, j ≤ 8`.
pub fn g_explicit<T: Field>(lambda: &[T], j: u32, k: &JackParam) -> T {
    let kk = T::from_ratio(k.k());
    // weight for multiplicity m of one index: (k)_m / m!
    let weights: Vec<T> = (0..=j).map(|m| rising(&kk, m) / factorial::<T>(m)).collect();
    let mut total = T::zero();
    let mut mults = vec![0u32; lambda.len()];
    distribute(j, 0, &mut mults, &mut |ms| {
        let mut term = T::one();
        for (i, &m) in ms.iter().enumerate() {
            if m > 0 {
                term = term * weights[m as usize].clone() * lambda[i].pow_u32(m);
            }
        }
        total = total.clone() + term;
    });
    total
}

/// Visits every way of writing `remaining` as an ordered sum of
/// `mults.len() - start` nonnegative multiplicities.
fn distribute(remaining: u32, start: usize, mults: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
    if start == mults.len() {
        if remaining == 0 {
            visit(mults);
        }
        return;
    }
    if start + 1 == mults.len() {
        mults[start] = remaining;
        visit(mults);
        mults[start] = 0;
        return;
    }
    for m in 0..=remaining {
        mults[start] = m;
        distribute(remaining - m, start + 1, mults, visit);
    }
    mults[start] = 0;
}

/// `|g_j(λ) − (k)_j / j! · C_(j)(λ)|`.
pub fn g_vs_jack_identity(lambda: &[f64], j: u32, k: &JackParam) -> f64 {
    let g = g_coeffs(lambda, k, j)[j as usize];
    let kk = k.k_f64();
    let single = Partition::from_sorted(if j == 0 { vec![] } else { vec![j] });
    let c = jack_eval(&single, k, lambda);
    (g - rising(&kk, j) / factorial::<f64>(j) * c).abs()
}

/// `Φ(λ; z) = Π_j (1 − λ_j z)^{−k}`, principal branch per factor.
pub fn phi_eval(lambda: &[f64], k: &JackParam, z: Complex64) -> Result<Complex64> {
    let kk = k.k_f64();
    let mut value = Complex64::one();
    for (j, &l) in lambda.iter().enumerate() {
        let base = Complex64::new(1.0, 0.0) - l * z;
        if base.im == 0.0 && base.re <= 0.0 {
            return Err(Error::domain(format!(
                "λ_{} z = {} lies on the branch cut [1, ∞)",
                j + 1,
                l * z
            )));
        }
        value *= (-kk * base.ln()).exp();
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sum(0, &[5.0, 6.0]), 1.0);
        assert_eq!(power_sum(2, &[3.0, 4.0]), 25.0);
        assert_eq!(power_sum::<f64>(1, &[]), 0.0);
        assert_eq!(power_sums(3, &[1.0, 2.0]), vec![1.0, 3.0, 5.0, 9.0]);
    }

    #[test]
    fn degree_two_expansions() {
        let k = JackParam::from_ratio(3, 2).unwrap();
        let kk = k.k().clone();
        let one = BigRational::one();
        let c2 = jack_p_expansion(&p(&[2]), &k);
        assert_eq!(c2.coeff(&p(&[2])), &one / (&kk + &one));
        assert_eq!(c2.coeff(&p(&[1, 1])), &kk / (&kk + &one));
        let c11 = jack_p_expansion(&p(&[1, 1]), &k);
        assert_eq!(c11.coeff(&p(&[2])), -(&one / (&kk + &one)));
        assert_eq!(c11.coeff(&p(&[1, 1])), &one / (&kk + &one));
        let c1 = jack_p_expansion(&p(&[1]), &k);
        assert_eq!(c1.coeffs().len(), 1);
        assert_eq!(c1.coeff(&p(&[1])), one);
    }

    #[test]
    fn one_variable_collapse() {
        let k = JackParam::from_ratio(2, 1).unwrap();
        assert!((jack_eval(&p(&[4]), &k, &[1.3]) - 1.3f64.powi(4)).abs() < 1e-12);
        assert_eq!(jack_eval(&p(&[1, 1]), &k, &[1.3]), 0.0);
        assert_eq!(jack_eval(&p(&[1]), &k, &[1.0, 2.0, 4.0]), 7.0);
    }

    #[test]
    fn schur_value_at_alpha_one() {
        // C_(1,1)(1,1) = 2!/(hook product 2) · s_(1,1)(1,1) = 1
        let k = JackParam::from_ratio(1, 1).unwrap();
        assert!((jack_eval(&p(&[1, 1]), &k, &[1.0, 1.0]) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn ones_values() {
        let k = JackParam::from_ratio(1, 3).unwrap();
        assert_eq!(jack_at_ones(&Partition::empty(), &k, 4), BigRational::one());
        assert_eq!(jack_at_ones(&p(&[1]), &k, 5), q(5, 1));
        assert_eq!(jack_at_ones(&p(&[1, 1, 1]), &k, 2), BigRational::zero());
    }

    #[test]
    fn g_small_orders() {
        let k = JackParam::from_ratio(1, 2).unwrap();
        let lambda = [q(1, 3), q(-2, 1), q(5, 7)];
        let g = g_coeffs(&lambda, &k, 3);
        let p1 = power_sum(1, &lambda);
        let p2 = power_sum(2, &lambda);
        let kk = k.k().clone();
        assert_eq!(g[0], BigRational::one());
        assert_eq!(g[1], &kk * &p1);
        assert_eq!(q(2, 1) * &g[2], &kk * &kk * &p1 * &p1 + &kk * &p2);
        for j in 0..=3 {
            assert_eq!(g_explicit(&lambda, j, &k), g[j as usize]);
        }
        // single variable: (k)_2/2! c^2
        let c = q(3, 1);
        assert_eq!(g_explicit(std::slice::from_ref(&c), 2, &k), rising(&kk, 2) / q(2, 1) * &c * &c);
    }

    #[test]
    fn phi_branch_guard() {
        let k = JackParam::from_ratio(1, 1).unwrap();
        assert_eq!(phi_eval(&[1.0, 2.0], &k, Complex64::new(0.0, 0.0)).unwrap(), Complex64::one());
        let v = phi_eval(&[0.5], &k, Complex64::new(0.5, 0.0)).unwrap();
        assert!((v.re - 1.0 / 0.75).abs() < 1e-14);
        let err = phi_eval(&[0.1, 2.0], &k, Complex64::new(0.75, 0.0)).unwrap_err();
        assert!(err.to_string().contains("λ_2"));
    }
}
