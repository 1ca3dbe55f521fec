//! Reference computations that share no code path with the production
//! expansion, used by tests and the self-test.
//!
//! [`gram_schmidt_jacks`] builds all `C_κ` of one degree from scratch:
//! power sums are expanded into monomials by brute-force assignment of
//! parts to variables, the monomial basis is orthogonalized under
//! `⟨p_λ, p_μ⟩ = δ_{λμ} z_λ α^{ℓ(λ)}` and each result is rescaled by its
//! projection coefficient of `p_1^m`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::partitions::{enumerate_partitions, z_lambda, Partition};
use crate::symfun::{JackParam, PExpansion};

/// Coefficient of `x^μ` (as an exponent vector) in `p_λ`, counting maps from
/// parts of `λ` to variables.
fn power_sum_monomial_coeff(lambda: &Partition, mu: &Partition) -> u64 {
    let target: Vec<u32> = mu.parts().to_vec();
    let mut load = vec![0u32; target.len()];
    fn assign(parts: &[u32], target: &[u32], load: &mut [u32]) -> u64 {
        match parts.split_first() {
            None => (load == target) as u64,
            Some((&a, rest)) => {
                let mut count = 0;
                for v in 0..target.len() {
                    if load[v] + a <= target[v] {
                        load[v] += a;
                        count += assign(rest, target, load);
                        load[v] -= a;
                    }
                }
                count
            }
        }
    }
    assign(lambda.parts(), &target, &mut load)
}

/// Dense inverse of a square rational matrix by Gauss–Jordan elimination.
fn invert(mut a: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular transition matrix");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &scale;
            inv[col][j] = &inv[col][j] / &scale;
        }
        for row in 0..n {
            if row != col && !a[row][col].is_zero() {
                let f = a[row][col].clone();
                for j in 0..n {
                    let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[row][j] -= x;
                    inv[row][j] -= y;
                }
            }
        }
    }
    inv
}

/// `C_κ` for every partition `κ` of `degree`, in the power-sum basis.
pub fn gram_schmidt_jacks(degree: u32, k: &JackParam) -> Vec<(Partition, PExpansion)> {
    let parts = enumerate_partitions(degree, degree.max(1) as usize);
    let size = parts.len();
    let alpha = k.alpha();

    // r[λ][μ] = coefficient of m_μ in p_λ, so p = R m and row μ of R⁻¹
    // expands m_μ in power sums
    let r: Vec<Vec<BigRational>> = parts
        .iter()
        .map(|lambda| {
            parts
                .iter()
                .map(|mu| BigRational::from_integer(BigInt::from(power_sum_monomial_coeff(lambda, mu))))
                .collect()
        })
        .collect();
    let m_in_p = invert(r);
    let norms: Vec<BigRational> = parts
        .iter()
        .map(|lambda| {
            let z = BigRational::from_integer(BigInt::from(z_lambda(lambda)));
            (0..lambda.len()).fold(z, |acc, _| acc * &alpha)
        })
        .collect();
    let inner = |u: &[BigRational], v: &[BigRational]| -> BigRational {
        (0..size).fold(BigRational::zero(), |acc, i| acc + &u[i] * &v[i] * &norms[i])
    };

    // orthogonalize from the bottom of the dominance order upwards
    let mut jacks: Vec<(usize, Vec<BigRational>)> = Vec::with_capacity(size);
    for idx in (0..size).rev() {
        let mut v = m_in_p[idx].clone();
        for (_, prev) in &jacks {
            let coeff = inner(&m_in_p[idx], prev) / inner(prev, prev);
            for i in 0..size {
                v[i] -= &coeff * &prev[i];
            }
        }
        jacks.push((idx, v));
    }

    let ones = parts.iter().position(|p| p.parts().iter().all(|&x| x == 1) && p.weight() == degree);
    let mut p1m = vec![BigRational::zero(); size];
    if let Some(i) = ones {
        p1m[i] = BigRational::one();
    }
    let mut out: HashMap<usize, PExpansion> = HashMap::new();
    for (idx, v) in &jacks {
        let scale = inner(&p1m, v) / inner(v, v);
        let coeffs = parts.iter().cloned().zip(v.iter().map(|c| c * &scale));
        out.insert(*idx, PExpansion::new(degree, coeffs).expect("homogeneous"));
    }
    (0..size).map(|i| (parts[i].clone(), out.remove(&i).expect("all computed"))).collect()
}

/// Scalar `₀F₁(; b; t) = Σ_j t^j / ((b)_j j!)` summed until terms fall below
/// `1e-17` of the running total.
pub fn scalar_0f1(b: f64, t: f64) -> f64 {
    let mut term = 1.0;
    let mut total = 1.0;
    for j in 1..10_000 {
        term *= t / ((b + (j - 1) as f64) * j as f64);
        total += term;
        if term.abs() < 1e-17 * total.abs() {
            break;
        }
    }
    total
}
