//! Jack polynomials in the monomial basis.
//!
//! `P_κ = m_κ + Σ_{μ < κ} c_{κμ} m_μ` is the eigenfunction of the
//! Laplace–Beltrami type operator
//! `D(α) = (α/2) Σ x_i² ∂_i² + Σ_{i≠j} x_i²/(x_i − x_j) ∂_i`.
//! Comparing coefficients of `m_μ` in `D(α) P_κ = e_κ P_κ` gives
//!
//! ```text
//! (ρ_κ − ρ_μ) c_{κμ} = (2/α) Σ_{i<j} Σ_{t=1}^{μ_j} (μ_i − μ_j + 2t) c_{κ, sort(μ + t e_i − t e_j)}
//! ρ_μ = Σ_i μ_i (μ_i − 1 − (2/α)(i − 1))
//! ```
//!
//! Every term on the right is nonnegative for `α > 0`, so the recursion is
//! stable in floating point as well as exact over the rationals. The
//! partitions reachable from `μ` never get longer, which lets the same code
//! build the restriction of `P_κ` to `r` variables.

use std::collections::HashMap;

use crate::numeric::Field;
use crate::partitions::{dominated_by, enumerate_partitions, Partition};

/// Monic monomial coefficients of `P_κ` over partitions `μ ≤ κ` with at most
/// `max_len` parts, in reverse lexicographic order (so `κ` comes first with
/// coefficient one).
pub fn monic_monomial_coeffs<T: Field>(kappa: &Partition, alpha: &T, max_len: usize) -> Vec<(Partition, T)> {
    let support: Vec<Partition> = enumerate_partitions(kappa.weight(), max_len)
        .into_iter()
        .filter(|mu| dominated_by(mu, kappa))
        .collect();
    let index: HashMap<&Partition, usize> = support.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let two_over_alpha = T::from_i64(2) / alpha.clone();
    let (a_kappa, b_kappa) = rho_parts(kappa);

    let mut coeffs: Vec<T> = Vec::with_capacity(support.len());
    for (pos, mu) in support.iter().enumerate() {
        if pos == 0 {
            debug_assert_eq!(mu, kappa);
            coeffs.push(T::one());
            continue;
        }
        let parts = mu.parts();
        let mut sum = T::zero();
        let mut scratch = Vec::with_capacity(parts.len());
        for i in 0..parts.len() {
            for j in (i + 1)..parts.len() {
                for t in 1..=parts[j] {
                    scratch.clear();
                    scratch.extend_from_slice(parts);
                    scratch[i] += t;
                    scratch[j] -= t;
                    let lambda = Partition::from_unsorted(scratch.clone());
                    if let Some(&idx) = index.get(&lambda) {
                        debug_assert!(idx < pos);
                        let weight = (parts[i] as i64) - (parts[j] as i64) + 2 * (t as i64);
                        sum = sum + T::from_i64(weight) * coeffs[idx].clone();
                    }
                }
            }
        }
        let (a_mu, b_mu) = rho_parts(mu);
        let gap = T::from_i64(a_kappa - a_mu) - two_over_alpha.clone() * T::from_i64(b_kappa - b_mu);
        coeffs.push(two_over_alpha.clone() * sum / gap);
    }
    support.into_iter().zip(coeffs).collect()
}

/// `(Σ μ_i(μ_i − 1), Σ (i−1) μ_i)`, so that `ρ_μ = A − (2/α) B`.
fn rho_parts(mu: &Partition) -> (i64, i64) {
    mu.parts().iter().enumerate().fold((0, 0), |(a, b), (i, &p)| {
        let p = p as i64;
        (a + p * (p - 1), b + (i as i64) * p)
    })
}

/// Factor `C_κ / P_κ = α^{|κ|} |κ|! / Π_{s∈κ} (l(s) + α(a(s) + 1))`.
pub fn c_normalization<T: Field>(kappa: &Partition, alpha: &T) -> T {
    let conj = kappa.conjugate();
    let mut value = T::one();
    for (t, (row, col)) in kappa.cells().enumerate() {
        let arm = kappa.part(row) - col - 1;
        let leg = conj.part(col as usize) - row as u32 - 1;
        let hook = T::from_i64(leg as i64) + alpha.clone() * T::from_i64(arm as i64 + 1);
        value = value * alpha.clone() * T::from_i64(t as i64 + 1) / hook;
    }
    value
}
