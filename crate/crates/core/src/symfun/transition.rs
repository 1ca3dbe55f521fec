//! Change of basis from monomial to power-sum symmetric functions.
//!
//! `p_λ = Σ_{μ ≥ λ} R_{λμ} m_μ` where `R_{λμ}` counts the ways of merging
//! the parts of `λ` into the parts of `μ`. The matrix is triangular in
//! lexicographic order, so the inverse change of basis is a forward solve.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::Zero;

use crate::partitions::{enumerate_partitions, Partition};

/// `R_{λμ}` for all partitions of one degree.
#[derive(Debug)]
pub struct TransitionTable {
    /// Partitions of the degree in lexicographically increasing order,
    /// starting from `(1^m)`.
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// `rows[λ]` lists `(μ, R_{λμ})` for the nonzero entries.
    rows: Vec<Vec<(usize, u128)>>,
}

impl TransitionTable {
    fn build(degree: u32) -> Self {
        let mut partitions = enumerate_partitions(degree, degree as usize);
        partitions.reverse();
        let index: HashMap<Partition, usize> =
            partitions.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let rows = partitions
            .iter()
            .map(|lambda| {
                let mut row: Vec<(usize, u128)> = power_sum_in_monomials(lambda)
                    .into_iter()
                    .map(|(mu, c)| (index[&mu], c))
                    .collect();
                row.sort_unstable();
                row
            })
            .collect();
        TransitionTable { partitions, index, rows }
    }

    /// Shared table for `degree`, built on first use.
    pub fn for_degree(degree: u32) -> Arc<TransitionTable> {
        static TABLES: OnceLock<Mutex<HashMap<u32, Arc<TransitionTable>>>> = OnceLock::new();
        let tables = TABLES.get_or_init(Default::default);
        if let Some(t) = tables.lock().expect("transition cache poisoned").get(&degree) {
            return Arc::clone(t);
        }
        // built outside the lock; a concurrent duplicate build yields the same table
        let table = Arc::new(TransitionTable::build(degree));
        let mut guard = tables.lock().expect("transition cache poisoned");
        Arc::clone(guard.entry(degree).or_insert(table))
    }

    /// Converts `Σ_μ c_μ m_μ` to `Σ_λ d_λ p_λ`.
    pub fn monomial_to_power_sum(&self, monomial: &[(Partition, BigRational)]) -> Vec<(Partition, BigRational)> {
        let mut target = vec![BigRational::zero(); self.partitions.len()];
        let mut start = target.len();
        for (mu, c) in monomial {
            let i = self.index[mu];
            target[i] = c.clone();
            start = start.min(i);
        }
        // p_λ only reaches monomials coarser than λ, so coefficients of
        // partitions before the first target entry vanish
        let mut out = Vec::new();
        let mut acc = vec![BigRational::zero(); target.len()];
        for i in start..target.len() {
            let residual = &target[i] - &acc[i];
            if residual.is_zero() {
                continue;
            }
            let row = &self.rows[i];
            debug_assert_eq!(row[0].0, i);
            let d = residual / BigRational::from_integer(row[0].1.into());
            for &(j, r) in &row[1..] {
                acc[j] += &d * BigRational::from_integer(r.into());
            }
            out.push((self.partitions[i].clone(), d));
        }
        out
    }
}

/// Monomial expansion of `p_λ`, built one part at a time: multiplying
/// `m_μ` by `p_a` raises one part value `v` of `μ` (or a new zero part) to
/// `v + a`, and the coefficient of the resulting `m_ν` is the multiplicity of
/// `v + a` in `ν`.
pub fn power_sum_in_monomials(lambda: &Partition) -> HashMap<Partition, u128> {
    let mut current: HashMap<Partition, u128> = HashMap::from([(Partition::empty(), 1)]);
    for &a in lambda.parts() {
        let mut next: HashMap<Partition, u128> = HashMap::new();
        for (mu, c) in &current {
            let mut values: Vec<u32> = mu.parts().to_vec();
            values.dedup();
            values.push(0);
            for v in values {
                let mut parts = mu.parts().to_vec();
                match parts.iter().position(|&p| p == v) {
                    Some(pos) => parts[pos] += a,
                    None => parts.push(a),
                }
                let nu = Partition::from_unsorted(parts);
                let mult = nu.parts().iter().filter(|&&p| p == v + a).count() as u128;
                let term = c.checked_mul(mult).expect("power-sum transition overflow");
                *next.entry(nu).or_insert(0) += term;
            }
        }
        current = next;
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn small_power_sums() {
        // p_1^2 = m_2 + 2 m_11
        let e = power_sum_in_monomials(&p(&[1, 1]));
        assert_eq!(e[&p(&[2])], 1);
        assert_eq!(e[&p(&[1, 1])], 2);
        // p_2 p_1 = m_3 + m_21
        let e = power_sum_in_monomials(&p(&[2, 1]));
        assert_eq!(e.len(), 2);
        assert_eq!(e[&p(&[3])], 1);
        assert_eq!(e[&p(&[2, 1])], 1);
        // p_1^3 = m_3 + 3 m_21 + 6 m_111
        let e = power_sum_in_monomials(&p(&[1, 1, 1]));
        assert_eq!(e[&p(&[2, 1])], 3);
        assert_eq!(e[&p(&[1, 1, 1])], 6);
    }

    #[test]
    fn monomial_to_power_sum_inverts() {
        // m_11 = (p_1^2 - p_2)/2
        let t = TransitionTable::for_degree(2);
        let half = BigRational::new(1.into(), 2.into());
        let got = t.monomial_to_power_sum(&[(p(&[1, 1]), BigRational::from_integer(1.into()))]);
        assert_eq!(got, vec![(p(&[1, 1]), half.clone()), (p(&[2]), -half)]);
    }
}
