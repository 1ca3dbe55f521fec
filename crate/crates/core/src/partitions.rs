//! Integer partitions: enumeration, dominance order and the statistics that
//! the symmetric-function expansions are built from.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// The representation is canonical: zero parts are never stored, so two
/// partitions compare equal exactly when they have the same nonzero parts.
/// The derived `Ord` is lexicographic on the parts, which is convenient for
/// ordered maps but is not the dominance order; use [`dominance_cmp`] for
/// the latter.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition, dropping trailing zeros.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition { parts, reason: "zero part before a positive part" });
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition { parts, reason: "parts are not weakly decreasing" });
        }
        Ok(Partition(parts))
    }

    /// Caller guarantees the parts are positive and weakly decreasing.
    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]) && !parts.contains(&0));
        Partition(parts)
    }

    /// Sorts arbitrary nonnegative entries into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `i`-th part (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(part value, multiplicity)` pairs in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// The transposed Young diagram.
    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        let parts = (1..=first)
            .map(|j| self.0.iter().take_while(|&&p| p >= j).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Cells `(row, column)` of the Young diagram, both 0-based, row-major.
    pub fn cells(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }

    /// Partial sums `κ_1, κ_1 + κ_2, …` padded to `len` entries.
    fn partial_sums(&self, len: usize) -> Vec<u32> {
        let mut acc = 0;
        (0..len)
            .map(|i| {
                acc += self.part(i);
                acc
            })
            .collect()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Accepts `2,1,1`, `(2,1,1)` and `()`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| Error::parse(format!("partition part {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `weight` with at most `max_length` parts, in reverse
/// lexicographic order: `(3), (2,1), (1,1,1)`.
///
/// Reverse lexicographic order is a linear extension of dominance read from
/// the top, so a dominance-triangular system can be solved in one pass over
/// the returned list.
pub fn enumerate_partitions(weight: u32, max_length: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(weight, weight, max_length, &mut current, &mut out);
    out
}

fn fill(remaining: u32, cap: u32, slots: usize, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    if slots == 0 {
        return;
    }
    for p in (1..=cap.min(remaining)).rev() {
        // the remaining slots must be able to hold what is left
        if (p as u64) * (slots as u64) < remaining as u64 {
            break;
        }
        current.push(p);
        fill(remaining - p, p, slots - 1, current, out);
        current.pop();
    }
}

/// `z_κ = Π_i i^{m_i} m_i!` where `m_i` is the multiplicity of part `i`.
pub fn z_lambda(kappa: &Partition) -> BigUint {
    let mut z = BigUint::one();
    for (value, mult) in kappa.multiplicities() {
        for c in 1..=mult {
            z *= BigUint::from(value) * BigUint::from(c);
        }
    }
    z
}

/// Dominance comparison of two partitions of equal weight.
///
/// Returns `Some(Less)` when `a` is strictly dominated by `b`, `Some(Equal)`
/// when they coincide, `Some(Greater)` when `a` strictly dominates `b` and
/// `None` when they are incomparable.
pub fn dominance_cmp(a: &Partition, b: &Partition) -> Result<Option<Ordering>> {
    let (wa, wb) = (a.weight(), b.weight());
    if wa != wb {
        return Err(Error::UnequalWeights { left: wa, right: wb });
    }
    let len = a.len().max(b.len());
    let (sa, sb) = (a.partial_sums(len), b.partial_sums(len));
    let mut le = true;
    let mut ge = true;
    for (x, y) in sa.iter().zip(&sb) {
        le &= x <= y;
        ge &= x >= y;
    }
    Ok(match (le, ge) {
        (true, true) => Some(Ordering::Equal),
        (true, false) => Some(Ordering::Less),
        (false, true) => Some(Ordering::Greater),
        (false, false) => None,
    })
}

/// `Some(true)` if `a ≤ b` in dominance order, `Some(false)` if `b < a`,
/// `None` if the two are incomparable.
pub fn dominance_leq(a: &Partition, b: &Partition) -> Result<Option<bool>> {
    Ok(dominance_cmp(a, b)?.map(|o| o != Ordering::Greater))
}

/// Dominance test without the weight check, for internal hot loops.
pub(crate) fn dominated_by(a: &Partition, b: &Partition) -> bool {
    let mut sa = 0;
    let mut sb = 0;
    for i in 0..a.len().max(b.len()) {
        sa += a.part(i);
        sb += b.part(i);
        if sa > sb {
            return false;
        }
    }
    true
}
