//! Vershik–Kerov sequences: the `≪` order, finite-`n` parameter estimates
//! and explicit generators realizing prescribed parameters.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::bessel::MultiplicityB;
use crate::error::{Error, Result};
use crate::symfun::JackParam;

/// `x ≪ y` iff `|x| < |y|`, or `|x| = |y|` and `x ≤ y`.
pub fn ll_compare(x: f64, y: f64) -> Ordering {
    x.abs().total_cmp(&y.abs()).then_with(|| x.total_cmp(&y))
}

/// Stable sort into `≪`-descending order.
pub fn sort_ll_desc(v: &[f64]) -> Vec<f64> {
    let mut out = v.to_vec();
    out.sort_by(|a, b| ll_compare(*b, *a));
    out
}

pub fn is_ll_descending(v: &[f64]) -> bool {
    v.windows(2).all(|w| ll_compare(w[0], w[1]) != Ordering::Less)
}

/// VK parameters `ω = (α, β, γ)` with finitely many nonzero `α_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct VKParams {
    alpha: Vec<f64>,
    beta: f64,
    gamma: f64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    #[serde(default)]
    alpha: Vec<f64>,
    #[serde(default)]
    beta: f64,
    #[serde(default)]
    gamma: f64,
}

impl TryFrom<RawParams> for VKParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        VKParams::new(raw.alpha, raw.beta, raw.gamma)
    }
}

impl From<VKParams> for RawParams {
    fn from(p: VKParams) -> Self {
        RawParams { alpha: p.alpha, beta: p.beta, gamma: p.gamma }
    }
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be finite, got {v}")))
    }
}

impl VKParams {
    /// Trailing zeros of `alpha` are dropped; the rest must be nonzero and
    /// `≪`-descending.
    pub fn new(mut alpha: Vec<f64>, beta: f64, gamma: f64) -> Result<Self> {
        check_finite("beta", beta)?;
        check_finite("gamma", gamma)?;
        for &a in &alpha {
            check_finite("alpha entry", a)?;
        }
        if gamma < 0.0 {
            return Err(Error::domain(format!("gamma must be nonnegative, got {gamma}")));
        }
        while alpha.last() == Some(&0.0) {
            alpha.pop();
        }
        if !is_ll_descending(&alpha) {
            return Err(Error::domain(format!("alpha {alpha:?} is not ≪-descending")));
        }
        Ok(VKParams { alpha, beta, gamma })
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `δ = γ + Σ α_i²`.
    pub fn delta(&self) -> f64 {
        self.gamma + self.alpha.iter().map(|a| a * a).sum::<f64>()
    }

    /// `β′ = β − Σ α_i`.
    pub fn beta_prime(&self) -> f64 {
        self.beta - self.alpha.iter().sum::<f64>()
    }

    /// Whether `(α, β)` with `γ = 0`, `α ≥ 0` lies in `Ω_+`.
    pub fn to_plus(&self) -> Result<VKParamsPlus> {
        if self.gamma != 0.0 {
            return Err(Error::precondition(format!("Ω_+ requires gamma = 0, got {}", self.gamma)));
        }
        VKParamsPlus::new(self.alpha.clone(), self.beta)
    }
}

/// `(α, β) ∈ Ω_+`: `α_1 ≥ … ≥ α_m > 0`, `Σ α_i ≤ β`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct VKParamsPlus {
    alpha: Vec<f64>,
    beta: f64,
}

impl TryFrom<RawParams> for VKParamsPlus {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        if raw.gamma != 0.0 {
            return Err(Error::precondition(format!("Ω_+ requires gamma = 0, got {}", raw.gamma)));
        }
        VKParamsPlus::new(raw.alpha, raw.beta)
    }
}

impl From<VKParamsPlus> for RawParams {
    fn from(p: VKParamsPlus) -> Self {
        RawParams { alpha: p.alpha, beta: p.beta, gamma: 0.0 }
    }
}

impl VKParamsPlus {
    pub fn new(mut alpha: Vec<f64>, beta: f64) -> Result<Self> {
        check_finite("beta", beta)?;
        while alpha.last() == Some(&0.0) {
            alpha.pop();
        }
        if alpha.iter().any(|a| !a.is_finite() || *a <= 0.0) {
            return Err(Error::precondition(format!("Ω_+ requires positive alpha entries, got {alpha:?}")));
        }
        if alpha.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::precondition(format!("Ω_+ requires descending alpha, got {alpha:?}")));
        }
        let sum: f64 = alpha.iter().sum();
        if beta < 0.0 || sum > beta {
            return Err(Error::precondition(format!("Ω_+ requires 0 ≤ Σ alpha = {sum} ≤ beta = {beta}")));
        }
        Ok(VKParamsPlus { alpha, beta })
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn beta_prime(&self) -> f64 {
        self.beta - self.alpha.iter().sum::<f64>()
    }
}

impl From<VKParamsPlus> for VKParams {
    fn from(p: VKParamsPlus) -> Self {
        VKParams { alpha: p.alpha, beta: p.beta, gamma: 0.0 }
    }
}

/// Rows `λ(n) ∈ R^n` indexed by `n`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TriangularArray {
    rows: BTreeMap<usize, Vec<f64>>,
}

impl TriangularArray {
    pub fn new() -> Self {
        TriangularArray::default()
    }

    /// Inserts row `n`, which must have `n` entries in `≪`-descending order.
    pub fn insert(&mut self, n: usize, row: Vec<f64>) -> Result<()> {
        if n == 0 || row.len() != n {
            return Err(Error::precondition(format!("row {n} must have {n} entries, got {}", row.len())));
        }
        if !is_ll_descending(&row) {
            return Err(Error::precondition(format!("row {n} is not ≪-descending")));
        }
        self.rows.insert(n, row);
        Ok(())
    }

    pub fn row(&self, n: usize) -> Option<&[f64]> {
        self.rows.get(&n).map(Vec::as_slice)
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &[f64])> {
        self.rows.iter().map(|(n, r)| (*n, r.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Text form: line `n` holds row `n` as whitespace-separated decimals,
    /// absent rows are blank lines. Values print in shortest round-trip
    /// form, so [`TriangularArray::parse`] restores them bit for bit.
    pub fn to_text(&self) -> String {
        let last = self.rows.keys().next_back().copied().unwrap_or(0);
        let mut out = String::new();
        for n in 1..=last {
            if let Some(row) = self.rows.get(&n) {
                for (i, v) in row.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    write!(out, "{v}").expect("writing to a String");
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut arr = TriangularArray::new();
        for (idx, line) in text.lines().enumerate() {
            let n = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|e| Error::parse(format!("line {n}: {t:?}: {e}"))))
                .collect::<Result<Vec<f64>>>()?;
            if row.len() != n {
                return Err(Error::parse(format!("line {n} must hold {n} values, found {}", row.len())));
            }
            arr.insert(n, row).map_err(|e| Error::parse(format!("line {n}: {e}")))?;
        }
        Ok(arr)
    }
}

/// Finite-`n` estimates of the VK parameters of one row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParamEstimate {
    pub n: usize,
    /// `λ(n)_i / n` for `i ≤ i_max`.
    pub alpha_hat: Vec<f64>,
    /// `p_1(λ(n)) / n`.
    pub beta_hat: f64,
    /// `p_2(λ(n)) / n²`.
    pub delta_hat: f64,
    /// `δ̂ − Σ_{i ≤ i_max} α̂_i²`, signed.
    pub gamma_hat: f64,
}

pub fn estimate_params(arr: &TriangularArray, n: usize, i_max: usize) -> Result<ParamEstimate> {
    let row = arr.row(n).ok_or_else(|| Error::precondition(format!("row {n} is not present")))?;
    if i_max > n {
        return Err(Error::precondition(format!("i_max = {i_max} exceeds n = {n}")));
    }
    Ok(estimate_row(row, i_max))
}

/// [`estimate_params`] for a bare row.
pub fn estimate_row(row: &[f64], i_max: usize) -> ParamEstimate {
    let n = row.len();
    let nf = n as f64;
    let alpha_hat: Vec<f64> = row.iter().take(i_max).map(|v| v / nf).collect();
    let beta_hat = row.iter().sum::<f64>() / nf;
    let delta_hat = row.iter().map(|v| v * v).sum::<f64>() / (nf * nf);
    let gamma_hat = delta_hat - alpha_hat.iter().map(|a| a * a).sum::<f64>();
    ParamEstimate { n, alpha_hat, beta_hat, delta_hat, gamma_hat }
}

/// Tail of length `len` with `Σ x = n β′` and `Σ x² = n² γ`, in
/// `≪`-descending order.
///
/// For `γ = 0` the tail is the constant `nβ′/len`. Otherwise it is the
/// balanced block `c ± a` (alternating signs, one unpaired `c` when `len` is
/// odd) with `c = nβ′/len`; the pairs cancel in both sums, so `p_1` and
/// `p_2` hit their targets exactly and every entry is `O(√n)`.
fn vk_tail(n: usize, len: usize, beta_prime: f64, gamma: f64) -> Vec<f64> {
    if len == 0 {
        return Vec::new();
    }
    let nf = n as f64;
    let c = nf * beta_prime / len as f64;
    if gamma == 0.0 {
        return vec![c; len];
    }
    let pairs = len / 2;
    let a = ((nf * nf * gamma - len as f64 * c * c) / (2 * pairs) as f64).max(0.0).sqrt();
    let mut tail = Vec::with_capacity(len);
    for _ in 0..pairs {
        tail.push(c + a);
        tail.push(c - a);
    }
    if len % 2 == 1 {
        tail.push(c);
    }
    sort_ll_desc(&tail)
}

fn vk_row_unchecked(omega: &VKParams, n: usize) -> Vec<f64> {
    let m = omega.alpha.len();
    let mut row: Vec<f64> = omega.alpha.iter().map(|a| n as f64 * a).collect();
    row.extend(vk_tail(n, n - m, omega.beta_prime(), omega.gamma));
    row
}

/// Whether `generate_vk(ω, n)` is admissible: the tail can reach its target
/// sum and the prepended block stays `≪`-above it.
fn vk_row_valid(omega: &VKParams, n: usize) -> bool {
    let m = omega.alpha.len();
    if n <= m && m > 0 || n == 0 {
        return false;
    }
    let len = n - m;
    let bp = omega.beta_prime();
    if omega.gamma > 0.0 && (len < 2 || (len as f64) * omega.gamma < bp * bp) {
        return false;
    }
    if omega.gamma == 0.0 && bp != 0.0 && len == 0 {
        return false;
    }
    is_ll_descending(&vk_row_unchecked(omega, n))
}

/// Smallest `n` for which [`generate_vk`] accepts `ω`, searched up to
/// `10^7`.
pub fn vk_min_n(omega: &VKParams) -> Result<usize> {
    let start = omega.alpha.len().max(1);
    let mut n = start;
    while n <= 10_000_000 {
        if vk_row_valid(omega, n) {
            return Ok(n);
        }
        n = if n < 4096 { n + 1 } else { n + n / 64 };
    }
    Err(Error::precondition("no admissible row length below 10^7"))
}

/// Row `n` of a VK sequence with parameters `ω`: `(nα_1, …, nα_m, tail)`.
pub fn generate_vk(omega: &VKParams, n: usize) -> Result<Vec<f64>> {
    if !vk_row_valid(omega, n) {
        let min = vk_min_n(omega)?;
        return Err(Error::precondition(format!(
            "row length {n} is not admissible for these parameters; the smallest admissible length is {min}"
        )));
    }
    Ok(vk_row_unchecked(omega, n))
}

/// Smallest `n > m` with `α_m (n − m) ≥ β′`, so the row is descending.
pub fn vk_plus_min_n(omega: &VKParamsPlus) -> usize {
    let m = omega.alpha.len();
    match omega.alpha.last() {
        None => 1,
        Some(&am) => {
            let bp = omega.beta_prime().max(0.0);
            let mut n = m + ((bp / am).floor() as usize).max(1);
            while (am * (n - m) as f64) < bp {
                n += 1;
            }
            n
        }
    }
}

/// Row `n` of the nonnegative VK sequence `(nα_1, …, nα_m, nβ′/(n−m), …)`.
pub fn generate_vk_plus(omega: &VKParamsPlus, n: usize) -> Result<Vec<f64>> {
    let m = omega.alpha.len();
    let min = vk_plus_min_n(omega);
    if n <= m || n < min {
        return Err(Error::precondition(format!(
            "row length {n} is too small for these parameters; the smallest admissible length is {min}"
        )));
    }
    let nf = n as f64;
    let mut row: Vec<f64> = omega.alpha.iter().map(|a| nf * a).collect();
    let fill = nf * omega.beta_prime().max(0.0) / (n - m) as f64;
    row.resize(n, fill);
    Ok(row)
}

/// The classical division algebras and their real dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preset {
    /// Real, `d = 1`.
    R,
    /// Complex, `d = 2`.
    C,
    /// Quaternionic, `d = 4`.
    H,
}

impl Preset {
    pub fn dim(self) -> u32 {
        match self {
            Preset::R => 1,
            Preset::C => 2,
            Preset::H => 4,
        }
    }

    pub fn from_dim(d: u32) -> Result<Self> {
        match d {
            1 => Ok(Preset::R),
            2 => Ok(Preset::C),
            4 => Ok(Preset::H),
            _ => Err(Error::domain(format!("geometric dimension must be 1, 2 or 4, got {d}"))),
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "R" | "r" => Ok(Preset::R),
            "C" | "c" => Ok(Preset::C),
            "H" | "h" => Ok(Preset::H),
            other => Err(Error::parse(format!("preset must be R, C or H, got {other:?}"))),
        }
    }
}

/// `n ↦ p_n` for the larger matrix dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PRule {
    /// `p_n = a·n + c`.
    Affine { a: i64, c: i64 },
}

impl PRule {
    pub fn identity() -> Self {
        PRule::Affine { a: 1, c: 0 }
    }

    pub fn eval(self, n: usize) -> i64 {
        let PRule::Affine { a, c } = self;
        a * n as i64 + c
    }

    /// `(p_n − n)/n → 0`.
    pub fn is_sublinear_gap(self) -> bool {
        let PRule::Affine { a, .. } = self;
        a == 1
    }
}

impl FromStr for PRule {
    type Err = Error;

    /// Accepts `n`, `2n`, `n+3`, `2n-1`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::parse(format!("p-rule must look like n, 2n or n+c, got {s:?}"));
        let pos = t.find('n').ok_or_else(bad)?;
        let a = match &t[..pos] {
            "" => 1,
            coef => coef.parse::<i64>().map_err(|_| bad())?,
        };
        let c = match &t[pos + 1..] {
            "" => 0,
            rest => rest.strip_prefix('+').unwrap_or(rest).parse::<i64>().map_err(|_| bad())?,
        };
        Ok(PRule::Affine { a, c })
    }
}

/// Multiplicities of the Grassmannian Cartan motion groups:
/// `k = d/2`, `k′_n = (d/2)(p_n − n + 1) − 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeometricPreset {
    pub d: u32,
    pub rule: PRule,
}

pub fn geometric_preset(d: u32, rule: PRule) -> Result<GeometricPreset> {
    Preset::from_dim(d)?;
    Ok(GeometricPreset { d, rule })
}

impl GeometricPreset {
    pub fn k(&self) -> JackParam {
        JackParam::from_ratio(self.d as i64, 2).expect("d is positive")
    }

    pub fn k_prime(&self, n: usize) -> Result<BigRational> {
        let p = self.rule.eval(n);
        if p < n as i64 {
            return Err(Error::precondition(format!("p_n = {p} is smaller than n = {n}")));
        }
        let half_d = BigRational::new(BigInt::from(self.d), BigInt::from(2));
        Ok(half_d * BigRational::from_integer(BigInt::from(p - n as i64 + 1)) - BigRational::new(1.into(), 2.into()))
    }

    pub fn multiplicity(&self, n: usize) -> Result<MultiplicityB> {
        MultiplicityB::new(self.k_prime(n)?, self.k())
    }

    /// Whether `k′_n / n → 0`, so that `ν_n ~ kn`.
    pub fn nu_asymptotically_kn(&self) -> bool {
        self.rule.is_sublinear_gap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ll_order_examples() {
        assert_eq!(ll_compare(-3.0, 3.0), Ordering::Less);
        assert_eq!(ll_compare(2.0, -3.0), Ordering::Less);
        assert_eq!(ll_compare(-1.0, -1.0), Ordering::Equal);
        assert_eq!(sort_ll_desc(&[1.0, -1.0, 0.0, 2.0]), vec![2.0, 1.0, -1.0, 0.0]);
        let sample = [3.0, -3.0, 2.0, 1.0, -1.0, -1.0, 0.0, 0.0];
        assert_eq!(sort_ll_desc(&sample), sample.to_vec());
        assert!(sort_ll_desc(&[]).is_empty());
    }

    #[test]
    fn vk_plus_rows() {
        let w = VKParamsPlus::new(vec![2.0, 1.0], 4.0).unwrap();
        assert_eq!(generate_vk_plus(&w, 4).unwrap(), vec![8.0, 4.0, 2.0, 2.0]);
        let w = VKParamsPlus::new(vec![], 1.0).unwrap();
        assert_eq!(generate_vk_plus(&w, 3).unwrap(), vec![1.0, 1.0, 1.0]);
        let w = VKParamsPlus::new(vec![1.0], 1.0).unwrap();
        assert_eq!(generate_vk_plus(&w, 5).unwrap(), vec![5.0, 0.0, 0.0, 0.0, 0.0]);
        let w = VKParamsPlus::new(vec![0.1], 1.0).unwrap();
        assert_eq!(vk_plus_min_n(&w), 10);
        assert!(generate_vk_plus(&w, 9).unwrap_err().to_string().contains("10"));
        assert!(VKParamsPlus::new(vec![1.0, 1.0], 1.5).is_err());
    }

    #[test]
    fn vk_special_rows() {
        let w = VKParams::new(vec![], 0.7, 0.0).unwrap();
        assert_eq!(generate_vk(&w, 5).unwrap(), vec![0.7; 5]);
        let w = VKParams::new(vec![0.5], 0.5, 0.0).unwrap();
        assert_eq!(generate_vk(&w, 4).unwrap(), vec![2.0, 0.0, 0.0, 0.0]);
        let w = VKParams::new(vec![], 0.0, 1.0).unwrap();
        let row = generate_vk(&w, 16).unwrap();
        let est = estimate_row(&row, 0);
        assert_eq!(est.beta_hat, 0.0);
        assert!((est.delta_hat - 1.0).abs() < 1e-15);
        assert!((est.gamma_hat - 1.0).abs() < 1e-15);
    }

    #[test]
    fn parameter_validation() {
        assert!(VKParams::new(vec![1.0, -2.0], 0.0, 0.0).is_err());
        assert!(VKParams::new(vec![], 0.0, -1.0).is_err());
        assert_eq!(VKParams::new(vec![1.0, 0.0], 0.0, 0.0).unwrap().alpha(), &[1.0]);
        let w: VKParams = serde_json::from_str(r#"{"alpha":[0.5,0.25],"beta":1,"gamma":0.25}"#).unwrap();
        assert!((w.delta() - (0.25 + 0.25 + 0.0625)).abs() < 1e-15);
    }

    #[test]
    fn array_text_round_trip() {
        let mut arr = TriangularArray::new();
        arr.insert(1, vec![0.1]).unwrap();
        arr.insert(3, vec![1.0 / 3.0, -0.2, 1e-300]).unwrap();
        let text = arr.to_text();
        assert_eq!(text.lines().count(), 3);
        assert_eq!(TriangularArray::parse(&text).unwrap(), arr);
        assert!(TriangularArray::parse("1\n2 3 4\n").is_err());
        assert!(arr.insert(2, vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn presets() {
        let p = geometric_preset(2, "n".parse().unwrap()).unwrap();
        assert_eq!(p.k(), JackParam::from_ratio(1, 1).unwrap());
        assert_eq!(p.k_prime(7).unwrap(), BigRational::new(1.into(), 2.into()));
        let p = geometric_preset(1, PRule::identity()).unwrap();
        assert_eq!(p.k_prime(3).unwrap(), BigRational::from_integer(0.into()));
        let p = geometric_preset(4, "2n".parse().unwrap()).unwrap();
        assert_eq!(p.k_prime(5).unwrap(), BigRational::new(23.into(), 2.into()));
        assert!(!p.nu_asymptotically_kn());
        let p = geometric_preset(2, "n-1".parse().unwrap()).unwrap();
        assert!(p.k_prime(4).is_err());
        assert!(geometric_preset(3, PRule::identity()).is_err());
    }
}
