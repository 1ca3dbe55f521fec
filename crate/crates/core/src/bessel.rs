//! Bessel functions of type `A_{n−1}` and `B_n` as truncated Jack series.
//!
//! ```text
//! J_A(λ, z) = Σ_κ C_κ(λ) [kr]_κ / ([kn]_κ |κ|!) · P_κ(z)
//! J_B(λ, z) = Σ_κ C_κ(λ²) [kr]_κ / (4^{|κ|} [kn]_κ [ν_n]_κ |κ|!) · P_κ(z²)
//! ```
//!
//! with `P_κ = C_κ / C_κ(1_r)`, `ℓ(κ) ≤ r`. Evaluating `C_κ(λ)` for `λ` of
//! length 64 and `|κ|` near 200 is out of reach through power sums, so the
//! engine reads the Jack coefficients off the Cauchy identity instead:
//!
//! ```text
//! Π_{i ≤ r} Φ(λ; y_i) = Σ_κ [kr]_κ/|κ|! C_κ(λ) P_κ(y) = Σ_κ b_κ(λ) P̄_κ(y)
//! ```
//!
//! where `P̄_κ` is the monic Jack polynomial in `r` variables. The monomial
//! coefficient of `m_μ(y)` on the left is `Π_i g_{μ_i}(λ)`, so `b_κ` follows
//! from a dominance-triangular solve against the monic coefficients, and
//! `J_A = Σ_κ b_κ(λ) P̄_κ(z) / [kn]_κ`. The same construction with `λ²`
//! gives `J_B`. Only partitions with at most `r` parts ever appear.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{c64, cdd, norm, parse_rational, ratio_to_f64, rising, Cdd, Dd, Field};
use crate::partitions::{enumerate_partitions, Partition};
use crate::symfun::{g_coeffs, g_coeffs_from_power_sums, jack, power_sums, JackParam};

/// Multiplicity `(k′, k)` of the root system `B_n`: `k′` on `±e_i`, `k` on
/// `±(e_i ± e_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiplicityB {
    k_prime: BigRational,
    k: JackParam,
}

impl MultiplicityB {
    pub fn new(k_prime: BigRational, k: JackParam) -> Result<Self> {
        if k_prime.is_negative() {
            return Err(Error::domain(format!("k' must be nonnegative, got {k_prime}")));
        }
        Ok(MultiplicityB { k_prime, k })
    }

    /// Parses both multiplicities from rational strings such as `"1/2"`.
    pub fn parse(k_prime: &str, k: &str) -> Result<Self> {
        MultiplicityB::new(parse_rational(k_prime)?, k.parse()?)
    }

    pub fn k_prime(&self) -> &BigRational {
        &self.k_prime
    }

    pub fn k(&self) -> &JackParam {
        &self.k
    }

    /// `ν_n = k′ + k(n − 1) + 1/2`, exactly.
    pub fn nu_exact(&self, n: usize) -> BigRational {
        let half = BigRational::new(1.into(), 2.into());
        &self.k_prime + self.k.k() * BigRational::from_integer(BigInt::from(n as i64 - 1)) + half
    }

    pub fn nu(&self, n: usize) -> f64 {
        ratio_to_f64(&self.nu_exact(n))
    }
}

/// Truncation policy for the hypergeometric series.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesConfig {
    /// Largest `|κ|` summed.
    pub max_degree: u32,
    /// A degree layer is negligible below `rel_tol · |partial sum|`.
    pub rel_tol: f64,
    /// Number of consecutive negligible layers that ends the summation.
    pub stagnation_window: u32,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig { max_degree: 60, rel_tol: 1e-10, stagnation_window: 3 }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_degree < 1 {
            return Err(Error::domain("max_degree must be at least 1"));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::domain(format!("rel_tol must lie in (0, 1), got {}", self.rel_tol)));
        }
        if self.stagnation_window < 1 {
            return Err(Error::domain("stagnation_window must be at least 1"));
        }
        Ok(())
    }
}

/// A truncated series value.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    /// Largest modulus among the final `stagnation_window` layers summed.
    pub tail_estimate: f64,
    /// Highest degree layer included.
    pub degree: u32,
    /// Set when `max_degree` was reached before the layers stagnated.
    pub truncated: bool,
    /// Sum of each degree layer, from degree 0.
    pub layers: Vec<Complex64>,
    /// Partitions dropped because a Pochhammer factor was not positive.
    pub excluded: Vec<Partition>,
}

/// Sums degree layers until `cfg` says stop. The running total is kept in
/// double-double so that large cancelling layers do not lose the result.
pub(crate) fn sum_layers(cfg: &SeriesConfig, mut layer: impl FnMut(u32) -> Cdd) -> SeriesValue {
    let mut total = Cdd::zero();
    let mut layers = Vec::new();
    let mut quiet = 0;
    let mut truncated = true;
    for m in 0..=cfg.max_degree {
        let term = layer(m);
        total = total + term;
        layers.push(c64(term));
        if m > 0 && norm(&term) <= cfg.rel_tol * norm(&total) {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if quiet >= cfg.stagnation_window {
            truncated = false;
            break;
        }
    }
    let window = (cfg.stagnation_window as usize).min(layers.len());
    let tail_estimate = layers[layers.len() - window..].iter().map(|t| t.norm()).fold(0.0, f64::max);
    SeriesValue { value: c64(total), tail_estimate, degree: layers.len() as u32 - 1, truncated, layers, excluded: Vec::new() }
}

/// `[μ]_κ = Π_j (μ − k(j − 1))_{κ_j}`.
pub fn gen_pochhammer(mu: Complex64, kappa: &Partition, k: &JackParam) -> Complex64 {
    let kk = k.k_f64();
    kappa
        .parts()
        .iter()
        .enumerate()
        .fold(Complex64::new(1.0, 0.0), |acc, (j, &part)| acc * rising(&(mu - kk * j as f64), part))
}

/// [`gen_pochhammer`] in exact arithmetic.
pub fn gen_pochhammer_exact(mu: &BigRational, kappa: &Partition, k: &JackParam) -> BigRational {
    kappa.parts().iter().enumerate().fold(BigRational::from_integer(1.into()), |acc, (j, &part)| {
        let shift = k.k() * BigRational::from_integer(BigInt::from(j));
        acc * rising(&(mu - shift), part)
    })
}

/// Monic Jack coefficients `c_{κμ}` in `r` variables for one degree.
#[derive(Debug)]
struct MonicTable {
    /// Partitions of the degree with at most `r` parts, reverse lexicographic.
    partitions: Vec<Partition>,
    /// `rows[κ]` holds `(μ, c_{κμ})` for `μ ≤ κ`, starting with `(κ, 1)`.
    rows: Vec<Vec<(usize, Dd)>>,
}

impl MonicTable {
    fn build(degree: u32, r: usize, alpha: Dd) -> Self {
        let partitions = enumerate_partitions(degree, r);
        let index: HashMap<&Partition, usize> = partitions.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let rows = partitions
            .iter()
            .map(|kappa| {
                jack::monic_monomial_coeffs(kappa, &alpha, r)
                    .into_iter()
                    .map(|(mu, c)| (index[&mu], c))
                    .collect()
            })
            .collect();
        MonicTable { partitions, rows }
    }

    fn shared(degree: u32, r: usize, k: &JackParam) -> Arc<MonicTable> {
        type Key = (BigRational, usize, u32);
        static TABLES: OnceLock<Mutex<HashMap<Key, Arc<MonicTable>>>> = OnceLock::new();
        let tables = TABLES.get_or_init(Default::default);
        let key = (k.k().clone(), r, degree);
        if let Some(t) = tables.lock().expect("monic table cache poisoned").get(&key) {
            return Arc::clone(t);
        }
        let table = Arc::new(MonicTable::build(degree, r, Dd::from_ratio(&k.alpha())));
        Arc::clone(tables.lock().expect("monic table cache poisoned").entry(key).or_insert(table))
    }
}

/// Which series is being summed.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Family {
    A,
    B { nu: Dd },
}

/// One degree layer of a kernel: `layer_m(z) = Σ_μ weights[μ] m_μ(z)`.
#[derive(Debug)]
struct Layer {
    table: Arc<MonicTable>,
    weights: Vec<Cdd>,
}

/// Precomputed series coefficients of `J_A(λ, ·)` or `J_B(λ, ·)` for a fixed
/// `λ`, reusable across many evaluation points `z ∈ C^r`.
#[derive(Debug)]
pub struct BesselKernel {
    family: Family,
    k: JackParam,
    n: usize,
    r: usize,
    scale: Dd,
    /// `g_j(Λ / scale)` with `Λ = λ` (type A) or `λ²` (type B).
    g: Vec<Cdd>,
    layers: Mutex<Vec<Arc<Layer>>>,
    excluded: Mutex<Vec<Partition>>,
}

impl BesselKernel {
    /// Kernel of `J_{A_{n−1}}(λ, ·)` on `C^r`.
    pub fn type_a(k: &JackParam, lambda: &[Complex64], r: usize, max_degree: u32) -> Result<Self> {
        let n = check_ranks(lambda.len(), r)?;
        let args = lambda.iter().map(|&l| cdd(l)).collect();
        Ok(BesselKernel::new(Family::A, k, args, n, r, Dd::from_i64(n as i64), max_degree))
    }

    /// Kernel of `J_{B_n}(λ, ·)` on `C^r`.
    pub fn type_b(mult: &MultiplicityB, lambda: &[Complex64], r: usize, max_degree: u32) -> Result<Self> {
        let n = check_ranks(lambda.len(), r)?;
        let nu = mult.nu_exact(n);
        let squares = lambda.iter().map(|&l| cdd(l) * cdd(l)).collect();
        let one = BigRational::from_integer(1.into());
        let scale = Dd::from_ratio(&(BigRational::from_integer(n.into()) * nu.clone().max(one)));
        let family = Family::B { nu: Dd::from_ratio(&nu) };
        Ok(BesselKernel::new(family, mult.k(), squares, n, r, scale, max_degree))
    }

    fn new(family: Family, k: &JackParam, args: Vec<Cdd>, n: usize, r: usize, scale: Dd, max_degree: u32) -> Self {
        let scaled: Vec<Cdd> = args.iter().map(|&a| a / scale).collect();
        let sums = power_sums(max_degree, &scaled);
        let g = g_coeffs_from_power_sums(&sums, &Cdd::from_ratio(k.k()), max_degree);
        BesselKernel {
            family,
            k: k.clone(),
            n,
            r,
            scale,
            g,
            layers: Mutex::new(Vec::new()),
            excluded: Mutex::new(Vec::new()),
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    pub fn max_degree(&self) -> u32 {
        self.g.len() as u32 - 1
    }

    /// Computes the coefficients of every layer up to `degree`.
    pub fn prepare(&self, degree: u32) {
        for m in 0..=degree.min(self.max_degree()) {
            self.layer(m);
        }
    }

    fn layer(&self, m: u32) -> Arc<Layer> {
        if let Some(l) = self.layers.lock().expect("kernel poisoned").get(m as usize) {
            return Arc::clone(l);
        }
        // layers are built in order; a racing builder computes the same values
        let mut built = Vec::new();
        let start = self.layers.lock().expect("kernel poisoned").len() as u32;
        for d in start..=m {
            built.push(Arc::new(self.build_layer(d)));
        }
        let mut guard = self.layers.lock().expect("kernel poisoned");
        for (d, layer) in (start..=m).zip(built) {
            if guard.len() == d as usize {
                guard.push(layer);
            }
        }
        Arc::clone(&guard[m as usize])
    }

    fn build_layer(&self, m: u32) -> Layer {
        let table = MonicTable::shared(m, self.r, &self.k);
        let size = table.partitions.len();
        // residual starts as the monomial coefficients Π_i g_{μ_i}
        let mut residual: Vec<Cdd> = table
            .partitions
            .iter()
            .map(|mu| mu.parts().iter().fold(Cdd::one(), |acc, &p| acc * self.g[p as usize]))
            .collect();
        let mut cauchy = vec![Cdd::zero(); size];
        for (i, row) in table.rows.iter().enumerate() {
            let b = residual[i];
            cauchy[i] = b;
            for &(j, c) in &row[1..] {
                residual[j] = residual[j] - b * c;
            }
        }
        let mut weights = vec![Cdd::zero(); size];
        for (i, kappa) in table.partitions.iter().enumerate() {
            match self.denominator_weight(kappa) {
                Some(w) => {
                    let beta = cauchy[i] * w;
                    for &(j, c) in &table.rows[i] {
                        weights[j] = weights[j] + beta * c;
                    }
                }
                None => self.excluded.lock().expect("kernel poisoned").push(kappa.clone()),
            }
        }
        Layer { table, weights }
    }

    /// `s^{|κ|} / [kn]_κ` (type A) or `s^{|κ|} / (4^{|κ|} [kn]_κ [ν]_κ)`
    /// (type B), one factor at a time to stay in range; `None` when a
    /// Pochhammer factor is not positive.
    fn denominator_weight(&self, kappa: &Partition) -> Option<Dd> {
        let kk = Dd::from_ratio(self.k.k());
        let kn = kk * Dd::from_i64(self.n as i64);
        let mut w = Dd::one();
        for (j, &part) in kappa.parts().iter().enumerate() {
            let shift = kk * Dd::from_i64(j as i64);
            for i in 0..part {
                let a = kn - shift + Dd::from_i64(i as i64);
                let denom = match self.family {
                    Family::A => a,
                    Family::B { nu } => Dd::new(4.0) * a * (nu - shift + Dd::from_i64(i as i64)),
                };
                if denom.hi() <= 0.0 || a.hi() <= 0.0 {
                    return None;
                }
                w *= self.scale / denom;
            }
        }
        Some(w)
    }

    /// Sums the series at `z`, building layers on demand.
    pub fn eval(&self, z: &[Complex64], cfg: &SeriesConfig) -> Result<SeriesValue> {
        if z.len() != self.r {
            return Err(Error::precondition(format!(
                "kernel built for {} evaluation coordinates, got {}",
                self.r,
                z.len()
            )));
        }
        let arg: Vec<Cdd> = match self.family {
            Family::A => z.iter().map(|&v| cdd(v)).collect(),
            Family::B { .. } => z.iter().map(|&v| cdd(v) * cdd(v)).collect(),
        };
        let cfg = SeriesConfig { max_degree: cfg.max_degree.min(self.max_degree()), ..*cfg };
        let powers = PowerTable::new(&arg, cfg.max_degree);
        let mut result = sum_layers(&cfg, |m| {
            let layer = self.layer(m);
            layer
                .table
                .partitions
                .iter()
                .zip(&layer.weights)
                .filter(|(_, w)| !w.is_zero())
                .fold(Cdd::zero(), |acc, (mu, &w)| acc + w * powers.monomial(mu))
        });
        if !result.value.is_finite() {
            return Err(Error::domain("series overflowed; the arguments are too large for double precision"));
        }
        result.excluded = self.excluded.lock().expect("kernel poisoned").clone();
        Ok(result)
    }
}

fn check_ranks(n: usize, r: usize) -> Result<usize> {
    if r < 1 || r > n {
        return Err(Error::precondition(format!("need 1 ≤ r ≤ n, got r = {r}, n = {n}")));
    }
    Ok(n)
}

/// Powers `z_i^e` for `e ≤ max`, and monomial symmetric functions built from
/// them.
pub(crate) struct PowerTable {
    powers: Vec<Vec<Cdd>>,
}

impl PowerTable {
    pub(crate) fn new(z: &[Cdd], max: u32) -> Self {
        let powers = z
            .iter()
            .map(|&zi| {
                let mut row = Vec::with_capacity(max as usize + 1);
                let mut acc = Cdd::one();
                for _ in 0..=max {
                    row.push(acc);
                    acc = acc * zi;
                }
                row
            })
            .collect();
        PowerTable { powers }
    }

    /// `m_μ(z)`: the sum of `z^e` over distinct rearrangements `e` of `μ`
    /// padded with zeros; zero when `μ` has more parts than `z`.
    pub(crate) fn monomial(&self, mu: &Partition) -> Cdd {
        let r = self.powers.len();
        if mu.len() > r {
            return Cdd::zero();
        }
        let mut exps: Vec<u32> = mu.parts().to_vec();
        exps.resize(r, 0);
        exps.sort_unstable();
        let mut total = Cdd::zero();
        loop {
            total = total + exps.iter().enumerate().fold(Cdd::one(), |acc, (i, &e)| acc * self.powers[i][e as usize]);
            if !next_permutation(&mut exps) {
                break;
            }
        }
        total
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("exists by choice of i");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `J_{A_{n−1}}(λ, z)` for `λ ∈ C^n`, `z ∈ C^r`, `1 ≤ r ≤ n`.
pub fn bessel_a(k: &JackParam, lambda: &[Complex64], z: &[Complex64], cfg: &SeriesConfig) -> Result<SeriesValue> {
    cfg.validate()?;
    BesselKernel::type_a(k, lambda, z.len(), cfg.max_degree)?.eval(z, cfg)
}

/// `J_{B_n}(λ, z)` for `λ ∈ C^n`, `z ∈ C^r`, `1 ≤ r ≤ n`.
pub fn bessel_b(mult: &MultiplicityB, lambda: &[Complex64], z: &[Complex64], cfg: &SeriesConfig) -> Result<SeriesValue> {
    cfg.validate()?;
    BesselKernel::type_b(mult, lambda, z.len(), cfg.max_degree)?.eval(z, cfg)
}

/// `π(z) = z − (⟨z, 1⟩ / n) 1`.
pub fn project_pi(z: &[Complex64]) -> Vec<Complex64> {
    if z.is_empty() {
        return Vec::new();
    }
    let mean = z.iter().sum::<Complex64>() / z.len() as f64;
    z.iter().map(|v| v - mean).collect()
}

/// `∫ ξ^j dμ_n = j! g_j(λ) / (kn)_j` for the representing measure of
/// `x ↦ J_A(iλ, x)` on the line.
pub fn moments_a(lambda: &[f64], k: &JackParam, j: u32) -> f64 {
    let g = g_coeffs(lambda, k, j)[j as usize];
    let kn = k.k_f64() * lambda.len() as f64;
    let mut value = g;
    for i in 0..j {
        value *= (i + 1) as f64 / (kn + i as f64);
    }
    value
}

/// Moments of the representing measure of `x ↦ J_B(iλ, x)`: zero in odd
/// order and `(2j)! g_j(λ²) / (4^j (kn)_j (ν_n)_j)` in order `2j`.
pub fn moments_b(lambda: &[f64], mult: &MultiplicityB, order: u32) -> f64 {
    if order % 2 == 1 {
        return 0.0;
    }
    let j = order / 2;
    let squares: Vec<f64> = lambda.iter().map(|l| l * l).collect();
    let g = g_coeffs(&squares, mult.k(), j)[j as usize];
    let n = lambda.len();
    let kn = mult.k().k_f64() * n as f64;
    let nu = mult.nu(n);
    let mut value = g;
    for i in 0..j {
        let num = ((2 * i + 1) * (2 * i + 2)) as f64;
        value *= num / (4.0 * (kn + i as f64) * (nu + i as f64));
    }
    value
}

/// Smallest eigenvalue of the Gram matrix `G_ab = φ(x_a − x_b)`.
///
/// Fails when `G` is not Hermitian up to `1e-8` relative to its largest
/// entry, which signals an evaluator that is not Hermitian-symmetric.
pub fn gram_min_eig(phi: impl Fn(&[f64]) -> Complex64, points: &[Vec<f64>]) -> Result<f64> {
    let size = points.len();
    if size == 0 {
        return Err(Error::precondition("gram_min_eig needs at least one point"));
    }
    let mut g = vec![Complex64::zero(); size * size];
    for (a, xa) in points.iter().enumerate() {
        for (b, xb) in points.iter().enumerate() {
            if xa.len() != xb.len() {
                return Err(Error::precondition("points of different dimensions"));
            }
            let diff: Vec<f64> = xa.iter().zip(xb).map(|(u, v)| u - v).collect();
            g[a * size + b] = phi(&diff);
        }
    }
    let biggest = g.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1e-300);
    for a in 0..size {
        for b in a..size {
            let asym = (g[a * size + b] - g[b * size + a].conj()).norm();
            if !(asym <= 1e-8 * biggest) {
                return Err(Error::domain(format!(
                    "Gram matrix is not Hermitian: |G[{a}][{b}] − conj G[{b}][{a}]| = {asym:e}"
                )));
            }
        }
    }
    // real symmetric embedding [[Re, −Im], [Im, Re]] has the same spectrum, doubled
    let emb = DMatrix::from_fn(2 * size, 2 * size, |i, j| {
        let (a, b) = (i % size, j % size);
        let h = (g[a * size + b] + g[b * size + a].conj()) / 2.0;
        match (i < size, j < size) {
            (true, true) | (false, false) => h.re,
            (true, false) => -h.im,
            (false, true) => h.im,
        }
    });
    Ok(emb.symmetric_eigenvalues().min())
}

/// `Σ_κ [kr]_κ/|κ|! · C_κ(λ) C_κ(z) / C_κ(1_r)` summed over `|κ| ≤
/// max_degree`, `ℓ(κ) ≤ r`, using the power-sum expansions directly.
///
/// Independent of the Cauchy-coefficient engine; practical for degrees up
/// to about 14.
pub fn jack_cauchy_series(k: &JackParam, lambda: &[Complex64], z: &[Complex64], max_degree: u32) -> Vec<Complex64> {
    let r = z.len();
    let kr = BigRational::from_integer(BigInt::from(r)) * k.k();
    (0..=max_degree)
        .map(|m| {
            enumerate_partitions(m, r)
                .iter()
                .map(|kappa| {
                    let exp = crate::symfun::jack_p_expansion(kappa, k);
                    let ones = crate::symfun::jack_at_ones(kappa, k, r);
                    let coeff = gen_pochhammer_exact(&kr, kappa, k)
                        / crate::numeric::factorial::<BigRational>(m)
                        / ones;
                    Complex64::new(ratio_to_f64(&coeff), 0.0) * exp.eval(lambda) * exp.eval(z)
                })
                .sum()
        })
        .collect()
}
