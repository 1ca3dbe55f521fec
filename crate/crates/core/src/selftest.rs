//! Property suites behind `jackbessel selftest`.
//!
//! Each check is a plain function that measures the worst deviation it
//! sees and compares it with a tolerance. [`run`] executes all of them in a
//! fixed order and reports the first failure by name.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bessel::{
    bessel_a, bessel_b, gen_pochhammer_exact, gram_min_eig, moments_a, moments_b, project_pi, BesselKernel,
    MultiplicityB, SeriesConfig,
};
use crate::exec::Execution;
use crate::experiment::{
    parse_grid, read_rows, read_summary, run_convergence, write_rows, write_summary, ExperimentSpec, Format,
};
use crate::limits::{lim_bessel_a, lim_bessel_b, psi_eval, psi_hat, psi_log_derivative_series, series_psi_hat, tilde_p};
use crate::numeric::{factorial, rising};
use crate::oracle::{gram_schmidt_jacks, scalar_0f1};
use crate::partitions::{dominance_cmp, dominance_leq, enumerate_partitions, Partition};
use crate::symfun::jack::{c_normalization, monic_monomial_coeffs};
use crate::symfun::{
    g_coeffs, g_explicit, g_vs_jack_identity, jack_at_ones, jack_eval, jack_p_expansion, phi_eval, power_sum,
    JackParam,
};
use crate::vk::{
    estimate_row, generate_vk, generate_vk_plus, geometric_preset, is_ll_descending, sort_ll_desc, vk_min_n, vk_plus_min_n,
    TriangularArray, VKParams, VKParamsPlus,
};

/// Outcome of one property measurement.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Measured {
    pub passed: bool,
    /// Largest deviation seen (a count for exact checks).
    pub worst: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl Measured {
    fn bound(worst: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        Measured { passed: worst <= tolerance, worst, tolerance, detail: detail.into() }
    }

    fn exact(mismatches: usize, checked: usize, what: &str) -> Self {
        Measured {
            passed: mismatches == 0,
            worst: mismatches as f64,
            tolerance: 0.0,
            detail: format!("{mismatches} mismatches in {checked} {what}"),
        }
    }

    /// Adds a pass/fail condition that is not a bound.
    fn require(mut self, ok: bool, why: impl Into<String>) -> Self {
        if !ok {
            self.passed = false;
            self.detail = format!("{}; {}", self.detail, why.into());
        }
        self
    }
}

/// One entry of the self-test summary.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub worst: f64,
    pub tolerance: f64,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub passed: bool,
    pub first_failure: Option<String>,
    pub seconds: f64,
    pub checks: Vec<Check>,
}

pub fn default_ks() -> Vec<JackParam> {
    [(1, 2), (1, 1), (2, 1)].iter().map(|&(a, b)| JackParam::from_ratio(a, b).expect("positive")).collect()
}

fn normalization_ks() -> Vec<JackParam> {
    let mut ks = default_ks();
    ks.push(JackParam::from_ratio(3, 1).expect("positive"));
    ks
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn rel(err: f64, scale: f64) -> f64 {
    err / scale.max(1e-300)
}

fn uniform(rng: &mut ChaCha8Rng, len: usize, a: f64, b: f64) -> Vec<f64> {
    (0..len).map(|_| rng.random_range(a..=b)).collect()
}

fn disc(rng: &mut ChaCha8Rng, len: usize, radius: f64) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::from_polar(radius * rng.random::<f64>().sqrt(), rng.random_range(0.0..2.0 * PI)))
        .collect()
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn fmt_list(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("{x:.3e}")).collect();
    format!("[{}]", items.join(", "))
}

// ---------------------------------------------------------------- partitions

fn naive_count(m: u32, slots: usize, cap: u32) -> u64 {
    if m == 0 {
        return 1;
    }
    if slots == 0 {
        return 0;
    }
    (1..=cap.min(m)).map(|p| naive_count(m - p, slots - 1, p)).sum()
}

/// Enumeration cardinalities against a naive recursion, plus the structural
/// invariants and strict reverse lexicographic order of every output.
pub fn partition_count(max_m: u32, max_r: usize) -> Measured {
    let mut bad = 0;
    let mut checked = 0;
    for m in 0..=max_m {
        for r in 0..=max_r {
            let parts = enumerate_partitions(m, r);
            checked += 1;
            let structural = parts.iter().all(|p| {
                p.weight() == m && p.len() <= r && p.parts().windows(2).all(|w| w[0] >= w[1]) && p.parts().iter().all(|&x| x > 0)
            });
            let ordered = parts.windows(2).all(|w| w[0].parts() > w[1].parts());
            if parts.len() as u64 != naive_count(m, r, m) || !structural || !ordered {
                bad += 1;
            }
        }
    }
    Measured::exact(bad, checked, "(m, r) enumerations")
}

/// Reflexivity, antisymmetry and transitivity of dominance on every weight
/// up to `max_m`, and rejection of unequal weights.
pub fn dominance_order(max_m: u32) -> Measured {
    let leq = |a: &Partition, b: &Partition| dominance_leq(a, b).expect("equal weights") == Some(true);
    let mut bad = 0;
    let mut checked = 0;
    for m in 0..=max_m {
        let ps = enumerate_partitions(m, m as usize);
        for a in &ps {
            checked += 1;
            bad += usize::from(!leq(a, a));
            for b in &ps {
                if a != b && leq(a, b) && leq(b, a) {
                    bad += 1;
                }
                if leq(a, b) {
                    bad += ps.iter().filter(|c| leq(b, c) && !leq(a, c)).count();
                }
            }
        }
    }
    let mixed = dominance_cmp(&Partition::from_unsorted(vec![2]), &Partition::from_unsorted(vec![1])).is_err();
    Measured::exact(bad, checked, "partitions").require(mixed, "unequal weights were compared")
}

// ------------------------------------------------------------------- symfun

/// `|Σ_{|κ|=m, ℓ(κ)≤n} C_κ(x) − p_1(x)^m| / max(1, |p_1(x)|^m)` over random
/// `x ∈ [−1, 1]^n`.
pub fn normalization(ks: &[JackParam], max_n: usize, max_m: u32, points: usize, seed: u64) -> Measured {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut at = String::new();
    for k in ks {
        for n in 1..=max_n {
            for m in 0..=max_m {
                let kappas = enumerate_partitions(m, n);
                for _ in 0..points {
                    let x = uniform(&mut rng, n, -1.0, 1.0);
                    let sum: f64 = kappas.iter().map(|kappa| jack_eval(kappa, k, &x)).sum();
                    let target = power_sum(1, &x).powi(m as i32);
                    let err = (sum - target).abs() / target.abs().max(1.0);
                    if !(err <= worst) {
                        worst = if err.is_nan() { f64::INFINITY } else { err };
                        at = format!("k = {k}, n = {n}, m = {m}");
                    }
                }
            }
        }
    }
    Measured::bound(worst, 1e-10, format!("worst relative deviation at {at}"))
}

/// Zero padding leaves `C_κ` unchanged, and `C_κ` vanishes identically in
/// fewer than `ℓ(κ)` variables.
pub fn stability(ks: &[JackParam], max_m: u32, seed: u64) -> Measured {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut nonzero = 0;
    for k in ks {
        for m in 1..=max_m {
            for kappa in enumerate_partitions(m, m as usize) {
                let n = rng.random_range(1..=m as usize);
                let x = uniform(&mut rng, n, -1.0, 1.0);
                let v = jack_eval(&kappa, k, &x);
                if kappa.len() > n {
                    nonzero += usize::from(v != 0.0);
                    continue;
                }
                let mut padded = x.clone();
                padded.resize(n + rng.random_range(1..=3), 0.0);
                worst = worst.max(rel((jack_eval(&kappa, k, &padded) - v).abs(), v.abs().max(1.0)));
            }
        }
    }
    Measured::bound(worst, 1e-12, format!("{nonzero} nonzero values beyond the length"))
        .require(nonzero == 0, "C_κ did not vanish in too few variables")
}

/// `C_κ(1_r) / C_κ(1_n) = [kr]_κ / [kn]_κ` in exact arithmetic.
pub fn ones_ratio(ks: &[JackParam], max_m: u32, max_n: usize) -> Measured {
    let mut bad = 0;
    let mut checked = 0;
    for k in ks {
        for m in 0..=max_m {
            for kappa in enumerate_partitions(m, max_n) {
                for n in kappa.len().max(1)..=max_n {
                    let kn = BigRational::from_integer(BigInt::from(n)) * k.k();
                    let ones_n = jack_at_ones(&kappa, k, n);
                    let poch_n = gen_pochhammer_exact(&kn, &kappa, k);
                    for r in 1..=n {
                        checked += 1;
                        let kr = BigRational::from_integer(BigInt::from(r)) * k.k();
                        let lhs = jack_at_ones(&kappa, k, r) / &ones_n;
                        let rhs = gen_pochhammer_exact(&kr, &kappa, k) / &poch_n;
                        bad += usize::from(lhs != rhs);
                    }
                }
            }
        }
    }
    Measured::exact(bad, checked, "(κ, r, n) triples")
}

/// Production power-sum expansions equal the Gram–Schmidt oracle
/// coefficient by coefficient.
pub fn oracle_equivalence(ks: &[JackParam], max_m: u32) -> Measured {
    let mut bad = 0;
    let mut checked = 0;
    for k in ks {
        for m in 0..=max_m {
            for (kappa, expansion) in gram_schmidt_jacks(m, k) {
                checked += 1;
                bad += usize::from(jack_p_expansion(&kappa, k).coeffs() != expansion.coeffs());
            }
        }
    }
    Measured::exact(bad, checked, "partitions")
}

/// The Newton recursion for `g_j` against the defining sum and against
/// `(k)_j/j! · C_(j)`, relative to `g_j(|λ|)`; and `2g_2 = k²p_1² + kp_2`
/// in exact arithmetic.
pub fn g_identities(ks: &[JackParam], max_n: usize, max_j: u32, seed: u64) -> Measured {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut exact_bad = 0;
    for k in ks {
        for n in 1..=max_n {
            let lambda = uniform(&mut rng, n, -1.0, 1.0);
            let abs: Vec<f64> = lambda.iter().map(|v| v.abs()).collect();
            let g = g_coeffs(&lambda, k, max_j);
            let scale = g_coeffs(&abs, k, max_j);
            for j in 0..=max_j {
                let ju = j as usize;
                worst = worst.max(rel((g[ju] - g_explicit(&lambda, j, k)).abs(), scale[ju]));
                worst = worst.max(rel(g_vs_jack_identity(&lambda, j, k), scale[ju]));
            }
            let q: Vec<BigRational> =
                (0..n).map(|_| BigRational::new(rng.random_range(-50..=50).into(), rng.random_range(1..=9).into())).collect();
            let g2 = g_coeffs(&q, k, 2)[2].clone();
            let kk = k.k();
            let rhs = kk * kk * power_sum(1, &q) * power_sum(1, &q) + kk * power_sum(2, &q);
            exact_bad += usize::from(BigRational::from_integer(2.into()) * g2 != rhs);
        }
    }
    Measured::bound(worst, 1e-12, format!("{exact_bad} failures of 2g_2 = k²p_1² + kp_2"))
        .require(exact_bad == 0, "the degree-two identity failed")
}

/// Taylor coefficients of `Φ(λ; ·)` read off by the trapezoidal rule on a
/// circle, against [`g_coeffs`].
pub fn phi_taylor(ks: &[JackParam], max_n: usize, max_j: u32, seed: u64) -> Measured {
    const NODES: usize = 64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for k in ks {
        for n in 1..=max_n {
            let lambda = uniform(&mut rng, n, -1.0, 1.0);
            let abs: Vec<f64> = lambda.iter().map(|v| v.abs()).collect();
            let radius = 0.5 / abs.iter().cloned().fold(1e-3, f64::max);
            let samples: Vec<Complex64> = (0..NODES)
                .map(|t| {
                    let z = Complex64::from_polar(radius, 2.0 * PI * t as f64 / NODES as f64);
                    phi_eval(&lambda, k, z).expect("inside the disc of convergence")
                })
                .collect();
            let g = g_coeffs(&lambda, k, max_j);
            let scale = g_coeffs(&abs, k, max_j);
            for j in 0..=max_j as usize {
                let coeff: Complex64 = samples
                    .iter()
                    .enumerate()
                    .map(|(t, v)| v * Complex64::from_polar(1.0, -2.0 * PI * (j * t) as f64 / NODES as f64))
                    .sum::<Complex64>()
                    / (NODES as f64 * radius.powi(j as i32));
                worst = worst.max(rel((coeff - g[j]).norm(), scale[j]));
            }
        }
    }
    Measured::bound(worst, 1e-8, "worst relative deviation of the contour coefficients")
}

// ------------------------------------------------------------------- bessel

/// Monic Jack data of one partition in `n` variables: the monomial
/// coefficients and `C_κ / P_κ`.
struct MonicJack {
    coeffs: Vec<(Partition, f64)>,
    norm: f64,
}

fn monomial_value(mu: &Partition, x: &[Complex64]) -> Complex64 {
    if mu.len() > x.len() {
        return Complex64::zero();
    }
    let mut exps: Vec<u32> = mu.parts().to_vec();
    exps.resize(x.len(), 0);
    exps.sort_unstable();
    let mut total = Complex64::zero();
    loop {
        total += exps.iter().zip(x).map(|(&e, &xi)| xi.powu(e)).product::<Complex64>();
        let Some(i) = (1..exps.len()).rev().find(|&i| exps[i - 1] < exps[i]) else {
            break;
        };
        let j = (i..exps.len()).rev().find(|&j| exps[j] > exps[i - 1]).expect("exists");
        exps.swap(i - 1, j);
        exps[i..].reverse();
    }
    total
}

impl MonicJack {
    fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.coeffs.iter().map(|(mu, cf)| cf * monomial_value(mu, x)).sum()
    }
}

/// Truncated `Σ_κ [kr]_κ/|κ|! C_κ(λ) P_κ(z)` against
/// `Π_{j,l} (1 − λ_l z_j)^{−k}` for `|z_j| max|λ_l| ≤ 0.3`.
///
/// The left side is summed by degree from the monomial expansion of the
/// Jack polynomials in `n` variables, until three consecutive degrees fall
/// below `1e-13` of the partial sum.
pub fn cauchy_identity(ks: &[JackParam], max_n: usize, max_r: usize, samples: usize, seed: u64) -> Measured {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut deepest = 0;
    for k in ks {
        let alpha = 1.0 / k.k_f64();
        let kk = k.k_f64();
        let mut memo: HashMap<(Partition, usize), MonicJack> = HashMap::new();
        for _ in 0..samples {
            let n = rng.random_range(1..=max_n);
            let r = rng.random_range(1..=max_r.min(n));
            let lambda = uniform(&mut rng, n, -1.0, 1.0);
            let lmax = lambda.iter().fold(1e-3f64, |a, v| a.max(v.abs()));
            let z = disc(&mut rng, r, 0.3 / lmax);
            let lam: Vec<Complex64> = lambda.iter().map(|&v| c(v)).collect();
            let ones = vec![c(1.0); r];
            let mut rhs = c(1.0);
            for &l in &lambda {
                for &zj in &z {
                    rhs *= (c(1.0) - l * zj).powf(-kk);
                }
            }
            let mut total = Complex64::zero();
            let mut quiet = 0;
            for m in 0..=120u32 {
                let mut layer = Complex64::zero();
                for kappa in enumerate_partitions(m, r) {
                    let jk = memo.entry((kappa.clone(), n)).or_insert_with(|| MonicJack {
                        coeffs: monic_monomial_coeffs(&kappa, &alpha, n),
                        norm: c_normalization(&kappa, &alpha),
                    });
                    let poch: f64 = kappa
                        .parts()
                        .iter()
                        .enumerate()
                        .map(|(i, &p)| rising(&(kk * r as f64 - kk * i as f64), p))
                        .product();
                    let value = jk.norm * jk.eval(&lam) * jk.eval(&z) / jk.eval(&ones);
                    layer += poch / factorial::<f64>(m) * value;
                }
                total += layer;
                quiet = if m > 0 && layer.norm() < 1e-13 * total.norm() { quiet + 1 } else { 0 };
                if quiet == 3 {
                    deepest = deepest.max(m);
                    break;
                }
            }
            worst = worst.max(rel((total - rhs).norm(), rhs.norm()));
        }
    }
    Measured::bound(worst, 1e-8, format!("worst relative deviation, deepest degree {deepest}"))
}

/// `J_A(z, w) = e^{⟨z,1⟩⟨w,1⟩/n} J_A(π z, π w)` for random `z, w` in the unit
/// polydisc of `C^n`.
pub fn reduction_identity(ks: &[JackParam], max_n: usize, samples: usize, seed: u64) -> Measured {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = SeriesConfig { max_degree: 80, rel_tol: 1e-14, stagnation_window: 3 };
    let mut worst: f64 = 0.0;
    let mut truncated = 0;
    for k in ks {
        for _ in 0..samples {
            let n = rng.random_range(2..=max_n.max(2));
            let z = disc(&mut rng, n, 1.0);
            let w = disc(&mut rng, n, 1.0);
            let lhs = bessel_a(k, &z, &w, &cfg).expect("valid ranks");
            let shift = z.iter().sum::<Complex64>() * w.iter().sum::<Complex64>() / n as f64;
            let inner = bessel_a(k, &project_pi(&z), &project_pi(&w), &cfg).expect("valid ranks");
            truncated += usize::from(lhs.truncated || inner.truncated);
            let rhs = shift.exp() * inner.value;
            worst = worst.max(rel((lhs.value - rhs).norm(), lhs.value.norm().max(1.0)));
        }
    }
    Measured::bound(worst, 1e-8, format!("{truncated} truncated evaluations")).require(truncated == 0, "series did not settle")
}

/// `J_B` at `n = r = 1`, `ν = 1`, `λ = 2`, `z = 1` against `Σ 1/(j!)²` and
/// against the scalar `₀F₁` oracle.
pub fn scalar_reduction() -> Measured {
    const SUM_INV_FACT_SQ: f64 = 2.2795853023360673;
    let mult = MultiplicityB::parse("1/2", "1").expect("valid multiplicity");
    let v = bessel_b(&mult, &[c(2.0)], &[c(1.0)], &SeriesConfig::default()).expect("valid ranks").value;
    let oracle = scalar_0f1(1.0, 1.0);
    let worst = (v - c(SUM_INV_FACT_SQ)).norm().max((v - c(oracle)).norm());
    Measured::bound(worst, 1e-12, format!("J_B = {v}, oracle {oracle}"))
}

/// `J_A` of rank one is `e^{λz}`.
pub fn rank_one_exponential(ks: &[JackParam], samples: usize, seed: u64) -> Measured {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = SeriesConfig::default();
    let mut worst: f64 = 0.0;
    for k in ks {
        for _ in 0..samples {
            let l = disc(&mut rng, 1, 2.0)[0];
            let z = disc(&mut rng, 1, 2.0)[0];
            let v = bessel_a(k, &[l], &[z], &cfg).expect("valid ranks").value;
            let want = (l * z).exp();
            worst = worst.max(rel((v - want).norm(), want.norm()));
        }
    }
    Measured::bound(worst, cfg.rel_tol, "worst relative deviation from e^{λz}")
}

/// Evaluation dimensions, ranks and spectral parameters for a Gram test.
#[derive(Clone, Copy, Debug)]
pub struct GramSetup {
    pub max_r: usize,
    pub max_n: usize,
    pub lambdas: usize,
    pub points: usize,
}

impl Default for GramSetup {
    fn default() -> Self {
        GramSetup { max_r: 2, max_n: 8, lambdas: 5, points: 12 }
    }
}

fn gram_points(rng: &mut ChaCha8Rng, count: usize, r: usize) -> Vec<Vec<f64>> {
    (0..count).map(|_| uniform(rng, r, -1.0, 1.0)).collect()
}

/// Smallest Gram eigenvalue of `x ↦ J_A(iλ, x)` or `x ↦ J_B(iλ, x)` over
/// random points in `[−1, 1]^r`.
pub fn positive_definite(type_b: bool, ks: &[JackParam], setup: GramSetup, seed: u64) -> Measured {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = SeriesConfig::default();
    let mut lowest = f64::INFINITY;
    let mut error = None;
    for k in ks {
        for r in 1..=setup.max_r {
            for _ in 0..setup.lambdas {
                let n = rng.random_range(r..=setup.max_n);
                let lambda: Vec<Complex64> = uniform(&mut rng, n, -2.0, 2.0).iter().map(|&v| Complex64::new(0.0, v)).collect();
                let kernel = if type_b {
                    let k_prime = BigRational::new(rng.random_range(0..=2).into(), 2.into());
                    let mult = MultiplicityB::new(k_prime, k.clone()).expect("nonnegative");
                    BesselKernel::type_b(&mult, &lambda, r, cfg.max_degree)
                } else {
                    BesselKernel::type_a(k, &lambda, r, cfg.max_degree)
                }
                .expect("valid ranks");
                let pts = gram_points(&mut rng, setup.points, r);
                let phi = |x: &[f64]| {
                    let z: Vec<Complex64> = x.iter().map(|&v| c(v)).collect();
                    kernel.eval(&z, &cfg).map(|s| s.value).unwrap_or(Complex64::new(f64::NAN, 0.0))
                };
                match gram_min_eig(phi, &pts) {
                    Ok(e) => lowest = lowest.min(e),
                    Err(e) => error = Some(e.to_string()),
                }
            }
        }
    }
    let m = Measured::bound(-lowest, 1e-8, format!("smallest eigenvalue {lowest:.3e}"));
    match error {
        Some(e) => m.require(false, e),
        None => m,
    }
}

fn random_perm<T: Clone>(rng: &mut ChaCha8Rng, v: &[T]) -> Vec<T> {
    let mut out = v.to_vec();
    out.shuffle(rng);
    out
}

fn random_signs(rng: &mut ChaCha8Rng, v: &[Complex64]) -> Vec<Complex64> {
    v.iter().map(|&x| if rng.random::<bool>() { -x } else { x }).collect()
}

/// Permutation invariance of `J_A` and `J_B` in both arguments, and sign
/// change invariance of `J_B`.
pub fn w_invariance(ks: &[JackParam], samples: usize, seed: u64) -> Measured {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = SeriesConfig { max_degree: 80, rel_tol: 1e-14, stagnation_window: 3 };
    let mult_of = |k: &JackParam| MultiplicityB::new(BigRational::new(1.into(), 2.into()), k.clone()).expect("valid");
    let mut worst: f64 = 0.0;
    for k in ks {
        let mult = mult_of(k);
        for _ in 0..samples {
            let n = rng.random_range(2..=5);
            let r = rng.random_range(1..=2);
            let lambda = disc(&mut rng, n, 1.5);
            let z = disc(&mut rng, r, 1.0);
            let a = bessel_a(k, &lambda, &z, &cfg).expect("valid ranks").value;
            let a2 = bessel_a(k, &random_perm(&mut rng, &lambda), &random_perm(&mut rng, &z), &cfg).expect("valid").value;
            worst = worst.max(rel((a - a2).norm(), a.norm().max(1.0)));
            let b = bessel_b(&mult, &lambda, &z, &cfg).expect("valid ranks").value;
            let lp = random_perm(&mut rng, &lambda);
            let lp = random_signs(&mut rng, &lp);
            let zp = random_perm(&mut rng, &z);
            let zp = random_signs(&mut rng, &zp);
            let b2 = bessel_b(&mult, &lp, &zp, &cfg).expect("valid").value;
            worst = worst.max(rel((b - b2).norm(), b.norm().max(1.0)));
        }
    }
    Measured::bound(worst, 1e-10, "worst relative change under the Weyl group")
}

/// `moments_a`/`moments_b` against `j!` times the degree-`j` Taylor
/// coefficient extracted from the series engine.
pub fn moments(ks: &[JackParam], max_n: usize, max_j: u32, seed: u64) -> Measured {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = SeriesConfig { max_degree: max_j, rel_tol: 1e-300, stagnation_window: 1 };
    let mut worst: f64 = 0.0;
    for k in ks {
        let mult = MultiplicityB::new(BigRational::new(1.into(), 2.into()), k.clone()).expect("valid");
        for n in 1..=max_n {
            let lambda = uniform(&mut rng, n, -1.5, 1.5);
            let lam: Vec<Complex64> = lambda.iter().map(|&v| c(v)).collect();
            let abs: Vec<f64> = lambda.iter().map(|v| v.abs()).collect();
            let a = BesselKernel::type_a(k, &lam, 1, max_j).expect("valid ranks").eval(&[c(1.0)], &cfg).expect("finite");
            let b = BesselKernel::type_b(&mult, &lam, 1, max_j).expect("valid ranks").eval(&[c(1.0)], &cfg).expect("finite");
            for j in 0..=max_j {
                let from_series = factorial::<f64>(j) * a.layers[j as usize].re;
                let scale = moments_a(&abs, k, j);
                worst = worst.max(rel((from_series - moments_a(&lambda, k, j)).abs(), scale));
                let from_series = factorial::<f64>(2 * j) * b.layers[j as usize].re;
                let scale = moments_b(&abs, &mult, 2 * j);
                worst = worst.max(rel((from_series - moments_b(&lambda, &mult, 2 * j)).abs(), scale));
                if moments_b(&lambda, &mult, 2 * j + 1) != 0.0 {
                    worst = f64::INFINITY;
                }
            }
        }
    }
    Measured::bound(worst, 1e-10, "worst relative deviation of the moments")
}

// ------------------------------------------------------------------- limits

fn random_omega(rng: &mut ChaCha8Rng) -> VKParams {
    let m = rng.random_range(0..=2);
    let alpha = sort_ll_desc(&uniform(rng, m, -1.0, 1.0));
    VKParams::new(alpha, rng.random_range(-1.0..=1.0), rng.random_range(0.0..=1.0)).expect("valid")
}

fn random_omega_plus(rng: &mut ChaCha8Rng) -> VKParamsPlus {
    let m = rng.random_range(0..=2);
    let mut alpha = uniform(rng, m, 0.0, 1.0);
    alpha.sort_by(|a, b| b.total_cmp(a));
    let beta = alpha.iter().sum::<f64>() + rng.random_range(0.0..=1.0);
    VKParamsPlus::new(alpha, beta).expect("valid")
}

fn plus_as_omega(p: &VKParamsPlus) -> VKParams {
    VKParams::new(p.alpha().to_vec(), p.beta(), 0.0).expect("valid")
}

/// Bounds, normalization and Hermitian symmetry of the limit functions.
pub fn limit_bounds(ks: &[JackParam], samples: usize, seed: u64) -> Measured {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut nonpositive = 0;
    for k in ks {
        for _ in 0..samples {
            let omega = random_omega(&mut rng);
            let r = rng.random_range(1..=3);
            let x = uniform(&mut rng, r, -3.0, 3.0);
            let v = lim_bessel_a(&omega, k, &x);
            let neg: Vec<f64> = x.iter().map(|t| -t).collect();
            worst = worst.max(v.norm() - 1.0);
            worst = worst.max((lim_bessel_a(&omega, k, &neg) - v.conj()).norm());
            worst = worst.max((lim_bessel_a(&omega, k, &vec![0.0; r]) - c(1.0)).norm());
            let plus = plus_as_omega(&random_omega_plus(&mut rng));
            let b = lim_bessel_b(&plus, k, &x).expect("Ω₊ parameters");
            worst = worst.max(b - 1.0);
            nonpositive += usize::from(b <= 0.0);
        }
    }
    Measured::bound(worst, 1e-14, format!("{nonpositive} nonpositive type B values"))
        .require(nonpositive == 0, "the type B limit left (0, 1]")
}

/// `series_psi_hat` against `psi_hat` for `|z_j| ≤ 0.3 / max(|α_1|, |β|, √δ)`.
pub fn series_product(ks: &[JackParam], omegas: &[VKParams], samples: usize, seed: u64) -> Measured {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = SeriesConfig { max_degree: 24, rel_tol: 1e-11, stagnation_window: 2 };
    let mut worst: f64 = 0.0;
    let mut deepest = 0;
    for k in ks {
        for omega in omegas {
            let a1 = omega.alpha().first().map_or(0.0, |a| a.abs());
            let radius = 0.3 / a1.max(omega.beta().abs()).max(omega.delta().sqrt()).max(1e-3);
            for _ in 0..samples {
                let r = rng.random_range(1..=2);
                let z = disc(&mut rng, r, radius);
                let series = series_psi_hat(omega, k, &z, &cfg).expect("valid input");
                deepest = deepest.max(series.degree);
                let product = psi_hat(omega, k, &z).expect("inside the domain");
                worst = worst.max(rel((series.value - product).norm(), product.norm()));
            }
        }
    }
    Measured::bound(worst, 1e-8, format!("worst relative deviation of the series from the product, deepest degree {deepest}"))
}

/// Central differences of `log Ψ` against `k Σ_{m≤8} p̃_{m+1} z^m` for
/// `|z| ≤ 0.05`.
pub fn log_derivative(ks: &[JackParam], samples: usize, seed: u64) -> Measured {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for k in ks {
        for _ in 0..samples {
            let omega = random_omega(&mut rng);
            let z = disc(&mut rng, 1, 0.05)[0];
            let up = psi_eval(&omega, k, z + h).expect("near zero");
            let down = psi_eval(&omega, k, z - h).expect("near zero");
            let fd = (up / down).ln() / (2.0 * h);
            let series = psi_log_derivative_series(&omega, k, z, 8);
            worst = worst.max((fd - series).norm());
        }
    }
    let p3 = tilde_p(&VKParams::new(vec![0.5], 0.0, 0.0).expect("valid"), 3);
    Measured::bound(worst, 1e-6, "worst absolute residual").require(p3 == 0.125, "p̃_3 of α = (1/2) is not 1/8")
}

/// Smallest Gram eigenvalue of the limit functions on random points.
pub fn positive_definite_limits(ks: &[JackParam], setup: GramSetup, seed: u64) -> Measured {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lowest = f64::INFINITY;
    let mut error = None;
    for k in ks {
        for r in 1..=setup.max_r {
            for _ in 0..setup.lambdas {
                let omega = random_omega(&mut rng);
                let plus = plus_as_omega(&random_omega_plus(&mut rng));
                let pts = gram_points(&mut rng, setup.points, r);
                let results = [
                    gram_min_eig(|x| lim_bessel_a(&omega, k, x), &pts),
                    gram_min_eig(|x| c(lim_bessel_b(&plus, k, x).unwrap_or(f64::NAN)), &pts),
                ];
                for res in results {
                    match res {
                        Ok(e) => lowest = lowest.min(e),
                        Err(e) => error = Some(e.to_string()),
                    }
                }
            }
        }
    }
    let m = Measured::bound(-lowest, 1e-8, format!("smallest eigenvalue {lowest:.3e}"));
    match error {
        Some(e) => m.require(false, e),
        None => m,
    }
}

// ----------------------------------------------------------------------- vk

/// Parameter sets used by the VK suites.
pub fn sample_omegas() -> Vec<VKParams> {
    vec![
        VKParams::new(vec![0.5, 0.25], 1.0, 0.25).expect("valid"),
        VKParams::new(vec![], 0.5, 1.0).expect("valid"),
        VKParams::new(vec![0.8, -0.3], 0.4, 0.2).expect("valid"),
        VKParams::new(vec![], 1.0, 0.0).expect("valid"),
        VKParams::new(vec![-0.6], 0.3, 0.2).expect("valid"),
    ]
}

pub fn sample_omegas_plus() -> Vec<VKParamsPlus> {
    vec![
        VKParamsPlus::new(vec![0.5], 1.0).expect("valid"),
        VKParamsPlus::new(vec![0.3, 0.2], 0.9).expect("valid"),
        VKParamsPlus::new(vec![], 0.7).expect("valid"),
    ]
}

/// `γ̂(n)` along `n_list`, with `α̂` taken over the prescribed `α` entries:
/// `γ̂(last) ≥ −0.05` and `|min(0, γ̂)|` nonincreasing for [`generate_vk`]
/// rows; `|γ̂(last)| ≤ 0.05` and `|γ̂|` strictly decreasing for
/// [`generate_vk_plus`] rows.
pub fn gamma_hat(omegas: &[VKParams], plus: &[VKParamsPlus], n_list: &[usize]) -> Measured {
    let mut worst: f64 = 0.0;
    let mut problems = Vec::new();
    for omega in omegas {
        let gammas: Vec<f64> = n_list
            .iter()
            .map(|&n| generate_vk(omega, n).map(|row| estimate_row(&row, omega.alpha().len()).gamma_hat))
            .collect::<crate::Result<_>>()
            .unwrap_or_else(|_| vec![f64::NAN]);
        let deficits: Vec<f64> = gammas.iter().map(|g| (-g).max(0.0)).collect();
        worst = worst.max(deficits.last().copied().unwrap_or(f64::NAN));
        if !deficits.windows(2).all(|w| w[1] <= w[0]) || gammas.iter().any(|g| g.is_nan()) {
            problems.push(format!("γ̂ deficit not decreasing for {omega:?}: {}", fmt_list(&gammas)));
        }
    }
    for p in plus {
        let gammas: Vec<f64> = n_list
            .iter()
            .map(|&n| generate_vk_plus(p, n).map(|row| estimate_row(&row, p.alpha().len()).gamma_hat.abs()))
            .collect::<crate::Result<_>>()
            .unwrap_or_else(|_| vec![f64::NAN]);
        worst = worst.max(gammas.last().copied().unwrap_or(f64::NAN));
        if !strictly_decreasing(&gammas) {
            problems.push(format!("|γ̂| not decreasing for {p:?}: {}", fmt_list(&gammas)));
        }
    }
    let m = Measured::bound(worst, 0.05, format!("worst final γ̂ violation over {} arrays", omegas.len() + plus.len()));
    m.require(problems.is_empty(), problems.join("; "))
}

/// `max |estimate − target|` over `α̂, β̂, δ̂, γ̂` at the last `n` is at most
/// half its value at the first `n`, or below `1e-12` (the generators hit
/// `β` and `δ` exactly, leaving only rounding).
pub fn estimate_consistency(omegas: &[VKParams], n_list: &[usize]) -> Measured {
    let mut worst: f64 = 0.0;
    let mut problems = Vec::new();
    for omega in omegas {
        let errs: Vec<f64> = n_list
            .iter()
            .map(|&n| {
                let Ok(row) = generate_vk(omega, n) else {
                    return f64::NAN;
                };
                let est = estimate_row(&row, omega.alpha().len());
                let mut e = (est.beta_hat - omega.beta()).abs().max((est.delta_hat - omega.delta()).abs());
                e = e.max((est.gamma_hat - omega.gamma()).abs());
                est.alpha_hat.iter().zip(omega.alpha()).fold(e, |acc, (a, b)| acc.max((a - b).abs()))
            })
            .collect();
        let (first, last) = (errs[0], errs[errs.len() - 1]);
        worst = worst.max(if last.is_nan() { f64::INFINITY } else { last });
        if !(last <= (first / 2.0).max(1e-12)) {
            problems.push(format!("{omega:?}: {}", fmt_list(&errs)));
        }
    }
    Measured::bound(worst, 0.05, "worst final estimation error").require(problems.is_empty(), problems.join("; "))
}

/// Row ordering for both generators, `p_1/n = β` for every row, and
/// `p_2/n² = δ` for rows with `γ > 0` (a constant tail only reaches `δ` in
/// the limit).
pub fn generator_invariants(omegas: &[VKParams], plus: &[VKParamsPlus], max_n: usize) -> Measured {
    let mut worst: f64 = 0.0;
    let mut unordered = 0;
    for omega in omegas {
        for n in vk_min_n(omega).expect("admissible")..=max_n {
            let row = generate_vk(omega, n).expect("admissible");
            unordered += usize::from(!is_ll_descending(&row) || row.len() != n);
            let est = estimate_row(&row, 0);
            worst = worst.max(rel((est.beta_hat - omega.beta()).abs(), omega.beta().abs().max(1.0)));
            if omega.gamma() > 0.0 {
                worst = worst.max(rel((est.delta_hat - omega.delta()).abs(), omega.delta().max(1.0)));
            }
        }
    }
    for p in plus {
        for n in vk_plus_min_n(p).max(p.alpha().len() + 1)..=max_n {
            let row = generate_vk_plus(p, n).expect("admissible");
            unordered += usize::from(!is_ll_descending(&row) || row.len() != n || row.iter().any(|&v| v < 0.0));
            worst = worst.max(rel((row.iter().sum::<f64>() / n as f64 - p.beta()).abs(), p.beta().max(1.0)));
        }
    }
    Measured::bound(worst, 1e-13, format!("{unordered} rows out of order"))
        .require(unordered == 0, "a generated row broke the ≪ ordering")
}

// --------------------------------------------------------------- experiment

/// The type A trend: `sup_err` strictly decreasing along `n_list` and
/// `sup_err(last) ≤ sup_err(first) / 2`.
pub fn convergence_a(ks: &[JackParam], omega: &VKParams, n_list: &[usize], grid: &[Vec<f64>]) -> Measured {
    let mut worst: f64 = 0.0;
    let mut problems = Vec::new();
    let mut traces = Vec::new();
    for k in ks {
        let spec = ExperimentSpec::converge_a(k.clone(), omega.clone(), n_list.to_vec(), grid.to_vec());
        trend(&spec, &format!("k = {k}"), &mut worst, &mut problems, &mut traces);
    }
    Measured::bound(worst, 0.5, traces.join("; ")).require(problems.is_empty(), problems.join("; "))
}

/// The type B trend for geometric presets `(d, p-rule)`, with the same
/// criteria as [`convergence_a`].
pub fn convergence_b(presets: &[(u32, &str)], omega: &VKParamsPlus, n_list: &[usize], grid: &[Vec<f64>]) -> Measured {
    let mut worst: f64 = 0.0;
    let mut problems = Vec::new();
    let mut traces = Vec::new();
    for &(d, rule) in presets {
        let preset = match rule.parse().and_then(|rule| geometric_preset(d, rule)) {
            Ok(p) => p,
            Err(e) => {
                problems.push(format!("d = {d}, p = {rule}: {e}"));
                continue;
            }
        };
        let spec = ExperimentSpec::converge_b(preset, omega.clone(), n_list.to_vec(), grid.to_vec());
        trend(&spec, &format!("d = {d}, p = {rule}"), &mut worst, &mut problems, &mut traces);
    }
    Measured::bound(worst, 0.5, traces.join("; ")).require(problems.is_empty(), problems.join("; "))
}

/// Records `sup_err(last)/sup_err(first)` and whether the trend is monotone.
fn trend(spec: &ExperimentSpec, label: &str, worst: &mut f64, problems: &mut Vec<String>, traces: &mut Vec<String>) {
    match run_convergence(spec) {
        Ok(report) => {
            let sup = report.sup_errors();
            let ratio = sup[sup.len() - 1] / sup[0];
            *worst = worst.max(if ratio.is_nan() { f64::INFINITY } else { ratio });
            traces.push(format!("{label}: {}", fmt_list(&sup)));
            if !strictly_decreasing(&sup) {
                problems.push(format!("{label}: not strictly decreasing"));
            }
        }
        Err(e) => problems.push(format!("{label}: {e}")),
    }
}

/// Text round trips of triangular arrays and reports reproduce every value
/// bit for bit, and a run gives identical output sequentially and in
/// parallel.
pub fn round_trip(seed: u64) -> Measured {
    let mut bad = 0;
    let mut checked = 0;
    let same = |a: f64, b: f64| a.to_bits() == b.to_bits();

    let omega = VKParams::new(vec![0.5, 0.25], 1.0, 0.25).expect("valid");
    let mut arr = TriangularArray::new();
    for n in vk_min_n(&omega).expect("admissible")..=20 {
        arr.insert(n, generate_vk(&omega, n).expect("admissible")).expect("row length n");
    }
    checked += 1;
    match TriangularArray::parse(&arr.to_text()) {
        Ok(back) => {
            let equal = back.len() == arr.len()
                && arr.rows().zip(back.rows()).all(|((n, a), (m, b))| {
                    n == m && a.len() == b.len() && a.iter().zip(b).all(|(x, y)| same(*x, *y))
                });
            bad += usize::from(!equal);
        }
        Err(_) => bad += 1,
    }

    let grid = parse_grid("random:-2:2:6x2", seed).expect("valid grid");
    let k = JackParam::from_ratio(1, 2).expect("positive");
    let mut spec = ExperimentSpec::converge_a(k, omega, vec![8, 16], grid);
    spec.exec = Execution::Sequential;
    let seq = run_convergence(&spec);
    spec.exec = Execution::Parallel;
    let par = run_convergence(&spec);
    checked += 1;
    let report = match (seq, par) {
        (Ok(a), Ok(b)) => {
            let eq = a.rows.len() == b.rows.len()
                && a.rows.iter().zip(&b.rows).all(|(x, y)| {
                    same(x.finite.re, y.finite.re) && same(x.finite.im, y.finite.im) && same(x.abs_err, y.abs_err)
                });
            bad += usize::from(!eq);
            Some(a)
        }
        _ => {
            bad += 1;
            None
        }
    };
    if let Some(report) = report {
        for format in [Format::Csv, Format::Json] {
            checked += 2;
            let rows_ok = write_rows(&report.rows, format)
                .and_then(|t| read_rows(&t, format))
                .map(|back| {
                    back.len() == report.rows.len()
                        && back.iter().zip(&report.rows).all(|(a, b)| {
                            a.n == b.n
                                && a.truncated == b.truncated
                                && a.x.iter().zip(&b.x).all(|(u, v)| same(*u, *v))
                                && [a.finite.re, a.finite.im, a.limit.re, a.limit.im, a.abs_err]
                                    .iter()
                                    .zip([b.finite.re, b.finite.im, b.limit.re, b.limit.im, b.abs_err])
                                    .all(|(u, v)| same(*u, v))
                        })
                })
                .unwrap_or(false);
            let summary_ok = write_summary(&report.summary, format)
                .and_then(|t| read_summary(&t, format))
                .map(|back| {
                    back.iter().zip(&report.summary).all(|(a, b)| {
                        a.n == b.n
                            && same(a.sup_err, b.sup_err)
                            && same(a.mean_err, b.mean_err)
                            && same(a.max_truncation_estimate, b.max_truncation_estimate)
                    })
                })
                .unwrap_or(false);
            bad += usize::from(!rows_ok) + usize::from(!summary_ok);
        }
    }
    Measured::exact(bad, checked, "round trips")
}

// ---------------------------------------------------------------------- run

fn timed(name: &str, f: impl FnOnce() -> Measured) -> Check {
    let start = Instant::now();
    let m = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|payload| {
        let why = payload
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "unknown panic".to_string());
        Measured { passed: false, worst: f64::NAN, tolerance: f64::NAN, detail: format!("panicked: {why}") }
    });
    Check {
        name: name.to_string(),
        passed: m.passed,
        worst: m.worst,
        tolerance: m.tolerance,
        detail: m.detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Runs every suite with the given seed.
pub fn run(seed: u64) -> Summary {
    let start = Instant::now();
    let ks = default_ks();
    let n_list = [8, 16, 32, 64];
    let omega_a = VKParams::new(vec![0.5, 0.25], 1.0, 0.25).expect("valid");
    let omega_b = VKParamsPlus::new(vec![0.5], 1.0).expect("valid");
    let grid_a = parse_grid("grid:-2:2:5x2", seed).expect("valid grid");
    let grid_b = parse_grid("grid:0:2:5x2:chamber", seed).expect("valid grid");
    let s = |i: u64| seed.wrapping_mul(0x9e37_79b9).wrapping_add(i);

    let suites: Vec<(&str, Box<dyn FnOnce() -> Measured + '_>)> = vec![
        ("partition_count", Box::new(|| partition_count(20, 5))),
        ("dominance_order", Box::new(|| dominance_order(8))),
        ("normalization", Box::new(|| normalization(&normalization_ks(), 6, 8, 20, s(1)))),
        ("stability", Box::new(|| stability(&normalization_ks(), 8, s(2)))),
        ("ones_ratio", Box::new(|| ones_ratio(&normalization_ks(), 8, 8))),
        ("oracle_equivalence", Box::new(|| oracle_equivalence(&ks, 6))),
        ("g_identities", Box::new(|| g_identities(&ks, 5, 6, s(3)))),
        ("phi_taylor", Box::new(|| phi_taylor(&ks, 5, 8, s(4)))),
        ("cauchy_identity", Box::new(|| cauchy_identity(&ks, 5, 2, 8, s(5)))),
        ("reduction_identity", Box::new(|| reduction_identity(&ks, 5, 6, s(6)))),
        ("scalar_reduction", Box::new(scalar_reduction)),
        ("rank_one_exponential", Box::new(|| rank_one_exponential(&ks, 10, s(7)))),
        ("positive_definite_a", Box::new(|| positive_definite(false, &ks, GramSetup::default(), s(8)))),
        ("positive_definite_b", Box::new(|| positive_definite(true, &ks, GramSetup::default(), s(9)))),
        ("w_invariance", Box::new(|| w_invariance(&ks, 6, s(10)))),
        ("moments", Box::new(|| moments(&ks, 6, 6, s(11)))),
        ("limit_bounds", Box::new(|| limit_bounds(&ks, 50, s(12)))),
        ("series_product", Box::new(|| series_product(&ks, std::slice::from_ref(&omega_a), 10, s(13)))),
        ("log_derivative", Box::new(|| log_derivative(&ks, 20, s(14)))),
        ("positive_definite_limits", Box::new(|| positive_definite_limits(&ks, GramSetup::default(), s(15)))),
        ("gamma_hat", Box::new(|| gamma_hat(&sample_omegas(), &sample_omegas_plus(), &n_list))),
        ("estimate_consistency", Box::new(|| estimate_consistency(&sample_omegas(), &n_list))),
        ("generator_invariants", Box::new(|| generator_invariants(&sample_omegas(), &sample_omegas_plus(), 64))),
        ("convergence_a", Box::new(|| convergence_a(&ks, &omega_a, &n_list, &grid_a))),
        (
            "convergence_b",
            Box::new(|| convergence_b(&[(1, "n"), (2, "n"), (4, "2n")], &omega_b, &n_list, &grid_b)),
        ),
        ("round_trip", Box::new(|| round_trip(s(16)))),
    ];
    let checks: Vec<Check> = suites.into_iter().map(|(name, f)| timed(name, f)).collect();
    let first_failure = checks.iter().find(|c| !c.passed).map(|c| c.name.clone());
    Summary { passed: first_failure.is_none(), first_failure, seconds: start.elapsed().as_secs_f64(), checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naive_count_small_cases() {
        assert_eq!(naive_count(5, 5, 5), 7);
        assert_eq!(naive_count(5, 2, 5), 3);
        assert_eq!(naive_count(0, 0, 0), 1);
    }

    #[test]
    fn measured_flags() {
        assert!(Measured::bound(0.5, 1.0, "").passed);
        assert!(!Measured::bound(f64::NAN, 1.0, "").passed);
        assert!(!Measured::exact(1, 3, "x").passed);
        assert!(!Measured::bound(0.0, 1.0, "").require(false, "no").passed);
    }

    #[test]
    fn monomials_by_permutation() {
        let x = [c(2.0), c(3.0)];
        assert_eq!(monomial_value(&Partition::from_unsorted(vec![2, 1]), &x), c(4.0 * 3.0 + 9.0 * 2.0));
        assert_eq!(monomial_value(&Partition::from_unsorted(vec![1, 1, 1]), &x), c(0.0));
    }
}
