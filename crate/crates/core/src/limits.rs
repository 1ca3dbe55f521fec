//! Infinite-rank limits: `p̃_m(ω)`, `C̃_κ(ω)`, the products `Ψ` and `Ψ̂`,
//! and the limit functions of the type A and type B Bessel functions.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::bessel::{gen_pochhammer_exact, sum_layers, SeriesConfig, SeriesValue};
use crate::error::{Error, Result};
use crate::numeric::{cdd, factorial, ratio_to_f64};
use crate::partitions::{enumerate_partitions, Partition};
use crate::symfun::{jack_at_ones, jack_eval, jack_p_expansion, JackParam};
use crate::vk::VKParams;

/// Highest degree [`series_psi_hat`] will expand; the power-sum expansions
/// beyond it get expensive.
pub const SERIES_PSI_MAX_DEGREE: u32 = 24;

/// `p̃_m(ω)`: `1, β, δ` for `m = 0, 1, 2` and `Σ α_i^m` for `m ≥ 3`.
pub fn tilde_p(omega: &VKParams, m: u32) -> f64 {
    match m {
        0 => 1.0,
        1 => omega.beta(),
        2 => omega.delta(),
        _ => omega.alpha().iter().map(|a| a.powi(m as i32)).sum(),
    }
}

/// `C̃_κ(ω)`, obtained by substituting `p_μ ↦ Π_i p̃_{μ_i}(ω)` into the
/// power-sum expansion of `C_κ`.
pub fn tilde_c(omega: &VKParams, kappa: &Partition, k: &JackParam) -> f64 {
    jack_p_expansion(kappa, k).eval_with_power_sums(|m| tilde_p(omega, m))
}

/// One factor `(1 − a z)^{−k}` on the principal branch.
fn power_factor(a: f64, z: Complex64, k: f64, index: usize) -> Result<Complex64> {
    let base = Complex64::new(1.0, 0.0) - a * z;
    if base.im == 0.0 && base.re <= 0.0 {
        return Err(Error::domain(format!("α_{} z = {} lies on the branch cut [1, ∞)", index + 1, a * z)));
    }
    Ok((-k * base.ln()).exp())
}

/// `Ψ(ω; z) = e^{kβz + kγz²/2} Π_l e^{−kα_l z} (1 − α_l z)^{−k}`.
pub fn psi_eval(omega: &VKParams, k: &JackParam, z: Complex64) -> Result<Complex64> {
    let kk = k.k_f64();
    let mut exponent = kk * omega.beta() * z + kk * omega.gamma() * z * z / 2.0;
    let mut value = Complex64::new(1.0, 0.0);
    for (l, &a) in omega.alpha().iter().enumerate() {
        exponent -= kk * a * z;
        value *= power_factor(a, z, kk, l)?;
    }
    Ok(value * exponent.exp())
}

/// `Ψ̂(ω; z) = Π_j Ψ(ω; z_j)`.
pub fn psi_hat(omega: &VKParams, k: &JackParam, z: &[Complex64]) -> Result<Complex64> {
    z.iter().try_fold(Complex64::new(1.0, 0.0), |acc, &zj| Ok(acc * psi_eval(omega, k, zj)?))
}

/// `Ψ̂(ω; ix/k) = Π_j e^{iβx_j − γx_j²/2k} Π_l e^{−iα_l x_j} / (1 − iα_l x_j/k)^k`.
pub fn lim_bessel_a(omega: &VKParams, k: &JackParam, x: &[f64]) -> Complex64 {
    let kk = k.k_f64();
    let z: Vec<Complex64> = x.iter().map(|&xj| Complex64::new(0.0, xj / kk)).collect();
    // 1 − iα x/k has real part 1, so no factor can meet the cut
    psi_hat(omega, k, &z).expect("imaginary arguments avoid the branch cuts")
}

/// `Ψ̂(ω; −x²/4k) = Π_j e^{−βx_j²/4} Π_l e^{α_l x_j²/4} / (1 + α_l x_j²/4k)^k`,
/// defined for `γ = 0` and `α ≥ 0`.
pub fn lim_bessel_b(omega: &VKParams, k: &JackParam, x: &[f64]) -> Result<f64> {
    if omega.gamma() != 0.0 || omega.alpha().iter().any(|&a| a < 0.0) {
        return Err(Error::precondition(format!(
            "the type B limit needs gamma = 0 and alpha ≥ 0, got alpha = {:?}, gamma = {}",
            omega.alpha(),
            omega.gamma()
        )));
    }
    let kk = k.k_f64();
    let mut log = 0.0;
    for &xj in x {
        let s = xj * xj / 4.0;
        log -= omega.beta() * s;
        for &a in omega.alpha() {
            log += a * s - kk * (1.0 + a * s / kk).ln();
        }
    }
    Ok(log.exp())
}

/// `Σ_κ [kr]_κ / |κ|! · C̃_κ(ω) · C_κ(z) / C_κ(1_r)`, summed by degree up to
/// `min(cfg.max_degree, SERIES_PSI_MAX_DEGREE)`.
///
/// Agrees with [`psi_hat`] for small `|z|`; a safe radius is about
/// `0.3 / max(|α_1|, |β|, √δ)`.
pub fn series_psi_hat(omega: &VKParams, k: &JackParam, z: &[Complex64], cfg: &SeriesConfig) -> Result<SeriesValue> {
    cfg.validate()?;
    let r = z.len();
    if r == 0 {
        return Err(Error::precondition("series_psi_hat needs at least one coordinate"));
    }
    let kr = BigRational::from_integer(BigInt::from(r)) * k.k();
    let cfg = SeriesConfig { max_degree: cfg.max_degree.min(SERIES_PSI_MAX_DEGREE), ..*cfg };
    Ok(sum_layers(&cfg, |m| {
        let mfact = factorial::<BigRational>(m);
        cdd(enumerate_partitions(m, r)
            .iter()
            .map(|kappa| {
                let coeff = gen_pochhammer_exact(&kr, kappa, k) / &mfact / jack_at_ones(kappa, k, r);
                ratio_to_f64(&coeff) * tilde_c(omega, kappa, k) * jack_eval(kappa, k, z)
            })
            .sum())
    }))
}

/// `k Σ_{m=0}^{order} p̃_{m+1}(ω) z^m`, the truncated Taylor series of
/// `d/dz log Ψ(ω; z)`.
pub fn psi_log_derivative_series(omega: &VKParams, k: &JackParam, z: Complex64, order: u32) -> Complex64 {
    let mut zm = Complex64::new(1.0, 0.0);
    let mut total = Complex64::new(0.0, 0.0);
    for m in 0..=order {
        total += tilde_p(omega, m + 1) * zm;
        zm *= z;
    }
    total * k.k_f64()
}
