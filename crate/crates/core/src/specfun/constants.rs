use std::f64::consts::PI;

use super::bessel::{bessel_ratio, bessel_zeros, bisect};
use super::gamma::gamma;
use super::quadrature::integrate;
use crate::error::{Error, Result};

/// `c_d = π^{d/2} / Γ(d/2 + 1)`, via `c_d = (2π/d) c_{d-2}`.
pub fn unit_ball_volume(d: usize) -> f64 {
    let (mut c, start) = if d.is_multiple_of(2) { (1.0, 2) } else { (2.0, 3) };
    let mut k = start;
    while k <= d {
        c *= 2.0 * PI / k as f64;
        k += 2;
    }
    c
}

/// Result of [`find_epsilon0`], with the certificate that justifies it.
#[derive(Clone, Debug)]
pub struct Epsilon0 {
    pub epsilon0: f64,
    /// Largest `|𝒥_λ|` over the local extrema after the first zero.
    pub level: f64,
    /// Decay constant measured on the extrema examined.
    pub decay_constant: f64,
    /// Position of the last extremum examined.
    pub examined_to: f64,
}

/// The point where `𝒥_λ` first drops to the largest magnitude it reaches
/// again later.
///
/// Local extrema of `𝒥_λ` sit at the zeros of `𝒥_{λ+1}`. Extrema are added
/// until `C_λ (1 + T)^{-λ-1/2}`, with `C_λ` measured on the extrema seen so
/// far, falls below the running maximum.
pub fn find_epsilon0(lambda: f64) -> Result<Epsilon0> {
    if !(lambda > -0.5) {
        return Err(Error::Domain(format!("order must exceed -1/2, got {lambda}")));
    }
    let f = |t: f64| bessel_ratio(lambda, t);
    let expo = lambda + 0.5;
    let mut count = 16;
    loop {
        let extrema = bessel_zeros(lambda + 1.0, count).map_err(|e| Error::Numeric {
            message: "could not locate enough extrema to certify the tail".into(),
            diagnostics: e.to_string(),
        })?;
        let values: Vec<f64> = extrema.iter().map(|&t| f(t).abs()).collect();
        let level = values.iter().copied().fold(0.0, f64::max);
        let decay_constant = extrema
            .iter()
            .zip(&values)
            .map(|(&t, &v)| v * (1.0 + t).powf(expo))
            .fold(0.0, f64::max)
            * 1.01;
        let examined_to = *extrema.last().unwrap();
        if decay_constant * (1.0 + examined_to).powf(-expo) < level {
            let top = f(0.0);
            if !(level < top) {
                return Err(Error::Numeric {
                    message: "a later extremum reaches the value at the origin".into(),
                    diagnostics: format!("level {level:e} vs {top:e}"),
                });
            }
            let g = |t: f64| f(t) - level;
            let epsilon0 = bisect(&g, 0.0, extrema[0], g(0.0), 1e-14);
            return Ok(Epsilon0 {
                epsilon0,
                level,
                decay_constant,
                examined_to,
            });
        }
        count *= 2;
        if count > 512 {
            return Err(Error::Numeric {
                message: "tail certificate not reached".into(),
                diagnostics: format!("C = {decay_constant:e}, T = {examined_to}, level = {level:e}"),
            });
        }
    }
}

/// `ϑ(d, α) = ε₀ c_d^{1/d} / (2π)` with `ε₀ = find_epsilon0(d/2 + α)`.
pub fn theta_threshold(d: usize, alpha: f64) -> Result<f64> {
    if d == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    if !(alpha > -0.5) {
        return Err(Error::Domain(format!("alpha must exceed -1/2, got {alpha}")));
    }
    let eps = find_epsilon0(d as f64 / 2.0 + alpha)?.epsilon0;
    Ok(eps * unit_ball_volume(d).powf(1.0 / d as f64) / (2.0 * PI))
}

/// `∫_0^1 (1 - t²)^{d-1/2} cos(πt) dt` by adaptive quadrature.
pub fn upsilon_integral(d: usize) -> f64 {
    let e = d as f64 - 0.5;
    integrate(
        |t| (1.0 - t * t).max(0.0).powf(e) * (PI * t).cos(),
        0.0,
        1.0,
        1e-16,
        1e-14,
    )
    .0
}

/// The same integral through `J_d(π)`.
pub fn upsilon_integral_bessel(d: usize) -> f64 {
    let nu = d as f64;
    // ∫_0^1 (1-t²)^{ν-1/2} cos(πt) dt = √π Γ(ν+1/2) 2^{ν-1} J_ν(π)/π^ν
    PI.sqrt() * gamma(nu + 0.5) * 2f64.powf(nu - 1.0) * bessel_ratio(nu, PI)
}

/// `υ_d = (2 / ((2π)^{d/2} Γ(1/2)) ∫_0^1 (1-t²)^{d-1/2} cos(πt) dt)²`.
pub fn upsilon_d(d: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    let inner = upsilon_integral(d);
    if !(inner > 0.0) {
        return Err(Error::Numeric {
            message: format!("the defining integral for d = {d} is not positive"),
            diagnostics: format!("integral = {inner:e}"),
        });
    }
    let factor = 2.0 / ((2.0 * PI).powf(d as f64 / 2.0) * PI.sqrt());
    Ok((factor * inner).powi(2))
}

/// `κ_d = 2^{d+1} / (υ_d min(1, c_d²))`.
pub fn kappa_bound(d: usize) -> Result<f64> {
    let u = upsilon_d(d)?;
    let c = unit_ball_volume(d);
    Ok(2f64.powi(d as i32 + 1) / (u * c.powi(2).min(1.0)))
}
