//! Bessel functions of the first kind from the Poisson integral.
//!
//! With `a = λ - 1/2`,
//!
//! ```text
//! J_λ(x) / x^λ = 2^{-λ} / Γ(λ+1) · ⟨cos(x s)⟩_a
//! ```
//!
//! where `⟨·⟩_a` averages against the normalized weight `(1-s²)^a` on
//! `[-1, 1]`. For small `x` the average is a Gauss–Gegenbauer sum. For large
//! `x` the segment `[-1, 1]` is pushed onto the two vertical rays above `±1`,
//! which turns the oscillatory integral into a Laplace integral evaluated by
//! generalized Gauss–Laguerre; that form carries no cancellation, so relative
//! accuracy holds far out in the tail.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::gamma;
use super::quadrature::{gauss_gegenbauer, gauss_laguerre, integrate};
use crate::error::{Error, Result};

const LAPLACE_FROM: f64 = 12.0;
const LAGUERRE_POINTS: usize = 64;
const SCAN_LIMIT: f64 = 1000.0;

fn check_order(lambda: f64) -> Result<()> {
    if !(lambda >= -0.5) || !lambda.is_finite() {
        return Err(Error::Domain(format!(
            "Bessel order must be at least -1/2, got {lambda}"
        )));
    }
    Ok(())
}

/// `⟨cos(x s)⟩_a` by Gauss–Gegenbauer, raising the order until two
/// consecutive rules agree.
fn poisson_average(a: f64, x: f64) -> f64 {
    let mut n = 20 + (0.6 * x).ceil() as usize;
    let mut prev = average_with(a, x, n);
    for _ in 0..4 {
        n += 8;
        let next = average_with(a, x, n);
        if (next - prev).abs() <= 1e-13 {
            return next;
        }
        prev = next;
    }
    prev
}

fn average_with(a: f64, x: f64, n: usize) -> f64 {
    let rule = gauss_gegenbauer(a, n);
    let mass: f64 = rule.weights.iter().sum();
    rule.apply(|s| (x * s).cos()) / mass
}

/// `J_λ(x) / x^λ` for `x ≥ 0`, using the true limit `2^{-λ}/Γ(λ+1)` at 0.
///
/// At `λ = -1/2` this is `√(2/π) cos x`.
pub fn bessel_ratio(lambda: f64, x: f64) -> f64 {
    debug_assert!(lambda >= -0.5 && x >= 0.0);
    if lambda == -0.5 {
        return (2.0 / PI).sqrt() * x.cos();
    }
    if lambda == 0.5 {
        return if x == 0.0 {
            (2.0 / PI).sqrt()
        } else {
            (2.0 / PI).sqrt() * x.sin() / x
        };
    }
    if x < LAPLACE_FROM {
        2f64.powf(-lambda) / gamma(lambda + 1.0) * poisson_average(lambda - 0.5, x)
    } else {
        laplace_ratio(lambda, x)
    }
}

/// The contour form:
/// `2^{1-λ} x^{-λ-1/2} π^{-1/2} Im[e^{i(x - πa/2)} ⟨(2 + i v/x)^a⟩]`
/// with `⟨·⟩` the normalized Laguerre weight `v^a e^{-v}`.
fn laplace_ratio(lambda: f64, x: f64) -> f64 {
    let a = lambda - 0.5;
    let rule = gauss_laguerre(a, LAGUERRE_POINTS);
    let mass: f64 = rule.weights.iter().sum();
    let mut acc = Complex64::new(0.0, 0.0);
    for (&v, &w) in rule.nodes.iter().zip(&rule.weights) {
        acc += w * Complex64::new(2.0, v / x).powf(a);
    }
    acc /= mass;
    let phase = Complex64::from_polar(1.0, x - PI * a / 2.0);
    2f64.powf(1.0 - lambda) * x.powf(-lambda - 0.5) / PI.sqrt() * (phase * acc).im
}

/// `J_λ(x)` for `x > 0`, `λ ≥ -1/2`.
pub fn bessel_j(lambda: f64, x: f64) -> Result<f64> {
    check_order(lambda)?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_j needs x > 0, got {x}")));
    }
    if lambda == -0.5 {
        return Ok((2.0 / (PI * x)).sqrt() * x.cos());
    }
    Ok(x.powf(lambda) * bessel_ratio(lambda, x))
}

/// `𝒥_λ(x) = J_λ(x)/x^λ` for `λ > -1/2`, and `𝒥_{-1/2}(x) = cos x`.
pub fn script_j(lambda: f64, x: f64) -> Result<f64> {
    check_order(lambda)?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("script_j needs x >= 0, got {x}")));
    }
    if lambda == -0.5 {
        return Ok(x.cos());
    }
    Ok(bessel_ratio(lambda, x))
}

/// The first `count` positive zeros of `𝒥_λ`, `λ > -1/2`.
///
/// Sign changes are bracketed on a scan with step π/8 up to x = 1000 and then
/// bisected to 1e-12.
pub fn bessel_zeros(lambda: f64, count: usize) -> Result<Vec<f64>> {
    check_order(lambda)?;
    if lambda == -0.5 {
        return Err(Error::Domain("zeros are computed for orders above -1/2".into()));
    }
    let f = |x: f64| bessel_ratio(lambda, x);
    let step = PI / 8.0;
    let mut zeros = Vec::with_capacity(count);
    let mut lo = 0.0;
    let mut f_lo = f(lo);
    while zeros.len() < count {
        let hi = lo + step;
        if hi > SCAN_LIMIT {
            return Err(Error::Range {
                message: format!(
                    "only {} zeros of order {lambda} below x = {SCAN_LIMIT}, {count} requested",
                    zeros.len()
                ),
                achieved: Some(zeros.len()),
            });
        }
        let f_hi = f(hi);
        if f_hi == 0.0 {
            zeros.push(hi);
            lo = hi + 1e-9;
            f_lo = f(lo);
            continue;
        }
        if f_lo.signum() != f_hi.signum() {
            zeros.push(bisect(&f, lo, hi, f_lo, 1e-12));
        }
        lo = hi;
        f_lo = f_hi;
    }
    Ok(zeros)
}

pub(crate) fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, f_lo: f64, tol: f64) -> f64 {
    let s_lo = f_lo.signum();
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The `k`-th positive zero of `𝒥_λ` (`k ≥ 1`).
pub fn bessel_zero(lambda: f64, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::invalid("zeros are numbered from 1"));
    }
    Ok(bessel_zeros(lambda, k)?[k - 1])
}

/// `∫ |J_ν|` over the arches between consecutive positive zeros,
/// `[j_{ν,k}, j_{ν,k+1}]` for `k = 1..=count`.
pub fn wave_areas(nu: f64, count: usize) -> Result<Vec<f64>> {
    if nu <= -0.5 {
        return Err(Error::Domain(format!(
            "wave areas are computed for orders above -1/2, got {nu}"
        )));
    }
    let zeros = bessel_zeros(nu, count + 1)?;
    Ok(zeros
        .windows(2)
        .map(|w| {
            let (v, _) = integrate(|x| (x.powf(nu) * bessel_ratio(nu, x)).abs(), w[0], w[1], 0.0, 1e-13);
            v
        })
        .collect())
}
