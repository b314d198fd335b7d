use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::rearrange::RadialProfile;
use crate::specfun::{bessel_ratio, fourier_ball, quadrature::integrate};

/// Values of a radial Fourier transform at radial frequencies `rho`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialSpectrum {
    pub dim: usize,
    pub rho: Vec<f64>,
    pub values: Vec<f64>,
}

/// Exact transform of a step profile as a layer-cake sum of ball transforms:
/// `Σ_i (level_i - level_{i+1}) R_{i+1}^d B(R_{i+1} ρ)`.
pub fn radial_fourier(profile: &RadialProfile, rho: &[f64]) -> RadialSpectrum {
    let d = profile.dim;
    let n = profile.levels.len();
    let values = rho
        .iter()
        .map(|&p| {
            (0..n)
                .map(|i| {
                    let next = if i + 1 < n { profile.levels[i + 1] } else { 0.0 };
                    let jump = profile.levels[i] - next;
                    if jump == 0.0 {
                        return 0.0;
                    }
                    let r = profile.radii[i + 1];
                    jump * r.powi(d as i32) * fourier_ball(r * p, d)
                })
                .sum()
        })
        .collect();
    RadialSpectrum {
        dim: d,
        rho: rho.to_vec(),
        values,
    }
}

/// Transform of the radial function `x ↦ f(|x|)` supported in `|x| ≤ r_max`:
/// `(2π)^{d/2} ∫_0^{r_max} f(r) r^{d-1} 𝒥_{d/2-1}(2πrρ) dr` by adaptive
/// quadrature.
pub fn radial_fourier_fn<F: Fn(f64) -> f64>(f: F, d: usize, r_max: f64, rho: f64) -> f64 {
    let lambda = d as f64 / 2.0 - 1.0;
    let scale = (2.0 * PI).powf(d as f64 / 2.0);
    let integrand = |r: f64| f(r) * r.powi(d as i32 - 1) * bessel_ratio(lambda, 2.0 * PI * r * rho);
    // split at the kernel's half periods so each panel sees a few oscillations
    let pieces = ((2.0 * r_max * rho).ceil() as usize).clamp(1, 4096);
    let width = r_max / pieces as f64;
    let total: f64 = (0..pieces)
        .map(|k| integrate(&integrand, k as f64 * width, (k + 1) as f64 * width, 1e-15, 1e-12).0)
        .sum();
    scale * total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{m_alpha_hat, KernelSpec};

    #[test]
    fn ball_profile_gives_ball_transform() {
        for d in 1..=3 {
            let p = RadialProfile::ball(d, 1.0).unwrap();
            let rho: Vec<f64> = (0..40).map(|k| 0.1 * k as f64).collect();
            let s = radial_fourier(&p, &rho);
            for (r, v) in rho.iter().zip(&s.values) {
                assert!((v - fourier_ball(*r, d)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn quadrature_matches_closed_forms() {
        for d in 1..=3 {
            for &rho in &[0.0, 0.3, 1.7, 4.2] {
                let ball = radial_fourier_fn(|_| 1.0, d, 1.0, rho);
                assert!((ball - fourier_ball(rho, d)).abs() < 1e-8);
                let spec = KernelSpec::centered(d, 1.5, 1.0).unwrap();
                let m = radial_fourier_fn(|r| (1.0 - r * r).max(0.0).powf(1.5), d, 1.0, rho);
                assert!((m - m_alpha_hat(rho, &spec)).abs() < 1e-8);
                let g = radial_fourier_fn(|r| (-PI * r * r).exp(), d, 8.0, rho);
                assert!((g - (-PI * rho * rho).exp()).abs() < 1e-8);
            }
        }
    }
}
