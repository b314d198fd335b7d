//! Special functions and explicit constants.

mod bessel;
mod constants;
mod gamma;
pub mod quadrature;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use bessel::{bessel_j, bessel_ratio, bessel_zero, bessel_zeros, script_j, wave_areas};
pub use constants::{
    find_epsilon0, kappa_bound, theta_threshold, unit_ball_volume, upsilon_d, upsilon_integral,
    upsilon_integral_bessel, Epsilon0,
};
pub use gamma::{gamma, ln_gamma};

use crate::error::{Error, Result};

/// Parameters of a dilated, translated Bochner–Riesz multiplier
/// `(1 - |ξ - a|²/Ω²)_+^α` in `R^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub d: usize,
    pub alpha: f64,
    pub omega: f64,
    pub center: Vec<f64>,
}

impl KernelSpec {
    pub fn new(d: usize, alpha: f64, omega: f64, center: Vec<f64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        if !(alpha > -0.5) {
            return Err(Error::invalid(format!("alpha must exceed -1/2, got {alpha}")));
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::invalid(format!("omega must be positive, got {omega}")));
        }
        if center.len() != d {
            return Err(Error::invalid("center has the wrong dimension"));
        }
        Ok(KernelSpec {
            d,
            alpha,
            omega,
            center,
        })
    }

    /// Centered kernel.
    pub fn centered(d: usize, alpha: f64, omega: f64) -> Result<Self> {
        Self::new(d, alpha, omega, vec![0.0; d])
    }

    /// `(1 - |ξ - a|²/Ω²)_+^α`.
    pub fn multiplier(&self, xi: &[f64]) -> f64 {
        let r2: f64 =
            xi.iter().zip(&self.center).map(|(x, a)| (x - a) * (x - a)).sum::<f64>() / (self.omega * self.omega);
        if r2 < 1.0 {
            if self.alpha == 0.0 {
                1.0
            } else {
                (1.0 - r2).powf(self.alpha)
            }
        } else {
            0.0
        }
    }
}

/// `∫_{B(0,1)} e^{-2πi⟨x,ξ⟩} dx = J_{d/2}(2π|ξ|) / |ξ|^{d/2}`.
pub fn fourier_ball(xi_norm: f64, d: usize) -> f64 {
    let lambda = d as f64 / 2.0;
    (2.0 * PI).powf(lambda) * bessel_ratio(lambda, 2.0 * PI * xi_norm.abs())
}

/// `m̂_α(ξ) = Γ(α+1) π^{-α} J_{d/2+α}(2π|ξ|) / |ξ|^{d/2+α}` for
/// `m_α(x) = (1 - |x|²)_+^α`.
pub fn m_alpha_hat(xi_norm: f64, spec: &KernelSpec) -> f64 {
    let lambda = spec.d as f64 / 2.0 + spec.alpha;
    gamma(spec.alpha + 1.0)
        * PI.powf(-spec.alpha)
        * (2.0 * PI).powf(lambda)
        * bessel_ratio(lambda, 2.0 * PI * xi_norm.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_transform_at_origin_is_volume() {
        for d in 1..=5 {
            assert!((fourier_ball(0.0, d) / unit_ball_volume(d) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ball_transform_in_one_dimension() {
        for &xi in &[0.1, 0.37, 1.0, 2.25, 7.9] {
            let want = (2.0 * PI * xi).sin() / (PI * xi);
            assert!((fourier_ball(xi, 1) - want).abs() < 1e-13);
        }
    }

    #[test]
    fn m_alpha_zero_is_the_ball() {
        for d in 1..=3 {
            let spec = KernelSpec::centered(d, 0.0, 1.0).unwrap();
            for k in 0..50 {
                let xi = 0.13 * k as f64;
                assert!((m_alpha_hat(xi, &spec) - fourier_ball(xi, d)).abs() < 1e-12);
            }
        }
        let spec = KernelSpec::centered(1, 0.0, 1.0).unwrap();
        assert!(m_alpha_hat(0.5, &spec).abs() < 1e-14);
    }

    #[test]
    fn m_alpha_at_origin_matches_radial_integral() {
        for d in 1..=3 {
            for &alpha in &[0.5, 1.0, 2.5] {
                let spec = KernelSpec::centered(d, alpha, 1.0).unwrap();
                let c = d as f64 * unit_ball_volume(d);
                let (v, _) = quadrature::integrate(
                    |r| c * r.powi(d as i32 - 1) * (1.0 - r * r).powf(alpha),
                    0.0,
                    1.0,
                    0.0,
                    1e-14,
                );
                assert!((m_alpha_hat(0.0, &spec) / v - 1.0).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn kernel_spec_validation() {
        assert!(KernelSpec::new(1, -0.5, 1.0, vec![0.0]).is_err());
        assert!(KernelSpec::new(1, 0.0, 0.0, vec![0.0]).is_err());
        assert!(KernelSpec::new(2, 0.0, 1.0, vec![0.0]).is_err());
    }
}
