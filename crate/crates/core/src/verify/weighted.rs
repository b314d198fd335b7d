//! Weighted spectral inequalities: the `χ̂`-weighted comparison, its
//! negative Sobolev special case, and Lieb's smoothness inequality.

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::verify::{epsilon, norm, padded_len, spectral_pair, spectral_pair_with, window_sum, windowed_energy};
use crate::verify::{needs_moduli, InequalityReport};

const WEIGHT_STATEMENT: &str = "int chi^ |f^|^2 <= int (|chi|*)^ |(|f|*)^|^2";
const DUAL_STATEMENT: &str = "int (1+|xi|^2)^-s |f^|^2 <= int (1+|xi|^2)^-s |(|f|*)^|^2";
const LIEB_STATEMENT: &str = "int |xi|^2s |(|f|*)^|^2 <= int |xi|^2s |f^|^2";

/// `∫ χ̂ |φ̂|² ≤ ∫ (|χ|*)^ |(|φ|*)^|²`.
///
/// The left side takes the real part of `χ̂`; the right side is real up to
/// rounding because `|χ|*` is even.
pub fn verify_weight(chi: &GridFunction, f: &GridFunction) -> Result<InequalityReport> {
    let m = padded_len(&[chi, f])?;
    let c = spectral_pair_with(chi, m)?;
    let p = spectral_pair_with(f, m)?;
    let (ch, fh) = (c.spec.values(), p.spec.values());
    let (cs, fs) = (c.star.values(), p.star.values());
    let lhs = window_sum(&p.spec, |k, _| ch[k].re * fh[k].norm_sqr());
    let rhs = window_sum(&p.star, |k, _| cs[k].re * fs[k].norm_sqr());
    let eps = epsilon("weight", f.h());
    Ok(InequalityReport::check("weight", WEIGHT_STATEMENT, lhs, rhs, 1.0, eps)
        .with_meta("h", f.h())
        .with_meta("epsilon", eps)
        .with_meta("chi_moduli_taken", needs_moduli(chi)))
}

/// Negative-order Sobolev weights `(1 + |ξ|²)^{-s}`.
pub fn verify_dual_sobolev(f: &GridFunction, s: f64) -> Result<InequalityReport> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::invalid(format!("s must be positive, got {s}")));
    }
    let pair = spectral_pair(f)?;
    let w = |xi: &[f64]| (1.0 + xi.iter().map(|x| x * x).sum::<f64>()).powf(-s);
    let lhs = windowed_energy(&pair.spec, w);
    let rhs = windowed_energy(&pair.star, w);
    let eps = epsilon("dual-sobolev", f.h());
    Ok(
        InequalityReport::check("dual-sobolev", DUAL_STATEMENT, lhs, rhs, 1.0, eps)
            .with_meta("s", s)
            .with_meta("h", f.h())
            .with_meta("epsilon", eps),
    )
}

/// `∫|ξ|^{2s}|(|φ|*)^|² ≤ ∫|ξ|^{2s}|φ̂|²` for `0 < s ≤ 1`, with constant 1.
///
/// The metadata also carries the ratio of full `H^s` norms
/// `‖|φ|*‖_{H^s} / ‖φ‖_{H^s}`.
pub fn verify_lieb(f: &GridFunction, s: f64) -> Result<InequalityReport> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::invalid(format!("s must lie in (0, 1], got {s}")));
    }
    let pair = spectral_pair(f)?;
    let homogeneous = |xi: &[f64]| norm(xi).powf(2.0 * s);
    let lhs = windowed_energy(&pair.star, homogeneous);
    let rhs = windowed_energy(&pair.spec, homogeneous);
    let full = |xi: &[f64]| (1.0 + xi.iter().map(|x| x * x).sum::<f64>()).powf(s);
    let hs_ratio = (windowed_energy(&pair.star, full) / windowed_energy(&pair.spec, full)).sqrt();
    let eps = epsilon("lieb", f.h());
    Ok(InequalityReport::check("lieb", LIEB_STATEMENT, lhs, rhs, 1.0, eps)
        .with_meta("s", s)
        .with_meta("h", f.h())
        .with_meta("epsilon", eps)
        .with_meta("hs_norm_ratio", hs_ratio))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn gaussian(d: usize, n: usize, h: f64, a: f64, shift: f64) -> GridFunction {
        GridFunction::symmetric_from_fn(&vec![n; d], h, |x| {
            let r2: f64 = x.iter().map(|v| (v - shift) * (v - shift)).sum();
            Complex64::new((-PI * a * r2).exp(), 0.0)
        })
        .unwrap()
    }

    #[test]
    fn centered_gaussians_give_equality() {
        let chi = gaussian(1, 64, 0.125, 1.0, 0.0);
        let f = gaussian(1, 64, 0.125, 2.0, 0.0);
        let r = verify_weight(&chi, &f).unwrap();
        assert!((r.lhs / r.rhs - 1.0).abs() < 1e-12);
        let r = verify_dual_sobolev(&f, 1.0).unwrap();
        assert!((r.lhs / r.rhs - 1.0).abs() < 1e-12);
        let r = verify_lieb(&f, 1.0).unwrap();
        assert!((r.lhs / r.rhs - 1.0).abs() < 1e-12 && r.pass);
    }

    #[test]
    fn weight_with_closed_form() {
        // χ = f = e^{-π|x|²}: ∫ e^{-πξ²} e^{-2πξ²} dξ = 1/√3
        let g = gaussian(1, 128, 1.0 / 16.0, 1.0, 0.0);
        let r = verify_weight(&g, &g).unwrap();
        assert!((r.lhs - 1.0 / 3f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn shifted_bump_against_gaussian_weight() {
        let chi = gaussian(1, 128, 1.0 / 16.0, 1.0, 0.0);
        let f = GridFunction::symmetric_from_fn(&[128], 1.0 / 16.0, |x| {
            let t = x[0] - 1.3;
            Complex64::new(if t.abs() < 1.0 { (1.0 - t * t).powi(2) } else { 0.0 }, 0.0)
        })
        .unwrap();
        assert!(verify_weight(&chi, &f).unwrap().pass);
    }

    #[test]
    fn dual_sobolev_tends_to_parseval() {
        // the windowed rearranged side misses the spectral tail of |f|*, O(h)
        let two_bumps = |n: usize, h: f64| {
            GridFunction::symmetric_from_fn(&[n], h, |x| {
                Complex64::new(
                    (-PI * (x[0] - 1.0).powi(2)).exp() + 0.5 * (-4.0 * PI * (x[0] + 1.5).powi(2)).exp(),
                    0.0,
                )
            })
            .unwrap()
        };
        let coarse = verify_dual_sobolev(&two_bumps(64, 0.125), 1e-9).unwrap();
        let fine = verify_dual_sobolev(&two_bumps(256, 0.03125), 1e-9).unwrap();
        let gap = |r: &InequalityReport| (r.lhs / r.rhs - 1.0).abs();
        assert!(gap(&coarse) < 1e-3);
        assert!(gap(&fine) < gap(&coarse) / 2.0);
        let f = two_bumps(64, 0.125);
        for s in [0.5, 1.0, 2.0] {
            assert!(verify_dual_sobolev(&f, s).unwrap().pass);
        }
    }

    #[test]
    fn lieb_reduces_gradient_energy_of_two_bumps() {
        let f = GridFunction::symmetric_from_fn(&[128], 1.0 / 16.0, |x| {
            Complex64::new(
                (-PI * (x[0] - 1.0).powi(2)).exp() + (-PI * (x[0] + 1.5).powi(2)).exp(),
                0.0,
            )
        })
        .unwrap();
        for s in [0.5, 1.0] {
            let r = verify_lieb(&f, s).unwrap();
            assert!(r.pass && r.lhs < r.rhs);
        }
    }

    #[test]
    fn parameter_domains() {
        let f = gaussian(1, 16, 0.5, 1.0, 0.0);
        assert!(verify_lieb(&f, 0.0).is_err());
        assert!(verify_lieb(&f, 1.5).is_err());
        assert!(verify_dual_sobolev(&f, -1.0).is_err());
    }
}
