//! Donoho–Stark type bounds for Bochner–Riesz means of functions with
//! small support, and the Gibbs-type lower bounds on the sine integral.
//!
//! Both sides of every bound are evaluated in space with
//! [`bochner_riesz_spatial`], which is exact for the point-mass model:
//! `∫ Ω^{-d} m((ξ - a)/Ω) φ̂(ξ) e^{2πi⟨x,ξ⟩} dξ = ∫ φ(t) m̂(Ω(t - x)) e^{-2πi⟨a,t-x⟩} dt`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::specfun::quadrature::integrate;
use crate::specfun::{theta_threshold, KernelSpec};
use crate::transform::{bochner_riesz_spatial, dft};
use crate::verify::{epsilon, padded_len, rearranged_grid, support_reach, window, window_sum, InequalityReport};

const PROP_STATEMENT: &str = "|int m_alpha(xi/W) f^ / W^d| <= int m_alpha(xi/W) (|f|*)^ / W^d  when W S^(1/d) <= theta";
const DS2_STATEMENT: &str =
    "|int m_alpha((xi-a)/W) f^ e^(2pi i x xi) / W^d| <= C psi(W^d S) int m_beta(xi/W) (|f|*)^ / W^d";
const COR_STATEMENT: &str =
    "int |f^| |w(xi/W)| <= C (|w|_1^(2/d) + |w|_2^(2/d))^(d/2) (1 + W^d S)^(d/2) int m_beta(xi/W) (|f|*)^";

fn check_dims(f: &GridFunction, v: &[f64], what: &str) -> Result<()> {
    if v.len() != f.dim() {
        return Err(Error::invalid(format!(
            "{what} has {} coordinates, expected {}",
            v.len(),
            f.dim()
        )));
    }
    Ok(())
}

/// `|φ|*` on a symmetric grid with room for its support.
fn star_of(f: &GridFunction) -> Result<GridFunction> {
    rearranged_grid(f, padded_len(&[f])?)
}

/// `∫ Ω^{-d} m_β(ξ/Ω) (|φ|*)^ dξ = h^d Σ_i φ*_i m̂_β(Ω t_i)`.
fn star_side(star: &GridFunction, beta: f64, omega: f64) -> Result<f64> {
    let kernel = KernelSpec::centered(star.dim(), beta, omega)?;
    Ok(bochner_riesz_spatial(star, &kernel, &vec![0.0; star.dim()])?.re)
}

/// `|∫Ω^{-d}m_α(ξ/Ω)φ̂| ≤ ∫Ω^{-d}m_α(ξ/Ω)(|φ|*)^` for supports with
/// `Ω S^{1/d} ≤ ϑ(d, α)`.
pub fn verify_prop_ds(f: &GridFunction, alpha: f64, omega: f64) -> Result<InequalityReport> {
    let d = f.dim();
    let theta = theta_threshold(d, alpha)?;
    let s = f.support_measure();
    let measured = omega * s.powf(1.0 / d as f64);
    if measured > theta {
        return Err(Error::Precondition {
            message: format!("Ω S^(1/d) must not exceed ϑ(d, α) = {theta}"),
            measured,
        });
    }
    let kernel = KernelSpec::centered(d, alpha, omega)?;
    let lhs = bochner_riesz_spatial(f, &kernel, &vec![0.0; d])?.norm();
    let rhs = star_side(&star_of(f)?, alpha, omega)?;
    let eps = epsilon("prop-ds", f.h());
    Ok(InequalityReport::check("prop-ds", PROP_STATEMENT, lhs, rhs, 1.0, eps)
        .with_meta("alpha", alpha)
        .with_meta("omega", omega)
        .with_meta("support_measure", s)
        .with_meta("omega_s", measured)
        .with_meta("theta", theta)
        .with_meta("h", f.h())
        .with_meta("epsilon", eps))
}

/// `ψ(s)`: `(1+s)^{(d-2α-1)/2}` below the critical order `α = (d-1)/2`,
/// `ln(1+s)` at it, and `1` above it.
pub fn psi_factor(s: f64, d: usize, alpha: f64) -> f64 {
    let critical = (d as f64 - 1.0) / 2.0;
    if (alpha - critical).abs() <= 1e-12 {
        s.ln_1p()
    } else if alpha < critical {
        (1.0 + s).powf((d as f64 - 2.0 * alpha - 1.0) / 2.0)
    } else {
        1.0
    }
}

fn check_beta(d: usize, beta: f64, floor: f64) -> Result<()> {
    if !(beta >= floor) {
        return Err(Error::invalid(format!(
            "beta must be at least {floor} in dimension {d}, got {beta}"
        )));
    }
    Ok(())
}

/// The translated, modulated Bochner–Riesz mean at `x` against
/// `ψ(Ω^d S)` times the centered `β` mean of `|φ|*`; reports `lhs / rhs`.
pub fn verify_ds2(
    f: &GridFunction,
    alpha: f64,
    beta: f64,
    omega: f64,
    a: &[f64],
    x: &[f64],
) -> Result<InequalityReport> {
    let d = f.dim();
    check_beta(d, beta, d as f64 / 2.0 - 1.0)?;
    check_dims(f, a, "a")?;
    check_dims(f, x, "x")?;
    let kernel = KernelSpec::new(d, alpha, omega, a.to_vec())?;
    let lhs = bochner_riesz_spatial(f, &kernel, x)?.norm();
    let s = f.support_measure();
    let psi = psi_factor(omega.powi(d as i32) * s, d, alpha);
    let base = star_side(&star_of(f)?, beta, omega)?;
    Ok(InequalityReport::empirical("ds2", DS2_STATEMENT, lhs, psi * base)
        .with_meta("alpha", alpha)
        .with_meta("beta", beta)
        .with_meta("omega", omega)
        .with_meta("a", a.to_vec())
        .with_meta("x", x.to_vec())
        .with_meta("support_measure", s)
        .with_meta("psi", psi)
        .with_meta("h", f.h()))
}

/// `∫|φ̂||ψ(ξ/Ω)|` against the weight-norm and support factors times
/// `∫ m_β(ξ/Ω)(|φ|*)^`; reports the empirical constant.
///
/// The metadata carries the same ratio for the weight `m_α` itself,
/// `Ω^{-d}∫|φ̂| m_α(ξ/Ω) / ((1 + Ω^d S)^{d/2} Ω^{-d}∫ m_β(ξ/Ω)(|φ|*)^)`,
/// when `Ω` fits in the alias-free window.
pub fn verify_cor_ds(
    f: &GridFunction,
    weight: &GridFunction,
    alpha: f64,
    beta: f64,
    omega: f64,
) -> Result<InequalityReport> {
    let d = f.dim();
    check_beta(d, beta, d as f64 / 2.0)?;
    if weight.dim() != d {
        return Err(Error::invalid("weight lives in a different dimension"));
    }
    let powers = KernelSpec::centered(d, alpha, omega)?;
    let m = padded_len(&[f])?;
    let spec = dft(&f.pad_to(&vec![m; d])?)?;
    let edge = window(&spec);
    let reach = support_reach(weight) * omega;
    if reach > edge {
        return Err(Error::range(format!(
            "the dilated weight reaches |ξ| = {reach} beyond the alias-free window {edge}"
        )));
    }
    let values = spec.values();
    let mut scaled = vec![0.0; d];
    let lhs = window_sum(&spec, |k, xi| {
        for (s, x) in scaled.iter_mut().zip(xi) {
            *s = x / omega;
        }
        values[k].norm() * weight.eval(&scaled).norm()
    });
    let s = f.support_measure();
    let e = 2.0 / d as f64;
    let norms = (weight.norm(1.0).powf(e) + weight.norm(2.0).powf(e)).powf(d as f64 / 2.0);
    let growth = (1.0 + omega.powi(d as i32) * s).powf(d as f64 / 2.0);
    let omega_d = omega.powi(d as i32);
    let base = star_side(&star_of(f)?, beta, omega)?;
    let mut report = InequalityReport::empirical("cor-ds", COR_STATEMENT, lhs, norms * growth * omega_d * base)
        .with_meta("alpha", alpha)
        .with_meta("beta", beta)
        .with_meta("omega", omega)
        .with_meta("support_measure", s)
        .with_meta("weight_norm_factor", norms)
        .with_meta("h", f.h());
    if omega <= edge {
        let first = window_sum(&spec, |k, xi| values[k].norm() * powers.multiplier(xi)) / omega_d;
        report.set_meta("power_weight_ratio", first / (growth * base));
    }
    Ok(report)
}

fn sinc_kernel(t: f64) -> f64 {
    if t == 0.0 {
        2.0
    } else {
        (2.0 * PI * t).sin() / (PI * t)
    }
}

/// `∫_0^s sin(2πt)/(πt) dt`, adaptively on panels of half a period.
pub fn gibbs_integral(s: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    let mut acc = 0.0;
    let mut a = 0.0;
    while a < s {
        let b = (a + 0.5).min(s);
        acc += integrate(sinc_kernel, a, b, 1e-16, 1e-14).0;
        a = b;
    }
    acc
}

const GIBBS_STEP: f64 = 1.0 / 200.0;
const GIBBS_END: f64 = 1000.0;

/// The three Gibbs bounds on `G(s) = ∫_0^s sin(2πt)/(πt) dt`: `G(s) ≥ s` on
/// `(0, 1/2]`, `G(s) ≥ 2/5` on `[1/2, 1000]`, and `|G(1000) - 1/2| ≤ 10^{-3}`.
///
/// `G` is accumulated panel by panel on the grid `s_k = k/200`.
pub fn gibbs_check() -> Vec<InequalityReport> {
    let steps = (GIBBS_END / GIBBS_STEP).round() as usize;
    let mut g = Vec::with_capacity(steps + 1);
    g.push(0.0);
    let mut acc = 0.0;
    for k in 0..steps {
        let a = k as f64 * GIBBS_STEP;
        acc += integrate(sinc_kernel, a, a + GIBBS_STEP, 1e-16, 1e-14).0;
        g.push(acc);
    }
    let half = (0.5 / GIBBS_STEP).round() as usize;

    let mut worst = (1, f64::INFINITY);
    for (k, &v) in g.iter().enumerate().take(half + 1).skip(1) {
        let s = k as f64 * GIBBS_STEP;
        if v - s < worst.1 {
            worst = (k, v - s);
        }
    }
    let s_w = worst.0 as f64 * GIBBS_STEP;
    let small = InequalityReport::check(
        "gibbs-small",
        "s <= int_0^s sin(2 pi t)/(pi t) dt on (0, 1/2]",
        s_w,
        g[worst.0],
        1.0,
        0.0,
    )
    .with_meta("points", half)
    .with_meta("worst_s", s_w)
    .with_meta("min_margin", worst.1);

    let (k_min, g_min) = g[half..].iter().enumerate().fold(
        (0, f64::INFINITY),
        |best, (i, &v)| if v < best.1 { (i, v) } else { best },
    );
    let large = InequalityReport::check(
        "gibbs-large",
        "2/5 <= int_0^s sin(2 pi t)/(pi t) dt on [1/2, 1000]",
        0.4,
        g_min,
        1.0,
        0.0,
    )
    .with_meta("argmin_s", (half + k_min) as f64 * GIBBS_STEP)
    .with_meta("points", steps + 1 - half);

    let end = g[steps];
    let limit = InequalityReport::check(
        "gibbs-limit",
        "|int_0^1000 sin(2 pi t)/(pi t) dt - 1/2| <= 1e-3",
        (end - 0.5).abs(),
        1e-3,
        1.0,
        0.0,
    )
    .with_meta("value", end);
    vec![small, large, limit]
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn interval(n: usize, h: f64, lo: f64, hi: f64) -> GridFunction {
        GridFunction::symmetric_from_fn(&[n], h, |x| {
            Complex64::new(if x[0] > lo && x[0] < hi { 1.0 } else { 0.0 }, 0.0)
        })
        .unwrap()
    }

    #[test]
    fn psi_branches() {
        assert_eq!(psi_factor(3.0, 1, 0.5), 1.0);
        assert_eq!(psi_factor(0.0, 3, 0.0), 1.0);
        assert_eq!(psi_factor(0.0, 1, 0.0), 0.0);
        assert!((psi_factor(2.0, 1, 0.0) - 3f64.ln()).abs() < 1e-15);
        assert!((psi_factor(3.0, 3, 0.0) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn prop_ds_for_a_short_interval_against_sine_integrals() {
        // f = 1_{[0, 1/2]}, α = 0, Ω = 0.4
        let h = 1.0 / 64.0;
        let f = interval(128, h, 0.0, 0.5);
        let r = verify_prop_ds(&f, 0.0, 0.4).unwrap();
        assert!(r.pass);
        // rhs = ∫_{-1/4}^{1/4} sin(2πΩt)/(πΩt) dt
        let oracle = 2.0 * integrate(|t| sinc_kernel(0.4 * t), 0.0, 0.25, 1e-15, 1e-13).0;
        assert!((r.rhs - oracle).abs() < 1e-3, "{} vs {oracle}", r.rhs);
    }

    #[test]
    fn prop_ds_precondition_names_theta() {
        let f = interval(64, 1.0 / 8.0, -2.0, 2.0);
        match verify_prop_ds(&f, 0.0, 1.0) {
            Err(Error::Precondition { message, measured }) => {
                assert!(message.contains('ϑ'));
                assert!((measured - 4.0).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ds2_symmetric_input_is_bounded_by_its_own_mean() {
        let f =
            GridFunction::symmetric_from_fn(&[64], 1.0 / 8.0, |x| Complex64::new((1.0 - x[0] * x[0]).max(0.0), 0.0))
                .unwrap();
        let r = verify_ds2(&f, 0.5, 0.5, 1.0, &[0.0], &[0.0]).unwrap();
        assert!(r.ratio.unwrap() <= 1.0 + 1e-12);
    }

    #[test]
    fn ds2_dilation_leaves_the_ratio_unchanged() {
        let f = GridFunction::symmetric_from_fn(&[64], 1.0 / 16.0, |x| {
            Complex64::new((1.0 - (x[0] - 0.3).powi(2)).max(0.0), 0.2 * x[0])
        })
        .unwrap();
        let omega = 2.0;
        let base = verify_ds2(&f, 0.0, 0.5, omega, &[0.25], &[0.1]).unwrap();
        let wide = f.dilate(omega).unwrap();
        let unit = verify_ds2(&wide, 0.0, 0.5, 1.0, &[0.25 / omega], &[0.1 * omega]).unwrap();
        assert!((unit.ratio.unwrap() / base.ratio.unwrap() - 1.0).abs() < 1e-9);
        assert!((unit.lhs / base.lhs - omega).abs() < 1e-9);
    }

    #[test]
    fn ds2_domain() {
        let f = interval(32, 0.25, 0.0, 1.0);
        assert!(verify_ds2(&f, 0.0, -0.6, 1.0, &[0.0], &[0.0]).is_err());
        assert!(verify_ds2(&f, -0.7, 0.0, 1.0, &[0.0], &[0.0]).is_err());
        assert!(verify_ds2(&f, 0.0, 0.0, 1.0, &[0.0, 0.0], &[0.0]).is_err());
    }

    #[test]
    fn cor_ds_ball_weight_matches_power_weight_with_alpha_zero() {
        let f = interval(128, 1.0 / 16.0, -0.5, 1.0);
        let ball = GridFunction::symmetric_from_fn(&[64], 1.0 / 16.0, |xi| {
            Complex64::new(if xi[0].abs() < 1.0 { 1.0 } else { 0.0 }, 0.0)
        })
        .unwrap();
        let r = verify_cor_ds(&f, &ball, 0.0, 1.0, 1.45).unwrap();
        let c = r.ratio.unwrap();
        assert!(c.is_finite() && c > 0.0);
        let first = r.metadata["power_weight_ratio"].as_f64().unwrap();
        // (‖χ‖₁² + ‖χ‖₂²)^{1/2} = √6
        assert!((first / (c * 6f64.sqrt()) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn gibbs_values() {
        assert!((gibbs_integral(0.25) - integrate(sinc_kernel, 0.0, 0.25, 1e-16, 1e-14).0).abs() < 1e-15);
        assert!(gibbs_integral(0.25) >= 0.25);
        let half = gibbs_integral(0.5);
        // Si(π)/π
        assert!((half - 1.851_937_051_982_466_2 / PI).abs() < 1e-13);
        assert!((gibbs_integral(1000.0) - 0.5).abs() < 1e-3);
    }

    #[test]
    fn gibbs_reports_pass() {
        let reports = gibbs_check();
        assert_eq!(reports.len(), 3);
        for r in &reports {
            assert!(r.pass, "{r:?}");
        }
    }
}
