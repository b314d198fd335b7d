//! Spectral mass on sets of finite measure against the low-frequency mass
//! of the rearrangement, its layer-cake extension to weights, the
//! reversed-inequality exploration and the ⋆-rearrangement variants.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::rearrange::{set_rearrange, star_rearrange_1d};
use crate::specfun::{kappa_bound, KernelSpec};
use crate::transform::{bochner_riesz_spatial, dft, Spectrum};
use crate::verify::donoho_stark::psi_factor;
use crate::verify::trials::{random_sigma, TrialFamily};
use crate::verify::{
    epsilon, norm, padded_len, rearranged_grid, spectral_pair, support_reach, window, window_sum, InequalityReport,
};

const MONTGOMERY_STATEMENT: &str = "int_Sigma |f^|^2 <= kappa_d int_{B(0,tau)} |(|f|*)^|^2, |B(0,tau)| = |Sigma|";
const WEIGHT_STATEMENT: &str = "int w |f^|^2 <= kappa_d int w* |(|f|*)^|^2";
const CONJECTURE_STATEMENT: &str = "int_{R^d - B(0,tau)} |(|f|*)^|^2 <= K int_{R^d - Sigma} |f^|^2 (exploration)";
const STAR_DS_STATEMENT: &str =
    "|int m_alpha((xi-a)/W) f^ e^(2pi i x xi)| <= C psi(W^d S) int_R m_beta(xi/W) (|f|^star)^";
const STAR_MONTGOMERY_STATEMENT: &str = "int_Sigma |f^|^2 <= kappa_d int_{-|Sigma|/2}^{|Sigma|/2} |(|f|^star)^|^2";

/// Relative width of the sphere `|ξ| = τ`.
const SPHERE: f64 = 1e-12;

/// Weight of a frequency at radius `r` in the ball `B(0, τ)`: frequencies on
/// the sphere count one half, matching half-open cells of `Σ` in one
/// dimension, where `[-τ, τ)` holds one of the two endpoints.
fn ball_weight(r: f64, tau: f64) -> f64 {
    if r < tau * (1.0 - SPHERE) {
        1.0
    } else if r <= tau * (1.0 + SPHERE) {
        0.5
    } else {
        0.0
    }
}

/// `Δξ^d Σ_k |F_k|² w_τ(ξ_k)` over the alias-free window for many `τ`, with
/// `w_τ` from [`ball_weight`].
///
/// Terms are accumulated in order of increasing `|ξ|`, so every query sums
/// the same prefix in the same order.
pub(crate) struct BallEnergy {
    radii: Vec<f64>,
    cumulative: Vec<f64>,
    measure: f64,
}

impl BallEnergy {
    pub(crate) fn new(star: &Spectrum) -> Self {
        let values = star.values();
        let mut terms = Vec::new();
        window_sum(star, |k, xi| {
            terms.push((norm(xi), values[k].norm_sqr()));
            0.0
        });
        terms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut cumulative = Vec::with_capacity(terms.len() + 1);
        let mut acc = 0.0;
        cumulative.push(acc);
        for &(_, e) in &terms {
            acc += e;
            cumulative.push(acc);
        }
        BallEnergy {
            radii: terms.into_iter().map(|t| t.0).collect(),
            cumulative,
            measure: star.cell_measure(),
        }
    }

    pub(crate) fn within(&self, tau: f64) -> f64 {
        let inner = self.cumulative[self.radii.partition_point(|&r| r < tau * (1.0 - SPHERE))];
        let outer = self.cumulative[self.radii.partition_point(|&r| r <= tau * (1.0 + SPHERE))];
        (inner + 0.5 * (outer - inner)) * self.measure
    }

    fn total(&self) -> f64 {
        self.cumulative[self.radii.len()] * self.measure
    }
}

/// `Δξ^d Σ_k w(ξ_k)|F_k|²` with `w` read from a frequency-space grid.
fn weighted_set_energy(spec: &Spectrum, weight: &GridFunction) -> f64 {
    let values = spec.values();
    window_sum(spec, |k, xi| weight.eval(xi).re * values[k].norm_sqr())
}

fn check_indicator(sigma: &GridFunction) -> Result<()> {
    if sigma
        .values()
        .iter()
        .any(|v| v.im != 0.0 || (v.re != 0.0 && v.re != 1.0))
    {
        return Err(Error::invalid("Σ must be given by a {0, 1}-valued indicator"));
    }
    if !(sigma.support_measure() > 0.0) {
        return Err(Error::invalid("Σ must have positive measure"));
    }
    Ok(())
}

fn check_inside(spec: &Spectrum, set: &GridFunction, tau: f64) -> Result<()> {
    let edge = window(spec);
    let reach = support_reach(set).max(tau);
    if reach > edge {
        return Err(Error::range(format!(
            "the frequency set or its rearrangement reaches {reach}, beyond the alias-free window {edge}"
        )));
    }
    Ok(())
}

/// `∫_Σ|φ̂|² ≤ κ_d ∫_{B(0,τ)}|(|φ|*)^|²` with `|B(0,τ)| = |Σ|`.
///
/// `sigma` is an indicator on a frequency-space grid, read at each frequency
/// of the transform.
pub fn verify_montgomery(f: &GridFunction, sigma: &GridFunction) -> Result<InequalityReport> {
    check_indicator(sigma)?;
    if sigma.dim() != f.dim() {
        return Err(Error::invalid("Σ lives in a different dimension"));
    }
    let d = f.dim();
    let measure = sigma.support_measure();
    let tau = set_rearrange(measure, d)?;
    let pair = spectral_pair(f)?;
    check_inside(&pair.spec, sigma, tau)?;
    let lhs = weighted_set_energy(&pair.spec, sigma);
    let rhs = BallEnergy::new(&pair.star).within(tau);
    let kappa = kappa_bound(d)?;
    let eps = epsilon("montgomery", f.h());
    Ok(
        InequalityReport::check("montgomery", MONTGOMERY_STATEMENT, lhs, rhs, kappa, eps)
            .with_meta("sigma_measure", measure)
            .with_meta("tau", tau)
            .with_meta("h", f.h())
            .with_meta("epsilon", eps),
    )
}

/// `∫ψ|φ̂|² ≤ κ_d ∫ψ*|(|φ|*)^|²` for a nonnegative weight on a frequency
/// grid, through the layer-cake sum over its distinct values
/// `w_1 > … > w_L > w_{L+1} = 0`:
/// `∫ψ*|(|φ|*)^|² = Σ_j (w_j - w_{j+1}) ∫_{B(0,τ_j)}|(|φ|*)^|²`,
/// `|B(0,τ_j)| = |{ψ ≥ w_j}|`.
pub fn verify_cor_weight(f: &GridFunction, weight: &GridFunction) -> Result<InequalityReport> {
    if weight
        .values()
        .iter()
        .any(|v| v.im != 0.0 || !(v.re >= 0.0) || !v.re.is_finite())
    {
        return Err(Error::invalid("the weight must be real, finite and nonnegative"));
    }
    if weight.dim() != f.dim() {
        return Err(Error::invalid("the weight lives in a different dimension"));
    }
    let d = f.dim();
    let mut levels: Vec<f64> = weight.values().iter().map(|v| v.re).filter(|&v| v > 0.0).collect();
    if levels.is_empty() {
        return Err(Error::invalid("the weight vanishes identically"));
    }
    levels.sort_by(|a, b| b.total_cmp(a));
    let cell = weight.cell_measure();
    let mut ladder: Vec<(f64, f64)> = Vec::new();
    for (rank, &w) in levels.iter().enumerate() {
        let count = (rank + 1) as f64;
        match ladder.last_mut() {
            Some(last) if last.0 == w => last.1 = count,
            _ => ladder.push((w, count)),
        }
    }
    let pair = spectral_pair(f)?;
    let outer = set_rearrange(ladder.last().unwrap().1 * cell, d)?;
    check_inside(&pair.spec, weight, outer)?;
    let lhs = weighted_set_energy(&pair.spec, weight);
    let balls = BallEnergy::new(&pair.star);
    let mut rhs = 0.0;
    for (j, &(w, count)) in ladder.iter().enumerate() {
        let next = ladder.get(j + 1).map_or(0.0, |l| l.0);
        rhs += (w - next) * balls.within(set_rearrange(count * cell, d)?);
    }
    let kappa = kappa_bound(d)?;
    let eps = epsilon("montgomery", f.h());
    Ok(
        InequalityReport::check("cor-weight", WEIGHT_STATEMENT, lhs, rhs, kappa, eps)
            .with_meta("levels", ladder.len())
            .with_meta("h", f.h())
            .with_meta("epsilon", eps),
    )
}

/// How each trial of [`explore_conjecture1`] picks its frequency set.
#[derive(Clone, Debug, PartialEq)]
pub enum SigmaSpec {
    /// The same indicator for every trial.
    Fixed(GridFunction),
    /// A fresh [`random_sigma`] per trial, drawn after the function.
    Random,
}

/// Outcome of a reversed-inequality exploration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Conjecture1Summary {
    pub reports: Vec<InequalityReport>,
    pub max_ratio: f64,
    pub argmax_trial: Option<usize>,
    pub degenerate: usize,
    pub seed: u64,
}

struct Outside {
    star_out: f64,
    out: f64,
    in_set: f64,
    star_in: f64,
    total: f64,
    gap: f64,
}

fn outside_energies(f: &GridFunction, sigma: &GridFunction) -> Result<Outside> {
    check_indicator(sigma)?;
    let tau = set_rearrange(sigma.support_measure(), f.dim())?;
    let pair = spectral_pair(f)?;
    check_inside(&pair.spec, sigma, tau)?;
    let (fv, sv) = (pair.spec.values(), pair.star.values());
    let out = window_sum(&pair.spec, |k, xi| {
        if sigma.eval(xi).re == 0.0 {
            fv[k].norm_sqr()
        } else {
            0.0
        }
    });
    let star_out = window_sum(&pair.star, |k, xi| {
        (1.0 - ball_weight(norm(xi), tau)) * sv[k].norm_sqr()
    });
    let in_set = weighted_set_energy(&pair.spec, sigma);
    let balls = BallEnergy::new(&pair.star);
    let star_in = balls.within(tau);
    let total = window_sum(&pair.spec, |k, _| fv[k].norm_sqr());
    let gap = ((total - in_set) - out)
        .abs()
        .max(((balls.total() - star_in) - star_out).abs())
        / total;
    Ok(Outside {
        star_out,
        out,
        in_set,
        star_in,
        total,
        gap,
    })
}

/// For each trial, `∫_{R^d∖B(0,τ)}|(|φ|*)^|² / ∫_{R^d∖Σ}|φ̂|²` over the
/// alias-free window, with its running maximum `K`.
///
/// Both complements are summed directly; the metadata records their
/// relative distance from `total - set` and the equivalent form
/// `∫_Σ|φ̂|² ≤ (1 - 1/K)‖φ‖² + K^{-1}∫_{B(0,τ)}|(|φ|*)^|²`.
pub fn explore_conjecture1(family: &TrialFamily, sigma: &SigmaSpec) -> Result<Conjecture1Summary> {
    let rows = family.map(|trial, rng| {
        let f = family.draw(rng);
        let set = match sigma {
            SigmaSpec::Fixed(s) => s.clone(),
            SigmaSpec::Random => random_sigma(rng, family.dim, family.window()),
        };
        outside_energies(&f, &set).map(|o| (trial, o))
    });
    let mut reports = Vec::with_capacity(rows.len());
    let mut max_ratio = 0.0;
    let mut argmax = None;
    let mut degenerate = 0;
    for row in rows {
        let (trial, o) = row?;
        if o.out > 0.0 {
            let ratio = o.star_out / o.out;
            if argmax.is_none() || ratio > max_ratio {
                max_ratio = ratio;
                argmax = Some(trial);
            }
        } else {
            degenerate += 1;
        }
        let k = max_ratio;
        let reformulated = if k > 0.0 {
            (1.0 - 1.0 / k) * o.total + o.star_in / k
        } else {
            f64::NAN
        };
        reports.push(
            InequalityReport::exploration("conjecture1", CONJECTURE_STATEMENT, o.star_out, o.out, k)
                .with_meta("trial", trial)
                .with_meta("seed", family.seed)
                .with_meta("generator", family.generator.name())
                .with_meta("complement_gap", o.gap)
                .with_meta("reformulated_lhs", o.in_set)
                .with_meta("reformulated_rhs", reformulated),
        );
    }
    Ok(Conjecture1Summary {
        reports,
        max_ratio,
        argmax_trial: argmax,
        degenerate,
        seed: family.seed,
    })
}

/// Parameters of [`verify_star_theorems`].
#[derive(Clone, Debug, PartialEq)]
pub struct StarParams {
    pub alpha: f64,
    pub beta: f64,
    pub omega: f64,
    pub a: Vec<f64>,
    pub x: Vec<f64>,
    /// Frequency-space indicator of `Σ`.
    pub sigma: GridFunction,
}

/// The two bounds with the 1-D ⋆-rearrangement on the right:
///
/// * `|∫ m_α((ξ-a)/Ω) φ̂ e^{2πi⟨x,ξ⟩}| ≤ C ψ(Ω^d S) ∫_R m_β(ξ/Ω)(|φ|^⋆)^`,
///   reported as an empirical constant;
/// * `∫_Σ|φ̂|² ≤ κ_d ∫_{-|Σ|/2}^{|Σ|/2} |(|φ|^⋆)^|²`, checked.
///
/// In one dimension the second report equals [`verify_montgomery`]'s.
pub fn verify_star_theorems(f: &GridFunction, params: &StarParams) -> Result<(InequalityReport, InequalityReport)> {
    let d = f.dim();
    let StarParams {
        alpha,
        beta,
        omega,
        ref a,
        ref x,
        ref sigma,
    } = *params;
    if !(beta >= d as f64 / 2.0 - 1.0) {
        return Err(Error::invalid(format!("beta must be at least d/2 - 1, got {beta}")));
    }
    if a.len() != d || x.len() != d || sigma.dim() != d {
        return Err(Error::invalid("parameters have the wrong dimension"));
    }
    let star = star_rearrange_1d(f);
    let omega_d = omega.powi(d as i32);
    let lhs = omega_d * bochner_riesz_spatial(f, &KernelSpec::new(d, alpha, omega, a.clone())?, x)?.norm();
    let s = f.support_measure();
    let psi = psi_factor(omega_d * s, d, alpha);
    let line = omega * bochner_riesz_spatial(&star, &KernelSpec::centered(1, beta, omega)?, &[0.0])?.re;
    let first = InequalityReport::empirical("star-ds2", STAR_DS_STATEMENT, lhs, psi * line)
        .with_meta("alpha", alpha)
        .with_meta("beta", beta)
        .with_meta("omega", omega)
        .with_meta("psi", psi)
        .with_meta("support_measure", s)
        .with_meta("h", f.h());

    check_indicator(sigma)?;
    let measure = sigma.support_measure();
    let half = set_rearrange(measure, 1)?;
    let m = padded_len(&[f])?;
    let spec = dft(&f.pad_to(&vec![m; d])?)?;
    check_inside(&spec, sigma, 0.0)?;
    let line_spec = dft(&rearranged_grid(&star, padded_len(&[&star])?)?)?;
    if half > window(&line_spec) {
        return Err(Error::range(
            "the interval [-|Σ|/2, |Σ|/2] leaves the alias-free window",
        ));
    }
    let lhs = weighted_set_energy(&spec, sigma);
    let rhs = BallEnergy::new(&line_spec).within(half);
    let kappa = kappa_bound(d)?;
    let eps = epsilon("montgomery", f.h());
    let second = InequalityReport::check("star-montgomery", STAR_MONTGOMERY_STATEMENT, lhs, rhs, kappa, eps)
        .with_meta("sigma_measure", measure)
        .with_meta("half_width", half)
        .with_meta("h", f.h())
        .with_meta("epsilon", eps);
    Ok((first, second))
}
