//! The verification suites behind `verify run`.

use std::f64::consts::PI;

use fourier_rearrange::rearrange::{check_decay_bound, distribution_function, radial_profile, symmetric_rearrange};
use fourier_rearrange::specfun::{
    bessel_j, bessel_zero, fourier_ball, kappa_bound, theta_threshold, upsilon_d, upsilon_integral,
    upsilon_integral_bessel, wave_areas,
};
use fourier_rearrange::transform::{dispersive_check, schrodinger_evolve};
use fourier_rearrange::verify::{
    epsilon, explore_conjecture1, gibbs_check, random_sigma, verify_cor_ds, verify_cor_weight, verify_ds2,
    verify_dual_sobolev, verify_hardy_littlewood, verify_lieb, verify_montgomery, verify_prop_ds, verify_riesz,
    verify_schrodinger_bounds, verify_schrodinger_holder, verify_schrodinger_l1, verify_star_theorems, verify_weight,
    Generator, SigmaSpec, StarParams, TrialFamily,
};
use fourier_rearrange::{Error, GridFunction, InequalityReport, ReportKind, Result};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{RunConfig, Suite};

/// Reports of one suite, or the error that stopped it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub pass: bool,
    pub error: Option<String>,
    pub reports: Vec<InequalityReport>,
}

impl SuiteOutcome {
    fn new(suite: Suite, result: Result<Vec<InequalityReport>>) -> Self {
        let (reports, error) = match result {
            Ok(r) => (r, None),
            Err(e) => {
                let message = e.to_string();
                // a failing check that carries the error, so the report shows it
                let report = InequalityReport::check(format!("{suite}-error"), message.clone(), 1.0, 0.0, 1.0, 0.0)
                    .with_meta("error", message.clone());
                (vec![report], Some(message))
            }
        };
        let pass = error.is_none() && reports.iter().all(|r| r.pass || !r.gates_exit());
        SuiteOutcome {
            suite,
            pass,
            error,
            reports,
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> SuiteOutcome {
    let result = match suite {
        Suite::Rearrange => per_dim(cfg, |d| rearrange(cfg, d)),
        Suite::Specfun => specfun(cfg),
        Suite::Inequalities => per_dim(cfg, |d| inequalities(cfg, d)),
        Suite::Montgomery => per_dim(cfg, |d| montgomery(cfg, d)),
        Suite::Schrodinger => per_dim(cfg, schrodinger),
        Suite::Conjecture1 => per_dim(cfg, |d| conjecture1(cfg, d)),
    };
    let result = result.map(|reports| match cfg.tol {
        Some(tol) => reports
            .into_iter()
            .map(|r| {
                if r.kind == ReportKind::Check {
                    r.with_tolerance(tol)
                } else {
                    r
                }
            })
            .collect(),
        None => reports,
    });
    SuiteOutcome::new(suite, result)
}

fn per_dim<F>(cfg: &RunConfig, mut body: F) -> Result<Vec<InequalityReport>>
where
    F: FnMut(usize) -> Result<Vec<InequalityReport>>,
{
    let mut out = Vec::new();
    for &d in &cfg.dims {
        for r in body(d)? {
            out.push(r.with_meta("dim", d));
        }
    }
    Ok(out)
}

/// One family per generator, splitting `trials` as evenly as possible.
pub fn families(cfg: &RunConfig, dim: usize, trials: usize) -> Result<Vec<TrialFamily>> {
    let k = Generator::ALL.len();
    Generator::ALL
        .iter()
        .enumerate()
        .map(|(i, &g)| {
            let count = (trials + k - 1 - i) / k;
            match cfg.n {
                Some(n) => TrialFamily::new(g, dim, n, 8.0 / n as f64, cfg.seed, count),
                None => TrialFamily::standard(g, dim, cfg.seed, count),
            }
        })
        .filter(|f| f.as_ref().map_or(true, |f| f.count > 0))
        .collect()
}

/// Runs `body` on every trial of every family, in a fixed order.
fn over_trials<F>(fams: &[TrialFamily], body: F) -> Result<Vec<Vec<InequalityReport>>>
where
    F: Fn(&TrialFamily, usize, &mut ChaCha8Rng) -> Result<Vec<InequalityReport>> + Sync,
{
    let mut out = Vec::new();
    for fam in fams {
        for (trial, rows) in fam.map(|trial, rng| body(fam, trial, rng)).into_iter().enumerate() {
            let rows = rows?
                .into_iter()
                .map(|r| r.with_meta("generator", fam.generator.name()).with_meta("trial", trial))
                .collect();
            out.push(rows);
        }
    }
    Ok(out)
}

/// One report per name: the first failing trial with the largest ratio, or
/// the largest ratio when all pass, annotated with trial counts.
pub fn worst_by_name(rows: Vec<Vec<InequalityReport>>) -> Vec<InequalityReport> {
    let mut names: Vec<String> = Vec::new();
    let mut groups: Vec<Vec<InequalityReport>> = Vec::new();
    for r in rows.into_iter().flatten() {
        match names.iter().position(|n| *n == r.name) {
            Some(i) => groups[i].push(r),
            None => {
                names.push(r.name.clone());
                groups.push(vec![r]);
            }
        }
    }
    groups.into_iter().map(worst).collect()
}

fn worst(group: Vec<InequalityReport>) -> InequalityReport {
    let trials = group.len();
    let failures = group.iter().filter(|r| !r.pass).count();
    let degenerate = group.iter().filter(|r| r.degenerate).count();
    let key = |r: &InequalityReport| (!r.pass, r.ratio.unwrap_or(f64::NEG_INFINITY));
    let mut best = 0;
    for (i, r) in group.iter().enumerate().skip(1) {
        let (fail, ratio) = key(r);
        let (bfail, bratio) = key(&group[best]);
        if (fail && !bfail) || (fail == bfail && ratio > bratio) {
            best = i;
        }
    }
    group
        .into_iter()
        .nth(best)
        .expect("groups are nonempty")
        .with_meta("trials", trials)
        .with_meta("failures", failures)
        .with_meta("degenerate_trials", degenerate)
}

fn tiny_check(name: &str, statement: &str, deviation: f64, scale: f64, tol: f64) -> InequalityReport {
    InequalityReport::check(name, statement, deviation, scale, tol, 0.0)
}

fn rearrange(cfg: &RunConfig, d: usize) -> Result<Vec<InequalityReport>> {
    let fams = families(cfg, d, cfg.trials_for(Suite::Rearrange))?;
    let rows = over_trials(&fams, |fam, _, rng| {
        let f = fam.draw(rng);
        let g = fam.draw(rng);
        let star = symmetric_rearrange(&f);
        let mut out = Vec::new();
        for (p, label) in [(1.0, "l1"), (2.0, "l2"), (f64::INFINITY, "linf")] {
            let (a, b) = (star.norm(p), f.norm(p));
            out.push(tiny_check(
                &format!("rearrange-norm-{label}"),
                "||f*||_p = ||f||_p",
                (a - b).abs(),
                b,
                1e-12,
            ));
        }
        out.push(ladder_check(&f, &star)?);
        for p in [1.0, 2.0] {
            out.push(check_decay_bound(&f, p)?.with_meta("p", p));
        }
        out.push(verify_hardy_littlewood(&f, &g)?);
        if d == 1 {
            out.push(verify_riesz(&f, &g, &fam.draw(rng))?);
        }
        Ok(out)
    })?;
    Ok(worst_by_name(rows))
}

/// Distribution functions of `f`, its grid rearrangement and its radial
/// profile on a 32-level ladder.
fn ladder_check(f: &GridFunction, star: &GridFunction) -> Result<InequalityReport> {
    let top = f.norm(f64::INFINITY);
    if top == 0.0 {
        return Ok(tiny_check("rearrange-distribution", "mu_f* = mu_f", 0.0, 0.0, 0.0));
    }
    let lambdas: Vec<f64> = (0..32).map(|k| top * (k as f64 + 0.5) / 32.0).collect();
    let a = distribution_function(f, &lambdas)?;
    let b = distribution_function(star, &lambdas)?;
    let c = radial_profile(f).distribution(&lambdas)?;
    let exact = a
        .measures
        .iter()
        .zip(&b.measures)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let profile = a
        .measures
        .iter()
        .zip(&c.measures)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let scale = f.support_measure();
    Ok(
        tiny_check("rearrange-distribution", "mu_f* = mu_f on 32 levels", exact, scale, 0.0)
            .with_meta("profile_deviation", profile / scale),
    )
}

const J01: f64 = 2.404_825_557_695_773;

fn specfun(cfg: &RunConfig) -> Result<Vec<InequalityReport>> {
    let mut out = Vec::new();
    out.push(tiny_check(
        "bessel-zero-j01",
        "j_{0,1} = 2.404825557695773",
        (bessel_zero(0.0, 1)? - J01).abs(),
        J01,
        1e-9,
    ));

    type Closed = fn(f64) -> f64;
    let forms: [(f64, Closed); 3] = [
        (-0.5, |x| (2.0 / (PI * x)).sqrt() * x.cos()),
        (0.5, |x| (2.0 / (PI * x)).sqrt() * x.sin()),
        (1.5, |x| (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos())),
    ];
    for (order, closed) in forms {
        let mut err: f64 = 0.0;
        for k in 1..=1000 {
            let x = k as f64 * 0.05;
            let want = closed(x);
            err = err.max((bessel_j(order, x)? - want).abs() / local_scale(want, x));
        }
        out.push(
            tiny_check(
                "bessel-closed-form",
                "J_lambda against elementary closed forms on (0, 50]",
                err,
                1.0,
                1e-10,
            )
            .with_meta("order", order),
        );
    }

    let volumes = [2.0, PI, 4.0 * PI / 3.0, PI * PI / 2.0, 8.0 * PI * PI / 15.0];
    for (i, c) in volumes.into_iter().enumerate() {
        out.push(
            tiny_check(
                "fourier-ball-origin",
                "int_B 1 = |B(0,1)|",
                (fourier_ball(0.0, i + 1) - c).abs(),
                c,
                1e-12,
            )
            .with_meta("d", i + 1),
        );
    }

    for nu in [0.5, 1.0, 1.5, 2.5] {
        let areas = wave_areas(nu, 20)?;
        let ratio = areas.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
        // strictly below 1 at working precision
        out.push(
            InequalityReport::check(
                "makai",
                "A_{k+1} < A_k for the first 20 arches",
                ratio,
                1.0,
                1.0 - f64::EPSILON,
                0.0,
            )
            .with_meta("nu", nu)
            .with_meta("margin", 1.0 - ratio),
        );
    }

    out.extend(gibbs_check());

    for &d in &cfg.dims {
        let a = upsilon_integral(d);
        let b = upsilon_integral_bessel(d);
        out.push(
            tiny_check(
                "upsilon-integral",
                "quadrature against the Bessel closed form",
                (a - b).abs(),
                b.abs(),
                1e-10,
            )
            .with_meta("d", d),
        );
        out.push(
            InequalityReport::empirical(
                "kappa-bound",
                "kappa_d = 2^(d+1) / (upsilon_d min(1, c_d^2))",
                kappa_bound(d)?,
                1.0,
            )
            .with_meta("d", d)
            .with_meta("upsilon", upsilon_d(d)?),
        );
    }
    Ok(out)
}

/// Error scale for oscillatory Bessel values: the value itself, or the
/// asymptotic amplitude `√(2/(πx))` away from the origin.
pub fn local_scale(value: f64, x: f64) -> f64 {
    let amplitude = if x >= 1.0 { (2.0 / (PI * x)).sqrt() } else { 0.0 };
    value.abs().max(amplitude).max(f64::MIN_POSITIVE)
}

fn inequalities(cfg: &RunConfig, d: usize) -> Result<Vec<InequalityReport>> {
    let fams = families(cfg, d, cfg.trials_for(Suite::Inequalities))?;
    let rows = over_trials(&fams, |fam, _, rng| {
        let f = fam.draw(rng);
        let chi = fam.draw(rng);
        let mut out = vec![
            verify_weight(&chi, &f)?,
            verify_dual_sobolev(&f, 1.0)?,
            verify_lieb(&f, 0.5)?.with_meta("s", 0.5),
            verify_lieb(&f, 1.0)?.with_meta("s", 1.0),
        ];
        let s = f.support_measure();
        if s > 0.0 {
            for alpha in [0.0, 0.5, 1.0] {
                let omega = 0.5 * theta_threshold(d, alpha)? / s.powf(1.0 / d as f64);
                out.push(verify_prop_ds(&f, alpha, omega)?.with_meta("alpha", alpha));
            }
        }
        let beta = (d as f64 / 2.0 - 1.0).max(0.0);
        let a: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        let x: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        out.push(verify_ds2(&f, 0.0, beta, 1.0, &a, &x)?);
        let weight = random_sigma(rng, d, fam.window());
        out.push(verify_cor_ds(&f, &weight, 0.0, d as f64 / 2.0, 1.0)?);
        Ok(out)
    })?;
    let lieb_one = rows
        .iter()
        .flatten()
        .filter(|r| r.name == "lieb" && r.metadata.get("s").and_then(|v| v.as_f64()) == Some(1.0))
        .filter_map(|r| r.ratio)
        .fold(0.0, f64::max);
    let mut out = worst_by_name(split_lieb(rows));
    let h = fams[0].h;
    let eps = epsilon("lieb", h);
    out.push(
        InequalityReport::check(
            "lieb-s1-constant",
            "max lhs/rhs of the s = 1 Lieb bound <= 1",
            lieb_one,
            1.0,
            1.0,
            eps,
        )
        .with_meta("h", h),
    );
    Ok(out)
}

/// Gives each Lieb exponent its own report name so both are kept.
fn split_lieb(rows: Vec<Vec<InequalityReport>>) -> Vec<Vec<InequalityReport>> {
    rows.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|mut r| {
                    if r.name == "lieb" {
                        let s = r.metadata.get("s").and_then(|v| v.as_f64()).unwrap_or(1.0);
                        r.name = if s == 1.0 { "lieb-s1".into() } else { "lieb-s1/2".into() };
                    }
                    if r.name == "prop-ds" {
                        let a = r.metadata.get("alpha").and_then(|v| v.as_f64()).unwrap_or(0.0);
                        r.name = format!("prop-ds-alpha{a}");
                    }
                    r
                })
                .collect()
        })
        .collect()
}

fn montgomery(cfg: &RunConfig, d: usize) -> Result<Vec<InequalityReport>> {
    let fams = families(cfg, d, cfg.trials_for(Suite::Montgomery))?;
    let rows = over_trials(&fams, |fam, _, rng| {
        let f = fam.draw(rng);
        let w = fam.window();
        let mut out = vec![verify_montgomery(&f, &random_sigma(rng, d, w))?];
        let (a, b) = (random_sigma(rng, d, w), random_sigma(rng, d, w));
        let (wa, wb) = (rng.random_range(0.1..1.0), rng.random_range(0.1..1.0));
        let values: Vec<Complex64> = a
            .values()
            .iter()
            .zip(b.values())
            .map(|(x, y)| x * wa + y * wb)
            .collect();
        out.push(verify_cor_weight(&f, &a.with_values(values)?)?);
        let params = StarParams {
            alpha: 0.5,
            beta: (d as f64 / 2.0 - 1.0).max(0.0),
            omega: 1.0,
            a: (0..d).map(|_| rng.random_range(-1.0..1.0)).collect(),
            x: (0..d).map(|_| rng.random_range(-1.0..1.0)).collect(),
            sigma: random_sigma(rng, d, w),
        };
        let (ds, mont) = verify_star_theorems(&f, &params)?;
        out.push(ds);
        out.push(mont);
        Ok(out)
    })?;
    let max_ratio = rows
        .iter()
        .flatten()
        .filter(|r| r.name == "montgomery")
        .filter_map(|r| r.ratio)
        .fold(0.0, f64::max);
    let mut out = worst_by_name(rows);
    out.push(InequalityReport::empirical(
        "montgomery-constant",
        "max over trials of lhs/rhs",
        max_ratio,
        1.0,
    ));
    out.push(modulated_bump(d)?);
    Ok(out)
}

/// A bump modulated to frequency 5 along the first axis, with `Σ` a box
/// around that frequency: the rearrangement moves the mass to the origin.
pub fn modulated_bump(d: usize) -> Result<InequalityReport> {
    let h = 1.0 / 32.0;
    let n = if d == 1 { 256 } else { 128 };
    let f = GridFunction::symmetric_from_fn(&vec![n; d], h, |x| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        Complex64::from_polar((1.0 - r2).max(0.0).powi(3), 2.0 * PI * 5.0 * x[0])
    })?;
    let cell = 0.125;
    let mut offset = vec![-0.5; d];
    offset[0] = 4.5;
    let sigma = GridFunction::new(
        cell,
        offset,
        vec![8; d],
        vec![Complex64::new(1.0, 0.0); 8usize.pow(d as u32)],
    )?;
    Ok(verify_montgomery(&f, &sigma)?.with_name("montgomery-modulated-bump"))
}

trait Rename {
    fn with_name(self, name: &str) -> Self;
}

impl Rename for InequalityReport {
    fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

/// `e^{-π|x|²}` on `[-nh/2, nh/2)^d`.
pub fn gaussian(d: usize, n: usize, h: f64) -> Result<GridFunction> {
    GridFunction::symmetric_from_fn(&vec![n; d], h, |x| {
        Complex64::new((-PI * x.iter().map(|v| v * v).sum::<f64>()).exp(), 0.0)
    })
}

/// Indicator of `[lo, hi)^d` on cells of size `cell`.
pub fn box_set(d: usize, lo: f64, hi: f64, cell: f64) -> Result<GridFunction> {
    let cells = ((hi - lo) / cell).round() as usize;
    GridFunction::new(
        cell,
        vec![lo; d],
        vec![cells; d],
        vec![Complex64::new(1.0, 0.0); cells.pow(d as u32)],
    )
}

pub const DYADIC_TIMES: [f64; 5] = [1.0, 2.0, 4.0, 8.0, 16.0];

fn schrodinger(d: usize) -> Result<Vec<InequalityReport>> {
    let (n, h) = if d == 1 { (1024, 0.125) } else { (512, 0.125) };
    let v0 = gaussian(d, n, h)?;
    let mass = v0.norm(2.0);
    let nearest: f64 = v0.center(v0.cell_order()[0]).iter().map(|x| x * x).sum();
    let sigma = box_set(d, -1.0, 2.0, 0.125)?;
    let beta = (d as f64 - 1.0) / 2.0;
    let mut rows = Vec::new();
    for t in DYADIC_TIMES {
        let v = schrodinger_evolve(&v0, t)?;
        let mut row = vec![tiny_check(
            "schrodinger-mass",
            "||v(t)||_2 = ||v0||_2",
            (v.norm(2.0) - mass).abs(),
            mass,
            1e-9,
        )];
        let half = schrodinger_evolve(&schrodinger_evolve(&v0, 0.375 * t)?, 0.625 * t)?;
        let gap = half
            .values()
            .iter()
            .zip(v.values())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>();
        let gap = (gap * v0.cell_measure()).sqrt();
        row.push(tiny_check(
            "schrodinger-group-law",
            "U(s)U(t-s) = U(t)",
            gap,
            mass,
            1e-9,
        ));
        let disp = dispersive_check(&v0, t, f64::INFINITY)?;
        // the sampled peak sits at the cell center nearest the origin
        let closed = (t * t / (1.0 + t * t)).powf(d as f64 / 4.0) * (-PI * nearest / (1.0 + t * t)).exp();
        let measured = disp.ratio.ok_or_else(|| Error::Numeric {
            message: "dispersive check degenerated".into(),
            diagnostics: format!("t = {t}"),
        })?;
        row.push(
            tiny_check(
                "dispersive-gaussian",
                "||v(t)||_inf / (t^(-d/2) ||v0||_1) = (t^2/(1+t^2))^(d/4) exp(-pi |x0|^2/(1+t^2))",
                (measured - closed).abs(),
                closed,
                1e-3,
            )
            .with_meta("measured", measured),
        );
        row.push(disp);
        let (small, large) = verify_schrodinger_bounds(&v0, t, &sigma, beta)?;
        row.push(small);
        row.push(large);
        for r in &mut row {
            r.set_meta("t", t);
        }
        rows.push(row);
    }
    let mut holder = Vec::new();
    for p in [1.0, 4.0 / 3.0, 2.0] {
        holder.push(
            verify_schrodinger_holder(&v0, 4.0, &sigma, p)?
                .with_meta("p", p)
                .with_meta("t", 4.0),
        );
    }
    rows.push(holder);
    if d == 1 {
        let bump = GridFunction::symmetric_from_fn(&[1024], 1.0 / 32.0, |x| {
            Complex64::new(0.0, (1.0 - 4.0 * x[0] * x[0]).max(0.0).powi(4))
        })?;
        rows.push(vec![verify_schrodinger_l1(
            &bump,
            2.0,
            &box_set(1, 0.0, 1.0, 0.125)?,
            0.5,
        )?
        .with_meta("t", 2.0)]);
    }
    Ok(worst_by_name(rows))
}

fn conjecture1(cfg: &RunConfig, d: usize) -> Result<Vec<InequalityReport>> {
    let fams = families(cfg, d, cfg.trials_for(Suite::Conjecture1))?;
    let mut out = Vec::new();
    for fam in &fams {
        let summary = explore_conjecture1(fam, &SigmaSpec::Random)?;
        out.push(
            InequalityReport::exploration(
                "conjecture1",
                "max over trials of int_{R^d \\ Sigma*} |(|f|*)^|^2 / int_{R^d \\ Sigma} |f^|^2",
                summary.max_ratio,
                1.0,
                summary.max_ratio,
            )
            .with_meta("generator", fam.generator.name())
            .with_meta("seed", summary.seed)
            .with_meta("trials", fam.count)
            .with_meta("degenerate_trials", summary.degenerate)
            .with_meta("argmax_trial", summary.argmax_trial),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(name: &str, lhs: f64, pass_tol: f64) -> InequalityReport {
        InequalityReport::check(name, "", lhs, 1.0, 1.0, pass_tol)
    }

    #[test]
    fn worst_prefers_failures_then_ratio() {
        let rows = vec![
            vec![report("a", 0.5, 0.0), report("b", 0.9, 0.0)],
            vec![report("a", 0.7, 0.0), report("b", 1.5, 0.0)],
            vec![report("a", 0.6, 0.0), report("b", 1.2, 0.0)],
        ];
        let out = worst_by_name(rows);
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].lhs, 0.7);
        assert_eq!(out[0].metadata["failures"], 0);
        assert_eq!(out[1].lhs, 1.5);
        assert_eq!(out[1].metadata["failures"], 2);
        assert_eq!(out[1].metadata["trials"], 3);
    }

    #[test]
    fn families_split_trials() {
        let cfg = crate::config::parse_config("seed = 3").unwrap().finish().unwrap();
        let fams = families(&cfg, 1, 10).unwrap();
        let counts: Vec<usize> = fams.iter().map(|f| f.count).collect();
        assert_eq!(counts, vec![3, 3, 2, 2]);
        assert_eq!(families(&cfg, 1, 2).unwrap().len(), 2);
    }

    #[test]
    fn errors_become_failing_reports() {
        let out = SuiteOutcome::new(Suite::Specfun, Err(Error::InvalidArgument("boom".into())));
        assert!(!out.pass);
        assert_eq!(out.reports.len(), 1);
        assert!(!out.reports[0].pass);
        assert_eq!(out.reports[0].name, "specfun-error");
    }

    #[test]
    fn local_scale_uses_the_amplitude_near_zeros() {
        assert_eq!(local_scale(1e-20, 0.5), 1e-20);
        assert!((local_scale(0.0, 2.0) - (1.0 / PI).sqrt()).abs() < 1e-15);
    }
}
