//! Empirical constants: the largest `lhs / rhs` over a trial family.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::verify::trials::{random_sigma, TrialFamily};
use crate::verify::{
    verify_cor_weight, verify_ds2, verify_dual_sobolev, verify_hardy_littlewood, verify_lieb, verify_montgomery,
    verify_riesz, verify_weight, InequalityReport,
};

/// Names accepted by [`estimate_constant`].
pub const INEQUALITIES: &[&str] = &[
    "hardy-littlewood",
    "riesz",
    "weight",
    "dual-sobolev",
    "lieb",
    "lieb-half",
    "montgomery",
    "cor-weight",
    "ds2",
];

/// The maximum ratio over a family, with what is needed to replay it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantEstimate {
    pub name: String,
    pub value: f64,
    pub seed: u64,
    pub argmax_trial: Option<usize>,
    pub trials: usize,
    pub degenerate: usize,
    pub generator: String,
    pub dim: usize,
}

/// The largest ratio of one trial; `None` when every report is degenerate.
fn trial_ratio(name: &str, family: &TrialFamily, rng: &mut ChaCha8Rng) -> Result<Option<f64>> {
    let f = family.draw(rng);
    let reports: Vec<InequalityReport> = match name {
        // the diagonal pair (f, f) attains equality
        "hardy-littlewood" => {
            let g = family.draw(rng);
            vec![verify_hardy_littlewood(&f, &g)?, verify_hardy_littlewood(&f, &f)?]
        }
        "riesz" => {
            let (g, c) = (family.draw(rng), family.draw(rng));
            vec![verify_riesz(&f, &g, &c)?]
        }
        "weight" => vec![verify_weight(&family.draw(rng), &f)?],
        "dual-sobolev" => vec![verify_dual_sobolev(&f, 1.0)?],
        "lieb" => vec![verify_lieb(&f, 1.0)?],
        "lieb-half" => vec![verify_lieb(&f, 0.5)?],
        "montgomery" => vec![verify_montgomery(&f, &random_sigma(rng, family.dim, family.window()))?],
        "cor-weight" => {
            let a = random_sigma(rng, family.dim, family.window());
            let b = random_sigma(rng, family.dim, family.window());
            let (wa, wb) = (rng.random_range(0.1..1.0), rng.random_range(0.1..1.0));
            let values: Vec<Complex64> = a
                .values()
                .iter()
                .zip(b.values())
                .map(|(x, y)| x * wa + y * wb)
                .collect();
            vec![verify_cor_weight(&f, &a.with_values(values)?)?]
        }
        "ds2" => {
            let d = family.dim;
            let beta = (d as f64 / 2.0 - 1.0).max(0.0);
            let a: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
            let x: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
            vec![verify_ds2(&f, 0.0, beta, 1.0, &a, &x)?]
        }
        other => return Err(Error::invalid(format!("no harness for inequality {other:?}"))),
    };
    Ok(reports.iter().filter_map(|r| r.ratio).reduce(f64::max))
}

/// `max lhs/rhs` of the named inequality over `family`.
pub fn estimate_constant(family: &TrialFamily, name: &str) -> Result<ConstantEstimate> {
    if !INEQUALITIES.contains(&name) {
        return Err(Error::invalid(format!("no harness for inequality {name:?}")));
    }
    let ratios = family.map(|_, rng| trial_ratio(name, family, rng));
    let mut value = f64::NEG_INFINITY;
    let mut argmax = None;
    let mut degenerate = 0;
    for (trial, r) in ratios.into_iter().enumerate() {
        match r? {
            Some(v) if v > value => {
                value = v;
                argmax = Some(trial);
            }
            Some(_) => {}
            None => degenerate += 1,
        }
    }
    Ok(ConstantEstimate {
        name: name.to_string(),
        value: if argmax.is_some() { value } else { 0.0 },
        seed: family.seed,
        argmax_trial: argmax,
        trials: family.count,
        degenerate,
        generator: family.generator.name().to_string(),
        dim: family.dim,
    })
}
