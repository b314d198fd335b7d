//! Discretization tolerances `ε(h) = K·h`.
//!
//! Each slope `K` is measured on a closed-form case where the continuum
//! inequality is an equality: Gaussians displaced from the grid origin by a
//! fixed fraction of a cell, so the grid rearrangement has real work to do.
//! The residual is the distance of the discrete ratio from its continuum
//! value of 1; `K` is twice the largest `residual / h` seen on the
//! calibration grids.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::verify::{verify_dual_sobolev, verify_lieb, verify_montgomery, verify_prop_ds, verify_weight};

/// Measured slopes, by inequality name.
pub const CALIBRATED: &[(&str, f64)] = &[
    ("weight", 0.26),
    ("dual-sobolev", 0.11),
    ("lieb", 0.29),
    ("prop-ds", 0.022),
    ("montgomery", 0.13),
];

pub fn tolerance_slope(name: &str) -> Option<f64> {
    CALIBRATED.iter().find(|(n, _)| *n == name).map(|(_, k)| *k)
}

/// `ε(h) = K·h`; inequalities without a calibrated slope get 0.
pub fn epsilon(name: &str, h: f64) -> f64 {
    tolerance_slope(name).map_or(0.0, |k| k * h)
}

/// Gaussian `e^{-πa|x - δ|²}` on `[-4, 4)^d` with `δ_k = (k+1) h / 2`.
fn displaced_gaussian(d: usize, h: f64, a: f64) -> Result<GridFunction> {
    let n = (8.0 / h).round() as usize;
    GridFunction::symmetric_from_fn(&vec![n; d], h, |x| {
        let r2: f64 = x
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let t = v - (k + 1) as f64 * h / 2.0;
                t * t
            })
            .sum();
        Complex64::new((-PI * a * r2).exp(), 0.0)
    })
}

/// `|lhs/rhs - 1|` for the closed-form case of `name` in dimension `d` at
/// cell size `h`.
pub fn calibration_residual(name: &str, d: usize, h: f64) -> Result<f64> {
    let f = displaced_gaussian(d, h, 1.0)?;
    let report = match name {
        "weight" => verify_weight(&displaced_gaussian(d, h, 2.0)?, &f)?,
        "dual-sobolev" => verify_dual_sobolev(&f, 1.0)?,
        "lieb" => verify_lieb(&f, 1.0)?,
        "prop-ds" => verify_prop_ds(&f, 0.5, 0.1)?,
        "montgomery" => {
            let sigma = GridFunction::symmetric_from_fn(&vec![64; d], 1.0 / 16.0, |xi| {
                let r2: f64 = xi.iter().map(|v| v * v).sum();
                Complex64::new(if r2 < 1.0 { 1.0 } else { 0.0 }, 0.0)
            })?;
            verify_montgomery(&f, &sigma)?
        }
        other => return Err(Error::invalid(format!("no calibration case for {other:?}"))),
    };
    Ok((report.lhs / report.rhs - 1.0).abs())
}
