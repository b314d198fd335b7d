use std::f64::consts::PI;

use num_complex::Complex64;

use super::{dft, inverse_transform};
use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::verify::InequalityReport;

const LEAKAGE_LIMIT: f64 = 1e-6;

/// Fraction of spectral energy with `|ξ|_∞` beyond half the window.
pub fn spectral_leakage(f: &GridFunction) -> Result<f64> {
    let spec = dft(f)?;
    let edge = spec.nyquist() / 2.0;
    let total = spec.weighted_energy(|_| 1.0);
    if total == 0.0 {
        return Ok(0.0);
    }
    let outer = spec.weighted_energy(|xi| if xi.iter().any(|x| x.abs() > edge) { 1.0 } else { 0.0 });
    Ok(outer / total)
}

/// `v(·, t) = (e^{-iπ|ξ|²t} v̂₀)ˇ` on the periodic box of `v0`.
///
/// The caller pads; the input must keep all but `1e-6` of its spectral
/// energy inside half the frequency window.
pub fn schrodinger_evolve(v0: &GridFunction, t: f64) -> Result<GridFunction> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::invalid(format!("evolution time must be positive, got {t}")));
    }
    let mut spec = dft(v0)?;
    let edge = spec.nyquist() / 2.0;
    let total = spec.weighted_energy(|_| 1.0);
    if total > 0.0 {
        let outer = spec.weighted_energy(|xi| if xi.iter().any(|x| x.abs() > edge) { 1.0 } else { 0.0 });
        let leak = outer / total;
        if leak > LEAKAGE_LIMIT {
            return Err(Error::Precondition {
                message: "initial data is under-resolved: spectral energy near the window edge".into(),
                measured: leak,
            });
        }
    }
    let mut xi = vec![0.0; spec.dim()];
    for i in 0..spec.len() {
        spec.frequency_into(i, &mut xi);
        let r2: f64 = xi.iter().map(|v| v * v).sum();
        spec.values_mut()[i] *= Complex64::from_polar(1.0, -PI * r2 * t);
    }
    Ok(inverse_transform(&spec))
}

const DISPERSIVE_STATEMENT: &str =
    "dispersive estimate: ||v(t)||_q <= t^(-(d/2)(1-2/q)) ||v0||_q' for the free Schrodinger flow";

/// Compares `‖v(·,t)‖_q` with `t^{-(d/2)(1-2/q)} ‖v₀‖_{q'}` (constant 1 on
/// moduli).
pub fn dispersive_check(v0: &GridFunction, t: f64, q: f64) -> Result<InequalityReport> {
    if !(q >= 2.0) {
        return Err(Error::invalid(format!("q must be at least 2, got {q}")));
    }
    let v = schrodinger_evolve(v0, t)?;
    let q_dual = if q.is_infinite() { 1.0 } else { q / (q - 1.0) };
    let d = v0.dim() as f64;
    let decay = if q.is_infinite() {
        t.powf(-d / 2.0)
    } else {
        t.powf(-(d / 2.0) * (1.0 - 2.0 / q))
    };
    let lhs = v.norm(q);
    let rhs = decay * v0.norm(q_dual);
    Ok(
        InequalityReport::check("dispersive", DISPERSIVE_STATEMENT, lhs, rhs, 1.0, 1e-9)
            .with_meta("t", t)
            .with_meta(
                "q",
                if q.is_infinite() {
                    serde_json::Value::from("inf")
                } else {
                    q.into()
                },
            )
            .with_meta("h", v0.h()),
    )
}
