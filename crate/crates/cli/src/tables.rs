//! Plot-ready CSV tables and the single-function commands.

use std::fmt::Write;

use fourier_rearrange::rearrange::{radial_profile, symmetric_rearrange};
use fourier_rearrange::specfun::{bessel_j, script_j};
use fourier_rearrange::transform::{forward_transform_padded, schrodinger_evolve};
use fourier_rearrange::{Error, GridFunction, Result};

/// `order,x,J,script_J` for `x = step, 2 step, ..., ≤ xmax`.
pub fn specfun_table(order: f64, xmax: f64, step: f64) -> Result<String> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {step}")));
    }
    if !(xmax >= step && xmax.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "xmax must be at least step, got {xmax}"
        )));
    }
    let count = (xmax / step * (1.0 + 1e-12)).floor() as usize;
    let mut out = String::from("order,x,J,script_J\n");
    for k in 1..=count {
        let x = k as f64 * step;
        writeln!(out, "{order},{x},{},{}", bessel_j(order, x)?, script_j(order, x)?).unwrap();
    }
    Ok(out)
}

/// `r,level`: the outer radius and value of each shell of `|f|*`.
pub fn profile_table(f: &GridFunction) -> String {
    let p = radial_profile(f);
    let mut out = String::from("r,level\n");
    for (r, level) in p.radii[1..].iter().zip(&p.levels) {
        writeln!(out, "{r},{level}").unwrap();
    }
    out
}

fn axis_header(prefix: &str, d: usize) -> String {
    if d == 1 {
        prefix.to_string()
    } else {
        (1..=d).map(|k| format!("{prefix}{k}")).collect::<Vec<_>>().join(",")
    }
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `xi,abs` over the transform of `f` zero-padded by `pad`.
pub fn spectrum_table(f: &GridFunction, pad: usize) -> Result<String> {
    let spec = forward_transform_padded(f, pad)?;
    let mut out = format!("{},abs\n", axis_header("xi", f.dim()));
    let mut xi = vec![0.0; f.dim()];
    for (k, v) in spec.values().iter().enumerate() {
        spec.frequency_into(k, &mut xi);
        writeln!(out, "{},{}", join(&xi), v.norm()).unwrap();
    }
    Ok(out)
}

/// `x,abs,phase` of the data evolved by the multiplier `e^{-iπ|ξ|²t}`, after
/// padding by `pad`.
pub fn evolve_table(v0: &GridFunction, t: f64, pad: usize) -> Result<String> {
    let grid = if pad > 1 {
        let shape: Vec<usize> = v0.shape().iter().map(|&n| n * pad).collect();
        v0.pad_to(&shape)?
    } else {
        v0.clone()
    };
    let v = schrodinger_evolve(&grid, t)?;
    let mut out = format!("{},abs,phase\n", axis_header("x", v.dim()));
    let mut x = vec![0.0; v.dim()];
    for (i, z) in v.values().iter().enumerate() {
        v.center_into(i, &mut x);
        writeln!(out, "{},{},{}", join(&x), z.norm(), z.arg()).unwrap();
    }
    Ok(out)
}

/// The grid rearrangement `|f|*` as a grid file.
pub fn rearranged_json(f: &GridFunction) -> String {
    symmetric_rearrange(f).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn specfun_rows() {
        let t = specfun_table(0.5, 1.0, 0.25).unwrap();
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[0], "order,x,J,script_J");
        assert_eq!(lines.len(), 5);
        let fields: Vec<f64> = lines[4].split(',').map(|s| s.parse().unwrap()).collect();
        let want = (2.0 / std::f64::consts::PI).sqrt() * 1f64.sin();
        assert!((fields[2] - want).abs() < 1e-12);
        assert!(specfun_table(0.5, 1.0, 0.0).is_err());
    }

    #[test]
    fn profile_of_an_indicator_is_one_shell() {
        let f = GridFunction::symmetric_from_fn(&[8], 0.5, |x| Complex64::new(if x[0] > 0.0 { 2.0 } else { 0.0 }, 0.0))
            .unwrap();
        assert_eq!(profile_table(&f), "r,level\n1,2\n");
    }

    #[test]
    fn spectrum_and_evolve_headers() {
        let f = GridFunction::symmetric_from_fn(&[4, 4], 0.5, |_| Complex64::new(1.0, 0.0)).unwrap();
        let s = spectrum_table(&f, 2).unwrap();
        assert!(s.starts_with("xi1,xi2,abs\n"));
        assert_eq!(s.lines().count(), 65);
        let g = GridFunction::symmetric_from_fn(&[256], 0.125, |x| {
            Complex64::new((-std::f64::consts::PI * x[0] * x[0]).exp(), 0.0)
        })
        .unwrap();
        let e = evolve_table(&g, 1.0, 2).unwrap();
        assert!(e.starts_with("x,abs,phase\n"));
        assert_eq!(e.lines().count(), 513);
    }
}
