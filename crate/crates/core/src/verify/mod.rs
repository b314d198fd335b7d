//! The inequality harness.
//!
//! Every check returns an [`InequalityReport`]. Spectral quantities use the
//! point-mass transform of [`crate::transform`] on a grid padded to twice the
//! input length, and integrate only over the alias-free window
//! `|ξ|_∞ ≤ 1/(4h)`. The rearranged side is built on a symmetric grid of the
//! same padded size: by permuting cells in one dimension, and by sampling the
//! continuum profile at cell centers in higher dimensions.

mod calibration;
mod donoho_stark;
mod estimate;
mod lemmas;
mod montgomery;
mod report;
mod schrodinger;
mod trials;
mod weighted;

pub use calibration::{calibration_residual, epsilon, tolerance_slope, CALIBRATED};
pub use donoho_stark::{gibbs_check, gibbs_integral, psi_factor, verify_cor_ds, verify_ds2, verify_prop_ds};
pub use estimate::{estimate_constant, ConstantEstimate, INEQUALITIES};
pub use lemmas::{verify_hardy_littlewood, verify_riesz};
pub use montgomery::{
    explore_conjecture1, verify_cor_weight, verify_montgomery, verify_star_theorems, Conjecture1Summary, SigmaSpec,
    StarParams,
};
pub use report::{InequalityReport, ReportKind};
pub use schrodinger::{verify_schrodinger_bounds, verify_schrodinger_holder, verify_schrodinger_l1};
pub use trials::{random_sigma, Generator, TrialFamily};
pub use weighted::{verify_dual_sobolev, verify_lieb, verify_weight};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{sorted_magnitudes, GridFunction};
use crate::rearrange::radial_profile;
use crate::transform::{dft, Spectrum};

/// Largest padded grid, in cells.
const MAX_CELLS: usize = 1 << 26;

/// Common padded length `next_pow2(2 · max axis)` for a set of grids.
pub(crate) fn padded_len(fs: &[&GridFunction]) -> Result<usize> {
    let d = fs[0].dim();
    let h = fs[0].h();
    for f in fs {
        if f.dim() != d {
            return Err(Error::invalid("inputs live in different dimensions"));
        }
        if (f.h() - h).abs() > 1e-12 * h {
            return Err(Error::invalid("inputs use different cell sizes"));
        }
    }
    let longest = fs.iter().flat_map(|f| f.shape().iter().copied()).max().unwrap();
    let m = (2 * longest).next_power_of_two();
    if m.checked_pow(d as u32).is_none_or(|c| c > MAX_CELLS) {
        return Err(Error::Resource(format!("padded grid {m}^{d} is too large")));
    }
    Ok(m)
}

/// Subsamples per axis when averaging the rearranged profile over a cell.
const SUBSAMPLES: usize = 8;

/// `|f|*` on the symmetric grid with `m` cells per axis.
pub(crate) fn rearranged_grid(f: &GridFunction, m: usize) -> Result<GridFunction> {
    let d = f.dim();
    if d == 1 {
        let mags = sorted_magnitudes(f);
        let mut out = GridFunction::symmetric(&[m], f.h())?;
        let order = out.cell_order();
        let values = out.values_mut();
        for (rank, &m) in mags.iter().enumerate() {
            values[order[rank]] = Complex64::new(m, 0.0);
        }
        Ok(out)
    } else {
        radial_profile(f).rasterize_averaged(&vec![m; d], f.h(), SUBSAMPLES)
    }
}

/// `φ̂` and `(|φ|*)^` on one frequency grid.
pub(crate) struct SpectralPair {
    pub spec: Spectrum,
    pub star: Spectrum,
}

pub(crate) fn spectral_pair_with(f: &GridFunction, m: usize) -> Result<SpectralPair> {
    let spec = dft(&f.pad_to(&vec![m; f.dim()])?)?;
    let star = dft(&rearranged_grid(f, m)?)?;
    Ok(SpectralPair { spec, star })
}

pub(crate) fn spectral_pair(f: &GridFunction) -> Result<SpectralPair> {
    spectral_pair_with(f, padded_len(&[f])?)
}

/// Edge of the alias-free window, `1/(4h)`.
pub(crate) fn window(spec: &Spectrum) -> f64 {
    spec.nyquist() / 2.0
}

/// `Δξ^d Σ_k term(k, ξ_k)` over the alias-free window.
pub(crate) fn window_sum<T: FnMut(usize, &[f64]) -> f64>(spec: &Spectrum, mut term: T) -> f64 {
    let edge = window(spec);
    let mut xi = vec![0.0; spec.dim()];
    let mut acc = 0.0;
    for k in 0..spec.len() {
        spec.frequency_into(k, &mut xi);
        if xi.iter().all(|x| x.abs() <= edge) {
            acc += term(k, &xi);
        }
    }
    acc * spec.cell_measure()
}

/// `Δξ^d Σ w(ξ)|F(ξ)|²` over the alias-free window.
pub(crate) fn windowed_energy<W: FnMut(&[f64]) -> f64>(spec: &Spectrum, mut w: W) -> f64 {
    let values = spec.values();
    window_sum(spec, |k, xi| w(xi) * values[k].norm_sqr())
}

pub(crate) fn norm(xi: &[f64]) -> f64 {
    xi.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Largest `|ξ|_∞` reached by the closure of the nonzero cells.
pub(crate) fn support_reach(f: &GridFunction) -> f64 {
    let h = f.h();
    let mut x = vec![0.0; f.dim()];
    let mut reach: f64 = 0.0;
    for (i, v) in f.values().iter().enumerate() {
        if v.norm() == 0.0 {
            continue;
        }
        f.center_into(i, &mut x);
        for c in &x {
            reach = reach.max(c.abs() + h / 2.0);
        }
    }
    reach
}

/// Moduli are taken when any value is not a nonnegative real.
pub(crate) fn needs_moduli(f: &GridFunction) -> bool {
    f.values().iter().any(|v| v.im != 0.0 || v.re < 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rearranged_grid_is_radial_and_padded() {
        let f = GridFunction::symmetric_from_fn(&[6, 6], 0.5, |x| Complex64::new(x[0] + 2.0, x[1])).unwrap();
        let m = padded_len(&[&f]).unwrap();
        assert_eq!(m, 16);
        let g = rearranged_grid(&f, m).unwrap();
        assert_eq!(g.shape(), &[16, 16]);
        for i in 0..g.len() {
            let x = g.center(i);
            let mirrored = g.eval(&[-x[0], x[1]]);
            assert_eq!(g.values()[i], mirrored);
        }
        // cell averaging can only lower the peak and nearly keeps the mass
        assert!(g.norm(f64::INFINITY) <= f.norm(f64::INFINITY) + 1e-15);
        assert!((g.norm(1.0) - f.norm(1.0)).abs() < 2e-2 * f.norm(1.0));
    }

    #[test]
    fn one_dimensional_rearrangement_is_a_permutation() {
        let f = GridFunction::symmetric_from_fn(&[10], 0.1, |x| Complex64::new((7.0 * x[0]).sin(), 0.0)).unwrap();
        let g = rearranged_grid(&f, 32).unwrap();
        for p in [1.0, 2.0, f64::INFINITY] {
            assert!((g.norm(p) - f.norm(p)).abs() <= 1e-14 * f.norm(p));
        }
    }

    #[test]
    fn mismatched_cell_sizes_are_rejected() {
        let a = GridFunction::symmetric(&[4], 0.5).unwrap();
        let b = GridFunction::symmetric(&[4], 0.25).unwrap();
        assert!(padded_len(&[&a, &b]).is_err());
    }

    #[test]
    fn windowed_energy_of_resolved_gaussian_is_total() {
        let f = GridFunction::symmetric_from_fn(&[64], 1.0 / 8.0, |x| Complex64::new((-PI * x[0] * x[0]).exp(), 0.0))
            .unwrap();
        let pair = spectral_pair(&f).unwrap();
        let e = windowed_energy(&pair.spec, |_| 1.0);
        assert!((e / f.norm(2.0).powi(2) - 1.0).abs() < 1e-12);
    }
}
