//! Symmetric decreasing rearrangement, distribution functions and the 1-D
//! ⋆-rearrangement.
//!
//! Two views of |φ|* are provided. [`symmetric_rearrange`] permutes cell
//! values on the original grid, which keeps every norm and distribution
//! function exact. [`radial_profile`] returns the continuum rearrangement of
//! the piecewise-constant function: each cell contributes a spherical shell of
//! volume `h^d`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{sorted_magnitudes, GridFunction};
use crate::specfun::unit_ball_volume;
use crate::verify::InequalityReport;

/// μ(λ) sampled on a level ladder.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistributionSamples {
    pub lambdas: Vec<f64>,
    pub measures: Vec<f64>,
}

/// A radial, radially nonincreasing step function.
///
/// `levels[i]` is the value on the shell `radii[i] < |x| <= radii[i + 1]`
/// (and at the origin for `i = 0`), so the function is left-continuous in the
/// radius. Beyond the last radius it vanishes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub dim: usize,
    pub radii: Vec<f64>,
    pub levels: Vec<f64>,
}

impl RadialProfile {
    pub fn new(dim: usize, radii: Vec<f64>, levels: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("profile dimension must be positive"));
        }
        if radii.len() != levels.len() + 1 {
            return Err(Error::invalid("need exactly one more radius than levels"));
        }
        if radii[0] != 0.0 {
            return Err(Error::invalid("radius ladder must start at 0"));
        }
        if radii.windows(2).any(|w| !(w[1] > w[0])) || radii.iter().any(|r| !r.is_finite()) {
            return Err(Error::invalid("radii must be finite and strictly increasing"));
        }
        if levels.iter().any(|l| !(l.is_finite() && *l >= 0.0)) {
            return Err(Error::invalid("levels must be finite and nonnegative"));
        }
        if levels.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::invalid("levels must be nonincreasing"));
        }
        Ok(RadialProfile { dim, radii, levels })
    }

    /// The indicator of the open ball `B(0, r)`.
    pub fn ball(dim: usize, r: f64) -> Result<Self> {
        Self::new(dim, vec![0.0, r], vec![1.0])
    }

    pub fn eval(&self, r: f64) -> f64 {
        if self.levels.is_empty() || r > *self.radii.last().unwrap() {
            return 0.0;
        }
        // first shell whose outer radius is >= r
        let i = self.radii[1..].partition_point(|&outer| outer < r);
        self.levels[i.min(self.levels.len() - 1)]
    }

    pub fn outer_radius(&self) -> f64 {
        *self.radii.last().unwrap()
    }

    /// Measure of `{|x| : level > λ}` for each λ.
    pub fn distribution(&self, lambdas: &[f64]) -> Result<DistributionSamples> {
        validate_ladder(lambdas)?;
        let c = unit_ball_volume(self.dim);
        let measures = lambdas
            .iter()
            .map(|&lam| {
                let k = self.levels.partition_point(|&l| l > lam);
                c * self.radii[k].powi(self.dim as i32)
            })
            .collect();
        Ok(DistributionSamples {
            lambdas: lambdas.to_vec(),
            measures,
        })
    }

    /// `Σ_i level_i · |shell_i|`, the integral of the radial function.
    pub fn integral(&self) -> f64 {
        let c = unit_ball_volume(self.dim);
        let d = self.dim as i32;
        self.levels
            .iter()
            .zip(self.radii.windows(2))
            .map(|(l, w)| l * c * (w[1].powi(d) - w[0].powi(d)))
            .sum()
    }

    /// Samples the profile at the cell centers of a symmetric grid.
    pub fn rasterize(&self, shape: &[usize], h: f64) -> Result<GridFunction> {
        if shape.len() != self.dim {
            return Err(Error::invalid("grid dimension differs from the profile's"));
        }
        GridFunction::symmetric_from_fn(shape, h, |x| {
            let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            Complex64::new(self.eval(r), 0.0)
        })
    }
}

impl RadialProfile {
    /// Averages the profile over each cell of a symmetric grid with `q^d`
    /// midpoint subsamples, which keeps the integral of level sets close to
    /// their exact measure on coarse grids.
    ///
    /// Cells whose radial range lies inside one shell take the shell value
    /// directly.
    pub fn rasterize_averaged(&self, shape: &[usize], h: f64, q: usize) -> Result<GridFunction> {
        if shape.len() != self.dim {
            return Err(Error::invalid("grid dimension differs from the profile's"));
        }
        if q == 0 {
            return Err(Error::invalid("need at least one subsample per axis"));
        }
        let d = self.dim;
        let subs = q.pow(d as u32);
        let mut grid = GridFunction::symmetric(shape, h)?;
        // the profile is radial, so one orthant of cells determines the rest
        let half: Vec<usize> = shape.iter().map(|&m| m - m / 2).collect();
        let mut cache = vec![f64::NAN; half.iter().product()];
        let mut x = vec![0.0; d];
        let mut sub = vec![0.0; d];
        for i in 0..grid.len() {
            grid.center_into(i, &mut x);
            let (mut rest, mut key) = (i, 0);
            for k in (0..d).rev() {
                let j = rest % shape[k];
                rest /= shape[k];
                key = key * half[k] + j.max(shape[k] - 1 - j) - shape[k] / 2;
            }
            if cache[key].is_nan() {
                cache[key] = self.cell_average(&x, h, q, subs, &mut sub);
            }
            grid.values_mut()[i] = Complex64::new(cache[key], 0.0);
        }
        Ok(grid)
    }

    fn cell_average(&self, x: &[f64], h: f64, q: usize, subs: usize, sub: &mut [f64]) -> f64 {
        let (mut near, mut far) = (0.0, 0.0);
        for &c in x {
            let lo = (c.abs() - h / 2.0).max(0.0);
            let hi = c.abs() + h / 2.0;
            near += lo * lo;
            far += hi * hi;
        }
        let inner = self.eval(near.sqrt());
        if inner == self.eval(far.sqrt()) {
            return inner;
        }
        let mut acc = 0.0;
        for k in 0..subs {
            let mut rest = k;
            for (axis, s) in sub.iter_mut().enumerate() {
                let j = rest % q;
                rest /= q;
                *s = x[axis] + h * ((j as f64 + 0.5) / q as f64 - 0.5);
            }
            acc += self.eval(sub.iter().map(|v| v * v).sum::<f64>().sqrt());
        }
        acc / subs as f64
    }
}

fn validate_ladder(lambdas: &[f64]) -> Result<()> {
    if lambdas.is_empty() {
        return Err(Error::invalid("level ladder is empty"));
    }
    if lambdas.iter().any(|&l| !(l > 0.0)) {
        return Err(Error::invalid("levels must be positive; μ(0) may be infinite"));
    }
    if lambdas.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid("levels must be strictly increasing"));
    }
    Ok(())
}

/// `h^d · #{cells : |value| > λ}` for each λ.
pub fn distribution_function(f: &GridFunction, lambdas: &[f64]) -> Result<DistributionSamples> {
    validate_ladder(lambdas)?;
    let mags = sorted_magnitudes(f);
    let cell = f.cell_measure();
    let measures = lambdas
        .iter()
        .map(|&lam| mags.partition_point(|&m| m > lam) as f64 * cell)
        .collect();
    Ok(DistributionSamples {
        lambdas: lambdas.to_vec(),
        measures,
    })
}

/// Radius `r` with `|B(0, r)| = volume` in `R^d`.
pub fn set_rearrange(volume: f64, d: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    if !(volume >= 0.0) || !volume.is_finite() {
        return Err(Error::invalid(format!(
            "volume must be finite and nonnegative, got {volume}"
        )));
    }
    let base = volume / unit_ball_volume(d);
    Ok(match d {
        1 => base,
        2 => base.sqrt(),
        3 => base.cbrt(),
        _ => base.powf(1.0 / d as f64),
    })
}

/// Sorted magnitudes reassigned to cells in order of distance from the origin.
pub fn symmetric_rearrange(f: &GridFunction) -> GridFunction {
    let mags = sorted_magnitudes(f);
    let mut values = vec![Complex64::new(0.0, 0.0); f.len()];
    for (rank, cell) in f.cell_order().into_iter().enumerate() {
        values[cell] = Complex64::new(mags[rank], 0.0);
    }
    f.with_values(values).expect("same geometry")
}

/// The continuum rearrangement of `f` as an exact step profile.
///
/// Shells with equal level are merged and trailing zero levels dropped.
pub fn radial_profile(f: &GridFunction) -> RadialProfile {
    let d = f.dim();
    let mags = sorted_magnitudes(f);
    let cell = f.cell_measure();
    let mut radii = vec![0.0];
    let mut levels: Vec<f64> = Vec::new();
    for (k, &m) in mags.iter().enumerate() {
        if m == 0.0 {
            break;
        }
        let r = set_rearrange((k + 1) as f64 * cell, d).expect("valid volume");
        if levels.last() == Some(&m) {
            *radii.last_mut().unwrap() = r;
        } else {
            levels.push(m);
            radii.push(r);
        }
    }
    RadialProfile { dim: d, radii, levels }
}

/// Shell radii `R(m)` with `|B(0, R(m))| = m h^d`, for `m = 0..=len`.
pub fn cell_ladder(f: &GridFunction) -> Vec<f64> {
    (0..=f.len())
        .map(|m| set_rearrange(m as f64 * f.cell_measure(), f.dim()).expect("valid volume"))
        .collect()
}

/// Resamples the exact rearrangement onto `radii`, taking on each shell the
/// value at its outer radius.
pub fn rearrange_to_profile(f: &GridFunction, radii: &[f64]) -> Result<RadialProfile> {
    let exact = radial_profile(f);
    if radii.len() < 2 || radii[0] != 0.0 {
        return Err(Error::invalid(
            "radius ladder must start at 0 and have at least two points",
        ));
    }
    let top = *radii.last().unwrap();
    let need = exact.outer_radius();
    if top < need * (1.0 - 1e-12) {
        return Err(Error::range(format!(
            "ladder ends at {top} but the support needs radius {need}"
        )));
    }
    let levels = radii[1..].iter().map(|&r| exact.eval(r)).collect();
    RadialProfile::new(f.dim(), radii.to_vec(), levels)
}

/// The 1-D ⋆-rearrangement: level sets of measure `m` become `[-m/2, m/2]`.
///
/// The output has one cell of width `h^d` per input cell on a symmetric box,
/// so it is a permutation of the input magnitudes.
pub fn star_rearrange_1d(f: &GridFunction) -> GridFunction {
    let n = f.len();
    let h1 = f.cell_measure();
    let mut out = GridFunction::symmetric(&[n], h1).expect("valid 1-D grid");
    let mags = sorted_magnitudes(f);
    let order = out.cell_order();
    let values = out.values_mut();
    for (rank, cell) in order.into_iter().enumerate() {
        values[cell] = Complex64::new(mags[rank], 0.0);
    }
    out
}

const DECAY_STATEMENT: &str = "rearrangement decay: |f|*(t) <= ||f||_p / (|B(0,1)|^(1/p) |t|^(d/p)) for t != 0";

/// Checks the pointwise decay of |φ|* at every cell center `t ≠ 0`.
///
/// `lhs` is the largest value of `|φ|*(t) (c_d |t|^d)^{1/p}` and `rhs` is
/// `‖φ‖_p`, so the report passes with constant 1.
pub fn check_decay_bound(f: &GridFunction, p: f64) -> Result<InequalityReport> {
    if !(p >= 1.0) {
        return Err(Error::invalid(format!("p must be at least 1, got {p}")));
    }
    let profile = radial_profile(f);
    let norm = f.norm(p);
    let c = unit_ball_volume(f.dim());
    let d = f.dim() as f64;
    let mut worst = 0.0f64;
    let mut worst_r = 0.0;
    let mut violations = 0usize;
    let mut x = vec![0.0; f.dim()];
    for i in 0..f.len() {
        f.center_into(i, &mut x);
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if r == 0.0 {
            continue;
        }
        let weight = if p.is_infinite() {
            1.0
        } else {
            (c * r.powf(d)).powf(1.0 / p)
        };
        let scaled = profile.eval(r) * weight;
        if scaled > norm * (1.0 + 1e-12) {
            violations += 1;
        }
        if scaled > worst {
            worst = scaled;
            worst_r = r;
        }
    }
    Ok(
        InequalityReport::check("decay-bound", DECAY_STATEMENT, worst, norm, 1.0, 1e-12)
            .with_meta("p", p)
            .with_meta("h", f.h())
            .with_meta("worst_radius", worst_r)
            .with_meta("violations", violations),
    )
}

const ENVELOPE_STATEMENT: &str = "a power-law envelope |f(x)| <= C (1+|x|)^-gamma passes to the rearrangement";

/// If `|φ(x)| ≤ C(1+|x|)^{-γ}` on every cell, checks that `|φ|*(r)` obeys the
/// same envelope at every shell radius.
///
/// The hypothesis must hold on whole cells (tested at the far corner);
/// otherwise a precondition error reports the worst excess.
pub fn check_decay_envelope(f: &GridFunction, c: f64, gamma: f64) -> Result<InequalityReport> {
    if !(c > 0.0 && gamma >= 0.0) {
        return Err(Error::invalid("envelope needs C > 0 and gamma >= 0"));
    }
    let envelope = |r: f64| c * (1.0 + r).powf(-gamma);
    let h = f.h();
    let mut idx_center = vec![0.0; f.dim()];
    let mut excess = 0.0f64;
    for (i, v) in f.values().iter().enumerate() {
        f.center_into(i, &mut idx_center);
        let far = idx_center
            .iter()
            .map(|x| (x.abs() + h / 2.0).powi(2))
            .sum::<f64>()
            .sqrt();
        excess = excess.max(v.norm() / envelope(far) - 1.0);
    }
    if excess > 0.0 {
        return Err(Error::Precondition {
            message: "input exceeds the envelope on some cell".into(),
            measured: excess,
        });
    }
    let profile = radial_profile(f);
    let mut worst = 0.0f64;
    for (level, outer) in profile.levels.iter().zip(&profile.radii[1..]) {
        worst = worst.max(level / envelope(*outer));
    }
    Ok(
        InequalityReport::check("decay-envelope", ENVELOPE_STATEMENT, worst, 1.0, 1.0, 1e-12)
            .with_meta("C", c)
            .with_meta("gamma", gamma),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn distribution_counts_cells_strictly() {
        let f = GridFunction::new(
            1.0,
            vec![0.0],
            vec![10],
            (0..10).map(|i| re(if i < 7 { 1.0 } else { 0.0 })).collect(),
        )
        .unwrap();
        let mu = distribution_function(&f, &[0.5, 1.0]).unwrap();
        assert_eq!(mu.measures, vec![7.0, 0.0]);
        assert!(distribution_function(&f, &[]).is_err());
        assert!(distribution_function(&f, &[0.0]).is_err());
        assert!(distribution_function(&f, &[0.5, 0.5]).is_err());
    }

    #[test]
    fn gaussian_distribution_matches_inversion() {
        let h = 2f64.powi(-8);
        let f = GridFunction::symmetric_from_fn(&[4096], h, |x| re((-PI * x[0] * x[0]).exp())).unwrap();
        let mu = distribution_function(&f, &[0.5]).unwrap().measures[0];
        let exact = 2.0 * (2f64.ln() / PI).sqrt();
        assert!((mu - exact).abs() <= 2.0 * h);
    }

    #[test]
    fn set_rearrange_unit_balls() {
        assert!((set_rearrange(2.0, 1).unwrap() - 1.0).abs() < 1e-15);
        assert!((set_rearrange(PI, 2).unwrap() - 1.0).abs() < 1e-15);
        assert!((set_rearrange(4.0 * PI / 3.0, 3).unwrap() - 1.0).abs() < 1e-15);
        assert!(set_rearrange(-1.0, 2).is_err());
    }

    #[test]
    fn two_intervals_become_one_centered() {
        let h = 1.0 / 16.0;
        let f = GridFunction::symmetric_from_fn(&[128], h, |x| {
            let t = x[0];
            re(if (0.0..1.0).contains(&t) || (2.0..3.0).contains(&t) {
                1.0
            } else {
                0.0
            })
        })
        .unwrap();
        let s = symmetric_rearrange(&f);
        let mismatches = (0..s.len())
            .filter(|&i| {
                let t = s.center(i)[0];
                let expect = if t.abs() < 1.0 { 1.0 } else { 0.0 };
                s.values()[i].re != expect
            })
            .count();
        assert!(mismatches <= 1);
    }

    #[test]
    fn radial_input_is_fixed() {
        let f = GridFunction::symmetric_from_fn(&[9, 9], 0.5, |x| re((-(x[0] * x[0] + x[1] * x[1])).exp())).unwrap();
        let s = symmetric_rearrange(&f);
        for (a, b) in s.values().iter().zip(f.values()) {
            assert_eq!(a.re, b.re);
        }
    }

    #[test]
    fn profile_of_indicator_is_a_ball() {
        let f = GridFunction::symmetric_from_fn(&[16, 16], 0.25, |x| {
            re(if x[0] > 0.0 && x[1] > 0.0 { 1.0 } else { 0.0 })
        })
        .unwrap();
        let p = radial_profile(&f);
        assert_eq!(p.levels, vec![1.0]);
        let r = set_rearrange(4.0, 2).unwrap();
        assert!((p.radii[1] - r).abs() < 1e-14);
        assert!((p.integral() - 4.0).abs() < 1e-12);
        assert_eq!(p.eval(r), 1.0);
        assert_eq!(p.eval(r * (1.0 + 1e-12)), 0.0);
    }

    #[test]
    fn profile_distribution_is_exact() {
        let f = GridFunction::symmetric_from_fn(&[12, 10], 0.3, |x| re((x[0] * 3.0).sin().abs() + x[1].cos().abs()))
            .unwrap();
        let p = radial_profile(&f);
        let ladder: Vec<f64> = (1..=32).map(|k| k as f64 / 16.0).collect();
        let a = distribution_function(&f, &ladder).unwrap();
        let b = p.distribution(&ladder).unwrap();
        for (x, y) in a.measures.iter().zip(&b.measures) {
            assert!((x - y).abs() <= 1e-12 * x.max(1.0));
        }
    }

    #[test]
    fn profile_ladder_must_cover_support() {
        let f = GridFunction::symmetric_from_fn(&[8], 1.0, |_| re(1.0)).unwrap();
        assert!(rearrange_to_profile(&f, &[0.0, 1.0, 2.0]).is_err());
        let p = rearrange_to_profile(&f, &[0.0, 1.0, 2.0, 4.0, 5.0]).unwrap();
        assert_eq!(p.levels, vec![1.0, 1.0, 1.0, 0.0]);
        let exact = rearrange_to_profile(&f, &cell_ladder(&f)).unwrap();
        assert!((exact.integral() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn star_matches_symmetric_in_one_dimension() {
        let f = GridFunction::symmetric_from_fn(&[20], 0.1, |x| Complex64::new((7.0 * x[0]).sin(), x[0])).unwrap();
        assert_eq!(star_rearrange_1d(&f), symmetric_rearrange(&f));
    }

    #[test]
    fn star_of_square_is_interval() {
        let f = GridFunction::symmetric_from_fn(&[8, 8], 0.5, |x| {
            re(if x[0].abs() < 1.0 && x[1].abs() < 1.0 { 1.0 } else { 0.0 })
        })
        .unwrap();
        let s = star_rearrange_1d(&f);
        assert_eq!(s.h(), 0.25);
        for i in 0..s.len() {
            let t = s.center(i)[0];
            assert_eq!(s.values()[i].re, if t.abs() < 2.0 { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn decay_bound_is_sharp_for_balls() {
        let f = GridFunction::symmetric_from_fn(&[64], 1.0 / 16.0, |x| re(if x[0].abs() < 1.0 { 1.0 } else { 0.0 }))
            .unwrap();
        let r = check_decay_bound(&f, 1.0).unwrap();
        assert!(r.pass);
        assert!(r.lhs > r.rhs * (1.0 - 1.0 / 16.0));
    }

    #[test]
    fn envelope_rejects_violating_input() {
        let f = GridFunction::symmetric_from_fn(&[32], 0.25, |x| re((1.0 + x[0].abs() + 0.25).powf(-2.0))).unwrap();
        assert!(check_decay_envelope(&f, 1.0, 2.0).unwrap().pass);
        assert!(matches!(
            check_decay_envelope(&f, 0.5, 2.0),
            Err(Error::Precondition { .. })
        ));
    }
}
