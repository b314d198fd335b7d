//! Discrete Fourier analysis with the kernel `e^{-2πi⟨x,ξ⟩}`.
//!
//! A grid function is treated as point masses `h^d f_j` at its cell centers,
//! so
//!
//! ```text
//! F(ξ_k) = h^d Σ_j f_j e^{-2πi⟨x_j, ξ_k⟩},   ξ_k = k Δξ,   Δξ = 1/(M h),
//! ```
//!
//! with `k` running over `[-M/2, M/2)` on each axis. The pair is exactly
//! invertible and satisfies Parseval with measures `h^d` and `Δξ^d`.

mod radial;
mod schrodinger;

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::specfun::{m_alpha_hat, KernelSpec};

pub use radial::{radial_fourier, radial_fourier_fn, RadialSpectrum};
pub use schrodinger::{dispersive_check, schrodinger_evolve, spectral_leakage};

/// Samples of a Fourier transform on a centered frequency grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    dxi: f64,
    shape: Vec<usize>,
    values: Vec<Complex64>,
    /// Cell size of the originating grid.
    space_h: f64,
    /// Lower corner of the originating grid.
    space_offset: Vec<f64>,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.shape.len()
    }

    pub fn dxi(&self) -> f64 {
        self.dxi
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn space_h(&self) -> f64 {
        self.space_h
    }

    pub fn space_offset(&self) -> &[f64] {
        &self.space_offset
    }

    /// `Δξ^d`.
    pub fn cell_measure(&self) -> f64 {
        self.dxi.powi(self.dim() as i32)
    }

    /// Half-width of the frequency window, `1/(2h)`.
    pub fn nyquist(&self) -> f64 {
        0.5 / self.space_h
    }

    pub fn frequency(&self, flat: usize) -> Vec<f64> {
        let mut xi = vec![0.0; self.dim()];
        self.frequency_into(flat, &mut xi);
        xi
    }

    pub fn frequency_into(&self, mut flat: usize, out: &mut [f64]) {
        for k in (0..self.dim()).rev() {
            let m = self.shape[k];
            let j = flat % m;
            flat /= m;
            out[k] = (j as f64 - (m / 2) as f64) * self.dxi;
        }
    }

    /// `Δξ^d Σ w(ξ_k) |F_k|²`.
    pub fn weighted_energy<W: FnMut(&[f64]) -> f64>(&self, mut w: W) -> f64 {
        let mut xi = vec![0.0; self.dim()];
        let mut acc = 0.0;
        for (i, v) in self.values.iter().enumerate() {
            self.frequency_into(i, &mut xi);
            acc += w(&xi) * v.norm_sqr();
        }
        acc * self.cell_measure()
    }

    /// The spectrum as a grid function whose cells are centered on the
    /// frequencies, for rearrangement and serialization.
    pub fn as_grid(&self) -> GridFunction {
        let offset = self
            .shape
            .iter()
            .map(|&m| -((m / 2) as f64) * self.dxi - self.dxi / 2.0)
            .collect();
        GridFunction::new(self.dxi, offset, self.shape.clone(), self.values.clone()).expect("valid geometry")
    }

    /// Replaces the values, keeping the geometry.
    pub fn with_values(&self, values: Vec<Complex64>) -> Result<Spectrum> {
        if values.len() != self.values.len() {
            return Err(Error::invalid("value count does not match the spectrum"));
        }
        Ok(Spectrum { values, ..self.clone() })
    }

    /// Whether two spectra live on the same frequency grid.
    pub fn same_grid(&self, other: &Spectrum) -> bool {
        self.shape == other.shape && (self.dxi - other.dxi).abs() <= 1e-12 * self.dxi
    }
}

/// Per-axis transform plans.
struct Plans {
    forward: Vec<Arc<dyn Fft<f64>>>,
    inverse: Vec<Arc<dyn Fft<f64>>>,
}

impl Plans {
    fn new(shape: &[usize]) -> Self {
        let mut planner = FftPlanner::new();
        Plans {
            forward: shape.iter().map(|&n| planner.plan_fft_forward(n)).collect(),
            inverse: shape.iter().map(|&n| planner.plan_fft_inverse(n)).collect(),
        }
    }
}

/// In-place multidimensional FFT over a row-major array.
fn fft_nd(data: &mut [Complex64], shape: &[usize], plans: &[Arc<dyn Fft<f64>>]) {
    let d = shape.len();
    let mut line = Vec::new();
    for axis in 0..d {
        let n = shape[axis];
        let stride: usize = shape[axis + 1..].iter().product();
        let outer: usize = shape[..axis].iter().product();
        line.resize(n, Complex64::new(0.0, 0.0));
        let plan = &plans[axis];
        let mut scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
        for o in 0..outer {
            for s in 0..stride {
                let base = o * n * stride + s;
                for (j, slot) in line.iter_mut().enumerate() {
                    *slot = data[base + j * stride];
                }
                plan.process_with_scratch(&mut line, &mut scratch);
                for (j, v) in line.iter().enumerate() {
                    data[base + j * stride] = *v;
                }
            }
        }
    }
}

/// Cyclic shift by `m/2` on every axis (index `k mod M` ↔ centered position).
fn center_shift(data: &[Complex64], shape: &[usize], inverse: bool) -> Vec<Complex64> {
    let d = shape.len();
    let mut out = vec![Complex64::new(0.0, 0.0); data.len()];
    let mut idx = vec![0usize; d];
    for (flat, v) in data.iter().enumerate() {
        let mut rest = flat;
        for k in (0..d).rev() {
            idx[k] = rest % shape[k];
            rest /= shape[k];
        }
        let mut dst = 0;
        for k in 0..d {
            let m = shape[k];
            let half = m / 2;
            let j = if inverse {
                (idx[k] + m - half) % m
            } else {
                (idx[k] + half) % m
            };
            dst = dst * m + j;
        }
        out[dst] = *v;
    }
    out
}

/// Phase `e^{∓2πi⟨o + h/2, ξ_k⟩}` for every centered frequency.
fn corner_phase(spec: &Spectrum, sign: f64) -> Vec<Complex64> {
    let shift: Vec<f64> = spec.space_offset.iter().map(|o| o + spec.space_h / 2.0).collect();
    let mut xi = vec![0.0; spec.dim()];
    (0..spec.len())
        .map(|i| {
            spec.frequency_into(i, &mut xi);
            let p: f64 = xi.iter().zip(&shift).map(|(a, b)| a * b).sum();
            Complex64::from_polar(1.0, sign * 2.0 * PI * p)
        })
        .collect()
}

/// Transform on the grid as given, with no padding. Every axis must have the
/// same number of cells so that Δξ is common.
pub fn dft(f: &GridFunction) -> Result<Spectrum> {
    let shape = f.shape().to_vec();
    if shape.iter().any(|&n| n != shape[0]) {
        return Err(Error::invalid(format!(
            "transform needs equal axis lengths, got {shape:?}"
        )));
    }
    let plans = Plans::new(&shape);
    let mut data = f.values().to_vec();
    fft_nd(&mut data, &shape, &plans.forward);
    let centered = center_shift(&data, &shape, false);
    let m0 = shape[0] as f64;
    let mut spec = Spectrum {
        dxi: 1.0 / (m0 * f.h()),
        shape,
        values: centered,
        space_h: f.h(),
        space_offset: f.offset().to_vec(),
    };
    let scale = f.cell_measure();
    let phase = corner_phase(&spec, -1.0);
    for (v, p) in spec.values.iter_mut().zip(phase) {
        *v *= p * scale;
    }
    Ok(spec)
}

fn next_pow2(n: usize) -> Result<usize> {
    n.checked_next_power_of_two()
        .ok_or_else(|| Error::Resource(format!("cannot pad {n} cells to a power of two")))
}

/// Pads every axis to `next_pow2(factor · n)` cells, keeping the function
/// centered, and requires a common length so Δξ is the same on every axis.
pub fn pad_for_transform(f: &GridFunction, factor: usize) -> Result<GridFunction> {
    if factor == 0 {
        return Err(Error::invalid("padding factor must be at least 1"));
    }
    let target = f
        .shape()
        .iter()
        .map(|&n| {
            n.checked_mul(factor)
                .ok_or_else(|| Error::Resource("grid too large".into()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap();
    let m = next_pow2(target)?;
    if m.checked_pow(f.dim() as u32).is_none_or(|t| t > 1 << 28) {
        return Err(Error::Resource(format!("padded grid {m}^{} is too large", f.dim())));
    }
    f.pad_to(&vec![m; f.dim()])
}

/// Forward transform after padding to a common power-of-two length.
pub fn forward_transform(f: &GridFunction) -> Result<Spectrum> {
    forward_transform_padded(f, 1)
}

/// Forward transform after padding by `factor` and rounding up to a power of
/// two; inequality checks use `factor = 2`.
pub fn forward_transform_padded(f: &GridFunction, factor: usize) -> Result<Spectrum> {
    dft(&pad_for_transform(f, factor)?)
}

/// Inverse of [`dft`]; returns the function on the (possibly padded) grid the
/// spectrum came from.
pub fn inverse_transform(spec: &Spectrum) -> GridFunction {
    let shape = spec.shape.clone();
    let phase = corner_phase(spec, 1.0);
    let scaled: Vec<Complex64> = spec.values.iter().zip(&phase).map(|(v, p)| v * p).collect();
    let mut data = center_shift(&scaled, &shape, true);
    let plans = Plans::new(&shape);
    fft_nd(&mut data, &shape, &plans.inverse);
    let scale = spec.cell_measure();
    for v in &mut data {
        *v *= scale;
    }
    GridFunction::new(spec.space_h, spec.space_offset.clone(), shape, data).expect("valid geometry")
}

fn check_window(spec: &Spectrum, kernel: &KernelSpec) -> Result<()> {
    if kernel.d != spec.dim() {
        return Err(Error::invalid("kernel dimension differs from the spectrum's"));
    }
    let reach = kernel.center.iter().map(|a| a.abs()).fold(0.0, f64::max) + kernel.omega;
    let limit = spec.nyquist() / 2.0;
    if reach > limit {
        return Err(Error::range(format!(
            "kernel reaches |ξ| = {reach} but aliasing-free content ends at {limit}"
        )));
    }
    Ok(())
}

/// `Ω^{-d} Σ_k F_k (1 - |ξ_k - a|²/Ω²)_+^α e^{2πi⟨x, ξ_k⟩} Δξ^d`.
pub fn bochner_riesz_functional(spec: &Spectrum, kernel: &KernelSpec, x: &[f64]) -> Result<Complex64> {
    check_window(spec, kernel)?;
    if x.len() != spec.dim() {
        return Err(Error::invalid("evaluation point has the wrong dimension"));
    }
    let mut xi = vec![0.0; spec.dim()];
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, v) in spec.values.iter().enumerate() {
        spec.frequency_into(i, &mut xi);
        let m = kernel.multiplier(&xi);
        if m == 0.0 {
            continue;
        }
        let p: f64 = xi.iter().zip(x).map(|(a, b)| a * b).sum();
        acc += v * m * Complex64::from_polar(1.0, 2.0 * PI * p);
    }
    Ok(acc * spec.cell_measure() / kernel.omega.powi(spec.dim() as i32))
}

/// The same functional evaluated in space:
/// `Σ_i h^d f_i m̂_α(Ω(t_i - x)) e^{-2πi⟨a, t_i - x⟩}`, exact for the
/// point-mass model of `f`.
pub fn bochner_riesz_spatial(f: &GridFunction, kernel: &KernelSpec, x: &[f64]) -> Result<Complex64> {
    if kernel.d != f.dim() || x.len() != f.dim() {
        return Err(Error::invalid("dimension mismatch"));
    }
    let mut t = vec![0.0; f.dim()];
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, v) in f.values().iter().enumerate() {
        if *v == Complex64::new(0.0, 0.0) {
            continue;
        }
        f.center_into(i, &mut t);
        let mut r2 = 0.0;
        let mut p = 0.0;
        for k in 0..f.dim() {
            let dt = t[k] - x[k];
            r2 += dt * dt;
            p += kernel.center[k] * dt;
        }
        let k_hat = m_alpha_hat(kernel.omega * r2.sqrt(), kernel);
        acc += v * k_hat * Complex64::from_polar(1.0, -2.0 * PI * p);
    }
    Ok(acc * f.cell_measure())
}
