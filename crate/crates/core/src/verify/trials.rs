//! Seeded random trial families.
//!
//! Trial `k` of a family draws from a ChaCha8 stream selected by `k` under
//! the family seed, so any trial can be replayed alone and parallel runs
//! give the same results as serial ones.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridFunction;

/// Shapes of random test functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    /// Indicator of a union of one to three boxes.
    IndicatorUnion,
    /// Complex values, constant on blocks of 4 cells per axis, on a random
    /// sub-box.
    RandomStep,
    /// One to three complex Gaussians, resolved by the grid.
    GaussianMix,
    /// A `C²` bump times a plane wave inside the alias-free window.
    ModulatedBump,
}

impl Generator {
    pub const ALL: [Generator; 4] = [
        Generator::IndicatorUnion,
        Generator::RandomStep,
        Generator::GaussianMix,
        Generator::ModulatedBump,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::IndicatorUnion => "indicator-union",
            Generator::RandomStep => "random-step",
            Generator::GaussianMix => "gaussian-mix",
            Generator::ModulatedBump => "modulated-bump",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown generator {s:?}")))
    }
}

/// A reproducible family of `count` random grid functions on the symmetric
/// box with `n` cells of size `h` per axis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialFamily {
    pub generator: Generator,
    pub dim: usize,
    pub n: usize,
    pub h: f64,
    pub seed: u64,
    pub count: usize,
}

impl TrialFamily {
    pub fn new(generator: Generator, dim: usize, n: usize, h: f64, seed: u64, count: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        if n < 32 || !n.is_power_of_two() {
            return Err(Error::invalid(format!(
                "cells per axis must be a power of two of at least 32, got {n}"
            )));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::invalid(format!("cell size must be positive, got {h}")));
        }
        Ok(TrialFamily {
            generator,
            dim,
            n,
            h,
            seed,
            count,
        })
    }

    /// The box `[-4, 4)^d` with 256 cells per axis in one dimension and 128
    /// in higher dimensions.
    pub fn standard(generator: Generator, dim: usize, seed: u64, count: usize) -> Result<Self> {
        let n = if dim == 1 { 256 } else { 128 };
        Self::new(generator, dim, n, 8.0 / n as f64, seed, count)
    }

    /// Side length of the box.
    pub fn side(&self) -> f64 {
        self.n as f64 * self.h
    }

    /// `1/(4h)`, the edge of the alias-free frequency window once the grid
    /// is padded to twice its length.
    pub fn window(&self) -> f64 {
        0.25 / self.h
    }

    /// The random stream of trial `trial`.
    pub fn rng(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        rng
    }

    /// The first function drawn in trial `trial`.
    pub fn generate(&self, trial: usize) -> GridFunction {
        self.draw(&mut self.rng(trial))
    }

    /// Draws one function from `rng`.
    pub fn draw(&self, rng: &mut ChaCha8Rng) -> GridFunction {
        match self.generator {
            Generator::IndicatorUnion => self.indicator_union(rng),
            Generator::RandomStep => self.random_step(rng),
            Generator::GaussianMix => self.gaussian_mix(rng),
            Generator::ModulatedBump => self.modulated_bump(rng),
        }
    }

    /// Runs `body(trial, rng)` for every trial in parallel and returns the
    /// results in trial order.
    pub fn map<T, F>(&self, body: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize, &mut ChaCha8Rng) -> T + Sync,
    {
        (0..self.count)
            .into_par_iter()
            .map(|trial| body(trial, &mut self.rng(trial)))
            .collect()
    }

    fn empty(&self) -> GridFunction {
        GridFunction::symmetric(&vec![self.n; self.dim], self.h).expect("validated geometry")
    }

    fn indicator_union(&self, rng: &mut ChaCha8Rng) -> GridFunction {
        let side = self.side();
        let boxes: Vec<Vec<(f64, f64)>> = (0..rng.random_range(1..=3))
            .map(|_| {
                (0..self.dim)
                    .map(|_| {
                        let w = rng.random_range(side / 16.0..side / 4.0);
                        let lo = rng.random_range(-side / 2.0..side / 2.0 - w);
                        (lo, lo + w)
                    })
                    .collect()
            })
            .collect();
        let mut f = self.empty();
        f.fill_with(|x| {
            let inside = boxes
                .iter()
                .any(|b| b.iter().zip(x).all(|(&(lo, hi), &t)| t >= lo && t < hi));
            Complex64::new(if inside { 1.0 } else { 0.0 }, 0.0)
        });
        f
    }

    fn random_step(&self, rng: &mut ChaCha8Rng) -> GridFunction {
        const BLOCK: usize = 4;
        let blocks = self.n / BLOCK;
        let (lo, hi): (Vec<usize>, Vec<usize>) = (0..self.dim)
            .map(|_| {
                let len = rng.random_range(blocks / 4..=blocks / 2);
                let start = rng.random_range(0..=blocks - len);
                (start, start + len)
            })
            .unzip();
        let values: Vec<Complex64> = (0..blocks.pow(self.dim as u32))
            .map(|_| Complex64::from_polar(rng.random::<f64>(), rng.random_range(0.0..2.0 * PI)))
            .collect();
        let mut f = self.empty();
        let shape = f.shape().to_vec();
        for (flat, v) in f.values_mut().iter_mut().enumerate() {
            let mut rest = flat;
            let mut block = 0;
            let mut stride = 1;
            let mut inside = true;
            for k in (0..shape.len()).rev() {
                let b = (rest % shape[k]) / BLOCK;
                rest /= shape[k];
                inside &= b >= lo[k] && b < hi[k];
                block += b * stride;
                stride *= blocks;
            }
            *v = if inside {
                values[block]
            } else {
                Complex64::new(0.0, 0.0)
            };
        }
        f
    }

    /// Widths `e^{-πa|x|²}` with `a ∈ [1/2, 2]`, the feature scale of the
    /// calibration Gaussians, capped at `1/(64h²)` so the spectrum stays
    /// below `e^{-8π}` at the window edge; centers within an eighth of the
    /// box keep the truncation at the boundary small.
    fn gaussian_mix(&self, rng: &mut ChaCha8Rng) -> GridFunction {
        let a_hi = (1.0 / (64.0 * self.h * self.h)).min(2.0);
        let a_lo = a_hi.min(1.0) / 2.0;
        let reach = self.side() / 8.0;
        let terms: Vec<(Vec<f64>, f64, Complex64)> = (0..rng.random_range(1..=3))
            .map(|_| {
                let c = (0..self.dim).map(|_| rng.random_range(-reach..reach)).collect();
                let a = rng.random_range(a_lo..=a_hi);
                let amp = Complex64::from_polar(rng.random_range(0.2..1.0), rng.random_range(0.0..2.0 * PI));
                (c, a, amp)
            })
            .collect();
        let mut f = self.empty();
        f.fill_with(|x| {
            terms
                .iter()
                .map(|(c, a, amp)| {
                    let r2: f64 = x.iter().zip(c).map(|(x, c)| (x - c) * (x - c)).sum();
                    amp * (-PI * a * r2).exp()
                })
                .sum()
        });
        f
    }

    fn modulated_bump(&self, rng: &mut ChaCha8Rng) -> GridFunction {
        let side = self.side();
        let r = rng.random_range(side / 8.0..side / 4.0);
        let c: Vec<f64> = (0..self.dim)
            .map(|_| rng.random_range(-side / 8.0..side / 8.0))
            .collect();
        let top = self.window() / 2.0;
        let freq: Vec<f64> = (0..self.dim).map(|_| rng.random_range(-top..top)).collect();
        let mut f = self.empty();
        f.fill_with(|x| {
            let r2: f64 = x.iter().zip(&c).map(|(x, c)| (x - c) * (x - c)).sum::<f64>() / (r * r);
            if r2 >= 1.0 {
                return Complex64::new(0.0, 0.0);
            }
            let phase: f64 = x.iter().zip(&freq).map(|(x, a)| x * a).sum();
            Complex64::from_polar((1.0 - r2).powi(3), 2.0 * PI * phase)
        });
        f
    }
}

/// A random union of one to three boxes in frequency space, inside the
/// window `[-w, w]^d`, as an indicator on cells of size `w/16`.
///
/// With the window of a [`TrialFamily`] the cells are a whole number of
/// frequency steps wide, so every cell holds the same number of frequencies.
pub fn random_sigma(rng: &mut ChaCha8Rng, dim: usize, w: f64) -> GridFunction {
    let cell = w / 16.0;
    let boxes: Vec<Vec<(i64, i64)>> = (0..rng.random_range(1..=3))
        .map(|_| {
            (0..dim)
                .map(|_| {
                    let half = rng.random_range(1..=4);
                    let center = rng.random_range(-8 + half..=8 - half);
                    (center - half, center + half)
                })
                .collect()
        })
        .collect();
    GridFunction::symmetric_from_fn(&vec![32; dim], cell, |xi| {
        let inside = boxes.iter().any(|b| {
            b.iter().zip(xi).all(|(&(lo, hi), &x)| {
                let k = (x / cell).floor() as i64;
                k >= lo && k < hi
            })
        });
        Complex64::new(if inside { 1.0 } else { 0.0 }, 0.0)
    })
    .expect("valid geometry")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trials_replay_from_seed() {
        for g in Generator::ALL {
            let fam = TrialFamily::standard(g, 2, 11, 4).unwrap();
            let again = TrialFamily::standard(g, 2, 11, 4).unwrap();
            assert_eq!(fam.generate(3), again.generate(3));
            assert_ne!(fam.generate(2), fam.generate(3));
            assert!(fam.generate(0).norm(2.0) > 0.0);
        }
    }

    #[test]
    fn parallel_map_keeps_order() {
        let fam = TrialFamily::standard(Generator::RandomStep, 1, 5, 16).unwrap();
        let par = fam.map(|_, rng| fam.draw(rng));
        let ser: Vec<_> = (0..16).map(|k| fam.generate(k)).collect();
        assert_eq!(par, ser);
    }

    #[test]
    fn generator_names_round_trip() {
        for g in Generator::ALL {
            assert_eq!(g.name().parse::<Generator>().unwrap(), g);
            assert_eq!(serde_json::to_string(&g).unwrap(), format!("\"{}\"", g.name()));
        }
        assert!("nope".parse::<Generator>().is_err());
    }

    #[test]
    fn sigma_lies_inside_the_window() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let s = random_sigma(&mut rng, 2, 2.0);
            assert!(s.support_measure() > 0.0);
            for (i, v) in s.values().iter().enumerate() {
                if v.re != 0.0 {
                    assert!(s.center(i).iter().all(|c| c.abs() < 1.0));
                }
            }
        }
    }

    #[test]
    fn bad_geometry_is_rejected() {
        assert!(TrialFamily::new(Generator::GaussianMix, 1, 48, 0.1, 0, 1).is_err());
        assert!(TrialFamily::new(Generator::GaussianMix, 0, 64, 0.1, 0, 1).is_err());
    }
}
