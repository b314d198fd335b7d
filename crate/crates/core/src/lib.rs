//! Symmetric decreasing rearrangements on grids, the special functions behind
//! Bochner–Riesz kernels, and a harness that checks Fourier rearrangement
//! inequalities numerically.
//!
//! The crate is organised bottom-up:
//!
//! * [`grid`] holds [`GridFunction`], the piecewise-constant function model;
//! * [`rearrange`] builds |φ|*, distribution functions and the 1-D
//!   ⋆-rearrangement;
//! * [`specfun`] evaluates Bessel functions, their zeros and the explicit
//!   constants ε₀, ϑ, υ_d and κ_d;
//! * [`transform`] provides the discrete Fourier transform, radial transforms,
//!   Bochner–Riesz evaluations and the free Schrödinger propagator;
//! * [`verify`] turns each inequality into an [`InequalityReport`].
//!
//! ```
//! use fourier_rearrange::{rearrange, GridFunction};
//! use num_complex::Complex64;
//!
//! let f = GridFunction::symmetric_from_fn(&[8], 0.25, |x| {
//!     Complex64::new(if x[0] > 0.0 { 1.0 } else { 0.0 }, 0.0)
//! })?;
//! let star = rearrange::symmetric_rearrange(&f);
//! assert_eq!(star.norm(1.0), f.norm(1.0));
//! # Ok::<(), fourier_rearrange::Error>(())
//! ```

// `!(x > 0.0)` rejects NaN along with the out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod grid;
pub mod rearrange;
pub mod specfun;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use grid::GridFunction;
pub use rearrange::{DistributionSamples, RadialProfile};
pub use transform::Spectrum;
pub use verify::{InequalityReport, ReportKind};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/rearrangement.md")]
    mod rearrangement {}
    #[doc = include_str!("../../../book/src/bessel.md")]
    mod bessel {}
    #[doc = include_str!("../../../book/src/fourier.md")]
    mod fourier {}
    #[doc = include_str!("../../../book/src/inequalities.md")]
    mod inequalities {}
    #[doc = include_str!("../../../book/src/montgomery.md")]
    mod montgomery {}
    #[doc = include_str!("../../../book/src/schrodinger.md")]
    mod schrodinger {}
}
