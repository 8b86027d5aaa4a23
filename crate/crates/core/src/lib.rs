//! Spectral numerics for oscillators on flat and hyperbolic space.
//!
//! The crate covers the light-front holographic oscillator and its
//! supersymmetric factorization, the Higgs oscillator on the hyperbolic
//! plane (reduced to a Pöschl-Teller II problem), the contraction limits
//! connecting the two, proton charge form factors from Hankel and
//! Fourier-Helgason transforms, and a trigonometric Rosen-Morse comparator.
//!
//! Units: ħ = 1, 2μ = 1, lengths in fm, squared energies in fm⁻².
//!
//! ```
//! use curvedspec::lfh::{lfh_energy_sq, ModelParams};
//!
//! let p = ModelParams::new(2.14, 0.728).unwrap();
//! assert!((lfh_energy_sq(0, 1, &p) - 8.0 * 2.14 * 2.14).abs() < 1e-12);
//! ```

pub mod eigen;
pub mod error;
pub mod formfactor;
pub mod hyperbolic;
pub mod lfh;
pub mod limits;
pub mod quad;
pub mod rosenmorse;
pub mod specfun;
pub mod wave;

pub use error::{Error, Result};

/// ħc in GeV·fm, used to convert momenta between GeV and fm⁻¹.
pub const HBAR_C_GEV_FM: f64 = 0.1973269804;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/special-functions.md")]
    mod special_functions {}
    #[doc = include_str!("../../../book/src/lfh.md")]
    mod lfh {}
    #[doc = include_str!("../../../book/src/hyperbolic.md")]
    mod hyperbolic {}
    #[doc = include_str!("../../../book/src/limits.md")]
    mod limits {}
    #[doc = include_str!("../../../book/src/form-factors.md")]
    mod form_factors {}
    #[doc = include_str!("../../../book/src/rosen-morse.md")]
    mod rosen_morse {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
