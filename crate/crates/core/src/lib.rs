//! Heat-flow monotonicity of sharp convolution functionals on a uniform 1-D grid.
//!
//! Densities are sampled on [`Grid`]s, evolved by the exact heat semigroup
//! ([`HeatInput`]), combined by linear convolution or sup-convolution, and fed
//! to the functionals Psi, Lambda, Upsilon, Phi and Gamma whose traces should
//! be monotone in time with closed-form limits.

pub mod convolution;
pub mod error;
pub mod exponents;
pub mod functionals;
pub mod grid;
pub mod heat;
pub mod verification;

#[cfg(feature = "cli")]
pub mod cli;

pub use convolution::{
    convolve, convolve_n, fourier_transform, power, sup_convolution_pair, sup_convolve_n, w_of_t,
    SpectralFunction,
};
pub use error::{Error, Result};
pub use exponents::{
    dual_exponent, dual_sharp_constant, sharp_constant, young_constant, ExponentSystem, Regime,
};
pub use functionals::{Functional, FunctionalTrace, Problem};
pub use grid::{DensityStats, Grid, GridFunction};
pub use heat::{HeatInput, TimeGrid};
