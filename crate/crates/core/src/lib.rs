//! Numerical laboratory for the stationary one-dimensional Schrödinger–Poisson
//! system.
//!
//! The crate is organised by procedure:
//!
//! - [`numerics`]: incomplete gamma function, quadrature, finite differences,
//!   fixed-step RK4, and the [`GridFunction`] carrier used everywhere else.
//! - [`ham`]: homotopy series for the uncoupled quartic (Urysohn) equation.
//! - [`glm`]: Gelfand–Levitan–Marchenko kernels with incomplete-gamma
//!   spectral data, Neumann partial sums with Cauchy bounds, the dissolvent
//!   recursion, and potential recovery.
//! - [`family`]: the closed-form parametric soliton family, its dispersion
//!   relation, and residuals against the original system.
//! - [`eigencount`]: bound-state counting through the nonlinear phase ODE.

pub mod eigencount;
pub mod error;
pub mod family;
pub mod glm;
pub mod ham;
pub mod numerics;

pub use error::{Error, Result};
pub use numerics::{DecayProfile, GridFunction, Interval, Norms, UniformGrid};

pub use num_complex::Complex64;
