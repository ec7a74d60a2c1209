//! Shared numerical substrate.

mod diff;
mod gamma;
mod grid;
mod ode;
mod quadrature;

pub use diff::{differentiate, stencil, Stencil};
pub use gamma::{ln_gamma, upper_incomplete_gamma};
pub use grid::{DecayProfile, GridFunction, Interval, Norms, Sample, UniformGrid};
pub use ode::integrate_ode;
pub use quadrature::{cumulative_integral, integrate, simpson_weights, Quadrature};
