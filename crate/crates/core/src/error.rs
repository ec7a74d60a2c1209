use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("grid of {points} points is too small for a {what}")]
    GridTooSmall { what: &'static str, points: usize },

    #[error("mismatched grids: {0}")]
    GridMismatch(String),

    #[error("non-finite value encountered in {context} at x = {x}")]
    NonFinite { context: &'static str, x: f64 },

    #[error("quadrature did not reach tolerance {tol:e} (last error estimate {estimate:e}) within {evaluations} evaluations")]
    QuadratureBudget {
        tol: f64,
        estimate: f64,
        evaluations: usize,
    },

    #[error(
        "homotopy series diverged: sup-norm grew for 3 consecutive orders ending at mu = {mu}"
    )]
    Divergence { mu: usize },

    #[error("convergence criterion not satisfied: |1 - int K(y,y) dy| = {value} > 1")]
    ConvergenceCriterion { value: f64 },

    #[error("singular dissolvent: |Q| = {q:e} after {mu} iterations")]
    SingularDissolvent { q: f64, mu: usize },

    #[error("evaluation window is empty: {0}")]
    EmptyWindow(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("ODE integration blew up at x = {x}")]
    OdeBlowUp { x: f64 },
}
