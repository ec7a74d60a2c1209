use crate::numerics::{GridFunction, Interval, UniformGrid};
use crate::{Error, Result};

/// Classical fixed-step RK4 for a scalar ODE `y' = rhs(x, y)`.
///
/// Returns the trajectory sampled at the `steps + 1` nodes of `span`.
pub fn integrate_ode(
    rhs: impl Fn(f64, f64) -> f64,
    y0: f64,
    span: Interval,
    steps: usize,
) -> Result<GridFunction> {
    if !span.is_bounded() {
        return Err(Error::Domain("ODE span must be bounded".into()));
    }
    let grid = UniformGrid::new(span.lo, span.hi, (steps + 1).max(UniformGrid::MIN_POINTS))?;
    let h = grid.step();
    let mut ys = Vec::with_capacity(grid.n);
    let mut y = y0;
    ys.push(y);
    for i in 0..grid.n - 1 {
        let x = grid.x(i);
        let k1 = rhs(x, y);
        let k2 = rhs(x + 0.5 * h, y + 0.5 * h * k1);
        let k3 = rhs(x + 0.5 * h, y + 0.5 * h * k2);
        let k4 = rhs(x + h, y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if !y.is_finite() {
            return Err(Error::OdeBlowUp { x: grid.x(i + 1) });
        }
        ys.push(y);
    }
    GridFunction::new(grid, ys)
}
