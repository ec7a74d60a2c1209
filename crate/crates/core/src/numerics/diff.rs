use serde::Serialize;

use crate::numerics::{GridFunction, Sample};
use crate::{Error, Result};

/// Description of the finite-difference stencil used for a derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Stencil {
    pub derivative: usize,
    /// Truncation order in the grid step (interior and boundary alike).
    pub accuracy: usize,
    /// Points in the centered interior stencil.
    pub interior_width: usize,
    /// Points in the one-sided boundary stencils.
    pub boundary_width: usize,
}

struct Weights {
    centered: &'static [f64],
    // (offset of the first point relative to the target node, weights)
    left: &'static [(isize, &'static [f64])],
    min_points: usize,
}

const FIRST: Weights = Weights {
    centered: &[-0.5, 0.0, 0.5],
    left: &[(0, &[-1.5, 2.0, -0.5])],
    min_points: 3,
};
const SECOND: Weights = Weights {
    centered: &[1.0, -2.0, 1.0],
    left: &[(0, &[2.0, -5.0, 4.0, -1.0])],
    min_points: 4,
};
const THIRD: Weights = Weights {
    centered: &[-0.5, 1.0, 0.0, -1.0, 0.5],
    left: &[
        (0, &[-2.5, 9.0, -12.0, 7.0, -1.5]),
        (-1, &[-1.5, 5.0, -6.0, 3.0, -0.5]),
    ],
    min_points: 5,
};
const FOURTH: Weights = Weights {
    centered: &[1.0, -4.0, 6.0, -4.0, 1.0],
    left: &[
        (0, &[3.0, -14.0, 26.0, -24.0, 11.0, -2.0]),
        (-1, &[2.0, -9.0, 16.0, -14.0, 6.0, -1.0]),
    ],
    min_points: 6,
};

fn weights(order: usize) -> Result<&'static Weights> {
    match order {
        1 => Ok(&FIRST),
        2 => Ok(&SECOND),
        3 => Ok(&THIRD),
        4 => Ok(&FOURTH),
        _ => Err(Error::Domain(format!(
            "unsupported derivative order {order}"
        ))),
    }
}

/// Stencil metadata for a derivative of the given order.
pub fn stencil(order: usize) -> Result<Stencil> {
    let w = weights(order)?;
    Ok(Stencil {
        derivative: order,
        accuracy: 2,
        interior_width: w.centered.len(),
        boundary_width: w.left.iter().map(|(_, c)| c.len()).max().unwrap_or(0),
    })
}

/// Second-order accurate derivative of order 1–4.
///
/// Centered stencils in the interior, one-sided stencils of the same
/// accuracy near the ends.
pub fn differentiate<T: Sample>(f: &GridFunction<T>, order: usize) -> Result<GridFunction<T>> {
    let w = weights(order)?;
    let n = f.len();
    if n < w.min_points {
        return Err(Error::GridTooSmall {
            what: "finite-difference stencil",
            points: n,
        });
    }
    let v = f.values();
    let scale = f.step().powi(order as i32).recip();
    let half = w.centered.len() / 2;
    let mirror = if order.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut out = vec![T::zero(); n];

    for (i, slot) in out.iter_mut().enumerate().take(n - half).skip(half) {
        let mut acc = T::zero();
        for (k, &c) in w.centered.iter().enumerate() {
            if c != 0.0 {
                acc = acc + v[i + k - half] * c;
            }
        }
        *slot = acc * scale;
    }
    for (j, &(offset, coeffs)) in w.left.iter().enumerate() {
        let mut lo = T::zero();
        let mut hi = T::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            let d = (j as isize + offset + k as isize) as usize;
            lo = lo + v[d] * c;
            hi = hi + v[n - 1 - d] * (c * mirror);
        }
        out[j] = lo * scale;
        out[n - 1 - j] = hi * scale;
    }
    GridFunction::new(*f.grid(), out)
}
