use serde::Serialize;

use crate::glm::KernelTable;
use crate::numerics::{cumulative_integral, differentiate, GridFunction};
use crate::Result;

/// Potential recovered from the diagonal of `W`.
#[derive(Debug, Clone)]
pub struct Recovery {
    /// `w(x) = 2 W(x, x)`.
    pub w: GridFunction,
    /// `u = w_x`.
    pub u: GridFunction,
    /// `sup |w(x) - w(x_max) + ∫_x^{x_max} u dy|`: zero up to discretisation
    /// error by the fundamental theorem of calculus.
    pub ftc_mismatch: f64,
    /// `sup |w(x) - ∫_x^{x_max} u dy|`, the relation with the opposite sign.
    pub printed_mismatch: f64,
    /// Set when the grid straddles `x = 0`, where `w` has a kink for the
    /// incomplete-gamma kernel.
    pub kink: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SideSummary {
    pub points: usize,
    pub sup: f64,
}

impl Recovery {
    /// `(x, u)` pairs on each side of the kink, dropping the nodes whose
    /// stencil touches it. Without a kink everything lands in `.1`.
    pub fn split(&self) -> (Vec<(f64, f64)>, Vec<(f64, f64)>) {
        let h = self.u.step();
        match self.kink {
            None => (Vec::new(), self.u.iter().collect()),
            Some(k) => {
                let (mut neg, mut pos) = (Vec::new(), Vec::new());
                for (x, v) in self.u.iter() {
                    if x < k - 1.5 * h {
                        neg.push((x, v));
                    } else if x > k + 1.5 * h {
                        pos.push((x, v));
                    }
                }
                (neg, pos)
            }
        }
    }

    pub fn side_summaries(&self) -> (SideSummary, SideSummary) {
        let summarize = |side: &[(f64, f64)]| SideSummary {
            points: side.len(),
            sup: side.iter().fold(0.0, |m, (_, v)| m.max(v.abs())),
        };
        let (neg, pos) = self.split();
        (summarize(&neg), summarize(&pos))
    }
}

pub fn recover_potential(w_table: &KernelTable) -> Result<Recovery> {
    let grid = w_table.grid().as_uniform();
    let w = GridFunction::new(grid, w_table.diagonal().iter().map(|v| 2.0 * v).collect())?;
    let u = differentiate(&w, 1)?;

    let h = grid.step();
    let running = cumulative_integral(u.values(), h);
    let total = *running.last().expect("grid has points");
    let w_end = *w.values().last().expect("grid has points");
    let (mut ftc, mut printed) = (0.0_f64, 0.0_f64);
    for (i, &wi) in w.values().iter().enumerate() {
        let tail = total - running[i];
        ftc = ftc.max((wi - w_end + tail).abs());
        printed = printed.max((wi - tail).abs());
    }
    let kink = (grid.x_min < 0.0 && grid.x_max > 0.0).then_some(0.0);

    Ok(Recovery {
        w,
        u,
        ftc_mismatch: ftc,
        printed_mismatch: printed,
        kink,
    })
}
