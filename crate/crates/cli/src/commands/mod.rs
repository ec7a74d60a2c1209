pub mod count;
pub mod dispersion;
pub mod family;
pub mod glm;
pub mod ham;

use anyhow::Result;
use splab::family::{Branch, Sign, SolutionParams};
use splab::UniformGrid;

use crate::args::{BranchArg, Common, FamilyParams, SignArg};
use crate::output::usage;

pub fn uniform_grid(common: &Common, lo: f64, hi: f64, n: usize) -> Result<UniformGrid> {
    let grid = UniformGrid::new(
        common.grid_min.unwrap_or(lo),
        common.grid_max.unwrap_or(hi),
        common.grid_n.unwrap_or(n),
    )
    .map_err(|e| usage(e.to_string()))?;
    Ok(grid)
}

/// Resolves the family flags; `p` and `a` must be present.
pub fn solution_params(fp: &FamilyParams) -> Result<SolutionParams> {
    let (Some(p), Some(a)) = (fp.p, fp.a) else {
        return Err(usage("the soliton family needs both --p and --a"));
    };
    let mut prm = SolutionParams::sech(p, a, fp.b)?;
    prm.q = fp.q;
    prm.c1 = fp.c1;
    prm.c2 = fp.c2;
    prm.x0 = fp.x0;
    if !fp.sech_special {
        prm.xi1 = fp.xi1.unwrap_or(prm.xi1);
        prm.xi2 = fp.xi2.unwrap_or(prm.xi2);
    }
    prm.branch = match fp.branch {
        BranchArg::Xi1 => Branch::Xi1,
        BranchArg::Xi2 => Branch::Xi2,
    };
    let sign = |s: SignArg| match s {
        SignArg::Plus => Sign::Plus,
        SignArg::Minus => Sign::Minus,
    };
    prm.sign_x = sign(fp.sign_x);
    prm.sign_t = sign(fp.sign_t);
    if let Some(w) = fp.omega {
        prm.omega = w;
    }
    prm.validate()?;
    Ok(prm)
}
