use anyhow::Result;
use splab::family::{eval_e, eval_psi, potential_phi, residual_report, verify_poisson_identity};

use super::{solution_params, uniform_grid};
use crate::args::FamilyArgs;
use crate::output::{grid_value, Run, Table};

pub fn run(args: FamilyArgs) -> Result<()> {
    let prm = solution_params(&args.params)?;
    let grid = uniform_grid(&args.common, -20.0, 20.0, 4001)?;
    let tol = args.common.tol.unwrap_or(1e-4);

    let mut run = Run::new("family", &args.common);
    run.param("solution", prm);
    run.param("sech_special", args.params.sech_special);
    run.param(
        "omega_source",
        if args.params.omega.is_some() {
            "flag"
        } else {
            "dispersion"
        },
    );
    run.grid = grid_value(grid.x_min, grid.x_max, grid.n);
    run.tol("poisson", tol);
    run.tol("window_floor", splab::family::WINDOW_FLOOR);

    let mut table = Table::new(&["x", "e", "phi", "psi_re", "psi_im", "psi_abs"]);
    for x in grid.points() {
        let psi = eval_psi(x, 0.0, &prm)?;
        table.push(vec![
            x,
            eval_e(x, &prm)?,
            potential_phi(x, &prm)?,
            psi.re,
            psi.im,
            psi.norm(),
        ]);
    }
    run.write_table("family.csv", &table)?;

    let report = residual_report(&prm, grid)?;
    let identity = verify_poisson_identity(&prm, grid)?;
    run.result("omega", prm.omega);
    run.result("residuals", report);
    run.result("poisson_identity_max_error", identity);
    run.result("poisson_within_tol", report.poisson_linf <= tol);
    if args.params.sech_special {
        let amp = prm.amplitude();
        let sign = prm.sign_x.factor();
        let mut dev = 0.0_f64;
        for x in grid.points() {
            let exact = amp / (prm.p * (x + sign * prm.x0)).cosh();
            dev = dev.max((eval_e(x, &prm)? - exact).abs());
        }
        run.result("sech_max_deviation", dev);
    }
    run.finish()
}
