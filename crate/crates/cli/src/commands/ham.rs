use anyhow::Result;
use splab::ham::{ham_solve, residual_quartic, residual_uncoupled, HamConfig};
use splab::{Complex64, Interval};

use super::uniform_grid;
use crate::args::HamArgs;
use crate::output::{grid_value, usage, Run, Table};

pub fn run(args: HamArgs) -> Result<()> {
    let grid = uniform_grid(&args.common, -20.0, 20.0, 4001)?;
    let conver_interval = match (args.conver_lo, args.conver_hi) {
        (None, None) => None,
        (lo, hi) => Some(
            Interval::new(lo.unwrap_or(grid.x_min), hi.unwrap_or(grid.x_max))
                .map_err(|e| usage(e.to_string()))?,
        ),
    };
    let cfg = HamConfig {
        b: Complex64::new(args.b, args.b_im),
        a_width: args.a_width,
        c2: args.c2,
        c4: args.c4,
        mu_max: args.mu_max,
        grid,
        lower_limit: args.lower_limit.unwrap_or(f64::NEG_INFINITY),
        conver_interval,
        allow_unconverged: args.allow_unconverged,
        flip_c2_sign: args.flip_c2_sign,
        tol: args.common.tol.unwrap_or(1e-10),
    };

    let mut run = Run::new("ham", &args.common);
    run.param("a_width", cfg.a_width);
    run.param("b", [cfg.b.re, cfg.b.im]);
    run.param("c2", cfg.c2);
    run.param("c4", cfg.c4);
    run.param("mu_max", cfg.mu_max);
    run.param(
        "lower_limit",
        if cfg.lower_limit.is_finite() {
            Some(cfg.lower_limit)
        } else {
            None
        },
    );
    run.param("conver_interval", cfg.conver_interval);
    run.param("allow_unconverged", cfg.allow_unconverged);
    run.param("flip_c2_sign", cfg.flip_c2_sign);
    run.grid = grid_value(grid.x_min, grid.x_max, grid.n);
    run.tol("quadrature", cfg.tol);
    run.tol("residual_threshold", args.residual_threshold);

    let series = ham_solve(&cfg)?;
    let complex = cfg.b.im != 0.0;
    let m = cfg.mu_max;
    let mut header = vec!["x".to_string()];
    let names: Vec<String> = (0..=m)
        .map(|k| format!("u{k}"))
        .chain((0..=m).map(|k| format!("s{k}")))
        .chain(std::iter::once("sum".to_string()))
        .collect();
    header.extend(names.iter().cloned());
    if complex {
        header.extend(names.iter().map(|n| format!("{n}_im")));
    }
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut table = Table::new(&header_refs);
    let solution = series.solution();
    for i in 0..grid.n {
        let cells: Vec<Complex64> = series
            .terms
            .iter()
            .chain(series.partial_sums.iter())
            .map(|g| g.values()[i])
            .chain(std::iter::once(solution.values()[i]))
            .collect();
        let mut row = vec![grid.x(i)];
        row.extend(cells.iter().map(|z| z.re));
        if complex {
            row.extend(cells.iter().map(|z| z.im));
        }
        table.push(row);
    }
    run.write_table("ham.csv", &table)?;

    run.result("conver_value", series.conver_value);
    run.result("converged", series.converged);
    run.result("criterion_overridden", series.criterion_overridden);
    run.result("sup_norms", &series.sup_norms);
    run.result("residual_quartic", residual_quartic(solution, cfg.b)?);
    match residual_uncoupled(solution, cfg.b, args.residual_threshold) {
        Ok(r) => run.result("residual_uncoupled", r),
        Err(e) => run.result("residual_uncoupled", format!("unavailable: {e}")),
    }
    run.finish()
}
