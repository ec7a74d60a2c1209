use std::path::Path;

use anyhow::{Context, Result};
use splab::eigencount::{
    check_single_soliton, count_bound_states, count_bound_states_fn, poschl_teller,
    BoundStateCount, EigencountConfig, PotentialSign, DECAY_THRESHOLD, MARGINAL_WIDTH,
};
use splab::{GridFunction, Interval, UniformGrid};

use super::solution_params;
use crate::args::{CountArgs, PotentialSignArg};
use crate::output::{grid_value, usage, Run, Table};

/// Reads `x,u` samples, insisting on a strictly increasing uniform grid.
fn read_potential(path: &Path) -> Result<GridFunction> {
    let mut rdr =
        csv::Reader::from_path(path).with_context(|| format!("opening {}", path.display()))?;
    let headers: Vec<String> = rdr
        .headers()?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    if headers != ["x", "u"] {
        return Err(usage(format!(
            "{}: header must be `x,u`, got {:?}",
            path.display(),
            headers
        )));
    }
    let (mut xs, mut us) = (Vec::new(), Vec::new());
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let parse = |k: usize| -> Result<f64> {
            rec.get(k)
                .and_then(|s| s.trim().parse::<f64>().ok())
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    usage(format!(
                        "{}: bad number on data row {}",
                        path.display(),
                        line + 1
                    ))
                })
        };
        xs.push(parse(0)?);
        us.push(parse(1)?);
    }
    if xs.len() < UniformGrid::MIN_POINTS {
        return Err(usage(format!(
            "{}: need at least {} rows",
            path.display(),
            UniformGrid::MIN_POINTS
        )));
    }
    let n = xs.len();
    let step = (xs[n - 1] - xs[0]) / (n - 1) as f64;
    for (i, w) in xs.windows(2).enumerate() {
        let d = w[1] - w[0];
        if d <= 0.0 {
            return Err(usage(format!(
                "{}: x is not strictly increasing at row {}",
                path.display(),
                i + 2
            )));
        }
        if (d - step).abs() > 1e-6 * step {
            return Err(usage(format!(
                "{}: x spacing is not uniform at row {}",
                path.display(),
                i + 2
            )));
        }
    }
    let grid = UniformGrid::new(xs[0], xs[n - 1], n)?;
    Ok(GridFunction::new(grid, us)?)
}

pub fn run(args: CountArgs) -> Result<()> {
    let c = &args.common;
    let sampled = args.potential.as_deref().map(read_potential).transpose()?;
    let (lo, hi) = match &sampled {
        Some(u) => (u.grid().x_min, u.grid().x_max),
        None => (-25.0, 25.0),
    };
    let lo = c.grid_min.unwrap_or(lo);
    let hi = c.grid_max.unwrap_or(hi);
    let n = c.grid_n.unwrap_or(100_001);
    if n < 2 || !(lo < hi) {
        return Err(usage(
            "count needs --grid-min < --grid-max and --grid-n >= 2",
        ));
    }
    if args.lambda.is_some() && args.well.is_none() {
        return Err(usage("--lambda only applies with --well"));
    }
    if args.stride == 0 {
        return Err(usage("--stride must be positive"));
    }
    let cfg = EigencountConfig {
        c: args.c,
        domain: Interval { lo, hi },
        steps: n - 1,
        sign: match args.sign {
            PotentialSignArg::Attractive => PotentialSign::Attractive,
            PotentialSignArg::Repulsive => PotentialSign::Repulsive,
        },
    };
    cfg.validate().map_err(|e| usage(e.to_string()))?;

    let mut run = Run::new("count", c);
    run.param("c", cfg.c);
    run.param("sign", cfg.sign);
    run.grid = grid_value(lo, hi, n);
    run.tol("marginal_width", MARGINAL_WIDTH);
    run.tol("decay_threshold", DECAY_THRESHOLD);

    let result: BoundStateCount = if let Some(u) = &sampled {
        run.param("source", "potential");
        run.param(
            "potential",
            args.potential.as_ref().map(|p| p.display().to_string()),
        );
        count_bound_states(u, &cfg)?
    } else if args.zero {
        run.param("source", "zero");
        count_bound_states_fn(|_| 0.0, &cfg)?
    } else if args.well.is_some() {
        run.param("source", "poschl-teller");
        let lambda = args.lambda.unwrap_or(1.0);
        run.param("lambda", lambda);
        count_bound_states_fn(poschl_teller(lambda), &cfg)?
    } else {
        let prm = solution_params(&args.params)?;
        run.param("source", "family");
        run.param("solution", prm);
        let chk = check_single_soliton(&prm, &cfg)?;
        run.result("single_bound_state", chk.passed);
        chk.count
    };
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }

    let mut table = Table::new(&["x", "j"]);
    let traj = &result.trajectory;
    let last = traj.len() - 1;
    for i in (0..traj.len()).filter(|&i| i % args.stride == 0 || i == last) {
        table.push(vec![traj.x(i), traj.values()[i]]);
    }
    run.write_table("count.csv", &table)?;

    run.result("count", result.count);
    run.result("j_final", result.j_final);
    run.result("raw_floor", result.raw_floor);
    run.result("marginal", result.marginal);
    run.result("candidates", [result.candidates.0, result.candidates.1]);
    run.result("warnings", &result.warnings);
    println!("A = {}", result.count);
    run.finish()
}
