use anyhow::{Context, Result};
use splab::glm::{
    dissolvent_kernel, neumann_solve, recover_potential, residue_constraint, KernelGrid,
    NeumannConfig, SpectralData,
};
use splab::Interval;

use crate::args::GlmArgs;
use crate::output::{grid_value, usage, Run, Table};

/// `8 q √p sgn(x) e^{-4 p x²}`, the potential of `W = -K` for β = 1.
fn reference_u(x: f64, p: f64, q: f64) -> f64 {
    8.0 * q * p.sqrt() * x.signum() * (-4.0 * p * x * x).exp()
}

pub fn run(args: GlmArgs) -> Result<()> {
    let c = &args.common;
    let grid = KernelGrid::new(
        c.grid_min.unwrap_or(0.0),
        c.grid_max.unwrap_or(5.0),
        c.grid_n.unwrap_or(201),
    )
    .map_err(|e| usage(e.to_string()))?;
    let interval = Interval::new(args.l_lo, args.l_hi).map_err(|e| usage(e.to_string()))?;
    let sd = SpectralData::single(args.p, args.q)?.with_beta(args.beta);
    let cfg = NeumannConfig {
        zeta: args.zeta,
        mu_max: args.mu_max,
        interval,
        eps_bound: args.eps_bound,
        tol: c.tol.unwrap_or(1e-8),
        grid,
    };

    let mut run = Run::new("glm", c);
    run.param("p", args.p);
    run.param("q", args.q);
    run.param("beta", args.beta);
    run.param("zeta", args.zeta);
    run.param("mu_max", args.mu_max);
    run.param("interval", interval);
    run.param("eps_bound", args.eps_bound);
    run.param("dissolvent", args.dissolvent);
    run.grid = grid_value(grid.lo, grid.hi, grid.n);
    run.tol("neumann_convergence", cfg.tol);

    let sol = neumann_solve(&sd, &cfg)?;
    let t = &sol.trace;
    if !t.certified {
        eprintln!(
            "warning: |zeta| eps l = {:.6} >= 1; the Neumann series is not certified to converge",
            t.ratio
        );
    }
    let rec = recover_potential(&sol.w)?;
    let rec_classical = recover_potential(&sol.w_classical)?;

    let mut diag = Table::new(&[
        "x",
        "k_diag",
        "w_diag",
        "u",
        "w_classical_diag",
        "u_classical",
    ]);
    let (k_diag, w_diag, wc_diag) = (
        sol.kernel.diagonal(),
        sol.w.diagonal(),
        sol.w_classical.diagonal(),
    );
    for i in 0..grid.n {
        diag.push(vec![
            grid.s(i),
            k_diag[i],
            w_diag[i],
            rec.u.values()[i],
            wc_diag[i],
            rec_classical.u.values()[i],
        ]);
    }
    run.write_table("glm_diagonal.csv", &diag)?;

    let mut trace = Table::new(&[
        "mu",
        "delta",
        "term_bound",
        "closed_form_bound",
        "remainder_envelope",
        "deviation",
        "classical_delta",
    ]);
    for k in 0..args.mu_max {
        trace.rows.push(vec![
            Some((k + 1) as f64),
            Some(t.deltas[k]),
            Some(t.term_bounds[k]),
            t.closed_form_bounds[k],
            Some(t.remainder_envelopes[k]),
            Some(t.deviation[k]),
            Some(t.classical_deltas[k]),
        ]);
    }
    run.write_table("glm_trace.csv", &trace)?;

    let mut worst = 0.0_f64;
    for nu in 1..=args.mu_max {
        for mu in 0..nu {
            let bound = t.cauchy_bound(mu, nu);
            if bound > 0.0 {
                worst = worst.max(t.pairwise[nu][mu] / bound);
            } else if t.pairwise[nu][mu] > 0.0 {
                worst = f64::INFINITY;
            }
        }
    }
    run.result("trace", t);
    run.result("cauchy_worst_ratio", worst);
    run.result("cauchy_respected", worst <= 1.0);
    run.result(
        "recovery",
        serde_json::json!({
            "ftc_mismatch": rec.ftc_mismatch,
            "printed_sign_mismatch": rec.printed_mismatch,
            "kink": rec.kink,
            "classical_ftc_mismatch": rec_classical.ftc_mismatch,
        }),
    );
    if args.beta == 1 && args.zeta == 0.0 {
        let err = rec
            .u
            .iter()
            .filter(|(x, _)| (0.1..=4.0).contains(x))
            .map(|(x, u)| (u - reference_u(x, args.p, args.q)).abs())
            .fold(0.0, f64::max);
        run.result("reference_max_error", err);
    }
    run.result("residue", residue_constraint(&sd));

    if args.dissolvent {
        let mu = args.dissolvent_mu.unwrap_or(args.mu_max);
        let (xi, state) = dissolvent_kernel(&sol.kernel, args.zeta, mu, interval)
            .map_err(splab::Error::from)
            .context("dissolvent recursion")?;
        let mut table = Table::new(&["x", "xi_diag"]);
        for (i, v) in xi.diagonal().into_iter().enumerate() {
            table.push(vec![grid.s(i), v]);
        }
        run.write_table("glm_dissolvent.csv", &table)?;
        run.result(
            "dissolvent",
            serde_json::json!({ "mu_max": mu, "q": state.q, "lambda_scalars": state.lambda_scalars }),
        );
    }
    run.finish()
}
