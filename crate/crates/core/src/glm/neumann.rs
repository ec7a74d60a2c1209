//! Neumann partial sums of the GLM equation
//! `W(x,y) + K(x+y) + ζ ∫_x^∞ W(x,z) K(z+y) dz = 0`.
//!
//! The partial sums follow the iterated-kernel form
//! `σ_μ(x,y) = Σ_{ν=1}^{μ} ζ^{ν-1} ∫_x^∞ K_ν(z,y) K(x+z) dz` and the
//! approximation `-W = K - ζ σ_μ`. Every run also records the residual of
//! the GLM equation itself, so the quality of that approximation is visible,
//! next to the classical fixed-point iteration
//! `W_{m+1} = -K - ζ ∫_x^∞ W_m(x,z) K(z+y) dz` for comparison.

use serde::Serialize;

use crate::glm::{iterated_kernels, KernelGrid, KernelTable, SpectralData};
use crate::numerics::Interval;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NeumannConfig {
    pub zeta: f64,
    pub mu_max: usize,
    /// Interval of length `l` carrying the bounds; its ends must be grid nodes.
    pub interval: Interval,
    /// `ε = sup |K|` on the interval; measured from the table when `None`.
    pub eps_bound: Option<f64>,
    /// The last per-iteration change must fall below this to report convergence.
    pub tol: f64,
    pub grid: KernelGrid,
}

impl Default for NeumannConfig {
    fn default() -> Self {
        Self {
            zeta: 1.0,
            mu_max: 6,
            interval: Interval { lo: 0.0, hi: 2.0 },
            eps_bound: None,
            tol: 1e-8,
            grid: KernelGrid::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NeumannTrace {
    pub eps: f64,
    /// `‖K‖∞` on the interval.
    pub kernel_norm: f64,
    pub length: f64,
    /// `|ζ| ε l`.
    pub ratio: f64,
    /// `ratio < 1`: the geometric (closed-form) bounds apply.
    pub certified: bool,
    /// `‖σ_ν - σ_{ν-1}‖∞` on the interval block, `ν = 1..=mu_max`.
    pub deltas: Vec<f64>,
    /// `ε ratio^{ν-1} ‖K‖`, the bound on the ν-th term of the sum.
    pub term_bounds: Vec<f64>,
    /// `ε ratio^{ν-1} / (1 - ratio) ‖K‖` when certified.
    pub closed_form_bounds: Vec<Option<f64>>,
    /// `ε ratio^ν ‖W‖`, the envelope of the remainder ρ_ν.
    pub remainder_envelopes: Vec<f64>,
    /// `pairwise[ν][μ] = ‖σ_ν - σ_μ‖∞` for `μ < ν`, with `σ_0 = 0`.
    pub pairwise: Vec<Vec<f64>>,
    /// `‖W_ν + K‖∞ = |ζ| ‖σ_ν‖∞` after each iteration.
    pub deviation: Vec<f64>,
    /// Sup over `y >= x` in the interval block of the GLM equation residual.
    pub glm_residual: f64,
    /// `‖W_m - W_{m-1}‖∞` of the classical iteration, `m = 1..=mu_max`.
    pub classical_deltas: Vec<f64>,
    pub classical_glm_residual: f64,
    pub monotone: bool,
    pub converged: bool,
}

impl NeumannTrace {
    /// `ε Σ_{κ=μ+1}^{ν} ratio^{κ-1} ‖K‖`, valid for every ratio.
    pub fn cauchy_bound(&self, mu: usize, nu: usize) -> f64 {
        (mu + 1..=nu)
            .map(|kappa| self.ratio.powi(kappa as i32 - 1))
            .sum::<f64>()
            * self.eps
            * self.kernel_norm
    }

    /// `ε ratio^μ / (1 - ratio) ‖K‖`; `None` when the ratio is not below one.
    pub fn closed_form_bound(&self, mu: usize) -> Option<f64> {
        self.certified
            .then(|| self.eps * self.ratio.powi(mu as i32) / (1.0 - self.ratio) * self.kernel_norm)
    }
}

#[derive(Debug, Clone)]
pub struct NeumannSolution {
    pub kernel: KernelTable,
    pub w: KernelTable,
    pub w_classical: KernelTable,
    pub sigma: Vec<KernelTable>,
    pub trace: NeumannTrace,
}

/// Builds the kernel of `sd` on `cfg.grid` and sums the Neumann series.
pub fn neumann_solve(sd: &SpectralData, cfg: &NeumannConfig) -> Result<NeumannSolution> {
    let kernel = KernelTable::from_spectral(cfg.grid, sd)?;
    neumann_solve_kernel(&kernel, cfg)
}

pub fn neumann_solve_kernel(kernel: &KernelTable, cfg: &NeumannConfig) -> Result<NeumannSolution> {
    if cfg.zeta.is_nan() || !cfg.zeta.is_finite() {
        return Err(Error::Domain(format!(
            "zeta must be finite, got {}",
            cfg.zeta
        )));
    }
    if cfg.mu_max == 0 {
        return Err(Error::Domain("mu_max must be at least 1".into()));
    }
    let grid = *kernel.grid();
    let block = grid.index_range(cfg.interval)?;
    let weights = grid.tail_weights();

    let kernel_norm = kernel.sup_over(block.clone());
    let eps = cfg.eps_bound.unwrap_or(kernel_norm);
    let length = cfg.interval.length();
    let ratio = cfg.zeta.abs() * eps * length;
    let certified = ratio < 1.0;

    let iterates = iterated_kernels(kernel, cfg.mu_max)?;
    let mut sigma: Vec<KernelTable> = Vec::with_capacity(cfg.mu_max);
    let mut running = KernelTable::zeros(grid);
    for (m, k_nu) in iterates.iter().enumerate() {
        let term = KernelTable::tail_product(
            |i, k| kernel.get(i, k),
            |k, j| k_nu.get(k, j),
            grid,
            &weights,
        )?;
        running = running.axpy(cfg.zeta.powi(m as i32), &term)?;
        sigma.push(running.clone());
    }

    let sup_diff = |a: Option<&KernelTable>, b: &KernelTable| -> f64 {
        let mut sup = 0.0_f64;
        for i in block.clone() {
            for j in block.clone() {
                let av = a.map_or(0.0, |t| t.get(i, j));
                sup = sup.max((b.get(i, j) - av).abs());
            }
        }
        sup
    };

    let mut pairwise = vec![Vec::new(); cfg.mu_max + 1];
    for nu in 1..=cfg.mu_max {
        pairwise[nu] = (0..nu)
            .map(|mu| sup_diff(mu.checked_sub(1).map(|m| &sigma[m]), &sigma[nu - 1]))
            .collect();
    }
    let deltas: Vec<f64> = (1..=cfg.mu_max).map(|nu| pairwise[nu][nu - 1]).collect();
    let deviation: Vec<f64> = sigma
        .iter()
        .map(|s| cfg.zeta.abs() * sup_diff(None, s))
        .collect();

    let w = kernel
        .to_general()
        .axpy(-cfg.zeta, sigma.last().expect("mu_max >= 1"))?
        .scale(-1.0);
    let w_norm = w.sup_over(block.clone());

    let term_bounds = (1..=cfg.mu_max)
        .map(|nu| eps * ratio.powi(nu as i32 - 1) * kernel_norm)
        .collect();
    let closed_form_bounds = (1..=cfg.mu_max)
        .map(|nu| certified.then(|| eps * ratio.powi(nu as i32 - 1) / (1.0 - ratio) * kernel_norm))
        .collect();
    let remainder_envelopes = (1..=cfg.mu_max)
        .map(|nu| eps * ratio.powi(nu as i32) * w_norm)
        .collect();
    let monotone = deltas.windows(2).all(|p| p[1] < p[0]);
    let converged = deltas.last().is_some_and(|&d| d <= cfg.tol);
    let glm_residual = glm_residual(&w, kernel, cfg.zeta, block.clone())?;
    let (w_classical, classical_deltas) =
        classical_iteration(kernel, cfg.zeta, cfg.mu_max, block.clone())?;
    let classical_glm_residual = self::glm_residual(&w_classical, kernel, cfg.zeta, block)?;

    Ok(NeumannSolution {
        kernel: kernel.clone(),
        w,
        w_classical,
        sigma,
        trace: NeumannTrace {
            eps,
            kernel_norm,
            length,
            ratio,
            certified,
            deltas,
            term_bounds,
            closed_form_bounds,
            remainder_envelopes,
            pairwise,
            deviation,
            glm_residual,
            classical_deltas,
            classical_glm_residual,
            monotone,
            converged,
        },
    })
}

/// `W_0 = -K`, `W_{m+1} = -K - ζ ∫_x^∞ W_m(x,z) K(z+y) dz`, `mu_max` times.
/// Returns the last iterate and the sup changes over `block`.
pub fn classical_iteration(
    kernel: &KernelTable,
    zeta: f64,
    mu_max: usize,
    block: std::ops::RangeInclusive<usize>,
) -> Result<(KernelTable, Vec<f64>)> {
    let grid = *kernel.grid();
    let weights = grid.tail_weights();
    let minus_k = kernel.to_general().scale(-1.0);
    let mut w = minus_k.clone();
    let mut deltas = Vec::with_capacity(mu_max);
    for _ in 0..mu_max {
        let tail =
            KernelTable::tail_product(|i, k| w.get(i, k), |k, j| kernel.get(k, j), grid, &weights)?;
        let next = minus_k.axpy(-zeta, &tail)?;
        let mut sup = 0.0_f64;
        for i in block.clone() {
            for j in block.clone() {
                sup = sup.max((next.get(i, j) - w.get(i, j)).abs());
            }
        }
        deltas.push(sup);
        w = next;
    }
    Ok((w, deltas))
}

/// `sup |W(x,y) + K(x+y) + ζ ∫_x^∞ W(x,z) K(z+y) dz|` over `y >= x` in `block`.
pub fn glm_residual(
    w: &KernelTable,
    kernel: &KernelTable,
    zeta: f64,
    block: std::ops::RangeInclusive<usize>,
) -> Result<f64> {
    w.ensure_same_grid(kernel)?;
    let weights = kernel.grid().tail_weights();
    let mut sup = 0.0_f64;
    for i in block.clone() {
        for j in i..=*block.end() {
            let integral: f64 = weights[i]
                .iter()
                .enumerate()
                .map(|(off, wk)| wk * w.get(i, i + off) * kernel.get(i + off, j))
                .sum();
            sup = sup.max((w.get(i, j) + kernel.get(i, j) + zeta * integral).abs());
        }
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> NeumannConfig {
        NeumannConfig {
            grid: KernelGrid::new(0.0, 5.0, 101).unwrap(),
            mu_max: 3,
            ..NeumannConfig::default()
        }
    }

    #[test]
    fn vanishing_zeta_gives_minus_kernel() {
        let sd = SpectralData::single(1.0, 1.0).unwrap();
        let sol = neumann_solve(
            &sd,
            &NeumannConfig {
                zeta: 0.0,
                ..small()
            },
        )
        .unwrap();
        let n = sol.w.grid().n;
        for i in 0..n {
            for j in 0..n {
                assert_eq!(sol.w.get(i, j), -sol.kernel.get(i, j));
            }
        }
        assert!(sol.trace.certified);
    }

    #[test]
    fn zero_norm_gives_zero_w() {
        let sd = SpectralData::single(1.0, 0.0).unwrap();
        let sol = neumann_solve(&sd, &small()).unwrap();
        assert_eq!(sol.w.sup_norm(), 0.0);
        assert!(sol.trace.deltas.iter().all(|&d| d == 0.0));
    }

    #[test]
    fn unit_coupling_is_flagged_uncertified_but_runs() {
        let sd = SpectralData::single(1.0, 1.0).unwrap();
        let sol = neumann_solve(&sd, &small()).unwrap();
        let t = &sol.trace;
        assert!(!t.certified);
        assert!((t.ratio - 2.0 * std::f64::consts::PI.sqrt()).abs() < 1e-12);
        assert!(t.closed_form_bounds.iter().all(Option::is_none));
        assert!(t.closed_form_bound(2).is_none());
    }

    #[test]
    fn misaligned_interval_rejected() {
        let sd = SpectralData::single(1.0, 1.0).unwrap();
        let cfg = NeumannConfig {
            interval: Interval::new(0.0, 2.01).unwrap(),
            ..small()
        };
        assert!(neumann_solve(&sd, &cfg).is_err());
    }

    #[test]
    fn exact_solution_has_small_glm_residual() {
        // For a separable kernel e^{-(x+y)} the GLM equation has the closed
        // form W(x,y) = -e^{-(x+y)} / (1 + ζ e^{-2x}/2).
        let grid = KernelGrid::new(0.0, 15.0, 601).unwrap();
        let zeta = 0.7;
        let k = KernelTable::translation(grid, |s| Ok((-s).exp())).unwrap();
        let w = KernelTable::from_fn(grid, |x, y| {
            -(-(x + y)).exp() / (1.0 + zeta * (-2.0 * x).exp() / 2.0)
        })
        .unwrap();
        let r = glm_residual(&w, &k, zeta, 0..=200).unwrap();
        assert!(r < 1e-7, "{r}");
        let (wc, deltas) = classical_iteration(&k, zeta, 40, 0..=200).unwrap();
        assert!(
            deltas
                .windows(2)
                .filter(|d| d[0] > 1e-13)
                .all(|d| d[1] < d[0]),
            "{deltas:?}"
        );
        assert!(glm_residual(&wc, &k, zeta, 0..=200).unwrap() < 1e-7);
    }
}
