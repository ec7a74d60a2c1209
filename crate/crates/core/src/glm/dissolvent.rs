//! Dissolvent (resolvent) kernel `Ξ = P / Q` from the series
//!
//! ```text
//! P = Σ_μ (-ζ)^μ / μ! Λ_μ,   Q = Σ_μ (-ζ)^μ / μ! λ_μ,
//! Λ_0(z,y) = K(z+y),  λ_0 = 1,
//! λ_μ = ∫_l Λ_{μ-1}(z,z) dz,
//! Λ_μ(z,y) = λ_μ K(z+y) - ζ ∫_z^∞ K_{μ-1}(z,s) Λ_{μ-1}(s,y) ds.
//! ```

use std::fmt;

use serde::Serialize;

use crate::glm::{iterated_kernels, KernelGrid, KernelTable, NeumannConfig, SpectralData};
use crate::numerics::{
    simpson_weights, upper_incomplete_gamma, DecayProfile, Interval, Quadrature,
};
use crate::{Error, Result};

/// `|Q|` below this is declared singular.
pub const SINGULAR_Q: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct DissolventState {
    pub lambda: Vec<KernelTable>,
    pub lambda_scalars: Vec<f64>,
    pub p: KernelTable,
    pub q: f64,
}

#[derive(Debug, Clone)]
pub enum DissolventError {
    /// `|Q| < 1e-12`; the partial state is kept for inspection.
    Singular(Box<DissolventState>),
    Failed(Error),
}

impl fmt::Display for DissolventError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Singular(state) => write!(
                f,
                "singular dissolvent: |Q| = {:e} after {} iterations",
                state.q.abs(),
                state.lambda_scalars.len() - 1
            ),
            Self::Failed(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for DissolventError {}

impl From<Error> for DissolventError {
    fn from(e: Error) -> Self {
        Self::Failed(e)
    }
}

impl From<DissolventError> for Error {
    fn from(e: DissolventError) -> Self {
        match e {
            DissolventError::Singular(state) => Error::SingularDissolvent {
                q: state.q,
                mu: state.lambda_scalars.len() - 1,
            },
            DissolventError::Failed(e) => e,
        }
    }
}

pub fn dissolvent_kernel(
    kernel: &KernelTable,
    zeta: f64,
    mu_max: usize,
    l: Interval,
) -> Result<(KernelTable, DissolventState), DissolventError> {
    if !l.is_bounded() {
        return Err(Error::Domain("the dissolvent interval must be bounded".into()).into());
    }
    let grid = *kernel.grid();
    let block = grid.index_range(l)?;
    let diag_weights = simpson_weights(block.clone().count(), grid.step());
    let tail = grid.tail_weights();
    let iterates = if mu_max >= 2 {
        iterated_kernels(kernel, mu_max - 1)?
    } else {
        Vec::new()
    };

    let base = kernel.to_general();
    let mut lambda = vec![base.clone()];
    let mut scalars = vec![1.0];
    let mut p = base.clone();
    let mut q = 1.0;
    let mut coeff = 1.0;

    for mu in 1..=mu_max {
        let prev = &lambda[mu - 1];
        let lam: f64 = block
            .clone()
            .zip(&diag_weights)
            .map(|(i, w)| w * prev.get(i, i))
            .sum();
        // K_{μ-1}: the translation kernel itself for μ = 1.
        let k_prev = if mu == 1 { kernel } else { &iterates[mu - 2] };
        let integral =
            KernelTable::tail_product(|i, s| k_prev.get(i, s), |s, j| prev.get(s, j), grid, &tail)?;
        let next = kernel.to_general().scale(lam).axpy(-zeta, &integral)?;

        coeff *= -zeta / mu as f64;
        p = p.axpy(coeff, &next)?;
        q += coeff * lam;
        scalars.push(lam);
        lambda.push(next);
    }

    let state = DissolventState {
        lambda,
        lambda_scalars: scalars,
        p,
        q,
    };
    if q.abs() < SINGULAR_Q || !q.is_finite() {
        return Err(DissolventError::Singular(Box::new(state)));
    }
    let xi = state.p.scale(1.0 / q);
    Ok((xi, state))
}

/// Which exponential appears in the printed one-iteration expression:
/// `exp(-p² s²)` as printed, or `exp(-p s²)` matching the gamma arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExplicitReading {
    SquaredP,
    LinearP,
}

impl ExplicitReading {
    fn rate(self, p: f64) -> f64 {
        match self {
            Self::SquaredP => p * p,
            Self::LinearP => p,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckReport {
    /// Sample points `(x, y)` with `y > x`.
    pub points: Vec<(f64, f64)>,
    /// `∫_x^∞ Ξ(z,y;1) Γ(1/2, p(x+z)²) dz` with Ξ after one iteration.
    pub dissolvent_integral: Vec<f64>,
    /// First Neumann partial sum σ_1.
    pub sigma1: Vec<f64>,
    pub explicit_squared: Vec<f64>,
    pub explicit_linear: Vec<f64>,
    /// Max mismatches: [dissolvent vs squared, dissolvent vs linear,
    /// σ_1 vs squared, σ_1 vs linear].
    pub max_mismatch: [f64; 4],
    pub best: (ExplicitReading, &'static str),
}

/// The explicit one-iteration expression at `(x, y)` under `reading`.
pub fn explicit_one_iteration(
    x: f64,
    y: f64,
    p: f64,
    q: f64,
    reading: ExplicitReading,
    tol: f64,
) -> Result<f64> {
    let rate = reading.rate(p);
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let s = x + y;
    let g = upper_incomplete_gamma(0.5, p * s * s)?;
    let local = -q * s * g * g + q / (p * sqrt_pi) * g * (-rate * s * s).exp();
    let decay = DecayProfile::new(rate.min(1.0), rate.min(1.0), 1e-14)?;
    let quad = Quadrature::with_tol(tol).with_decay(decay);
    let integral = quad.integrate(
        |z| {
            let zy = z + y;
            let gz = upper_incomplete_gamma(0.5, p * zy * zy).unwrap_or(f64::NAN);
            (-rate * (x + z).powi(2)).exp()
                * (zy * gz - q / (p * sqrt_pi) * (-rate * zy * zy).exp())
        },
        Interval::new(x, f64::INFINITY)?,
    )?;
    Ok(local + 2.0 * q * p / sqrt_pi * integral)
}

/// Compares one dissolvent iteration (ζ = 1) and σ_1 against the printed
/// closed-form expression under both readings. Report only.
pub fn one_iteration_crosscheck(
    p: f64,
    q: f64,
    cfg: &NeumannConfig,
    samples: &[(f64, f64)],
) -> Result<CrosscheckReport> {
    let sd = SpectralData::single(p, q)?;
    let grid: KernelGrid = cfg.grid;
    let kernel = KernelTable::from_spectral(grid, &sd)?;
    let (xi, _) = dissolvent_kernel(&kernel, 1.0, 1, cfg.interval)?;
    let sigma1 = {
        let one = NeumannConfig {
            zeta: 1.0,
            mu_max: 1,
            ..cfg.clone()
        };
        super::neumann::neumann_solve_kernel(&kernel, &one)?
            .sigma
            .remove(0)
    };
    let gamma_sd = SpectralData::single(p, 1.0)?;
    let gamma_table = KernelTable::from_spectral(grid, &gamma_sd)?;
    let tail = grid.tail_weights();
    let uniform = grid.as_uniform();

    let mut report = CrosscheckReport {
        points: Vec::new(),
        dissolvent_integral: Vec::new(),
        sigma1: Vec::new(),
        explicit_squared: Vec::new(),
        explicit_linear: Vec::new(),
        max_mismatch: [0.0; 4],
        best: (ExplicitReading::SquaredP, "dissolvent"),
    };
    for &(x, y) in samples {
        let (Some(i), Some(j)) = (uniform.index_of(x), uniform.index_of(y)) else {
            return Err(Error::Domain(format!(
                "sample ({x}, {y}) is not on the kernel grid"
            )));
        };
        let lhs: f64 = tail[i]
            .iter()
            .enumerate()
            .map(|(off, w)| w * xi.get(i + off, j) * gamma_table.get(i, i + off))
            .sum();
        let sq = explicit_one_iteration(x, y, p, q, ExplicitReading::SquaredP, cfg.tol)?;
        let lin = explicit_one_iteration(x, y, p, q, ExplicitReading::LinearP, cfg.tol)?;
        let s1 = sigma1.get(i, j);
        let m = &mut report.max_mismatch;
        m[0] = m[0].max((lhs - sq).abs());
        m[1] = m[1].max((lhs - lin).abs());
        m[2] = m[2].max((s1 - sq).abs());
        m[3] = m[3].max((s1 - lin).abs());
        report.points.push((x, y));
        report.dissolvent_integral.push(lhs);
        report.sigma1.push(s1);
        report.explicit_squared.push(sq);
        report.explicit_linear.push(lin);
    }
    let labels = [
        (ExplicitReading::SquaredP, "dissolvent"),
        (ExplicitReading::LinearP, "dissolvent"),
        (ExplicitReading::SquaredP, "sigma1"),
        (ExplicitReading::LinearP, "sigma1"),
    ];
    let best = (0..4)
        .min_by(|&a, &b| report.max_mismatch[a].total_cmp(&report.max_mismatch[b]))
        .expect("four candidates");
    report.best = labels[best];
    Ok(report)
}
