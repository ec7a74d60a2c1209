//! Homotopy series for the uncoupled quartic equation `u'''' ≈ b u³`.
//!
//! The Urysohn form keeps only the `C2` and `C4` terms once the initial guess
//! is `sech(a x)`; each correction is
//!
//! ```text
//! u_μ(x) = -b { C2 x²/2 ∫ y Ξ_{μ-1} dy + C4/6 ∫ y³ Ξ_{μ-1} dy },
//! ```
//!
//! with the integrals running from `lower_limit` to `x` and Ξ the cubic
//! deformation constraint of the previous terms.

use num_complex::Complex64;
use serde::Serialize;

use crate::numerics::{
    cumulative_integral, differentiate, stencil, GridFunction, Interval, Norms, Quadrature, Sample,
    Stencil, UniformGrid,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct HamConfig {
    /// Coupling constant; real by default.
    pub b: Complex64,
    /// Width `a` of the initial guess `sech(a x)`.
    pub a_width: f64,
    pub c2: f64,
    pub c4: f64,
    pub mu_max: usize,
    pub grid: UniformGrid,
    /// Lower limit of the running integrals; `-inf` means the left grid edge.
    pub lower_limit: f64,
    /// Interval for the convergence criterion; defaults to the grid span.
    pub conver_interval: Option<Interval>,
    /// Run even when the convergence criterion fails.
    pub allow_unconverged: bool,
    /// Negate the `C2` term (alternative sign reading of the Urysohn form).
    pub flip_c2_sign: bool,
    pub tol: f64,
}

impl Default for HamConfig {
    fn default() -> Self {
        Self {
            b: Complex64::new(0.1, 0.0),
            a_width: 1.0,
            c2: 1.0,
            c4: 1.0,
            mu_max: 4,
            grid: UniformGrid::default_profile(),
            lower_limit: f64::NEG_INFINITY,
            conver_interval: None,
            allow_unconverged: false,
            flip_c2_sign: false,
            tol: 1e-10,
        }
    }
}

impl HamConfig {
    fn c2_signed(&self) -> f64 {
        if self.flip_c2_sign {
            -self.c2
        } else {
            self.c2
        }
    }

    /// Diagonal `K(y, y)` of the separable kernel behind the corrections.
    pub fn kernel_diagonal(&self, y: f64) -> Complex64 {
        -self.b * (y.powi(3) * (0.5 * self.c2_signed() + self.c4 / 6.0))
    }
}

#[derive(Debug, Clone)]
pub struct HamSeries {
    pub terms: Vec<GridFunction<Complex64>>,
    pub partial_sums: Vec<GridFunction<Complex64>>,
    /// Sup norm of each term.
    pub sup_norms: Vec<f64>,
    pub converged: bool,
    /// `|1 - ∫ K(y,y) dy|`.
    pub conver_value: f64,
    /// The criterion failed and the run went ahead anyway.
    pub criterion_overridden: bool,
}

impl HamSeries {
    pub fn solution(&self) -> &GridFunction<Complex64> {
        self.partial_sums.last().expect("series always holds u_0")
    }
}

/// Ξ_μ = Σ_{ν=0}^{μ} u_{μ-ν} Σ_{β=0}^{ν} u_β u_{ν-β}.
pub fn deformation_constraint<T: Sample>(
    terms: &[GridFunction<T>],
    mu: usize,
) -> Result<GridFunction<T>> {
    if terms.len() <= mu {
        return Err(Error::Domain(format!(
            "deformation constraint of order {mu} needs {} terms, got {}",
            mu + 1,
            terms.len()
        )));
    }
    let first = &terms[0];
    for t in &terms[1..=mu] {
        first.ensure_same_grid(t)?;
    }
    let n = first.len();
    let mut out = vec![T::zero(); n];
    for (i, slot) in out.iter_mut().enumerate() {
        let mut outer = T::zero();
        for nu in 0..=mu {
            let mut inner = T::zero();
            for beta in 0..=nu {
                inner = inner + terms[beta].values()[i] * terms[nu - beta].values()[i];
            }
            outer = outer + terms[mu - nu].values()[i] * inner;
        }
        *slot = outer;
    }
    GridFunction::new(*first.grid(), out)
}

/// `(|1 - ∫ K(y,y) dy|, value <= 1)` over a bounded interval.
pub fn convergence_check(
    kernel_diag: impl Fn(f64) -> Complex64,
    interval: Interval,
    tol: f64,
) -> Result<(f64, bool)> {
    if !interval.is_bounded() {
        return Err(Error::Domain(
            "convergence check needs a bounded interval".into(),
        ));
    }
    let quad = Quadrature::with_tol(tol);
    let re = quad.integrate(|y| kernel_diag(y).re, interval)?;
    let im = quad.integrate(|y| kernel_diag(y).im, interval)?;
    let value = (Complex64::new(1.0, 0.0) - Complex64::new(re, im)).norm();
    Ok((value, value <= 1.0))
}

pub fn ham_solve(config: &HamConfig) -> Result<HamSeries> {
    if !(config.a_width > 0.0) {
        return Err(Error::Domain(format!(
            "a_width must be positive, got {}",
            config.a_width
        )));
    }
    let grid = config.grid;
    let lower_index = if config.lower_limit == f64::NEG_INFINITY {
        0
    } else {
        grid.index_of(config.lower_limit).ok_or_else(|| {
            Error::Domain(format!(
                "lower limit {} is not a grid node",
                config.lower_limit
            ))
        })?
    };

    let interval = config.conver_interval.unwrap_or_else(|| grid.interval());
    let (conver_value, converged) =
        convergence_check(|y| config.kernel_diagonal(y), interval, config.tol)?;
    if !converged && !config.allow_unconverged {
        return Err(Error::ConvergenceCriterion {
            value: conver_value,
        });
    }

    let a = config.a_width;
    let u0 = grid.sample(|x| Complex64::new(1.0 / (a * x).cosh(), 0.0));
    let mut terms = vec![u0.clone()];
    let mut partial_sums = vec![u0.clone()];
    let mut sup_norms = vec![u0.sup_norm()];
    let mut increases = 0;

    let h = grid.step();
    let c2 = config.c2_signed();
    for mu in 1..=config.mu_max {
        let xi = deformation_constraint(&terms, mu - 1)?;
        let first_moment: Vec<Complex64> = xi.iter().map(|(y, v)| v * y).collect();
        let third_moment: Vec<Complex64> = xi.iter().map(|(y, v)| v * y.powi(3)).collect();
        let i2 = cumulative_integral(&first_moment, h);
        let i4 = cumulative_integral(&third_moment, h);
        let (base2, base4) = (i2[lower_index], i4[lower_index]);

        let values: Vec<Complex64> = (0..grid.n)
            .map(|i| {
                let x = grid.x(i);
                let bracket =
                    (i2[i] - base2) * (c2 * x * x / 2.0) + (i4[i] - base4) * (config.c4 / 6.0);
                -config.b * bracket
            })
            .collect();
        let term = GridFunction::new(grid, values)?;
        let sum = partial_sums[mu - 1].zip_with(&term, |s, t| s + t)?;

        let norm = term.sup_norm();
        if norm > sup_norms[mu - 1] {
            increases += 1;
            if increases >= 3 {
                return Err(Error::Divergence { mu });
            }
        } else {
            increases = 0;
        }
        sup_norms.push(norm);
        terms.push(term);
        partial_sums.push(sum);
    }

    Ok(HamSeries {
        terms,
        partial_sums,
        sup_norms,
        converged,
        conver_value,
        criterion_overridden: !converged,
    })
}

/// Residual norms over an evaluation window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HamResidual {
    pub norms: Norms,
    pub grid_step: f64,
    pub window: Interval,
    pub points: usize,
    pub stencil: Stencil,
}

/// Pointwise residual of `u'''' = b u³`.
pub fn quartic_residual_values(
    u: &GridFunction<Complex64>,
    b: Complex64,
) -> Result<GridFunction<Complex64>> {
    let u4 = differentiate(u, 4)?;
    u4.zip_with(u, |d4, v| d4 - b * v * v * v)
}

/// Residual of `u'''' - b u³` on the interior (centered-stencil) nodes.
pub fn residual_quartic(u: &GridFunction<Complex64>, b: Complex64) -> Result<HamResidual> {
    let r = quartic_residual_values(u, b)?;
    let n = r.len();
    let range = 2..n - 2;
    Ok(HamResidual {
        norms: r.norms_over(range.clone()),
        grid_step: r.step(),
        window: Interval {
            lo: r.x(range.start),
            hi: r.x(range.end - 1),
        },
        points: range.len(),
        stencil: stencil(4)?,
    })
}

/// Pointwise residual of the fully uncoupled fourth-order equation
///
/// `u'''' - [b|u|²u³ + (u''² + 2u'u''')u - 2u''²u'] / u²`.
pub fn uncoupled_residual_values(
    u: &GridFunction<Complex64>,
    b: Complex64,
) -> Result<GridFunction<Complex64>> {
    let d1 = differentiate(u, 1)?;
    let d2 = differentiate(u, 2)?;
    let d3 = differentiate(u, 3)?;
    let d4 = differentiate(u, 4)?;
    let values = (0..u.len())
        .map(|i| {
            let (v, u1, u2, u3, u4) = (
                u.values()[i],
                d1.values()[i],
                d2.values()[i],
                d3.values()[i],
                d4.values()[i],
            );
            let rhs = (b * v.norm_sqr() * v * v * v + (u2 * u2 + u1 * u3 * 2.0) * v
                - u2 * u2 * u1 * 2.0)
                / (v * v);
            u4 - rhs
        })
        .collect();
    // Non-finite entries can only sit where u vanishes; the window skips them.
    Ok(GridFunction::from_unchecked(*u.grid(), values))
}

/// Residual of the uncoupled equation where `|u| > threshold`.
pub fn residual_uncoupled(
    u: &GridFunction<Complex64>,
    b: Complex64,
    threshold: f64,
) -> Result<HamResidual> {
    let n = u.len();
    if n < 6 {
        return Err(Error::GridTooSmall {
            what: "fourth-derivative stencil",
            points: n,
        });
    }
    let mask: Vec<usize> = (2..n - 2)
        .filter(|&i| u.values()[i].norm() > threshold)
        .collect();
    let (Some(&first), Some(&last)) = (mask.first(), mask.last()) else {
        return Err(Error::EmptyWindow(format!(
            "|u| <= {threshold} on every interior node"
        )));
    };
    let r = uncoupled_residual_values(u, b)?;
    let h = u.step();
    let (sq, sup) = mask
        .iter()
        .map(|&i| r.values()[i].norm())
        .fold((0.0, 0.0_f64), |(sq, sup), m| (sq + m * m, sup.max(m)));
    Ok(HamResidual {
        norms: Norms {
            l2: (sq * h).sqrt(),
            linf: sup,
        },
        grid_step: h,
        window: Interval {
            lo: u.x(first),
            hi: u.x(last),
        },
        points: mask.len(),
        stencil: stencil(4)?,
    })
}
