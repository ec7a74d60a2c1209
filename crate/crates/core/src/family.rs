//! Closed-form stationary soliton family, dispersion relation, and residuals
//! against the stationary system
//!
//! ```text
//! [-∂xx + b φ] u = ∓ ω u,    φ_xx = |u|².
//! ```
//!
//! Both branches of the profile `E` are shifted, scaled sech pulses. With
//! `δ = ln(2ap²) / (2p)` and `t = x ± x0`:
//!
//! ```text
//! ξ1-branch: 4ap² e^{pt} e^{pξ1} / (2ap² + e^{2p(t+ξ1)})   = p√(2a) sech(p(t + ξ1 - δ))
//! ξ2-branch: 4ap² e^{pt} e^{pξ2} / (1 + 2ap² e^{2p(t+ξ2)}) = p√(2a) sech(p(t + ξ2 + δ))
//! ```
//!
//! and `E` is evaluated through the right-hand sides, which never overflow.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::numerics::{differentiate, stencil, GridFunction, Interval, UniformGrid};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Xi1,
    Xi2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Self::Plus => 1.0,
            Self::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolutionParams {
    pub p: f64,
    pub q: f64,
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
    pub x0: f64,
    pub xi1: f64,
    pub xi2: f64,
    pub branch: Branch,
    /// The ± in `x ± x0`.
    pub sign_x: Sign,
    /// The ± in `e^{±iωt}`.
    pub sign_t: Sign,
    pub omega: f64,
}

impl SolutionParams {
    /// The reduced sech solution: special ξ values, `q = 1/2`, `c1 = c2 = 0`,
    /// `x - x0`, and ω from the dispersion relation.
    pub fn sech(p: f64, a: f64, b: f64) -> Result<Self> {
        let delta = shift(p, a)?;
        Ok(Self {
            p,
            q: 0.5,
            a,
            b,
            c1: 0.0,
            c2: 0.0,
            x0: 0.0,
            xi1: delta,
            xi2: -delta,
            branch: Branch::Xi1,
            sign_x: Sign::Minus,
            sign_t: Sign::Plus,
            omega: dispersion_omega(p, a, b)?,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 0.0 && self.a > 0.0) {
            return Err(Error::Domain(format!(
                "the soliton family needs p > 0 and a > 0, got p = {}, a = {}",
                self.p, self.a
            )));
        }
        let finite = [
            self.q, self.b, self.c1, self.c2, self.x0, self.xi1, self.xi2, self.omega,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return Err(Error::Domain("soliton parameters must be finite".into()));
        }
        Ok(())
    }

    /// Peak amplitude `p √(2a)`.
    pub fn amplitude(&self) -> f64 {
        self.p * (2.0 * self.a).sqrt()
    }

    fn centered(&self, x: f64) -> f64 {
        x + self.sign_x.factor() * self.x0
    }

    /// Argument of the equivalent sech: `p (x ± x0 + ξ ∓ δ)`.
    fn sech_argument(&self, x: f64) -> f64 {
        let delta = (2.0 * self.a * self.p * self.p).ln() / (2.0 * self.p);
        let offset = match self.branch {
            Branch::Xi1 => self.xi1 - delta,
            Branch::Xi2 => self.xi2 + delta,
        };
        self.p * (self.centered(x) + offset)
    }
}

/// `δ = ln(2ap²) / (2p)`, the special ξ1 value.
pub fn shift(p: f64, a: f64) -> Result<f64> {
    if !(p > 0.0 && a > 0.0) {
        return Err(Error::Domain(format!(
            "need p > 0 and a > 0, got p = {p}, a = {a}"
        )));
    }
    Ok((2.0 * a * p * p).ln() / (2.0 * p))
}

fn sech(z: f64) -> f64 {
    let e = (-z.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

fn ln_sech(z: f64) -> f64 {
    let z = z.abs();
    std::f64::consts::LN_2 - z - (-2.0 * z).exp().ln_1p()
}

/// Profile `E(x)` of the selected branch.
pub fn eval_e(x: f64, params: &SolutionParams) -> Result<f64> {
    params.validate()?;
    Ok(params.amplitude() * sech(params.sech_argument(x)))
}

/// The rational form of `E` as printed. Overflows once `p|x ± x0 + ξ|`
/// nears 350; kept for cross-checks only.
pub fn eval_e_rational(x: f64, params: &SolutionParams) -> Result<f64> {
    params.validate()?;
    let (p, a) = (params.p, params.a);
    let t = params.centered(x);
    let k = 2.0 * a * p * p;
    let val = match params.branch {
        Branch::Xi1 => {
            2.0 * k * (p * t).exp() * (p * params.xi1).exp()
                / (k + (2.0 * p * (t + params.xi1)).exp())
        }
        Branch::Xi2 => {
            2.0 * k * (p * t).exp() * (p * params.xi2).exp()
                / (1.0 + k * (2.0 * p * (t + params.xi2)).exp())
        }
    };
    if !val.is_finite() {
        return Err(Error::NonFinite {
            context: "rational profile",
            x,
        });
    }
    Ok(val)
}

/// `ln E(x)`, finite even where `E` underflows.
pub fn ln_e(x: f64, params: &SolutionParams) -> Result<f64> {
    params.validate()?;
    Ok(params.amplitude().ln() + ln_sech(params.sech_argument(x)))
}

/// `ψ(x,t) = 2q E(x) e^{-p c1 (x ± x0)²} e^{±iωt} + c2`.
pub fn eval_psi(x: f64, t: f64, params: &SolutionParams) -> Result<Complex64> {
    let e = eval_e(x, params)?;
    let gauss = (-params.p * params.c1 * params.centered(x).powi(2)).exp();
    let phase = Complex64::from_polar(1.0, params.sign_t.factor() * params.omega * t);
    Ok(phase * (2.0 * params.q * e * gauss) + params.c2)
}

/// `φ(x) = -a ln(E²)`.
pub fn potential_phi(x: f64, params: &SolutionParams) -> Result<f64> {
    Ok(-2.0 * params.a * ln_e(x, params)?)
}

/// Dispersion relation
///
/// `ω = [-p² + 12ap⁴ - 4a²p⁶ + 2(1+2ap²)²(p - ab ln(8ap²/(1+2ap²)))] / (1+2ap²)²`.
pub fn dispersion_omega(p: f64, a: f64, b: f64) -> Result<f64> {
    if !(p > 0.0 && a > 0.0) || !b.is_finite() {
        return Err(Error::Domain(format!(
            "dispersion relation needs p > 0, a > 0, finite b; got p = {p}, a = {a}, b = {b}"
        )));
    }
    let p2 = p * p;
    let d = 1.0 + 2.0 * a * p2;
    let log = (8.0 * a * p2 / d).ln();
    let num =
        -p2 + 12.0 * a * p2 * p2 - 4.0 * a * a * p2 * p2 * p2 + 2.0 * d * d * (p - a * b * log);
    Ok(num / (d * d))
}

/// Nodes with `E` below this are left out of residual windows.
pub const WINDOW_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualReport {
    pub schrodinger_l2: f64,
    pub schrodinger_linf: f64,
    pub poisson_l2: f64,
    pub poisson_linf: f64,
    pub grid_step: f64,
    pub window: Interval,
    pub points: usize,
    /// Truncation order of the centered second-difference stencil.
    pub stencil_accuracy: usize,
}

/// Sampled profiles on a grid, shared by the residual routines.
#[derive(Debug, Clone)]
pub struct Profiles {
    pub e: GridFunction,
    pub phi: GridFunction,
    /// `u = ψ(x, 0)`.
    pub u: GridFunction<Complex64>,
    pub abs_psi: GridFunction,
}

pub fn sample_profiles(params: &SolutionParams, grid: UniformGrid) -> Result<Profiles> {
    params.validate()?;
    Ok(Profiles {
        e: grid.try_sample(|x| eval_e(x, params))?,
        phi: grid.try_sample(|x| potential_phi(x, params))?,
        u: grid.try_sample(|x| eval_psi(x, 0.0, params))?,
        abs_psi: grid.try_sample(|x| eval_psi(x, 0.0, params).map(|z| z.norm()))?,
    })
}

fn window(e: &GridFunction) -> Result<Vec<usize>> {
    let n = e.len();
    let idx: Vec<usize> = (1..n - 1)
        .filter(|&i| e.values()[i] >= WINDOW_FLOOR)
        .collect();
    if idx.is_empty() {
        return Err(Error::EmptyWindow(format!(
            "E < {WINDOW_FLOOR} on every interior node"
        )));
    }
    Ok(idx)
}

fn masked_norms(values: impl Iterator<Item = f64>, h: f64) -> (f64, f64) {
    let (sq, sup) = values.fold((0.0, 0.0_f64), |(sq, sup), m| (sq + m * m, sup.max(m)));
    ((sq * h).sqrt(), sup)
}

fn residuals_on(
    u: &GridFunction<Complex64>,
    phi: &GridFunction,
    b: f64,
    omega_rhs: f64,
    idx: &[usize],
) -> Result<ResidualReport> {
    u.ensure_same_grid(phi)?;
    let u_xx = differentiate(u, 2)?;
    let phi_xx = differentiate(phi, 2)?;
    let h = u.step();
    let schrodinger = idx.iter().map(|&i| {
        let ui = u.values()[i];
        (-u_xx.values()[i] + ui * (b * phi.values()[i]) - ui * omega_rhs).norm()
    });
    let (s_l2, s_inf) = masked_norms(schrodinger, h);
    let poisson = idx
        .iter()
        .map(|&i| (phi_xx.values()[i] - u.values()[i].norm_sqr()).abs());
    let (p_l2, p_inf) = masked_norms(poisson, h);
    Ok(ResidualReport {
        schrodinger_l2: s_l2,
        schrodinger_linf: s_inf,
        poisson_l2: p_l2,
        poisson_linf: p_inf,
        grid_step: h,
        window: Interval {
            lo: u.x(idx[0]),
            hi: u.x(*idx.last().expect("non-empty window")),
        },
        points: idx.len(),
        stencil_accuracy: stencil(2)?.accuracy,
    })
}

/// Residuals of `-u_xx + b φ u = λ u` and `φ_xx = |u|²` for arbitrary
/// sampled profiles, over every interior node.
pub fn system_residuals(
    u: &GridFunction<Complex64>,
    phi: &GridFunction,
    b: f64,
    lambda: f64,
) -> Result<ResidualReport> {
    let idx: Vec<usize> = (1..u.len() - 1).collect();
    residuals_on(u, phi, b, lambda, &idx)
}

/// Residuals of both equations for `u = ψ(x, 0)` and `φ = -a ln E²`.
///
/// The Schrödinger residual is `-u_xx + b φ u - λ u`, where
/// `ψ = u e^{±iωt}` gives `λ = ∓ω` (upper sign for `sign_t = plus`).
pub fn residual_report(params: &SolutionParams, grid: UniformGrid) -> Result<ResidualReport> {
    let prof = sample_profiles(params, grid)?;
    let idx = window(&prof.e)?;
    let lambda = -params.sign_t.factor() * params.omega;
    residuals_on(&prof.u, &prof.phi, params.b, lambda, &idx)
}

/// `max |(-a ln E²)_xx - E²|` over the interior window.
pub fn verify_poisson_identity(params: &SolutionParams, grid: UniformGrid) -> Result<f64> {
    params.validate()?;
    let e = grid.try_sample(|x| eval_e(x, params))?;
    let phi = grid.try_sample(|x| potential_phi(x, params))?;
    let phi_xx = differentiate(&phi, 2)?;
    let idx = window(&e)?;
    Ok(idx
        .iter()
        .map(|&i| (phi_xx.values()[i] - e.values()[i].powi(2)).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn special(p: f64, a: f64) -> SolutionParams {
        SolutionParams::sech(p, a, 1.0).unwrap()
    }

    #[test]
    fn sech_case_is_plain_sech() {
        let prm = special(1.0, 0.5);
        for x in [-3.0, -0.4, 0.0, 1.1, 7.0] {
            assert!((eval_e(x, &prm).unwrap() - 1.0 / f64::cosh(x)).abs() < 1e-15);
        }
    }

    #[test]
    fn profile_decays_at_grid_edges() {
        let prm = special(2.0, 0.5);
        for x in [-20.0, -15.0, 15.0, 20.0] {
            assert!(eval_e(x, &prm).unwrap() < 1e-10);
        }
        // p = 1 only reaches 2e-9 at |x| = 20.
        let wide = special(1.0, 0.5);
        assert!(eval_e(20.0, &wide).unwrap() < 5e-9);
    }

    #[test]
    fn no_overflow_far_out() {
        let prm = SolutionParams {
            xi1: 400.0,
            ..special(3.0, 2.0)
        };
        let e = eval_e(500.0, &prm).unwrap();
        assert!(e.is_finite() && e >= 0.0);
        assert!(ln_e(500.0, &prm).unwrap().is_finite());
    }

    #[test]
    fn domain_violations() {
        let prm = SolutionParams {
            p: -1.0,
            ..special(1.0, 0.5)
        };
        assert!(eval_e(0.0, &prm).is_err());
        assert!(SolutionParams::sech(1.0, 0.0, 1.0).is_err());
        assert!(dispersion_omega(1.0, -1.0, 0.0).is_err());
        assert!(dispersion_omega(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn psi_examples() {
        let prm = special(1.0, 0.5);
        let z = eval_psi(0.0, 0.0, &prm).unwrap();
        assert!((z.re - 1.0).abs() < 1e-15 && z.im == 0.0);
        let x = 0.8;
        let real = eval_psi(x, 0.0, &prm).unwrap();
        assert!((real.re - 2.0 * 0.5 * eval_e(x, &prm).unwrap()).abs() < 1e-15);
        let later = eval_psi(x, 7.3, &prm).unwrap();
        assert!((real.norm() - later.norm()).abs() < 1e-15);
        let shifted = SolutionParams { c2: 0.3, ..prm };
        let a = eval_psi(x, 0.0, &shifted).unwrap().norm();
        let b = eval_psi(x, 1.0, &shifted).unwrap().norm();
        assert!((a - b).abs() > 1e-3);
    }

    #[test]
    fn potential_at_peak() {
        let prm = special(1.3, 0.8);
        let peak = potential_phi(0.0, &prm).unwrap();
        assert!((peak + 0.8 * (2.0 * 0.8 * 1.3 * 1.3_f64).ln()).abs() < 1e-14);
        // E = 1 where p√(2a) sech(p x) = 1.
        let prm = special(1.0, 2.0);
        let x = (2.0_f64).acosh();
        assert!(potential_phi(x, &prm).unwrap().abs() < 1e-14);
    }

    #[test]
    fn dispersion_examples() {
        let w = dispersion_omega(1.0, 1.0 / 6.0, 123.0).unwrap();
        assert!((w - 2.5).abs() < 1e-12);
        let w = dispersion_omega(1.0, 1.0, 1.0).unwrap();
        assert!((w - 0.816_119_271_754_325_3).abs() < 1e-13);
        assert_eq!(
            dispersion_omega(1.0, 1.0 / 6.0, 0.0).unwrap(),
            dispersion_omega(1.0, 1.0 / 6.0, 1e3).unwrap()
        );
    }

    #[test]
    fn zero_profiles_have_zero_residuals() {
        let grid = UniformGrid::new(-5.0, 5.0, 101).unwrap();
        let u = GridFunction::<Complex64>::zeros(grid);
        let phi = GridFunction::zeros(grid);
        let r = system_residuals(&u, &phi, 1.0, 0.3).unwrap();
        assert_eq!((r.schrodinger_linf, r.poisson_linf), (0.0, 0.0));
        assert_eq!((r.schrodinger_l2, r.poisson_l2), (0.0, 0.0));
    }

    #[test]
    fn branches_match_rational_form() {
        let (p, a) = (2.0, 0.3);
        let mut state = 0x2545_f491_4f6c_dd1d_u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for branch in [Branch::Xi1, Branch::Xi2] {
            for _ in 0..50 {
                let x = -4.0 + 8.0 * next();
                let xi = -2.0 + 4.0 * next();
                let prm = SolutionParams {
                    branch,
                    xi1: xi,
                    xi2: xi,
                    ..special(p, a)
                };
                let fast = eval_e(x, &prm).unwrap();
                let raw = eval_e_rational(x, &prm).unwrap();
                assert!(
                    (fast - raw).abs() <= 1e-12 * raw.abs().max(1.0),
                    "{branch:?} {x} {xi}"
                );
            }
        }
    }

    #[test]
    fn both_special_values_reduce_to_sech() {
        for (p, a) in [(1.0, 0.5), (2.0, 0.3), (0.7, 1.4)] {
            let d = shift(p, a).unwrap();
            let base = special(p, a);
            let amp = p * (2.0 * a).sqrt();
            for x in [-2.0, -0.3, 0.0, 0.9, 3.0] {
                let exact = amp / (p * x).cosh();
                let e1 = eval_e(x, &SolutionParams { xi1: d, ..base }).unwrap();
                let e2 = eval_e(
                    x,
                    &SolutionParams {
                        branch: Branch::Xi2,
                        xi2: -d,
                        ..base
                    },
                )
                .unwrap();
                assert!((e1 - exact).abs() < 1e-12 && (e2 - exact).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn curvature_of_potential_at_peak() {
        let prm = special(1.0, 0.5);
        let grid = UniformGrid::new(-1.0, 1.0, 2001).unwrap();
        let phi = grid.try_sample(|x| potential_phi(x, &prm)).unwrap();
        let phi_xx = differentiate(&phi, 2).unwrap();
        let peak = grid.index_of(0.0).unwrap();
        assert!((phi_xx.values()[peak] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn poisson_identity_second_order() {
        let prm = special(1.0, 0.5);
        let e1 =
            verify_poisson_identity(&prm, UniformGrid::new(-20.0, 20.0, 1001).unwrap()).unwrap();
        let e2 =
            verify_poisson_identity(&prm, UniformGrid::new(-20.0, 20.0, 2001).unwrap()).unwrap();
        assert!((e1 / e2).log2() > 1.9);
        let rep = residual_report(&prm, UniformGrid::new(-20.0, 20.0, 2001).unwrap()).unwrap();
        assert!(rep.poisson_linf < 1e-4);
    }

    #[test]
    fn poisson_error_linear_in_a() {
        let grid = UniformGrid::new(-20.0, 20.0, 1001).unwrap();
        let e_half = verify_poisson_identity(&special(1.0, 0.5), grid).unwrap();
        let e_one = verify_poisson_identity(&special(1.0, 1.0), grid).unwrap();
        assert!((e_one / e_half - 2.0).abs() < 0.02, "{}", e_one / e_half);
    }
}
