use crate::numerics::{DecayProfile, Interval, Sample};
use crate::{Error, Result};

/// Composite Simpson quadrature with interval halving.
///
/// Each halving reuses the previous nodes; the Richardson estimate
/// `|S_2n - S_n| / 15` is compared against `tol` and the extrapolated value
/// is returned. Infinite ends are truncated with `decay`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub tol: f64,
    pub decay: DecayProfile,
    /// Smallest number of panels, as a power of two.
    pub min_level: u32,
    /// Largest number of panels, as a power of two.
    pub max_level: u32,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            decay: DecayProfile::default(),
            min_level: 5,
            max_level: 22,
        }
    }
}

impl Quadrature {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }

    pub fn with_decay(mut self, decay: DecayProfile) -> Self {
        self.decay = decay;
        self
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64, interval: Interval) -> Result<f64> {
        if !(self.tol > 0.0) {
            return Err(Error::Domain(format!(
                "quadrature tolerance must be positive, got {}",
                self.tol
            )));
        }
        let (a, b) = interval.truncate(&self.decay);
        let eval = |x: f64| -> Result<f64> {
            let y = f(x);
            if y.is_finite() {
                Ok(y)
            } else {
                Err(Error::NonFinite {
                    context: "integrand",
                    x,
                })
            }
        };

        let mut panels = 1usize;
        let mut h = b - a;
        let mut trap = 0.5 * h * (eval(a)? + eval(b)?);
        let mut evaluations = 2usize;
        let mut simpson_prev = f64::NAN;
        let mut estimate = f64::INFINITY;

        for level in 1..=self.max_level {
            let mut mid = 0.0;
            for k in 0..panels {
                mid += eval(a + (k as f64 + 0.5) * h)?;
            }
            evaluations += panels;
            let trap_next = 0.5 * trap + 0.5 * h * mid;
            let simpson = (4.0 * trap_next - trap) / 3.0;
            trap = trap_next;
            panels *= 2;
            h *= 0.5;

            if level > self.min_level {
                estimate = (simpson - simpson_prev).abs() / 15.0;
                if estimate <= self.tol {
                    return Ok(simpson + (simpson - simpson_prev) / 15.0);
                }
            }
            simpson_prev = simpson;
        }
        Err(Error::QuadratureBudget {
            tol: self.tol,
            estimate,
            evaluations,
        })
    }
}

/// ∫ f over `interval` with absolute tolerance `tol` and default truncation.
pub fn integrate(f: impl Fn(f64) -> f64, interval: Interval, tol: f64) -> Result<f64> {
    Quadrature::with_tol(tol).integrate(f, interval)
}

/// Quadrature weights for `points` equally spaced samples with spacing `h`.
///
/// Composite Simpson; an odd number of intervals closes with the 3/8 rule on
/// the last three, two points fall back to the trapezoid.
pub fn simpson_weights(points: usize, h: f64) -> Vec<f64> {
    let mut w = vec![0.0; points];
    match points {
        0 | 1 => return w,
        2 => {
            w[0] = 0.5 * h;
            w[1] = 0.5 * h;
            return w;
        }
        _ => {}
    }
    let intervals = points - 1;
    let simpson_intervals = if intervals.is_multiple_of(2) {
        intervals
    } else {
        intervals - 3
    };
    for k in (0..simpson_intervals).step_by(2) {
        w[k] += h / 3.0;
        w[k + 1] += 4.0 * h / 3.0;
        w[k + 2] += h / 3.0;
    }
    if simpson_intervals < intervals {
        let s = simpson_intervals;
        let c = 3.0 * h / 8.0;
        w[s] += c;
        w[s + 1] += 3.0 * c;
        w[s + 2] += 3.0 * c;
        w[s + 3] += c;
    }
    w
}

/// Running integral `F[i] = ∫_{x_0}^{x_i} f` on a uniform grid.
///
/// Each interval uses the cubic through four neighbouring samples
/// (`h/24 (-f_{i-1} + 13 f_i + 13 f_{i+1} - f_{i+2})`), shifted one-sided at
/// the ends, giving fourth-order accuracy overall.
pub fn cumulative_integral<T: Sample>(values: &[T], h: f64) -> Vec<T> {
    let n = values.len();
    let mut out = vec![T::zero(); n];
    if n < 2 {
        return out;
    }
    if n < 4 {
        for i in 1..n {
            out[i] = out[i - 1] + (values[i - 1] + values[i]) * (0.5 * h);
        }
        return out;
    }
    let c = h / 24.0;
    for i in 0..n - 1 {
        let piece = if i == 0 {
            values[0] * 9.0 + values[1] * 19.0 - values[2] * 5.0 + values[3]
        } else if i == n - 2 {
            values[n - 1] * 9.0 + values[n - 2] * 19.0 - values[n - 3] * 5.0 + values[n - 4]
        } else {
            -values[i - 1] + values[i] * 13.0 + values[i + 1] * 13.0 - values[i + 2]
        };
        out[i + 1] = out[i] + piece * c;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_on_unit_interval() {
        let v = integrate(|_| 1.0, Interval::new(0.0, 1.0).unwrap(), 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
    }

    #[test]
    fn exponential_on_half_line() {
        let v = integrate(
            |x| (-x).exp(),
            Interval::new(0.0, f64::INFINITY).unwrap(),
            1e-11,
        )
        .unwrap();
        assert!((v - 1.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn sech_squared_on_whole_line() {
        let q = Quadrature::with_tol(1e-11).with_decay(DecayProfile::exponential(2.0));
        let v = q
            .integrate(|x| 1.0 / x.cosh().powi(2), Interval::whole_line())
            .unwrap();
        assert!((v - 2.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn nan_integrand_is_an_error() {
        let r = integrate(
            |x| if x > 0.5 { f64::NAN } else { x },
            Interval::new(0.0, 1.0).unwrap(),
            1e-8,
        );
        assert!(matches!(r, Err(Error::NonFinite { .. })));
    }

    #[test]
    fn budget_exhaustion_reported() {
        let q = Quadrature {
            max_level: 8,
            ..Quadrature::with_tol(1e-15)
        };
        let r = q.integrate(|x| x.abs().sqrt(), Interval::new(-1.0, 1.0).unwrap());
        assert!(matches!(r, Err(Error::QuadratureBudget { .. })));
    }

    #[test]
    fn simpson_weights_integrate_cubics_exactly() {
        for points in 2..12 {
            let h = 0.3;
            let w = simpson_weights(points, h);
            let len = h * (points - 1) as f64;
            let sum: f64 = w.iter().sum();
            assert!((sum - len).abs() < 1e-13);
            if points >= 3 {
                let cubic: f64 = w
                    .iter()
                    .enumerate()
                    .map(|(i, wi)| wi * (i as f64 * h).powi(3))
                    .sum();
                assert!((cubic - len.powi(4) / 4.0).abs() < 1e-12, "points {points}");
            }
        }
    }

    #[test]
    fn cumulative_integral_is_fourth_order() {
        let err = |n: usize| {
            let h = 2.0 / (n - 1) as f64;
            let f: Vec<f64> = (0..n).map(|i| (i as f64 * h).sin()).collect();
            let c = cumulative_integral(&f, h);
            (0..n)
                .map(|i| (c[i] - (1.0 - (i as f64 * h).cos())).abs())
                .fold(0.0, f64::max)
        };
        let ratio = err(41) / err(81);
        assert!(ratio > 12.0, "ratio {ratio}");
    }
}
