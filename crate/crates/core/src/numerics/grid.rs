use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Scalar that can live on a [`GridFunction`]: `f64` or `Complex64`.
pub trait Sample:
    Copy
    + Debug
    + Send
    + Sync
    + Zero
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Mul<f64, Output = Self>
    + Neg<Output = Self>
{
    fn modulus(self) -> f64;
    fn is_finite_sample(self) -> bool;
}

impl Sample for f64 {
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn is_finite_sample(self) -> bool {
        self.is_finite()
    }
}

impl Sample for Complex64 {
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn is_finite_sample(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Closed interval with optionally infinite ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::Domain(format!(
                "interval requires lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn whole_line() -> Self {
        Self {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    /// Replaces infinite ends by a finite radius measured from the origin
    /// (or from the finite end, if it lies further out).
    pub fn truncate(&self, decay: &DecayProfile) -> (f64, f64) {
        let radius = decay.radius();
        let lo = if self.lo.is_finite() {
            self.lo
        } else {
            self.hi.min(0.0) - radius
        };
        let hi = if self.hi.is_finite() {
            self.hi
        } else {
            self.lo.max(0.0) + radius
        };
        (lo, hi)
    }
}

/// Exponential decay rates used to truncate semi-infinite domains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayProfile {
    pub delta_minus: f64,
    pub delta_plus: f64,
    pub cutoff_tol: f64,
}

impl Default for DecayProfile {
    fn default() -> Self {
        Self {
            delta_minus: 0.5,
            delta_plus: 0.5,
            cutoff_tol: 1e-12,
        }
    }
}

impl DecayProfile {
    pub fn new(delta_minus: f64, delta_plus: f64, cutoff_tol: f64) -> Result<Self> {
        if !(delta_minus > 0.0 && delta_plus > 0.0 && cutoff_tol > 0.0 && cutoff_tol < 1.0) {
            return Err(Error::Domain(
                "decay rates must be positive and cutoff_tol in (0, 1)".into(),
            ));
        }
        Ok(Self {
            delta_minus,
            delta_plus,
            cutoff_tol,
        })
    }

    /// Symmetric profile for a function decaying like `exp(-rate |x|)`.
    pub fn exponential(rate: f64) -> Self {
        Self {
            delta_minus: 0.5 * rate,
            delta_plus: 0.5 * rate,
            cutoff_tol: 1e-12,
        }
    }

    /// Smallest X with `exp(-2 min(δ-, δ+) X) <= cutoff_tol`.
    pub fn radius(&self) -> f64 {
        let delta = self.delta_minus.min(self.delta_plus);
        (1.0 / self.cutoff_tol).ln() / (2.0 * delta)
    }
}

/// Uniform sampling descriptor: `n` points from `x_min` to `x_max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

impl UniformGrid {
    pub const MIN_POINTS: usize = 5;

    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if n < Self::MIN_POINTS {
            return Err(Error::Grid(format!(
                "need at least {} points, got {n}",
                Self::MIN_POINTS
            )));
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(Error::Grid(format!("bad bounds [{x_min}, {x_max}]")));
        }
        Ok(Self { x_min, x_max, n })
    }

    /// `[-20, 20]` with 4001 points.
    pub fn default_profile() -> Self {
        Self {
            x_min: -20.0,
            x_max: 20.0,
            n: 4001,
        }
    }

    pub fn step(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        // Pin the last node so the upper bound is reproduced exactly.
        if i + 1 == self.n {
            self.x_max
        } else {
            self.x_min + i as f64 * self.step()
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.x(i))
    }

    /// Index of the grid node equal to `x` up to a small fraction of a step.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let pos = (x - self.x_min) / self.step();
        let i = pos.round();
        if i < 0.0 || i > (self.n - 1) as f64 || (pos - i).abs() > 1e-6 {
            None
        } else {
            Some(i as usize)
        }
    }

    pub fn interval(&self) -> Interval {
        Interval {
            lo: self.x_min,
            hi: self.x_max,
        }
    }

    pub fn sample<T: Sample>(&self, f: impl Fn(f64) -> T) -> GridFunction<T> {
        GridFunction {
            grid: *self,
            values: self.points().map(f).collect(),
        }
    }

    pub fn try_sample<T: Sample>(&self, f: impl Fn(f64) -> Result<T>) -> Result<GridFunction<T>> {
        let values = self.points().map(f).collect::<Result<Vec<_>>>()?;
        GridFunction::new(*self, values)
    }
}

/// L2 (with the grid measure) and L∞ norms of a sampled function.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Norms {
    pub l2: f64,
    pub linf: f64,
}

/// Uniformly sampled function.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T = f64> {
    grid: UniformGrid,
    values: Vec<T>,
}

impl<T: Sample> GridFunction<T> {
    pub fn new(grid: UniformGrid, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.n {
            return Err(Error::Grid(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.n
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite_sample()) {
            return Err(Error::NonFinite {
                context: "grid function",
                x: grid.x(i),
            });
        }
        Ok(Self { grid, values })
    }

    /// Skips the finiteness check; callers must mask non-finite entries.
    pub(crate) fn from_unchecked(grid: UniformGrid, values: Vec<T>) -> Self {
        debug_assert_eq!(values.len(), grid.n);
        Self { grid, values }
    }

    pub fn zeros(grid: UniformGrid) -> Self {
        Self {
            grid,
            values: vec![T::zero(); grid.n],
        }
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.grid.step()
    }

    pub fn x(&self, i: usize) -> f64 {
        self.grid.x(i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, T)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| (self.grid.x(i), v))
    }

    pub fn map<U: Sample>(&self, f: impl Fn(f64, T) -> U) -> GridFunction<U> {
        GridFunction {
            grid: self.grid,
            values: self.iter().map(|(x, v)| f(x, v)).collect(),
        }
    }

    /// Pointwise combination of two functions on the same grid.
    pub fn zip_with<U: Sample, V: Sample>(
        &self,
        other: &GridFunction<U>,
        f: impl Fn(T, U) -> V,
    ) -> Result<GridFunction<V>> {
        self.ensure_same_grid(other)?;
        Ok(GridFunction {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn ensure_same_grid<U>(&self, other: &GridFunction<U>) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(format!(
                "{:?} vs {:?}",
                self.grid, other.grid
            )));
        }
        Ok(())
    }

    pub fn check_finite(&self, context: &'static str) -> Result<()> {
        match self.values.iter().position(|v| !v.is_finite_sample()) {
            Some(i) => Err(Error::NonFinite {
                context,
                x: self.grid.x(i),
            }),
            None => Ok(()),
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.modulus()).fold(0.0, f64::max)
    }

    /// Norms restricted to indices `range`.
    pub fn norms_over(&self, range: std::ops::Range<usize>) -> Norms {
        let h = self.step();
        let (sq, sup) = self.values[range]
            .iter()
            .map(|v| v.modulus())
            .fold((0.0, 0.0_f64), |(sq, sup), m| (sq + m * m, sup.max(m)));
        Norms {
            l2: (sq * h).sqrt(),
            linf: sup,
        }
    }
}

impl GridFunction<f64> {
    pub fn to_complex(&self) -> GridFunction<Complex64> {
        self.map(|_, v| Complex64::new(v, 0.0))
    }
}

impl GridFunction<Complex64> {
    pub fn re(&self) -> GridFunction<f64> {
        self.map(|_, v| v.re)
    }

    pub fn im(&self) -> GridFunction<f64> {
        self.map(|_, v| v.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_rejects_too_few_points() {
        assert!(matches!(UniformGrid::new(0.0, 1.0, 4), Err(Error::Grid(_))));
        assert!(UniformGrid::new(1.0, 1.0, 10).is_err());
    }

    #[test]
    fn step_and_endpoints() {
        let g = UniformGrid::new(-20.0, 20.0, 4001).unwrap();
        assert_eq!(g.step(), 0.01);
        assert_eq!(g.x(0), -20.0);
        assert_eq!(g.x(4000), 20.0);
        assert_eq!(g.index_of(1.0), Some(2100));
        assert_eq!(g.index_of(1.005), None);
    }

    #[test]
    fn non_finite_values_rejected() {
        let g = UniformGrid::new(0.0, 1.0, 5).unwrap();
        let err = GridFunction::new(g, vec![0.0, 1.0, f64::NAN, 0.0, 0.0]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { .. }));
        assert!(GridFunction::new(g, vec![0.0; 4]).is_err());
    }

    #[test]
    fn decay_radius_meets_cutoff() {
        let d = DecayProfile::new(0.5, 2.0, 1e-12).unwrap();
        let x = d.radius();
        assert!((-2.0 * 0.5 * x).exp() <= 1e-12 * (1.0 + 1e-12));
        let (lo, hi) = Interval::new(0.0, f64::INFINITY).unwrap().truncate(&d);
        assert_eq!(lo, 0.0);
        assert!((hi - x).abs() < 1e-12);
    }
}
