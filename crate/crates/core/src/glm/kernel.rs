use rayon::prelude::*;

use crate::glm::SpectralData;
use crate::numerics::{simpson_weights, upper_incomplete_gamma, Interval, UniformGrid};
use crate::{Error, Result};

/// `K(x) = Σ_α q_α Γ(1/(β+1), p_α (-x)^{β+1})` for vanishing reflection.
///
/// Only odd β are accepted: for even β the gamma argument turns negative
/// for `x > 0`, where Γ(a, ·) is multivalued.
pub fn glm_kernel(x: f64, sd: &SpectralData) -> Result<f64> {
    if !sd.reflection.is_zero() {
        return Err(Error::Unsupported(
            "non-vanishing reflection coefficient (Fourier term of the kernel)".into(),
        ));
    }
    if sd.beta.is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "even beta = {} gives a negative incomplete-gamma argument",
            sd.beta
        )));
    }
    sd.validate()?;
    let order = 1.0 / (sd.beta as f64 + 1.0);
    // β + 1 is even, so (-x)^{β+1} = x^{β+1} >= 0.
    let power = x.abs().powi(sd.beta as i32 + 1);
    sd.bound_states.iter().try_fold(0.0, |acc, bs| {
        if bs.q == 0.0 {
            return Ok(acc);
        }
        Ok(acc + bs.q * upper_incomplete_gamma(order, bs.p * power)?)
    })
}

/// Uniform nodes `s_i = lo + i step`, `i < n`, shared by both kernel arguments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelGrid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Default for KernelGrid {
    fn default() -> Self {
        Self {
            lo: 0.0,
            hi: 5.0,
            n: 201,
        }
    }
}

impl KernelGrid {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        UniformGrid::new(lo, hi, n)?;
        Ok(Self { lo, hi, n })
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.n - 1) as f64
    }

    pub fn s(&self, i: usize) -> f64 {
        self.lo + i as f64 * self.step()
    }

    pub fn as_uniform(&self) -> UniformGrid {
        UniformGrid {
            x_min: self.lo,
            x_max: self.hi,
            n: self.n,
        }
    }

    /// Node range covering `interval`, whose ends must be grid nodes.
    pub fn index_range(&self, interval: Interval) -> Result<std::ops::RangeInclusive<usize>> {
        let g = self.as_uniform();
        match (g.index_of(interval.lo), g.index_of(interval.hi)) {
            (Some(a), Some(b)) if a < b => Ok(a..=b),
            _ => Err(Error::Domain(format!(
                "interval [{}, {}] does not align with the kernel grid [{}, {}] (step {})",
                interval.lo,
                interval.hi,
                self.lo,
                self.hi,
                self.step()
            ))),
        }
    }

    /// Quadrature weights for `∫_{s_i}^{hi}`, one vector per start node.
    pub(crate) fn tail_weights(&self) -> Vec<Vec<f64>> {
        let h = self.step();
        (0..self.n)
            .map(|i| simpson_weights(self.n - i, h))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    /// `K(s_i + s_j)`, stored once per sum index `i + j`.
    Translation,
    /// Arbitrary `K(s_i, s_j)`, row-major.
    General,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelTable {
    grid: KernelGrid,
    kind: KernelKind,
    values: Vec<f64>,
}

impl KernelTable {
    /// Samples `f` at every sum `s_i + s_j = 2 lo + k step`, `k <= 2n - 2`.
    pub fn translation(grid: KernelGrid, f: impl Fn(f64) -> Result<f64> + Sync) -> Result<Self> {
        let h = grid.step();
        let values = (0..2 * grid.n - 1)
            .into_par_iter()
            .map(|k| f(2.0 * grid.lo + k as f64 * h))
            .collect::<Result<Vec<_>>>()?;
        Self::checked(grid, KernelKind::Translation, values)
    }

    /// The GLM kernel of `sd` as a translation table.
    pub fn from_spectral(grid: KernelGrid, sd: &SpectralData) -> Result<Self> {
        Self::translation(grid, |s| glm_kernel(s, sd))
    }

    pub fn general(grid: KernelGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n * grid.n {
            return Err(Error::Grid(format!(
                "{} values for a {}x{} kernel table",
                values.len(),
                grid.n,
                grid.n
            )));
        }
        Self::checked(grid, KernelKind::General, values)
    }

    pub fn from_fn(grid: KernelGrid, f: impl Fn(f64, f64) -> f64 + Sync) -> Result<Self> {
        let n = grid.n;
        let mut values = vec![0.0; n * n];
        values.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            let x = grid.s(i);
            for (j, v) in row.iter_mut().enumerate() {
                *v = f(x, grid.s(j));
            }
        });
        Self::general(grid, values)
    }

    pub fn zeros(grid: KernelGrid) -> Self {
        Self {
            grid,
            kind: KernelKind::General,
            values: vec![0.0; grid.n * grid.n],
        }
    }

    fn checked(grid: KernelGrid, kind: KernelKind, values: Vec<f64>) -> Result<Self> {
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "kernel table",
                x: match kind {
                    KernelKind::Translation => 2.0 * grid.lo + k as f64 * grid.step(),
                    KernelKind::General => grid.s(k / grid.n),
                },
            });
        }
        Ok(Self { grid, kind, values })
    }

    pub fn grid(&self) -> &KernelGrid {
        &self.grid
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match self.kind {
            KernelKind::Translation => self.values[i + j],
            KernelKind::General => self.values[i * self.grid.n + j],
        }
    }

    /// Dense row-major copy.
    pub fn to_general(&self) -> KernelTable {
        match self.kind {
            KernelKind::General => self.clone(),
            KernelKind::Translation => {
                let n = self.grid.n;
                let values = (0..n * n).map(|k| self.get(k / n, k % n)).collect();
                KernelTable {
                    grid: self.grid,
                    kind: KernelKind::General,
                    values,
                }
            }
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.grid.n).map(|i| self.get(i, i)).collect()
    }

    /// `max |K(s_i, s_j)|` for `i, j` in `range`.
    pub fn sup_over(&self, range: std::ops::RangeInclusive<usize>) -> f64 {
        let mut sup = 0.0_f64;
        for i in range.clone() {
            for j in range.clone() {
                sup = sup.max(self.get(i, j).abs());
            }
        }
        sup
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Pointwise `self + factor * other` as a general table.
    pub fn axpy(&self, factor: f64, other: &KernelTable) -> Result<KernelTable> {
        self.ensure_same_grid(other)?;
        let n = self.grid.n;
        let values = (0..n * n)
            .map(|k| self.get(k / n, k % n) + factor * other.get(k / n, k % n))
            .collect();
        KernelTable::general(self.grid, values)
    }

    pub fn scale(&self, factor: f64) -> KernelTable {
        KernelTable {
            grid: self.grid,
            kind: self.kind,
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    pub(crate) fn ensure_same_grid(&self, other: &KernelTable) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(format!(
                "{:?} vs {:?}",
                self.grid, other.grid
            )));
        }
        Ok(())
    }

    /// `out(i, j) = ∫_{s_i}^{hi} left(i, k) right(k, j) ds_k`.
    pub(crate) fn tail_product(
        left: impl Fn(usize, usize) -> f64 + Sync,
        right: impl Fn(usize, usize) -> f64 + Sync,
        grid: KernelGrid,
        weights: &[Vec<f64>],
    ) -> Result<KernelTable> {
        let n = grid.n;
        let mut values = vec![0.0; n * n];
        values.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            let w = &weights[i];
            for (j, out) in row.iter_mut().enumerate() {
                let mut acc = 0.0;
                for (off, wk) in w.iter().enumerate() {
                    let k = i + off;
                    acc += wk * left(i, k) * right(k, j);
                }
                *out = acc;
            }
        });
        KernelTable::general(grid, values)
    }
}

/// `K_μ(z, y) = ∫_z^∞ K_{μ-1}(z, z') K(z' + y) dz'`, `K_0(z, z') = K(z + z')`.
///
/// The result is a general table: the integral does not keep the
/// translation structure.
pub fn iterated_kernel(kernel: &KernelTable, mu: usize) -> Result<KernelTable> {
    if mu == 0 {
        return Ok(kernel.clone());
    }
    Ok(iterated_kernels(kernel, mu)?.pop().expect("mu >= 1 tables"))
}

/// `[K_1, ..., K_mu]`.
pub fn iterated_kernels(kernel: &KernelTable, mu: usize) -> Result<Vec<KernelTable>> {
    if kernel.kind() != KernelKind::Translation {
        return Err(Error::Domain(
            "iterated kernels start from a translation kernel".into(),
        ));
    }
    let grid = *kernel.grid();
    let weights = grid.tail_weights();
    let mut out: Vec<KernelTable> = Vec::with_capacity(mu);
    for m in 1..=mu {
        let prev = if m == 1 { kernel } else { &out[m - 2] };
        let next = KernelTable::tail_product(
            |i, k| prev.get(i, k),
            |k, j| kernel.get(k, j),
            grid,
            &weights,
        )?;
        out.push(next);
    }
    Ok(out)
}
