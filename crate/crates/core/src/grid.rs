//! Uniform 1-D grids and the sampled densities that live on them.
//!
//! Every integral in the crate is a left-endpoint Riemann sum `h * sum(values)`.
//! Grids are always centred at the origin with a power-of-two node count, so
//! any two grids with the same spacing nest inside one another and can be
//! converted by padding or truncation alone (see [`GridFunction::regrid`]).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Values below this are treated as exact zeros by the entropy sum.
pub const ENTROPY_FLOOR: f64 = 1e-300;

/// Relative threshold (against the maximum value) below which a node is
/// excluded from the Fisher information sum.
pub const FISHER_THRESHOLD: f64 = 1e-12;

const SPACING_RTOL: f64 = 1e-12;

/// Uniform grid on `[-L, L)` with `N` nodes `x_i = -L + i h`, `h = 2L / N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    half_width: f64,
    count: usize,
}

impl Grid {
    pub fn new(half_width: f64, count: usize) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "half width must be positive and finite, got {half_width}"
            )));
        }
        if count < 16 || !count.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "node count must be a power of two >= 16, got {count}"
            )));
        }
        Ok(Self { half_width, count })
    }

    /// Grid with a prescribed spacing `h` and node count; the half width is `N h / 2`.
    pub fn with_spacing(spacing: f64, count: usize) -> Result<Self> {
        Self::new(0.5 * spacing * count as f64, count)
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.count as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.spacing()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.spacing();
        (0..self.count).map(move |i| -self.half_width + i as f64 * h)
    }

    /// Index of the node at `x = 0`.
    pub fn origin_index(&self) -> usize {
        self.count / 2
    }

    pub fn same_spacing(&self, other: &Grid) -> bool {
        let (a, b) = (self.spacing(), other.spacing());
        (a - b).abs() <= SPACING_RTOL * a.max(b)
    }

    pub(crate) fn check_spacing(&self, other: &Grid) -> Result<()> {
        if self.same_spacing(other) {
            Ok(())
        } else {
            Err(Error::SpacingMismatch {
                left: self.spacing(),
                right: other.spacing(),
            })
        }
    }
}

/// Non-negative samples of a density on a [`Grid`].
///
/// Values are immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidValues(format!(
                "expected {} values, got {}",
                grid.len(),
                values.len()
            )));
        }
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < 0.0)
        {
            return Err(Error::InvalidValues(format!(
                "value at index {i} is {v}; samples must be finite and non-negative"
            )));
        }
        Ok(Self { grid, values })
    }

    /// Builds from values that are known to be finite; round-off negatives are clamped to zero.
    pub(crate) fn from_clamped(grid: Grid, mut values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        for v in &mut values {
            if *v < 0.0 || v.is_nan() {
                *v = 0.0;
            }
        }
        Self { grid, values }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid, grid.nodes().map(f).collect())
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
        }
    }

    /// Gaussian density `M_sigma` of variance `sigma` sampled at the nodes.
    pub fn gaussian(grid: Grid, variance: f64) -> Result<Self> {
        if !(variance.is_finite() && variance > 0.0) {
            return Err(Error::InvalidParameter {
                name: "variance",
                value: variance,
                reason: "must be positive",
            });
        }
        let norm = (2.0 * PI * variance).sqrt().recip();
        Ok(Self::from_clamped(
            grid,
            grid.nodes()
                .map(|x| norm * (-x * x / (2.0 * variance)).exp())
                .collect(),
        ))
    }

    /// Indicator of `[left, right)` evaluated at the nodes.
    pub fn indicator(grid: Grid, left: f64, right: f64) -> Self {
        Self::from_clamped(
            grid,
            grid.nodes()
                .map(|x| if x >= left && x < right { 1.0 } else { 0.0 })
                .collect(),
        )
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn spacing(&self) -> f64 {
        self.grid.spacing()
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.grid, self.values.iter().map(|v| v * factor).collect())
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &v) in self.values.iter().enumerate() {
            if v > self.values[best] {
                best = i;
            }
        }
        best
    }

    /// Supremum estimate refined by fitting a parabola to `log f` through the
    /// grid maximum and its two neighbours. Exact for Gaussian peaks.
    pub fn peak_value(&self) -> f64 {
        let i = self.argmax();
        let v = &self.values;
        if i == 0 || i + 1 >= v.len() || v[i - 1] <= 0.0 || v[i + 1] <= 0.0 {
            return v[i];
        }
        let (a, b, c) = (v[i - 1].ln(), v[i].ln(), v[i + 1].ln());
        let curvature = a - 2.0 * b + c;
        if curvature >= 0.0 {
            return v[i];
        }
        let offset = 0.5 * (a - c) / curvature;
        if offset.abs() > 0.5 {
            return v[i];
        }
        (b - 0.125 * (a - c) * (a - c) / curvature).exp().max(v[i])
    }

    /// True when both end samples are below `1e-10 * max`: the density fits the domain.
    pub fn boundary_ok(&self) -> bool {
        let limit = 1e-10 * self.max_value();
        let n = self.values.len();
        self.values[0] <= limit && self.values[n - 1] <= limit
    }

    /// Moves the samples onto another grid with the same spacing, truncating
    /// or zero-padding at both ends.
    pub fn regrid(&self, target: &Grid) -> Result<Self> {
        self.grid.check_spacing(target)?;
        let offset = (target.len() as isize - self.grid.len() as isize) / 2;
        let mut out = vec![0.0; target.len()];
        for (i, &v) in self.values.iter().enumerate() {
            let j = i as isize + offset;
            if j >= 0 && (j as usize) < out.len() {
                out[j as usize] = v;
            }
        }
        Ok(Self {
            grid: *target,
            values: out,
        })
    }

    pub fn mass(&self) -> f64 {
        self.spacing() * self.values.iter().sum::<f64>()
    }

    /// `L^r` norm; `r = f64::INFINITY` gives the maximum. Quasi-norms for `0 < r < 1`.
    pub fn lp_norm(&self, r: f64) -> Result<f64> {
        if r.is_nan() || r <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "r",
                value: r,
                reason: "norm exponent must be positive",
            });
        }
        if r.is_infinite() {
            return Ok(self.max_value());
        }
        // factor out the peak so large r does not underflow
        let peak = self.max_value();
        if peak == 0.0 {
            return Ok(0.0);
        }
        let sum: f64 = self
            .values
            .iter()
            .map(|&v| if v > 0.0 { (v / peak).powf(r) } else { 0.0 })
            .sum();
        Ok(peak * (self.spacing() * sum).powf(r.recip()))
    }

    pub fn second_moment(&self) -> f64 {
        self.spacing()
            * self
                .grid
                .nodes()
                .zip(&self.values)
                .map(|(x, v)| x * x * v)
                .sum::<f64>()
    }

    pub fn shannon_entropy(&self) -> Result<f64> {
        if self.mass() <= 0.0 {
            return Err(Error::ZeroMass);
        }
        let sum: f64 = self
            .values
            .iter()
            .filter(|&&v| v > ENTROPY_FLOOR)
            .map(|&v| v * v.ln())
            .sum();
        Ok(-self.spacing() * sum)
    }

    /// `h * sum (f'_i)^2 / f_i` with central differences, over interior nodes
    /// above [`FISHER_THRESHOLD`] times the maximum.
    pub fn fisher_information(&self) -> Result<f64> {
        if self.mass() <= 0.0 {
            return Err(Error::ZeroMass);
        }
        let h = self.spacing();
        let cutoff = FISHER_THRESHOLD * self.max_value();
        let v = &self.values;
        let sum: f64 = (1..v.len() - 1)
            .filter(|&i| v[i] > cutoff)
            .map(|i| {
                let d = (v[i + 1] - v[i - 1]) / (2.0 * h);
                d * d / v[i]
            })
            .sum();
        Ok(h * sum)
    }

    /// `exp(2 H)`: entropy power of the `d`-fold product extension, which does not depend on `d`.
    pub fn entropy_power(&self, d: u32) -> Result<f64> {
        if d == 0 {
            return Err(Error::InvalidParameter {
                name: "d",
                value: 0.0,
                reason: "dimension must be at least 1",
            });
        }
        let d = f64::from(d);
        let entropy_d = d * self.shannon_entropy()?;
        Ok((2.0 / d * entropy_d).exp())
    }

    /// Mass-preserving dilation `f_a(x) = a f(a x)`, represented exactly on a
    /// grid of half width `L / a` with values `a f(x_i)`.
    pub fn dilate(&self, a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidParameter {
                name: "a",
                value: a,
                reason: "dilation factor must be positive",
            });
        }
        let grid = Grid::new(self.grid.half_width() / a, self.grid.len())?;
        Ok(Self {
            grid,
            values: self.values.iter().map(|v| a * v).collect(),
        })
    }

    /// `H(f) - (1/2) log E(f)`, invariant under [`dilate`](Self::dilate).
    pub fn entropy_moment_functional(&self) -> Result<f64> {
        Ok(self.shannon_entropy()? - 0.5 * self.second_moment().ln())
    }
}

/// Integral summaries of one density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityStats {
    pub mass: f64,
    pub second_moment: f64,
    pub entropy: f64,
    pub fisher: f64,
}

impl DensityStats {
    pub fn of(f: &GridFunction) -> Result<Self> {
        Ok(Self {
            mass: f.mass(),
            second_moment: f.second_moment(),
            entropy: f.shannon_entropy()?,
            fisher: f.fisher_information()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desk() -> Grid {
        Grid::new(16.0, 2048).unwrap()
    }

    fn riemann(half_width: f64, count: usize, f: impl Fn(f64) -> f64) -> f64 {
        let h = 2.0 * half_width / count as f64;
        (0..count).map(|i| f(-half_width + i as f64 * h)).sum::<f64>() * h
    }

    fn gauss(var: f64) -> impl Fn(f64) -> f64 {
        move |x| (-x * x / (2.0 * var)).exp() / (2.0 * PI * var).sqrt()
    }

    #[test]
    fn grid_spacing_and_nodes() {
        assert_eq!(desk().spacing(), 0.015625);
        let g = Grid::new(1.0, 16).unwrap();
        let nodes: Vec<f64> = g.nodes().collect();
        assert_eq!(nodes[0], -1.0);
        assert_eq!(nodes[1], -0.875);
        assert_eq!(nodes[15], 0.875);
        assert_eq!(g.node(g.origin_index()), 0.0);
    }

    #[test]
    fn grid_rejects_bad_shapes() {
        assert!(Grid::new(16.0, 100).is_err());
        assert!(Grid::new(16.0, 8).is_err());
        assert!(Grid::new(0.0, 64).is_err());
        assert!(Grid::new(-1.0, 64).is_err());
    }

    #[test]
    fn gaussian_point_values() {
        let f = GridFunction::gaussian(desk(), 1.0).unwrap();
        let i0 = desk().origin_index();
        assert!((f.values()[i0] - 0.3989422804014327).abs() < 1e-15);
        assert!((f.values()[i0 + 64] - 0.24197072451914337).abs() < 1e-15);
        assert!(GridFunction::gaussian(desk(), 0.0).is_err());
        assert!(GridFunction::gaussian(desk(), -1.0).is_err());
    }

    #[test]
    fn gaussian_mass_against_doubled_resolution() {
        for var in [0.25, 1.0, 2.0, 4.0] {
            let oracle = riemann(16.0, 4096, gauss(var));
            assert!((oracle - 1.0).abs() < 1e-10);
            let m = GridFunction::gaussian(desk(), var).unwrap().mass();
            assert!((m - oracle).abs() < 1e-10, "var {var}: {m} vs {oracle}");
        }
    }

    #[test]
    fn mass_of_step_and_linearity() {
        let g = Grid::new(2.0, 64).unwrap();
        let step = GridFunction::indicator(g, 0.0, 1.0);
        assert_eq!(step.mass(), 1.0);
        assert_eq!(step.lp_norm(2.0).unwrap(), 1.0);
        assert_eq!(step.shannon_entropy().unwrap(), 0.0);
        assert_eq!(step.entropy_power(1).unwrap(), 1.0);
        let f = GridFunction::gaussian(desk(), 1.3).unwrap();
        assert!((f.scaled(2.0).unwrap().mass() - 2.0 * f.mass()).abs() < 1e-14);
    }

    #[test]
    fn lp_norms_of_gaussian() {
        let f = GridFunction::gaussian(desk(), 1.0).unwrap();
        assert!((f.lp_norm(f64::INFINITY).unwrap() - 0.3989422804014327).abs() < 1e-15);
        // (int M_1^2)^(1/2) = (1 / (2 sqrt(pi)))^(1/2)
        assert!((f.lp_norm(2.0).unwrap() - 0.5311259660135985).abs() < 1e-12);
        assert!(f.lp_norm(0.0).is_err());
        assert!(f.lp_norm(-2.0).is_err());
        assert!(f.lp_norm(0.5).unwrap().is_finite());
    }

    #[test]
    fn lp_norm_approaches_sup() {
        let f = GridFunction::gaussian(desk(), 1.0).unwrap();
        let sup = f.lp_norm(f64::INFINITY).unwrap();
        let gaps: Vec<f64> = [64.0, 256.0, 1024.0, 4096.0]
            .iter()
            .map(|&r| (f.lp_norm(r).unwrap() - sup).abs())
            .collect();
        assert!(gaps.windows(2).all(|w| w[0] > w[1]));
        assert!(gaps[3] < 1e-3 * sup);
    }

    #[test]
    fn moments_entropy_fisher_of_gaussians() {
        let f = GridFunction::gaussian(desk(), 1.0).unwrap();
        assert!((f.second_moment() - 1.0).abs() < 1e-6);
        assert!((f.shannon_entropy().unwrap() - 1.4189385332046727).abs() < 1e-6);
        assert!((f.fisher_information().unwrap() - 1.0).abs() < 1e-3);
        assert!((f.entropy_power(1).unwrap() - 17.079468445347132).abs() < 1e-2);
        let g = GridFunction::gaussian(desk(), 2.0).unwrap();
        assert!((g.fisher_information().unwrap() - 0.5).abs() < 1e-3);
        assert!((g.entropy_power(1).unwrap() - 34.158936890694265).abs() < 1e-2);
        assert_eq!(GridFunction::zeros(desk()).second_moment(), 0.0);
        assert_eq!(GridFunction::zeros(desk()).shannon_entropy(), Err(Error::ZeroMass));
        assert_eq!(
            GridFunction::zeros(desk()).fisher_information(),
            Err(Error::ZeroMass)
        );
    }

    #[test]
    fn dilation_identities() {
        let f = GridFunction::gaussian(desk(), 1.0).unwrap();
        assert_eq!(f.dilate(1.0).unwrap(), f);
        assert!(f.dilate(0.0).is_err());
        for a in [0.5, 2.0, 3.0] {
            let fa = f.dilate(a).unwrap();
            assert!((fa.mass() - f.mass()).abs() < 1e-14);
            assert!((fa.second_moment() - f.second_moment() / (a * a)).abs() < 1e-12);
            let dh = fa.shannon_entropy().unwrap() - (f.shannon_entropy().unwrap() - a.ln());
            assert!(dh.abs() < 1e-10);
            let di = fa.fisher_information().unwrap() - a * a * f.fisher_information().unwrap();
            assert!(di.abs() < 1e-10 * a * a);
            let dg = fa.entropy_moment_functional().unwrap()
                - f.entropy_moment_functional().unwrap();
            assert!(dg.abs() < 1e-10);
            // dilate(M_sigma, a) is M_{sigma / a^2} on the new grid
            let expect = GridFunction::gaussian(*fa.grid(), 1.0 / (a * a)).unwrap();
            let err = fa
                .values()
                .iter()
                .zip(expect.values())
                .map(|(p, q)| (p - q).abs())
                .fold(0.0, f64::max);
            assert!(err < 1e-14 * a);
        }
    }

    #[test]
    fn regrid_roundtrip_and_mismatch() {
        let f = GridFunction::gaussian(Grid::new(4.0, 256).unwrap(), 0.3).unwrap();
        let big = Grid::new(8.0, 512).unwrap();
        let g = f.regrid(&big).unwrap();
        assert!((g.mass() - f.mass()).abs() < 1e-15);
        assert_eq!(g.regrid(f.grid()).unwrap(), f);
        assert!(f.regrid(&Grid::new(8.0, 256).unwrap()).is_err());
    }

    #[test]
    fn peak_value_exact_for_off_grid_gaussian() {
        let g = desk();
        let shift = 0.3 * g.spacing();
        let f = GridFunction::from_fn(g, |x| (-(x - shift).powi(2) / 0.8).exp()).unwrap();
        assert!((f.peak_value() - 1.0).abs() < 1e-12);
        assert!(f.max_value() < 1.0 - 1e-6);
    }

    #[test]
    fn rejects_negative_or_nan() {
        let g = Grid::new(1.0, 16).unwrap();
        let mut v = vec![0.0; 16];
        v[3] = -1e-3;
        assert!(GridFunction::new(g, v.clone()).is_err());
        v[3] = f64::NAN;
        assert!(GridFunction::new(g, v).is_err());
        assert!(GridFunction::new(g, vec![1.0; 15]).is_err());
    }

    #[test]
    fn boundary_advisory() {
        assert!(GridFunction::gaussian(desk(), 1.0).unwrap().boundary_ok());
        assert!(!GridFunction::gaussian(desk(), 60.0).unwrap().boundary_ok());
    }
}
