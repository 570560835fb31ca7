//! Exact-in-time heat flow `u(t) = f * M_{2 kappa t}`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::convolution::{convolve, power};
use crate::error::{Error, Result};
use crate::grid::{Grid, GridFunction};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Initial datum together with its diffusion coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatInput {
    initial: GridFunction,
    kappa: f64,
}

impl HeatInput {
    pub fn new(initial: GridFunction, kappa: f64) -> Result<Self> {
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::InvalidParameter {
                name: "kappa",
                value: kappa,
                reason: "diffusion coefficient must be positive",
            });
        }
        if initial.mass() <= 0.0 {
            return Err(Error::ZeroMass);
        }
        Ok(Self { initial, kappa })
    }

    pub fn initial(&self) -> &GridFunction {
        &self.initial
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn grid(&self) -> &Grid {
        self.initial.grid()
    }

    /// Standard deviation of the heat kernel at time `t`.
    pub fn kernel_std(&self, t: f64) -> f64 {
        (2.0 * self.kappa * t).sqrt()
    }

    /// Largest kernel standard deviation the grid-to-grid path accepts.
    pub fn overflow_limit(&self) -> f64 {
        self.grid().half_width() / 4.0
    }

    /// Heat flow on the input grid: linear convolution with the sampled,
    /// mass-renormalized kernel, restricted back to the original grid.
    pub fn evolve(&self, t: f64) -> Result<GridFunction> {
        check_time(t, false)?;
        if t == 0.0 {
            return Ok(self.initial.clone());
        }
        let std_dev = self.kernel_std(t);
        let limit = self.overflow_limit();
        if std_dev > limit {
            return Err(Error::DomainOverflow { std_dev, limit });
        }
        let grid = *self.grid();
        let kernel = GridFunction::gaussian(grid, 2.0 * self.kappa * t)?;
        let kernel = kernel.scaled(kernel.mass().recip())?;
        convolve(&self.initial, &kernel)?.regrid(&grid)
    }

    /// Direct quadrature `h * sum_i f(x_i) M_{2 kappa t}(q - x_i)` at arbitrary points.
    pub fn evolve_at(&self, t: f64, query: &[f64]) -> Result<Vec<f64>> {
        check_time(t, true)?;
        let var = 2.0 * self.kappa * t;
        let norm = (2.0 * PI * var).sqrt().recip();
        let h = self.grid().spacing();
        let sources: Vec<(f64, f64)> = self
            .grid()
            .nodes()
            .zip(self.initial.values())
            .filter(|(_, &v)| v > 0.0)
            .map(|(x, &v)| (x, v))
            .collect();
        let at = |q: &f64| -> f64 {
            let s: f64 = sources
                .iter()
                .map(|&(x, v)| v * (-(q - x) * (q - x) / (2.0 * var)).exp())
                .sum();
            h * norm * s
        };
        #[cfg(feature = "parallel")]
        let out = query.par_iter().map(at).collect();
        #[cfg(not(feature = "parallel"))]
        let out = query.iter().map(at).collect();
        Ok(out)
    }

    /// Self-similar profile `U(x, t) = sqrt(1 + 2t) u(x sqrt(1 + 2t), t)` sampled on `grid`.
    pub fn selfsimilar_rescale(&self, t: f64, grid: &Grid) -> Result<GridFunction> {
        check_time(t, true)?;
        let s = (1.0 + 2.0 * t).sqrt();
        let query: Vec<f64> = grid.nodes().map(|x| x * s).collect();
        let values = self.evolve_at(t, &query)?;
        Ok(GridFunction::from_clamped(
            *grid,
            values.into_iter().map(|v| s * v).collect(),
        ))
    }

    /// Normalized sup residual of the power equation
    /// `d_t u^a = kappa [ u^a'' + a (1 - a) u^a |(log u)'|^2 ]`
    /// on the central quarter of the grid, from central differences.
    pub fn power_pde_residual(&self, alpha: f64, t: f64, dt: f64) -> Result<f64> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "power must be positive",
            });
        }
        if !(dt > 0.0 && t > dt) {
            return Err(Error::InvalidParameter {
                name: "dt",
                value: dt,
                reason: "need t > dt > 0",
            });
        }
        let before = power(&self.evolve(t - dt)?, alpha)?;
        let after = power(&self.evolve(t + dt)?, alpha)?;
        let u = self.evolve(t)?;
        let v = power(&u, alpha)?;
        let (u, v) = (u.values(), v.values());
        let h = self.grid().spacing();
        let n = u.len();
        let scale = v.iter().copied().fold(0.0, f64::max);
        let mut worst: f64 = 0.0;
        for i in 3 * n / 8..5 * n / 8 {
            let dt_v = (after.values()[i] - before.values()[i]) / (2.0 * dt);
            let lap = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
            let dlog = (u[i + 1] - u[i - 1]) / (2.0 * h * u[i]);
            let rhs = self.kappa * (lap + alpha * (1.0 - alpha) * v[i] * dlog * dlog);
            worst = worst.max((dt_v - rhs).abs());
        }
        Ok(worst / scale)
    }
}

fn check_time(t: f64, strictly_positive: bool) -> Result<()> {
    let ok = t.is_finite() && if strictly_positive { t > 0.0 } else { t >= 0.0 };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "t",
            value: t,
            reason: if strictly_positive {
                "time must be positive"
            } else {
                "time must be non-negative"
            },
        })
    }
}

/// Strictly increasing, non-negative sample times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct TimeGrid {
    times: Vec<f64>,
}

impl TimeGrid {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::InvalidTimeGrid("no times".into()));
        }
        if !times[0].is_finite() || times[0] < 0.0 {
            return Err(Error::InvalidTimeGrid(format!(
                "first time must be >= 0, got {}",
                times[0]
            )));
        }
        if times.windows(2).any(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
            return Err(Error::InvalidTimeGrid("times must be strictly increasing".into()));
        }
        Ok(Self { times })
    }

    /// `count` points log-spaced on `[start, end]`, `start > 0`.
    pub fn log_spaced(start: f64, end: f64, count: usize) -> Result<Self> {
        if !(start > 0.0 && end > start && count >= 2) {
            return Err(Error::InvalidTimeGrid(format!(
                "log spacing needs 0 < start < end and count >= 2 (got {start}, {end}, {count})"
            )));
        }
        let (a, b) = (start.ln(), end.ln());
        let step = (b - a) / (count - 1) as f64;
        let mut times: Vec<f64> = (0..count).map(|k| (a + step * k as f64).exp()).collect();
        times[0] = start;
        times[count - 1] = end;
        Self::new(times)
    }

    pub fn uniform(start: f64, end: f64, count: usize) -> Result<Self> {
        if !(end > start && count >= 2) {
            return Err(Error::InvalidTimeGrid(format!(
                "uniform spacing needs start < end and count >= 2 (got {start}, {end}, {count})"
            )));
        }
        let step = (end - start) / (count - 1) as f64;
        Self::new((0..count).map(|k| start + step * k as f64).collect())
    }

    /// Default trace grid: 25 log-spaced points on `[1e-3, 10]`.
    pub fn standard() -> Self {
        Self::log_spaced(1e-3, 10.0, 25).expect("static parameters")
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Common spacing when every step agrees to `rtol`, otherwise `None`.
    pub fn uniform_step(&self, rtol: f64) -> Option<f64> {
        if self.times.len() < 2 {
            return None;
        }
        let step = (self.times[self.times.len() - 1] - self.times[0]) / (self.times.len() - 1) as f64;
        self.times
            .windows(2)
            .all(|w| ((w[1] - w[0]) - step).abs() <= rtol * step)
            .then_some(step)
    }
}

impl TryFrom<Vec<f64>> for TimeGrid {
    type Error = Error;

    fn try_from(times: Vec<f64>) -> Result<Self> {
        Self::new(times)
    }
}

impl From<TimeGrid> for Vec<f64> {
    fn from(grid: TimeGrid) -> Self {
        grid.times
    }
}
