//! Linear convolution, sup-convolution and the quadrature Fourier transform.
//!
//! Convolutions are zero-padded (never circular) and scaled by the grid
//! spacing so that they approximate `int f(x - y) g(y) dy`. The result lives
//! on the Minkowski sum of the two domains, embedded in the smallest
//! power-of-two grid with the same spacing.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::grid::{Grid, GridFunction};
use crate::heat::HeatInput;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

const EXPONENT_SUM_TOL: f64 = 1e-12;

/// Outputs below this fraction of the peak are FFT round-off and are zeroed.
/// Without it the reverse-regime quasi-norms (`r < 1`) amplify the noise
/// floor into relative errors near `1e-9`.
pub const FFT_NOISE_FLOOR: f64 = 1e-13;

/// Samples of a continuous Fourier transform `F f(xi) = int exp(-2 pi i x xi) f(x) dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFunction {
    frequencies: Vec<f64>,
    values: Vec<Complex64>,
}

impl SpectralFunction {
    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn frequency_spacing(&self) -> f64 {
        self.frequencies[1] - self.frequencies[0]
    }

    /// `(dxi * sum |F|^r)^(1/r)` over frequencies with `|xi| <= cap`.
    pub fn abs_norm(&self, r: f64, cap: Option<f64>) -> f64 {
        let cap = cap.unwrap_or(f64::INFINITY);
        let sum: f64 = self
            .frequencies
            .iter()
            .zip(&self.values)
            .filter(|(xi, _)| xi.abs() <= cap)
            .map(|(_, v)| v.norm().powf(r))
            .sum();
        (self.frequency_spacing() * sum).powf(r.recip())
    }

    /// Value at frequency `xi` if it is one of the sample frequencies.
    pub fn at(&self, xi: f64) -> Option<Complex64> {
        let k = ((xi - self.frequencies[0]) / self.frequency_spacing()).round();
        if k < 0.0 || k as usize >= self.values.len() {
            return None;
        }
        let k = k as usize;
        ((self.frequencies[k] - xi).abs() < 1e-9 * self.frequency_spacing().max(1.0))
            .then(|| self.values[k])
    }
}

fn fft_forward(buf: &mut [Complex64]) {
    FftPlanner::<f64>::new()
        .plan_fft_forward(buf.len())
        .process(buf);
}

fn fft_inverse(buf: &mut [Complex64]) {
    FftPlanner::<f64>::new()
        .plan_fft_inverse(buf.len())
        .process(buf);
}

/// Zero-padded linear convolution of two raw sequences (length `a + b - 1`).
fn linear_convolve_raw(a: &[f64], b: &[f64]) -> Vec<f64> {
    let out_len = a.len() + b.len() - 1;
    let n = out_len.next_power_of_two();
    let lift = |src: &[f64]| -> Vec<Complex64> {
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for (dst, &v) in buf.iter_mut().zip(src) {
            dst.re = v;
        }
        buf
    };
    let mut fa = lift(a);
    let mut fb = lift(b);
    fft_forward(&mut fa);
    fft_forward(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    fft_inverse(&mut fa);
    let scale = (n as f64).recip();
    let mut out: Vec<f64> = fa[..out_len].iter().map(|z| z.re * scale).collect();
    let floor = FFT_NOISE_FLOOR * out.iter().copied().fold(0.0, f64::max);
    for v in &mut out {
        if *v < floor {
            *v = 0.0;
        }
    }
    out
}

/// Grid holding the Minkowski sum of two grids with a common spacing, and the
/// index where raw output sample 0 lands.
fn sum_grid(left: &Grid, right: &Grid) -> Result<(Grid, usize)> {
    left.check_spacing(right)?;
    let span = left.len() + right.len();
    let count = span.next_power_of_two();
    let grid = Grid::with_spacing(left.spacing(), count)?;
    Ok((grid, (count - span) / 2))
}

pub fn power(f: &GridFunction, alpha: f64) -> Result<GridFunction> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "power must be positive",
        });
    }
    if alpha == 1.0 {
        return Ok(f.clone());
    }
    Ok(GridFunction::from_clamped(
        *f.grid(),
        f.values()
            .iter()
            .map(|&v| if v > 0.0 { v.powf(alpha) } else { 0.0 })
            .collect(),
    ))
}

/// `h * sum_j f(x - y_j) g(y_j)` on the Minkowski-sum grid, computed by FFT.
pub fn convolve(f: &GridFunction, g: &GridFunction) -> Result<GridFunction> {
    let (grid, pad) = sum_grid(f.grid(), g.grid())?;
    let raw = linear_convolve_raw(f.values(), g.values());
    let h = f.spacing();
    let mut out = vec![0.0; grid.len()];
    for (dst, v) in out[pad..].iter_mut().zip(raw) {
        *dst = h * v;
    }
    Ok(GridFunction::from_clamped(grid, out))
}

/// Left fold of [`convolve`].
pub fn convolve_n(fs: &[GridFunction]) -> Result<GridFunction> {
    let (first, rest) = fs.split_first().ok_or(Error::EmptyInput)?;
    rest.iter()
        .try_fold(first.clone(), |acc, f| convolve(&acc, f))
}

/// `u_1(t)^{alpha_1} * ... * u_n(t)^{alpha_n}`.
pub fn w_of_t(inputs: &[HeatInput], exponents: &[f64], t: f64) -> Result<GridFunction> {
    if inputs.is_empty() {
        return Err(Error::EmptyInput);
    }
    if inputs.len() != exponents.len() {
        return Err(Error::InvalidExponents(format!(
            "{} inputs but {} exponents",
            inputs.len(),
            exponents.len()
        )));
    }
    let powered = inputs
        .iter()
        .zip(exponents)
        .map(|(input, &alpha)| power(&input.evolve(t)?, alpha))
        .collect::<Result<Vec<_>>>()?;
    convolve_n(&powered)
}

/// `max_y f(x - y) g(y)` over grid-representable `y`; brute force `O(N^2)`.
pub fn sup_convolution_pair(f: &GridFunction, g: &GridFunction) -> Result<GridFunction> {
    let (grid, pad) = sum_grid(f.grid(), g.grid())?;
    let (a, b) = (f.values(), g.values());
    let raw_len = a.len() + b.len() - 1;
    let at = |k: usize| -> f64 {
        let lo = k.saturating_sub(b.len() - 1);
        let hi = k.min(a.len() - 1);
        (lo..=hi).map(|i| a[i] * b[k - i]).fold(0.0, f64::max)
    };
    #[cfg(feature = "parallel")]
    let raw: Vec<f64> = (0..raw_len).into_par_iter().map(at).collect();
    #[cfg(not(feature = "parallel"))]
    let raw: Vec<f64> = (0..raw_len).map(at).collect();
    let mut out = vec![0.0; grid.len()];
    out[pad..pad + raw_len].copy_from_slice(&raw);
    Ok(GridFunction::from_clamped(grid, out))
}

/// `sup_{x_1..x_{n-1}} f_1(x - x_1)^{a_1} ... f_n(x_{n-1})^{a_n}` with `sum a_j = 1`.
///
/// The chain factorises, so the joint supremum is the iterated pairwise one.
pub fn sup_convolve_n(fs: &[GridFunction], powers: &[f64]) -> Result<GridFunction> {
    if fs.is_empty() {
        return Err(Error::EmptyInput);
    }
    if fs.len() != powers.len() {
        return Err(Error::InvalidExponents(format!(
            "{} functions but {} powers",
            fs.len(),
            powers.len()
        )));
    }
    let total: f64 = powers.iter().sum();
    if (total - 1.0).abs() > EXPONENT_SUM_TOL {
        return Err(Error::InvalidExponents(format!(
            "sup-convolution powers must sum to 1, got {total}"
        )));
    }
    if fs.len() > 1 && powers.iter().any(|&a| !(a > 0.0 && a < 1.0)) {
        return Err(Error::InvalidExponents(
            "sup-convolution requires q_j > 1".into(),
        ));
    }
    let powered = fs
        .iter()
        .zip(powers)
        .map(|(f, &a)| power(f, a))
        .collect::<Result<Vec<_>>>()?;
    let (first, rest) = powered.split_first().expect("non-empty");
    rest.iter()
        .try_fold(first.clone(), |acc, f| sup_convolution_pair(&acc, f))
}

/// Quadrature transform on `xi_k = k / (2L)`, `k = -N/2 .. N/2 - 1`,
/// phase-corrected for the grid starting at `-L`.
pub fn fourier_transform(f: &GridFunction) -> SpectralFunction {
    let grid = f.grid();
    let n = grid.len();
    let h = grid.spacing();
    let mut buf: Vec<Complex64> = f.values().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft_forward(&mut buf);
    let dxi = 1.0 / (2.0 * grid.half_width());
    let half = n as isize / 2;
    let (frequencies, values) = (-half..half)
        .map(|k| {
            let idx = k.rem_euclid(n as isize) as usize;
            // exp(2 pi i L xi_k) = (-1)^k
            let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            (k as f64 * dxi, buf[idx] * (sign * h))
        })
        .unzip();
    SpectralFunction {
        frequencies,
        values,
    }
}
