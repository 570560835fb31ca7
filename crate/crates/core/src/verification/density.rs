//! Test densities, sampled on a grid and normalized to unit discrete mass.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Grid, GridFunction};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub weight: f64,
    pub mean: f64,
    pub variance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestDensitySpec {
    Gaussian {
        variance: f64,
        #[serde(default)]
        mean: f64,
    },
    GaussianMixture {
        components: Vec<Component>,
    },
    /// Uniform density on `[left, right)`.
    Step { left: f64, right: f64 },
    /// Smooth compactly supported `exp(-1 / (1 - s^2))`, `s = (x - center) / radius`.
    Bump { center: f64, radius: f64 },
    /// Mixture drawn from a ChaCha8 stream keyed by the run seed and `stream`:
    /// weights in `[0.2, 1)`, means in `[-2.5, 2.5)`, standard deviations in `[0.4, 1)`.
    SeededRandomMixture { components: usize, stream: u64 },
}

impl TestDensitySpec {
    pub fn gaussian(variance: f64) -> Self {
        TestDensitySpec::Gaussian { variance, mean: 0.0 }
    }

    pub fn seeded(components: usize, stream: u64) -> Self {
        TestDensitySpec::SeededRandomMixture { components, stream }
    }

    pub fn is_gaussian(&self) -> bool {
        match self {
            TestDensitySpec::Gaussian { .. } => true,
            TestDensitySpec::GaussianMixture { components } => components.len() == 1,
            _ => false,
        }
    }

    /// Mixture components drawn for a seeded spec; `None` for other kinds.
    pub fn seeded_components(&self, seed: u64) -> Option<Vec<Component>> {
        let TestDensitySpec::SeededRandomMixture { components, stream } = *self else {
            return None;
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Some(
            (0..components)
                .map(|_| {
                    let weight = rng.random_range(0.2..1.0);
                    let mean = rng.random_range(-2.5..2.5);
                    let std_dev: f64 = rng.random_range(0.4..1.0);
                    Component {
                        weight,
                        mean,
                        variance: std_dev * std_dev,
                    }
                })
                .collect(),
        )
    }

    fn validate(&self) -> Result<()> {
        let bad = |what: String| Err(Error::Config(format!("test density: {what}")));
        match self {
            TestDensitySpec::Gaussian { variance, mean } => {
                if !(variance.is_finite() && *variance > 0.0 && mean.is_finite()) {
                    return bad(format!("gaussian needs a positive variance, got {variance}"));
                }
            }
            TestDensitySpec::GaussianMixture { components } => {
                if components.is_empty() {
                    return bad("empty mixture".into());
                }
                for c in components {
                    if !(c.weight > 0.0 && c.variance > 0.0 && c.mean.is_finite()) {
                        return bad(format!("invalid mixture component {c:?}"));
                    }
                }
            }
            TestDensitySpec::Step { left, right } => {
                if !(left < right) {
                    return bad(format!("step needs left < right, got [{left}, {right})"));
                }
            }
            TestDensitySpec::Bump { radius, center } => {
                if !(*radius > 0.0 && center.is_finite()) {
                    return bad(format!("bump needs a positive radius, got {radius}"));
                }
            }
            TestDensitySpec::SeededRandomMixture { components, .. } => {
                if *components == 0 {
                    return bad("seeded mixture needs at least one component".into());
                }
            }
        }
        Ok(())
    }

    /// Pointwise (unnormalized) density.
    fn profile(&self, seed: u64) -> Result<Box<dyn Fn(f64) -> f64>> {
        self.validate()?;
        let mixture = |components: Vec<Component>| -> Box<dyn Fn(f64) -> f64> {
            Box::new(move |x| {
                components
                    .iter()
                    .map(|c| {
                        let z = x - c.mean;
                        c.weight * (-z * z / (2.0 * c.variance)).exp()
                            / (2.0 * PI * c.variance).sqrt()
                    })
                    .sum()
            })
        };
        Ok(match self {
            TestDensitySpec::Gaussian { variance, mean } => mixture(vec![Component {
                weight: 1.0,
                mean: *mean,
                variance: *variance,
            }]),
            TestDensitySpec::GaussianMixture { components } => mixture(components.clone()),
            TestDensitySpec::SeededRandomMixture { .. } => {
                mixture(self.seeded_components(seed).expect("seeded spec"))
            }
            &TestDensitySpec::Step { left, right } => {
                Box::new(move |x| if x >= left && x < right { 1.0 } else { 0.0 })
            }
            &TestDensitySpec::Bump { center, radius } => Box::new(move |x| {
                let s = (x - center) / radius;
                if s.abs() < 1.0 {
                    (-1.0 / (1.0 - s * s)).exp()
                } else {
                    0.0
                }
            }),
        })
    }

    /// Samples at the nodes, rescaled to unit discrete mass.
    pub fn sample(&self, grid: Grid, seed: u64) -> Result<GridFunction> {
        self.sample_with(grid, seed, 1.0, 1.0)
    }

    /// `F(x) = f(q x)` for the unit-mass density `f`, so that `q * mass(F) = 1`.
    pub fn sample_scaled(&self, grid: Grid, seed: u64, q: f64) -> Result<GridFunction> {
        if !(q.is_finite() && q > 0.0) {
            return Err(Error::InvalidParameter {
                name: "q",
                value: q,
                reason: "scale must be positive",
            });
        }
        self.sample_with(grid, seed, q, q.recip())
    }

    fn sample_with(&self, grid: Grid, seed: u64, q: f64, mass: f64) -> Result<GridFunction> {
        let f = self.profile(seed)?;
        let raw = GridFunction::from_fn(grid, |x| f(q * x))?;
        let m = raw.mass();
        if m <= 0.0 {
            return Err(Error::ZeroMass);
        }
        let out = raw.scaled(mass / m)?;
        if !out.boundary_ok() {
            return Err(Error::InvalidValues(format!(
                "{self:?} does not decay inside [-{L}, {L}]",
                L = grid.half_width()
            )));
        }
        Ok(out)
    }
}
