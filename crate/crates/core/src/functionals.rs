//! The five heat-flow functionals, their large-time limits and the
//! entropy-power algebra behind the Lieb bound.

use std::f64::consts::{E, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::convolution::{convolve, convolve_n, power, sup_convolve_n};
use crate::error::{Error, Result};
use crate::exponents::{dual_sharp_constant, sharp_constant, ExponentSystem, Regime};
use crate::grid::GridFunction;
use crate::heat::{HeatInput, TimeGrid};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Relative agreement required between input and system diffusion ratios.
const KAPPA_RTOL: f64 = 1e-9;
const UNIT_MASS_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Functional {
    Psi,
    Lambda,
    Upsilon,
    Phi,
    Gamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
    Constant,
}

impl Functional {
    pub fn for_regime(regime: Regime) -> Self {
        match regime {
            Regime::Sup => Functional::Psi,
            Regime::Forward | Regime::Reverse => Functional::Lambda,
            Regime::Prekopa => Functional::Upsilon,
            Regime::Entropy => Functional::Phi,
        }
    }

    /// Direction of monotonicity along the heat flow for non-Gaussian data.
    pub fn direction(self, regime: Option<Regime>) -> Direction {
        match (self, regime) {
            (Functional::Psi, _) | (Functional::Gamma, _) => Direction::Increasing,
            (Functional::Lambda, Some(Regime::Reverse)) => Direction::Decreasing,
            (Functional::Lambda, _) => Direction::Increasing,
            (Functional::Upsilon, _) | (Functional::Phi, _) => Direction::Decreasing,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Functional::Psi => "psi",
            Functional::Lambda => "lambda",
            Functional::Upsilon => "upsilon",
            Functional::Phi => "phi",
            Functional::Gamma => "gamma",
        }
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Increasing => "increasing",
            Direction::Decreasing => "decreasing",
            Direction::Constant => "constant",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalTrace {
    pub functional: Functional,
    pub label: String,
    pub times: TimeGrid,
    pub values: Vec<f64>,
    pub analytic_limit: Option<f64>,
}

impl FunctionalTrace {
    pub fn new(
        functional: Functional,
        label: impl Into<String>,
        times: TimeGrid,
        values: Vec<f64>,
        analytic_limit: Option<f64>,
    ) -> Result<Self> {
        if values.len() != times.len() {
            return Err(Error::InvalidValues(format!(
                "{} values for {} times",
                values.len(),
                times.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidValues(format!("non-finite trace value {v}")));
        }
        Ok(Self {
            functional,
            label: label.into(),
            times,
            values,
            analytic_limit,
        })
    }

    pub fn last(&self) -> f64 {
        *self.values.last().expect("trace is non-empty")
    }
}

/// A functional bound to its inputs and exponent system.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    functional: Functional,
    inputs: Vec<HeatInput>,
    system: Option<ExponentSystem>,
}

impl Problem {
    /// The functional matching the regime of `system`.
    pub fn new(system: ExponentSystem, inputs: Vec<HeatInput>) -> Result<Self> {
        Self::with_functional(Functional::for_regime(system.regime()), system, inputs)
    }

    pub fn with_functional(
        functional: Functional,
        system: ExponentSystem,
        inputs: Vec<HeatInput>,
    ) -> Result<Self> {
        if functional == Functional::Gamma {
            return Err(Error::RegimeMismatch(
                "gamma takes a single input and no exponent system".into(),
            ));
        }
        if Functional::for_regime(system.regime()) != functional {
            return Err(Error::RegimeMismatch(format!(
                "{functional} is not defined for the {} regime",
                system.regime()
            )));
        }
        if system.dimension() != 1 {
            return Err(Error::RegimeMismatch(format!(
                "grid functionals are one-dimensional, system has d = {}",
                system.dimension()
            )));
        }
        if inputs.len() != system.n() {
            return Err(Error::InvalidExponents(format!(
                "{} inputs for {} exponents",
                inputs.len(),
                system.n()
            )));
        }
        check_kappas(&inputs, system.kappas())?;
        Ok(Self {
            functional,
            inputs,
            system: Some(system),
        })
    }

    /// `Gamma` of one probability density.
    pub fn gamma(input: HeatInput) -> Result<Self> {
        let mass = input.initial().mass();
        if (mass - 1.0).abs() > UNIT_MASS_TOL {
            return Err(Error::NonUnitMass(mass));
        }
        Ok(Self {
            functional: Functional::Gamma,
            inputs: vec![input],
            system: None,
        })
    }

    pub fn functional(&self) -> Functional {
        self.functional
    }

    pub fn inputs(&self) -> &[HeatInput] {
        &self.inputs
    }

    pub fn system(&self) -> Option<&ExponentSystem> {
        self.system.as_ref()
    }

    pub fn direction(&self) -> Direction {
        self.functional.direction(self.system.as_ref().map(|s| s.regime()))
    }

    pub fn label(&self) -> String {
        match &self.system {
            Some(sys) => format!("{} {}", self.functional, sys.describe()),
            None => format!("{} kappa={}", self.functional, self.inputs[0].kappa()),
        }
    }

    /// The functional applied to already-evolved densities.
    pub fn evaluate_profiles(&self, profiles: &[GridFunction]) -> Result<f64> {
        if profiles.len() != self.inputs.len() {
            return Err(Error::InvalidValues(format!(
                "{} profiles for {} inputs",
                profiles.len(),
                self.inputs.len()
            )));
        }
        let sys = match (&self.system, self.functional) {
            (None, _) => return profiles[0].entropy_moment_functional(),
            (Some(sys), _) => sys,
        };
        match self.functional {
            Functional::Psi => Ok(powered_convolution(profiles, sys.powers())?.peak_value()),
            Functional::Lambda => powered_convolution(profiles, sys.powers())?.lp_norm(sys.r()),
            Functional::Upsilon => Ok(sup_convolve_n(profiles, sys.powers())?.mass()),
            Functional::Phi => {
                let joint = convolve_n(profiles)?.shannon_entropy()?;
                let parts = profiles
                    .iter()
                    .zip(sys.exponents())
                    .map(|(u, g)| Ok(g * u.shannon_entropy()?))
                    .sum::<Result<f64>>()?;
                Ok(joint - parts)
            }
            Functional::Gamma => unreachable!("gamma has no exponent system"),
        }
    }

    pub fn evolved(&self, t: f64) -> Result<Vec<GridFunction>> {
        self.inputs.iter().map(|u| u.evolve(t)).collect()
    }

    /// Value at time `t` from the grid-to-grid heat flow.
    pub fn at(&self, t: f64) -> Result<f64> {
        self.evaluate_profiles(&self.evolved(t)?)
    }

    /// Value at time `t` from the self-similar profiles on each input's own
    /// grid. Every functional here is dilation invariant, so this is the same
    /// quantity, but it stays resolvable for arbitrarily large `t`.
    pub fn rescaled_at(&self, t: f64) -> Result<f64> {
        let profiles = self
            .inputs
            .iter()
            .map(|u| u.selfsimilar_rescale(t, u.grid()))
            .collect::<Result<Vec<_>>>()?;
        self.evaluate_profiles(&profiles)
    }

    pub fn masses(&self) -> Vec<f64> {
        self.inputs.iter().map(|u| u.initial().mass()).collect()
    }

    /// Closed-form large-time limit from the measured input masses.
    pub fn limit(&self) -> Result<f64> {
        let masses = self.masses();
        match (&self.system, self.functional) {
            (None, _) => Ok(gamma_limit(1)),
            (Some(sys), Functional::Psi) => psi_limit(&masses, sys),
            (Some(sys), Functional::Lambda) => lambda_limit(&masses, sys),
            (Some(sys), Functional::Upsilon) => upsilon_limit(&masses, sys),
            (Some(sys), Functional::Phi) => phi_limit(sys),
            (Some(_), Functional::Gamma) => unreachable!("gamma has no exponent system"),
        }
    }

    pub fn trace(&self, times: &TimeGrid) -> Result<FunctionalTrace> {
        #[cfg(feature = "parallel")]
        let values = times.times().par_iter().map(|&t| self.at(t)).collect::<Result<Vec<_>>>()?;
        #[cfg(not(feature = "parallel"))]
        let values = times.times().iter().map(|&t| self.at(t)).collect::<Result<Vec<_>>>()?;
        FunctionalTrace::new(
            self.functional,
            self.label(),
            times.clone(),
            values,
            Some(self.limit()?),
        )
    }

    /// Same problem with every initial datum replaced by `a f(a x)`.
    pub fn dilated(&self, a: f64) -> Result<Self> {
        let inputs = self
            .inputs
            .iter()
            .map(|u| HeatInput::new(u.initial().dilate(a)?, u.kappa()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            functional: self.functional,
            inputs,
            system: self.system.clone(),
        })
    }
}

fn check_kappas(inputs: &[HeatInput], kappas: &[f64]) -> Result<()> {
    let ratio0 = inputs[0].kappa() / kappas[0];
    for (j, (u, k)) in inputs.iter().zip(kappas).enumerate() {
        let ratio = u.kappa() / k;
        if (ratio / ratio0 - 1.0).abs() > KAPPA_RTOL {
            return Err(Error::RegimeMismatch(format!(
                "input {j} has kappa {} but the system needs a common multiple of {k}",
                u.kappa()
            )));
        }
    }
    Ok(())
}

fn powered_convolution(profiles: &[GridFunction], powers: &[f64]) -> Result<GridFunction> {
    let powered = profiles
        .iter()
        .zip(powers)
        .map(|(u, &a)| power(u, a))
        .collect::<Result<Vec<_>>>()?;
    convolve_n(&powered)
}

fn require(sys: &ExponentSystem, allowed: &[Regime], what: &str) -> Result<()> {
    if allowed.contains(&sys.regime()) {
        Ok(())
    } else {
        Err(Error::RegimeMismatch(format!(
            "{what} is not defined for the {} regime",
            sys.regime()
        )))
    }
}

fn constants_times_masses(masses: &[f64], sys: &ExponentSystem) -> Result<f64> {
    if masses.len() != sys.n() {
        return Err(Error::InvalidExponents(format!(
            "{} masses for {} exponents",
            masses.len(),
            sys.n()
        )));
    }
    let d = sys.dimension();
    sys.exponents()
        .iter()
        .zip(masses)
        .map(|(&p, &m)| Ok(sharp_constant(p, d)? * m.powf(p.recip())))
        .product()
}

pub fn psi_limit(masses: &[f64], sys: &ExponentSystem) -> Result<f64> {
    require(sys, &[Regime::Sup], "psi")?;
    constants_times_masses(masses, sys)
}

pub fn lambda_limit(masses: &[f64], sys: &ExponentSystem) -> Result<f64> {
    require(sys, &[Regime::Forward, Regime::Reverse], "lambda")?;
    Ok(dual_sharp_constant(sys.r(), sys.dimension())? * constants_times_masses(masses, sys)?)
}

/// Limit of the sup-convolution mass for inputs evolved with `kappa_j = q_j^{-2}`:
/// `prod q_j^{d/q_j} m_j^{1/q_j}`.
pub fn upsilon_limit(masses: &[f64], sys: &ExponentSystem) -> Result<f64> {
    require(sys, &[Regime::Prekopa], "upsilon")?;
    if masses.len() != sys.n() {
        return Err(Error::InvalidExponents(format!(
            "{} masses for {} exponents",
            masses.len(),
            sys.n()
        )));
    }
    let d = f64::from(sys.dimension());
    Ok(sys
        .exponents()
        .iter()
        .zip(masses)
        .map(|(&q, &m)| q.powf(d / q) * m.powf(q.recip()))
        .product())
}

pub fn phi_limit(sys: &ExponentSystem) -> Result<f64> {
    require(sys, &[Regime::Entropy], "phi")?;
    let d = f64::from(sys.dimension());
    Ok(-0.5 * d * sys.exponents().iter().map(|g| g * g.ln()).sum::<f64>())
}

pub fn gamma_limit(d: u32) -> f64 {
    let d = f64::from(d);
    0.5 * d * (2.0 * PI * E / d).ln()
}

pub fn psi(inputs: &[HeatInput], sys: &ExponentSystem, t: f64) -> Result<f64> {
    Problem::with_functional(Functional::Psi, sys.clone(), inputs.to_vec())?.at(t)
}

pub fn lambda_r(inputs: &[HeatInput], sys: &ExponentSystem, t: f64) -> Result<f64> {
    Problem::with_functional(Functional::Lambda, sys.clone(), inputs.to_vec())?.at(t)
}

pub fn upsilon(inputs: &[HeatInput], sys: &ExponentSystem, t: f64) -> Result<f64> {
    Problem::with_functional(Functional::Upsilon, sys.clone(), inputs.to_vec())?.at(t)
}

pub fn phi(inputs: &[HeatInput], sys: &ExponentSystem, t: f64) -> Result<f64> {
    Problem::with_functional(Functional::Phi, sys.clone(), inputs.to_vec())?.at(t)
}

pub fn gamma_func(input: &HeatInput, t: f64) -> Result<f64> {
    Problem::gamma(input.clone())?.at(t)
}

fn check_unit_interval(a: f64) -> Result<()> {
    if a > 0.0 && a < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "a",
            value: a,
            reason: "weight must lie in (0, 1)",
        })
    }
}

/// `(1 - a) H_f + a H_g - (d/2)(a log a + (1 - a) log(1 - a))`.
pub fn lieb_bound(h_f: f64, h_g: f64, a: f64, d: u32) -> Result<f64> {
    check_unit_interval(a)?;
    let d = f64::from(d);
    Ok((1.0 - a) * h_f + a * h_g - 0.5 * d * (a * a.ln() + (1.0 - a) * (1.0 - a).ln()))
}

/// Weight maximizing [`lieb_bound`].
pub fn lieb_maximizer(h_f: f64, h_g: f64, d: u32) -> f64 {
    let z = 2.0 * (h_g - h_f) / f64::from(d);
    // e^z / (1 + e^z), written to stay finite for large |z|
    1.0 / (1.0 + (-z).exp())
}

/// `(d/2) log(e^{2 H_f / d} + e^{2 H_g / d})`, the value of the bound at its maximizer.
pub fn lieb_value(h_f: f64, h_g: f64, d: u32) -> f64 {
    let d = f64::from(d);
    let (a, b) = (2.0 * h_f / d, 2.0 * h_g / d);
    let m = a.max(b);
    0.5 * d * (m + ((a - m).exp() + (b - m).exp()).ln())
}

/// `N(f * g) - N(f) - N(g)`; non-negative by the entropy power inequality.
pub fn epi_gap(f: &GridFunction, g: &GridFunction, d: u32) -> Result<f64> {
    for u in [f, g] {
        let m = u.mass();
        if (m - 1.0).abs() > UNIT_MASS_TOL {
            return Err(Error::NonUnitMass(m));
        }
    }
    Ok(convolve(f, g)?.entropy_power(d)? - f.entropy_power(d)? - g.entropy_power(d)?)
}
