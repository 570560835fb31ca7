//! Browser bindings: sharp-constant curve, a Psi trace, and a heat profile
//! against its Gaussian limit.

use heatconv::heat::TimeGrid;
use heatconv::verification::TestDensitySpec;
use heatconv::{sharp_constant, ExponentSystem, Grid, GridFunction, HeatInput, Problem};
use wasm_bindgen::prelude::*;

const HALF_WIDTH: f64 = 16.0;
const NODES: usize = 512;

fn grid() -> Grid {
    Grid::new(HALF_WIDTH, NODES).expect("static grid")
}

fn js(err: heatconv::Error) -> JsError {
    JsError::new(&err.to_string())
}

/// `[p_0, C_0, p_1, C_1, ...]` for `count` exponents spread over `[lo, hi]`,
/// skipping `p = 1` where the constant is trivially 1.
#[wasm_bindgen]
pub fn sharp_constant_curve(lo: f64, hi: f64, count: usize, dimension: u32) -> Result<Vec<f64>, JsError> {
    if !(lo > 0.0 && hi > lo && count >= 2) {
        return Err(JsError::new("need 0 < lo < hi and count >= 2"));
    }
    let step = (hi - lo) / (count - 1) as f64;
    let mut out = Vec::with_capacity(2 * count);
    for k in 0..count {
        let p = lo + step * k as f64;
        out.push(p);
        out.push(sharp_constant(p, dimension).map_err(js)?);
    }
    Ok(out)
}

#[wasm_bindgen]
pub struct Trace {
    times: Vec<f64>,
    values: Vec<f64>,
    limit: f64,
}

#[wasm_bindgen]
impl Trace {
    #[wasm_bindgen(getter)]
    pub fn times(&self) -> Vec<f64> {
        self.times.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn limit(&self) -> f64 {
        self.limit
    }
}

/// Psi for `n = 2`, `p = (2, 2)` on seeded two-bump mixtures.
#[wasm_bindgen]
pub fn psi_trace(seed: u64, points: usize) -> Result<Trace, JsError> {
    let sys = ExponentSystem::sup(vec![2.0, 2.0]).map_err(js)?;
    let inputs = sys
        .kappas()
        .iter()
        .enumerate()
        .map(|(j, &k)| HeatInput::new(TestDensitySpec::seeded(2, j as u64).sample(grid(), seed)?, k))
        .collect::<heatconv::Result<Vec<_>>>()
        .map_err(js)?;
    let problem = Problem::new(sys, inputs).map_err(js)?;
    let times = TimeGrid::log_spaced(1e-3, 10.0, points.clamp(3, 200)).map_err(js)?;
    let trace = problem.trace(&times).map_err(js)?;
    Ok(Trace {
        times: trace.times.times().to_vec(),
        values: trace.values,
        limit: trace.analytic_limit.unwrap_or(f64::NAN),
    })
}

#[wasm_bindgen]
pub struct Profile {
    x: Vec<f64>,
    rescaled: Vec<f64>,
    gaussian: Vec<f64>,
}

#[wasm_bindgen]
impl Profile {
    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn rescaled(&self) -> Vec<f64> {
        self.rescaled.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn gaussian(&self) -> Vec<f64> {
        self.gaussian.clone()
    }

    /// Sup distance between the two curves.
    pub fn distance(&self) -> f64 {
        self.rescaled
            .iter()
            .zip(&self.gaussian)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Self-similar profile of a seeded mixture under `kappa = 1` heat flow at
/// time `t`, with the unit-variance Gaussian it converges to.
#[wasm_bindgen]
pub fn heat_profile(seed: u64, stream: u64, t: f64) -> Result<Profile, JsError> {
    let f = TestDensitySpec::seeded(2, stream).sample(grid(), seed).map_err(js)?;
    let input = HeatInput::new(f, 1.0).map_err(js)?;
    let rescaled = if t == 0.0 {
        input.initial().clone()
    } else {
        input.selfsimilar_rescale(t, &grid()).map_err(js)?
    };
    let gaussian = GridFunction::gaussian(grid(), 1.0).map_err(js)?;
    Ok(Profile {
        x: grid().nodes().collect(),
        rescaled: rescaled.into_values(),
        gaussian: gaussian.into_values(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_passes_through_known_values() {
        let curve = sharp_constant_curve(2.0, 4.0, 3, 1).unwrap();
        assert_eq!(curve.len(), 6);
        assert!((curve[1] - 1.0).abs() < 1e-15);
        assert!((curve[5] - 1.0675923981).abs() < 1e-9);
    }

    #[test]
    fn trace_rises_to_its_limit() {
        let trace = psi_trace(1, 20).unwrap();
        assert_eq!(trace.values.len(), 20);
        assert!(trace.values.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-6)));
        assert!(trace.values[19] <= trace.limit * (1.0 + 1e-6));
    }

    #[test]
    fn profile_approaches_gaussian() {
        let early = heat_profile(1, 0, 0.1).unwrap().distance();
        let late = heat_profile(1, 0, 1e3).unwrap().distance();
        assert!(late < 0.1 * early, "{early} {late}");
    }
}
