//! Verification suites: functional traces, equality cases and the classical
//! inequalities that follow from them.

use std::f64::consts::{E, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::convolution::{convolve, convolve_n, fourier_transform, power, sup_convolve_n};
use crate::error::{Error, Result};
use crate::exponents::{dual_exponent, sharp_constant, young_constant, ExponentSystem, Regime};
use crate::functionals::{
    epi_gap, lieb_bound, lieb_maximizer, lieb_value, Direction, Functional, FunctionalTrace,
    Problem,
};
use crate::grid::{Grid, GridFunction};
use crate::heat::{HeatInput, TimeGrid};
use crate::verification::density::TestDensitySpec;
use crate::verification::report::{
    equality_report, monotonicity_report, point_limit_report, CheckRecord, VerificationReport,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub monotonicity: f64,
    pub flatness: f64,
    pub limit: f64,
    pub entropy_limit: f64,
    pub equality_limit: f64,
    pub oracle: f64,
    pub dilation: f64,
    pub holder: f64,
    pub epi: f64,
    pub lieb_value: f64,
    pub concavity_linear: f64,
    pub concavity_band: f64,
    pub blachman: f64,
    pub parseval: f64,
    pub babenko_gaussian: f64,
    pub babenko_agreement: f64,
    pub young_equality: f64,
    pub closure: f64,
    pub power_pde: f64,
    pub prekopa_margin: f64,
    pub entropy_margin: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            monotonicity: 1e-6,
            flatness: 1e-4,
            limit: 0.02,
            entropy_limit: 0.01,
            equality_limit: 1e-3,
            oracle: 1e-10,
            dilation: 1e-10,
            holder: 1e-8,
            epi: 1e-3,
            lieb_value: 1e-6,
            concavity_linear: 1e-3,
            concavity_band: 1e-4,
            blachman: 1e-3,
            parseval: 1e-6,
            babenko_gaussian: 1e-3,
            babenko_agreement: 1e-6,
            young_equality: 1e-3,
            closure: 1e-6,
            power_pde: 1e-3,
            prekopa_margin: 1e-6,
            entropy_margin: 1e-4,
        }
    }
}

impl Tolerances {
    /// Every tolerance set to `value`.
    pub fn uniform(value: f64) -> Self {
        Self {
            monotonicity: value,
            flatness: value,
            limit: value,
            entropy_limit: value,
            equality_limit: value,
            oracle: value,
            dilation: value,
            holder: value,
            epi: value,
            lieb_value: value,
            concavity_linear: value,
            concavity_band: value,
            blachman: value,
            parseval: value,
            babenko_gaussian: value,
            babenko_agreement: value,
            young_equality: value,
            closure: value,
            power_pde: value,
            prekopa_margin: value,
            entropy_margin: value,
        }
    }
}

/// Everything a suite needs besides its own parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteContext {
    pub grid: Grid,
    pub times: TimeGrid,
    /// Large times for the self-similar limit evaluation; the last one is gated.
    pub limit_times: Vec<f64>,
    pub seed: u64,
    pub tol: Tolerances,
}

impl SuiteContext {
    pub fn standard(seed: u64) -> Self {
        Self {
            grid: Grid::new(16.0, 2048).expect("static grid"),
            times: TimeGrid::standard(),
            limit_times: vec![1e2, 1e3],
            seed,
            tol: Tolerances::default(),
        }
    }

    pub fn sample(&self, spec: &TestDensitySpec) -> Result<GridFunction> {
        spec.sample(self.grid, self.seed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub report: VerificationReport,
    pub traces: Vec<FunctionalTrace>,
}

impl SuiteOutcome {
    fn plain(report: VerificationReport) -> Self {
        Self {
            report,
            traces: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosureConfig {
    pub p: [f64; 3],
    pub kappa: [f64; 3],
    /// Number of leading entries in use (2 or 3).
    pub n: usize,
}

impl ClosureConfig {
    pub fn pair(p: [f64; 2], kappa: [f64; 2]) -> Self {
        Self {
            p: [p[0], p[1], 0.0],
            kappa: [kappa[0], kappa[1], 0.0],
            n: 2,
        }
    }

    pub fn triple(p: [f64; 3], kappa: [f64; 3]) -> Self {
        Self { p, kappa, n: 3 }
    }

    fn exponents(&self) -> Vec<f64> {
        self.p[..self.n].to_vec()
    }

    fn kappas(&self) -> Vec<f64> {
        self.kappa[..self.n].to_vec()
    }
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SuiteSpec {
    Psi {
        p: Vec<f64>,
        #[serde(default = "one")]
        scale: f64,
        densities: Vec<TestDensitySpec>,
    },
    PsiEquality {
        p: Vec<f64>,
        scales: Vec<f64>,
    },
    Lambda {
        p: Vec<f64>,
        r: f64,
        #[serde(default = "one")]
        scale: f64,
        densities: Vec<TestDensitySpec>,
    },
    LambdaEquality {
        p: Vec<f64>,
        r: f64,
        #[serde(default = "one")]
        scale: f64,
    },
    Upsilon {
        q: Vec<f64>,
        densities: Vec<TestDensitySpec>,
        pl_pairs: usize,
        pl_stream: u64,
    },
    UpsilonEquality {
        q: Vec<f64>,
    },
    Phi {
        gamma: Vec<f64>,
        #[serde(default = "one")]
        scale: f64,
        densities: Vec<TestDensitySpec>,
        simplex_densities: Vec<TestDensitySpec>,
        simplex_steps: usize,
    },
    PhiEquality {
        gamma: Vec<f64>,
        #[serde(default = "one")]
        scale: f64,
    },
    Gamma {
        kappa: f64,
        density: TestDensitySpec,
    },
    Epi {
        pairs: Vec<[TestDensitySpec; 2]>,
        triple: Vec<TestDensitySpec>,
        simplex_steps: usize,
    },
    Concavity {
        gaussian_variance: f64,
        mixture: TestDensitySpec,
        kappa: f64,
        t_end: f64,
        points: usize,
    },
    Blachman {
        gaussian_variance: f64,
        inputs: Vec<TestDensitySpec>,
        lambda_count: usize,
        lambda_stream: u64,
    },
    Babenko {
        gaussian_variance: f64,
        mixture: TestDensitySpec,
    },
    Young {
        p: f64,
        q: f64,
        r: f64,
        pair: [TestDensitySpec; 2],
    },
    GaussianClosure {
        configs: Vec<ClosureConfig>,
        t_start: f64,
        t_end: f64,
        points: usize,
    },
    PowerPde {
        alphas: Vec<f64>,
        variance: f64,
        kappa: f64,
        t: f64,
        dt: f64,
    },
    Dilation {
        factors: Vec<f64>,
        t: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedSuite {
    pub name: String,
    #[serde(flatten)]
    pub spec: SuiteSpec,
}

impl NamedSuite {
    pub fn new(name: impl Into<String>, spec: SuiteSpec) -> Self {
        Self {
            name: name.into(),
            spec,
        }
    }

    pub fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        let mut out = self.spec.run(ctx)?;
        out.report.suite = self.name.clone();
        Ok(out)
    }
}

impl SuiteSpec {
    /// Rejects parameter sets that cannot run, without running anything.
    pub fn validate(&self) -> Result<()> {
        match self {
            SuiteSpec::Psi { p, scale, .. } => {
                ExponentSystem::sup(p.clone())?.with_scale(*scale)?;
            }
            SuiteSpec::PsiEquality { p, scales } => {
                for &c in scales {
                    ExponentSystem::sup(p.clone())?.with_scale(c)?;
                }
            }
            SuiteSpec::Lambda { p, r, scale, .. } | SuiteSpec::LambdaEquality { p, r, scale } => {
                lambda_system(p, *r, *scale)?;
            }
            SuiteSpec::Upsilon { q, .. } | SuiteSpec::UpsilonEquality { q } => {
                ExponentSystem::prekopa(q.clone())?;
            }
            SuiteSpec::Phi { gamma, scale, .. } | SuiteSpec::PhiEquality { gamma, scale } => {
                ExponentSystem::entropy(gamma.clone())?.with_scale(*scale)?;
            }
            SuiteSpec::Young { p, q, r, .. } => {
                young_exponents(*p, *q, *r)?;
            }
            SuiteSpec::GaussianClosure { configs, .. } => {
                for c in configs {
                    ExponentSystem::sup(c.exponents())?;
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        self.validate()?;
        match self {
            SuiteSpec::Psi { p, scale, densities } => {
                let sys = ExponentSystem::sup(p.clone())?.with_scale(*scale)?;
                functional_suite(ctx, &sys, densities)
            }
            SuiteSpec::PsiEquality { p, scales } => {
                let mut reports = Vec::new();
                let mut traces = Vec::new();
                for &c in scales {
                    let sys = ExponentSystem::sup(p.clone())?.with_scale(c)?;
                    let out = equality_suite(ctx, &sys)?;
                    reports.push(out.report);
                    traces.extend(out.traces);
                }
                Ok(SuiteOutcome {
                    report: VerificationReport::merge("psi_equality", Some(Direction::Constant), reports),
                    traces,
                })
            }
            SuiteSpec::Lambda { p, r, scale, densities } => {
                functional_suite(ctx, &lambda_system(p, *r, *scale)?, densities)
            }
            SuiteSpec::LambdaEquality { p, r, scale } => {
                equality_suite(ctx, &lambda_system(p, *r, *scale)?)
            }
            SuiteSpec::Upsilon {
                q,
                densities,
                pl_pairs,
                pl_stream,
            } => {
                let sys = ExponentSystem::prekopa(q.clone())?;
                let trace = functional_suite(ctx, &sys, densities)?;
                let pairs = prekopa_pairs(ctx, &sys, *pl_pairs, *pl_stream)?;
                Ok(SuiteOutcome {
                    report: VerificationReport::merge(
                        "upsilon",
                        Some(Direction::Decreasing),
                        vec![trace.report, pairs],
                    ),
                    traces: trace.traces,
                })
            }
            SuiteSpec::UpsilonEquality { q } => {
                equality_suite(ctx, &ExponentSystem::prekopa(q.clone())?)
            }
            SuiteSpec::Phi {
                gamma,
                scale,
                densities,
                simplex_densities,
                simplex_steps,
            } => {
                let sys = ExponentSystem::entropy(gamma.clone())?.with_scale(*scale)?;
                let trace = functional_suite(ctx, &sys, densities)?;
                let simplex = entropy_simplex(ctx, simplex_densities, *simplex_steps)?;
                Ok(SuiteOutcome {
                    report: VerificationReport::merge(
                        "phi",
                        Some(Direction::Decreasing),
                        vec![trace.report, simplex],
                    ),
                    traces: trace.traces,
                })
            }
            SuiteSpec::PhiEquality { gamma, scale } => {
                let sys = ExponentSystem::entropy(gamma.clone())?.with_scale(*scale)?;
                equality_suite(ctx, &sys)
            }
            SuiteSpec::Gamma { kappa, density } => gamma_suite(ctx, *kappa, density),
            SuiteSpec::Epi {
                pairs,
                triple,
                simplex_steps,
            } => {
                let mut parts = Vec::new();
                for (k, [f, g]) in pairs.iter().enumerate() {
                    let (fs, gs) = (ctx.sample(f)?, ctx.sample(g)?);
                    let gaussian = f.is_gaussian() && g.is_gaussian();
                    let mut part = epi_suite(ctx, &fs, &gs, gaussian)?;
                    part.suite = format!("pair{k}");
                    parts.push(part);
                }
                parts.push(entropy_simplex(ctx, triple, *simplex_steps)?);
                Ok(SuiteOutcome::plain(VerificationReport::merge("epi", None, parts)))
            }
            SuiteSpec::Concavity {
                gaussian_variance,
                mixture,
                kappa,
                t_end,
                points,
            } => {
                let times = TimeGrid::uniform(0.0, *t_end, *points)?;
                let gauss = HeatInput::new(GridFunction::gaussian(ctx.grid, *gaussian_variance)?, *kappa)?;
                let mix = HeatInput::new(ctx.sample(mixture)?, *kappa)?;
                let mut a = concavity_suite(ctx, &gauss, &times, true)?;
                a.suite = "gaussian".into();
                let mut b = concavity_suite(ctx, &mix, &times, false)?;
                b.suite = "mixture".into();
                Ok(SuiteOutcome::plain(VerificationReport::merge("concavity", None, vec![a, b])))
            }
            SuiteSpec::Blachman {
                gaussian_variance,
                inputs,
                lambda_count,
                lambda_stream,
            } => {
                let g = GridFunction::gaussian(ctx.grid, *gaussian_variance)?;
                let mut eq = blachman_suite(ctx, &[g.clone(), g], &[vec![0.5, 0.5]], true)?;
                eq.suite = "gaussian".into();
                let fs = inputs.iter().map(|s| ctx.sample(s)).collect::<Result<Vec<_>>>()?;
                let lambdas = seeded_simplex(ctx.seed, *lambda_stream, fs.len(), *lambda_count);
                let mut mix = blachman_suite(ctx, &fs, &lambdas, false)?;
                mix.suite = "mixtures".into();
                let pair = [fs[0].clone(), fs[1 % fs.len()].clone()];
                let mut edge = blachman_suite(ctx, &pair, &[vec![0.99, 0.01]], false)?;
                edge.suite = "near_vertex".into();
                Ok(SuiteOutcome::plain(VerificationReport::merge(
                    "blachman",
                    None,
                    vec![eq, mix, edge],
                )))
            }
            SuiteSpec::Babenko {
                gaussian_variance,
                mixture,
            } => {
                let g = GridFunction::gaussian(ctx.grid, *gaussian_variance)?;
                let m = ctx.sample(mixture)?;
                let mut parts = Vec::new();
                for (name, f, q, expect) in [
                    ("parseval_gaussian", &g, 2, BabenkoExpectation::Equal(ctx.tol.parseval)),
                    ("parseval_mixture", &m, 2, BabenkoExpectation::Equal(ctx.tol.parseval)),
                    ("q4_gaussian", &g, 4, BabenkoExpectation::Equal(ctx.tol.babenko_gaussian)),
                    ("q4_mixture", &m, 4, BabenkoExpectation::Strict),
                ] {
                    let mut part = babenko_suite(ctx, f, q, expect)?;
                    part.suite = name.into();
                    parts.push(part);
                }
                Ok(SuiteOutcome::plain(VerificationReport::merge("babenko", None, parts)))
            }
            SuiteSpec::Young { p, q, r, pair } => {
                let (f, g) = (ctx.sample(&pair[0])?, ctx.sample(&pair[1])?);
                Ok(SuiteOutcome::plain(young_suite(ctx, &f, &g, *p, *q, *r)?))
            }
            SuiteSpec::GaussianClosure {
                configs,
                t_start,
                t_end,
                points,
            } => {
                let times = TimeGrid::log_spaced(*t_start, *t_end, *points)?;
                let parts = configs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| {
                        let mut r = gaussian_closure_suite(ctx, &c.exponents(), &c.kappas(), &times)?;
                        r.suite = format!("config{k}");
                        Ok(r)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SuiteOutcome::plain(VerificationReport::merge(
                    "gaussian_closure",
                    Some(Direction::Increasing),
                    parts,
                )))
            }
            SuiteSpec::PowerPde {
                alphas,
                variance,
                kappa,
                t,
                dt,
            } => Ok(SuiteOutcome::plain(power_pde_suite(ctx, alphas, *variance, *kappa, *t, *dt)?)),
            SuiteSpec::Dilation { factors, t } => Ok(SuiteOutcome::plain(dilation_suite(ctx, factors, *t)?)),
        }
    }
}

fn lambda_system(p: &[f64], r: f64, scale: f64) -> Result<ExponentSystem> {
    let regime = if r < 1.0 { Regime::Reverse } else { Regime::Forward };
    ExponentSystem::new(regime, p.to_vec(), r, 1, scale)
}

/// Inputs for a functional: the substituted `f_j(q_j x)` for the sup-convolution,
/// the densities themselves otherwise.
pub fn heat_inputs(
    ctx: &SuiteContext,
    sys: &ExponentSystem,
    densities: &[TestDensitySpec],
) -> Result<Vec<HeatInput>> {
    if densities.len() != sys.n() {
        return Err(Error::Config(format!(
            "{} densities for {} exponents",
            densities.len(),
            sys.n()
        )));
    }
    densities
        .iter()
        .zip(sys.exponents().iter().zip(sys.kappas()))
        .map(|(spec, (&q, &kappa))| {
            let f = match sys.regime() {
                Regime::Prekopa => spec.sample_scaled(ctx.grid, ctx.seed, q)?,
                _ => ctx.sample(spec)?,
            };
            HeatInput::new(f, kappa)
        })
        .collect()
}

fn limit_tolerance(ctx: &SuiteContext, functional: Functional) -> f64 {
    match functional {
        Functional::Phi | Functional::Gamma => ctx.tol.entropy_limit,
        _ => ctx.tol.limit,
    }
}

/// Trace over the context time grid, monotonicity in the expected direction,
/// and the self-similar limit at the context's large times.
pub fn trace_problem(ctx: &SuiteContext, problem: &Problem) -> Result<SuiteOutcome> {
    let trace = problem.trace(&ctx.times)?;
    let limit = trace.analytic_limit.ok_or(Error::MissingLimit)?;
    let mut mono = monotonicity_report(&trace, problem.direction(), ctx.tol.monotonicity)?;
    mono.suite = "trace".into();
    let mut parts = vec![mono];
    let tol = limit_tolerance(ctx, problem.functional());
    let last = ctx.limit_times.len().saturating_sub(1);
    for (k, &t) in ctx.limit_times.iter().enumerate() {
        let value = problem.rescaled_at(t)?;
        let mut r = point_limit_report(format!("rescaled_t{t:e}"), value, limit, tol);
        if k != last {
            for c in &mut r.details {
                c.gating = false;
            }
        }
        parts.push(r);
    }
    if problem.functional() == Functional::Psi {
        let sys = problem.system().expect("psi has a system");
        let bound: f64 = problem
            .masses()
            .iter()
            .zip(sys.exponents())
            .map(|(m, p)| m.powf(p.recip()))
            .product();
        let worst = trace.values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        parts.push(VerificationReport::from_checks(
            "holder",
            None,
            vec![CheckRecord::at_most("psi_below_mass_product", worst, bound, ctx.tol.holder)],
        ));
    }
    if problem.functional() == Functional::Upsilon {
        let lowest = trace.values.iter().copied().fold(f64::INFINITY, f64::min);
        parts.push(VerificationReport::from_checks(
            "lower_bound",
            None,
            vec![CheckRecord::at_least("upsilon_above_limit", lowest / limit, 1.0, ctx.tol.prekopa_margin)],
        ));
    }
    Ok(SuiteOutcome {
        report: VerificationReport::merge("functional", Some(problem.direction()), parts),
        traces: vec![trace],
    })
}

pub fn functional_suite(
    ctx: &SuiteContext,
    sys: &ExponentSystem,
    densities: &[TestDensitySpec],
) -> Result<SuiteOutcome> {
    let problem = Problem::new(sys.clone(), heat_inputs(ctx, sys, densities)?)?;
    trace_problem(ctx, &problem)
}

/// Gaussian initial data of variance `kappa_j` (the system's, scale included).
pub fn gaussian_problem(ctx: &SuiteContext, sys: &ExponentSystem) -> Result<Problem> {
    let inputs = sys
        .kappas()
        .iter()
        .map(|&k| HeatInput::new(GridFunction::gaussian(ctx.grid, k)?, k))
        .collect::<Result<Vec<_>>>()?;
    Problem::new(sys.clone(), inputs)
}

pub fn equality_suite(ctx: &SuiteContext, sys: &ExponentSystem) -> Result<SuiteOutcome> {
    let problem = gaussian_problem(ctx, sys)?;
    let trace = problem.trace(&ctx.times)?;
    let report = equality_report(&trace, ctx.tol.flatness, ctx.tol.equality_limit)?;
    Ok(SuiteOutcome {
        report,
        traces: vec![trace],
    })
}

pub fn gamma_suite(ctx: &SuiteContext, kappa: f64, density: &TestDensitySpec) -> Result<SuiteOutcome> {
    let problem = Problem::gamma(HeatInput::new(ctx.sample(density)?, kappa)?)?;
    let mut out = trace_problem(ctx, &problem)?;
    let g = Problem::gamma(HeatInput::new(GridFunction::gaussian(ctx.grid, 1.0)?, kappa)?)?;
    let flat = g.trace(&ctx.times)?;
    let mut eq = equality_report(&flat, ctx.tol.flatness, ctx.tol.equality_limit)?;
    eq.suite = "gaussian".into();
    out.report = VerificationReport::merge("gamma", Some(Direction::Increasing), vec![out.report, eq]);
    Ok(out)
}

/// `sup`-convolution mass against `prod ||f_j||_1^{1/q_j}` for seeded pairs.
pub fn prekopa_pairs(
    ctx: &SuiteContext,
    sys: &ExponentSystem,
    pairs: usize,
    stream: u64,
) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    for k in 0..pairs as u64 {
        let fs = sys
            .exponents()
            .iter()
            .enumerate()
            .map(|(j, &q)| {
                TestDensitySpec::seeded(2, stream + k * sys.n() as u64 + j as u64)
                    .sample_scaled(ctx.grid, ctx.seed, q)
            })
            .collect::<Result<Vec<_>>>()?;
        let h = sup_convolve_n(&fs, sys.powers())?.mass();
        let bound: f64 = fs
            .iter()
            .zip(sys.exponents())
            .map(|(f, &q)| (q * f.mass()).powf(q.recip()))
            .product();
        checks.push(CheckRecord::at_least(
            format!("pair{k}"),
            h / bound,
            1.0,
            ctx.tol.prekopa_margin,
        ));
    }
    Ok(VerificationReport::from_checks("prekopa_pairs", None, checks))
}

/// `H(f_1 * ... * f_n) >= sum gamma_j H(f_j) - (1/2) sum gamma_j log gamma_j`
/// on the simplex grid `gamma = k / steps`, `k_j >= 1`.
pub fn entropy_simplex(
    ctx: &SuiteContext,
    densities: &[TestDensitySpec],
    steps: usize,
) -> Result<VerificationReport> {
    let fs = densities.iter().map(|s| ctx.sample(s)).collect::<Result<Vec<_>>>()?;
    let joint = convolve_n(&fs)?.shannon_entropy()?;
    let parts = fs.iter().map(|f| f.shannon_entropy()).collect::<Result<Vec<_>>>()?;
    let mut worst = f64::NEG_INFINITY;
    let mut count = 0;
    for gamma in simplex_grid(fs.len(), steps) {
        let bound: f64 = gamma
            .iter()
            .zip(&parts)
            .map(|(g, h)| g * h - 0.5 * g * g.ln())
            .sum();
        worst = worst.max(bound - joint);
        count += 1;
    }
    Ok(VerificationReport::from_checks(
        "entropy_simplex",
        None,
        vec![
            CheckRecord::violation("bound_excess", worst, ctx.tol.entropy_margin),
            CheckRecord::info("grid_points", count as f64),
        ],
    ))
}

/// Interior points of the simplex with coordinates in `(1/steps) Z`.
pub fn simplex_grid(n: usize, steps: usize) -> Vec<Vec<f64>> {
    fn rec(n: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 1 {
            if left >= 1 {
                prefix.push(left);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for k in 1..left {
            prefix.push(k);
            rec(n - 1, left - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, steps, &mut Vec::new(), &mut out);
    }
    out.into_iter()
        .map(|ks| ks.into_iter().map(|k| k as f64 / steps as f64).collect())
        .collect()
}

fn seeded_simplex(seed: u64, stream: u64, n: usize, count: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    (0..count)
        .map(|_| {
            let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
            let total: f64 = raw.iter().sum();
            raw.into_iter().map(|v| v / total).collect()
        })
        .collect()
}

/// Entropy power inequality, the Lieb bound on an `a`-grid, and its maximizer.
pub fn epi_suite(
    ctx: &SuiteContext,
    f: &GridFunction,
    g: &GridFunction,
    gaussian_pair: bool,
) -> Result<VerificationReport> {
    let d = 1;
    let gap = epi_gap(f, g, d)?;
    let joint = convolve(f, g)?;
    let scale = joint.entropy_power(d)?;
    let mut checks = Vec::new();
    if gaussian_pair {
        checks.push(CheckRecord::violation("gaussian_gap", gap.abs() / scale, ctx.tol.epi));
    } else {
        checks.push(CheckRecord::at_least("epi_gap", gap / scale, 0.0, ctx.tol.epi));
        checks.push(CheckRecord::strictly_below("epi_strict", -gap, 0.0));
    }
    let (hf, hg, hfg) = (f.shannon_entropy()?, g.shannon_entropy()?, joint.shannon_entropy()?);
    let a_grid: Vec<f64> = (1..200).map(|k| k as f64 / 200.0).collect();
    let bounds = a_grid
        .iter()
        .map(|&a| lieb_bound(hf, hg, a, d))
        .collect::<Result<Vec<_>>>()?;
    let worst = bounds.iter().map(|b| b - hfg).fold(f64::NEG_INFINITY, f64::max);
    checks.push(CheckRecord::violation("lieb_bound_excess", worst, ctx.tol.epi));
    let best = bounds
        .iter()
        .enumerate()
        .fold(0, |best, (k, &b)| if b > bounds[best] { k } else { best });
    let a_bar = lieb_maximizer(hf, hg, d);
    checks.push(CheckRecord::violation(
        "maximizer_offset_steps",
        (a_grid[best] - a_bar).abs() * 200.0,
        1.0,
    ));
    let analytic = lieb_value(hf, hg, d);
    let at_bar = if a_bar > 0.0 && a_bar < 1.0 {
        lieb_bound(hf, hg, a_bar, d)?
    } else {
        analytic
    };
    checks.push(CheckRecord::violation(
        "value_identity",
        (at_bar - analytic).abs() / analytic.abs().max(1.0),
        ctx.tol.lieb_value,
    ));
    checks.push(CheckRecord::info("a_bar", a_bar));
    checks.push(CheckRecord::info("gap", gap));
    Ok(VerificationReport::from_checks("epi", None, checks))
}

/// Second differences of `N(u(t))` on a uniform time grid.
pub fn concavity_suite(
    ctx: &SuiteContext,
    input: &HeatInput,
    times: &TimeGrid,
    expect_linear: bool,
) -> Result<VerificationReport> {
    if times.uniform_step(1e-9).is_none() {
        return Err(Error::InvalidTimeGrid("concavity needs a uniform time grid".into()));
    }
    let mass = input.initial().mass();
    if (mass - 1.0).abs() > 1e-6 {
        return Err(Error::NonUnitMass(mass));
    }
    let powers = times
        .times()
        .iter()
        .map(|&t| input.evolve(t)?.entropy_power(1))
        .collect::<Result<Vec<_>>>()?;
    let scale = powers.iter().copied().fold(0.0, f64::max);
    let second: Vec<f64> = powers.windows(3).map(|w| (w[2] - 2.0 * w[1] + w[0]) / scale).collect();
    let checks = if expect_linear {
        let worst = second.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let slope = (powers[powers.len() - 1] - powers[0])
            / (times.times()[times.len() - 1] - times.times()[0]);
        vec![
            CheckRecord::violation("second_difference_abs", worst, ctx.tol.concavity_linear),
            CheckRecord::info("slope_over_4_pi_e_kappa", slope / (4.0 * PI * E * input.kappa())),
        ]
    } else {
        let worst = second.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        vec![CheckRecord::violation("second_difference_max", worst, ctx.tol.concavity_band)]
    };
    Ok(VerificationReport::from_checks("concavity", None, checks))
}

/// `I(f_1 * ... * f_n) <= sum lambda_j^2 I(f_j)` for each weight vector.
pub fn blachman_suite(
    ctx: &SuiteContext,
    inputs: &[GridFunction],
    lambdas: &[Vec<f64>],
    expect_equality: bool,
) -> Result<VerificationReport> {
    let lhs = convolve_n(inputs)?.fisher_information()?;
    let fisher = inputs.iter().map(|f| f.fisher_information()).collect::<Result<Vec<_>>>()?;
    let mut checks = Vec::new();
    for (k, lambda) in lambdas.iter().enumerate() {
        if lambda.len() != inputs.len()
            || lambda.iter().any(|&l| l <= 0.0)
            || (lambda.iter().sum::<f64>() - 1.0).abs() > 1e-12
        {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda.iter().sum(),
                reason: "weights must be positive and sum to 1",
            });
        }
        let rhs: f64 = lambda.iter().zip(&fisher).map(|(l, i)| l * l * i).sum();
        checks.push(CheckRecord::at_least(format!("lambda{k}"), rhs, lhs, ctx.tol.blachman));
        if expect_equality {
            checks.push(CheckRecord::violation(format!("lambda{k}_equality"), (rhs - lhs).abs(), ctx.tol.blachman));
        }
    }
    checks.push(CheckRecord::info("fisher_of_convolution", lhs));
    Ok(VerificationReport::from_checks("blachman", None, checks))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BabenkoExpectation {
    /// Ratio within the tolerance of 1.
    Equal(f64),
    /// Ratio strictly below 1.
    Strict,
}

/// `(int |F f|^{2n})^{1/2}` both spectrally and as `||f^{*n}||_2`, against
/// `C_{q'}^n ||f||_{q'}^n`, `q = 2n`.
pub fn babenko_suite(
    ctx: &SuiteContext,
    f: &GridFunction,
    q_even: u32,
    expect: BabenkoExpectation,
) -> Result<VerificationReport> {
    if !(q_even >= 2 && q_even.is_multiple_of(2)) {
        return Err(Error::InvalidParameter {
            name: "q",
            value: f64::from(q_even),
            reason: "Babenko suite needs an even q >= 2",
        });
    }
    let n = q_even / 2;
    let spectral = fourier_transform(f).abs_norm(f64::from(q_even), None).powi(n as i32);
    let fold: Vec<GridFunction> = (0..n).map(|_| f.clone()).collect();
    let direct = convolve_n(&fold)?.lp_norm(2.0)?;
    let q_dual = dual_exponent(f64::from(q_even))?;
    let rhs = (sharp_constant(q_dual, 1)? * f.lp_norm(q_dual)?).powi(n as i32);
    let ratio = direct / rhs;
    let mut checks = vec![
        CheckRecord::violation("dual_path_agreement", (spectral / direct - 1.0).abs(), ctx.tol.babenko_agreement),
        CheckRecord::at_most("ratio", ratio, 1.0, ctx.tol.babenko_gaussian.max(ctx.tol.parseval)),
        CheckRecord::info("ratio_value", ratio),
    ];
    checks.push(match expect {
        BabenkoExpectation::Equal(tol) => CheckRecord::violation("ratio_equality", (ratio - 1.0).abs(), tol),
        BabenkoExpectation::Strict => CheckRecord::strictly_below("ratio_strict", ratio, 1.0),
    });
    Ok(VerificationReport::from_checks("babenko", None, checks))
}

fn young_exponents(p: f64, q: f64, r: f64) -> Result<bool> {
    if (p.recip() + q.recip() - 1.0 - r.recip()).abs() > 1e-12 {
        return Err(Error::InvalidExponents(format!(
            "1/p + 1/q = 1 + 1/r fails for ({p}, {q}, {r})"
        )));
    }
    let forward = p >= 1.0 && q >= 1.0 && r >= 1.0;
    let reverse = p < 1.0 && q < 1.0 && r < 1.0 && p > 0.0 && q > 0.0 && r > 0.0;
    if !(forward || reverse) {
        return Err(Error::InvalidExponents(format!(
            "({p}, {q}, {r}) is neither a forward nor a reverse Young triple"
        )));
    }
    Ok(forward)
}

fn young_ratio(f: &GridFunction, g: &GridFunction, p: f64, q: f64, r: f64) -> Result<f64> {
    let lhs = convolve(f, g)?.lp_norm(r)?;
    let rhs = young_constant(p, q, r, 1)? * f.lp_norm(p)? * g.lp_norm(q)?;
    Ok(lhs / rhs)
}

/// Extremal variance for exponent `p`: `1 / |p'|`, or 1 when `p = 1`.
fn young_variance(p: f64) -> Result<f64> {
    let dual = dual_exponent(p)?;
    Ok(if dual.is_infinite() { 1.0 } else { dual.abs().recip() })
}

/// Sharp Young (or reverse Young) inequality: equality for the extremal
/// Gaussian pair, the inequality itself for `f, g`.
pub fn young_suite(
    ctx: &SuiteContext,
    f: &GridFunction,
    g: &GridFunction,
    p: f64,
    q: f64,
    r: f64,
) -> Result<VerificationReport> {
    let forward = young_exponents(p, q, r)?;
    let gf = GridFunction::gaussian(ctx.grid, young_variance(p)?)?;
    let gg = GridFunction::gaussian(ctx.grid, young_variance(q)?)?;
    let extremal = young_ratio(&gf, &gg, p, q, r)?;
    let data = young_ratio(f, g, p, q, r)?;
    let tol = ctx.tol.young_equality;
    let mut checks = vec![CheckRecord::violation("extremal_ratio", (extremal - 1.0).abs(), tol)];
    if forward {
        checks.push(CheckRecord::at_most("ratio", data, 1.0, tol));
    } else {
        checks.push(CheckRecord::at_least("ratio", data, 1.0, tol));
    }
    checks.push(CheckRecord::info("ratio_value", data));
    if p == 1.0 && q == 1.0 {
        checks.push(CheckRecord::violation("mass_product", (data - 1.0).abs(), ctx.tol.oracle));
    }
    Ok(VerificationReport::from_checks("young", None, checks))
}

/// `Sigma_1 exp(-x^2 / (4 Sigma t))` for fundamental solutions raised to `alpha_j`.
pub fn closure_profile(alphas: &[f64], kappas: &[f64], t: f64, x: f64) -> f64 {
    let sigma: f64 = kappas.iter().zip(alphas).map(|(k, a)| k / a).sum();
    let sigma_1 = sigma.powf(-0.5)
        * kappas
            .iter()
            .zip(alphas)
            .map(|(k, a)| k.powf(0.5 * (1.0 - a)) / a.sqrt())
            .product::<f64>();
    sigma_1 * (-x * x / (4.0 * sigma * t)).exp()
}

/// Closed form of the convolution of powered fundamental solutions, and its
/// pointwise growth in time.
pub fn gaussian_closure_suite(
    ctx: &SuiteContext,
    p: &[f64],
    kappas: &[f64],
    times: &TimeGrid,
) -> Result<VerificationReport> {
    let sys = ExponentSystem::sup(p.to_vec())?;
    if kappas.len() != sys.n() || kappas.iter().any(|&k| !(k > 0.0)) {
        return Err(Error::InvalidExponents("one positive kappa per exponent".into()));
    }
    if times.times()[0] <= 0.0 {
        return Err(Error::InvalidTimeGrid("fundamental solutions need t > 0".into()));
    }
    let alphas = sys.powers();
    let mut worst_match: f64 = 0.0;
    let mut worst_growth: f64 = 0.0;
    let mut previous: Option<GridFunction> = None;
    for &t in times.times() {
        let powered = kappas
            .iter()
            .zip(alphas)
            .map(|(&k, &a)| power(&GridFunction::gaussian(ctx.grid, 2.0 * k * t)?, a))
            .collect::<Result<Vec<_>>>()?;
        let w = convolve_n(&powered)?;
        let scale = w.max_value();
        let err = w
            .grid()
            .nodes()
            .zip(w.values())
            .map(|(x, v)| (v - closure_profile(alphas, kappas, t, x)).abs())
            .fold(0.0, f64::max);
        worst_match = worst_match.max(err / scale);
        if let Some(prev) = &previous {
            let drop = prev
                .values()
                .iter()
                .zip(w.values())
                .map(|(a, b)| a - b)
                .fold(0.0, f64::max);
            worst_growth = worst_growth.max(drop / scale);
        }
        previous = Some(w);
    }
    Ok(VerificationReport::from_checks(
        "gaussian_closure",
        Some(Direction::Increasing),
        vec![
            CheckRecord::violation("closed_form", worst_match, ctx.tol.closure),
            CheckRecord::violation("pointwise_decrease", worst_growth, ctx.tol.closure),
        ],
    ))
}

pub fn power_pde_suite(
    ctx: &SuiteContext,
    alphas: &[f64],
    variance: f64,
    kappa: f64,
    t: f64,
    dt: f64,
) -> Result<VerificationReport> {
    let input = HeatInput::new(GridFunction::gaussian(ctx.grid, variance)?, kappa)?;
    let checks = alphas
        .iter()
        .map(|&a| {
            Ok(CheckRecord::violation(
                format!("alpha_{a}"),
                input.power_pde_residual(a, t, dt)?,
                ctx.tol.power_pde,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::from_checks("power_pde", None, checks))
}

/// The five functionals on seeded data and on jointly dilated copies, at
/// `t = 0` and at matched times `t` and `t / a^2`.
pub fn dilation_suite(ctx: &SuiteContext, factors: &[f64], t: f64) -> Result<VerificationReport> {
    let seeded = |n: usize, first: u64| -> Vec<TestDensitySpec> {
        (0..n as u64).map(|j| TestDensitySpec::seeded(2, first + j)).collect()
    };
    let systems = [
        ExponentSystem::sup(vec![1.5; 3])?,
        ExponentSystem::forward(vec![4.0 / 3.0; 2], 2.0)?,
        ExponentSystem::reverse(vec![2.0 / 3.0; 2], 0.5)?,
        ExponentSystem::prekopa(vec![2.0, 2.0])?,
        ExponentSystem::entropy(vec![0.5, 0.5])?,
    ];
    let mut problems = systems
        .iter()
        .enumerate()
        .map(|(k, sys)| Problem::new(sys.clone(), heat_inputs(ctx, sys, &seeded(sys.n(), 40 + 4 * k as u64))?))
        .collect::<Result<Vec<_>>>()?;
    problems.push(Problem::gamma(HeatInput::new(
        ctx.sample(&TestDensitySpec::seeded(2, 60))?,
        0.5,
    )?)?);
    let mut checks = Vec::new();
    for problem in &problems {
        for &a in factors {
            let dilated = problem.dilated(a)?;
            for (t0, t1) in [(0.0, 0.0), (t, t / (a * a))] {
                let (v, w) = (problem.at(t0)?, dilated.at(t1)?);
                checks.push(CheckRecord::violation(
                    format!("{}_a{a}_t{t0}", problem.functional()),
                    (v - w).abs() / v.abs(),
                    ctx.tol.dilation,
                ));
            }
        }
    }
    Ok(VerificationReport::from_checks("dilation", None, checks))
}

/// The default suite list at desk scale.
pub fn standard_suites() -> Vec<NamedSuite> {
    let seeded = |streams: &[u64]| -> Vec<TestDensitySpec> {
        streams.iter().map(|&s| TestDensitySpec::seeded(2, s)).collect()
    };
    let third = 1.0 / 3.0;
    vec![
        NamedSuite::new(
            "psi",
            SuiteSpec::Psi {
                p: vec![1.5; 3],
                scale: 1.0,
                densities: seeded(&[0, 1, 2]),
            },
        ),
        NamedSuite::new(
            "psi_equality",
            SuiteSpec::PsiEquality {
                p: vec![1.5; 3],
                scales: vec![1.0, 2.0],
            },
        ),
        NamedSuite::new(
            "lambda_forward",
            SuiteSpec::Lambda {
                p: vec![4.0 / 3.0; 2],
                r: 2.0,
                scale: 1.0,
                densities: seeded(&[3, 4]),
            },
        ),
        NamedSuite::new(
            "lambda_reverse",
            SuiteSpec::Lambda {
                p: vec![2.0 / 3.0; 2],
                r: 0.5,
                scale: 1.0,
                densities: seeded(&[5, 6]),
            },
        ),
        NamedSuite::new(
            "lambda_reverse_equality",
            SuiteSpec::LambdaEquality {
                p: vec![2.0 / 3.0; 2],
                r: 0.5,
                scale: 1.0,
            },
        ),
        NamedSuite::new(
            "upsilon",
            SuiteSpec::Upsilon {
                q: vec![2.0, 2.0],
                densities: seeded(&[7, 8]),
                pl_pairs: 10,
                pl_stream: 100,
            },
        ),
        NamedSuite::new("upsilon_equality", SuiteSpec::UpsilonEquality { q: vec![2.0, 2.0] }),
        NamedSuite::new(
            "phi",
            SuiteSpec::Phi {
                gamma: vec![0.5, 0.5],
                scale: 1.0,
                densities: seeded(&[9, 10]),
                simplex_densities: seeded(&[11, 12, 13]),
                simplex_steps: 10,
            },
        ),
        NamedSuite::new(
            "phi_equality",
            SuiteSpec::PhiEquality {
                gamma: vec![0.5, 0.5],
                scale: 1.0,
            },
        ),
        NamedSuite::new(
            "gamma",
            SuiteSpec::Gamma {
                kappa: 0.5,
                density: TestDensitySpec::seeded(2, 14),
            },
        ),
        NamedSuite::new(
            "epi",
            SuiteSpec::Epi {
                pairs: vec![
                    [TestDensitySpec::gaussian(1.0), TestDensitySpec::gaussian(1.0)],
                    [TestDensitySpec::gaussian(1.0), TestDensitySpec::gaussian(2.0)],
                    [
                        TestDensitySpec::Step { left: -0.5, right: 0.5 },
                        TestDensitySpec::gaussian(1.0),
                    ],
                    [TestDensitySpec::seeded(2, 15), TestDensitySpec::seeded(2, 16)],
                ],
                triple: seeded(&[17, 18, 19]),
                simplex_steps: 10,
            },
        ),
        NamedSuite::new(
            "concavity",
            SuiteSpec::Concavity {
                gaussian_variance: 1.0,
                mixture: TestDensitySpec::seeded(2, 20),
                kappa: 1.0,
                t_end: 2.0,
                points: 41,
            },
        ),
        NamedSuite::new(
            "blachman",
            SuiteSpec::Blachman {
                gaussian_variance: 1.0,
                inputs: seeded(&[21, 22, 23]),
                lambda_count: 5,
                lambda_stream: 24,
            },
        ),
        NamedSuite::new(
            "babenko",
            SuiteSpec::Babenko {
                gaussian_variance: 1.0,
                mixture: TestDensitySpec::GaussianMixture {
                    components: vec![
                        crate::verification::density::Component { weight: 0.5, mean: -1.5, variance: 0.5 },
                        crate::verification::density::Component { weight: 0.5, mean: 1.5, variance: 0.5 },
                    ],
                },
            },
        ),
        NamedSuite::new(
            "young_forward",
            SuiteSpec::Young {
                p: 4.0 / 3.0,
                q: 4.0 / 3.0,
                r: 2.0,
                pair: [TestDensitySpec::seeded(2, 25), TestDensitySpec::seeded(2, 26)],
            },
        ),
        NamedSuite::new(
            "young_reverse",
            SuiteSpec::Young {
                p: 2.0 / 3.0,
                q: 2.0 / 3.0,
                r: 0.5,
                pair: [TestDensitySpec::seeded(2, 27), TestDensitySpec::seeded(2, 28)],
            },
        ),
        NamedSuite::new(
            "young_mass",
            SuiteSpec::Young {
                p: 1.0,
                q: 1.0,
                r: 1.0,
                pair: [TestDensitySpec::seeded(2, 29), TestDensitySpec::seeded(2, 30)],
            },
        ),
        NamedSuite::new(
            "gaussian_closure",
            SuiteSpec::GaussianClosure {
                configs: vec![
                    ClosureConfig::pair([2.0, 2.0], [1.0, 2.0]),
                    ClosureConfig::pair([2.0, 2.0], [0.7, 1.9]),
                    ClosureConfig::triple([1.5, 1.5, 1.5], [0.5, 1.0, 1.5]),
                ],
                t_start: 1e-3,
                t_end: 0.5,
                points: 25,
            },
        ),
        NamedSuite::new(
            "power_pde",
            SuiteSpec::PowerPde {
                alphas: vec![0.5, 1.0, 2.0],
                variance: 1.0,
                kappa: 1.0,
                t: 1.0,
                dt: 1e-3,
            },
        ),
        NamedSuite::new(
            "dilation",
            SuiteSpec::Dilation {
                factors: vec![0.5, 2.0],
                t: 0.4,
            },
        ),
        NamedSuite::new(
            "phi_third",
            SuiteSpec::PhiEquality {
                gamma: vec![third, 1.0 - third],
                scale: 1.0,
            },
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteContext {
        SuiteContext {
            grid: Grid::new(16.0, 512).unwrap(),
            times: TimeGrid::log_spaced(1e-2, 4.0, 9).unwrap(),
            limit_times: vec![1e3],
            seed: 3,
            tol: Tolerances::default(),
        }
    }

    #[test]
    fn simplex_grid_counts() {
        assert_eq!(simplex_grid(3, 10).len(), 36);
        assert_eq!(simplex_grid(2, 4).len(), 3);
        for g in simplex_grid(3, 10) {
            assert!((g.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(g.iter().all(|&v| v > 0.0));
        }
    }

    #[test]
    fn closure_profile_matches_direct_gaussian_algebra() {
        // M_{2t}^{1/2} * M_{4t}^{1/2} at x = 0 by hand: Sigma = 6, Sigma_1 = 6^{-1/2} 2^{1/4} * 2
        let v = closure_profile(&[0.5, 0.5], &[1.0, 2.0], 0.3, 0.0);
        assert!((v - 6f64.powf(-0.5) * 2f64.powf(0.25) * 2.0).abs() < 1e-14);
    }

    #[test]
    fn closure_suite_rejects_bad_sums() {
        let ctx = small();
        let times = TimeGrid::log_spaced(1e-2, 0.5, 5).unwrap();
        assert!(gaussian_closure_suite(&ctx, &[2.0, 3.0], &[1.0, 1.0], &times).is_err());
        let r = gaussian_closure_suite(&ctx, &[2.0, 2.0], &[1.0, 2.0], &times).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn concavity_rejects_nonuniform_times() {
        let ctx = small();
        let input = HeatInput::new(GridFunction::gaussian(ctx.grid, 1.0).unwrap(), 1.0).unwrap();
        let times = TimeGrid::log_spaced(1e-2, 1.0, 5).unwrap();
        assert!(concavity_suite(&ctx, &input, &times, true).is_err());
    }

    #[test]
    fn babenko_rejects_odd_q() {
        let ctx = small();
        let g = GridFunction::gaussian(ctx.grid, 1.0).unwrap();
        assert!(babenko_suite(&ctx, &g, 3, BabenkoExpectation::Strict).is_err());
    }

    #[test]
    fn young_rejects_mixed_triples() {
        assert!(young_exponents(2.0, 2.0, 2.0).is_err());
        assert!(young_exponents(4.0 / 3.0, 4.0 / 3.0, 2.0).unwrap());
        assert!(!young_exponents(2.0 / 3.0, 2.0 / 3.0, 0.5).unwrap());
    }

    #[test]
    fn blachman_rejects_off_simplex() {
        let ctx = small();
        let g = GridFunction::gaussian(ctx.grid, 1.0).unwrap();
        let pair = [g.clone(), g];
        assert!(blachman_suite(&ctx, &pair, &[vec![0.6, 0.6]], false).is_err());
        let r = blachman_suite(&ctx, &pair, &[vec![0.5, 0.5]], true).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn seeded_lambdas_are_on_the_simplex() {
        for l in seeded_simplex(1, 2, 3, 5) {
            assert!((l.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        assert_eq!(seeded_simplex(1, 2, 3, 5), seeded_simplex(1, 2, 3, 5));
    }

    #[test]
    fn suite_specs_round_trip_through_json() {
        for suite in standard_suites() {
            let text = serde_json::to_string(&suite).unwrap();
            let back: NamedSuite = serde_json::from_str(&text).unwrap();
            assert_eq!(back, suite);
            suite.spec.validate().unwrap();
        }
    }

    #[test]
    fn coarse_psi_trace_runs() {
        let ctx = small();
        let suite = NamedSuite::new(
            "psi",
            SuiteSpec::Psi {
                p: vec![2.0, 2.0],
                scale: 1.0,
                densities: vec![TestDensitySpec::seeded(2, 0), TestDensitySpec::seeded(2, 1)],
            },
        );
        let out = suite.run(&ctx).unwrap();
        assert_eq!(out.report.suite, "psi");
        assert_eq!(out.traces.len(), 1);
        assert_eq!(out.traces[0].values.len(), 9);
        assert!(out.report.passed, "{:?}", out.report);
    }
}
