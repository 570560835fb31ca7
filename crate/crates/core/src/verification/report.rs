//! Per-suite verification records.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use crate::functionals::Direction;
use crate::functionals::FunctionalTrace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Non-negative defect; passes when `value <= tolerance`.
    Violation,
    /// Relative distance to an analytic limit; passes when `value <= tolerance`.
    LimitGap,
    /// Strict inequality `value < tolerance`.
    Strict,
    /// Reported, never judged.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub kind: CheckKind,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub gating: bool,
}

impl CheckRecord {
    fn new(name: impl Into<String>, kind: CheckKind, value: f64, tolerance: f64) -> Self {
        let passed = match kind {
            CheckKind::Violation | CheckKind::LimitGap => value <= tolerance,
            CheckKind::Strict => value < tolerance,
            CheckKind::Info => true,
        };
        Self {
            name: name.into(),
            kind,
            value,
            tolerance,
            passed,
            gating: kind != CheckKind::Info,
        }
    }

    pub fn violation(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self::new(name, CheckKind::Violation, value.max(0.0), tolerance)
    }

    /// `lower <= value` up to `tolerance`, recorded as the shortfall `lower - value`.
    pub fn at_least(name: impl Into<String>, value: f64, lower: f64, tolerance: f64) -> Self {
        Self::violation(name, lower - value, tolerance)
    }

    /// `value <= upper` up to `tolerance`, recorded as the excess `value - upper`.
    pub fn at_most(name: impl Into<String>, value: f64, upper: f64, tolerance: f64) -> Self {
        Self::violation(name, value - upper, tolerance)
    }

    pub fn limit_gap(name: impl Into<String>, gap: f64, tolerance: f64) -> Self {
        Self::new(name, CheckKind::LimitGap, gap, tolerance)
    }

    /// `value < bound`, no slack.
    pub fn strictly_below(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self::new(name, CheckKind::Strict, value, bound)
    }

    pub fn info(name: impl Into<String>, value: f64) -> Self {
        Self::new(name, CheckKind::Info, value, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub passed: bool,
    pub direction: Option<Direction>,
    /// Largest recorded defect over the violation checks.
    pub max_violation: f64,
    /// Largest relative limit gap, when a limit is checked.
    pub limit_gap: Option<f64>,
    pub details: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn from_checks(
        suite: impl Into<String>,
        direction: Option<Direction>,
        details: Vec<CheckRecord>,
    ) -> Self {
        let gating = || details.iter().filter(|c| c.gating);
        let max_violation = gating()
            .filter(|c| c.kind == CheckKind::Violation)
            .map(|c| c.value)
            .fold(0.0, f64::max);
        let limit_gap = gating()
            .filter(|c| c.kind == CheckKind::LimitGap)
            .map(|c| c.value)
            .reduce(f64::max);
        let passed = gating().all(|c| c.passed);
        Self {
            suite: suite.into(),
            passed,
            direction,
            max_violation,
            limit_gap,
            details,
        }
    }

    /// Concatenates the checks of several reports under one suite name.
    pub fn merge(suite: impl Into<String>, direction: Option<Direction>, parts: Vec<Self>) -> Self {
        let details = parts
            .into_iter()
            .flat_map(|r| {
                let prefix = r.suite;
                r.details.into_iter().map(move |mut c| {
                    c.name = format!("{prefix}/{}", c.name);
                    c
                })
            })
            .collect();
        Self::from_checks(suite, direction, details)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.details.iter().filter(|c| c.gating && !c.passed)
    }
}

fn value_scale(values: &[f64]) -> f64 {
    let scale = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale > 0.0 {
        scale
    } else {
        1.0
    }
}

/// Largest wrong-direction step relative to the value scale, and the smallest
/// right-direction step (strictness, reported only).
pub fn step_statistics(values: &[f64], direction: Direction) -> (f64, f64) {
    let scale = value_scale(values);
    if direction == Direction::Constant {
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        return ((hi - lo) / scale, 0.0);
    }
    let sign = if direction == Direction::Increasing { 1.0 } else { -1.0 };
    let steps: Vec<f64> = values.windows(2).map(|w| sign * (w[1] - w[0]) / scale).collect();
    let worst = steps.iter().fold(0.0_f64, |m, &s| m.max(-s));
    let strictness = steps.iter().copied().fold(f64::INFINITY, f64::min);
    (worst, strictness)
}

pub fn monotonicity_report(
    trace: &FunctionalTrace,
    direction: Direction,
    tol_rel: f64,
) -> Result<VerificationReport> {
    if trace.values.len() < 3 {
        return Err(Error::TraceTooShort(trace.values.len()));
    }
    let (worst, strictness) = step_statistics(&trace.values, direction);
    let name = if direction == Direction::Constant { "flatness" } else { "monotonicity" };
    let mut checks = vec![CheckRecord::violation(name, worst, tol_rel)];
    if direction != Direction::Constant {
        checks.push(CheckRecord::info("min_step", strictness));
    }
    Ok(VerificationReport::from_checks(
        trace.label.clone(),
        Some(direction),
        checks,
    ))
}

fn relative_gap(value: f64, limit: f64) -> f64 {
    (value - limit).abs() / limit.abs()
}

pub fn limit_report(trace: &FunctionalTrace, tol_rel: f64) -> Result<VerificationReport> {
    let limit = trace.analytic_limit.ok_or(Error::MissingLimit)?;
    let gap = relative_gap(trace.last(), limit);
    Ok(VerificationReport::from_checks(
        trace.label.clone(),
        None,
        vec![
            CheckRecord::limit_gap("limit_gap", gap, tol_rel),
            CheckRecord::info("analytic_limit", limit),
        ],
    ))
}

/// Equality case: flat trace and the limit matched at every index.
pub fn equality_report(
    trace: &FunctionalTrace,
    flat_tol: f64,
    limit_tol: f64,
) -> Result<VerificationReport> {
    let limit = trace.analytic_limit.ok_or(Error::MissingLimit)?;
    let flat = monotonicity_report(trace, Direction::Constant, flat_tol)?;
    let worst_gap = trace
        .values
        .iter()
        .map(|&v| relative_gap(v, limit))
        .fold(0.0, f64::max);
    let initial_gap = relative_gap(trace.values[0], limit);
    let mut checks = flat.details;
    checks.push(CheckRecord::limit_gap("limit_gap_t0", initial_gap, limit_tol));
    checks.push(CheckRecord::limit_gap("limit_gap_all", worst_gap, limit_tol));
    Ok(VerificationReport::from_checks(
        trace.label.clone(),
        Some(Direction::Constant),
        checks,
    ))
}

/// Gap of a trace value at one time against a limit, as its own report line.
pub fn point_limit_report(
    label: impl Into<String>,
    value: f64,
    limit: f64,
    tol_rel: f64,
) -> VerificationReport {
    VerificationReport::from_checks(
        label,
        None,
        vec![
            CheckRecord::limit_gap("limit_gap", relative_gap(value, limit), tol_rel),
            CheckRecord::info("value", value),
            CheckRecord::info("analytic_limit", limit),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::Functional;
    use crate::heat::TimeGrid;

    fn synthetic(values: Vec<f64>, limit: Option<f64>) -> FunctionalTrace {
        let times = TimeGrid::uniform(0.0, 1.0, values.len()).unwrap();
        FunctionalTrace::new(Functional::Psi, "synthetic", times, values, limit).unwrap()
    }

    #[test]
    fn increasing_trace_passes() {
        let t = synthetic(vec![1.0, 1.1, 1.3, 1.35], None);
        let r = monotonicity_report(&t, Direction::Increasing, 1e-6).unwrap();
        assert!(r.passed);
        assert_eq!(r.max_violation, 0.0);
        let strict = r.details.iter().find(|c| c.name == "min_step").unwrap();
        assert!((strict.value - 0.05 / 1.35).abs() < 1e-12);
    }

    #[test]
    fn constant_trace_counts_as_increasing() {
        let t = synthetic(vec![2.0; 5], None);
        let r = monotonicity_report(&t, Direction::Increasing, 1e-6).unwrap();
        assert!(r.passed);
        assert_eq!(r.max_violation, 0.0);
    }

    #[test]
    fn one_percent_drop_fails() {
        let t = synthetic(vec![0.98, 0.99, 1.0, 0.99, 1.0], None);
        let r = monotonicity_report(&t, Direction::Increasing, 1e-6).unwrap();
        assert!(!r.passed);
        assert!((r.max_violation - 0.01).abs() < 1e-12);
        let r = monotonicity_report(&t, Direction::Decreasing, 1e-6).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn short_trace_is_an_error() {
        let t = synthetic(vec![1.0, 2.0], None);
        assert_eq!(
            monotonicity_report(&t, Direction::Increasing, 1e-6),
            Err(Error::TraceTooShort(2))
        );
    }

    #[test]
    fn limit_gap_of_one_over_t() {
        let gaps: Vec<f64> = [10.0, 100.0, 1000.0]
            .iter()
            .map(|&n| {
                let values: Vec<f64> = (1..=n as usize).map(|k| 1.0 + 1.0 / k as f64).collect();
                limit_report(&synthetic(values, Some(1.0)), 0.02).unwrap().limit_gap.unwrap()
            })
            .collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2]);
        let r = limit_report(&synthetic(vec![1.0, 1.5, 2.0], Some(1.0)), 0.02).unwrap();
        assert!(!r.passed);
        assert_eq!(
            limit_report(&synthetic(vec![1.0; 3], None), 0.02),
            Err(Error::MissingLimit)
        );
    }

    #[test]
    fn equality_checks_every_index() {
        let t = synthetic(vec![1.0, 1.0, 1.0 + 5e-5, 1.0], Some(1.0));
        let r = equality_report(&t, 1e-4, 1e-3).unwrap();
        assert!(r.passed);
        let t = synthetic(vec![1.0, 1.01, 1.0, 1.0], Some(1.0));
        let r = equality_report(&t, 1e-4, 1e-3).unwrap();
        assert!(!r.passed);
        assert!(r.limit_gap.unwrap() > 9e-3);
    }

    #[test]
    fn report_fields_follow_checks() {
        let r = VerificationReport::from_checks(
            "x",
            None,
            vec![
                CheckRecord::at_least("lower", 0.9, 1.0, 0.2),
                CheckRecord::strictly_below("ratio", 0.99, 1.0),
                CheckRecord::info("note", 7.0),
            ],
        );
        assert!(r.passed);
        assert!((r.max_violation - 0.1).abs() < 1e-12);
        assert_eq!(r.limit_gap, None);
        let r = VerificationReport::from_checks(
            "y",
            None,
            vec![CheckRecord::strictly_below("ratio", 1.0, 1.0)],
        );
        assert!(!r.passed);
        assert_eq!(r.failures().count(), 1);
    }
}
