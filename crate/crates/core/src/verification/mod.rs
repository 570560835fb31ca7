//! Test densities, suite definitions and their reports.

pub mod density;
pub mod report;
pub mod suites;

pub use density::{Component, TestDensitySpec};
pub use report::{CheckKind, CheckRecord, VerificationReport};
pub use suites::{standard_suites, NamedSuite, SuiteContext, SuiteOutcome, SuiteSpec, Tolerances};
