//! Executable checks of the flow's claimed properties.
//!
//! Every check records what was measured and the threshold it was held to,
//! so a report can be audited from logs alone. A failing check is a report
//! entry, not an error.

mod counts;
mod identities;
mod run;

pub use counts::{brute_force_equilibria, verify_equilibrium_counts};
pub use identities::verify_identities;
pub use run::{verify_run, verify_run_with, verify_trajectory, ToleranceProfile};

use serde::{Deserialize, Serialize};

use crate::flow::FlowStatus;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    /// Not applicable to this input; does not affect `overall`.
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
    pub measured: f64,
    pub threshold: f64,
}

impl Check {
    /// Passes when `measured <= threshold`.
    pub fn at_most(name: &str, measured: f64, threshold: f64) -> Self {
        Self::new(name, measured <= threshold, measured, threshold)
    }

    /// Passes when `measured > threshold`.
    pub fn above(name: &str, measured: f64, threshold: f64) -> Self {
        Self::new(name, measured > threshold, measured, threshold)
    }

    pub fn new(name: &str, pass: bool, measured: f64, threshold: f64) -> Self {
        let outcome = if pass { Outcome::Pass } else { Outcome::Fail };
        Self { name: name.to_owned(), outcome, measured, threshold }
    }

    pub fn skip(name: &str) -> Self {
        Self { name: name.to_owned(), outcome: Outcome::Skip, measured: f64::NAN, threshold: f64::NAN }
    }

    pub fn passed(&self) -> bool {
        self.outcome != Outcome::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    /// Conjunction of all non-skipped checks.
    pub overall: bool,
    /// Flow status, for reports built from a run.
    pub status: Option<FlowStatus>,
    /// RNG seed, for randomized reports.
    pub seed: Option<u64>,
}

impl VerificationReport {
    pub fn new(checks: Vec<Check>, status: Option<FlowStatus>, seed: Option<u64>) -> Self {
        let overall = checks.iter().all(Check::passed);
        Self { checks, overall, status, seed }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}
