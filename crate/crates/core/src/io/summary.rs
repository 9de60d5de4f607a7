use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{FlowStatus, IntegratorConfig};
use crate::verify::{Check, VerificationReport};

/// JSON summary of a command. Fields serialize in declaration order and
/// absent fields are omitted, so identical runs give identical bytes.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experimental: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_offdiag: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_symmetric: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<FlowStatus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_time: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_offdiag: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_symmetric: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_sizes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted_limit: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equilibria: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count_formula: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count_with_signs: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub overall: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<IntegratorConfig<f64>>,
}

impl Summary {
    pub fn new(command: &str, n: usize) -> Self {
        Self { command: command.to_owned(), n, ..Self::default() }
    }

    /// Copies checks, overall verdict, status and seed from a report.
    pub fn with_report(mut self, report: &VerificationReport) -> Self {
        self.checks = report.checks.clone();
        self.overall = Some(report.overall);
        self.status = report.status.or(self.status);
        self.seed = report.seed.or(self.seed);
        self
    }
}

/// Pretty-printed JSON followed by a newline.
pub fn write_summary<W: Write>(summary: &Summary, mut sink: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut sink, summary).map_err(|e| Error::Io(e.into()))?;
    sink.write_all(b"\n")?;
    sink.flush()?;
    Ok(())
}
