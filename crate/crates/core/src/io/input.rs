use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::{DenseSymmetric, OffDiagonal};

#[derive(Clone, Debug, PartialEq)]
pub enum InputMatrix {
    OffDiagonal(OffDiagonal<f64>),
    /// General symmetric initial condition for the experimental dense mode.
    Symmetric(DenseSymmetric<f64>),
}

impl InputMatrix {
    pub fn dim(&self) -> usize {
        match self {
            InputMatrix::OffDiagonal(a) => a.dim(),
            InputMatrix::Symmetric(h) => h.dim(),
        }
    }
}

/// A validated input document.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixInputDocument {
    pub label: Option<String>,
    pub matrix: InputMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    offdiag: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    symmetric: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

/// Parses `{"n": .., "offdiag": [..]}` or `{"symmetric": [[..], ..]}`, each
/// with an optional `"label"`. A symmetric matrix must be symmetric to
/// `1e-12` relative to its largest entry.
pub fn parse_input(bytes: &[u8]) -> Result<MatrixInputDocument> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse(format!("input is not UTF-8: {e}")))?;
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let matrix = match (raw.offdiag, raw.symmetric) {
        (Some(_), Some(_)) => return Err(Error::Validation("give exactly one of `offdiag` and `symmetric`".into())),
        (None, None) => return Err(Error::Validation("missing `offdiag` or `symmetric`".into())),
        (Some(entries), None) => {
            let n = raw.n.ok_or_else(|| Error::Validation("`offdiag` requires `n`".into()))?;
            if n == 0 {
                return Err(Error::Validation("`n` must be at least 1".into()));
            }
            if entries.len() != n - 1 {
                return Err(Error::Validation(format!(
                    "`offdiag` must have n - 1 = {} entries, found {}",
                    n - 1,
                    entries.len()
                )));
            }
            InputMatrix::OffDiagonal(OffDiagonal::new(entries).map_err(to_validation)?)
        }
        (None, Some(rows)) => {
            if rows.is_empty() {
                return Err(Error::Validation("`symmetric` must be nonempty".into()));
            }
            if let Some(n) = raw.n {
                if n != rows.len() {
                    return Err(Error::Validation(format!("`n` = {n} but `symmetric` has {} rows", rows.len())));
                }
            }
            let scale = rows.iter().flatten().fold(1.0f64, |m, v| m.max(v.abs()));
            InputMatrix::Symmetric(DenseSymmetric::from_rows(rows, &(1e-12 * scale)).map_err(to_validation)?)
        }
    };
    Ok(MatrixInputDocument { label: raw.label, matrix })
}

fn to_validation(e: Error) -> Error {
    match e {
        Error::Validation(_) => e,
        other => Error::Validation(other.to_string()),
    }
}

/// Writes a document that [`parse_input`] reads back exactly.
pub fn write_input<W: Write>(doc: &MatrixInputDocument, mut sink: W) -> Result<()> {
    let raw = match &doc.matrix {
        InputMatrix::OffDiagonal(a) => RawDocument {
            n: Some(a.dim()),
            offdiag: Some(a.entries().to_vec()),
            symmetric: None,
            label: doc.label.clone(),
        },
        InputMatrix::Symmetric(h) => {
            let n = h.dim();
            let rows = (0..n).map(|i| (0..n).map(|j| *h.get(i, j)).collect()).collect();
            RawDocument { n: None, offdiag: None, symmetric: Some(rows), label: doc.label.clone() }
        }
    };
    serde_json::to_writer(&mut sink, &raw).map_err(|e| Error::Io(e.into()))?;
    sink.write_all(b"\n")?;
    Ok(())
}
