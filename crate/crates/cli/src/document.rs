//! Matrix documents: JSON with a `matrix` field, or bare whitespace-delimited
//! rows of numbers.

use std::path::{Path, PathBuf};

use bonafide::{MatrixValue, Tolerance};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverride {
    pub rel: Option<f64>,
    pub abs: Option<f64>,
}

#[derive(Debug, Deserialize)]
struct RawDocument {
    matrix: Vec<Vec<f64>>,
    label: Option<String>,
    #[serde(default)]
    tolerance: ToleranceOverride,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixDocument {
    pub matrix: MatrixValue,
    pub label: Option<String>,
    pub tolerance: ToleranceOverride,
}

impl MatrixDocument {
    /// Tolerance from the defaults, then the document, then the flags.
    pub fn effective_tolerance(&self, flags: ToleranceOverride) -> Result<Tolerance, CliError> {
        layered_tolerance(self.tolerance, flags)
    }
}

/// Defaults, overridden by `lower`, overridden by `upper`.
pub fn layered_tolerance(
    lower: ToleranceOverride,
    upper: ToleranceOverride,
) -> Result<Tolerance, CliError> {
    let base = Tolerance::default();
    let rel = upper.rel.or(lower.rel).unwrap_or(base.rel);
    let abs = upper.abs.or(lower.abs).unwrap_or(base.abs);
    Tolerance::new(rel, abs).map_err(|e| CliError::Usage(e.to_string()))
}

pub enum Source {
    Stdin,
    File(PathBuf),
}

impl Source {
    pub fn from_arg(path: Option<&Path>) -> Self {
        match path {
            None => Source::Stdin,
            Some(p) if p.as_os_str() == "-" => Source::Stdin,
            Some(p) => Source::File(p.to_path_buf()),
        }
    }

    pub fn read(&self) -> Result<String, CliError> {
        match self {
            Source::Stdin => std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Io {
                path: "<stdin>".into(),
                source: e,
            }),
            Source::File(p) => std::fs::read_to_string(p).map_err(|e| CliError::Io {
                path: p.display().to_string(),
                source: e,
            }),
        }
    }
}

/// Parses and validates a document. Shape and symmetry are checked against
/// `flags` layered over any tolerance the document carries.
pub fn parse_document(text: &str, flags: ToleranceOverride) -> Result<MatrixDocument, CliError> {
    let trimmed = text.trim_start();
    let (rows, label, tolerance) = if trimmed.starts_with('{') {
        let raw: RawDocument = serde_json::from_str(trimmed)
            .map_err(|e| CliError::Parse(format!("invalid JSON document: {e}")))?;
        (raw.matrix, raw.label, raw.tolerance)
    } else {
        (parse_bare(text)?, None, ToleranceOverride::default())
    };
    let matrix = validate_rows(&rows)?;
    let doc = MatrixDocument {
        matrix,
        label,
        tolerance,
    };
    let tol = doc.effective_tolerance(flags)?;
    doc.matrix
        .require_symmetric(&tol)
        .map_err(|e| CliError::Shape(e.to_string()))?;
    Ok(MatrixDocument {
        matrix: doc.matrix.symmetrized(),
        ..doc
    })
}

fn parse_bare(text: &str) -> Result<Vec<Vec<f64>>, CliError> {
    let mut rows = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .enumerate()
            .map(|(col, tok)| {
                tok.parse::<f64>().map_err(|_| {
                    CliError::Parse(format!(
                        "line {}, entry {}: '{tok}' is not a number",
                        line_no + 1,
                        col + 1
                    ))
                })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::Parse("input contains no numbers".into()));
    }
    Ok(rows)
}

fn validate_rows(rows: &[Vec<f64>]) -> Result<MatrixValue, CliError> {
    let n = rows.len();
    if n == 0 {
        return Err(CliError::Shape("matrix has no rows".into()));
    }
    for (i, row) in rows.iter().enumerate() {
        if let Some(j) = row.iter().position(|x| !x.is_finite()) {
            return Err(CliError::Parse(format!(
                "entry ({}, {}) is not finite",
                i + 1,
                j + 1
            )));
        }
        if row.len() != n {
            return Err(CliError::Shape(format!(
                "matrix must be square: row {} has {} entries but there are {n} rows",
                i + 1,
                row.len()
            )));
        }
    }
    if !n.is_multiple_of(2) {
        return Err(CliError::Shape(format!(
            "matrix dimension must be even (two quadratures per mode), got {n}x{n}"
        )));
    }
    MatrixValue::from_rows(rows).map_err(|e| CliError::Parse(e.to_string()))
}
