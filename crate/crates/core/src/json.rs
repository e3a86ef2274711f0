//! JSON encodings of [`Matrix`] and [`ParamMatrix`].
//!
//! A matrix file looks like
//! `{"rows": 2, "cols": 2, "data": [["1", "-2/3"], ["0", "5"]]}`; every entry
//! is an integer or fraction string so values stay exact.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::Matrix;
use crate::rational::parse_rational;
use crate::symexpr::ParamMatrix;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed matrix JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("\"rows\" is {declared} but \"data\" has {found} rows")]
    RowCount { declared: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected} (\"cols\")")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("entry ({row}, {col}) is not an integer or fraction: {text:?}")]
    BadEntry { row: usize, col: usize, text: String },
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// Wire form of a [`Matrix`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<String>>,
}

impl From<&Matrix> for MatrixJson {
    fn from(m: &Matrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            data: (0..m.rows())
                .map(|i| m.row(i).iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}

impl TryFrom<MatrixJson> for Matrix {
    type Error = ParseError;

    fn try_from(raw: MatrixJson) -> Result<Self, ParseError> {
        if raw.data.len() != raw.rows {
            return Err(ParseError::RowCount {
                declared: raw.rows,
                found: raw.data.len(),
            });
        }
        let mut entries = Vec::with_capacity(raw.rows * raw.cols);
        for (i, row) in raw.data.iter().enumerate() {
            if row.len() != raw.cols {
                return Err(ParseError::RaggedRow {
                    row: i,
                    expected: raw.cols,
                    found: row.len(),
                });
            }
            for (j, text) in row.iter().enumerate() {
                let value = parse_rational(text).ok_or_else(|| ParseError::BadEntry {
                    row: i,
                    col: j,
                    text: text.clone(),
                })?;
                entries.push(value);
            }
        }
        Ok(Matrix::new(raw.rows, raw.cols, entries).expect("validated shape"))
    }
}

/// Parses a matrix document.
pub fn parse_matrix(text: &str) -> Result<Matrix, ParseError> {
    let raw: MatrixJson = serde_json::from_str(text)?;
    Matrix::try_from(raw)
}

/// Canonical text of a matrix document: pretty JSON, entries in lowest
/// terms.
pub fn matrix_to_string(m: &Matrix) -> String {
    serde_json::to_string_pretty(&MatrixJson::from(m)).expect("plain data serializes")
}

/// Wire form of a [`ParamMatrix`]: entries like `"-19/3 + 1*t_1"` plus the
/// ordered parameter names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamMatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<String>>,
    pub params: Vec<String>,
}

impl From<&ParamMatrix> for ParamMatrixJson {
    fn from(pm: &ParamMatrix) -> Self {
        ParamMatrixJson {
            rows: pm.rows(),
            cols: pm.cols(),
            data: (0..pm.rows())
                .map(|i| (0..pm.cols()).map(|j| pm[(i, j)].to_string()).collect())
                .collect(),
            params: pm.params().iter().map(|p| p.name().to_owned()).collect(),
        }
    }
}
