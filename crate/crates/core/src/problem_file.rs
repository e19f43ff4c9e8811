//! Plain-text problem files.
//!
//! ```text
//! 2            <- order n
//! 3 0          <- n rows of A, whitespace separated
//! 0 -3
//! 2 2          <- optional right-hand side b
//! ```
//!
//! Blank lines after the last data line are ignored. `emit` writes every
//! value with 17 significant digits so parsing the output reproduces the
//! same bits.

use std::fmt::Write as _;

use thiserror::Error;

use crate::matrix::{DenseMatrix, Vector};
use crate::solvers::AveProblem;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("empty problem file")]
    Empty,
    #[error("line 1: invalid order {0:?} (expected a positive integer)")]
    BadOrder(String),
    #[error("line {line}: invalid number {token:?}")]
    BadNumber { line: usize, token: String },
    #[error("line {line}: non-finite value {token:?}")]
    NonFinite { line: usize, token: String },
    #[error("line {line}: expected {expected} values, found {found}")]
    WrongCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} matrix rows, found {found}")]
    MissingRows { expected: usize, found: usize },
    #[error("line {0}: unexpected trailing data")]
    TrailingData(usize),
    #[error("the right-hand side b is required")]
    MissingRhs,
}

/// A parsed problem file: the matrix and an optional right-hand side.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemFile {
    pub a: DenseMatrix,
    pub b: Option<Vector>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let lines: Vec<&str> = text.lines().collect();
        let last = lines
            .iter()
            .rposition(|l| !l.trim().is_empty())
            .ok_or(ParseError::Empty)?;
        let lines = &lines[..=last];

        let order_token = lines[0].trim();
        let n: usize = order_token
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| ParseError::BadOrder(order_token.to_string()))?;

        if lines.len() < n + 1 {
            return Err(ParseError::MissingRows {
                expected: n,
                found: lines.len() - 1,
            });
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, line) in lines[1..=n].iter().enumerate() {
            data.extend(parse_row(line, i + 2, n)?);
        }
        let a = DenseMatrix::from_row_major(n, data).expect("validated entries");

        let b = match lines.len() - 1 - n {
            0 => None,
            1 => Some(Vector::new(parse_row(lines[n + 1], n + 2, n)?).expect("validated entries")),
            _ => return Err(ParseError::TrailingData(n + 3)),
        };
        Ok(Self { a, b })
    }

    /// The problem, failing with `MissingRhs` when the file has no `b` line.
    pub fn into_problem(self) -> Result<AveProblem, ParseError> {
        let b = self.b.ok_or(ParseError::MissingRhs)?;
        Ok(AveProblem::new(self.a, b).expect("parser enforces matching lengths"))
    }

    /// Canonical text form.
    pub fn emit(&self) -> String {
        emit(&self.a, self.b.as_deref())
    }
}

impl From<AveProblem> for ProblemFile {
    fn from(p: AveProblem) -> Self {
        Self {
            a: p.matrix().clone(),
            b: Some(p.rhs().clone()),
        }
    }
}

fn parse_row(line: &str, line_no: usize, n: usize) -> Result<Vec<f64>, ParseError> {
    let mut row = Vec::with_capacity(n);
    for token in line.split_whitespace() {
        let v: f64 = token.parse().map_err(|_| ParseError::BadNumber {
            line: line_no,
            token: token.to_string(),
        })?;
        if !v.is_finite() {
            return Err(ParseError::NonFinite {
                line: line_no,
                token: token.to_string(),
            });
        }
        row.push(v);
    }
    if row.len() != n {
        return Err(ParseError::WrongCount {
            line: line_no,
            expected: n,
            found: row.len(),
        });
    }
    Ok(row)
}

/// Formats a value with 17 significant digits.
pub fn format_exact(v: f64) -> String {
    format!("{v:.16e}")
}

/// Canonical text for a matrix and optional right-hand side.
pub fn emit(a: &DenseMatrix, b: Option<&[f64]>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", a.order());
    let mut line = |values: &[f64]| {
        let cells: Vec<String> = values.iter().map(|&v| format_exact(v)).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    };
    for row in a.rows() {
        line(row);
    }
    if let Some(b) = b {
        line(b);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_matrix_and_rhs() {
        let f = ProblemFile::parse("2\n3 0\n0 -3\n2 2\n").unwrap();
        assert_eq!(f.a, DenseMatrix::diagonal(&[3.0, -3.0]).unwrap());
        assert_eq!(f.b.unwrap().as_slice(), &[2.0, 2.0]);
    }

    #[test]
    fn rhs_is_optional() {
        let f = ProblemFile::parse("1\n0\n\n\n").unwrap();
        assert_eq!(f.a, DenseMatrix::zeros(1));
        assert!(f.b.is_none());
        assert_eq!(f.into_problem(), Err(ParseError::MissingRhs));
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(ProblemFile::parse(""), Err(ParseError::Empty));
        assert_eq!(
            ProblemFile::parse("0\n"),
            Err(ParseError::BadOrder("0".into()))
        );
        assert_eq!(
            ProblemFile::parse("two\n"),
            Err(ParseError::BadOrder("two".into()))
        );
        assert_eq!(
            ProblemFile::parse("2\n1 2 3\n4 5\n"),
            Err(ParseError::WrongCount {
                line: 2,
                expected: 2,
                found: 3
            })
        );
        assert_eq!(
            ProblemFile::parse("2\n1 x\n4 5\n"),
            Err(ParseError::BadNumber {
                line: 2,
                token: "x".into()
            })
        );
        assert_eq!(
            ProblemFile::parse("1\ninf\n"),
            Err(ParseError::NonFinite {
                line: 2,
                token: "inf".into()
            })
        );
        assert_eq!(
            ProblemFile::parse("2\n1 0\n"),
            Err(ParseError::MissingRows {
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            ProblemFile::parse("1\n1\n2\n3\n"),
            Err(ParseError::TrailingData(4))
        );
    }

    #[test]
    fn emit_uses_seventeen_digits() {
        let text = emit(&DenseMatrix::zeros(1), Some(&[0.1]));
        assert_eq!(text, "1\n0.0000000000000000e0\n1.0000000000000001e-1\n");
    }
}
