//! Plain-text matrix files.
//!
//! The first two tokens are the row and column counts, followed by the
//! entries row by row. Whitespace is free-form and `#` starts a comment
//! that runs to the end of the line. Columns are the generators.

use std::path::Path;
use std::str::FromStr;

use crate::arith::Int;
use crate::error::Error;
use crate::matrix::IntMatrix;

/// Parses a matrix from its text form.
pub fn parse_matrix(text: &str) -> Result<IntMatrix, Error> {
    let mut tokens = text
        .lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace);
    let rows: usize = next_token(&mut tokens, "row count")?
        .parse()
        .map_err(|_| Error::Parse("row count must be a nonnegative integer".into()))?;
    let cols: usize = next_token(&mut tokens, "column count")?
        .parse()
        .map_err(|_| Error::Parse("column count must be a nonnegative integer".into()))?;
    if rows == 0 {
        return Err(Error::Parse("matrix must have at least one row".into()));
    }
    let mut m = IntMatrix::zero(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            let tok = next_token(&mut tokens, "matrix entry")?;
            m[(r, c)] = Int::from_str(tok).map_err(|_| {
                Error::Parse(format!("bad integer '{tok}' at row {r}, column {c}"))
            })?;
        }
    }
    if let Some(extra) = tokens.next() {
        return Err(Error::Parse(format!("unexpected trailing token '{extra}'")));
    }
    Ok(m)
}

fn next_token<'a>(
    tokens: &mut impl Iterator<Item = &'a str>,
    what: &str,
) -> Result<&'a str, Error> {
    tokens.next().ok_or_else(|| Error::Parse(format!("missing {what}")))
}

/// Renders a matrix in the file format, one row per line.
pub fn write_matrix(m: &IntMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if c > 0 {
                out.push(' ');
            }
            out.push_str(&m[(r, c)].to_string());
        }
        out.push('\n');
    }
    out
}

/// Reads a matrix file from disk, optionally transposing it so row-major
/// generator files can be used directly.
pub fn read_matrix_file(path: &Path, transpose: bool) -> Result<IntMatrix, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let m = parse_matrix(&text)?;
    Ok(if transpose { m.transpose() } else { m })
}
