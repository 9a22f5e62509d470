//! Plain-text matrix format: a `rows cols` header line followed by the entries
//! in row-major order, each written as `a` or `a/b`, separated by whitespace.
//! Lines starting with `#` are comments.

use std::fmt::Write as _;

use super::matrix::QMatrix;
use super::rational::Rational;
use super::LinalgError;

pub fn parse_matrix(text: &str) -> Result<QMatrix, LinalgError> {
    let mut tokens = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        tokens.extend(line.split_whitespace().map(|t| (lineno + 1, t)));
    }
    let mut it = tokens.into_iter();
    let mut header = |what: &str| -> Result<usize, LinalgError> {
        let (line, tok) = it
            .next()
            .ok_or_else(|| LinalgError::Parse { line: 1, message: format!("missing {what}") })?;
        tok.parse().map_err(|_| LinalgError::Parse { line, message: format!("bad {what} `{tok}`") })
    };
    let rows = header("row count")?;
    let cols = header("column count")?;
    let mut data = Vec::with_capacity(rows * cols);
    for (line, tok) in it {
        let x: Rational =
            tok.parse().map_err(|e: super::rational::ParseRationalError| LinalgError::Parse { line, message: e.to_string() })?;
        data.push(x);
    }
    if data.len() != rows * cols {
        return Err(LinalgError::Parse {
            line: text.lines().count().max(1),
            message: format!("expected {} entries, found {}", rows * cols, data.len()),
        });
    }
    QMatrix::from_vec(rows, cols, data)
}

/// Serializes with one matrix row per line.
pub fn format_matrix(m: &QMatrix) -> String {
    let mut s = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}
