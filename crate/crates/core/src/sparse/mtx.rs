//! Matrix Market coordinate files, read with pattern semantics.

use std::fmt::Write as _;

use super::NonzeroStructure;
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses a Matrix Market `coordinate` file into a nonzero structure.
///
/// Values are ignored (an explicit `0.0` still counts as a stored entry),
/// symmetric files are expanded to the full pattern and duplicate entries
/// are merged. Line numbers in errors are 1-based.
pub fn load_matrix_market(text: &str) -> Result<NonzeroStructure> {
    let mut lines = text.lines().enumerate().map(|(n, l)| (n + 1, l));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let fields: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if fields.len() != 5 || fields[0] != "%%matrixmarket" || fields[1] != "matrix" {
        return Err(parse_err(hline, "expected '%%MatrixMarket matrix <format> <field> <symmetry>'"));
    }
    if fields[2] != "coordinate" {
        return Err(parse_err(hline, format!("unsupported format '{}'", fields[2])));
    }
    match fields[3].as_str() {
        "pattern" | "real" | "integer" => {}
        other => return Err(parse_err(hline, format!("unsupported field '{other}'"))),
    }
    let symmetric = match fields[4].as_str() {
        "general" => false,
        "symmetric" | "skew-symmetric" => true,
        other => return Err(parse_err(hline, format!("unsupported symmetry '{other}'"))),
    };

    let mut data = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });

    let (sline, size) = data
        .next()
        .ok_or_else(|| parse_err(hline + 1, "missing size line"))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| parse_err(sline, "size line must hold three nonnegative integers"))?;
    if dims.len() != 3 {
        return Err(parse_err(sline, "size line must hold three nonnegative integers"));
    }
    let (n_rows, n_cols, nnz) = (dims[0], dims[1], dims[2]);
    if symmetric && n_rows != n_cols {
        return Err(parse_err(sline, "symmetric matrix must be square"));
    }

    let mut coords = Vec::with_capacity(if symmetric { 2 * nnz } else { nnz });
    let mut seen = 0usize;
    for (ln, l) in data {
        let mut toks = l.split_whitespace();
        let mut index = |what: &str, bound: usize| -> Result<usize> {
            let t = toks
                .next()
                .ok_or_else(|| parse_err(ln, format!("missing {what} index")))?;
            let v: usize = t
                .parse()
                .map_err(|_| parse_err(ln, format!("bad {what} index '{t}'")))?;
            if v == 0 || v > bound {
                return Err(parse_err(ln, format!("{what} index {v} out of range 1..={bound}")));
            }
            Ok(v - 1)
        };
        let i = index("row", n_rows)?;
        let k = index("column", n_cols)?;
        seen += 1;
        if seen > nnz {
            return Err(parse_err(ln, format!("more than the declared {nnz} entries")));
        }
        coords.push((i, k));
        if symmetric && i != k {
            coords.push((k, i));
        }
    }
    if seen != nnz {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("declared {nnz} entries but found {seen}"),
        ));
    }
    NonzeroStructure::from_coords(n_rows, n_cols, coords)
}

/// Writes a `pattern general` coordinate file with LF line endings.
pub fn write_matrix_market(s: &NonzeroStructure) -> String {
    let mut out = String::with_capacity(16 * (s.nnz() + 2));
    out.push_str("%%MatrixMarket matrix coordinate pattern general\n");
    let _ = writeln!(out, "{} {} {}", s.n_rows(), s.n_cols(), s.nnz());
    for (i, k) in s.iter() {
        let _ = writeln!(out, "{} {}", i + 1, k + 1);
    }
    out
}
