//! Plain-text matroid files.
//!
//! ```text
//! # Fano plane
//! 2 3 7
//! 0 0 0 1 1 1 1
//! 0 1 1 0 0 1 1
//! 1 0 1 0 1 0 1
//! w: 1 1 1 1 1 1 1
//! ```
//!
//! The header is `q r n`, followed by `r` matrix rows of `n` entries. The
//! optional `w:` line gives `n` positive weights; without it every weight is
//! 1. Lines starting with `#` and blank lines are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::linalg::GFMatrix;
use crate::matroid::WeightedRepMatroid;
use crate::Weight;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn numbers<T: std::str::FromStr>(line: usize, text: &str) -> Result<Vec<T>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse()
                .map_err(|_| parse_err(line, format!("bad number {tok:?}")))
        })
        .collect()
}

pub fn parse_matroid<W: Weight>(text: &str) -> Result<WeightedRepMatroid<W>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let header: Vec<usize> = numbers(hline, header)?;
    let [q, r, n] = header[..] else {
        return Err(parse_err(hline, "header must be \"q r n\""));
    };
    let field =
        FieldSpec::new(u32::try_from(q).map_err(|_| parse_err(hline, "field order too large"))?)
            .map_err(|e| parse_err(hline, e.to_string()))?;

    let mut rows = Vec::with_capacity(r);
    let mut weights = None;
    let mut last = hline;
    for (no, line) in lines {
        last = no;
        if let Some(rest) = line.strip_prefix("w:") {
            if rows.len() < r {
                return Err(parse_err(no, format!("weights before all {r} matrix rows")));
            }
            if weights.is_some() {
                return Err(parse_err(no, "duplicate weight line"));
            }
            let w: Vec<W> = numbers(no, rest)?;
            if w.len() != n {
                return Err(parse_err(
                    no,
                    format!("expected {n} weights, got {}", w.len()),
                ));
            }
            if w.iter().any(|x| x.is_zero()) {
                return Err(parse_err(no, "weights must be positive"));
            }
            weights = Some(w);
            continue;
        }
        if rows.len() == r || weights.is_some() {
            return Err(parse_err(no, "unexpected extra line"));
        }
        let row: Vec<u32> = numbers(no, line)?;
        if row.len() != n {
            return Err(parse_err(
                no,
                format!("expected {n} entries, got {}", row.len()),
            ));
        }
        if let Some(&x) = row.iter().find(|&&x| !field.contains(x)) {
            return Err(parse_err(no, format!("entry {x} is not in GF({q})")));
        }
        rows.push(row);
    }
    if rows.len() != r {
        return Err(parse_err(
            last,
            format!("expected {r} matrix rows, got {}", rows.len()),
        ));
    }
    let matrix = if r == 0 {
        GFMatrix::zeros(&field, 0, n)
    } else {
        GFMatrix::from_rows(&field, &rows).map_err(|e| parse_err(hline, e.to_string()))?
    };
    WeightedRepMatroid::from_matrix(matrix, weights)
}

/// Writes `m` in file form. Labels are not stored; reading the text back
/// gives labels `0..n`.
pub fn write_matroid<W: Weight>(m: &WeightedRepMatroid<W>) -> String {
    let a = m.columns();
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}", m.field().q(), a.rows(), a.cols());
    for i in 0..a.rows() {
        let row: Vec<String> = a.row(i).iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    if m.weights().iter().any(|w| !w.is_one()) {
        let w: Vec<String> = m.weights().iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "w: {}", w.join(" "));
    }
    out
}
