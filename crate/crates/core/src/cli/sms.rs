//! SMS sparse matrix text files.
//!
//! ```text
//! R C M
//! i j v
//! ...
//! 0 0 0
//! ```
//!
//! Indices are 1-based and values are nonzero integers. The third header
//! token is a field marker; it is read and ignored, and always written as
//! `M`. Blank lines are skipped. A non-square matrix is padded with zero
//! rows or columns up to `max(R, C)`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::integer::IntegerMatrix;
use crate::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_index(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("{what} `{tok}` is not a nonnegative integer")))
}

/// Parses SMS text into a square integer matrix.
pub fn parse_sms(text: &str) -> Result<IntegerMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 3 {
        return Err(parse_err(hline, "header must be `rows cols marker`"));
    }
    let rows = parse_index(h[0], hline, "row count")?;
    let cols = parse_index(h[1], hline, "column count")?;
    let n = rows.max(cols);

    let mut triplets = Vec::new();
    let mut seen = std::collections::HashMap::new();
    let mut terminated = false;
    for (ln, l) in lines.by_ref() {
        let t: Vec<&str> = l.split_whitespace().collect();
        if t.len() != 3 {
            return Err(parse_err(ln, format!("expected `i j v`, found {} tokens", t.len())));
        }
        let i = parse_index(t[0], ln, "row index")?;
        let j = parse_index(t[1], ln, "column index")?;
        let v: BigInt = t[2]
            .parse()
            .map_err(|_| parse_err(ln, format!("value `{}` is not an integer", t[2])))?;
        if i == 0 && j == 0 && v.is_zero() {
            terminated = true;
            break;
        }
        if i == 0 || j == 0 || i > rows || j > cols {
            return Err(parse_err(ln, format!("index ({i}, {j}) outside a {rows}x{cols} matrix")));
        }
        if v.is_zero() {
            return Err(parse_err(ln, "explicit zero entry"));
        }
        if let Some(first) = seen.insert((i, j), ln) {
            return Err(parse_err(ln, format!("duplicate entry ({i}, {j}), first given on line {first}")));
        }
        triplets.push((i - 1, j - 1, v));
    }
    if !terminated {
        return Err(parse_err(text.lines().count().max(1), "missing `0 0 0` terminator"));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "content after the `0 0 0` terminator"));
    }
    IntegerMatrix::from_triplets(n, triplets)
}

/// Canonical SMS text: square header, row-major entries, terminator.
pub fn emit_sms(a: &IntegerMatrix) -> String {
    let mut out = format!("{} {} M\n", a.dim(), a.dim());
    for (r, c, v) in a.entries() {
        out.push_str(&format!("{} {} {}\n", r + 1, c + 1, v));
    }
    out.push_str("0 0 0\n");
    out
}
