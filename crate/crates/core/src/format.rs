//! Text encodings: PESOL v1 for solutions (plus a JSON mirror), and the
//! header-plus-permutations format for cocycles and sigma families.
//!
//! PESOL v1:
//!
//! ```text
//! PESOL 1
//! <n>
//! <n rows of the product table>
//! <n rows of the theta table>
//! ```
//!
//! Entries are 0-based and separated by single spaces; every line ends with
//! `\n`. Writing a parsed canonical file reproduces it byte for byte.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::solution::RawTables;

pub const PESOL_MAGIC: &str = "PESOL 1";

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_row(line_no: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| {
                parse_err(
                    line_no,
                    format!("expected a non-negative integer, found `{t}`"),
                )
            })
        })
        .collect()
}

/// Reads a size line followed by `blocks * n` rows of `n` entries each.
/// Blank lines and lines starting with `#` are ignored. Line numbers in
/// errors are 1-based and refer to the original text.
pub(crate) fn parse_sized_rows(text: &str, blocks: usize) -> Result<(usize, Vec<Vec<usize>>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (size_line, size_text) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing size line"))?;
    let n: usize = size_text
        .parse()
        .map_err(|_| parse_err(size_line, format!("expected a size, found `{size_text}`")))?;
    let mut rows = Vec::with_capacity(blocks * n);
    let mut last = size_line;
    for _ in 0..blocks * n {
        let (no, l) = lines
            .next()
            .ok_or_else(|| parse_err(last + 1, format!("expected {} rows", blocks * n)))?;
        let row = parse_row(no, l)?;
        if row.len() != n {
            return Err(parse_err(
                no,
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        if let Some(v) = row.iter().find(|&&v| v >= n) {
            return Err(parse_err(no, format!("entry {v} out of range 0..{n}")));
        }
        rows.push(row);
        last = no;
    }
    if let Some((no, _)) = lines.next() {
        return Err(parse_err(no, "unexpected trailing content"));
    }
    Ok((n, rows))
}

/// Writes tables in PESOL v1.
pub fn write_pesol(raw: &RawTables) -> String {
    let n = raw.n();
    let mut out = String::with_capacity(16 + 4 * n * n);
    out.push_str(PESOL_MAGIC);
    out.push('\n');
    out.push_str(&n.to_string());
    out.push('\n');
    for table in [raw.product(), raw.theta()] {
        for row in table.chunks(n.max(1)).take(n) {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
    }
    out
}

/// Parses PESOL v1 text.
pub fn parse_pesol(text: &str) -> Result<RawTables> {
    let mut iter = text.lines().enumerate();
    let header = loop {
        match iter.next() {
            Some((_, l)) if l.trim().is_empty() || l.trim_start().starts_with('#') => continue,
            Some((i, l)) => break (i + 1, l.trim()),
            None => return Err(parse_err(1, "empty input")),
        }
    };
    if header.1 != PESOL_MAGIC {
        return Err(parse_err(
            header.0,
            format!("expected `{PESOL_MAGIC}` header"),
        ));
    }
    let rest: String = text
        .lines()
        .skip(header.0)
        .map(|l| format!("{l}\n"))
        .collect();
    let (n, rows) = parse_sized_rows(&rest, 2).map_err(|e| match e {
        Error::Parse { line, msg } => parse_err(line + header.0, msg),
        other => other,
    })?;
    RawTables::new(n, rows[..n].concat(), rows[n..].concat())
}

#[derive(Debug, Serialize, Deserialize)]
struct PesolJson {
    format: String,
    version: u32,
    n: usize,
    product: Vec<Vec<usize>>,
    theta: Vec<Vec<usize>>,
}

/// JSON mirror of PESOL v1.
pub fn write_json(raw: &RawTables) -> String {
    let n = raw.n();
    let rows = |t: &[usize]| t.chunks(n.max(1)).take(n).map(<[usize]>::to_vec).collect();
    let doc = PesolJson {
        format: "PESOL".into(),
        version: 1,
        n,
        product: rows(raw.product()),
        theta: rows(raw.theta()),
    };
    let mut s = serde_json::to_string(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<RawTables> {
    let doc: PesolJson =
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    if doc.format != "PESOL" || doc.version != 1 {
        return Err(parse_err(1, "expected format PESOL version 1"));
    }
    let n = doc.n;
    if doc.product.len() != n || doc.theta.len() != n {
        return Err(parse_err(1, format!("expected {n} rows per table")));
    }
    if doc.product.iter().chain(&doc.theta).any(|r| r.len() != n) {
        return Err(parse_err(1, format!("expected {n} entries per row")));
    }
    RawTables::new(n, doc.product.concat(), doc.theta.concat())
}

/// Accepts either PESOL text or its JSON mirror.
pub fn parse_solution_text(text: &str) -> Result<RawTables> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_pesol(text)
    }
}

/// Header `"<group order> <set size>"` followed by `count(group order)`
/// permutations of the set, one per line.
pub(crate) fn parse_permutation_family(
    text: &str,
    count: impl Fn(usize) -> usize,
) -> Result<(usize, usize, Vec<Permutation>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hno, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let nums = parse_row(hno, header)?;
    let [g, x] = nums[..] else {
        return Err(parse_err(hno, "header must be `<group order> <set size>`"));
    };
    let mut perms = Vec::new();
    for _ in 0..count(g) {
        let (no, l) = lines
            .next()
            .ok_or_else(|| parse_err(hno, format!("expected {} permutations", count(g))))?;
        let row = parse_row(no, l)?;
        if row.len() != x {
            return Err(parse_err(no, format!("expected {x} entries")));
        }
        perms.push(Permutation::new(row).map_err(|e| parse_err(no, e.to_string()))?);
    }
    if let Some((no, _)) = lines.next() {
        return Err(parse_err(no, "unexpected trailing content"));
    }
    Ok((g, x, perms))
}

pub(crate) fn write_permutation_family(g: usize, x: usize, perms: &[Permutation]) -> String {
    let mut out = format!("{g} {x}\n");
    out.push_str(&crate::perm::format_permutations(perms));
    out
}
