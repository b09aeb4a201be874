//! Plain-text point and function files.
//!
//! Point files hold one real per line; `#` starts a comment and blank
//! lines are skipped. Function files describe a left-continuous
//! piecewise-linear function on `[0, 1]`:
//!
//! ```text
//! anchor 0
//! # start slope jump
//! segment 0 -2 0
//! segment 0.5 -2 1
//! ```
//!
//! `anchor` is the value at 0 and each `segment` line gives the left end of
//! a segment, its slope and the jump just right of its left end. Segments
//! must start at 0 and increase; the last one ends at 1.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use stardisc_core::{PiecewiseLinearFn, PointSet};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] stardisc_core::Error),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_real(line: usize, token: &str) -> Result<f64, IoError> {
    token
        .parse::<f64>()
        .map_err(|e| IoError::Parse { line, message: format!("'{token}': {e}") })
}

pub fn parse_points(text: &str) -> Result<PointSet, IoError> {
    let values = content_lines(text)
        .map(|(line, s)| parse_real(line, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PointSet::new(values)?)
}

pub fn read_points(path: &Path) -> Result<PointSet, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Read { path: path.into(), source })?;
    parse_points(&text)
}

/// One point per line in shortest round-trip form.
pub fn format_points(ps: &PointSet) -> String {
    let mut out = String::with_capacity(ps.len() * 20);
    for x in ps.as_slice() {
        writeln!(out, "{x}").unwrap();
    }
    out
}

pub fn write_points(path: &Path, ps: &PointSet) -> Result<(), IoError> {
    fs::write(path, format_points(ps)).map_err(|source| IoError::Write { path: path.into(), source })
}

pub fn parse_function(text: &str) -> Result<PiecewiseLinearFn, IoError> {
    let mut anchor = None;
    let (mut breaks, mut slopes, mut jumps) = (Vec::new(), Vec::new(), Vec::new());
    for (line, s) in content_lines(text) {
        let fields: Vec<&str> = s.split_whitespace().collect();
        match fields.as_slice() {
            ["anchor", v] if anchor.is_none() => anchor = Some(parse_real(line, v)?),
            ["anchor", _] => return Err(IoError::Parse { line, message: "duplicate anchor".into() }),
            ["segment", x, slope, jump] => {
                breaks.push(parse_real(line, x)?);
                slopes.push(parse_real(line, slope)?);
                jumps.push(parse_real(line, jump)?);
            }
            _ => {
                return Err(IoError::Parse {
                    line,
                    message: format!("expected 'anchor v' or 'segment start slope jump', got '{s}'"),
                })
            }
        }
    }
    let anchor = anchor.ok_or(IoError::Parse { line: 0, message: "missing anchor line".into() })?;
    breaks.push(1.0);
    Ok(PiecewiseLinearFn::with_signed_jumps(breaks, slopes, jumps, anchor)?)
}

pub fn read_function(path: &Path) -> Result<PiecewiseLinearFn, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Read { path: path.into(), source })?;
    parse_function(&text)
}

pub fn format_function(f: &PiecewiseLinearFn) -> String {
    let mut out = format!("anchor {}\n", f.anchor());
    for (k, s) in f.segments().enumerate() {
        writeln!(out, "segment {} {} {}", s.start, s.slope, f.jump(k)).unwrap();
    }
    out
}
