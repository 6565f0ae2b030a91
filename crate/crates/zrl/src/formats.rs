//! Plain-text input and output formats. All of them are line based, skip
//! blank lines, and treat `#` as a comment marker.

use std::fs;
use std::path::Path;

use zrl_core::lefschetz::{AutomorphismAction, FixedPointDatum, InfinitePlaceSet};
use zrl_core::zeros::{ZeroList, ZeroSource};
use zrl_core::Complex64;

use crate::error::{CliError, Result};

/// Fractional digits always written for zero ordinates.
pub const MIN_FRACTION_DIGITS: usize = 9;

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Non-comment lines with their 1-based numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn fields<const N: usize>(line_no: usize, line: &str) -> Result<[&str; N]> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    parts.try_into().map_err(|p: Vec<&str>| CliError::parse(line_no, format!("expected {N} fields, found {}", p.len())))
}

fn number<T: std::str::FromStr>(line_no: usize, field: &str, what: &str) -> Result<T> {
    field.parse().map_err(|_| CliError::parse(line_no, format!("invalid {what} '{field}'")))
}

/// Parses a zeros file: one decimal ordinate per line, strictly ascending,
/// with an optional `# field: <label>` header.
pub fn parse_zeros(text: &str, path: &str) -> Result<ZeroList> {
    let mut label = None;
    for line in text.lines() {
        if let Some(rest) = line.trim().strip_prefix('#') {
            if let Some(l) = rest.trim().strip_prefix("field:") {
                label = Some(l.trim().to_string());
                break;
            }
        }
    }
    let mut ordinates: Vec<f64> = Vec::new();
    for (line_no, line) in data_lines(text) {
        let [field] = fields::<1>(line_no, line)?;
        if !is_decimal(field) {
            return Err(CliError::parse(line_no, format!("'{field}' is not a decimal ordinate")));
        }
        let g: f64 = number(line_no, field, "ordinate")?;
        if !(g > 0.0) {
            return Err(CliError::parse(line_no, format!("ordinate {field} is not positive")));
        }
        if ordinates.last().is_some_and(|&prev| prev >= g) {
            return Err(CliError::Order { line: line_no });
        }
        ordinates.push(g);
    }
    Ok(ZeroList::new(ordinates, ZeroSource::File { path: path.to_string(), field_label: label })?)
}

fn is_decimal(s: &str) -> bool {
    let s = s.strip_prefix('+').unwrap_or(s);
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    !int.is_empty() && int.bytes().all(|b| b.is_ascii_digit()) && frac.bytes().all(|b| b.is_ascii_digit())
}

pub fn load_zeros(path: &Path) -> Result<ZeroList> {
    parse_zeros(&read_file(path)?, &path.display().to_string())
}

/// Shortest round-trip decimal for `x`, padded to [`MIN_FRACTION_DIGITS`].
pub fn format_ordinate(x: f64) -> String {
    let mut s = format!("{x}");
    let digits = match s.find('.') {
        Some(dot) => s.len() - dot - 1,
        None => {
            s.push('.');
            0
        }
    };
    for _ in digits..MIN_FRACTION_DIGITS {
        s.push('0');
    }
    s
}

pub fn format_zeros(list: &ZeroList) -> String {
    let mut out = String::new();
    if let Some(label) = list.field_label() {
        out.push_str(&format!("# field: {label}\n"));
    }
    for &g in list.ordinates() {
        out.push_str(&format_ordinate(g));
        out.push('\n');
    }
    out
}

pub fn save_zeros(list: &ZeroList, path: &Path) -> Result<()> {
    write_file(path, &format_zeros(list))
}

/// Orbit file: lines `n m_n`, `n` strictly increasing.
pub fn parse_orbits(text: &str) -> Result<Vec<(u32, u64)>> {
    let mut out: Vec<(u32, u64)> = Vec::new();
    for (line_no, line) in data_lines(text) {
        let [n, m] = fields::<2>(line_no, line)?;
        let n: u32 = number(line_no, n, "period")?;
        let m: u64 = number(line_no, m, "orbit count")?;
        if n == 0 {
            return Err(CliError::parse(line_no, "period must be >= 1"));
        }
        if out.last().is_some_and(|&(prev, _)| prev >= n) {
            return Err(CliError::Order { line: line_no });
        }
        out.push((n, m));
    }
    Ok(out)
}

/// Coefficient file: lines `m n re im`.
pub fn parse_coefficients(text: &str) -> Result<Vec<((i64, i64), Complex64)>> {
    let mut out: Vec<((i64, i64), Complex64)> = Vec::new();
    for (line_no, line) in data_lines(text) {
        let [m, n, re, im] = fields::<4>(line_no, line)?;
        let mode = (number(line_no, m, "mode index")?, number(line_no, n, "mode index")?);
        if out.iter().any(|(k, _)| *k == mode) {
            return Err(CliError::parse(line_no, format!("mode {mode:?} listed twice")));
        }
        let value = Complex64::new(number(line_no, re, "real part")?, number(line_no, im, "imaginary part")?);
        out.push((mode, value));
    }
    Ok(out)
}

pub fn format_coefficients(coeffs: &[((i64, i64), Complex64)]) -> String {
    let mut out = String::from("# m n re im\n");
    for ((m, n), c) in coeffs {
        out.push_str(&format!("{m} {n} {:e} {:e}\n", c.re, c.im));
    }
    out
}

/// Places file: header `r1 r2`, then the permutation as one line of indices.
/// A missing permutation line means the identity.
pub fn parse_places(text: &str) -> Result<(InfinitePlaceSet, AutomorphismAction)> {
    let mut lines = data_lines(text);
    let Some((line_no, header)) = lines.next() else {
        return Err(CliError::parse(0, "places file is empty"));
    };
    let [r1, r2] = fields::<2>(line_no, header)?;
    let places = InfinitePlaceSet::from_signature(number(line_no, r1, "r1")?, number(line_no, r2, "r2")?);
    let action = match lines.next() {
        None => AutomorphismAction::identity(&places),
        Some((line_no, perm)) => {
            let perm = perm
                .split_whitespace()
                .map(|f| number::<usize>(line_no, f, "place index"))
                .collect::<Result<Vec<_>>>()?;
            AutomorphismAction::from_permutation(perm, &places)?
        }
    };
    if let Some((line_no, _)) = lines.next() {
        return Err(CliError::parse(line_no, "unexpected line after the permutation"));
    }
    Ok((places, action))
}

/// Fixed-point file: lines `local_trace epsilon`.
pub fn parse_fixed_points(text: &str) -> Result<Vec<FixedPointDatum>> {
    data_lines(text)
        .map(|(line_no, line)| {
            let [t, e] = fields::<2>(line_no, line)?;
            Ok(FixedPointDatum::new(number(line_no, t, "local trace")?, number(line_no, e, "sign")?)?)
        })
        .collect()
}
