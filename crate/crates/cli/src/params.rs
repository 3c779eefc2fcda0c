use std::str::FromStr;

use umbral::combinatorics::MultiIndex;
use umbral::{Poly, Rational};

use crate::CliError;

const RESERVED: [&str; 3] = ["x", "t", "s"];

/// Exact rational from `p/q`, an integer or a terminating decimal.
pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let s = s.trim();
    let bad = || CliError::usage(format!("`{s}` is not a rational number"));
    if let Some((int, frac)) = s.split_once('.') {
        let digits = |d: &str| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit());
        let (neg, int) = match int.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int),
        };
        if !(digits(frac) && (int.is_empty() || digits(int))) {
            return Err(bad());
        }
        let scale = Rational::from_str(&format!("1{}", "0".repeat(frac.len()))).map_err(|_| bad())?;
        let whole = if int.is_empty() { "0" } else { int };
        let v = Rational::from_str(&format!("{whole}{frac}")).map_err(|_| bad())? / scale;
        return Ok(if neg { -v } else { v });
    }
    Rational::from_str(s).map_err(|_| bad())
}

/// A family parameter: a rational value or a fresh indeterminate.
pub fn parse_param(name: &str, s: &str) -> Result<Poly, CliError> {
    let s = s.trim();
    let is_ident = s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if is_ident {
        let digits_after_x =
            s.strip_prefix('x').is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()));
        if RESERVED.contains(&s) || digits_after_x {
            return Err(CliError::usage(format!("--{name}: `{s}` is a reserved indeterminate")));
        }
        return Ok(Poly::var(s));
    }
    parse_rational(s).map(Poly::constant).map_err(|e| CliError::usage(format!("--{name}: {}", e.message())))
}

/// `1,2,0` as a multi-index.
pub fn parse_index(s: &str) -> Result<MultiIndex, CliError> {
    let parts: Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse::<u32>()).collect();
    match parts {
        Ok(v) if !v.is_empty() => Ok(MultiIndex::new(v)),
        _ => Err(CliError::usage(format!("`{s}` is not a multi-index (expected e.g. 1,2)"))),
    }
}

/// Rows separated by `;`, entries by `,`.
pub fn parse_matrix<T>(s: &str, mut entry: impl FnMut(&str) -> Result<T, CliError>) -> Result<Vec<Vec<T>>, CliError> {
    let rows: Vec<Vec<T>> = s
        .split(';')
        .map(|row| row.split(',').map(&mut entry).collect::<Result<Vec<T>, CliError>>())
        .collect::<Result<_, _>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(CliError::usage(format!("`{s}` is not a square matrix")));
    }
    Ok(rows)
}

pub fn parse_f64(name: &str, s: &str) -> Result<f64, CliError> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::usage(format!("--{name}: `{s}` is not a finite number")))
}
