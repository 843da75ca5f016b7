//! Emission helpers. Values stay exact until they are written here.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_bigint::BigUint;
use serde_json::{Map, Value};
use syntaxpoly::exact::{round_half_up, rounded_f64, to_fraction_string, Exact};

use crate::error::{CliError, Result};

/// Decimal places of every emitted distance.
pub const PLACES: u32 = 2;

pub const ROUNDING_POLICY: &str = "half-up to 2 decimal places, applied only when writing output";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// CSV cell: rounded decimal, or `p/q` when `exact`.
pub fn cell(v: &Exact, exact: bool) -> String {
    if exact {
        to_fraction_string(v)
    } else {
        round_half_up(v, PLACES)
    }
}

pub fn number(v: &Exact) -> Value {
    Value::from(rounded_f64(v, PLACES))
}

/// Inserts `key` as a rounded number and, when `exact`, `key_exact` as `p/q`.
pub fn put(map: &mut Map<String, Value>, key: &str, v: &Exact, exact: bool) {
    map.insert(key.to_string(), number(v));
    if exact {
        map.insert(format!("{key}_exact"), Value::from(to_fraction_string(v)));
    }
}

pub fn to_json(v: &Value) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

/// Writes to `path`, or to stdout when `None`.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Input(format!("stdout: {e}")))
        }
    }
}

/// Parses a positive rational written as `0.5`, `2` or `1/2`.
pub fn parse_positive_rational(s: &str) -> Result<Exact> {
    let bad = || CliError::Input(format!("`{s}` is not a positive number"));
    let digits = |t: &str| -> Result<BigUint> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse().map_err(|_| bad())
    };
    let s = s.trim();
    let v = if let Some((n, d)) = s.split_once('/') {
        let d = digits(d.trim())?;
        if d == BigUint::from(0u8) {
            return Err(bad());
        }
        Exact::new(digits(n.trim())?, d)
    } else {
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        let int = if int.is_empty() { "0" } else { int };
        let scale = BigUint::from(10u8).pow(frac.len() as u32);
        let frac_v = if frac.is_empty() {
            BigUint::from(0u8)
        } else {
            digits(frac)?
        };
        Exact::new(digits(int)? * &scale + frac_v, scale)
    };
    if v == Exact::from_integer(BigUint::from(0u8)) {
        return Err(bad());
    }
    Ok(v)
}
