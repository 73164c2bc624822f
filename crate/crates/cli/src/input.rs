//! Argument and JSON parsing. Integers may be JSON numbers or decimal
//! strings; a rational `n/d` is read as `n*d`, which is in the same square
//! class.

use std::fmt;
use std::sync::Arc;

use anyhow::{anyhow, Context, Result};
use cupres_core::cochain::GroupCohomology;
use cupres_core::{builtin_group, Character, FiniteGroup, FpVector, GroupSpec};
use serde_json::Value;

/// Bad input: exit code 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(Usage(msg.into()))
}

pub fn parse_json(text: &str, what: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| usage(format!("malformed JSON for {what}: {e}")))
}

fn int_from_str(s: &str) -> Result<i128> {
    let s = s.trim();
    let parse = |t: &str| t.trim().parse::<i128>().map_err(|_| usage(format!("not an integer: `{s}`")));
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d) = (parse(n)?, parse(d)?);
            if d == 0 {
                return Err(usage(format!("zero denominator in `{s}`")));
            }
            n.checked_mul(d).ok_or_else(|| usage(format!("`{s}` overflows 128 bits")))
        }
        None => parse(s),
    }
}

/// For clap: an integer or rational argument.
pub fn int_arg(s: &str) -> Result<i128, String> {
    int_from_str(s).map_err(|e| e.to_string())
}

pub fn int_value(v: &Value) -> Result<i128> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(i128::from)
            .ok_or_else(|| usage(format!("not an integer: {n} (write large values as strings)"))),
        Value::String(s) => int_from_str(s),
        other => Err(usage(format!("expected an integer, got {other}"))),
    }
}

pub fn int_list(text: &str, what: &str) -> Result<Vec<i128>> {
    let v = parse_json(text, what)?;
    let items = v.as_array().ok_or_else(|| usage(format!("{what} must be a JSON array")))?;
    items.iter().map(int_value).collect()
}

/// `[[a, b], ...]`.
pub fn pair_list(text: &str) -> Result<Vec<(i128, i128)>> {
    let v = parse_json(text, "--class")?;
    let items = v.as_array().ok_or_else(|| usage("--class must be a JSON array of [a, b] pairs"))?;
    items
        .iter()
        .map(|pair| match pair.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok((int_value(a)?, int_value(b)?)),
            _ => Err(usage(format!("expected a pair [a, b], got {pair}"))),
        })
        .collect()
}

/// A list of coordinate vectors `[[1, 0], [0, 1]]`.
pub fn vector_list(text: &str, what: &str) -> Result<Vec<Vec<i64>>> {
    let v = parse_json(text, what)?;
    let items = v.as_array().ok_or_else(|| usage(format!("{what} must be a JSON array of vectors")))?;
    items
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| usage(format!("expected a vector, got {row}")))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| usage(format!("expected an integer coordinate, got {x}"))))
                .collect()
        })
        .collect()
}

pub enum GroupSource<'a> {
    Name(&'a str),
    Json(&'a str),
    File(&'a std::path::Path),
}

pub fn load_group(src: GroupSource<'_>) -> Result<Arc<FiniteGroup>> {
    let spec_text;
    let text = match src {
        GroupSource::Name(name) => {
            return match builtin_group(name) {
                Err(e @ cupres_core::Error::UnknownGroup(_)) => Err(usage(e.to_string())),
                other => Ok(Arc::new(other?)),
            };
        }
        GroupSource::Json(t) => t,
        GroupSource::File(path) => {
            spec_text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(|e| usage(format!("{e:#}")))?;
            &spec_text
        }
    };
    let spec: GroupSpec = serde_json::from_str(text)
        .map_err(|e| usage(format!("group JSON must be {{\"perm_degree\", \"generators\"}} or {{\"table\"}}: {e}")))?;
    Ok(Arc::new(spec.build()?))
}

/// Characters given by their `H^1` coordinates.
pub fn characters(coh: &GroupCohomology, coords: &[Vec<i64>]) -> Result<Vec<Character>> {
    let dim = coh.h1().dim();
    coords
        .iter()
        .map(|c| {
            if c.len() != dim {
                return Err(usage(format!("character coordinates must have length dim H^1 = {dim}, got {}", c.len())));
            }
            Ok(coh.character(&FpVector::new(coh.p(), c)?))
        })
        .collect()
}
