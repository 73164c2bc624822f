use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};
use cupres_core::brauer::{hilbert_symbol, splits_in_multiquadratic};
use cupres_core::lgp::{decompose, verify_certificate};
use cupres_core::{BrauerClass2, DecompositionCertificate, Place, SearchBounds};
use serde_json::{json, Value};

use crate::input::{int_list, pair_list, usage};

pub fn hilbert(a: i128, b: i128, place: Place) -> Result<Value> {
    Ok(json!({ "symbol": hilbert_symbol(a, b, place)? }))
}

fn class(text: &str, bounds: &SearchBounds) -> Result<BrauerClass2> {
    Ok(BrauerClass2::from_pairs_with_bound(&pair_list(text)?, bounds.factor_bound)?)
}

pub fn invariants(class_text: &str, bounds: &SearchBounds) -> Result<Value> {
    let c = class(class_text, bounds)?;
    Ok(json!({ "invariants": c.local_invariants(), "trivial": c.is_trivial() }))
}

pub fn split(class_text: &str, a_text: &str, bounds: &SearchBounds) -> Result<Value> {
    let c = class(class_text, bounds)?;
    let a_list = int_list(a_text, "--a")?;
    Ok(json!({ "splits": splits_in_multiquadratic(&c, &a_list)? }))
}

pub fn decompose_cmd(class_text: &str, a_text: &str, bounds: &SearchBounds) -> Result<Value> {
    let c = class(class_text, bounds)?;
    let a_list = int_list(a_text, "--a")?;
    let cert = decompose(&c, &a_list, bounds)?;
    Ok(serde_json::to_value(&cert)?)
}

pub fn verify(cert: Option<&str>, file: Option<&Path>, bounds: &SearchBounds) -> Result<Value> {
    let text = match (cert, file) {
        (Some(t), _) => t.to_string(),
        (None, Some(path)) if path.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            s
        }
        (None, Some(path)) => std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(|e| usage(format!("{e:#}")))?,
        (None, None) => return Err(usage("give a certificate with --cert or --file")),
    };
    let cert: DecompositionCertificate =
        serde_json::from_str(&text).map_err(|e| usage(format!("malformed certificate: {e}")))?;
    let v = verify_certificate(&cert, bounds.factor_bound);
    let mut out = json!({ "valid": v.valid });
    if let Some(reason) = v.reason {
        out["reason"] = json!(reason);
    }
    Ok(out)
}
