use std::sync::Arc;

use anyhow::Result;
use cupres_core::cochain::GroupCohomology;
use cupres_core::cup_restriction::has_property;
use cupres_core::group::kernel_of_characters;
use cupres_core::massey::{scan_vanishing, triple_massey_set};
use cupres_core::unipotent::{check_surjective, find_prescribed_hom, unipotent_group};
use cupres_core::{FiniteGroup, FpVector};
use serde_json::{json, Value};

use crate::input::{characters, usage, vector_list};

fn entries(v: &FpVector) -> Value {
    json!(v.entries())
}

pub fn cohomology(g: &Arc<FiniteGroup>, p: u32) -> Result<Value> {
    let coh = GroupCohomology::new(g, p)?;
    let basis = coh.h1().characters();
    let cup_table = basis
        .iter()
        .map(|a| basis.iter().map(|b| Ok(entries(&coh.cup_class(a, b)?))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "order": g.order(),
        "p": p,
        "generators": g.generators().len(),
        "h1_dim": coh.h1().dim(),
        "h2_dim": coh.h2().dim(),
        "h1_basis": basis.iter().map(|c| c.on_generators()).collect::<Vec<_>>(),
        "cup_table": cup_table,
    }))
}

pub fn massey(g: &Arc<FiniteGroup>, p: u32, triple: &str) -> Result<Value> {
    let coh = GroupCohomology::new(g, p)?;
    let chars = characters(&coh, &vector_list(triple, "--triple")?)?;
    let [a, b, c] = chars.as_slice() else {
        return Err(usage("--triple needs exactly three coordinate vectors"));
    };
    Ok(match triple_massey_set(&coh, [a, b, c])? {
        None => json!({ "defined": false }),
        Some(set) => json!({
            "defined": true,
            "contains_zero": set.contains_zero(),
            "representative": entries(set.representative()),
            "indeterminacy": set.indeterminacy().basis().iter().map(entries).collect::<Vec<_>>(),
            "size": set.len(),
        }),
    })
}

pub fn scan(g: &Arc<FiniteGroup>, p: u32, all: bool) -> Result<Value> {
    let coh = GroupCohomology::new(g, p)?;
    let report = scan_vanishing(&coh)?;
    let defined = report.triples.iter().filter(|t| t.defined).count();
    let mut out = json!({
        "holds": report.holds,
        "witnesses": report.witnesses,
        "triples_checked": report.triples.len(),
        "defined": defined,
    });
    if all {
        out["triples"] = serde_json::to_value(&report.triples)?;
    }
    Ok(out)
}

pub fn cup_res(g: &Arc<FiniteGroup>, p: u32, chars: &str) -> Result<Value> {
    let coh = GroupCohomology::new(g, p)?;
    let chars = characters(&coh, &vector_list(chars, "--chars")?)?;
    let verdict = has_property(&coh, &chars)?;
    let mut out = serde_json::to_value(&verdict)?;
    out["kernel_order"] = json!(kernel_of_characters(g, &chars)?.order());
    Ok(out)
}

pub fn u_hom(g: &Arc<FiniteGroup>, p: u32, chars: &str, bar: bool) -> Result<Value> {
    let coh = GroupCohomology::new(g, p)?;
    let chars = characters(&coh, &vector_list(chars, "--chars")?)?;
    if chars.is_empty() {
        return Err(usage("--chars needs at least one character"));
    }
    let n = chars.len();
    let target = if bar { "U_bar" } else { "U" };
    let Some(hom) = find_prescribed_hom(g, &chars, bar)? else {
        return Ok(json!({ "found": false, "target": target, "matrix_dim": n + 1 }));
    };
    let u = unipotent_group(n, p, bar)?;
    let s = check_surjective(&hom, &u)?;
    let images: Vec<_> = hom.generator_images().iter().map(|&m| u.matrix(m)).collect();
    Ok(json!({
        "found": true,
        "target": target,
        "matrix_dim": n + 1,
        "generator_images": images,
        "surjective": s.by_image,
        "surjective_by_frattini": s.by_frattini,
    }))
}
