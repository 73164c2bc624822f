//! The map `Λ: (φ_1..φ_r) -> Σ χ_i ∪ φ_i` into `H^2(G)` and exactness of
//! `H^1(G)^r -> H^2(G) -> H^2(K)` at the middle, `K = ∩ Ker(χ_i)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::cochain::{cohomology, GroupCohomology};
use crate::error::{Error, Result};
use crate::fp_linalg::{FpMatrix, Subspace};
use crate::group::{kernel_of_characters, same_group, Character, Subgroup};

/// `Σ_i χ_i ∪ H^1(G)` inside `H^2(G)` coordinates.
pub fn lambda_image(coh: &GroupCohomology, chars: &[Character]) -> Result<Subspace> {
    let mut s = Subspace::zero(coh.p(), coh.h2().dim());
    for chi in chars {
        for phi in coh.h1().characters() {
            s.insert(&coh.cup_class(chi, phi)?);
        }
    }
    Ok(s)
}

/// `Ker(res: H^2(G) -> H^2(K))`.
pub fn res_kernel_h2(coh: &GroupCohomology, k: &Subgroup) -> Result<Subspace> {
    if !same_group(coh.group(), k.parent()) {
        return Err(Error::GroupMismatch);
    }
    let p = coh.p();
    let h = coh.h2().dim();
    let hk = cohomology(&k.as_group(), p, 2)?;
    let columns = coh
        .h2()
        .representatives()
        .iter()
        .map(|r| Ok(hk.coordinates_of_cocycle(&r.restrict(k)?)))
        .collect::<Result<Vec<_>>>()?;
    if hk.dim() == 0 {
        return Ok(Subspace::full(p, h));
    }
    let m = FpMatrix::from_columns(p, hk.dim(), &columns)?;
    Ok(Subspace::spanned_by(p, h, m.kernel_basis()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CupResVerdict {
    pub holds: bool,
    pub dim_image: usize,
    pub dim_kernel: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u32>>,
}

fn verdict(image: &Subspace, kernel: &Subspace) -> Result<CupResVerdict> {
    if !image.is_subspace_of(kernel) {
        return Err(Error::Internal("image of Λ is not inside the restriction kernel".into()));
    }
    let witness = kernel.basis().into_iter().find(|v| !image.contains(v)).map(|v| v.entries().to_vec());
    Ok(CupResVerdict { holds: witness.is_none(), dim_image: image.dim(), dim_kernel: kernel.dim(), witness })
}

/// Whether the image of `Λ` equals the kernel of restriction to
/// `Ker(χ_1) ∩ ... ∩ Ker(χ_r)`; on failure, the first kernel basis vector
/// outside the image.
pub fn has_property(coh: &GroupCohomology, chars: &[Character]) -> Result<CupResVerdict> {
    let k = kernel_of_characters(coh.group(), chars)?;
    verdict(&lambda_image(coh, chars)?, &res_kernel_h2(coh, &k)?)
}

/// Characters whose common kernel is `k`: a basis of the `H^1` classes
/// vanishing on `k`. Fails when `k` is not such an intersection.
pub fn characters_for_subgroup(coh: &GroupCohomology, k: &Subgroup) -> Result<Vec<Character>> {
    if !same_group(coh.group(), k.parent()) {
        return Err(Error::GroupMismatch);
    }
    let p = coh.p();
    let basis = coh.h1().characters();
    let chars: Vec<Character> = if basis.is_empty() {
        Vec::new()
    } else {
        let rows: Vec<Vec<i64>> = k
            .members()
            .iter()
            .map(|&g| basis.iter().map(|c| c.value(g) as i64).collect())
            .collect();
        FpMatrix::from_rows(p, &rows)?
            .kernel_basis()
            .iter()
            .map(|v| coh.character(v))
            .collect()
    };
    if kernel_of_characters(coh.group(), &chars)? != *k {
        return Err(Error::NotASubgroup("not an intersection of kernels of characters".into()));
    }
    Ok(chars)
}

/// The property for a subgroup `K`, through the characters vanishing on it.
pub fn has_property_for_subgroup(coh: &GroupCohomology, k: &Subgroup) -> Result<CupResVerdict> {
    let chars = characters_for_subgroup(coh, k)?;
    verdict(&lambda_image(coh, &chars)?, &res_kernel_h2(coh, k)?)
}

/// Memoizes restriction kernels by subgroup, for repeated queries on one
/// group.
pub struct CupResCache {
    coh: Arc<GroupCohomology>,
    kernels: Mutex<HashMap<Vec<usize>, Subspace>>,
}

impl CupResCache {
    pub fn new(coh: Arc<GroupCohomology>) -> Self {
        Self { coh, kernels: Mutex::new(HashMap::new()) }
    }

    pub fn cohomology(&self) -> &GroupCohomology {
        &self.coh
    }

    pub fn res_kernel(&self, k: &Subgroup) -> Result<Subspace> {
        if let Some(s) = self.kernels.lock().expect("cache lock").get(k.members()) {
            return Ok(s.clone());
        }
        let s = res_kernel_h2(&self.coh, k)?;
        self.kernels.lock().expect("cache lock").insert(k.members().to_vec(), s.clone());
        Ok(s)
    }

    pub fn has_property(&self, chars: &[Character]) -> Result<CupResVerdict> {
        let k = kernel_of_characters(self.coh.group(), chars)?;
        verdict(&lambda_image(&self.coh, chars)?, &self.res_kernel(&k)?)
    }
}
