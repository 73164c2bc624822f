//! Defining systems and triple Massey products.
//!
//! A defining system of size `n` is a triangular array of 1-cochains
//! `c_ij`, `1 <= i <= j <= n`, `(i,j) != (1,n)`, with `d c_ij = c~_ij` where
//! `c~_ij = -sum_{r=i}^{j-1} c_ir ∪ c_{r+1,j}`. The triple product
//! `<x1,x2,x3>` is the set of classes `[c~_13]`; it equals
//! `[c~_13] + x1 ∪ H^1 + H^1 ∪ x3` for any one defining system.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::cochain::{Cochain, GroupCohomology};
use crate::error::{Error, Result};
use crate::fp_linalg::{FpVector, Subspace};
use crate::group::{Character, Subgroup};

/// Entries `c_ij` keyed by 1-based `(i, j)`.
pub type CochainArray = BTreeMap<(usize, usize), Cochain>;

/// `c~_ij`; needs `c_ir` and `c_{r+1,j}` for `i <= r < j`.
pub fn tilde(entries: &CochainArray, i: usize, j: usize) -> Result<Cochain> {
    let first = entries.values().next().ok_or(Error::MissingEntry(i, i))?;
    let mut acc = Cochain::zero(first.group().clone(), first.p(), 2);
    for r in i..j {
        let a = entries.get(&(i, r)).ok_or(Error::MissingEntry(i, r))?;
        let b = entries.get(&(r + 1, j)).ok_or(Error::MissingEntry(r + 1, j))?;
        acc = acc.add(&a.cup(b)?)?;
    }
    Ok(acc.neg())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningSystem {
    n: usize,
    entries: CochainArray,
}

impl DefiningSystem {
    /// Checks that all entries except `(1,n)` are present, are 1-cochains on
    /// one group, and satisfy `d c_ij = c~_ij`. An `(1,n)` entry, if given,
    /// is dropped.
    pub fn new(n: usize, mut entries: CochainArray) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionMismatch(format!("defining system of size {n}")));
        }
        entries.remove(&(1, n));
        if let Some(&(i, j)) = entries.keys().find(|&&(i, j)| i == 0 || i > j || j > n) {
            return Err(Error::DimensionMismatch(format!("entry ({i},{j}) outside a size-{n} system")));
        }
        let first = entries.get(&(1, 1)).ok_or(Error::MissingEntry(1, 1))?.clone();
        for len in 0..n {
            for i in 1..=n - len {
                let j = i + len;
                if (i, j) == (1, n) {
                    continue;
                }
                let c = entries.get(&(i, j)).ok_or(Error::MissingEntry(i, j))?;
                if c.degree() != 1 {
                    return Err(Error::UnsupportedDegree(c.degree()));
                }
                // Surface group/modulus mismatches as such.
                c.add(&first)?;
                if len > 0 && c.differential()? != tilde(&entries, i, j)? {
                    return Err(Error::NotADefiningSystem(i, j));
                }
            }
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &CochainArray {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&Cochain> {
        self.entries.get(&(i, j))
    }

    pub fn tilde(&self, i: usize, j: usize) -> Result<Cochain> {
        tilde(&self.entries, i, j)
    }

    /// `c~_1n`, a 2-cocycle.
    pub fn top(&self) -> Cochain {
        tilde(&self.entries, 1, self.n).expect("validated system")
    }

    /// Entrywise restriction, a defining system for the restricted
    /// characters.
    pub fn restrict(&self, k: &Subgroup) -> Result<DefiningSystem> {
        let entries = self
            .entries
            .iter()
            .map(|(&key, c)| Ok((key, c.restrict(k)?)))
            .collect::<Result<CochainArray>>()?;
        DefiningSystem::new(self.n, entries)
    }
}

/// A defining system with `c_ii = chi_i`, or `None` when
/// `chi_1 ∪ chi_2` or `chi_2 ∪ chi_3` is not a coboundary.
pub fn find_triple_defining_system(
    coh: &GroupCohomology,
    chis: [&Character; 3],
) -> Result<Option<DefiningSystem>> {
    let [x1, x2, x3] = chis.map(Cochain::from);
    for x in [&x1, &x2, &x3] {
        if x.p() != coh.p() {
            return Err(Error::ModulusMismatch(coh.p(), x.p()));
        }
    }
    let Some(c12) = coh.solve_coboundary(&x1.cup(&x2)?.neg())? else {
        return Ok(None);
    };
    let Some(c23) = coh.solve_coboundary(&x2.cup(&x3)?.neg())? else {
        return Ok(None);
    };
    let entries = CochainArray::from([((1, 1), x1), ((2, 2), x2), ((3, 3), x3), ((1, 2), c12), ((2, 3), c23)]);
    DefiningSystem::new(3, entries).map(Some)
}

/// `representative + indeterminacy` inside `H^2` coordinates.
#[derive(Clone, Debug)]
pub struct MasseyCoset {
    representative: FpVector,
    indeterminacy: Subspace,
}

impl PartialEq for MasseyCoset {
    fn eq(&self, other: &Self) -> bool {
        self.indeterminacy == other.indeterminacy
            && self.indeterminacy.reduce(&self.representative) == other.indeterminacy.reduce(&other.representative)
    }
}

impl Eq for MasseyCoset {}

impl MasseyCoset {
    pub fn new(representative: FpVector, indeterminacy: Subspace) -> Self {
        Self { representative, indeterminacy }
    }

    pub fn representative(&self) -> &FpVector {
        &self.representative
    }

    pub fn indeterminacy(&self) -> &Subspace {
        &self.indeterminacy
    }

    pub fn contains(&self, v: &FpVector) -> bool {
        self.indeterminacy.contains(&v.sub(&self.representative))
    }

    pub fn contains_zero(&self) -> bool {
        self.indeterminacy.contains(&self.representative)
    }

    /// Number of classes in the coset.
    pub fn len(&self) -> usize {
        (self.representative.p() as usize).pow(self.indeterminacy.dim() as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Every class in the coset.
    pub fn elements(&self) -> Vec<FpVector> {
        let p = self.representative.p();
        let basis = self.indeterminacy.basis();
        crate::cochain::all_vectors(p, basis.len())
            .into_iter()
            .map(|coeffs| {
                basis
                    .iter()
                    .zip(coeffs.entries())
                    .fold(self.representative.clone(), |acc, (b, &c)| acc.add(&b.scale(c)))
            })
            .collect()
    }
}

/// `x1 ∪ H^1 + H^1 ∪ x3` in `H^2` coordinates.
pub fn indeterminacy(coh: &GroupCohomology, x1: &Character, x3: &Character) -> Result<Subspace> {
    let mut s = Subspace::zero(coh.p(), coh.h2().dim());
    for phi in coh.h1().characters() {
        s.insert(&coh.cup_class(x1, phi)?);
        s.insert(&coh.cup_class(phi, x3)?);
    }
    Ok(s)
}

/// `<x1, x2, x3>`, or `None` when undefined.
pub fn triple_massey_set(coh: &GroupCohomology, chis: [&Character; 3]) -> Result<Option<MasseyCoset>> {
    let Some(ds) = find_triple_defining_system(coh, chis)? else {
        return Ok(None);
    };
    let representative = coh.h2().class_coordinates(&ds.top())?;
    let indeterminacy = indeterminacy(coh, chis[0], chis[2])?;
    Ok(Some(MasseyCoset::new(representative, indeterminacy)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleReport {
    pub triple: [Vec<u32>; 3],
    pub defined: bool,
    pub contains_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub holds: bool,
    pub witnesses: Vec<[Vec<u32>; 3]>,
    pub triples: Vec<TripleReport>,
}

/// Checks every ordered triple of `H^1` elements (in `H^1` coordinates,
/// lexicographic order) for a defined product that misses zero.
pub fn scan_vanishing(coh: &GroupCohomology) -> Result<VanishingReport> {
    let elems = coh.h1_elements();
    let m = elems.len();
    let triples: Vec<TripleReport> = (0..m * m * m)
        .into_par_iter()
        .map(|code| {
            let (a, b, c) = (code / (m * m), code / m % m, code % m);
            let chis = [&elems[a].1, &elems[b].1, &elems[c].1];
            let set = triple_massey_set(coh, chis)?;
            Ok(TripleReport {
                triple: [a, b, c].map(|i| elems[i].0.entries().to_vec()),
                defined: set.is_some(),
                contains_zero: set.is_some_and(|s| s.contains_zero()),
            })
        })
        .collect::<Result<_>>()?;
    let witnesses: Vec<[Vec<u32>; 3]> =
        triples.iter().filter(|t| t.defined && !t.contains_zero).map(|t| t.triple.clone()).collect();
    Ok(VanishingReport { holds: witnesses.is_empty(), witnesses, triples })
}
