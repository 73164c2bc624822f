//! Decomposition of a class `c` split by `L = Q(√a_1, …, √a_r)` as
//! `c = Σ_i (a_i, x_i)`.
//!
//! Pipeline, with `S` the ramified places of `c`:
//! 1. pick `v0`, the smallest odd prime outside `S` and prime to every `a_i`
//!    at which `a_1` is a nonsquare, and replace each `a_i` that is a square
//!    at `v0` by `a_1 a_i`;
//! 2. split `S = S'_1 ⊔ … ⊔ S'_r`, each place going to the first `a'_i` that
//!    is a nonsquare there;
//! 3. with `t_i = |S'_i| mod 2`, the class `α_i` ramified exactly at `S'_i`
//!    (plus `v0` when `t_i = 1/2`) splits over `Q(√a'_i)`, so
//!    `α_i = (a'_i, x'_i)` for some `x'_i`, found by search;
//! 4. expand `(a_1 a_i, x) = (a_1, x) + (a_i, x)` to answer in the original
//!    `a_i`, and verify.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::arith::{is_perfect_square, legendre, next_prime, prime_divisors, primes_up_to, DEFAULT_FACTOR_BOUND};
use crate::brauer::{
    classes_equal, hilbert_symbol, is_local_square, splits_in_multiquadratic, BrauerClass2, LocalInvariants, Place,
};
use crate::error::{Error, Result};
use crate::fp_linalg::{FpMatrix, FpVector};

/// Limits for the search in [`realize_as_cup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest auxiliary prime tried in the second stage.
    pub aux_prime_bound: u64,
    /// Primes up to this bound join the first-stage pool.
    pub pool_prime_bound: u64,
    /// Most pool primes in one first-stage candidate.
    pub max_pool_factors: usize,
    /// Trial-division bound for factoring symbol entries.
    pub factor_bound: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self { aux_prime_bound: 1_000_000, pool_prime_bound: 50, max_pool_factors: 4, factor_bound: DEFAULT_FACTOR_BOUND }
    }
}

/// `±` a product of distinct primes: a class in `Q^× / Q^×2`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct SquareClass {
    negative: bool,
    primes: BTreeSet<u64>,
}

impl SquareClass {
    fn of(a: i128, bound: u64) -> Result<Self> {
        let mut primes = BTreeSet::new();
        for q in prime_divisors(a, bound)? {
            if crate::arith::split_valuation(a, q).0 % 2 == 1 {
                primes.insert(q);
            }
        }
        Ok(Self { negative: a < 0, primes })
    }

    fn mul(&self, other: &SquareClass) -> SquareClass {
        Self {
            negative: self.negative ^ other.negative,
            primes: self.primes.symmetric_difference(&other.primes).copied().collect(),
        }
    }

    fn value(&self) -> Result<i128> {
        let mut x: i128 = if self.negative { -1 } else { 1 };
        for &q in &self.primes {
            x = x.checked_mul(q as i128).ok_or(Error::Overflow)?;
        }
        Ok(x)
    }
}

/// `v0` and the adjusted list `a'`. Requires `a_1` not a perfect square.
pub fn find_v0(s: &BTreeSet<Place>, a_list: &[i128]) -> Result<(Place, Vec<i128>)> {
    let Some(&a1) = a_list.first() else {
        return Err(Error::DimensionMismatch("empty a_list".into()));
    };
    if a_list.contains(&0) {
        return Err(Error::ZeroArgument);
    }
    if is_perfect_square(a1) {
        return Err(Error::GlobalSquare(a1));
    }
    let mut q = 3u64;
    loop {
        let usable = !s.contains(&Place::Prime(q))
            && a_list.iter().all(|&a| a % q as i128 != 0)
            && legendre(a1, q) == -1;
        if usable {
            let adjusted = a_list
                .iter()
                .enumerate()
                .map(|(i, &a)| {
                    if i == 0 || legendre(a, q) == -1 {
                        Ok(a)
                    } else {
                        a1.checked_mul(a).ok_or(Error::Overflow)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok((Place::Prime(q), adjusted));
        }
        q = next_prime(q);
    }
}

/// `S'_1, …, S'_r`: each place of `s` goes to the first `a_i` that is a
/// local nonsquare there.
pub fn partition_support(s: &BTreeSet<Place>, a_list: &[i128]) -> Result<Vec<BTreeSet<Place>>> {
    let mut parts = vec![BTreeSet::new(); a_list.len()];
    for &v in s {
        let mut slot = None;
        for (i, &a) in a_list.iter().enumerate() {
            if !is_local_square(a, v)? {
                slot = Some(i);
                break;
            }
        }
        match slot {
            Some(i) => {
                parts[i].insert(v);
            }
            None => return Err(Error::NotSplit(v)),
        }
    }
    Ok(parts)
}

fn check_target(target: &LocalInvariants, a: i128) -> Result<()> {
    if a == 0 {
        return Err(Error::ZeroArgument);
    }
    if !target.is_reciprocal() {
        return Err(Error::InvalidInvariants(format!(
            "{} places with invariant 1/2; the count must be even",
            target.len()
        )));
    }
    for &v in target.places() {
        if is_local_square(a, v)? {
            return Err(Error::NotSplit(v));
        }
    }
    Ok(())
}

fn mask_of(row: &[Place], f: impl Fn(Place) -> Result<bool>) -> Result<u128> {
    let mut m = 0u128;
    for (k, &v) in row.iter().enumerate() {
        if f(v)? {
            m |= 1 << k;
        }
    }
    Ok(m)
}

/// An `x` with `inv((a, x)) = target`.
pub fn realize_as_cup(target: &LocalInvariants, a: i128, bounds: &SearchBounds) -> Result<i128> {
    realize(target, a, bounds)?.value()
}

fn realize(target: &LocalInvariants, a: i128, bounds: &SearchBounds) -> Result<SquareClass> {
    check_target(target, a)?;
    if target.is_empty() {
        return Ok(SquareClass::default());
    }
    let a_primes = prime_divisors(a, bounds.factor_bound)?;
    let target_primes = target.places().iter().filter_map(|v| match v {
        Place::Prime(q) => Some(*q),
        Place::Real => None,
    });
    let mut base: BTreeSet<u64> = a_primes.iter().copied().chain(target_primes).collect();
    base.insert(2);
    if let Some(x) = pool_search(target, a, &base, bounds)? {
        return Ok(x);
    }
    aux_prime_search(target, a, &base, bounds)
}

/// First stage: `±` products of at most `max_pool_factors` pool primes, by
/// increasing absolute value.
fn pool_search(target: &LocalInvariants, a: i128, base: &BTreeSet<u64>, bounds: &SearchBounds) -> Result<Option<SquareClass>> {
    let pool: Vec<u64> = base.iter().copied().chain(primes_up_to(bounds.pool_prime_bound)).collect::<BTreeSet<_>>().into_iter().collect();
    let places: Vec<Place> = std::iter::once(Place::Real).chain(pool.iter().map(|&q| Place::Prime(q))).collect();
    if places.len() > 128 {
        return Ok(None);
    }
    let goal = mask_of(&places, |v| Ok(target.places().contains(&v)))?;
    let sym_mask = |g: i128| mask_of(&places, |v| Ok(hilbert_symbol(a, g, v)? == -1));
    let minus = sym_mask(-1)?;
    let prime_masks: Vec<u128> = pool.iter().map(|&q| sym_mask(q as i128)).collect::<Result<_>>()?;

    // Subsets of the pool by product, smallest first.
    let mut candidates: Vec<(u128, Vec<usize>)> = vec![(1, Vec::new())];
    let mut frontier = candidates.clone();
    for _ in 0..bounds.max_pool_factors {
        let mut next = Vec::new();
        for (prod, idx) in &frontier {
            let start = idx.last().map_or(0, |&i| i + 1);
            for (i, &q) in pool.iter().enumerate().skip(start) {
                let mut v = idx.clone();
                v.push(i);
                next.push((prod.saturating_mul(q as u128), v));
            }
        }
        candidates.extend(next.iter().cloned());
        frontier = next;
    }
    candidates.sort();
    for (_, idx) in candidates {
        let m = idx.iter().fold(0u128, |acc, &i| acc ^ prime_masks[i]);
        for negative in [false, true] {
            let total = if negative { m ^ minus } else { m };
            if total == goal {
                let x = SquareClass { negative, primes: idx.iter().map(|&i| pool[i]).collect() };
                return Ok(Some(x));
            }
        }
    }
    Ok(None)
}

/// Second stage: for each fresh prime `q`, solve for `x = ±(base primes)·q^e`
/// as an `F_2` linear system on the places `inf`, `base`, `q`.
fn aux_prime_search(target: &LocalInvariants, a: i128, base: &BTreeSet<u64>, bounds: &SearchBounds) -> Result<SquareClass> {
    let start = bounds.pool_prime_bound.max(2);
    let mut q = next_prime(start);
    while q <= bounds.aux_prime_bound {
        if !base.contains(&q) {
            let mut gens: Vec<i128> = vec![-1];
            gens.extend(base.iter().map(|&p| p as i128));
            gens.push(q as i128);
            let mut places = vec![Place::Real];
            places.extend(base.iter().map(|&p| Place::Prime(p)));
            places.push(Place::Prime(q));
            let mut entries = Vec::with_capacity(places.len() * gens.len());
            for &v in &places {
                for &g in &gens {
                    entries.push(i64::from(hilbert_symbol(a, g, v)? == -1));
                }
            }
            let m = FpMatrix::new(2, places.len(), gens.len(), &entries)?;
            let rhs: Vec<i64> = places.iter().map(|v| i64::from(target.places().contains(v))).collect();
            if let Some(e) = m.solve_linear(&FpVector::new(2, &rhs)?)? {
                let mut x = SquareClass { negative: e.get(0) == 1, primes: BTreeSet::new() };
                for (k, &g) in gens.iter().enumerate().skip(1) {
                    if e.get(k) == 1 {
                        x.primes.insert(g as u64);
                    }
                }
                return Ok(x);
            }
        }
        q = next_prime(q);
    }
    Err(Error::SearchExhausted { bound: bounds.aux_prime_bound })
}

/// Everything needed to re-check a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionCertificate {
    #[serde(with = "json_int::pairs")]
    pub class: Vec<(i128, i128)>,
    #[serde(with = "json_int::list")]
    pub a_list: Vec<i128>,
    #[serde(with = "json_int::list")]
    pub x_list: Vec<i128>,
    /// Index of the entry playing the role of `a_1`.
    pub lead: Option<usize>,
    pub v0: Option<Place>,
    /// `adjusted[i]`: `a'_i = a_lead · a_i` rather than `a_i`.
    pub adjusted: Vec<bool>,
    /// `S'_i`, keyed by index into `a_list`.
    pub partition: BTreeMap<usize, BTreeSet<Place>>,
    /// `t_i` in units of `1/2`.
    pub t: Vec<u8>,
    /// Invariants of `α_i = (a'_i, x'_i)`.
    pub targets: Vec<LocalInvariants>,
    #[serde(with = "json_int::list")]
    pub x_adjusted: Vec<i128>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Writes `c` as `Σ (a_i, x_i)`; the certificate is verified before it is
/// returned.
pub fn decompose(c: &BrauerClass2, a_list: &[i128], bounds: &SearchBounds) -> Result<DecompositionCertificate> {
    if a_list.is_empty() {
        return Err(Error::DimensionMismatch("empty a_list".into()));
    }
    if a_list.contains(&0) {
        return Err(Error::ZeroArgument);
    }
    let r = a_list.len();
    let s = c.local_invariants().places().clone();
    let mut cert = DecompositionCertificate {
        class: c.pairs(),
        a_list: a_list.to_vec(),
        x_list: vec![1; r],
        lead: None,
        v0: None,
        adjusted: vec![false; r],
        partition: (0..r).map(|i| (i, BTreeSet::new())).collect(),
        t: vec![0; r],
        targets: vec![LocalInvariants::new(); r],
        x_adjusted: vec![1; r],
        verified: false,
    };
    if !s.is_empty() {
        if let Some(&v) = s.iter().find(|&&v| a_list.iter().all(|&a| is_local_square(a, v).unwrap_or(true))) {
            return Err(Error::NotSplit(v));
        }
        let lead = a_list.iter().position(|&a| !is_perfect_square(a)).ok_or(Error::GlobalSquare(a_list[0]))?;
        // Work with the lead first.
        let order: Vec<usize> = std::iter::once(lead).chain((0..r).filter(|&i| i != lead)).collect();
        let work: Vec<i128> = order.iter().map(|&i| a_list[i]).collect();
        let (v0, adjusted) = find_v0(&s, &work)?;
        let parts = partition_support(&s, &adjusted)?;
        let mut x_lead = SquareClass::default();
        for (k, &orig) in order.iter().enumerate() {
            let t = (parts[k].len() % 2) as u8;
            let mut target = LocalInvariants::from_places(parts[k].iter().copied());
            if t == 1 {
                target.toggle(v0);
            }
            let x = realize(&target, adjusted[k], bounds)?;
            let is_adjusted = k > 0 && adjusted[k] != work[k];
            if k == 0 || is_adjusted {
                x_lead = x_lead.mul(&x);
            }
            if k > 0 {
                cert.x_list[orig] = x.value()?;
            }
            cert.adjusted[orig] = is_adjusted;
            cert.partition.insert(orig, parts[k].clone());
            cert.t[orig] = t;
            cert.targets[orig] = target;
            cert.x_adjusted[orig] = x.value()?;
        }
        cert.x_list[lead] = x_lead.value()?;
        cert.lead = Some(lead);
        cert.v0 = Some(v0);
    }
    let check = verify_certificate(&cert, bounds.factor_bound);
    if !check.valid {
        return Err(Error::Internal(format!(
            "decomposition failed its own verification: {}",
            check.reason.unwrap_or_default()
        )));
    }
    cert.verified = true;
    Ok(cert)
}

/// [`decompose`] for `r = 2`.
pub fn decompose_biquadratic(c: &BrauerClass2, a1: i128, a2: i128, bounds: &SearchBounds) -> Result<DecompositionCertificate> {
    decompose(c, &[a1, a2], bounds)
}

fn fail(reason: impl Into<String>) -> Verification {
    Verification { valid: false, reason: Some(reason.into()) }
}

/// Recomputes a certificate from scratch; the `verified` flag is ignored.
pub fn verify_certificate(cert: &DecompositionCertificate, factor_bound: u64) -> Verification {
    match verify_inner(cert, factor_bound) {
        Ok(None) => Verification { valid: true, reason: None },
        Ok(Some(reason)) => fail(reason),
        Err(e) => fail(e.to_string()),
    }
}

fn verify_inner(cert: &DecompositionCertificate, bound: u64) -> Result<Option<String>> {
    let r = cert.a_list.len();
    if r == 0 {
        return Ok(Some("empty a_list".into()));
    }
    if cert.x_list.len() != r
        || cert.adjusted.len() != r
        || cert.t.len() != r
        || cert.targets.len() != r
        || cert.x_adjusted.len() != r
        || cert.partition.len() != r
        || cert.partition.keys().any(|&i| i >= r)
    {
        return Ok(Some("per-index fields do not match a_list in length".into()));
    }
    if cert.a_list.contains(&0) || cert.x_list.contains(&0) || cert.x_adjusted.contains(&0) {
        return Ok(Some("zero entry".into()));
    }
    let class = BrauerClass2::from_pairs_with_bound(&cert.class, bound)?;
    let s = class.local_invariants().places();

    // The decomposition itself.
    let pairs: Vec<(i128, i128)> = cert.a_list.iter().copied().zip(cert.x_list.iter().copied()).collect();
    let sum = BrauerClass2::from_pairs_with_bound(&pairs, bound)?;
    if !classes_equal(&class, &sum) {
        return Ok(Some(format!(
            "sum of (a_i, x_i) has invariants at {:?}, class has {:?}",
            sum.local_invariants().places(),
            s
        )));
    }
    if !splits_in_multiquadratic(&class, &cert.a_list)? {
        return Ok(Some("class does not split over the multiquadratic field".into()));
    }

    // Auxiliary data.
    let (Some(lead), Some(v0)) = (cert.lead, cert.v0) else {
        if !s.is_empty() {
            return Ok(Some("missing lead or v0 for a nontrivial class".into()));
        }
        if cert.partition.values().any(|p| !p.is_empty()) || cert.t.iter().any(|&t| t != 0) {
            return Ok(Some("nonempty partition for the trivial class".into()));
        }
        return Ok(None);
    };
    if lead >= r || cert.adjusted[lead] {
        return Ok(Some("bad lead index".into()));
    }
    let a1 = cert.a_list[lead];
    let adjusted: Vec<i128> = (0..r)
        .map(|i| if cert.adjusted[i] { a1.checked_mul(cert.a_list[i]).ok_or(Error::Overflow) } else { Ok(cert.a_list[i]) })
        .collect::<Result<_>>()?;
    let Place::Prime(q) = v0 else {
        return Ok(Some("v0 must be an odd prime".into()));
    };
    if q == 2 || s.contains(&v0) || cert.a_list.iter().any(|&a| a % q as i128 == 0) {
        return Ok(Some("v0 must be an odd prime outside S prime to every a_i".into()));
    }
    for (i, &a) in adjusted.iter().enumerate() {
        if is_local_square(a, v0)? {
            return Ok(Some(format!("a'_{i} is a square at v0")));
        }
    }
    let mut union = BTreeSet::new();
    for (i, part) in &cert.partition {
        for &v in part {
            if !union.insert(v) {
                return Ok(Some(format!("place {v} appears in two parts")));
            }
            if is_local_square(adjusted[*i], v)? {
                return Ok(Some(format!("a'_{i} is a square at {v} in its part")));
            }
        }
    }
    if union != *s {
        return Ok(Some("partition does not cover the ramified places exactly".into()));
    }
    let mut x_lead = SquareClass::of(cert.x_adjusted[lead], bound)?;
    for i in 0..r {
        let part = &cert.partition[&i];
        let t = (part.len() % 2) as u8;
        if cert.t[i] != t {
            return Ok(Some(format!("t_{i} is wrong")));
        }
        let mut target = LocalInvariants::from_places(part.iter().copied());
        if t == 1 {
            target.toggle(v0);
        }
        if cert.targets[i] != target {
            return Ok(Some(format!("target {i} does not match the partition")));
        }
        if !target.is_reciprocal() {
            return Ok(Some(format!("target {i} violates reciprocity")));
        }
        let alpha = BrauerClass2::from_pairs_with_bound(&[(adjusted[i], cert.x_adjusted[i])], bound)?;
        if *alpha.local_invariants() != target {
            return Ok(Some(format!("(a'_{i}, x'_{i}) misses its target")));
        }
        if i != lead {
            if SquareClass::of(cert.x_list[i], bound)? != SquareClass::of(cert.x_adjusted[i], bound)? {
                return Ok(Some(format!("x_{i} differs from x'_{i}")));
            }
            if cert.adjusted[i] {
                x_lead = x_lead.mul(&SquareClass::of(cert.x_adjusted[i], bound)?);
            }
        }
    }
    if x_lead != SquareClass::of(cert.x_list[lead], bound)? {
        return Ok(Some("x_lead is not the product of its parts".into()));
    }
    Ok(None)
}

/// JSON integers, written as strings beyond the 53-bit safe range.
mod json_int {
    use serde::de::{self, Deserializer};
    use serde::{Deserialize, Serialize, Serializer};

    const SAFE: u128 = 1 << 53;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(i64),
        Str(String),
    }

    #[derive(Clone, Copy)]
    pub(super) struct JsonInt(pub i128);

    impl Serialize for JsonInt {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            if self.0.unsigned_abs() <= SAFE {
                s.serialize_i64(self.0 as i64)
            } else {
                s.collect_str(&self.0)
            }
        }
    }

    impl<'de> Deserialize<'de> for JsonInt {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            match Repr::deserialize(d)? {
                Repr::Int(x) => Ok(JsonInt(x as i128)),
                Repr::Str(s) => s.trim().parse().map(JsonInt).map_err(de::Error::custom),
            }
        }
    }

    pub mod list {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[i128], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|&x| JsonInt(x)))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<i128>, D::Error> {
            Ok(Vec::<JsonInt>::deserialize(d)?.into_iter().map(|x| x.0).collect())
        }
    }

    pub mod pairs {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[(i128, i128)], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|&(a, b)| [JsonInt(a), JsonInt(b)]))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(i128, i128)>, D::Error> {
            Ok(Vec::<[JsonInt; 2]>::deserialize(d)?.into_iter().map(|[a, b]| (a.0, b.0)).collect())
        }
    }
}
