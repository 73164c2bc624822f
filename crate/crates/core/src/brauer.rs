//! 2-torsion Brauer classes over `Q` as sums of quaternion symbols `(a, b)`,
//! identified by their local invariants in `{0, 1/2}`.
//!
//! Hilbert symbols use the classical formulas. Writing `a = q^α u`,
//! `b = q^β w` with `u, w` prime to `q`:
//! - odd `q`: `(a,b)_q = (-1)^{αβ ε(q)} (u/q)^β (w/q)^α`;
//! - `q = 2`: `(a,b)_2 = (-1)^{ε(u)ε(w) + α ω(w) + β ω(u)}`;
//! - real place: `-1` iff `a < 0` and `b < 0`;
//!
//! where `ε(u) = (u-1)/2` and `ω(u) = (u²-1)/8` mod 2.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, legendre, prime_divisors, split_valuation, DEFAULT_FACTOR_BOUND};
use crate::error::{Error, Result};

/// A place of `Q`. Orders the real place first, then primes ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Real,
    Prime(u64),
}

impl Place {
    pub fn prime(q: u64) -> Result<Place> {
        if is_prime(q) {
            Ok(Place::Prime(q))
        } else {
            Err(Error::NotPrime(q))
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => f.write_str("inf"),
            Place::Prime(q) => write!(f, "{q}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Place> {
        match s.trim() {
            "inf" | "∞" | "real" => Ok(Place::Real),
            t => {
                let q: u64 = t.parse().map_err(|_| Error::InvalidInvariants(format!("bad place `{s}`")))?;
                Place::prime(q)
            }
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

fn eps(u: i128) -> u32 {
    u32::from(u.rem_euclid(4) == 3)
}

fn omega(u: i128) -> u32 {
    let r = u.rem_euclid(8);
    u32::from(r == 3 || r == 5)
}

/// `(a, b)_v` as `1` or `-1`.
pub fn hilbert_symbol(a: i128, b: i128, v: Place) -> Result<i8> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroArgument);
    }
    let sign = |e: u32| if e.is_multiple_of(2) { 1 } else { -1 };
    Ok(match v {
        Place::Real => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = split_valuation(a, 2);
            let (beta, w) = split_valuation(b, 2);
            sign(eps(u) * eps(w) + alpha * omega(w) + beta * omega(u))
        }
        Place::Prime(q) => {
            let (alpha, u) = split_valuation(a, q);
            let (beta, w) = split_valuation(b, q);
            let mut s = sign((alpha * beta) % 2 * (((q - 1) / 2) % 2) as u32);
            if beta % 2 == 1 {
                s *= legendre(u, q);
            }
            if alpha % 2 == 1 {
                s *= legendre(w, q);
            }
            s
        }
    })
}

/// Whether `a` is a square in `Q_v`.
pub fn is_local_square(a: i128, v: Place) -> Result<bool> {
    if a == 0 {
        return Err(Error::ZeroArgument);
    }
    Ok(match v {
        Place::Real => a > 0,
        Place::Prime(2) => {
            let (alpha, u) = split_valuation(a, 2);
            alpha % 2 == 0 && u.rem_euclid(8) == 1
        }
        Place::Prime(q) => {
            let (alpha, u) = split_valuation(a, q);
            alpha % 2 == 0 && legendre(u, q) == 1
        }
    })
}

/// `{inf, 2}` plus the primes dividing any of `entries`.
pub fn candidate_support(entries: &[i128], bound: u64) -> Result<BTreeSet<Place>> {
    let mut out = BTreeSet::from([Place::Real, Place::Prime(2)]);
    for &a in entries {
        for q in prime_divisors(a, bound)? {
            out.insert(Place::Prime(q));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariant {
    Zero,
    Half,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::Zero => "0",
            Invariant::Half => "1/2",
        })
    }
}

/// The places with invariant `1/2`; every other place has invariant 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LocalInvariants {
    half: BTreeSet<Place>,
}

impl LocalInvariants {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_places<I: IntoIterator<Item = Place>>(places: I) -> Self {
        Self { half: places.into_iter().collect() }
    }

    pub fn places(&self) -> &BTreeSet<Place> {
        &self.half
    }

    pub fn inv(&self, v: Place) -> Invariant {
        if self.half.contains(&v) {
            Invariant::Half
        } else {
            Invariant::Zero
        }
    }

    pub fn is_empty(&self) -> bool {
        self.half.is_empty()
    }

    pub fn len(&self) -> usize {
        self.half.len()
    }

    /// Invariants sum to zero.
    pub fn is_reciprocal(&self) -> bool {
        self.half.len().is_multiple_of(2)
    }

    /// Invariants of the sum of two classes.
    pub fn sum(&self, other: &LocalInvariants) -> LocalInvariants {
        Self { half: self.half.symmetric_difference(&other.half).copied().collect() }
    }

    pub fn toggle(&mut self, v: Place) {
        if !self.half.remove(&v) {
            self.half.insert(v);
        }
    }
}

#[derive(Serialize, Deserialize)]
struct InvEntry {
    place: Place,
    inv: String,
}

impl Serialize for LocalInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.half.len()))?;
        for &place in &self.half {
            seq.serialize_element(&InvEntry { place, inv: Invariant::Half.to_string() })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LocalInvariants {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<InvEntry>::deserialize(d)?;
        let mut out = LocalInvariants::new();
        for e in entries {
            match e.inv.as_str() {
                "0" => {}
                "1/2" => {
                    if !out.half.insert(e.place) {
                        return Err(de::Error::custom(format!("place {} listed twice", e.place)));
                    }
                }
                other => return Err(de::Error::custom(format!("invariant `{other}` is not 0 or 1/2"))),
            }
        }
        Ok(out)
    }
}

/// Invariants of the single symbol `(a, b)`.
pub fn symbol_invariants(a: i128, b: i128, bound: u64) -> Result<LocalInvariants> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut out = LocalInvariants::new();
    for v in candidate_support(&[a, b], bound)? {
        if hilbert_symbol(a, b, v)? == -1 {
            out.half.insert(v);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuaternionSymbol {
    a: i128,
    b: i128,
}

impl QuaternionSymbol {
    pub fn new(a: i128, b: i128) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::ZeroArgument);
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> i128 {
        self.a
    }

    pub fn b(&self) -> i128 {
        self.b
    }
}

/// A sum of quaternion symbols with its (cached) local invariants.
#[derive(Clone, Debug)]
pub struct BrauerClass2 {
    symbols: Vec<QuaternionSymbol>,
    invariants: LocalInvariants,
}

impl BrauerClass2 {
    pub fn new(symbols: Vec<QuaternionSymbol>) -> Result<Self> {
        Self::with_factor_bound(symbols, DEFAULT_FACTOR_BOUND)
    }

    pub fn with_factor_bound(symbols: Vec<QuaternionSymbol>, bound: u64) -> Result<Self> {
        let mut invariants = LocalInvariants::new();
        for s in &symbols {
            invariants = invariants.sum(&symbol_invariants(s.a, s.b, bound)?);
        }
        if !invariants.is_reciprocal() {
            return Err(Error::Internal(format!("odd number of ramified places for {symbols:?}")));
        }
        Ok(Self { symbols, invariants })
    }

    pub fn from_pairs(pairs: &[(i128, i128)]) -> Result<Self> {
        Self::from_pairs_with_bound(pairs, DEFAULT_FACTOR_BOUND)
    }

    pub fn from_pairs_with_bound(pairs: &[(i128, i128)], bound: u64) -> Result<Self> {
        let symbols = pairs.iter().map(|&(a, b)| QuaternionSymbol::new(a, b)).collect::<Result<_>>()?;
        Self::with_factor_bound(symbols, bound)
    }

    pub fn symbols(&self) -> &[QuaternionSymbol] {
        &self.symbols
    }

    pub fn pairs(&self) -> Vec<(i128, i128)> {
        self.symbols.iter().map(|s| (s.a, s.b)).collect()
    }

    pub fn local_invariants(&self) -> &LocalInvariants {
        &self.invariants
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }
}

pub fn classes_equal(c1: &BrauerClass2, c2: &BrauerClass2) -> bool {
    c1.invariants == c2.invariants
}

/// Whether the class dies in `Q(√a_1, …, √a_r)`: at each ramified place
/// some `a_i` must be a local nonsquare.
pub fn splits_in_multiquadratic(c: &BrauerClass2, a_list: &[i128]) -> Result<bool> {
    if a_list.contains(&0) {
        return Err(Error::ZeroArgument);
    }
    for &v in c.invariants.places() {
        let mut covered = false;
        for &a in a_list {
            if !is_local_square(a, v)? {
                covered = true;
                break;
            }
        }
        if !covered {
            return Ok(false);
        }
    }
    Ok(true)
}
