//! Finite groups as multiplication tables, characters into `Z/p`, subgroups
//! and the elementary abelian quotient `G / G^p[G,G]`.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::fp_linalg::{FpMatrix, FpVector};

/// A finite group on the indices `0..order`, with the identity at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table with identity at
    /// index 0, checking the group axioms.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup("table is not square".into()));
        }
        if rows.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("entry out of range".into()));
        }
        let table: Vec<u32> = rows.iter().flatten().map(|&x| x as u32).collect();
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        if (0..n).any(|a| at(0, a) != a || at(a, 0) != a) {
            return Err(Error::InvalidGroup("index 0 is not a two-sided identity".into()));
        }
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let Some(b) = (0..n).find(|&b| at(a, b) == 0) else {
                return Err(Error::InvalidGroup(format!("element {a} has no inverse")));
            };
            if at(b, a) != 0 {
                return Err(Error::InvalidGroup(format!("element {a} has no two-sided inverse")));
            }
            inverse[a] = b as u32;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let mut g = Self { order: n, table, inverse, generators: Vec::new() };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    /// Like [`from_table`](Self::from_table) but with a prescribed generating
    /// set, which must generate the whole group.
    pub fn from_table_with_generators(rows: &[Vec<usize>], generators: Vec<usize>) -> Result<Self> {
        let mut g = Self::from_table(rows)?;
        g.set_generators(generators)?;
        Ok(g)
    }

    /// Closes `gens` under `mul` by breadth-first search. Element 0 is
    /// `identity`; new elements are numbered in discovery order, multiplying
    /// on the right by generators in input order. Returns the group and its
    /// elements, with the generators as given (duplicates and identity kept
    /// out).
    pub fn close<T, F>(identity: T, gens: &[T], mul: F) -> (Self, Vec<T>)
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let y = mul(&elements[i], g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&mul(&elements[a], &elements[b])] as u32;
            }
        }
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| table[a * n + b] == 0).expect("finite closure") as u32;
        }
        let mut generators = Vec::new();
        for g in gens {
            let i = index[g];
            if i != 0 && !generators.contains(&i) {
                generators.push(i);
            }
        }
        (Self { order: n, table, inverse, generators }, elements)
    }

    /// The group generated by permutations of `0..degree` (0-based images),
    /// with `(g*h)(x) = h(g(x))`.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Self> {
        let degree = perms.first().map_or(0, Vec::len);
        for (k, p) in perms.iter().enumerate() {
            if p.len() != degree {
                return Err(Error::MalformedPermutation(format!("generator {k} has length {}", p.len())));
            }
            let mut seen = vec![false; degree];
            for &x in p {
                if x >= degree || seen[x] {
                    return Err(Error::MalformedPermutation(format!("generator {k} is not a bijection")));
                }
                seen[x] = true;
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let (g, _) = Self::close(id, perms, |a, b| a.iter().map(|&x| b[x]).collect());
        Ok(g)
    }

    /// For tables whose group axioms hold by construction, such as matrix
    /// groups; skips the cubic associativity check.
    pub(crate) fn from_trusted_table(order: usize, table: Vec<u32>, generators: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inverse = vec![0u32; order];
        for (a, slot) in inverse.iter_mut().enumerate() {
            *slot = (0..order).find(|&b| table[a * order + b] == 0).expect("group table") as u32;
        }
        Self { order, table, inverse, generators }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn set_generators(&mut self, generators: Vec<usize>) -> Result<()> {
        if generators.iter().any(|&g| g >= self.order) {
            return Err(Error::InvalidGroup("generator index out of range".into()));
        }
        if self.closure(&generators).len() != self.order {
            return Err(Error::InvalidGroup("generators do not generate the group".into()));
        }
        self.generators = generators.into_iter().filter(|&g| g != 0).collect();
        Ok(())
    }

    /// Sorted elements of the subgroup generated by `elems`.
    pub fn closure(&self, elems: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in elems {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        for x in 0..self.order {
            if !inside[x] {
                gens.push(x);
                for y in self.closure(&gens) {
                    inside[y] = true;
                }
            }
        }
        gens
    }

    /// Breadth-first spanning tree of the right Cayley graph: for each
    /// non-identity element, its parent and the generator slot reaching it.
    pub(crate) fn cayley_tree(&self) -> CayleyTree {
        let mut parent = vec![None; self.order];
        let mut order = vec![0usize];
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for (j, &s) in self.generators.iter().enumerate() {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, j));
                    order.push(y);
                }
            }
        }
        CayleyTree { parent, bfs: order }
    }
}

pub(crate) struct CayleyTree {
    pub parent: Vec<Option<(usize, usize)>>,
    pub bfs: Vec<usize>,
}

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A homomorphism `G -> Z/p`, stored as its value table.
#[derive(Clone, Debug)]
pub struct Character {
    group: Arc<FiniteGroup>,
    p: u32,
    values: Vec<u32>,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.values == other.values && same_group(&self.group, &other.group)
    }
}

impl Eq for Character {}

impl Character {
    pub fn new(group: Arc<FiniteGroup>, p: u32, values: &[i64]) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if values.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        let values: Vec<u32> = values.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect();
        let n = group.order();
        for a in 0..n {
            for b in 0..n {
                if (values[a] + values[b]) % p != values[group.mul(a, b)] {
                    return Err(Error::NotAHomomorphism(p));
                }
            }
        }
        Ok(Self { group, p, values })
    }

    pub(crate) fn from_raw(group: Arc<FiniteGroup>, p: u32, values: Vec<u32>) -> Self {
        Self { group, p, values }
    }

    pub fn zero(group: Arc<FiniteGroup>, p: u32) -> Self {
        let n = group.order();
        Self { group, p, values: vec![0; n] }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn value(&self, g: usize) -> u32 {
        self.values[g]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    /// Values on the group's generators; these determine the character.
    pub fn on_generators(&self) -> Vec<u32> {
        self.group.generators().iter().map(|&s| self.values[s]).collect()
    }

    pub fn add(&self, other: &Character) -> Result<Character> {
        self.check_compatible(other)?;
        let p = self.p;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| (a + b) % p).collect();
        Ok(Self::from_raw(self.group.clone(), p, values))
    }

    pub fn scale(&self, k: u32) -> Character {
        let p = self.p;
        let values = self.values.iter().map(|&a| ((a as u64 * k as u64) % p as u64) as u32).collect();
        Self::from_raw(self.group.clone(), p, values)
    }

    pub(crate) fn check_compatible(&self, other: &Character) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }
}

/// A subgroup, as a sorted index set of its parent group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
    realized: OnceLock<Arc<FiniteGroup>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && same_group(&self.parent, &other.parent)
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn new(parent: Arc<FiniteGroup>, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let n = parent.order();
        if members.iter().any(|&x| x >= n) {
            return Err(Error::NotASubgroup("index out of range".into()));
        }
        let mut inside = vec![false; n];
        for &x in &members {
            inside[x] = true;
        }
        if !inside[0] {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for &a in &members {
            if !inside[parent.inv(a)] || members.iter().any(|&b| !inside[parent.mul(a, b)]) {
                return Err(Error::NotASubgroup("not closed".into()));
            }
        }
        Ok(Self { parent, members, realized: OnceLock::new() })
    }

    pub fn whole(parent: Arc<FiniteGroup>) -> Self {
        let members = (0..parent.order()).collect();
        Self { parent, members, realized: OnceLock::new() }
    }

    pub fn generated_by(parent: Arc<FiniteGroup>, elems: &[usize]) -> Self {
        let members = parent.closure(elems);
        Self { parent, members, realized: OnceLock::new() }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    /// The subgroup as a group in its own right: element `k` of the result
    /// is `members()[k]` of the parent.
    pub fn as_group(&self) -> Arc<FiniteGroup> {
        self.realized.get_or_init(|| self.realize()).clone()
    }

    fn realize(&self) -> Arc<FiniteGroup> {
        let pos: HashMap<usize, usize> = self.members.iter().enumerate().map(|(k, &g)| (g, k)).collect();
        let m = self.members.len();
        let mut table = vec![0u32; m * m];
        for (i, &a) in self.members.iter().enumerate() {
            for (j, &b) in self.members.iter().enumerate() {
                table[i * m + j] = pos[&self.parent.mul(a, b)] as u32;
            }
        }
        let inverse = self.members.iter().map(|&a| pos[&self.parent.inv(a)] as u32).collect();
        let mut g = FiniteGroup { order: m, table, inverse, generators: Vec::new() };
        g.generators = g.greedy_generators();
        Arc::new(g)
    }
}

/// `Ker(chi_1) ∩ ... ∩ Ker(chi_r)`; the whole group for an empty list.
pub fn kernel_of_characters(group: &Arc<FiniteGroup>, chars: &[Character]) -> Result<Subgroup> {
    if let Some(first) = chars.first() {
        for c in chars {
            first.check_compatible(c)?;
        }
        if !same_group(group, first.group()) {
            return Err(Error::GroupMismatch);
        }
    }
    let members = (0..group.order())
        .filter(|&g| chars.iter().all(|c| c.value(g) == 0))
        .collect();
    Ok(Subgroup { parent: group.clone(), members, realized: OnceLock::new() })
}

/// `G / G^p[G,G]` together with the projection from `G`.
#[derive(Clone, Debug)]
pub struct FrattiniQuotient {
    pub p: u32,
    pub quotient: Arc<FiniteGroup>,
    pub projection: Vec<usize>,
    pub subgroup: Subgroup,
}

impl FrattiniQuotient {
    /// `k` with `|G / G^p[G,G]| = p^k`.
    pub fn rank(&self) -> usize {
        let mut n = self.quotient.order();
        let mut k = 0;
        while n > 1 {
            n /= self.p as usize;
            k += 1;
        }
        k
    }

    /// Matrix of the pairing `(gbar, phi) -> phi(g)`: one row per coset (in
    /// quotient order, evaluated on the smallest representative) and one
    /// column per character.
    pub fn pairing_matrix(&self, chars: &[Character]) -> Result<FpMatrix> {
        let mut reps = vec![usize::MAX; self.quotient.order()];
        for (g, &c) in self.projection.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = g;
            }
        }
        let cols: Vec<FpVector> = chars
            .iter()
            .map(|c| FpVector::from_reduced(self.p, reps.iter().map(|&g| c.value(g)).collect()))
            .collect();
        FpMatrix::from_columns(self.p, reps.len(), &cols)
    }
}

pub fn frattini_p_quotient(group: &Arc<FiniteGroup>, p: u32) -> Result<FrattiniQuotient> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let n = group.order();
    let mut gens: Vec<usize> = (0..n).map(|g| group.pow(g, p as usize)).collect();
    for a in 0..n {
        for b in 0..n {
            gens.push(group.commutator(a, b));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    let sub = Subgroup::generated_by(group.clone(), &gens);
    let mut projection = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for g in 0..n {
        if projection[g] == usize::MAX {
            let c = reps.len();
            reps.push(g);
            for &h in sub.members() {
                projection[group.mul(g, h)] = c;
            }
        }
    }
    let m = reps.len();
    let rows: Vec<Vec<usize>> = (0..m)
        .map(|i| (0..m).map(|j| projection[group.mul(reps[i], reps[j])]).collect())
        .collect();
    let quotient = Arc::new(FiniteGroup::from_table(&rows)?);
    Ok(FrattiniQuotient { p, quotient, projection, subgroup: sub })
}

/// JSON group description: a permutation generating set with 1-based
/// images, or a full table with identity at index 0.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Permutations { perm_degree: usize, generators: Vec<Vec<usize>> },
    Table { table: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Permutations { perm_degree, generators } => {
                let mut perms = Vec::with_capacity(generators.len());
                for g in generators {
                    if g.len() != *perm_degree {
                        return Err(Error::MalformedPermutation(format!(
                            "expected {perm_degree} images, got {}",
                            g.len()
                        )));
                    }
                    if g.iter().any(|&x| x == 0 || x > *perm_degree) {
                        return Err(Error::MalformedPermutation("images must be in 1..=perm_degree".into()));
                    }
                    perms.push(g.iter().map(|&x| x - 1).collect());
                }
                FiniteGroup::from_permutations(&perms)
            }
            GroupSpec::Table { table } => FiniteGroup::from_table(table),
        }
    }
}
