//! Inhomogeneous cochains `C^s(G, Z/p)` with trivial action, `s <= 3`.
//!
//! Conventions:
//! - `(df)(g,h) = f(g) + f(h) - f(gh)` on 1-cochains;
//! - `(dc)(g,h,k) = c(h,k) - c(gh,k) + c(g,hk) - c(g,h)` on 2-cochains;
//! - `d` of a 0-cochain is zero;
//! - `(a ∪ b)(g_1..g_{r+s}) = a(g_1..g_r) b(g_{r+1}..g_{r+s})`.
//!
//! With these, `d(ab) = d(a)b + (-1)^deg(a) a d(b)`.

use std::sync::Arc;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::fp_linalg::{FpMatrix, FpVector, LinearSolver, Subspace};
use crate::group::{same_group, Character, FiniteGroup, Subgroup};

pub const MAX_DEGREE: usize = 3;

#[derive(Clone, Debug)]
pub struct Cochain {
    group: Arc<FiniteGroup>,
    p: u32,
    degree: usize,
    values: Vec<u32>,
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.degree == other.degree
            && self.values == other.values
            && same_group(&self.group, &other.group)
    }
}

impl Eq for Cochain {}

impl Cochain {
    /// Values are listed with the first argument most significant.
    pub fn new(group: Arc<FiniteGroup>, p: u32, degree: usize, values: &[i64]) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if degree > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        let len = group.order().pow(degree as u32);
        if values.len() != len {
            return Err(Error::DimensionMismatch(format!("{} values, expected {len}", values.len())));
        }
        let values = values.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect();
        Ok(Self { group, p, degree, values })
    }

    pub(crate) fn from_raw(group: Arc<FiniteGroup>, p: u32, degree: usize, values: Vec<u32>) -> Self {
        debug_assert_eq!(values.len(), group.order().pow(degree as u32));
        Self { group, p, degree, values }
    }

    pub fn zero(group: Arc<FiniteGroup>, p: u32, degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "cochain degree {degree} > {MAX_DEGREE}");
        let len = group.order().pow(degree as u32);
        Self { group, p, degree, values: vec![0; len] }
    }

    pub fn constant(group: Arc<FiniteGroup>, p: u32, a: u32) -> Self {
        Self { group, p, degree: 0, values: vec![a % p] }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn value(&self, args: &[usize]) -> u32 {
        debug_assert_eq!(args.len(), self.degree);
        let n = self.group.order();
        self.values[args.iter().fold(0, |acc, &g| acc * n + g)]
    }

    #[inline]
    pub(crate) fn v1(&self, g: usize) -> u32 {
        self.values[g]
    }

    #[inline]
    pub(crate) fn v2(&self, g: usize, h: usize) -> u32 {
        self.values[g * self.group.order() + h]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!(
                "degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let p = self.p;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| (a + b) % p).collect();
        Ok(Self::from_raw(self.group.clone(), p, self.degree, values))
    }

    pub fn scale(&self, k: u32) -> Cochain {
        let p = self.p as u64;
        let values = self.values.iter().map(|&a| (a as u64 * k as u64 % p) as u32).collect();
        Self::from_raw(self.group.clone(), self.p, self.degree, values)
    }

    pub fn neg(&self) -> Cochain {
        self.scale(self.p - 1)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.neg())
    }

    pub fn differential(&self) -> Result<Cochain> {
        let n = self.group.order();
        let p = self.p;
        let g = &self.group;
        let values = match self.degree {
            0 => vec![0; n],
            1 => {
                let f = &self.values;
                let mut out = Vec::with_capacity(n * n);
                for a in 0..n {
                    for b in 0..n {
                        out.push((f[a] + f[b] + p - f[g.mul(a, b)]) % p);
                    }
                }
                out
            }
            2 => {
                let c = |a: usize, b: usize| self.values[a * n + b];
                let mut out = Vec::with_capacity(n * n * n);
                for a in 0..n {
                    for b in 0..n {
                        let ab = g.mul(a, b);
                        for k in 0..n {
                            let v = c(b, k) + p - c(ab, k) + c(a, g.mul(b, k)) + p - c(a, b);
                            out.push(v % p);
                        }
                    }
                }
                out
            }
            d => return Err(Error::UnsupportedDegree(d)),
        };
        Ok(Self::from_raw(self.group.clone(), p, self.degree + 1, values))
    }

    pub fn cup(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        let degree = self.degree + other.degree;
        if degree > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        let p = self.p as u64;
        let mut values = Vec::with_capacity(self.values.len() * other.values.len());
        for &a in &self.values {
            for &b in &other.values {
                values.push((a as u64 * b as u64 % p) as u32);
            }
        }
        Ok(Self::from_raw(self.group.clone(), self.p, degree, values))
    }

    /// The cochain on `k` (as realized by [`Subgroup::as_group`]) obtained by
    /// restricting every argument to `k`.
    pub fn restrict(&self, k: &Subgroup) -> Result<Cochain> {
        if !same_group(&self.group, k.parent()) {
            return Err(Error::NotASubgroup("subgroup of a different group".into()));
        }
        let sub = k.as_group();
        let members = k.members();
        let n = self.group.order();
        let m = members.len();
        let total = m.pow(self.degree as u32);
        let mut values = Vec::with_capacity(total);
        for code in 0..total {
            let mut rest = code;
            let mut idx = 0;
            let mut scale = 1;
            for _ in 0..self.degree {
                idx += members[rest % m] * scale;
                rest /= m;
                scale *= n;
            }
            values.push(self.values[idx]);
        }
        Ok(Self::from_raw(sub, self.p, self.degree, values))
    }

    pub fn to_character(&self) -> Result<Character> {
        if self.degree != 1 {
            return Err(Error::UnsupportedDegree(self.degree));
        }
        let vals: Vec<i64> = self.values.iter().map(|&x| x as i64).collect();
        Character::new(self.group.clone(), self.p, &vals)
    }
}

impl From<&Character> for Cochain {
    fn from(c: &Character) -> Self {
        Cochain::from_raw(c.group().clone(), c.p(), 1, c.values().to_vec())
    }
}

/// A basis of `H^1` or `H^2` with cocycle representatives.
///
/// Classes are handled through "generator coordinates": a 1-cocycle is
/// determined by its values on the generators, and a normalized 2-cocycle by
/// its values `c(x, s)` for `x != 1` and `s` a generator.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    group: Arc<FiniteGroup>,
    p: u32,
    degree: usize,
    representatives: Vec<Cochain>,
    characters: Vec<Character>,
    coboundaries: Subspace,
    cocycle_dim: usize,
    solver: LinearSolver,
}

impl CohomologyBasis {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Cochain] {
        &self.representatives
    }

    /// Degree 1 only: the representatives as characters.
    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    /// Coboundaries in generator coordinates.
    pub fn coboundaries(&self) -> &Subspace {
        &self.coboundaries
    }

    pub fn cocycle_dim(&self) -> usize {
        self.cocycle_dim
    }

    fn generator_coordinates(&self, z: &Cochain) -> Vec<u32> {
        let gens = self.group.generators();
        match self.degree {
            1 => gens.iter().map(|&s| z.v1(s)).collect(),
            _ => {
                let p = self.p;
                let shift = z.v2(0, 0);
                let mut y = Vec::with_capacity((self.group.order() - 1) * gens.len());
                for x in 1..self.group.order() {
                    for &s in gens {
                        y.push((z.v2(x, s) + p - shift) % p);
                    }
                }
                y
            }
        }
    }

    /// Coordinates of `[z]`; fails unless `z` is a cocycle of this degree.
    pub fn class_coordinates(&self, z: &Cochain) -> Result<FpVector> {
        if z.p != self.p {
            return Err(Error::ModulusMismatch(self.p, z.p));
        }
        if !same_group(&self.group, &z.group) {
            return Err(Error::GroupMismatch);
        }
        if z.degree != self.degree {
            return Err(Error::UnsupportedDegree(z.degree));
        }
        if !z.differential()?.is_zero() {
            return Err(Error::NotACocycle);
        }
        let y = FpVector::from_reduced(self.p, self.generator_coordinates(z));
        let sol = self
            .solver
            .solve(&y)?
            .ok_or_else(|| Error::Internal("cocycle outside the computed span".into()))?;
        Ok(FpVector::from_reduced(self.p, sol.entries()[..self.dim()].to_vec()))
    }

    /// As [`class_coordinates`](Self::class_coordinates) without verifying
    /// that `z` is a cocycle on this group; the answer is meaningless
    /// otherwise.
    pub fn coordinates_of_cocycle(&self, z: &Cochain) -> FpVector {
        let y = self.generator_coordinates(z);
        let sol = self.solver.solve_unchecked(&y);
        FpVector::from_reduced(self.p, sol.entries()[..self.dim()].to_vec())
    }

    /// The cocycle `sum_i coords_i * rep_i`.
    pub fn cocycle_of(&self, coords: &FpVector) -> Cochain {
        let n = self.group.order().pow(self.degree as u32);
        let mut acc = Cochain::from_raw(self.group.clone(), self.p, self.degree, vec![0; n]);
        for (rep, &c) in self.representatives.iter().zip(coords.entries()) {
            if c != 0 {
                acc = acc.add(&rep.scale(c)).expect("same group");
            }
        }
        acc
    }

    /// Every class, as coordinate vectors in lexicographic order.
    pub fn all_coordinates(&self) -> Vec<FpVector> {
        all_vectors(self.p, self.dim())
    }
}

pub(crate) fn all_vectors(p: u32, dim: usize) -> Vec<FpVector> {
    let total = (p as usize).pow(dim as u32);
    (0..total)
        .map(|code| {
            let mut e = vec![0u32; dim];
            let mut rest = code;
            for slot in e.iter_mut().rev() {
                *slot = (rest % p as usize) as u32;
                rest /= p as usize;
            }
            FpVector::from_reduced(p, e)
        })
        .collect()
}

fn unit_add(v: &mut [u32], i: usize, k: u32, p: u32) {
    v[i] = (v[i] + k) % p;
}

pub fn cohomology(group: &Arc<FiniteGroup>, p: u32, degree: usize) -> Result<CohomologyBasis> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    match degree {
        1 => Ok(h1(group, p)),
        2 => Ok(h2(group, p)),
        d => Err(Error::UnsupportedDegree(d)),
    }
}

fn h1(group: &Arc<FiniteGroup>, p: u32) -> CohomologyBasis {
    let n = group.order();
    let gens = group.generators();
    let k = gens.len();
    let tree = group.cayley_tree();
    // phi[u] expresses f(u) in terms of the generator values f(s_j).
    let mut phi = vec![vec![0u32; k]; n];
    for &u in &tree.bfs[1..] {
        let (w, j) = tree.parent[u].expect("non-root");
        let mut row = phi[w].clone();
        unit_add(&mut row, j, 1, p);
        phi[u] = row;
    }
    let mut constraints = Subspace::zero(p, k);
    for u in 0..n {
        for (j, &s) in gens.iter().enumerate() {
            let t = group.mul(u, s);
            if tree.parent[t] == Some((u, j)) {
                continue;
            }
            // f(us) - f(u) - f(s) = 0
            let mut row: Vec<u32> = phi[t].iter().zip(&phi[u]).map(|(&a, &b)| (a + p - b) % p).collect();
            unit_add(&mut row, j, p - 1, p);
            constraints.insert(&FpVector::from_reduced(p, row));
        }
    }
    let basis = kernel_of_subspace(&constraints);
    let characters: Vec<Character> = basis
        .iter()
        .map(|y| {
            let values = phi
                .iter()
                .map(|row| dot(row, y.entries(), p))
                .collect();
            Character::from_raw(group.clone(), p, values)
        })
        .collect();
    let representatives = characters.iter().map(Cochain::from).collect();
    let solver = LinearSolver::new(FpMatrix::from_columns(p, k, &basis).expect("consistent shapes"));
    CohomologyBasis {
        group: group.clone(),
        p,
        degree: 1,
        representatives,
        characters,
        coboundaries: Subspace::zero(p, k),
        cocycle_dim: basis.len(),
        solver,
    }
}

fn dot(a: &[u32], b: &[u32], p: u32) -> u32 {
    let p = p as u64;
    a.iter().zip(b).fold(0u64, |acc, (&x, &y)| (acc + x as u64 * y as u64) % p) as u32
}

fn kernel_of_subspace(rows: &Subspace) -> Vec<FpVector> {
    let basis = rows.basis();
    if basis.is_empty() {
        return (0..rows.ambient_dim()).map(|i| FpVector::unit(rows.p(), rows.ambient_dim(), i)).collect();
    }
    FpMatrix::from_columns(rows.p(), rows.ambient_dim(), &basis)
        .map(|m| transpose(&m))
        .expect("consistent shapes")
        .kernel_basis()
}

fn transpose(m: &FpMatrix) -> FpMatrix {
    let mut entries = Vec::with_capacity(m.rows() * m.cols());
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            entries.push(m.get(i, j) as i64);
        }
    }
    FpMatrix::new(m.p(), m.cols(), m.rows(), &entries).expect("prime modulus")
}

fn h2(group: &Arc<FiniteGroup>, p: u32) -> CohomologyBasis {
    let n = group.order();
    let gens = group.generators().to_vec();
    let k = gens.len();
    let m = (n - 1) * k;
    let tree = group.cayley_tree();
    let yidx = |x: usize, j: usize| -> Option<usize> { (x != 0).then(|| (x - 1) * k + j) };

    // A normalized 2-cocycle is determined by y(x, j) = c(x, s_j), since
    // c(g, us) = c(g, u) + c(gu, s) - c(u, s). Propagating along the Cayley
    // tree writes every c(g, u) as a linear form in y; the remaining
    // (non-tree) edges give the constraints.
    let mut constraints = Subspace::zero(p, m);
    let mut phi = vec![vec![0u32; m]; n];
    for g in 0..n {
        phi[0].iter_mut().for_each(|x| *x = 0);
        for &u in &tree.bfs[1..] {
            let (w, j) = tree.parent[u].expect("non-root");
            let mut row = phi[w].clone();
            if let Some(i) = yidx(group.mul(g, w), j) {
                unit_add(&mut row, i, 1, p);
            }
            if let Some(i) = yidx(w, j) {
                unit_add(&mut row, i, p - 1, p);
            }
            phi[u] = row;
        }
        for u in 0..n {
            for (j, &s) in gens.iter().enumerate() {
                let t = group.mul(u, s);
                if tree.parent[t] == Some((u, j)) {
                    continue;
                }
                let mut row: Vec<u32> = phi[t].iter().zip(&phi[u]).map(|(&a, &b)| (a + p - b) % p).collect();
                if let Some(i) = yidx(group.mul(g, u), j) {
                    unit_add(&mut row, i, p - 1, p);
                }
                if let Some(i) = yidx(u, j) {
                    unit_add(&mut row, i, 1, p);
                }
                constraints.insert(&FpVector::from_reduced(p, row));
            }
        }
    }
    let cocycles = kernel_of_subspace(&constraints);

    // Normalized coboundaries d(e_g), g != 1.
    let boundary_vectors: Vec<FpVector> = (1..n)
        .map(|g| {
            let e = |x: usize| u32::from(x == g);
            let mut y = Vec::with_capacity(m);
            for x in 1..n {
                for &s in &gens {
                    y.push((e(x) + e(s) + p - e(group.mul(x, s))) % p);
                }
            }
            FpVector::from_reduced(p, y)
        })
        .collect();
    let coboundaries = Subspace::spanned_by(p, m, boundary_vectors.iter().cloned());

    let mut span = coboundaries.clone();
    let mut rep_coords = Vec::new();
    for z in &cocycles {
        if span.insert(z) {
            rep_coords.push(z.clone());
        }
    }
    let representatives = rep_coords.iter().map(|y| expand_h2(group, p, &tree, y)).collect();

    let mut columns = rep_coords.clone();
    columns.extend(boundary_vectors);
    let solver = LinearSolver::new(FpMatrix::from_columns(p, m, &columns).expect("consistent shapes"));
    CohomologyBasis {
        group: group.clone(),
        p,
        degree: 2,
        representatives,
        characters: Vec::new(),
        coboundaries,
        cocycle_dim: cocycles.len(),
        solver,
    }
}

/// The normalized 2-cocycle with generator coordinates `y`.
fn expand_h2(group: &Arc<FiniteGroup>, p: u32, tree: &crate::group::CayleyTree, y: &FpVector) -> Cochain {
    let n = group.order();
    let k = group.generators().len();
    let yv = |x: usize, j: usize| if x == 0 { 0 } else { y.get((x - 1) * k + j) };
    let mut values = vec![0u32; n * n];
    for g in 0..n {
        for &u in &tree.bfs[1..] {
            let (w, j) = tree.parent[u].expect("non-root");
            values[g * n + u] = (values[g * n + w] + yv(group.mul(g, w), j) + p - yv(w, j)) % p;
        }
    }
    Cochain::from_raw(group.clone(), p, 2, values)
}

/// `H^1` and `H^2` of one group, with a solver for `df = b`.
#[derive(Clone, Debug)]
pub struct GroupCohomology {
    group: Arc<FiniteGroup>,
    p: u32,
    h1: CohomologyBasis,
    h2: CohomologyBasis,
}

impl GroupCohomology {
    pub fn new(group: &Arc<FiniteGroup>, p: u32) -> Result<Self> {
        let h1 = cohomology(group, p, 1)?;
        let h2 = cohomology(group, p, 2)?;
        Ok(Self { group: group.clone(), p, h1, h2 })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn h1(&self) -> &CohomologyBasis {
        &self.h1
    }

    pub fn h2(&self) -> &CohomologyBasis {
        &self.h2
    }

    /// A 1-cochain `f` with `df = b`, if `b` is a coboundary.
    ///
    /// The unknowns are `f(s_j)` on the generators; `f(1) = b(1,1)` and
    /// `f(us) = f(u) + f(s) - b(u,s)` fix the rest along the Cayley tree. For
    /// a cocycle `b` these edge equations are equivalent to `df = b`; the
    /// result is checked against the full table anyway.
    pub fn solve_coboundary(&self, b: &Cochain) -> Result<Option<Cochain>> {
        if b.degree != 2 {
            return Err(Error::UnsupportedDegree(b.degree));
        }
        if b.p != self.p {
            return Err(Error::ModulusMismatch(self.p, b.p));
        }
        if !same_group(&self.group, &b.group) {
            return Err(Error::GroupMismatch);
        }
        let g = &self.group;
        let p = self.p;
        let n = g.order();
        let gens = g.generators();
        let k = gens.len();
        let tree = g.cayley_tree();
        // Affine forms: coefficients on the k unknowns, then the constant.
        let mut form = vec![vec![0u32; k + 1]; n];
        form[0][k] = b.v2(0, 0);
        let step = |from: &[u32], j: usize, u: usize| -> Vec<u32> {
            let mut row = from.to_vec();
            unit_add(&mut row, j, 1, p);
            unit_add(&mut row, k, p - b.v2(u, gens[j]), p);
            row
        };
        for &u in &tree.bfs[1..] {
            let (w, j) = tree.parent[u].expect("non-root");
            form[u] = step(&form[w], j, w);
        }
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut rhs: Vec<i64> = Vec::new();
        let mut push = |lhs: &[u32], rhs_form: &[u32]| {
            let diff: Vec<i64> = lhs.iter().zip(rhs_form).map(|(&a, &c)| a as i64 - c as i64).collect();
            rows.push(diff[..k].to_vec());
            rhs.push(-diff[k]);
        };
        for (j, &s) in gens.iter().enumerate() {
            let mut unknown = vec![0u32; k + 1];
            unknown[j] = 1;
            push(&form[s], &unknown);
        }
        for u in 0..n {
            for (j, &s) in gens.iter().enumerate() {
                let t = g.mul(u, s);
                if tree.parent[t] != Some((u, j)) {
                    push(&form[t], &step(&form[u], j, u));
                }
            }
        }
        let y = if k == 0 {
            Some(FpVector::zero(p, 0))
        } else {
            let a = FpMatrix::from_rows(p, &rows)?;
            a.solve_linear(&FpVector::new(p, &rhs)?)?
        };
        let Some(y) = y else {
            return Ok(None);
        };
        let values = form
            .iter()
            .map(|row| (dot(&row[..k], y.entries(), p) + row[k]) % p)
            .collect();
        let f = Cochain::from_raw(g.clone(), p, 1, values);
        Ok((f.differential()? == *b).then_some(f))
    }

    /// The character with the given `H^1` coordinates.
    pub fn character(&self, coords: &FpVector) -> Character {
        let values = self.h1.cocycle_of(coords).values;
        Character::from_raw(self.group.clone(), self.p, values)
    }

    pub fn character_coordinates(&self, chi: &Character) -> Result<FpVector> {
        self.h1.class_coordinates(&Cochain::from(chi))
    }

    /// All characters, paired with their coordinates, in lexicographic order.
    pub fn h1_elements(&self) -> Vec<(FpVector, Character)> {
        self.h1
            .all_coordinates()
            .into_iter()
            .map(|c| {
                let chi = self.character(&c);
                (c, chi)
            })
            .collect()
    }

    /// `H^2` coordinates of `[a ∪ b]`.
    pub fn cup_class(&self, a: &Character, b: &Character) -> Result<FpVector> {
        let prod = Cochain::from(a).cup(&Cochain::from(b))?;
        if !same_group(&self.group, &prod.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(self.h2.coordinates_of_cocycle(&prod))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin_group;
    use crate::group::kernel_of_characters;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn arc(name: &str) -> Arc<FiniteGroup> {
        Arc::new(builtin_group(name).unwrap())
    }

    fn random_cochain(g: &Arc<FiniteGroup>, p: u32, degree: usize, rng: &mut ChaCha8Rng) -> Cochain {
        let len = g.order().pow(degree as u32);
        Cochain::from_raw(g.clone(), p, degree, (0..len).map(|_| rng.gen_range(0..p)).collect())
    }

    /// Every 1-cochain on a small group, by brute force.
    fn all_one_cochains(g: &Arc<FiniteGroup>, p: u32) -> Vec<Cochain> {
        all_vectors(p, g.order())
            .into_iter()
            .map(|v| Cochain::from_raw(g.clone(), p, 1, v.entries().to_vec()))
            .collect()
    }

    fn is_coboundary_brute(z: &Cochain) -> bool {
        all_one_cochains(z.group(), z.p()).iter().any(|f| f.differential().unwrap() == *z)
    }

    #[test]
    fn differential_examples() {
        let g = arc("cyclic:2");
        let chi = Character::new(g.clone(), 2, &[0, 1]).unwrap();
        assert!(Cochain::from(&chi).differential().unwrap().is_zero());
        assert!(Cochain::constant(g.clone(), 2, 1).differential().unwrap().is_zero());
        // f(1)=1, f(sigma)=0: (df)(g,h) = f(g) + f(h) - f(gh) is 1 on all
        // four pairs, e.g. (df)(1,sigma) = f(1) + f(sigma) - f(sigma) = 1.
        let f = Cochain::new(g.clone(), 2, 1, &[1, 0]).unwrap();
        let df = f.differential().unwrap();
        assert_eq!(df.values(), &[1, 1, 1, 1]);
        let c3 = Cochain::zero(g, 2, 3);
        assert!(matches!(c3.differential(), Err(Error::UnsupportedDegree(3))));
    }

    #[test]
    fn cup_examples() {
        let g = arc("cyclic:2");
        let chi = Cochain::new(g.clone(), 2, 1, &[0, 1]).unwrap();
        assert!(Cochain::zero(g.clone(), 2, 1).cup(&chi).unwrap().is_zero());
        let sq = chi.cup(&chi).unwrap();
        assert!(sq.differential().unwrap().is_zero());
        assert!(!is_coboundary_brute(&sq));

        let v = arc("elab:2:2");
        let h1 = cohomology(&v, 2, 1).unwrap();
        let (x, y) = (Cochain::from(&h1.characters()[0]), Cochain::from(&h1.characters()[1]));
        assert!(!is_coboundary_brute(&x.cup(&y).unwrap()));
        let z2 = Cochain::zero(g, 2, 2);
        assert!(matches!(z2.cup(&z2), Err(Error::UnsupportedDegree(4))));
    }

    #[test]
    fn cohomology_dimensions() {
        let cases = [
            ("cyclic:2", 2, 1, 1),
            ("cyclic:3", 2, 0, 0),
            ("elab:2:2", 2, 2, 3),
            ("cyclic:3", 3, 1, 1),
            ("cyclic:4", 2, 1, 1),
            ("elab:3:2", 3, 2, 3),
            ("quaternion8", 2, 2, 2),
            ("dihedral:4", 2, 2, 3),
            ("elab:2:3", 2, 3, 6),
            ("dihedral:3", 2, 1, 1),
            ("dihedral:3", 3, 0, 0),
            ("cyclic:1", 2, 0, 0),
        ];
        for (name, p, d1, d2) in cases {
            let g = arc(name);
            assert_eq!(cohomology(&g, p, 1).unwrap().dim(), d1, "H1 {name} p={p}");
            assert_eq!(cohomology(&g, p, 2).unwrap().dim(), d2, "H2 {name} p={p}");
        }
        assert!(matches!(cohomology(&arc("cyclic:2"), 2, 3), Err(Error::UnsupportedDegree(3))));
    }

    #[test]
    fn h2_dimension_matches_brute_force_on_tiny_groups() {
        // dim Z^2 - dim B^2 from full enumeration of the unnormalized complex.
        for (name, p) in [("cyclic:2", 2), ("cyclic:3", 3), ("cyclic:3", 2), ("elab:2:2", 2)] {
            let g = arc(name);
            let n = g.order();
            let mut z2 = 0usize;
            for v in all_vectors(p, n * n) {
                let c = Cochain::from_raw(g.clone(), p, 2, v.entries().to_vec());
                if c.differential().unwrap().is_zero() {
                    z2 += 1;
                }
            }
            let b2: std::collections::HashSet<Vec<u32>> =
                all_one_cochains(&g, p).iter().map(|f| f.differential().unwrap().values().to_vec()).collect();
            let dim_h2 = (z2 / b2.len()).ilog(p as usize) as usize;
            assert_eq!(cohomology(&g, p, 2).unwrap().dim(), dim_h2, "{name}");
        }
    }

    #[test]
    fn representatives_are_independent_cocycles() {
        for (name, p) in [("quaternion8", 2), ("unipotent:2:3", 3), ("dihedral:4", 2), ("cyclic:9", 3)] {
            let g = arc(name);
            let h2 = cohomology(&g, p, 2).unwrap();
            for (i, r) in h2.representatives().iter().enumerate() {
                assert!(r.differential().unwrap().is_zero());
                assert_eq!(h2.class_coordinates(r).unwrap(), FpVector::unit(p, h2.dim(), i));
            }
        }
    }

    #[test]
    fn class_coordinates_examples() {
        let g = arc("cyclic:2");
        let h2 = cohomology(&g, 2, 2).unwrap();
        let f = Cochain::new(g.clone(), 2, 1, &[1, 1]).unwrap();
        assert!(h2.class_coordinates(&f.differential().unwrap()).unwrap().is_zero());
        let chi = Cochain::new(g.clone(), 2, 1, &[0, 1]).unwrap();
        assert_eq!(h2.class_coordinates(&chi.cup(&chi).unwrap()).unwrap().entries(), &[1]);
        let not_cocycle = Cochain::new(g, 2, 2, &[1, 0, 0, 0]).unwrap();
        assert!(matches!(h2.class_coordinates(&not_cocycle), Err(Error::NotACocycle)));
    }

    #[test]
    fn unnormalized_cocycles_get_correct_classes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = arc("dihedral:4");
        let h2 = cohomology(&g, 2, 2).unwrap();
        for _ in 0..20 {
            let coords = FpVector::from_reduced(2, (0..h2.dim()).map(|_| rng.gen_range(0..2)).collect());
            let f = random_cochain(&g, 2, 1, &mut rng);
            let z = h2.cocycle_of(&coords).add(&f.differential().unwrap()).unwrap();
            assert_eq!(h2.class_coordinates(&z).unwrap(), coords);
            assert_eq!(h2.coordinates_of_cocycle(&z), coords);
        }
    }

    #[test]
    fn h1_is_hom_and_matches_frattini_rank() {
        for (name, p) in [("quaternion8", 2), ("cyclic:6", 3), ("dihedral:3", 2), ("elab:3:2", 3)] {
            let g = arc(name);
            let h1 = cohomology(&g, p, 1).unwrap();
            for chi in h1.characters() {
                assert!(Cochain::from(chi).differential().unwrap().is_zero());
            }
            let q = crate::group::frattini_p_quotient(&g, p).unwrap();
            assert_eq!(q.rank(), h1.dim());
        }
    }

    #[test]
    fn dga_identities_on_random_cochains() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (name, p) in [("dihedral:4", 2), ("cyclic:3", 3), ("quaternion8", 2)] {
            let g = arc(name);
            for _ in 0..50 {
                let a0 = random_cochain(&g, p, 0, &mut rng);
                assert!(a0.differential().unwrap().differential().unwrap().is_zero());
                let a = random_cochain(&g, p, 1, &mut rng);
                let b = random_cochain(&g, p, 1, &mut rng);
                assert!(a.differential().unwrap().differential().unwrap().is_zero());
                let lhs = a.cup(&b).unwrap().differential().unwrap();
                let rhs = a
                    .differential()
                    .unwrap()
                    .cup(&b)
                    .unwrap()
                    .sub(&a.cup(&b.differential().unwrap()).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
                // degree 0 against degree 2: d(a0 c) = a0 dc.
                let c = random_cochain(&g, p, 2, &mut rng);
                assert_eq!(
                    a0.cup(&c).unwrap().differential().unwrap(),
                    a0.cup(&c.differential().unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let g = arc("elab:2:2");
        let h1 = cohomology(&g, 2, 1).unwrap();
        let (x, y) = (&h1.characters()[0], &h1.characters()[1]);
        let k = kernel_of_characters(&g, std::slice::from_ref(x)).unwrap();
        assert!(Cochain::from(x).restrict(&k).unwrap().is_zero());
        let whole = Subgroup::whole(g.clone());
        let c = Cochain::from(x).cup(&Cochain::from(y)).unwrap();
        assert_eq!(c.restrict(&whole).unwrap().values(), c.values());
        assert!(c.restrict(&k).unwrap().is_zero());
        let other = Subgroup::whole(arc("cyclic:4"));
        assert!(c.restrict(&other).is_err());
    }

    #[test]
    fn restriction_commutes_with_differential_and_cup() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = arc("dihedral:4");
        let k = Subgroup::generated_by(g.clone(), &[g.generators()[0]]);
        for _ in 0..20 {
            let a = random_cochain(&g, 2, 1, &mut rng);
            let b = random_cochain(&g, 2, 1, &mut rng);
            assert_eq!(a.differential().unwrap().restrict(&k).unwrap(), a.restrict(&k).unwrap().differential().unwrap());
            assert_eq!(
                a.cup(&b).unwrap().restrict(&k).unwrap(),
                a.restrict(&k).unwrap().cup(&b.restrict(&k).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn solve_coboundary_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = arc("unipotent:2:3");
        let coh = GroupCohomology::new(&g, 3).unwrap();
        for _ in 0..10 {
            let f = random_cochain(&g, 3, 1, &mut rng);
            let b = f.differential().unwrap();
            let sol = coh.solve_coboundary(&b).unwrap().unwrap();
            assert_eq!(sol.differential().unwrap(), b);
        }
        let chi = &coh.h1().characters()[0];
        let sq = Cochain::from(chi).cup(&Cochain::from(chi)).unwrap();
        // chi ∪ chi is a coboundary for odd p.
        assert!(coh.solve_coboundary(&sq).unwrap().is_some());
        let coh2 = GroupCohomology::new(&arc("cyclic:2"), 2).unwrap();
        let chi = Cochain::from(&coh2.h1().characters()[0]);
        assert!(coh2.solve_coboundary(&chi.cup(&chi).unwrap()).unwrap().is_none());
    }
}
