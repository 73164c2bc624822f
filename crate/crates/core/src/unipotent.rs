//! `U_{n+1}(F_p)`, its quotient by the center, and the dictionary between
//! defining systems and homomorphisms into these groups.
//!
//! Elements are indexed lexicographically by their strictly-upper entries,
//! read row by row as a base-`p` number with the first entry most
//! significant; the identity is index 0. In the quotient the corner entry
//! `(1, n+1)` is dropped.
//!
//! The dictionary sends an array `(c_ij)` to `gamma(s)_ij = (-1)^{j-i}
//! c_{i,j-1}(s)` for `i < j`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::arith::is_prime;
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::fp_linalg::FpMatrix;
use crate::group::{same_group, Character, FiniteGroup};
use crate::massey::CochainArray;

/// Largest unipotent group the constructor will tabulate.
pub const MAX_UNIPOTENT_ORDER: usize = 4096;
/// Homomorphism search limits: matrix size and prime.
pub const MAX_SEARCH_DIM: usize = 5;
pub const MAX_SEARCH_PRIME: u32 = 5;

#[derive(Debug)]
pub struct UnipotentGroup {
    n: usize,
    p: u32,
    bar: bool,
    /// 0-based positions `(i, j)` stored in an element's digits.
    coords: Vec<(usize, usize)>,
    digits: Vec<Vec<u32>>,
    group: Arc<FiniteGroup>,
}

/// Builds `U_{n+1}(F_p)`, or its central quotient when `bar` is set.
pub fn build_unipotent(n: usize, p: u32, bar: bool) -> Result<UnipotentGroup> {
    if n < 2 {
        return Err(Error::InvalidGroup(format!("unipotent groups need n >= 2, got {n}")));
    }
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let d = n + 1;
    let coords: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .filter(|&(i, j)| !(bar && i == 0 && j == n))
        .collect();
    let m = coords.len();
    let order = (p as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if order > MAX_UNIPOTENT_ORDER as u128 {
        return Err(Error::SizeLimit(format!("unipotent group of order {order} exceeds {MAX_UNIPOTENT_ORDER}")));
    }
    let order = order as usize;
    let mut pos = vec![vec![usize::MAX; d]; d];
    for (t, &(i, j)) in coords.iter().enumerate() {
        pos[i][j] = t;
    }
    let digits: Vec<Vec<u32>> = (0..order)
        .map(|mut code| {
            let mut e = vec![0u32; m];
            for slot in e.iter_mut().rev() {
                *slot = (code % p as usize) as u32;
                code /= p as usize;
            }
            e
        })
        .collect();
    let entry = |e: &[u32], i: usize, j: usize| -> u64 {
        if i == j {
            1
        } else if pos[i][j] == usize::MAX {
            0
        } else {
            e[pos[i][j]] as u64
        }
    };
    let pp = p as u64;
    let mut table = vec![0u32; order * order];
    for (a, ea) in digits.iter().enumerate() {
        for (b, eb) in digits.iter().enumerate() {
            let mut idx = 0u64;
            for &(i, j) in &coords {
                let mut s = 0u64;
                for k in i..=j {
                    s += entry(ea, i, k) * entry(eb, k, j);
                }
                idx = idx * pp + s % pp;
            }
            table[a * order + b] = idx as u32;
        }
    }
    let index = |e: &[u32]| e.iter().fold(0usize, |acc, &x| acc * p as usize + x as usize);
    let generators = (0..n)
        .map(|i| {
            let mut e = vec![0u32; m];
            e[pos[i][i + 1]] = 1;
            index(&e)
        })
        .collect();
    let group = Arc::new(FiniteGroup::from_trusted_table(order, table, generators));
    Ok(UnipotentGroup { n, p, bar, coords, digits, group })
}

/// Shared, lazily built copies of the unipotent groups.
pub fn unipotent_group(n: usize, p: u32, bar: bool) -> Result<Arc<UnipotentGroup>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32, bool), Arc<UnipotentGroup>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(u) = cache.lock().expect("cache lock").get(&(n, p, bar)) {
        return Ok(u.clone());
    }
    let u = Arc::new(build_unipotent(n, p, bar)?);
    Ok(cache.lock().expect("cache lock").entry((n, p, bar)).or_insert(u).clone())
}

impl UnipotentGroup {
    /// Number of superdiagonal entries; the matrices are `(n+1) x (n+1)`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix_dim(&self) -> usize {
        self.n + 1
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn is_bar(&self) -> bool {
        self.bar
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    fn position(&self, i: usize, j: usize) -> Option<usize> {
        self.coords.iter().position(|&c| c == (i, j))
    }

    /// Entry `(i, j)` (1-based) of element `g`; the corner of the quotient
    /// reads as 0.
    pub fn entry(&self, g: usize, i: usize, j: usize) -> u32 {
        match (i, j) {
            _ if i == j => 1,
            _ if i > j => 0,
            _ => self.position(i - 1, j - 1).map_or(0, |t| self.digits[g][t]),
        }
    }

    pub fn matrix(&self, g: usize) -> Vec<Vec<u32>> {
        let d = self.matrix_dim();
        (1..=d).map(|i| (1..=d).map(|j| self.entry(g, i, j)).collect()).collect()
    }

    /// Index of a unipotent upper-triangular matrix (corner ignored in the
    /// quotient).
    pub fn index_of_matrix(&self, m: &[Vec<u32>]) -> Option<usize> {
        let d = self.matrix_dim();
        if m.len() != d || m.iter().any(|r| r.len() != d) {
            return None;
        }
        for i in 0..d {
            for j in 0..d {
                let ok = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => m[i][j] == 1,
                    std::cmp::Ordering::Greater => m[i][j] == 0,
                    std::cmp::Ordering::Less => m[i][j] < self.p,
                };
                if !ok {
                    return None;
                }
            }
        }
        Some(self.index_of_entries(|i, j| m[i][j]))
    }

    fn index_of_entries(&self, e: impl Fn(usize, usize) -> u32) -> usize {
        self.coords.iter().fold(0usize, |acc, &(i, j)| acc * self.p as usize + e(i, j) as usize)
    }

    pub fn superdiagonal(&self, g: usize) -> Vec<u32> {
        (1..=self.n).map(|i| self.entry(g, i, i + 1)).collect()
    }

    /// The characters `g -> g_{i,i+1}`, `i = 1..n`.
    pub fn coordinate_characters(&self) -> Vec<Character> {
        (1..=self.n)
            .map(|i| {
                let values = (0..self.order()).map(|g| self.entry(g, i, i + 1)).collect();
                Character::from_raw(self.group.clone(), self.p, values)
            })
            .collect()
    }
}

/// A homomorphism given by its full image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.order() || images.iter().any(|&x| x >= target.order()) {
            return Err(Error::DimensionMismatch("image table does not fit the groups".into()));
        }
        if !is_hom(&source, &target, &images) {
            return Err(Error::InvalidGroup("image table is not multiplicative".into()));
        }
        Ok(Self { source, target, images })
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, g: usize) -> usize {
        self.images[g]
    }

    pub fn generator_images(&self) -> Vec<usize> {
        self.source.generators().iter().map(|&s| self.images[s]).collect()
    }
}

fn is_hom(source: &FiniteGroup, target: &FiniteGroup, images: &[usize]) -> bool {
    let n = source.order();
    (0..n).all(|a| (0..n).all(|b| images[source.mul(a, b)] == target.mul(images[a], images[b])))
}

/// The matrix-valued map attached to an array, with homomorphism verdicts
/// for the full group and for the quotient.
#[derive(Clone, Debug)]
pub struct GammaMap {
    pub full: Option<Arc<UnipotentGroup>>,
    pub bar: Arc<UnipotentGroup>,
    /// Images in `U_{n+1}`, when the corner entry `(1,n)` is present.
    pub full_images: Option<Vec<usize>>,
    pub bar_images: Vec<usize>,
    pub hom_full: bool,
    pub hom_bar: bool,
}

/// The dictionary map for an array of size `n`.
pub fn gamma_from_system(array: &CochainArray, n: usize) -> Result<GammaMap> {
    gamma_with_signs(array, n, true)
}

/// As [`gamma_from_system`]; with `signed = false` the signs `(-1)^{j-i}`
/// are dropped. That variant is conjugate to the signed one by
/// `diag((-1)^i)`, so it is a homomorphism exactly when the signed map is.
pub fn gamma_with_signs(array: &CochainArray, n: usize, signed: bool) -> Result<GammaMap> {
    let first = array.values().next().ok_or(Error::MissingEntry(1, 1))?;
    let group = first.group().clone();
    let p = first.p();
    for i in 1..=n {
        for j in i..=n {
            let Some(c) = array.get(&(i, j)) else {
                if (i, j) == (1, n) {
                    continue;
                }
                return Err(Error::MissingEntry(i, j));
            };
            if c.degree() != 1 {
                return Err(Error::UnsupportedDegree(c.degree()));
            }
            if c.p() != p {
                return Err(Error::ModulusMismatch(p, c.p()));
            }
            if !same_group(c.group(), &group) {
                return Err(Error::GroupMismatch);
            }
        }
    }
    let value = |i: usize, j: usize, s: usize| -> u32 {
        // Matrix entry (i, j), 1-based, i < j.
        let v = array.get(&(i, j - 1)).map_or(0, |c| c.v1(s));
        if signed && (j - i) % 2 == 1 {
            (p - v) % p
        } else {
            v
        }
    };
    let bar = unipotent_group(n, p, true)?;
    let images_in = |u: &UnipotentGroup| -> Vec<usize> {
        (0..group.order())
            .map(|s| u.index_of_entries(|i, j| value(i + 1, j + 1, s)))
            .collect()
    };
    let bar_images = images_in(&bar);
    let hom_bar = is_hom(&group, bar.group(), &bar_images);
    let (full, full_images, hom_full) = if array.contains_key(&(1, n)) {
        let u = unipotent_group(n, p, false)?;
        let imgs = images_in(&u);
        let ok = is_hom(&group, u.group(), &imgs);
        (Some(u), Some(imgs), ok)
    } else {
        (None, None, false)
    };
    Ok(GammaMap { full, bar, full_images, bar_images, hom_full, hom_bar })
}

/// Reads the array back from a homomorphism into `u`. The corner entry is
/// omitted for the quotient.
pub fn array_from_hom(hom: &GroupHom, u: &UnipotentGroup) -> Result<CochainArray> {
    if !same_group(hom.target(), u.group()) {
        return Err(Error::GroupMismatch);
    }
    let n = u.n();
    let p = u.p();
    let mut out = CochainArray::new();
    for i in 1..=n {
        for j in i..=n {
            if u.is_bar() && (i, j) == (1, n) {
                continue;
            }
            // c_{i,j} sits at matrix entry (i, j+1).
            let values = hom
                .images()
                .iter()
                .map(|&g| {
                    let v = u.entry(g, i, j + 1);
                    if (j + 1 - i) % 2 == 1 {
                        (p - v) % p
                    } else {
                        v
                    }
                })
                .collect();
            out.insert((i, j), Cochain::from_raw(hom.source().clone(), p, 1, values));
        }
    }
    Ok(out)
}

/// A homomorphism `G -> U_{n+1}(F_p)` (or the quotient) whose superdiagonal
/// entries are the given characters, `n = chars.len()`.
pub fn find_prescribed_hom(group: &Arc<FiniteGroup>, chars: &[Character], bar: bool) -> Result<Option<GroupHom>> {
    let n = chars.len();
    let Some(first) = chars.first() else {
        return Err(Error::DimensionMismatch("no characters given".into()));
    };
    let p = first.p();
    for c in chars {
        first.check_compatible(c)?;
    }
    if !same_group(group, first.group()) {
        return Err(Error::GroupMismatch);
    }
    if n + 1 > MAX_SEARCH_DIM || p > MAX_SEARCH_PRIME {
        return Err(Error::SizeLimit(format!(
            "homomorphism search into {}x{} matrices over F_{p}",
            n + 1,
            n + 1
        )));
    }
    let u = unipotent_group(n, p, bar)?;
    let target = u.group();
    let gens = group.generators();
    let mut by_diag: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    for g in 0..u.order() {
        by_diag.entry(u.superdiagonal(g)).or_default().push(g);
    }
    let fibers: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let key: Vec<u32> = chars.iter().map(|c| c.value(s)).collect();
            by_diag.get(&key).cloned().unwrap_or_default()
        })
        .collect();
    if gens.is_empty() {
        return Ok(Some(GroupHom { source: group.clone(), target: target.clone(), images: vec![0] }));
    }
    let found = fibers[0].par_iter().find_map_first(|&x| {
        let mut imgs = vec![x];
        search(group, target, &fibers, &mut imgs)
    });
    Ok(found.map(|images| GroupHom { source: group.clone(), target: target.clone(), images }))
}

fn search(group: &FiniteGroup, target: &FiniteGroup, fibers: &[Vec<usize>], imgs: &mut Vec<usize>) -> Option<Vec<usize>> {
    let table = extend(group, target, imgs)?;
    if imgs.len() == fibers.len() {
        return Some(table);
    }
    for &x in &fibers[imgs.len()] {
        imgs.push(x);
        if let Some(t) = search(group, target, fibers, imgs) {
            return Some(t);
        }
        imgs.pop();
    }
    None
}

/// Extends generator images `imgs` (for the first generators) over the
/// subgroup they generate, or `None` on a conflict.
fn extend(group: &FiniteGroup, target: &FiniteGroup, imgs: &[usize]) -> Option<Vec<usize>> {
    let gens = &group.generators()[..imgs.len()];
    let mut phi = vec![usize::MAX; group.order()];
    phi[0] = 0;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = group.mul(x, s);
            let img = target.mul(phi[x], t);
            if phi[y] == usize::MAX {
                phi[y] = img;
                queue.push(y);
            } else if phi[y] != img {
                return None;
            }
        }
    }
    Some(phi)
}

/// Surjectivity of a homomorphism into a unipotent group, decided twice:
/// by closing the image, and by the rank of the superdiagonal projections
/// of the generator images (the Frattini quotient is `(Z/p)^n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Surjectivity {
    pub by_image: bool,
    pub by_frattini: bool,
}

pub fn check_surjective(hom: &GroupHom, u: &UnipotentGroup) -> Result<Surjectivity> {
    if !same_group(hom.target(), u.group()) {
        return Err(Error::GroupMismatch);
    }
    let gen_images = hom.generator_images();
    let by_image = u.group().closure(&gen_images).len() == u.order();
    let rows: Vec<Vec<i64>> = gen_images
        .iter()
        .map(|&g| u.superdiagonal(g).into_iter().map(i64::from).collect())
        .collect();
    let rank = if rows.is_empty() { 0 } else { FpMatrix::from_rows(u.p(), &rows)?.rank() };
    Ok(Surjectivity { by_image, by_frattini: rank == u.n() })
}
