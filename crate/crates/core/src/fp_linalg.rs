//! Dense linear algebra over the prime field `F_p`.
//!
//! Every elimination pivots on the first nonzero entry of the leftmost
//! remaining column, so all derived choices (kernel bases, particular
//! solutions, cohomology representatives) are reproducible.

use crate::arith::{is_prime, pow_mod};
use crate::error::{Error, Result};

#[inline]
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
}

#[inline]
fn reduce_i64(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

/// `dst -= factor * src` entrywise, starting at `from`.
#[inline]
fn axpy_neg(dst: &mut [u32], src: &[u32], factor: u32, p: u32, from: usize) {
    if factor == 0 {
        return;
    }
    let neg = (p - factor) as u64;
    let p64 = p as u64;
    for (d, &s) in dst[from..].iter_mut().zip(&src[from..]) {
        if s != 0 {
            *d = ((*d as u64 + neg * s as u64) % p64) as u32;
        }
    }
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::NotPrime(p as u64))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpVector {
    p: u32,
    entries: Vec<u32>,
}

impl FpVector {
    pub fn new(p: u32, entries: &[i64]) -> Result<Self> {
        check_prime(p)?;
        Ok(Self {
            p,
            entries: entries.iter().map(|&x| reduce_i64(x, p)).collect(),
        })
    }

    pub fn zero(p: u32, len: usize) -> Self {
        Self { p, entries: vec![0; len] }
    }

    pub fn unit(p: u32, len: usize, i: usize) -> Self {
        let mut v = Self::zero(p, len);
        v.entries[i] = 1;
        v
    }

    /// Entries must already be reduced mod `p`.
    pub(crate) fn from_reduced(p: u32, entries: Vec<u32>) -> Self {
        debug_assert!(entries.iter().all(|&x| x < p));
        Self { p, entries }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> u32 {
        self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        Self::from_reduced(
            p,
            self.entries.iter().zip(&other.entries).map(|(&a, &b)| (a + b) % p).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(self.p - 1))
    }

    pub fn scale(&self, k: u32) -> Self {
        let p = self.p as u64;
        let k = k as u64 % p;
        Self::from_reduced(
            self.p,
            self.entries.iter().map(|&a| (a as u64 * k % p) as u32).collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    /// Row-major entries; values are reduced mod `p`.
    pub fn new(p: u32, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        check_prime(p)?;
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            p,
            rows,
            cols,
            data: entries.iter().map(|&x| reduce_i64(x, p)).collect(),
        })
    }

    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Self::new(p, rows.len(), cols, &flat)
    }

    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: u32, len: usize, columns: &[FpVector]) -> Result<Self> {
        let mut m = Self::zeros(p, len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.p != p {
                return Err(Error::ModulusMismatch(p, c.p));
            }
            if c.len() != len {
                return Err(Error::DimensionMismatch(format!("column of length {}, expected {len}", c.len())));
            }
            for i in 0..len {
                m.data[i * m.cols + j] = c.entries[i];
            }
        }
        Ok(m)
    }

    pub(crate) fn from_reduced_rows(p: u32, cols: usize, rows: Vec<Vec<u32>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            debug_assert_eq!(r.len(), cols);
            data.extend(r);
        }
        Self { p, rows: n, cols, data }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &FpVector) -> Result<FpVector> {
        if x.p != self.p {
            return Err(Error::ModulusMismatch(self.p, x.p));
        }
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        let p = self.p as u64;
        let out = (0..self.rows)
            .map(|i| {
                let s = self
                    .row(i)
                    .iter()
                    .zip(&x.entries)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                s as u32
            })
            .collect();
        Ok(FpVector::from_reduced(self.p, out))
    }

    fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn rank(&self) -> usize {
        rref_in_place(self.p, self.cols, &mut self.row_vecs()).len()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut rows = self.row_vecs();
        let pivots = rref_in_place(self.p, self.cols, &mut rows);
        (FpMatrix::from_reduced_rows(self.p, self.cols, rows), pivots)
    }

    /// Some `x` with `A x = b`, or `None` when the system is inconsistent.
    pub fn solve_linear(&self, b: &FpVector) -> Result<Option<FpVector>> {
        if b.p != self.p {
            return Err(Error::ModulusMismatch(self.p, b.p));
        }
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut rows: Vec<Vec<u32>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b.entries[i]);
                r
            })
            .collect();
        let pivots = rref_in_place(self.p, self.cols + 1, &mut rows);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (k, &c) in pivots.iter().enumerate() {
            x[c] = rows[k][self.cols];
        }
        Ok(Some(FpVector::from_reduced(self.p, x)))
    }

    /// Echelonized basis of the null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<FpVector> {
        let mut rows = self.row_vecs();
        let pivots = rref_in_place(self.p, self.cols, &mut rows);
        kernel_from_rref(self.p, self.cols, &rows, &pivots)
    }
}

fn kernel_from_rref(p: u32, cols: usize, rows: &[Vec<u32>], pivots: &[usize]) -> Vec<FpVector> {
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![0u32; cols];
            x[f] = 1;
            for (k, &c) in pivots.iter().enumerate() {
                let v = rows[k][f];
                x[c] = (p - v) % p;
            }
            FpVector::from_reduced(p, x)
        })
        .collect()
}

/// Gauss-Jordan elimination; truncates `rows` to the nonzero ones and returns
/// the pivot columns.
fn rref_in_place(p: u32, cols: usize, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = inv_mod(rows[r][c], p) as u64;
        for x in rows[r][c..].iter_mut() {
            *x = (*x as u64 * inv % p as u64) as u32;
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r {
                let f = row[c];
                axpy_neg(row, &pivot_row, f, p, c);
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Coordinates of `v` with respect to `basis`, if `v` lies in its span.
pub fn membership(v: &FpVector, basis: &[FpVector]) -> Result<Option<FpVector>> {
    if let Some(b) = basis.iter().find(|b| b.p != v.p) {
        return Err(Error::ModulusMismatch(v.p, b.p));
    }
    if basis.is_empty() {
        return Ok(v.is_zero().then(|| FpVector::zero(v.p, 0)));
    }
    FpMatrix::from_columns(v.p, v.len(), basis)?.solve_linear(v)
}

/// A subspace of `F_p^n` held as a fully reduced echelon basis, so two equal
/// subspaces have identical representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    p: u32,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, ambient: usize) -> Self {
        Self { p, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        Self::spanned_by(p, ambient, (0..ambient).map(|i| FpVector::unit(p, ambient, i)))
    }

    pub fn spanned_by<I>(p: u32, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = FpVector>,
    {
        let mut s = Self::zero(p, ambient);
        for v in vectors {
            s.insert(&v);
        }
        s
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<FpVector> {
        self.rows.iter().map(|r| FpVector::from_reduced(self.p, r.clone())).collect()
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &FpVector) -> FpVector {
        debug_assert_eq!(v.len(), self.ambient);
        let mut x = v.entries.clone();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = x[c];
            axpy_neg(&mut x, row, f, self.p, c);
        }
        FpVector::from_reduced(self.p, x)
    }

    pub fn contains(&self, v: &FpVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &FpVector) -> bool {
        let mut x = self.reduce(v).entries;
        let Some(c) = x.iter().position(|&e| e != 0) else {
            return false;
        };
        let inv = inv_mod(x[c], self.p) as u64;
        for e in x[c..].iter_mut() {
            *e = (*e as u64 * inv % self.p as u64) as u32;
        }
        for row in self.rows.iter_mut() {
            let f = row[c];
            axpy_neg(row, &x, f, self.p, c);
        }
        let at = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(at, c);
        self.rows.insert(at, x);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows
            .iter()
            .all(|r| other.contains(&FpVector::from_reduced(self.p, r.clone())))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in other.basis() {
            s.insert(&v);
        }
        s
    }
}

/// Reusable solver for `A x = b` with a fixed `A`.
///
/// Selects a maximal independent set of rows once; each solve then costs
/// one small triangular pass instead of a fresh elimination.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    matrix: FpMatrix,
    basis_rows: Vec<usize>,
    transform: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl LinearSolver {
    pub fn new(matrix: FpMatrix) -> Self {
        let p = matrix.p;
        let mut span = Subspace::zero(p, matrix.cols);
        let mut basis_rows = Vec::new();
        for i in 0..matrix.rows {
            let row = FpVector::from_reduced(p, matrix.row(i).to_vec());
            if span.insert(&row) {
                basis_rows.push(i);
            }
            if span.dim() == matrix.cols {
                break;
            }
        }
        let r = basis_rows.len();
        // Eliminate [A_R | I] so the right block records the row operations.
        let mut aug: Vec<Vec<u32>> = basis_rows
            .iter()
            .enumerate()
            .map(|(k, &i)| {
                let mut v = matrix.row(i).to_vec();
                v.extend((0..r).map(|j| u32::from(j == k)));
                v
            })
            .collect();
        let all_pivots = rref_in_place(p, matrix.cols + r, &mut aug);
        debug_assert!(all_pivots.iter().all(|&c| c < matrix.cols));
        let transform = aug.iter().map(|row| row[matrix.cols..].to_vec()).collect();
        Self { matrix, basis_rows, transform, pivots: all_pivots }
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.basis_rows.len()
    }

    /// A solution that is correct whenever the system is consistent.
    pub fn solve_unchecked(&self, b: &[u32]) -> FpVector {
        let p = self.matrix.p as u64;
        let mut x = vec![0u32; self.matrix.cols];
        for (t_row, &c) in self.transform.iter().zip(&self.pivots) {
            let s = t_row
                .iter()
                .zip(&self.basis_rows)
                .fold(0u64, |acc, (&t, &i)| (acc + t as u64 * b[i] as u64) % p);
            x[c] = s as u32;
        }
        FpVector::from_reduced(self.matrix.p, x)
    }

    pub fn solve(&self, b: &FpVector) -> Result<Option<FpVector>> {
        if b.len() != self.matrix.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.matrix.rows
            )));
        }
        let x = self.solve_unchecked(&b.entries);
        Ok((self.matrix.mul_vec(&x)? == *b).then_some(x))
    }
}
