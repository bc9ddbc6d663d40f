//! Prime fields and dense exact linear algebra.
//!
//! Entries are residues stored in machine words and reduced after every
//! operation. Besides the usual RREF / rank / kernel toolkit this module
//! provides [`SubspaceIter`], a restartable enumeration of all
//! `ell`-dimensional subspaces of `F_p^m` in canonical echelon form.

use serde::Serialize;

use crate::error::{Error, Result};

/// A prime field `F_p` with `2 <= p <= 251`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Field {
    p: u32,
}

impl Field {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=251).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        let (mut r0, mut r1) = (self.p as i64, (a % self.p) as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        s0.rem_euclid(self.p as i64) as u32
    }

    /// Canonical residue of an arbitrary integer.
    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Residues as signed integers in `(-p/2, p/2]`.
    pub fn lift_symmetric(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Dense row-major matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Result of row reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FieldMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FieldMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    /// All rows must have length `cols`.
    pub fn from_rows<R: AsRef<[i64]>>(field: Field, cols: usize, rows: &[R]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().map(|&v| field.reduce(v)));
        }
        Self { field, rows: rows.len(), cols, data }
    }

    /// Builds a matrix from already-reduced residues in row-major order.
    pub fn from_residues(field: Field, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&v| v < field.p()));
        Self { field, rows, cols, data }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn push_row(&mut self, row: &[u32]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row.iter().map(|&v| v % self.field.p()));
        self.rows += 1;
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = self.field;
        let mut out = FieldMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.data[i * other.cols + j] = v;
                }
            }
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows).map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    /// Drops all-zero rows.
    pub fn nonzero_rows(&self) -> FieldMatrix {
        let mut out = FieldMatrix::zeros(self.field, 0, self.cols);
        for r in 0..self.rows {
            if self.row(r).iter().any(|&v| v != 0) {
                out.push_row(self.row(r));
            }
        }
        out
    }
}

/// Reduced row echelon form.
pub fn rref(m: &FieldMatrix) -> Rref {
    let f = m.field;
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a.get(i, c) != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(a.get(r, c));
        for j in c..cols {
            let v = f.mul(a.get(r, j), inv);
            a.data[r * cols + j] = v;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c);
            if factor == 0 {
                continue;
            }
            for j in c..cols {
                let v = f.sub(a.get(i, j), f.mul(factor, a.get(r, j)));
                a.data[i * cols + j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, rank: r, pivots }
}

/// Basis (as rows) of the right null space `{v : M v = 0}`.
pub fn kernel_basis(m: &FieldMatrix) -> FieldMatrix {
    let f = m.field;
    let red = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &c in &red.pivots {
        is_pivot[c] = true;
    }
    let mut out = FieldMatrix::zeros(f, 0, m.cols);
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; m.cols];
        v[free] = 1;
        for (i, &pc) in red.pivots.iter().enumerate() {
            v[pc] = f.neg(red.matrix.get(i, free));
        }
        out.push_row(&v);
    }
    out
}

/// Gaussian binomial `[m choose ell]_p`, `None` on overflow.
pub fn gaussian_binomial(m: usize, ell: usize, p: u32) -> Option<u128> {
    if ell > m {
        return Some(0);
    }
    let p = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..ell {
        num = num.checked_mul(p.checked_pow((m - i) as u32)?.checked_sub(1)?)?;
        den = den.checked_mul(p.checked_pow((ell - i) as u32)?.checked_sub(1)?)?;
    }
    Some(num / den)
}

/// Enumerates every `ell`-dimensional subspace of `F_p^m` exactly once as
/// its RREF basis matrix. Emission order: pivot column sets in
/// lexicographic order, and within one pivot set the free entries in
/// row-major order, last entry varying fastest.
///
/// The index space `0..total()` can be split freely; [`SubspaceIter::unrank`]
/// and [`SubspaceIter::rank_of`] convert between indices and matrices.
#[derive(Debug, Clone)]
pub struct SubspaceIter {
    field: Field,
    m: usize,
    ell: usize,
    pivot_sets: Vec<Vec<usize>>,
    /// free positions (row, col) for each pivot set
    free: Vec<Vec<(usize, usize)>>,
    /// prefix sums of p^{#free}
    offsets: Vec<u64>,
    total: u64,
    // cursor
    next_index: u64,
    end: u64,
}

impl SubspaceIter {
    /// Fails only when the subspace count does not fit in 64 bits.
    pub fn new(m: usize, ell: usize, field: Field) -> Result<Self> {
        let pivot_sets: Vec<Vec<usize>> = if ell > m { Vec::new() } else { combinations(m, ell) };
        let mut free = Vec::with_capacity(pivot_sets.len());
        let mut offsets = Vec::with_capacity(pivot_sets.len() + 1);
        let mut total: u64 = 0;
        offsets.push(0);
        for ps in &pivot_sets {
            let mut fr = Vec::new();
            for (i, &pc) in ps.iter().enumerate() {
                for c in pc + 1..m {
                    if !ps.contains(&c) {
                        fr.push((i, c));
                    }
                }
            }
            let count = (field.p() as u64)
                .checked_pow(fr.len() as u32)
                .ok_or_else(|| Error::TooLarge(format!("[{m} choose {ell}]_{}", field.p())))?;
            total =
                total.checked_add(count).ok_or_else(|| Error::TooLarge(format!("[{m} choose {ell}]_{}", field.p())))?;
            offsets.push(total);
            free.push(fr);
        }
        Ok(Self { field, m, ell, pivot_sets, free, offsets, total, next_index: 0, end: total })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn ambient_dim(&self) -> usize {
        self.m
    }

    pub fn subspace_dim(&self) -> usize {
        self.ell
    }

    /// Restricts the iterator to indices `start..end`.
    pub fn with_range(mut self, start: u64, end: u64) -> Self {
        self.end = end.min(self.total);
        self.next_index = start.min(self.end);
        self
    }

    /// Splits `0..total` into at most `parts` contiguous ranges.
    pub fn ranges(&self, parts: usize) -> Vec<(u64, u64)> {
        let parts = parts.max(1) as u64;
        let chunk = self.total.div_ceil(parts).max(1);
        let mut out = Vec::new();
        let mut s = 0;
        while s < self.total {
            let e = (s + chunk).min(self.total);
            out.push((s, e));
            s = e;
        }
        out
    }

    /// Writes the matrix with the given index into `buf` (row-major `ell*m`).
    pub fn unrank_into(&self, index: u64, buf: &mut [u32]) {
        assert!(index < self.total, "index out of range");
        let set = match self.offsets.binary_search(&index) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        // skip empty buckets (cannot happen, counts are >= 1)
        let mut offset = index - self.offsets[set];
        buf.iter_mut().for_each(|v| *v = 0);
        for (i, &pc) in self.pivot_sets[set].iter().enumerate() {
            buf[i * self.m + pc] = 1;
        }
        let p = self.field.p() as u64;
        for &(r, c) in self.free[set].iter().rev() {
            buf[r * self.m + c] = (offset % p) as u32;
            offset /= p;
        }
    }

    pub fn unrank(&self, index: u64) -> FieldMatrix {
        let mut buf = vec![0; self.ell * self.m];
        self.unrank_into(index, &mut buf);
        FieldMatrix::from_residues(self.field, self.ell, self.m, buf)
    }

    /// Canonical index of a subspace given by any basis (need not be
    /// reduced). Returns `None` if the rows do not span an
    /// `ell`-dimensional subspace.
    pub fn rank_of(&self, basis: &FieldMatrix) -> Option<u64> {
        if basis.cols() != self.m {
            return None;
        }
        let red = rref(basis);
        if red.rank != self.ell {
            return None;
        }
        let set = self.pivot_sets.binary_search(&red.pivots).ok()?;
        let p = self.field.p() as u64;
        let mut offset: u64 = 0;
        for &(r, c) in &self.free[set] {
            offset = offset * p + red.matrix.get(r, c) as u64;
        }
        Some(self.offsets[set] + offset)
    }

    /// Visits every matrix in `start..end` without allocating per item.
    pub fn for_each_in_range<F: FnMut(u64, &[u32])>(&self, start: u64, end: u64, mut visit: F) {
        let end = end.min(self.total);
        if start >= end {
            return;
        }
        let mut buf = vec![0u32; self.ell * self.m];
        self.unrank_into(start, &mut buf);
        let mut set = match self.offsets.binary_search(&start) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let p = self.field.p();
        let mut idx = start;
        loop {
            visit(idx, &buf);
            idx += 1;
            if idx >= end {
                break;
            }
            if idx == self.offsets[set + 1] {
                set += 1;
                self.unrank_into(idx, &mut buf);
                continue;
            }
            // odometer on the free entries, last one fastest
            for &(r, c) in self.free[set].iter().rev() {
                let cell = &mut buf[r * self.m + c];
                *cell += 1;
                if *cell < p {
                    break;
                }
                *cell = 0;
            }
        }
    }
}

impl Iterator for SubspaceIter {
    type Item = FieldMatrix;

    fn next(&mut self) -> Option<FieldMatrix> {
        if self.next_index >= self.end {
            return None;
        }
        let m = self.unrank(self.next_index);
        self.next_index += 1;
        Some(m)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next_index) as usize;
        (n, Some(n))
    }
}

/// Convenience wrapper: every `ell`-dimensional subspace of `F_p^m`.
/// Empty when `ell > m`.
pub fn enumerate_subspaces(m: usize, ell: usize, field: Field) -> Result<SubspaceIter> {
    SubspaceIter::new(m, ell, field)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}
