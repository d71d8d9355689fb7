//! Dense bit-packed linear algebra over GF(2).
//!
//! Vectors and matrix rows are packed 64 bits per word with the padding bits
//! of the last word kept at zero. Elimination always pivots on the lowest
//! eligible row index, so ranks, particular solutions and kernel bases are
//! reproducible. A small sparse echelon form covers matrices too large to
//! pack.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use crate::error::{input, Result};

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Vector with ones exactly at `indices`. Repeated indices cancel.
    ///
    /// # Panics
    /// If an index is out of range.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i))
    }

    pub(crate) fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = Self { len, words };
        v.clear_padding();
        v
    }

    fn clear_padding(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Positions of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + t)
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, w)| wi * WORD + w.trailing_zeros() as usize)
    }

    /// Parity of the number of common set bits.
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn intersects(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "intersection of vectors with different lengths");
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Clears every bit that is set in `other`.
    pub fn and_not_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "mask of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn and_count(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len, "intersection of vectors with different lengths");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// The entries at `positions`, in that order.
    pub fn gather(&self, positions: &[usize]) -> Self {
        let mut out = Self::zeros(positions.len());
        for (k, &p) in positions.iter().enumerate() {
            if self.get(p) {
                out.set(k, true);
            }
        }
        out
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "Gf2Vector[{s}]")
    }
}

impl BitXorAssign<&Gf2Vector> for Gf2Vector {
    fn bitxor_assign(&mut self, rhs: &Gf2Vector) {
        self.xor_assign(rhs);
    }
}

impl BitXor<&Gf2Vector> for &Gf2Vector {
    type Output = Gf2Vector;
    fn bitxor(self, rhs: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Matrix whose rows are `rows`; each must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Gf2Vector]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            if v.len() != cols {
                return input(format!("row {r} has length {}, expected {cols}", v.len()));
            }
            m.row_words_mut(r).copy_from_slice(v.words());
        }
        Ok(m)
    }

    /// Matrix whose columns are `cols`; each must have length `rows`.
    pub fn from_columns(rows: usize, cols: &[Gf2Vector]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            if v.len() != rows {
                return input(format!("column {c} has length {}, expected {rows}", v.len()));
            }
            for r in v.ones() {
                m.set(r, c, true);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of range");
        self.data[r * self.stride + c / WORD] >> (c % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of range");
        let w = &mut self.data[r * self.stride + c / WORD];
        let mask = 1u64 << (c % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> Gf2Vector {
        Gf2Vector::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn column(&self, c: usize) -> Gf2Vector {
        Gf2Vector::from_indices(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    pub fn columns(&self) -> Vec<Gf2Vector> {
        self.transpose().row_vectors()
    }

    pub fn row_vectors(&self) -> Vec<Gf2Vector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in Gf2Vector::from_words(self.cols, self.row_words(r).to_vec()).ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return input(format!(
                "cannot place a {}-row matrix beside a {}-row matrix",
                other.rows, self.rows
            ));
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    m.set(r, c, true);
                }
            }
            for c in 0..other.cols {
                if other.get(r, c) {
                    m.set(r, self.cols + c, true);
                }
            }
        }
        Ok(m)
    }

    /// `[self | v]`.
    pub fn with_column(&self, v: &Gf2Vector) -> Result<Self> {
        if v.len() != self.rows {
            return input(format!(
                "vector of length {} does not match {} rows",
                v.len(),
                self.rows
            ));
        }
        self.hstack(&Self::from_columns(self.rows, std::slice::from_ref(v))?)
    }

    /// The submatrix made of the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    m.set(r, k, true);
                }
            }
        }
        m
    }

    /// The submatrix made of the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), self.cols);
        for (k, &r) in rows.iter().enumerate() {
            let src = self.row_words(r).to_vec();
            m.row_words_mut(k).copy_from_slice(&src);
        }
        m
    }

    pub fn mul_vec(&self, x: &Gf2Vector) -> Result<Gf2Vector> {
        if x.len() != self.cols {
            return input(format!(
                "vector of length {} does not match {} columns",
                x.len(),
                self.cols
            ));
        }
        let mut out = Gf2Vector::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self
                .row_words(r)
                .iter()
                .zip(x.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let row = self.row(r);
            for k in row.ones() {
                let src = other.row_words(k).to_vec();
                for (a, b) in out.row_words_mut(r).iter_mut().zip(&src) {
                    *a ^= b;
                }
            }
        }
        Ok(out)
    }

    /// Row reduction in place. Returns the pivot columns in order. With
    /// `reduced`, rows above each pivot are cleared too (reduced echelon form).
    fn eliminate(&mut self, reduced: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let w = c / WORD;
            let mask = 1u64 << (c % WORD);
            let Some(p) = (rank..self.rows).find(|&r| self.data[r * self.stride + w] & mask != 0) else {
                continue;
            };
            if p != rank {
                for k in 0..self.stride {
                    self.data.swap(p * self.stride + k, rank * self.stride + k);
                }
            }
            let start = if reduced { 0 } else { rank + 1 };
            for r in start..self.rows {
                if r != rank && self.data[r * self.stride + w] & mask != 0 {
                    for k in w..self.stride {
                        let v = self.data[rank * self.stride + k];
                        self.data[r * self.stride + k] ^= v;
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        pivots
    }

    /// Dimension of the row space (equivalently the column space).
    pub fn rank(&self) -> usize {
        self.clone().eliminate(false).len()
    }

    /// Rank computed by inserting columns one at a time into a span basis;
    /// an elimination independent of [`Gf2Matrix::rank`].
    pub fn rank_by_columns(&self) -> usize {
        let mut basis = SpanBasis::new(self.rows);
        self.columns().into_iter().filter(|c| basis.insert(c.clone())).count()
    }

    /// Indices of the columns that are independent of all earlier columns.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.clone().eliminate(false)
    }

    /// A solution of `self * x = b`, if one exists.
    ///
    /// Columns are scanned left to right; a column independent of the earlier
    /// ones is a pivot, every other column is a free variable fixed to zero.
    pub fn solve(&self, b: &Gf2Vector) -> Result<Option<Gf2Vector>> {
        if b.len() != self.rows {
            return input(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            ));
        }
        let mut basis = SpanBasis::with_tags(self.rows, self.cols);
        for (c, col) in self.columns().into_iter().enumerate() {
            basis.insert_tagged(col, c);
        }
        let (rest, combo) = basis.reduce_tracked(b);
        Ok(rest.is_zero().then_some(combo))
    }

    /// Whether `b` lies in the column space; decided by comparing ranks.
    pub fn in_colspace(&self, b: &Gf2Vector) -> Result<bool> {
        Ok(self.with_column(b)?.rank() == self.rank())
    }

    /// Basis of `{x : self * x = 0}`, one column per free variable.
    pub fn kernel_basis(&self) -> Gf2Matrix {
        let vectors = self.kernel_vectors();
        let mut k = Gf2Matrix::zeros(self.cols, vectors.len());
        for (j, v) in vectors.iter().enumerate() {
            for i in v.ones() {
                k.set(i, j, true);
            }
        }
        k
    }

    /// The columns of [`Gf2Matrix::kernel_basis`] as vectors.
    pub fn kernel_vectors(&self) -> Vec<Gf2Vector> {
        let mut r = self.clone();
        let pivots = r.eliminate(true);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = Gf2Vector::zeros(self.cols);
                x.set(f, true);
                for (row, &p) in pivots.iter().enumerate() {
                    if r.get(row, f) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect()
    }

    /// `rank([self | other]) - rank(self)`: how many columns of `other` are
    /// independent of the column space of `self`.
    pub fn relative_rank(&self, other: &Self) -> Result<usize> {
        Ok(self.hstack(other)?.rank() - self.rank())
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let s: String = (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

/// An incrementally built basis of a subspace of GF(2)^n.
///
/// Each stored vector has a distinct pivot (its lowest set bit) and is zero at
/// the pivots of all vectors stored before it, so one ordered pass reduces any
/// query. Optionally every stored vector carries the combination of tagged
/// inputs it was built from.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    len: usize,
    vectors: Vec<Gf2Vector>,
    pivots: Vec<usize>,
    combos: Option<(usize, Vec<Gf2Vector>)>,
}

impl SpanBasis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            vectors: Vec::new(),
            pivots: Vec::new(),
            combos: None,
        }
    }

    /// A basis that tracks combinations over `tags` tagged inputs.
    pub fn with_tags(len: usize, tags: usize) -> Self {
        Self {
            combos: Some((tags, Vec::new())),
            ..Self::new(len)
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &Gf2Vector) -> Gf2Vector {
        let mut v = v.clone();
        for (b, &p) in self.vectors.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(b);
            }
        }
        v
    }

    /// Like [`SpanBasis::reduce`], also returning which tagged inputs combine
    /// to `v - remainder`.
    ///
    /// # Panics
    /// If the basis was not created with [`SpanBasis::with_tags`].
    pub fn reduce_tracked(&self, v: &Gf2Vector) -> (Gf2Vector, Gf2Vector) {
        let (tags, combos) = self.combos.as_ref().expect("basis does not track combinations");
        let mut v = v.clone();
        let mut combo = Gf2Vector::zeros(*tags);
        for ((b, &p), c) in self.vectors.iter().zip(&self.pivots).zip(combos) {
            if v.get(p) {
                v.xor_assign(b);
                combo.xor_assign(c);
            }
        }
        (v, combo)
    }

    pub fn contains(&self, v: &Gf2Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns whether it was independent of the current span.
    pub fn insert(&mut self, v: Gf2Vector) -> bool {
        assert!(self.combos.is_none(), "tagged basis requires insert_tagged");
        let v = self.reduce(&v);
        match v.first_one() {
            Some(p) => {
                self.vectors.push(v);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }

    /// Adds `v` as tagged input `tag`; returns whether it was independent.
    pub fn insert_tagged(&mut self, v: Gf2Vector, tag: usize) -> bool {
        let (v, mut combo) = self.reduce_tracked(&v);
        let Some(p) = v.first_one() else {
            return false;
        };
        combo.flip(tag);
        self.vectors.push(v);
        self.pivots.push(p);
        if let Some((_, combos)) = self.combos.as_mut() {
            combos.push(combo);
        }
        true
    }
}

/// Symmetric difference of two sorted index lists.
pub fn sparse_xor(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// A basis of sparse vectors (sorted index lists) keyed by their largest
/// index. Suited to boundary matrices too large to store densely.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    by_pivot: HashMap<u32, Vec<u32>>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.by_pivot.len()
    }

    /// Adds `v`; returns whether it was independent of the current span.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        while let Some(&top) = v.last() {
            match self.by_pivot.get(&top) {
                Some(b) => v = sparse_xor(&v, b),
                None => {
                    self.by_pivot.insert(top, v);
                    return true;
                }
            }
        }
        false
    }

    /// The unique representative of `v + span` with no entry at any pivot.
    /// It is linear in `v` and zero exactly when `v` lies in the span.
    pub fn normal_form(&self, v: &[u32]) -> Vec<u32> {
        let mut v = v.to_vec();
        let mut bound = v.len();
        while bound > 0 {
            let e = v[bound - 1];
            match self.by_pivot.get(&e) {
                Some(b) => {
                    v = sparse_xor(&v, b);
                    bound = v.partition_point(|&x| x < e);
                }
                None => bound -= 1,
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.normal_form(v).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra_boundary() -> Gf2Matrix {
        // edges 01 02 03 12 13 23 ; triangles 012 013 023 123
        let cols = [[0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5]];
        let vs: Vec<_> = cols
            .iter()
            .map(|c| Gf2Vector::from_indices(6, c.iter().copied()))
            .collect();
        Gf2Matrix::from_columns(6, &vs).unwrap()
    }

    #[test]
    fn rank_small_cases() {
        assert_eq!(Gf2Matrix::identity(2).rank(), 2);
        assert_eq!(Gf2Matrix::zeros(3, 5).rank(), 0);
        assert_eq!(tetra_boundary().rank(), 3);
        assert_eq!(tetra_boundary().rank_by_columns(), 3);
    }

    #[test]
    fn solve_small_cases() {
        let b = Gf2Vector::from_bools(&[true, false, true]);
        assert_eq!(Gf2Matrix::identity(3).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Gf2Matrix::zeros(3, 2).solve(&b).unwrap(), None);

        let m = tetra_boundary();
        let target = m.column(0);
        let x = m.solve(&target).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), target);
        assert_eq!(x, Gf2Vector::from_indices(4, [0]));
        assert!(matches!(m.solve(&Gf2Vector::zeros(5)), Err(crate::Error::Input(_))));
    }

    #[test]
    fn colspace_small_cases() {
        let m = tetra_boundary();
        assert!(m.in_colspace(&Gf2Vector::zeros(6)).unwrap());
        assert!(Gf2Matrix::identity(2)
            .in_colspace(&Gf2Vector::from_bools(&[true, true]))
            .unwrap());
        let empty = Gf2Matrix::zeros(3, 0);
        assert!(!empty.in_colspace(&Gf2Vector::from_indices(3, [1])).unwrap());
        assert!(!m.in_colspace(&Gf2Vector::from_indices(6, [0])).unwrap());
    }

    #[test]
    fn kernel_small_cases() {
        assert_eq!(Gf2Matrix::identity(4).kernel_basis().cols(), 0);
        let k = Gf2Matrix::zeros(2, 3).kernel_basis();
        assert_eq!(k, Gf2Matrix::identity(3));
        let k = tetra_boundary().kernel_vectors();
        assert_eq!(k, vec![Gf2Vector::from_indices(4, 0..4)]);
    }

    #[test]
    fn relative_rank_small_cases() {
        let m = tetra_boundary();
        assert_eq!(m.relative_rank(&m.select_columns(&[0])).unwrap(), 0);
        assert_eq!(
            Gf2Matrix::zeros(3, 0).relative_rank(&Gf2Matrix::identity(3)).unwrap(),
            3
        );
        assert!(m.relative_rank(&Gf2Matrix::identity(3)).is_err());
    }

    #[test]
    fn padding_stays_clear() {
        let mut v = Gf2Vector::from_indices(70, [0, 69]);
        let w = v.clone();
        v.xor_assign(&w);
        assert!(v.is_zero());
        let r = Gf2Vector::from_words(3, vec![u64::MAX]);
        assert_eq!(r.count_ones(), 3);
    }

    #[test]
    fn span_basis_tracks_combinations() {
        let mut b = SpanBasis::with_tags(4, 3);
        assert!(b.insert_tagged(Gf2Vector::from_indices(4, [0, 1]), 0));
        assert!(b.insert_tagged(Gf2Vector::from_indices(4, [1, 2]), 1));
        assert!(!b.insert_tagged(Gf2Vector::from_indices(4, [0, 2]), 2));
        let (rest, combo) = b.reduce_tracked(&Gf2Vector::from_indices(4, [0, 2]));
        assert!(rest.is_zero());
        assert_eq!(combo, Gf2Vector::from_indices(3, [0, 1]));
    }

    #[test]
    fn sparse_echelon_matches_dense() {
        let m = tetra_boundary();
        let mut sparse = SparseEchelon::new();
        let mut dense = SpanBasis::new(6);
        for c in m.columns() {
            let idx: Vec<u32> = c.ones().map(|i| i as u32).collect();
            assert_eq!(sparse.insert(idx), dense.insert(c));
        }
        assert_eq!(sparse.dim(), 3);
        for mask in 0u32..64 {
            let idx: Vec<u32> = (0..6).filter(|i| mask >> i & 1 == 1).collect();
            let v = Gf2Vector::from_indices(6, idx.iter().map(|&i| i as usize));
            assert_eq!(sparse.contains(&idx), dense.contains(&v), "{idx:?}");
        }
        let a = sparse.normal_form(&[0, 5]);
        let b = sparse.normal_form(&[1, 4]);
        assert_eq!(sparse_xor(&a, &b), sparse.normal_form(&sparse_xor(&[0, 5], &[1, 4])));
    }
}
