//! Dense matrices over GF(q): row reduction, span membership, null spaces and
//! enumeration of the row space one projective class at a time.

use std::fmt;
use std::ops::Range;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldSpec};
use crate::Weight;

/// Row-space enumeration is refused once `q^rank` exceeds this.
pub const ENUMERATION_CAP: u64 = 1 << 24;

#[derive(Clone, PartialEq, Eq)]
pub struct GFMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for GFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "GFMatrix over {} ({}x{})",
            self.field, self.rows, self.cols
        )?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Output of [`GFMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: GFMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Scales `v` so that its first nonzero entry is 1. Returns `None` for the
/// zero vector.
pub fn normalize(field: &FieldSpec, v: &[Elem]) -> Option<Vec<Elem>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let s = field.inv(lead);
    Some(v.iter().map(|&x| field.mul(s, x)).collect())
}

pub fn is_normalized(v: &[Elem]) -> bool {
    v.iter().find(|&&x| x != 0) == Some(&1)
}

/// Dot product over the field.
pub fn dot(field: &FieldSpec, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

impl GFMatrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row vectors, validating every entry.
    pub fn from_rows<T: Copy + Into<u32>>(field: &FieldSpec, rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            for &x in row {
                let x: u32 = x.into();
                if !field.contains(x) {
                    return Err(Error::ElementOutOfRange {
                        elem: x,
                        q: field.q(),
                    });
                }
                data.push(x as Elem);
            }
        }
        Ok(Self {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a `rows × columns.len()` matrix whose j-th column is `columns[j]`.
    pub fn from_columns(field: &FieldSpec, rows: usize, columns: &[Vec<Elem>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    got: col.len(),
                });
            }
            for (i, &x) in col.iter().enumerate() {
                if !field.contains(x as u32) {
                    return Err(Error::ElementOutOfRange {
                        elem: x as u32,
                        q: field.q(),
                    });
                }
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: Elem) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        (0..self.cols).map(|c| self.column(c))
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// The submatrix on the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(&self.field, self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    /// The submatrix on the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Self {
            field: self.field.clone(),
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// `self * other`.
    pub fn mul(&self, other: &GFMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: Elem) {
        if factor == 0 {
            return;
        }
        let f = self.field.clone();
        for c in 0..self.cols {
            let v = f.add(self.get(dst, c), f.mul(factor, self.get(src, c)));
            self.set(dst, c, v);
        }
    }

    fn scale_row(&mut self, r: usize, factor: Elem) {
        let f = self.field.clone();
        for c in 0..self.cols {
            let v = f.mul(factor, self.get(r, c));
            self.set(r, c, v);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.swap_rows(rank, p);
            let s = m.field.inv(m.get(rank, c));
            m.scale_row(rank, s);
            for r in 0..m.rows {
                if r != rank {
                    let factor = m.field.neg(m.get(r, c));
                    m.add_row_multiple(r, rank, factor);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        Rref {
            matrix: m,
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// The nonzero rows of the reduced row echelon form.
    pub fn row_basis(&self) -> Vec<Vec<Elem>> {
        let rref = self.rref();
        (0..rref.rank)
            .map(|r| rref.matrix.row(r).to_vec())
            .collect()
    }

    /// Is `v` a linear combination of the rows?
    pub fn in_row_space(&self, v: &[Elem]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let rank = self.rank();
        let mut ext = self.to_rows();
        ext.push(v.to_vec());
        Ok(GFMatrix::from_rows(&self.field, &ext)?.rank() == rank)
    }

    /// Is `v` a linear combination of the columns?
    pub fn in_column_space(&self, v: &[Elem]) -> Result<bool> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: v.len(),
            });
        }
        self.transpose().in_row_space(v)
    }

    /// A basis of `{x : self · x = 0}`, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<Elem>> {
        let rref = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols)
            .filter(|c| !rref.pivots.contains(c))
            .collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![0; self.cols];
                x[fc] = 1;
                for (r, &pc) in rref.pivots.iter().enumerate() {
                    x[pc] = f.neg(rref.matrix.get(r, fc));
                }
                x
            })
            .collect()
    }
}

/// Number of projective points of a `k`-dimensional space, `(q^k - 1)/(q - 1)`.
pub fn projective_count(q: u64, k: usize) -> u64 {
    (0..k).map(|i| q.pow(i as u32)).sum()
}

/// One projective class of nonzero row-space vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportWeight<W> {
    /// Coefficients against the reduced row basis, first nonzero entry 1.
    pub coefficients: Vec<Elem>,
    pub support: Vec<usize>,
    pub weight: W,
}

/// The row space of a matrix, prepared for exhaustive enumeration.
///
/// Classes are indexed `0..class_count()`; any index range can be scanned
/// independently, so disjoint ranges may be handed to separate workers.
#[derive(Debug, Clone)]
pub struct RowSpace {
    field: FieldSpec,
    n: usize,
    basis: Vec<Vec<Elem>>,
    packed: Vec<FixedBitSet>,
}

impl RowSpace {
    pub fn new(a: &GFMatrix) -> Result<Self> {
        let basis = a.row_basis();
        let q = a.field().q() as u64;
        let fits = q
            .checked_pow(basis.len() as u32)
            .is_some_and(|size| size <= ENUMERATION_CAP);
        if !fits {
            return Err(Error::EnumerationCap {
                q: a.field().q(),
                rank: basis.len(),
            });
        }
        let packed = if q == 2 {
            basis
                .iter()
                .map(|row| {
                    let mut bits = FixedBitSet::with_capacity(a.cols());
                    bits.extend(
                        row.iter()
                            .enumerate()
                            .filter(|(_, &x)| x != 0)
                            .map(|(i, _)| i),
                    );
                    bits
                })
                .collect()
        } else {
            Vec::new()
        };
        Ok(Self {
            field: a.field().clone(),
            n: a.cols(),
            basis,
            packed,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn class_count(&self) -> u64 {
        projective_count(self.field.q() as u64, self.rank())
    }

    /// Calls `visit(support, coefficients)` for each class index in `range`.
    pub fn scan_range<F>(&self, range: Range<u64>, mut visit: F)
    where
        F: FnMut(&FixedBitSet, &[Elem]),
    {
        let end = range.end.min(self.class_count());
        if range.start >= end {
            return;
        }
        let mut walker = Walker::start(self, range.start);
        let mut index = range.start;
        loop {
            visit(&walker.support, &walker.coef);
            index += 1;
            if index == end {
                break;
            }
            walker.advance(self, index);
        }
    }

    /// Streams every projective class with its support and total weight.
    pub fn supports<'a, W: Weight>(&'a self, weights: &'a [W]) -> Result<Supports<'a, W>> {
        if weights.len() != self.n {
            return Err(Error::WeightLength {
                expected: self.n,
                got: weights.len(),
            });
        }
        Ok(Supports {
            space: self,
            weights,
            walker: None,
            index: 0,
        })
    }
}

/// Sums `weights` over the set bits of `support`.
pub fn support_weight<W: Weight>(support: &FixedBitSet, weights: &[W]) -> W {
    support.ones().map(|i| weights[i]).sum()
}

/// Validates weights and enumerates `(support, weight)` for each projective
/// class of nonzero vectors in the row space of `a`.
pub fn row_space_supports<W: Weight>(a: &GFMatrix, weights: &[W]) -> Result<Vec<SupportWeight<W>>> {
    if let Some(index) = weights.iter().position(|w| w.is_zero()) {
        return Err(Error::NonpositiveWeight { index });
    }
    let space = RowSpace::new(a)?;
    Ok(space.supports(weights)?.collect())
}

pub struct Supports<'a, W> {
    space: &'a RowSpace,
    weights: &'a [W],
    walker: Option<Walker>,
    index: u64,
}

impl<W: Weight> Iterator for Supports<'_, W> {
    type Item = SupportWeight<W>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.index >= self.space.class_count() {
            return None;
        }
        match self.walker.as_mut() {
            None => self.walker = Some(Walker::start(self.space, self.index)),
            Some(w) => w.advance(self.space, self.index),
        }
        self.index += 1;
        let w = self.walker.as_ref().unwrap();
        Some(SupportWeight {
            coefficients: w.coef.clone(),
            support: w.support.ones().collect(),
            weight: support_weight(&w.support, self.weights),
        })
    }
}

/// Enumeration state: the current coefficient vector and its codeword.
///
/// Over GF(2) class `t` is the Gray code of `t + 1`, so consecutive classes
/// differ by one basis row. Otherwise classes are grouped by the position of
/// the leading 1 and the remaining coordinates run as an odometer, last
/// coordinate fastest.
struct Walker {
    coef: Vec<Elem>,
    word: Vec<Elem>,
    support: FixedBitSet,
    lead: usize,
}

fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

impl Walker {
    fn start(space: &RowSpace, index: u64) -> Self {
        let k = space.rank();
        let q = space.field.q() as u64;
        let mut coef = vec![0; k];
        let mut lead = 0;
        if q == 2 {
            let g = gray(index + 1);
            for (j, c) in coef.iter_mut().enumerate() {
                *c = ((g >> (k - 1 - j)) & 1) as Elem;
            }
            lead = coef.iter().position(|&c| c != 0).unwrap_or(0);
        } else {
            let mut t = index;
            for l in 0..k {
                let block = q.pow((k - 1 - l) as u32);
                if t < block {
                    lead = l;
                    coef[l] = 1;
                    for j in (l + 1..k).rev() {
                        coef[j] = (t % q) as Elem;
                        t /= q;
                    }
                    break;
                }
                t -= block;
            }
        }
        let mut w = Self {
            coef,
            word: vec![0; space.n],
            support: FixedBitSet::with_capacity(space.n),
            lead,
        };
        w.recompute(space);
        w
    }

    fn recompute(&mut self, space: &RowSpace) {
        let f = &space.field;
        self.word.iter_mut().for_each(|x| *x = 0);
        for (c, row) in self.coef.iter().zip(&space.basis) {
            if *c != 0 {
                for (x, &r) in self.word.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(*c, r));
                }
            }
        }
        self.support.clear();
        for (i, &x) in self.word.iter().enumerate() {
            self.support.set(i, x != 0);
        }
    }

    fn add_row(&mut self, space: &RowSpace, j: usize, delta: Elem) {
        let f = &space.field;
        for (i, &r) in space.basis[j].iter().enumerate() {
            if r != 0 {
                let x = f.add(self.word[i], f.mul(delta, r));
                self.word[i] = x;
                self.support.set(i, x != 0);
            }
        }
    }

    /// Moves to class `index`, which must directly follow the current one.
    fn advance(&mut self, space: &RowSpace, index: u64) {
        let k = space.rank();
        if space.field.q() == 2 {
            let bit = (index + 1).trailing_zeros() as usize;
            let j = k - 1 - bit;
            self.coef[j] ^= 1;
            self.support.symmetric_difference_with(&space.packed[j]);
            return;
        }
        let f = space.field.clone();
        let q = f.q() as Elem;
        let mut j = k;
        while j > self.lead + 1 {
            j -= 1;
            let old = self.coef[j];
            let new = if old + 1 == q { 0 } else { old + 1 };
            self.coef[j] = new;
            self.add_row(space, j, f.sub(new, old));
            if new != 0 {
                return;
            }
        }
        // Tail exhausted: the leading 1 moves one position right.
        self.lead += 1;
        self.coef.iter_mut().for_each(|c| *c = 0);
        self.coef[self.lead] = 1;
        self.recompute(space);
    }
}
