//! Cogirth by brute force over hyperplane flats.
//!
//! Deliberately independent of the row-space path: it never reduces the
//! representing matrix as a whole. Every (r-1)-subset of parallel-class
//! representatives that is independent spans a hyperplane; its closure is
//! found by testing each element against the subset, and the cogirth is the
//! lightest complement of a closure.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldSpec};
use crate::matroid::WeightedRepMatroid;
use crate::Weight;

pub const ORACLE_MAX_ELEMENTS: usize = 14;
pub const ORACLE_MAX_RANK: usize = 6;

/// Rank of a family of vectors by forward elimination on copies.
fn rank_of(field: &FieldSpec, vectors: &[&[Elem]]) -> usize {
    let mut rows: Vec<Vec<Elem>> = vectors.iter().map(|v| v.to_vec()).collect();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = field.inv(rows[rank][col]);
        for i in rank + 1..rows.len() {
            let factor = field.mul(rows[i][col], inv);
            if factor != 0 {
                let (top, rest) = rows.split_at_mut(i);
                for (x, &y) in rest[0][col..].iter_mut().zip(&top[rank][col..]) {
                    *x = field.sub(*x, field.mul(factor, y));
                }
            }
        }
        rank += 1;
    }
    rank
}

fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if acc.len() == k {
            visit(acc);
            return;
        }
        for i in start..n {
            if n - i < k - acc.len() {
                break;
            }
            acc.push(i);
            go(i + 1, n, k, acc, visit);
            acc.pop();
        }
    }
    go(0, n, k, &mut Vec::with_capacity(k), &mut visit);
}

/// Weighted cogirth by hyperplane-flat enumeration. Limited to
/// `n ≤ 14` elements and rank `≤ 6`.
pub fn cogirth_oracle<W: Weight>(m: &WeightedRepMatroid<W>) -> Result<W> {
    let n = m.len();
    if n > ORACLE_MAX_ELEMENTS {
        return Err(Error::SizeCap(format!(
            "oracle needs n <= {ORACLE_MAX_ELEMENTS}, got {n}"
        )));
    }
    let field = m.field();
    let cols: Vec<Vec<Elem>> = (0..n).map(|i| m.column(i)).collect();
    let all: Vec<&[Elem]> = cols.iter().map(Vec::as_slice).collect();
    let r = rank_of(field, &all);
    if r == 0 {
        return Err(Error::RankZero);
    }
    if r > ORACLE_MAX_RANK {
        return Err(Error::SizeCap(format!(
            "oracle needs rank <= {ORACLE_MAX_RANK}, got {r}"
        )));
    }

    // one representative per parallel class: a nonloop not parallel to any earlier one
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..n {
        if rank_of(field, &[&cols[i]]) == 0 {
            continue;
        }
        if reps
            .iter()
            .all(|&j| rank_of(field, &[&cols[i], &cols[j]]) == 2)
        {
            reps.push(i);
        }
    }

    let mut flats: HashSet<u32> = HashSet::new();
    combinations(reps.len(), r - 1, |subset| {
        let vecs: Vec<&[Elem]> = subset.iter().map(|&s| cols[reps[s]].as_slice()).collect();
        if rank_of(field, &vecs) != r - 1 {
            return;
        }
        let mut flat = 0u32;
        for (i, col) in cols.iter().enumerate() {
            let mut with = vecs.clone();
            with.push(col);
            if rank_of(field, &with) == r - 1 {
                flat |= 1 << i;
            }
        }
        flats.insert(flat);
    });

    let g = flats
        .iter()
        .map(|&flat| {
            (0..n)
                .filter(|i| flat >> i & 1 == 0)
                .map(|i| m.weights()[i])
                .sum::<W>()
        })
        .min()
        .expect("a positive-rank matroid has a hyperplane");
    Ok(g)
}
