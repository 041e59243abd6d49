//! Abstract affine-geometry restrictions found by brute force.
//!
//! A restriction `M|N` is tested for isomorphism with AG(r-1, q) purely
//! through independence of small subsets, without using coordinates of `N`
//! inside PG(r-1, q). This is the oracle for the hyperplane-complement route
//! used by the main check.

use crate::error::{Error, Result};
use crate::geometry::ProjectivePointSet;
use crate::gf::{Elem, FieldSpec};
use crate::matroid::WeightedRepMatroid;
use crate::Weight;

/// Largest ground set accepted by the brute-force search.
pub const AFFINE_MAX_ELEMENTS: usize = 12;

/// `table[mask]` is true when the vectors selected by `mask` are linearly
/// independent. Only subsets of size at most `max_size` are ever marked.
fn independence_table(field: &FieldSpec, vectors: &[Vec<Elem>], max_size: usize) -> Vec<bool> {
    fn go(
        field: &FieldSpec,
        vectors: &[Vec<Elem>],
        start: usize,
        mask: usize,
        basis: &mut Vec<(usize, Vec<Elem>)>,
        max_size: usize,
        table: &mut [bool],
    ) {
        table[mask] = true;
        if basis.len() == max_size {
            return;
        }
        for i in start..vectors.len() {
            let mut v = vectors[i].clone();
            for (p, row) in basis.iter() {
                let f = v[*p];
                if f != 0 {
                    for (x, &y) in v.iter_mut().zip(row) {
                        *x = field.sub(*x, field.mul(f, y));
                    }
                }
            }
            let Some(p) = v.iter().position(|&x| x != 0) else {
                continue;
            };
            let inv = field.inv(v[p]);
            v.iter_mut().for_each(|x| *x = field.mul(*x, inv));
            basis.push((p, v));
            go(field, vectors, i + 1, mask | 1 << i, basis, max_size, table);
            basis.pop();
        }
    }
    let mut table = vec![false; 1 << vectors.len()];
    go(field, vectors, 0, 0, &mut Vec::new(), max_size, &mut table);
    table
}

/// Restricts a table over `n` elements to the members of `subset` (listed
/// in order), reindexed from 0.
fn sub_table(table: &[bool], subset: &[usize]) -> Vec<bool> {
    (0..1usize << subset.len())
        .map(|local| {
            let global = subset
                .iter()
                .enumerate()
                .filter(|(j, _)| local >> j & 1 == 1)
                .fold(0, |m, (_, &e)| m | 1 << e);
            table[global]
        })
        .collect()
}

fn count_independent(table: &[bool], size: u32) -> usize {
    (0..table.len())
        .filter(|&m| m.count_ones() == size && table[m])
        .count()
}

/// Does a bijection exist that preserves independence of every subset of
/// size at most `rank`? Both tables cover the same number of elements.
fn isomorphic(a: &[bool], b: &[bool], rank: usize) -> bool {
    fn extend(
        a: &[bool],
        b: &[bool],
        rank: usize,
        image: &mut Vec<usize>,
        used: usize,
        s: usize,
    ) -> bool {
        let j = image.len();
        if j == s {
            return true;
        }
        for t in 0..s {
            if used >> t & 1 == 1 {
                continue;
            }
            let consistent = submasks((1 << j) - 1).all(|sub| {
                if sub.count_ones() as usize >= rank {
                    return true;
                }
                let mapped = (0..j)
                    .filter(|i| sub >> i & 1 == 1)
                    .fold(0, |m, i| m | 1 << image[i]);
                a[sub | 1 << j] == b[mapped | 1 << t]
            });
            if consistent {
                image.push(t);
                if extend(a, b, rank, image, used | 1 << t, s) {
                    return true;
                }
                image.pop();
            }
        }
        false
    }
    let s = a.len().trailing_zeros() as usize;
    extend(a, b, rank, &mut Vec::with_capacity(s), 0, s)
}

fn submasks(mask: usize) -> impl Iterator<Item = usize> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & mask)
        };
        Some(cur)
    })
}

struct Affine {
    table: Vec<bool>,
    bases: usize,
}

fn affine_model(field: &FieldSpec, r: usize) -> Result<Affine> {
    let ag = ProjectivePointSet::ag(field, r)?;
    let table = independence_table(field, ag.points(), r);
    let bases = count_independent(&table, r as u32);
    Ok(Affine { table, bases })
}

fn check_cap<W: Weight>(m: &WeightedRepMatroid<W>) -> Result<()> {
    if m.len() > AFFINE_MAX_ELEMENTS {
        return Err(Error::SizeCap(format!(
            "affine restriction search needs at most {AFFINE_MAX_ELEMENTS} elements, got {}",
            m.len()
        )));
    }
    Ok(())
}

/// Every subset `N` (as ascending positions) with `M|N` isomorphic to
/// AG(r-1, q), r the rank of `M`.
pub fn affine_restrictions<W: Weight>(m: &WeightedRepMatroid<W>) -> Result<Vec<Vec<usize>>> {
    check_cap(m)?;
    let r = m.rank();
    if r == 0 {
        return Err(Error::RankZero);
    }
    let field = m.field();
    let size = (field.q() as usize).pow(r as u32 - 1);
    if size > m.len() {
        return Ok(Vec::new());
    }
    let model = affine_model(field, r)?;
    let columns: Vec<Vec<Elem>> = m.columns().columns().collect();
    let table = independence_table(field, &columns, r);
    let mut out = Vec::new();
    for mask in 0..1usize << m.len() {
        if mask.count_ones() as usize != size {
            continue;
        }
        let subset: Vec<usize> = (0..m.len()).filter(|i| mask >> i & 1 == 1).collect();
        let local = sub_table(&table, &subset);
        if count_independent(&local, r as u32) == model.bases && isomorphic(&local, &model.table, r)
        {
            out.push(subset);
        }
    }
    Ok(out)
}

/// Is `M` itself isomorphic to AG(rank-1, q)?
pub fn is_affine_geometry<W: Weight>(m: &WeightedRepMatroid<W>) -> Result<bool> {
    let r = m.rank();
    if r == 0 {
        return Ok(false);
    }
    let size = (m.field().q() as usize).pow(r as u32 - 1);
    Ok(m.len() == size && affine_restrictions(m)?.len() == 1)
}

/// Condition (iii) in its generic form: `w(N) >= (q-1)·w(E(M)-N)` for every
/// restriction `N` isomorphic to AG(r-1, q).
pub fn restriction_inequality_brute_force<W: Weight>(m: &WeightedRepMatroid<W>) -> Result<bool> {
    let q1 = W::from_count(m.field().q() as u64 - 1);
    let total = m.total_weight();
    Ok(affine_restrictions(m)?.iter().all(|n| {
        let w_n = m.weight_of(n.iter().copied());
        w_n >= q1 * (total - w_n)
    }))
}
