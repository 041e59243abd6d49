//! Cocircuits and weighted cogirth.
//!
//! For a represented matroid the cocircuits are the minimal supports of
//! nonzero vectors in the row space of its matrix. With positive weights a
//! minimum-weight support is automatically minimal, so the cogirth is just
//! the minimum over all projective classes of row-space vectors.

mod oracle;

pub use oracle::{cogirth_oracle, ORACLE_MAX_ELEMENTS, ORACLE_MAX_RANK};

use std::cmp::Ordering;
use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Embedding, Hyperplane, Point};
use crate::linalg::{support_weight, RowSpace};
use crate::matroid::WeightedRepMatroid;
use crate::Weight;

/// Classification relative to the complement of a Bose-Burton embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoType {
    /// Complementary hyperplane contains the deleted flat; the cocircuit is
    /// a copy of AG(r-1, q).
    TypeI,
    /// Complementary hyperplane meets the deleted flat in a hyperplane of
    /// it; the cocircuit is AG(r-1, q) minus AG(k-1, q).
    TypeII,
    Untyped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocircuit<W> {
    /// Positions of the cocircuit's elements, ascending.
    pub support: Vec<usize>,
    pub weight: W,
    /// Positions of the complementary hyperplane of the matroid (including
    /// any loops), ascending.
    pub hyperplane: Vec<usize>,
    pub cotype: CoType,
}

impl<W: Weight> Cocircuit<W> {
    fn from_support(m: &WeightedRepMatroid<W>, support: &FixedBitSet) -> Self {
        Self {
            support: support.ones().collect(),
            weight: support_weight(support, m.weights()),
            hyperplane: (0..m.len()).filter(|&i| !support.contains(i)).collect(),
            cotype: CoType::Untyped,
        }
    }

    pub fn support_labels(&self, m: &WeightedRepMatroid<W>) -> Vec<usize> {
        sorted_labels(m, self.support.iter().copied())
    }
}

fn sorted_labels<W>(m: &WeightedRepMatroid<W>, positions: impl Iterator<Item = usize>) -> Vec<usize>
where
    W: Weight,
{
    let mut labels: Vec<usize> = positions.map(|i| m.labels()[i]).collect();
    labels.sort_unstable();
    labels
}

/// Lighter first; ties go to the lexicographically smaller label sequence.
fn better<W: Weight>(
    m: &WeightedRepMatroid<W>,
    a: (W, &FixedBitSet),
    b: (W, &FixedBitSet),
) -> bool {
    match a.0.cmp(&b.0) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => sorted_labels(m, a.1.ones()) < sorted_labels(m, b.1.ones()),
    }
}

/// Class counts above this are scanned in parallel chunks.
const PARALLEL_THRESHOLD: u64 = 1 << 12;

fn scan_min<W: Weight>(
    m: &WeightedRepMatroid<W>,
    space: &RowSpace,
    range: std::ops::Range<u64>,
) -> Option<(W, FixedBitSet)> {
    let mut best: Option<(W, FixedBitSet)> = None;
    space.scan_range(range, |support, _| {
        let w = support_weight(support, m.weights());
        let replace = match &best {
            None => true,
            Some((bw, bs)) => better(m, (w, support), (*bw, bs)),
        };
        if replace {
            best = Some((w, support.clone()));
        }
    });
    best
}

/// Weighted cogirth `g*(M)` and a minimum-weight cocircuit.
pub fn cogirth<W: Weight>(m: &WeightedRepMatroid<W>) -> Result<(W, Cocircuit<W>)> {
    let space = RowSpace::new(m.columns())?;
    if space.rank() == 0 {
        return Err(Error::RankZero);
    }
    let total = space.class_count();
    let best = if total <= PARALLEL_THRESHOLD {
        scan_min(m, &space, 0..total)
    } else {
        let chunks = (rayon::current_num_threads() as u64 * 8).max(1);
        let step = total.div_ceil(chunks);
        (0..chunks)
            .into_par_iter()
            .filter_map(|c| scan_min(m, &space, c * step..((c + 1) * step).min(total)))
            .reduce_with(|a, b| {
                if better(m, (b.0, &b.1), (a.0, &a.1)) {
                    b
                } else {
                    a
                }
            })
    };
    let (g, support) = best.expect("positive rank has at least one class");
    Ok((g, Cocircuit::from_support(m, &support)))
}

/// Every cocircuit of `M`, ordered by label sequence.
///
/// Collects all row-space supports and keeps the inclusion-minimal ones.
pub fn cocircuits<W: Weight>(m: &WeightedRepMatroid<W>) -> Result<Vec<Cocircuit<W>>> {
    let space = RowSpace::new(m.columns())?;
    if space.rank() == 0 {
        return Err(Error::RankZero);
    }
    let mut supports: BTreeSet<Vec<usize>> = BTreeSet::new();
    space.scan_range(0..space.class_count(), |s, _| {
        supports.insert(s.ones().collect());
    });
    let bits: Vec<FixedBitSet> = supports
        .iter()
        .map(|s| {
            let mut b = FixedBitSet::with_capacity(m.len());
            b.extend(s.iter().copied());
            b
        })
        .collect();
    let mut out: Vec<Cocircuit<W>> = bits
        .iter()
        .filter(|s| {
            !bits
                .iter()
                .any(|t| t.count_ones(..) < s.count_ones(..) && t.is_subset(s))
        })
        .map(|s| Cocircuit::from_support(m, s))
        .collect();
    out.sort_by_cached_key(|c| c.support_labels(m));
    Ok(out)
}

/// Cocircuits of a simple matroid tagged type-I / type-II against its
/// embedding. Everything is untyped unless the complement of the embedding
/// is a nonempty flat.
pub fn classify_cocircuits<W: Weight>(
    m: &WeightedRepMatroid<W>,
    emb: &Embedding,
) -> Result<Vec<Cocircuit<W>>> {
    if emb.matroid_points().len() != m.len() || emb.field() != m.field() || emb.rank() != m.rank() {
        return Err(Error::EmbeddingMismatch);
    }
    let mut all = cocircuits(m)?;
    let complement = emb.complement();
    let (k, is_flat) = complement.flat_rank();
    if !is_flat || k == 0 || k >= emb.rank() {
        return Ok(all);
    }
    let field = emb.field();
    for c in &mut all {
        let points: Vec<Point> = c.hyperplane.iter().map(|&i| emb.point(i).clone()).collect();
        let h =
            Hyperplane::spanned_by(field, emb.rank(), &points).ok_or(Error::EmbeddingMismatch)?;
        c.cotype = if complement.points().iter().all(|p| h.contains(field, p)) {
            CoType::TypeI
        } else {
            CoType::TypeII
        };
    }
    Ok(all)
}
