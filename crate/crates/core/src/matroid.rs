//! Weighted matroids given by a column representation over GF(q).
//!
//! A weight is a positive integer per ground element. Simplifying a matroid
//! keeps one element per parallel class and gives it the total weight of its
//! class; with unit weights that is the class size. Weighted contraction is
//! contraction followed by that same simplification.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldSpec};
use crate::linalg::{normalize, GFMatrix};
use crate::Weight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedRepMatroid<W> {
    columns: GFMatrix,
    labels: Vec<usize>,
    weights: Vec<W>,
}

/// A maximal set of pairwise parallel non-loop elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelClass<W> {
    /// Smallest label in the class.
    pub representative: usize,
    /// Member labels, ascending.
    pub members: Vec<usize>,
    pub class_weight: W,
}

impl<W: Weight> WeightedRepMatroid<W> {
    /// Labels `0..n`; weights default to 1.
    pub fn from_matrix(columns: GFMatrix, weights: Option<Vec<W>>) -> Result<Self> {
        let labels = (0..columns.cols()).collect();
        Self::with_labels(columns, labels, weights)
    }

    pub fn with_labels(
        columns: GFMatrix,
        labels: Vec<usize>,
        weights: Option<Vec<W>>,
    ) -> Result<Self> {
        let n = columns.cols();
        if labels.len() != n {
            return Err(Error::LabelLength {
                expected: n,
                got: labels.len(),
            });
        }
        let mut seen = BTreeSet::new();
        if let Some(&dup) = labels.iter().find(|l| !seen.insert(**l)) {
            return Err(Error::DuplicateLabel(dup));
        }
        let weights = match weights {
            None => vec![W::one(); n],
            Some(w) if w.len() != n => {
                return Err(Error::WeightLength {
                    expected: n,
                    got: w.len(),
                })
            }
            Some(w) => {
                if let Some(index) = w.iter().position(|x| x.is_zero()) {
                    return Err(Error::NonpositiveWeight { index });
                }
                w
            }
        };
        Ok(Self {
            columns,
            labels,
            weights,
        })
    }

    /// Same elements with new weights.
    pub fn reweighted(&self, weights: Vec<W>) -> Result<Self> {
        Self::with_labels(self.columns.clone(), self.labels.clone(), Some(weights))
    }

    pub fn field(&self) -> &FieldSpec {
        self.columns.field()
    }

    pub fn columns(&self) -> &GFMatrix {
        &self.columns
    }

    pub fn column(&self, i: usize) -> Vec<Elem> {
        self.columns.column(i)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn weights(&self) -> &[W] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.columns.rank()
    }

    pub fn total_weight(&self) -> W {
        self.weights.iter().copied().sum()
    }

    /// Total weight of the elements at the given positions.
    pub fn weight_of(&self, positions: impl IntoIterator<Item = usize>) -> W {
        positions.into_iter().map(|i| self.weights[i]).sum()
    }

    pub fn position(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    fn positions_of(&self, labels: &[usize]) -> Result<Vec<usize>> {
        labels
            .iter()
            .map(|&l| self.position(l).ok_or(Error::UnknownLabel(l)))
            .collect()
    }

    /// Labels of the zero columns.
    pub fn loops(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.column(i).iter().all(|&x| x == 0))
            .map(|i| self.labels[i])
            .collect()
    }

    /// Groups non-loop positions by normalized column; classes come out
    /// ordered by representative label, members by label.
    fn class_positions(&self) -> Vec<Vec<usize>> {
        let field = self.field();
        let mut index: HashMap<Vec<Elem>, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.len() {
            let Some(key) = normalize(field, &self.column(i)) else {
                continue;
            };
            let slot = *index.entry(key).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[slot].push(i);
        }
        for c in &mut classes {
            c.sort_by_key(|&i| self.labels[i]);
        }
        classes.sort_by_key(|c| self.labels[c[0]]);
        classes
    }

    pub fn parallel_classes(&self) -> Vec<ParallelClass<W>> {
        self.class_positions()
            .into_iter()
            .map(|c| ParallelClass {
                representative: self.labels[c[0]],
                members: c.iter().map(|&i| self.labels[i]).collect(),
                class_weight: self.weight_of(c.iter().copied()),
            })
            .collect()
    }

    /// No loops and no two parallel elements.
    pub fn is_simple(&self) -> bool {
        let classes = self.class_positions();
        classes.len() == self.len() && classes.iter().all(|c| c.len() == 1)
    }

    fn simplified(&self) -> Self {
        let classes = self.class_positions();
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        Self {
            columns: self.columns.select_columns(&reps),
            labels: reps.iter().map(|&i| self.labels[i]).collect(),
            weights: classes
                .iter()
                .map(|c| self.weight_of(c.iter().copied()))
                .collect(),
        }
    }

    /// Drops loops and keeps one element per parallel class, carrying the
    /// class weight. Fails if nothing of positive rank is left.
    pub fn simplify(&self) -> Result<Self> {
        let s = self.simplified();
        if s.is_empty() {
            return Err(Error::RankZero);
        }
        Ok(s)
    }

    /// The restriction to the given positions, in the given order.
    pub fn restrict(&self, positions: &[usize]) -> Self {
        Self {
            columns: self.columns.select_columns(positions),
            labels: positions.iter().map(|&i| self.labels[i]).collect(),
            weights: positions.iter().map(|&i| self.weights[i]).collect(),
        }
    }

    /// `M \ Y`: removes the labelled elements, keeping all other weights.
    pub fn delete(&self, labels: &[usize]) -> Result<Self> {
        let gone: BTreeSet<usize> = self.positions_of(labels)?.into_iter().collect();
        let keep: Vec<usize> = (0..self.len()).filter(|i| !gone.contains(i)).collect();
        Ok(self.restrict(&keep))
    }

    /// Weighted contraction `M / Y`.
    ///
    /// The columns of `Y` are extended greedily (in label order) to a basis of
    /// the column space, with `Y`'s part first; every column is rewritten in
    /// that basis and the coordinates along `Y` are dropped. Elements in the
    /// span of `Y` become loops and disappear; the rest are simplified with
    /// class weights summed.
    pub fn weighted_contract(&self, labels: &[usize]) -> Result<Self> {
        let y = self.positions_of(labels)?;
        if y.is_empty() {
            return Ok(self.simplified());
        }
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.labels[i]);
        let mut y_sorted = y.clone();
        y_sorted.sort_by_key(|&i| self.labels[i]);

        let mut basis: Vec<usize> = Vec::new();
        let grow = |candidates: &[usize], basis: &mut Vec<usize>| {
            for &i in candidates {
                let mut trial = basis.clone();
                trial.push(i);
                if self.columns.select_columns(&trial).rank() == trial.len() {
                    *basis = trial;
                }
            }
        };
        grow(&y_sorted, &mut basis);
        let y_rank = basis.len();
        grow(&order, &mut basis);
        let r = basis.len();

        // [B | A] reduces to [I ; 0 | coordinates of A in basis B].
        let b = self.columns.select_columns(&basis);
        let rows = self.columns.rows();
        let mut aug = GFMatrix::zeros(self.field(), rows, r + self.len());
        for i in 0..rows {
            for j in 0..r {
                aug.set(i, j, b.get(i, j));
            }
            for j in 0..self.len() {
                aug.set(i, r + j, self.columns.get(i, j));
            }
        }
        let red = aug.rref().matrix;
        let mut quotient = GFMatrix::zeros(self.field(), r - y_rank, self.len());
        for i in y_rank..r {
            for j in 0..self.len() {
                quotient.set(i - y_rank, j, red.get(i, r + j));
            }
        }
        let contracted = Self {
            columns: quotient,
            labels: self.labels.clone(),
            weights: self.weights.clone(),
        };
        Ok(contracted.simplified())
    }
}
