//! Projective, affine and Bose-Burton geometries over GF(q), embeddings of
//! simple matroids into projective space, flats and hyperplanes.
//!
//! Points are length-r vectors whose first nonzero coordinate is 1. Point
//! sets are kept in lexicographic order, which is also the order in which
//! the constructors emit them.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldSpec};
use crate::linalg::{dot, normalize, projective_count, GFMatrix, ENUMERATION_CAP};
use crate::matroid::WeightedRepMatroid;
use crate::Weight;

pub type Point = Vec<Elem>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectivePointSet {
    field: FieldSpec,
    ambient_rank: usize,
    points: Vec<Point>,
}

fn check_size(field: &FieldSpec, r: usize) -> Result<()> {
    let ok = (field.q() as u64)
        .checked_pow(r as u32)
        .is_some_and(|n| n <= ENUMERATION_CAP);
    if ok {
        Ok(())
    } else {
        Err(Error::EnumerationCap {
            q: field.q(),
            rank: r,
        })
    }
}

/// All normalized vectors of length `r`, in lexicographic order.
fn normalized_vectors(field: &FieldSpec, r: usize) -> Vec<Point> {
    let q = field.order();
    let mut out = Vec::with_capacity(projective_count(q as u64, r) as usize);
    for lead in (0..r).rev() {
        let tail = r - 1 - lead;
        for mut code in 0..q.pow(tail as u32) {
            let mut v = vec![0; r];
            v[lead] = 1;
            for j in (lead + 1..r).rev() {
                v[j] = (code % q) as Elem;
                code /= q;
            }
            out.push(v);
        }
    }
    out
}

impl ProjectivePointSet {
    /// Builds a point set from arbitrary points, normalizing and sorting them.
    pub fn new(
        field: &FieldSpec,
        ambient_rank: usize,
        points: impl IntoIterator<Item = Point>,
    ) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in points {
            if p.len() != ambient_rank || p.iter().any(|&x| !field.contains(x as u32)) {
                return Err(Error::BadPoint(ambient_rank));
            }
            set.insert(normalize(field, &p).ok_or(Error::BadPoint(ambient_rank))?);
        }
        Ok(Self {
            field: field.clone(),
            ambient_rank,
            points: set.into_iter().collect(),
        })
    }

    fn from_sorted(field: &FieldSpec, ambient_rank: usize, points: Vec<Point>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        Self {
            field: field.clone(),
            ambient_rank,
            points,
        }
    }

    /// PG(r-1, q): every point of projective space of rank `r`.
    pub fn pg(field: &FieldSpec, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("rank must be at least 1".into()));
        }
        check_size(field, r)?;
        Ok(Self::from_sorted(field, r, normalized_vectors(field, r)))
    }

    /// AG(r-1, q): the points off the hyperplane `x_1 = 0`.
    pub fn ag(field: &FieldSpec, r: usize) -> Result<Self> {
        let pg = Self::pg(field, r)?;
        Ok(pg.filter(|p| p[0] != 0))
    }

    /// PG(r-1, q) minus the PG(k-1, q) spanned by the last `k` coordinates.
    pub fn bose_burton(field: &FieldSpec, r: usize, k: usize) -> Result<Self> {
        if k < 1 || k >= r {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= k < r, got k={k}, r={r}"
            )));
        }
        let pg = Self::pg(field, r)?;
        Ok(pg.filter(|p| p[..r - k].iter().any(|&x| x != 0)))
    }

    /// The empty subset of PG(r-1, q).
    pub fn empty(field: &FieldSpec, ambient_rank: usize) -> Self {
        Self::from_sorted(field, ambient_rank, Vec::new())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[Elem]) -> bool {
        self.points
            .binary_search_by(|x| x.as_slice().cmp(p))
            .is_ok()
    }

    pub fn filter(&self, keep: impl Fn(&Point) -> bool) -> Self {
        let points = self.points.iter().filter(|p| keep(p)).cloned().collect();
        Self::from_sorted(&self.field, self.ambient_rank, points)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.filter(|p| !other.contains(p))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.filter(|p| other.contains(p))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }

    /// `r × n` matrix with the points as columns.
    pub fn to_matrix(&self) -> GFMatrix {
        GFMatrix::from_columns(&self.field, self.ambient_rank, &self.points)
            .expect("points have ambient length")
    }

    /// The point set as a matroid, one element per point, unit weights.
    pub fn to_matroid<W: Weight>(&self) -> WeightedRepMatroid<W> {
        WeightedRepMatroid::from_matrix(self.to_matrix(), None).expect("unit weights are valid")
    }

    /// Linear rank of the points.
    pub fn rank(&self) -> usize {
        self.to_matrix().rank()
    }

    /// Rank, and whether the set is all of the projective points in its span
    /// (a flat, isomorphic to PG(rank-1, q)).
    pub fn flat_rank(&self) -> (usize, bool) {
        let rank = self.rank();
        let full = projective_count(self.field.q() as u64, rank);
        (rank, self.len() as u64 == full)
    }

    /// Every projective point in the span of the given vectors.
    pub fn span_of(field: &FieldSpec, ambient_rank: usize, vectors: &[Point]) -> Self {
        let basis = GFMatrix::from_rows(field, vectors)
            .map(|m| m.row_basis())
            .unwrap_or_default();
        if basis.is_empty() {
            return Self::empty(field, ambient_rank);
        }
        let points = normalized_vectors(field, basis.len())
            .into_iter()
            .map(|coef| {
                let mut v = vec![0; ambient_rank];
                for (c, row) in coef.iter().zip(&basis) {
                    for (x, &y) in v.iter_mut().zip(row) {
                        *x = field.add(*x, field.mul(*c, y));
                    }
                }
                normalize(field, &v).expect("independent combination is nonzero")
            });
        let set: BTreeSet<Point> = points.collect();
        Self::from_sorted(field, ambient_rank, set.into_iter().collect())
    }

    /// The flat spanned by this set.
    pub fn closure(&self) -> Self {
        Self::span_of(&self.field, self.ambient_rank, &self.points)
    }
}

/// A hyperplane of PG(r-1, q), stored as its normalized normal covector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    pub normal: Point,
}

impl Hyperplane {
    pub fn contains(&self, field: &FieldSpec, p: &[Elem]) -> bool {
        dot(field, &self.normal, p) == 0
    }

    /// The points of the hyperplane inside PG(r-1, q).
    pub fn points(&self, field: &FieldSpec) -> Result<ProjectivePointSet> {
        let pg = ProjectivePointSet::pg(field, self.normal.len())?;
        Ok(pg.filter(|p| self.contains(field, p)))
    }

    /// The hyperplane spanned by `points`, if they span exactly rank r-1.
    pub fn spanned_by(field: &FieldSpec, ambient_rank: usize, points: &[Point]) -> Option<Self> {
        let m = GFMatrix::from_rows(field, points).ok()?;
        let m = if points.is_empty() {
            GFMatrix::zeros(field, 0, ambient_rank)
        } else {
            m
        };
        let kernel = m.null_space();
        match kernel.as_slice() {
            [normal] => Some(Self {
                normal: normalize(field, normal)?,
            }),
            _ => None,
        }
    }
}

/// Every hyperplane of PG(r-1, q) containing the flat `flat`.
pub fn hyperplanes_containing(flat: &ProjectivePointSet) -> Result<Vec<Hyperplane>> {
    if !flat.flat_rank().1 {
        return Err(Error::NotFlat);
    }
    let field = flat.field();
    let normals = normalized_vectors(field, flat.ambient_rank());
    Ok(normals
        .into_iter()
        .filter(|c| flat.points().iter().all(|p| dot(field, c, p) == 0))
        .map(|normal| Hyperplane { normal })
        .collect())
}

/// Every rank-(k+1) flat containing the rank-k flat `flat`, ordered by the
/// smallest point outside `flat`.
pub fn pk1_copies_containing(flat: &ProjectivePointSet) -> Result<Vec<ProjectivePointSet>> {
    let (k, is_flat) = flat.flat_rank();
    if !is_flat {
        return Err(Error::NotFlat);
    }
    let r = flat.ambient_rank();
    if k < 1 || k >= r {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k < r, got k={k}, r={r}"
        )));
    }
    let field = flat.field();
    let pg = ProjectivePointSet::pg(field, r)?;
    let mut covered: BTreeSet<Point> = flat.points().iter().cloned().collect();
    let mut copies = Vec::new();
    for x in pg.points() {
        if covered.contains(x) {
            continue;
        }
        let mut gens = flat.points().to_vec();
        gens.push(x.clone());
        let copy = ProjectivePointSet::span_of(field, r, &gens);
        covered.extend(copy.points().iter().cloned());
        copies.push(copy);
    }
    Ok(copies)
}

/// A simple matroid placed inside PG(r-1, q), r its rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    field: FieldSpec,
    rank: usize,
    /// Point of each matroid element, by position.
    matroid_points: Vec<Point>,
    complement: ProjectivePointSet,
}

impl Embedding {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matroid_points(&self) -> &[Point] {
        &self.matroid_points
    }

    pub fn point(&self, position: usize) -> &Point {
        &self.matroid_points[position]
    }

    /// The points of PG(r-1, q) not used by the matroid.
    pub fn complement(&self) -> &ProjectivePointSet {
        &self.complement
    }

    /// The matroid's points as a point set.
    pub fn image(&self) -> ProjectivePointSet {
        ProjectivePointSet::from_sorted(
            &self.field,
            self.rank,
            self.matroid_points
                .iter()
                .cloned()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        )
    }

    /// Positions of matroid elements lying in `h`.
    pub fn positions_in(&self, h: &Hyperplane) -> Vec<usize> {
        (0..self.matroid_points.len())
            .filter(|&i| h.contains(&self.field, &self.matroid_points[i]))
            .collect()
    }

    /// Positions of matroid elements lying in the point set `s`.
    pub fn positions_within(&self, s: &ProjectivePointSet) -> Vec<usize> {
        (0..self.matroid_points.len())
            .filter(|&i| s.contains(&self.matroid_points[i]))
            .collect()
    }
}

/// Places a simple matroid in PG(r-1, q). When the representation has more
/// rows than its rank, columns are first rewritten in the basis given by the
/// pivot columns of the reduced row echelon form.
pub fn embed_in_pg<W: Weight>(m: &WeightedRepMatroid<W>) -> Result<Embedding> {
    if !m.is_simple() {
        return Err(Error::NotSimple);
    }
    let field = m.field();
    let rref = m.columns().rref();
    let r = rref.rank;
    if r == 0 {
        return Err(Error::RankZero);
    }
    let coords = if m.columns().rows() > r {
        rref.matrix.select_rows(&(0..r).collect::<Vec<_>>())
    } else {
        m.columns().clone()
    };
    let matroid_points: Vec<Point> = coords
        .columns()
        .map(|c| normalize(field, &c).expect("simple matroid has no loops"))
        .collect();
    let image: BTreeSet<&Point> = matroid_points.iter().collect();
    let pg = ProjectivePointSet::pg(field, r)?;
    let complement = pg.filter(|p| !image.contains(p));
    Ok(Embedding {
        field: field.clone(),
        rank: r,
        matroid_points,
        complement,
    })
}

/// Is the simple matroid all of PG(r-1, q)?
pub fn is_full_pg<W: Weight>(m: &WeightedRepMatroid<W>) -> bool {
    let q = m.field().q() as u64;
    m.is_simple() && m.len() as u64 == projective_count(q, m.rank())
}
