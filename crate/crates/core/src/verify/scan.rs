//! Families of instances run through the main and projective-geometry
//! checks, with every per-instance cross-check tallied.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cli::file::write_matroid;
use crate::cogirth::{cogirth, cogirth_oracle};
use crate::error::{Error, Result};
use crate::geometry::{is_full_pg, pk1_copies_containing, Point, ProjectivePointSet};
use crate::gf::{Elem, FieldSpec};
use crate::linalg::GFMatrix;
use crate::matroid::WeightedRepMatroid;
use crate::Weight;

use super::theorems::{check_main_theorem, check_pg_proposition};
use super::VerificationReport;

/// Most instances a single scan will build.
pub const SCAN_CAP: u64 = 1 << 21;

/// Oracle comparisons are made up to this size and rank.
pub const ORACLE_SCAN_ELEMENTS: usize = 12;
pub const ORACLE_SCAN_RANK: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum ScanMode {
    /// Every full-rank point subset of PG(r-1, q) with every weight vector
    /// in `1..=weight_max`.
    Exhaustive,
    /// `count` seeded instances per rank.
    Random { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub q: u32,
    pub r_min: usize,
    pub r_max: usize,
    pub mode: ScanMode,
    pub weight_max: u64,
    /// Compare cogirth against the subset-closure oracle on small instances.
    pub oracle: bool,
}

impl ScanSpec {
    pub fn exhaustive(q: u32, r_max: usize) -> Self {
        Self {
            q,
            r_min: 1,
            r_max,
            mode: ScanMode::Exhaustive,
            weight_max: 1,
            oracle: true,
        }
    }

    pub fn random(q: u32, r: usize, count: usize, seed: u64, weight_max: u64) -> Self {
        Self {
            q,
            r_min: r,
            r_max: r,
            mode: ScanMode::Random { count, seed },
            weight_max,
            oracle: true,
        }
    }
}

/// One scanned matroid.
#[derive(Debug, Clone)]
pub struct Instance<W> {
    pub index: usize,
    pub family: String,
    pub matroid: WeightedRepMatroid<W>,
}

/// The first instance (in instance order) that produced a problem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub index: usize,
    pub family: String,
    pub problems: Vec<String>,
    /// The instance in matroid-file form.
    pub file: String,
}

/// Tallies over a scan. Every count whose name ends in `violations`,
/// `disagreements` or `discrepancies` must be zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub instances: usize,
    pub main_instances: usize,
    pub pg_instances: usize,
    pub equality_cases: usize,
    pub bound_violations: usize,
    pub consistency_violations: usize,
    pub iii_prime_violations: usize,
    /// Instances satisfying (i) and (ii).
    pub sublemma_instances: usize,
    pub sublemma_violations: usize,
    pub iii_formulation_comparisons: usize,
    pub iii_formulation_disagreements: usize,
    pub restriction_oracle_comparisons: usize,
    pub restriction_oracle_disagreements: usize,
    pub oracle_comparisons: usize,
    pub oracle_discrepancies: usize,
    pub other_check_violations: usize,
    pub errors: usize,
    pub counterexample: Option<Counterexample>,
}

impl ScanReport {
    pub fn violations(&self) -> usize {
        self.bound_violations
            + self.consistency_violations
            + self.iii_prime_violations
            + self.sublemma_violations
            + self.iii_formulation_disagreements
            + self.restriction_oracle_disagreements
            + self.oracle_discrepancies
            + self.other_check_violations
            + self.errors
    }

    pub fn passed(&self) -> bool {
        self.violations() == 0
    }

    fn absorb(&mut self, other: Self) {
        self.instances += other.instances;
        self.main_instances += other.main_instances;
        self.pg_instances += other.pg_instances;
        self.equality_cases += other.equality_cases;
        self.bound_violations += other.bound_violations;
        self.consistency_violations += other.consistency_violations;
        self.iii_prime_violations += other.iii_prime_violations;
        self.sublemma_instances += other.sublemma_instances;
        self.sublemma_violations += other.sublemma_violations;
        self.iii_formulation_comparisons += other.iii_formulation_comparisons;
        self.iii_formulation_disagreements += other.iii_formulation_disagreements;
        self.restriction_oracle_comparisons += other.restriction_oracle_comparisons;
        self.restriction_oracle_disagreements += other.restriction_oracle_disagreements;
        self.oracle_comparisons += other.oracle_comparisons;
        self.oracle_discrepancies += other.oracle_discrepancies;
        self.other_check_violations += other.other_check_violations;
        self.errors += other.errors;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }
}

/// Runs the applicable check, and the cogirth oracle when requested, on one
/// instance.
pub fn check_instance<W: Weight>(inst: &Instance<W>, oracle: bool) -> ScanReport {
    let mut out = ScanReport {
        instances: 1,
        ..Default::default()
    };
    let mut problems = Vec::new();
    let m = &inst.matroid;
    let result = if is_full_pg(m) {
        out.pg_instances = 1;
        check_pg_proposition(m)
    } else {
        out.main_instances = 1;
        check_main_theorem(m)
    };
    match result {
        Ok(report) => tally(&report, &mut out, &mut problems),
        Err(e) => {
            out.errors = 1;
            problems.push(e.to_string());
        }
    }
    if oracle && m.len() <= ORACLE_SCAN_ELEMENTS && m.rank() <= ORACLE_SCAN_RANK {
        out.oracle_comparisons = 1;
        match (cogirth(m), cogirth_oracle(m)) {
            (Ok((g, _)), Ok(h)) if g == h => {}
            (a, b) => {
                out.oracle_discrepancies = 1;
                problems.push(format!("cogirth {:?} vs oracle {:?}", a.map(|x| x.0), b));
            }
        }
    }
    if !problems.is_empty() {
        out.counterexample = Some(Counterexample {
            index: inst.index,
            family: inst.family.clone(),
            problems,
            file: write_matroid(m),
        });
    }
    out
}

fn tally<W: Weight>(
    report: &VerificationReport<W>,
    out: &mut ScanReport,
    problems: &mut Vec<String>,
) {
    problems.extend(report.inconsistencies());
    out.equality_cases = usize::from(report.equality);
    out.bound_violations = usize::from(!report.bound_holds);
    out.consistency_violations = usize::from(report.consistency == Some(false));
    let i_ii = report.condition_i.as_ref().is_some_and(|c| c.holds)
        && report.condition_ii.as_ref().is_some_and(|c| c.holds);
    out.sublemma_instances = usize::from(i_ii);
    for c in &report.checks {
        let failed = usize::from(!c.holds);
        match c.name.as_str() {
            "iii_prime_implied" => out.iii_prime_violations += failed,
            "type_ii_sublemma" => out.sublemma_violations += failed,
            "iii_type_i_formulation" => {
                out.iii_formulation_comparisons += 1;
                out.iii_formulation_disagreements += failed;
            }
            "iii_restriction_oracle" => {
                out.restriction_oracle_comparisons += 1;
                out.restriction_oracle_disagreements += failed;
            }
            _ => out.other_check_violations += failed,
        }
    }
}

fn points_matroid<W: Weight>(
    field: &FieldSpec,
    r: usize,
    points: &[Point],
    weights: Vec<W>,
) -> WeightedRepMatroid<W> {
    let matrix = GFMatrix::from_columns(field, r, points).expect("points have length r");
    WeightedRepMatroid::from_matrix(matrix, Some(weights)).expect("positive weights")
}

fn mask_points(pg: &[Point], mask: u64) -> Vec<Point> {
    (0..pg.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| pg[i].clone())
        .collect()
}

/// Weight vectors in `1..=max` of length `n`, last coordinate fastest.
fn weight_vectors(n: usize, max: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = max.pow(n as u32);
    (0..total).map(move |mut code| {
        let mut w = vec![1; n];
        for x in w.iter_mut().rev() {
            *x += code % max;
            code /= max;
        }
        w
    })
}

fn exhaustive_instances<W: Weight>(spec: &ScanSpec, field: &FieldSpec) -> Result<Vec<Instance<W>>> {
    let mut out = Vec::new();
    for r in spec.r_min..=spec.r_max {
        let pg = ProjectivePointSet::pg(field, r)?;
        let n = pg.len();
        if n > 20 {
            return Err(Error::SizeCap(format!(
                "exhaustive scan over {n} points of PG({}, {})",
                r - 1,
                field.q()
            )));
        }
        let mut admitted: u64 = 0;
        for mask in 1u64..1 << n {
            let points = mask_points(pg.points(), mask);
            let matrix = GFMatrix::from_columns(field, r, &points)?;
            if matrix.rank() != r {
                continue;
            }
            let count = spec
                .weight_max
                .checked_pow(points.len() as u32)
                .unwrap_or(u64::MAX);
            admitted = admitted.saturating_add(count);
            if admitted.saturating_add(out.len() as u64) > SCAN_CAP {
                return Err(Error::SizeCap(format!(
                    "exhaustive scan exceeds {SCAN_CAP} instances"
                )));
            }
            for w in weight_vectors(points.len(), spec.weight_max) {
                let index = out.len();
                let weights = w.into_iter().map(W::from_count).collect();
                out.push(Instance {
                    index,
                    family: format!("subset r={r} mask={mask:#x}"),
                    matroid: points_matroid(field, r, &points, weights),
                });
            }
        }
    }
    Ok(out)
}

fn random_invertible(field: &FieldSpec, r: usize, rng: &mut ChaCha8Rng) -> GFMatrix {
    let q = field.q() as u8;
    loop {
        let rows: Vec<Vec<Elem>> = (0..r)
            .map(|_| (0..r).map(|_| rng.random_range(0..q)).collect())
            .collect();
        let a = GFMatrix::from_rows(field, &rows).expect("entries in range");
        if a.rank() == r {
            return a;
        }
    }
}

/// Rewrites the points in a random basis, rescales and shuffles the columns
/// and sometimes appends a redundant row.
fn disguise<W: Weight>(
    field: &FieldSpec,
    r: usize,
    points: &[Point],
    weights: Vec<W>,
    rng: &mut ChaCha8Rng,
) -> WeightedRepMatroid<W> {
    let q = field.q() as u8;
    let base = GFMatrix::from_columns(field, r, points).expect("points have length r");
    let moved = random_invertible(field, r, rng)
        .mul(&base)
        .expect("square change of basis");
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.shuffle(rng);
    let mut columns: Vec<Vec<Elem>> = order
        .iter()
        .map(|&j| {
            let s = rng.random_range(1..q);
            moved
                .column(j)
                .into_iter()
                .map(|x| field.mul(x, s))
                .collect()
        })
        .collect();
    let mut rows = r;
    if rng.random_bool(0.25) {
        let coef: Vec<Elem> = (0..r).map(|_| rng.random_range(0..q)).collect();
        for c in &mut columns {
            let extra = c
                .iter()
                .zip(&coef)
                .fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)));
            c.push(extra);
        }
        rows += 1;
    }
    let weights = order.iter().map(|&j| weights[j]).collect();
    let matrix = GFMatrix::from_columns(field, rows, &columns).expect("uniform column length");
    WeightedRepMatroid::from_matrix(matrix, Some(weights)).expect("positive weights")
}

fn random_weights<W: Weight>(n: usize, max: u64, rng: &mut ChaCha8Rng) -> Vec<W> {
    (0..n)
        .map(|_| W::from_count(rng.random_range(1..=max)))
        .collect()
}

fn random_instance<W: Weight>(
    field: &FieldSpec,
    r: usize,
    weight_max: u64,
    rng: &mut ChaCha8Rng,
) -> Result<(String, WeightedRepMatroid<W>)> {
    let pg = ProjectivePointSet::pg(field, r)?;
    let family = if r < 2 { 0 } else { rng.random_range(0..4) };
    let (name, points, weights) = match family {
        1 | 2 => {
            let k = rng.random_range(1..r);
            let bb = ProjectivePointSet::bose_burton(field, r, k)?;
            let points = bb.points().to_vec();
            let weights = if family == 1 {
                random_weights(points.len(), weight_max, rng)
            } else {
                let deleted = pg.difference(&bb);
                let mut w = vec![W::one(); points.len()];
                for copy in pk1_copies_containing(&deleted)? {
                    let value = W::from_count(rng.random_range(1..=weight_max));
                    for (x, p) in w.iter_mut().zip(&points) {
                        if copy.contains(p) {
                            *x = value;
                        }
                    }
                }
                w
            };
            let name = if family == 1 {
                "bose-burton"
            } else {
                "bose-burton, constant on copies"
            };
            (format!("{name} k={k}"), points, weights)
        }
        3 => {
            let w = if rng.random_bool(0.5) {
                vec![W::from_count(rng.random_range(1..=weight_max)); pg.len()]
            } else {
                random_weights(pg.len(), weight_max, rng)
            };
            ("projective geometry".to_string(), pg.points().to_vec(), w)
        }
        _ => loop {
            let points: Vec<Point> = pg
                .points()
                .iter()
                .filter(|_| rng.random_bool(0.5))
                .cloned()
                .collect();
            if !points.is_empty() && GFMatrix::from_columns(field, r, &points)?.rank() == r {
                let w = random_weights(points.len(), weight_max, rng);
                break ("subset".to_string(), points, w);
            }
        },
    };
    Ok((name, disguise(field, r, &points, weights, rng)))
}

fn random_instances<W: Weight>(
    spec: &ScanSpec,
    field: &FieldSpec,
    count: usize,
    seed: u64,
) -> Result<Vec<Instance<W>>> {
    let ranks = spec.r_max.saturating_sub(spec.r_min) + 1;
    if (count as u64).saturating_mul(ranks as u64) > SCAN_CAP {
        return Err(Error::SizeCap(format!(
            "random scan exceeds {SCAN_CAP} instances"
        )));
    }
    let mut out = Vec::new();
    for r in spec.r_min..=spec.r_max {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ (r as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        for i in 0..count {
            let (family, matroid) = random_instance(field, r, spec.weight_max, &mut rng)?;
            out.push(Instance {
                index: out.len(),
                family: format!("{family} r={r} #{i}"),
                matroid,
            });
        }
    }
    Ok(out)
}

/// Builds the instances of a scan, in the order they are reported.
pub fn instances<W: Weight>(spec: &ScanSpec) -> Result<Vec<Instance<W>>> {
    let field = FieldSpec::new(spec.q)?;
    if spec.weight_max == 0 {
        return Err(Error::InvalidParameter(
            "weight_max must be at least 1".into(),
        ));
    }
    if spec.r_min == 0 {
        return Err(Error::InvalidParameter("ranks start at 1".into()));
    }
    if spec.r_min > spec.r_max {
        return Ok(Vec::new());
    }
    ProjectivePointSet::pg(&field, spec.r_max)?;
    match spec.mode {
        ScanMode::Exhaustive => exhaustive_instances(spec, &field),
        ScanMode::Random { count, seed } => random_instances(spec, &field, count, seed),
    }
}

/// Checks every instance in parallel and combines the tallies in instance
/// order.
pub fn scan_instances<W: Weight>(instances: &[Instance<W>], oracle: bool) -> ScanReport {
    let parts: Vec<ScanReport> = instances
        .par_iter()
        .map(|inst| check_instance(inst, oracle))
        .collect();
    parts
        .into_iter()
        .fold(ScanReport::default(), |mut acc, part| {
            acc.absorb(part);
            acc
        })
}

pub fn scan<W: Weight>(spec: &ScanSpec) -> Result<ScanReport> {
    Ok(scan_instances(&instances::<W>(spec)?, spec.oracle))
}
