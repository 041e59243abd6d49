//! The worked example: PG(3, 2) minus a point, weighted so that (i), (ii)
//! and (iii)' hold while (iii) fails, then repaired by swapping weights on
//! two lines.

use serde::{Deserialize, Serialize};

use crate::cogirth::{classify_cocircuits, CoType};
use crate::geometry::{embed_in_pg, Hyperplane, Point, ProjectivePointSet};
use crate::gf::FieldSpec;
use crate::linalg::dot;
use crate::matroid::WeightedRepMatroid;

use super::theorems::check_main_theorem;
use super::{CheckKind, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Phase {
    Before,
    After,
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Phase::Before => "before",
            Phase::After => "after",
        })
    }
}

/// The numbers the example quotes, recomputed from the instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleFacts<W> {
    pub phase: Phase,
    /// The deleted point `p`.
    pub deleted_point: Point,
    /// Normal covector of the hyperplane `H` through `p`.
    pub hyperplane: Point,
    /// `|H - p|`, the elements that start with weight 2.
    pub heavy_elements: usize,
    /// `|C*|`, the complement of `H`.
    pub light_elements: usize,
    pub c_star_labels: Vec<usize>,
    pub c_star_weight: W,
    pub total_weight: W,
    /// `q^{r-1}` times the largest weight.
    pub max_weight_term: W,
    pub min_type_i_weight: Option<W>,
    pub min_type_ii_weight: Option<W>,
    pub max_type_ii_weight: Option<W>,
    /// The two lines through `p` whose other points swapped weights.
    pub swapped_lines: Vec<Vec<Point>>,
}

struct Construction {
    matroid: WeightedRepMatroid<u64>,
    p: Point,
    h: Hyperplane,
    swapped: Vec<Vec<Point>>,
}

/// Least line through `p` (as a sorted point list) all of whose points lie
/// in `allowed`.
fn least_line_through(field: &FieldSpec, p: &Point, allowed: &ProjectivePointSet) -> Vec<Point> {
    allowed
        .points()
        .iter()
        .filter(|x| *x != p)
        .map(|x| ProjectivePointSet::span_of(field, p.len(), &[p.clone(), x.clone()]))
        .filter(|line| line.is_subset(allowed))
        .map(|line| line.points().to_vec())
        .min()
        .expect("a line through p exists")
}

fn construct(phase: Phase) -> Construction {
    let f2 = FieldSpec::new(2).expect("GF(2)");
    let r = 4;
    let pg = ProjectivePointSet::pg(&f2, r).expect("PG(3,2)");
    let p: Point = vec![0, 0, 0, 1];
    let points = ProjectivePointSet::bose_burton(&f2, r, 1).expect("PG(3,2) - p");
    let normal = ProjectivePointSet::pg(&f2, r)
        .expect("covectors")
        .points()
        .iter()
        .find(|c| dot(&f2, c, &p) == 0)
        .cloned()
        .expect("a hyperplane through p");
    let h = Hyperplane { normal };
    let mut weights: Vec<u64> = points
        .points()
        .iter()
        .map(|x| if h.contains(&f2, x) { 2 } else { 1 })
        .collect();

    let mut swapped = Vec::new();
    if phase == Phase::After {
        let in_h = pg.filter(|x| h.contains(&f2, x));
        let off_h = pg.filter(|x| x == &p || !h.contains(&f2, x));
        let light = least_line_through(&f2, &p, &off_h);
        let heavy = least_line_through(&f2, &p, &in_h);
        for line in [&light, &heavy] {
            for x in line.iter().filter(|x| **x != p) {
                let i = points.points().binary_search(x).expect("point of M");
                weights[i] = 3 - weights[i];
            }
        }
        swapped = vec![light, heavy];
    }
    let matroid = points
        .to_matroid()
        .reweighted(weights)
        .expect("positive weights");
    Construction {
        matroid,
        p,
        h,
        swapped,
    }
}

/// The weighted matroid of the example in the given phase, elements in
/// lexicographic point order.
pub fn paper_example_matroid(phase: Phase) -> WeightedRepMatroid<u64> {
    construct(phase).matroid
}

/// Main-theorem report for the example, with the example's quoted numbers
/// attached.
pub fn paper_example(phase: Phase) -> VerificationReport<u64> {
    let Construction {
        matroid: m,
        p,
        h,
        swapped,
    } = construct(phase);
    let field = m.field().clone();
    let emb = embed_in_pg(&m).expect("simple");
    let in_h = emb.positions_in(&h);
    let c_star: Vec<usize> = (0..m.len()).filter(|i| !in_h.contains(i)).collect();
    let classified = classify_cocircuits(&m, &emb).expect("embedding of m");
    let weights_of = |t: CoType| {
        classified
            .iter()
            .filter(move |c| c.cotype == t)
            .map(|c| c.weight)
    };
    let max = m.weights().iter().copied().max().unwrap_or(0);

    let facts = ExampleFacts {
        phase,
        deleted_point: p,
        hyperplane: h.normal.clone(),
        heavy_elements: in_h.len(),
        light_elements: c_star.len(),
        c_star_labels: c_star.iter().map(|&i| m.labels()[i]).collect(),
        c_star_weight: m.weight_of(c_star.iter().copied()),
        total_weight: m.total_weight(),
        max_weight_term: (field.q() as u64).pow(m.rank() as u32 - 1) * max,
        min_type_i_weight: weights_of(CoType::TypeI).min(),
        min_type_ii_weight: weights_of(CoType::TypeII).min(),
        max_type_ii_weight: weights_of(CoType::TypeII).max(),
        swapped_lines: swapped,
    };
    let mut report =
        check_main_theorem(&m).expect("PG(3,2) - p is simple and not a projective geometry");
    report.check = CheckKind::PaperExample;
    report.instance = format!("PG(3,2) - p, weights {phase} the swap");
    report.example = Some(facts);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Witness;

    #[test]
    fn before_swap() {
        let r = paper_example(Phase::Before);
        let facts = r.example.as_ref().unwrap();
        assert_eq!((facts.heavy_elements, facts.light_elements), (6, 8));
        assert_eq!(
            (
                facts.total_weight,
                facts.c_star_weight,
                facts.max_weight_term
            ),
            (20, 8, 16)
        );
        assert_eq!(facts.hyperplane, vec![0, 0, 1, 0]);
        assert_eq!((r.total_weight, r.cogirth), (20, 8));
        assert!(r.bound_holds && !r.equality);
        assert_eq!((r.bound_lhs, r.bound_rhs), (20, 16));
        assert!(r.condition_i.as_ref().unwrap().holds);
        assert!(r.condition_ii.as_ref().unwrap().holds);
        assert!(r.condition_iii_prime.as_ref().unwrap().holds);
        let iii = r.condition_iii.as_ref().unwrap();
        assert!(!iii.holds);
        assert!(
            matches!(&iii.witness, Some(Witness::Restriction { labels, weight: 8, rest_weight: 12 }) if labels == &facts.c_star_labels)
        );
        assert_eq!(facts.max_type_ii_weight, Some(10));
        assert_eq!(facts.min_type_ii_weight, Some(10));
        assert!(r.passed(), "{:?}", r.inconsistencies());
    }

    #[test]
    fn after_swap() {
        let r = paper_example(Phase::After);
        let facts = r.example.as_ref().unwrap();
        assert_eq!(facts.total_weight, 20);
        assert_eq!(facts.swapped_lines.len(), 2);
        assert!(facts.min_type_i_weight.unwrap() >= 10);
        assert_eq!(
            (facts.min_type_ii_weight, facts.max_type_ii_weight),
            (Some(10), Some(10))
        );
        assert_eq!(r.cogirth, 10);
        assert!(r.equality);
        for c in [
            &r.condition_i,
            &r.condition_ii,
            &r.condition_iii,
            &r.condition_iii_prime,
        ] {
            assert!(c.as_ref().unwrap().holds);
        }
        assert_eq!(r.consistency, Some(true));
        assert!(r.passed());
    }

    #[test]
    fn swap_lines_are_the_least_ones() {
        let facts = paper_example(Phase::After).example.unwrap();
        let p = vec![0, 0, 0, 1];
        assert_eq!(
            facts.swapped_lines[0],
            vec![p.clone(), vec![0, 0, 1, 0], vec![0, 0, 1, 1]]
        );
        assert_eq!(
            facts.swapped_lines[1],
            vec![p, vec![0, 1, 0, 0], vec![0, 1, 0, 1]]
        );
    }
}
