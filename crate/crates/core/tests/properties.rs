use cogirth_core::cli::file::{parse_matroid, write_matroid};
use cogirth_core::cogirth::{classify_cocircuits, cocircuits, cogirth, cogirth_oracle, CoType};
use cogirth_core::geometry::{
    embed_in_pg, hyperplanes_containing, pk1_copies_containing, ProjectivePointSet,
};
use cogirth_core::gf::FieldSpec;
use cogirth_core::verify::{check_main_theorem, verify_auto, ScanSpec};
use cogirth_core::{GFMatrix, Matroid};
use proptest::prelude::*;

fn gf(q: u32) -> FieldSpec {
    FieldSpec::new(q).unwrap()
}

/// A random matrix over GF(q), q in {2,3,4,5}, with positive weights; may
/// have loops and parallel elements.
fn small_matroid() -> impl Strategy<Value = Matroid> {
    (
        prop::sample::select(vec![2u32, 3, 4, 5]),
        1usize..=4,
        1usize..=9,
    )
        .prop_flat_map(|(q, rows, n)| {
            (
                prop::collection::vec(prop::collection::vec(0..q as u8, n), rows),
                prop::collection::vec(1u64..=5, n),
            )
                .prop_map(move |(rows, w)| {
                    Matroid::from_matrix(GFMatrix::from_rows(&gf(q), &rows).unwrap(), Some(w))
                        .unwrap()
                })
        })
}

/// A simple matroid given by a random point subset of PG(r-1, q) with
/// random weights, presented in a random basis.
fn simple_matroid() -> impl Strategy<Value = (Matroid, Vec<Vec<u8>>)> {
    (prop::sample::select(vec![(2u32, 3usize), (2, 4), (3, 2), (3, 3), (4, 2), (4, 3)]))
        .prop_flat_map(|(q, r)| {
            let pg = ProjectivePointSet::pg(&gf(q), r).unwrap();
            let n = pg.len();
            (
                Just((q, r, pg)),
                prop::collection::vec(any::<bool>(), n),
                prop::collection::vec(1u64..=4, n),
                prop::collection::vec(prop::collection::vec(0..q as u8, r), r),
            )
                .prop_filter_map(
                    "full rank with an invertible change of basis",
                    |((q, r, pg), keep, w, basis)| {
                        let field = gf(q);
                        let pts: Vec<Vec<u8>> = pg
                            .points()
                            .iter()
                            .zip(&keep)
                            .filter(|(_, k)| **k)
                            .map(|(p, _)| p.clone())
                            .collect();
                        let weights: Vec<u64> = w
                            .iter()
                            .zip(&keep)
                            .filter(|(_, k)| **k)
                            .map(|(x, _)| *x)
                            .collect();
                        if pts.is_empty() {
                            return None;
                        }
                        let a = GFMatrix::from_columns(&field, r, &pts).unwrap();
                        let b = GFMatrix::from_rows(&field, &basis).unwrap();
                        if a.rank() != r || b.rank() != r {
                            return None;
                        }
                        let m = Matroid::from_matrix(a, Some(weights.clone())).unwrap();
                        let moved =
                            Matroid::from_matrix(b.mul(m.columns()).unwrap(), Some(weights))
                                .unwrap();
                        Some((m, moved.columns().to_rows()))
                    },
                )
        })
}

/// A Bose-Burton geometry with random weights.
fn bose_burton() -> impl Strategy<Value = Matroid> {
    prop::sample::select(vec![
        (2u32, 2usize),
        (2, 3),
        (2, 4),
        (3, 2),
        (3, 3),
        (4, 3),
        (5, 2),
    ])
    .prop_flat_map(|(q, r)| (Just((q, r)), 1..r))
    .prop_flat_map(|((q, r), k)| {
        let m: Matroid = ProjectivePointSet::bose_burton(&gf(q), r, k)
            .unwrap()
            .to_matroid();
        let n = m.len();
        (Just(m), prop::collection::vec(1u64..=4, n))
    })
    .prop_map(|(m, w)| m.reweighted(w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cogirth_matches_oracle(m in small_matroid()) {
        prop_assume!(m.rank() >= 1);
        prop_assert_eq!(cogirth(&m).unwrap().0, cogirth_oracle(&m).unwrap());
    }

    #[test]
    fn cocircuit_complements_are_hyperplanes(m in small_matroid()) {
        prop_assume!(m.rank() >= 1);
        let r = m.rank();
        for c in cocircuits(&m).unwrap() {
            let h = m.columns().select_columns(&c.hyperplane);
            prop_assert_eq!(h.rank(), r - 1);
            for &e in &c.support {
                let mut with = c.hyperplane.clone();
                with.push(e);
                prop_assert_eq!(m.columns().select_columns(&with).rank(), r);
            }
        }
    }

    #[test]
    fn contraction_does_not_lower_cogirth(m in small_matroid(), pick in 0usize..9, mask in 0u32..512) {
        let s = m.simplify();
        prop_assume!(s.is_ok());
        let s = s.unwrap();
        prop_assume!(s.rank() >= 2);
        let e = s.labels()[pick % s.len()];
        let g = cogirth(&s).unwrap().0;
        let c = s.weighted_contract(&[e]).unwrap();
        prop_assert!(cogirth(&c).unwrap().0 >= g);

        let y: Vec<usize> = s.labels().iter().enumerate()
            .filter(|(i, l)| **l != e && mask >> i & 1 == 1)
            .map(|(_, l)| *l)
            .collect();
        let d = s.delete(&y).unwrap();
        prop_assume!(d.position(e).is_some());
        let dc = d.weighted_contract(&[e]).unwrap();
        prop_assume!(dc.rank() >= 1);
        let w_y: u64 = y.iter().map(|l| s.weights()[s.position(*l).unwrap()]).sum();
        prop_assert!(cogirth(&dc).unwrap().0 + w_y >= g);
    }

    #[test]
    fn checks_ignore_the_choice_of_basis((m, moved_rows) in simple_matroid()) {
        let moved = Matroid::from_matrix(GFMatrix::from_rows(m.field(), &moved_rows).unwrap(), Some(m.weights().to_vec())).unwrap();
        let a = verify_auto(&m).unwrap();
        let b = verify_auto(&moved).unwrap();
        prop_assert!(a.passed() && b.passed());
        prop_assert_eq!(a.check, b.check);
        prop_assert_eq!((a.cogirth, a.equality, a.bound_holds), (b.cogirth, b.equality, b.bound_holds));
        let holds = |r: &cogirth_core::Report| [&r.condition_i, &r.condition_ii, &r.condition_iii, &r.condition_iii_prime]
            .map(|c| c.as_ref().map(|c| c.holds));
        prop_assert_eq!(holds(&a), holds(&b));
        prop_assert_eq!(a.type_counts, b.type_counts);
    }

    #[test]
    fn file_round_trip(m in small_matroid()) {
        let back: Matroid = parse_matroid(&write_matroid(&m)).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn report_json_round_trip((m, _) in simple_matroid()) {
        let report = verify_auto(&m).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let back: cogirth_core::Report = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, report);
    }

    #[test]
    fn type_counts_under_condition_i(m in bose_burton()) {
        let emb = embed_in_pg(&m).unwrap();
        let (k, flat) = emb.complement().flat_rank();
        let r = m.rank();
        prop_assert!(flat && k >= 1 && k < r);
        let q = m.field().q() as u64;
        let classified = classify_cocircuits(&m, &emb).unwrap();
        let type_i = classified.iter().filter(|c| c.cotype == CoType::TypeI).count() as u64;
        let total = classified.len() as u64;
        let p = |j: usize| (q.pow(j as u32) - 1) / (q - 1);
        if k + 1 < r {
            prop_assert_eq!(total, p(r));
            prop_assert_eq!(type_i, p(r - k));
        } else {
            prop_assert_eq!(type_i, 0);
            prop_assert_eq!(total, p(r) - 1);
        }
        let report = check_main_theorem(&m).unwrap();
        prop_assert!(report.passed());
    }
}

#[test]
fn projective_geometry_cocircuits() {
    for (q, r) in [
        (2u32, 2usize),
        (2, 3),
        (2, 4),
        (3, 2),
        (3, 3),
        (4, 2),
        (4, 3),
        (5, 2),
    ] {
        let pg: Matroid = ProjectivePointSet::pg(&gf(q), r).unwrap().to_matroid();
        let qq = q as u64;
        let cs = cocircuits(&pg).unwrap();
        assert_eq!(cs.len() as u64, (qq.pow(r as u32) - 1) / (qq - 1));
        assert!(cs.iter().all(|c| c.weight == qq.pow(r as u32 - 1)));
    }
}

#[test]
fn projective_geometry_is_simple_with_full_lines() {
    for (q, r) in [(2u32, 3usize), (2, 4), (3, 3), (4, 3), (5, 3)] {
        let field = gf(q);
        let pg = ProjectivePointSet::pg(&field, r).unwrap();
        let m: Matroid = pg.to_matroid();
        assert!(m.is_simple());
        assert_eq!(m.rank(), r);
        let pts = pg.points();
        for b in &pts[1..] {
            let line = ProjectivePointSet::span_of(&field, r, &[pts[0].clone(), b.clone()]);
            assert_eq!(line.len(), q as usize + 1);
        }
    }
}

#[test]
fn contracting_a_point_of_pg() {
    for (q, r) in [
        (2u32, 2usize),
        (2, 3),
        (2, 4),
        (2, 5),
        (3, 3),
        (3, 4),
        (4, 3),
        (5, 3),
    ] {
        let pg: Matroid = ProjectivePointSet::pg(&gf(q), r).unwrap().to_matroid();
        for e in [0, pg.len() - 1] {
            let c = pg.weighted_contract(&[e]).unwrap();
            assert_eq!(c.rank(), r - 1);
            assert!(c.weights().iter().all(|&w| w == q as u64), "q={q} r={r}");
            let expected = ProjectivePointSet::pg(&gf(q), r - 1).unwrap().len();
            assert_eq!(c.len(), expected);
            assert!(cogirth_core::geometry::is_full_pg(&c));
        }
    }
}

#[test]
fn copies_partition_and_meet_hyperplanes_in_affine_pieces() {
    for q in [2u32, 3] {
        let field = gf(q);
        let qq = q as u64;
        for r in 2..=5 {
            let pg = ProjectivePointSet::pg(&field, r).unwrap();
            for k in 1..r {
                let flat = pg.difference(&ProjectivePointSet::bose_burton(&field, r, k).unwrap());
                let copies = pk1_copies_containing(&flat).unwrap();
                assert_eq!(copies.len() as u64, (qq.pow((r - k) as u32) - 1) / (qq - 1));
                let pieces: Vec<ProjectivePointSet> =
                    copies.iter().map(|c| c.difference(&flat)).collect();
                let mut union: Vec<Vec<u8>> =
                    pieces.iter().flat_map(|p| p.points().to_vec()).collect();
                union.sort();
                union.dedup();
                assert_eq!(
                    union.len() as u64,
                    pieces.len() as u64 * qq.pow(k as u32),
                    "disjoint"
                );
                assert_eq!(union, pg.difference(&flat).points().to_vec(), "cover");

                let all = hyperplanes_containing(&ProjectivePointSet::empty(&field, r)).unwrap();
                for h in &all {
                    let contains_flat = flat.points().iter().all(|p| h.contains(&field, p));
                    for piece in &pieces {
                        let off = piece
                            .points()
                            .iter()
                            .filter(|p| !h.contains(&field, p))
                            .count() as u64;
                        if contains_flat {
                            assert!(off == 0 || off == qq.pow(k as u32));
                        } else {
                            assert_eq!(off, (qq - 1) * qq.pow(k as u32 - 1));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn empty_scan_is_vacuous() {
    let spec = ScanSpec {
        r_min: 4,
        r_max: 3,
        ..ScanSpec::exhaustive(3, 3)
    };
    let report = cogirth_core::verify::scan::<u64>(&spec).unwrap();
    assert_eq!(report.instances, 0);
    assert!(report.passed());
}
