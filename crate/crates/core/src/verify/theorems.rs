use crate::cogirth::{classify_cocircuits, cogirth, CoType, Cocircuit};
use crate::error::{Error, Result};
use crate::geometry::{
    embed_in_pg, hyperplanes_containing, is_full_pg, pk1_copies_containing, Embedding,
    ProjectivePointSet,
};
use crate::linalg::projective_count;
use crate::matroid::WeightedRepMatroid;
use crate::verify::affine::restriction_inequality_brute_force;
use crate::{Ratio, Weight};

use super::{CheckKind, Condition, TypeCounts, VerificationReport, Witness};

/// Largest ground set for which (iii) is also checked over all abstract
/// affine restrictions.
pub const RESTRICTION_ORACLE_MAX: usize = 10;

fn cnt<W: Weight>(n: u64) -> W {
    W::from_count(n)
}

pub(crate) fn describe<W: Weight>(m: &WeightedRepMatroid<W>) -> String {
    format!(
        "GF({}) rank {}, n={}, w={}",
        m.field().q(),
        m.rank(),
        m.len(),
        m.total_weight()
    )
}

fn cocircuit_witness<W: Weight>(m: &WeightedRepMatroid<W>, c: &Cocircuit<W>) -> Witness<W> {
    Witness::Cocircuit {
        labels: c.support_labels(m),
        weight: c.weight,
    }
}

/// Common part of every report: cogirth, ratio and a cross-multiplied bound
/// `w/g >= numer/denom`.
fn base_report<W: Weight>(
    m: &WeightedRepMatroid<W>,
    check: CheckKind,
    numer: W,
    denom: W,
) -> Result<VerificationReport<W>> {
    let (g, witness) = cogirth(m)?;
    let w = m.total_weight();
    let bound_lhs = denom * w;
    let bound_rhs = numer * g;
    Ok(VerificationReport {
        check,
        instance: describe(m),
        q: m.field().q(),
        rank: m.rank(),
        elements: m.len(),
        total_weight: w,
        cogirth: g,
        ratio: Ratio::new(w, g),
        bound: Ratio::new(numer, denom),
        bound_lhs,
        bound_rhs,
        bound_holds: bound_lhs >= bound_rhs,
        equality: bound_lhs == bound_rhs,
        witness: cocircuit_witness(m, &witness),
        condition_i: None,
        condition_ii: None,
        condition_iii: None,
        condition_iii_prime: None,
        consistency: None,
        complement_rank: None,
        type_counts: None,
        checks: Vec::new(),
        example: None,
    })
}

fn require_simple<W: Weight>(m: &WeightedRepMatroid<W>) -> Result<()> {
    if m.is_simple() {
        Ok(())
    } else {
        Err(Error::NotSimple)
    }
}

fn first_unequal<W: Weight>(m: &WeightedRepMatroid<W>, positions: &[usize]) -> Option<Witness<W>> {
    let &first = positions.first()?;
    let w0 = m.weights()[first];
    positions
        .iter()
        .find(|&&i| m.weights()[i] != w0)
        .map(|&i| Witness::UnequalWeights {
            labels: [m.labels()[first], m.labels()[i]],
            weights: [w0, m.weights()[i]],
        })
}

/// Lemma for simple rank-2 matroids: `w/g >= n/(n-1)`, with equality
/// exactly when the weights are constant; also `g = w - max weight`.
pub fn check_rank2<W: Weight>(m: &WeightedRepMatroid<W>) -> Result<VerificationReport<W>> {
    require_simple(m)?;
    let r = m.rank();
    if r != 2 {
        return Err(Error::RankMismatch {
            expected: 2,
            got: r,
        });
    }
    let n = m.len() as u64;
    let mut report = base_report(m, CheckKind::Rank2, cnt(n), cnt(n - 1))?;
    let all = (0..m.len()).collect::<Vec<_>>();
    let unequal = first_unequal(m, &all);
    let constant = unequal.is_none();
    let max = m.weights().iter().copied().max().unwrap_or_default();
    report.consistency = Some(report.equality == constant);
    report.checks.push(Condition::new(
        "constant_weights_iff_equality",
        report.equality == constant,
        unequal,
    ));
    report.checks.push(Condition::flag(
        "cogirth_is_total_minus_max",
        report.cogirth == report.total_weight - max,
    ));
    Ok(report)
}

/// Full projective geometry: `w/g >= (q^r-1)/(q^{r-1}(q-1))`, with equality
/// exactly when the weights are constant.
pub fn check_pg_proposition<W: Weight>(m: &WeightedRepMatroid<W>) -> Result<VerificationReport<W>> {
    if !is_full_pg(m) {
        return Err(Error::NotProjectiveGeometry);
    }
    let q = m.field().q() as u64;
    let r = m.rank() as u32;
    let numer = q.pow(r) - 1;
    let denom = q.pow(r - 1) * (q - 1);
    let mut report = base_report(m, CheckKind::Pg, cnt(numer), cnt(denom))?;
    let all = (0..m.len()).collect::<Vec<_>>();
    let unequal = first_unequal(m, &all);
    let constant = unequal.is_none();
    report.consistency = Some(report.equality == constant);
    report.checks.push(Condition::new(
        "constant_weights_iff_equality",
        report.equality == constant,
        unequal,
    ));
    Ok(report)
}

/// Condition (i): the complement of the embedding is a flat. Returns its rank
/// when it is.
fn condition_i<W: Weight>(
    m: &WeightedRepMatroid<W>,
    emb: &Embedding,
) -> (Condition<W>, Option<usize>) {
    let complement = emb.complement();
    let (k, is_flat) = complement.flat_rank();
    if is_flat && k >= 1 && k < emb.rank() {
        return (Condition::flag("i", true), Some(k));
    }
    let pts = complement.points();
    let mut witness = None;
    'outer: for (a_idx, a) in pts.iter().enumerate() {
        for b in &pts[a_idx + 1..] {
            let line =
                ProjectivePointSet::span_of(emb.field(), emb.rank(), &[a.clone(), b.clone()]);
            let hit = emb.positions_within(&line);
            if !hit.is_empty() {
                let mut labels: Vec<usize> = hit.iter().map(|&i| m.labels()[i]).collect();
                labels.sort_unstable();
                witness = Some(Witness::Line {
                    complement_points: vec![a.clone(), b.clone()],
                    matroid_labels: labels,
                });
                break 'outer;
            }
        }
    }
    (Condition::new("i", false, witness), None)
}

/// Condition (ii): weights are constant on each copy of PG(k, q) that
/// contains the complement.
fn condition_ii<W: Weight>(m: &WeightedRepMatroid<W>, emb: &Embedding) -> Result<Condition<W>> {
    for copy in pk1_copies_containing(emb.complement())? {
        let inside = emb.positions_within(&copy);
        if let Some(w) = first_unequal(m, &inside) {
            return Ok(Condition::new("ii", false, Some(w)));
        }
    }
    Ok(Condition::flag("ii", true))
}

/// Condition (iii) over the affine restrictions that are complements of PG
/// hyperplanes: `w(N) >= (q-1)·w(E(M) - N)` for every hyperplane `H`
/// containing the complement, `N = E(M) - H`.
fn condition_iii<W: Weight>(m: &WeightedRepMatroid<W>, emb: &Embedding) -> Result<Condition<W>> {
    let q1: W = cnt(m.field().q() as u64 - 1);
    let w = m.total_weight();
    for h in hyperplanes_containing(&emb.complement().closure())? {
        let inside = emb.positions_in(&h);
        let w_in = m.weight_of(inside.iter().copied());
        let w_out = w - w_in;
        if w_out < q1 * w_in {
            let mut labels: Vec<usize> = (0..m.len())
                .filter(|i| !inside.contains(i))
                .map(|i| m.labels()[i])
                .collect();
            labels.sort_unstable();
            let witness = Witness::Restriction {
                labels,
                weight: w_out,
                rest_weight: w_in,
            };
            return Ok(Condition::new("iii", false, Some(witness)));
        }
    }
    Ok(Condition::flag("iii", true))
}

/// Condition (iii)': `q^{r-1}·w(e) <= w(M)` for every element.
fn condition_iii_prime<W: Weight>(m: &WeightedRepMatroid<W>) -> Condition<W> {
    let q = m.field().q() as u64;
    let scale: W = cnt(q.pow(m.rank() as u32 - 1));
    let heaviest = (0..m.len()).max_by_key(|&i| (m.weights()[i], std::cmp::Reverse(i)));
    match heaviest {
        Some(i) if scale * m.weights()[i] > m.total_weight() => Condition::new(
            "iii_prime",
            false,
            Some(Witness::Element {
                label: m.labels()[i],
                weight: m.weights()[i],
            }),
        ),
        _ => Condition::flag("iii_prime", true),
    }
}

/// `q·w(C) = (q-1)·w(M)` for every type-II cocircuit.
fn typeii_condition<W: Weight>(
    m: &WeightedRepMatroid<W>,
    classified: &[Cocircuit<W>],
) -> Condition<W> {
    let q: W = cnt(m.field().q() as u64);
    let target = (q - W::one()) * m.total_weight();
    let bad = classified
        .iter()
        .find(|c| c.cotype == CoType::TypeII && q * c.weight != target);
    Condition::new(
        "type_ii_sublemma",
        bad.is_none(),
        bad.map(|c| cocircuit_witness(m, c)),
    )
}

fn type_counts<W: Weight>(classified: &[Cocircuit<W>]) -> TypeCounts<W> {
    let of = |t: CoType| {
        classified
            .iter()
            .filter(move |c| c.cotype == t)
            .map(|c| c.weight)
    };
    TypeCounts {
        type_i: of(CoType::TypeI).count(),
        type_ii: of(CoType::TypeII).count(),
        min_type_i_weight: of(CoType::TypeI).min(),
        min_type_ii_weight: of(CoType::TypeII).min(),
        max_type_ii_weight: of(CoType::TypeII).max(),
    }
}

fn embed_non_pg<W: Weight>(m: &WeightedRepMatroid<W>) -> Result<Embedding> {
    require_simple(m)?;
    let emb = embed_in_pg(m)?;
    if emb.complement().is_empty() {
        return Err(Error::IsProjectiveGeometry {
            rank: emb.rank(),
            q: m.field().q(),
        });
    }
    Ok(emb)
}

/// Main bound for simple matroids that are not a full projective geometry:
/// `w/g >= q/(q-1)`, with equality exactly when (i), (ii) and (iii) hold.
pub fn check_main_theorem<W: Weight>(m: &WeightedRepMatroid<W>) -> Result<VerificationReport<W>> {
    let emb = embed_non_pg(m)?;
    main_with_embedding(m, &emb)
}

fn main_with_embedding<W: Weight>(
    m: &WeightedRepMatroid<W>,
    emb: &Embedding,
) -> Result<VerificationReport<W>> {
    let q = m.field().q() as u64;
    let r = emb.rank();
    let qw: W = cnt(q);
    let q1: W = cnt(q - 1);
    let w = m.total_weight();
    let mut report = base_report(m, CheckKind::Main, qw, q1)?;

    let (cond_i, k) = condition_i(m, emb);
    let cond_ii = match k {
        Some(_) => Some(condition_ii(m, emb)?),
        None => None,
    };
    let cond_iii = condition_iii(m, emb)?;
    let cond_iii_prime = condition_iii_prime(m);

    let characterized = cond_i.holds && cond_ii.as_ref().is_some_and(|c| c.holds) && cond_iii.holds;
    report.consistency = Some(report.equality == characterized);

    let classified = classify_cocircuits(m, emb)?;
    let min_cocircuit = classified.iter().map(|c| c.weight).min();
    report.checks.push(Condition::flag(
        "cogirth_is_min_cocircuit",
        min_cocircuit == Some(report.cogirth),
    ));

    if let Some(k) = k {
        let counts = type_counts(&classified);
        let hyperplanes = projective_count(q, r) as usize;
        let counts_ok = if k + 1 == r {
            counts.type_i == 0 && counts.type_i + counts.type_ii == hyperplanes - 1
        } else {
            counts.type_i == projective_count(q, r - k) as usize
                && counts.type_i + counts.type_ii == hyperplanes
        };
        report
            .checks
            .push(Condition::flag("type_counts", counts_ok));

        // (iii) restated on type-I cocircuits: q·w(C) >= (q-1)·w(M).
        let bad = classified
            .iter()
            .find(|c| c.cotype == CoType::TypeI && qw * c.weight < q1 * w);
        report.checks.push(Condition::new(
            "iii_type_i_formulation",
            bad.is_none() == cond_iii.holds,
            bad.map(|c| cocircuit_witness(m, c)),
        ));
        if cond_ii.as_ref().is_some_and(|c| c.holds) {
            report.checks.push(typeii_condition(m, &classified));
        }
        report.complement_rank = Some(k);
        report.type_counts = Some(counts);
    }

    report.checks.push(Condition::new(
        "iii_prime_implied",
        !report.equality || cond_iii_prime.holds,
        cond_iii_prime.witness.clone(),
    ));

    if m.len() <= RESTRICTION_ORACLE_MAX {
        let brute = restriction_inequality_brute_force(m)?;
        report.checks.push(Condition::flag(
            "iii_restriction_oracle",
            brute == cond_iii.holds,
        ));
    }

    report.condition_i = Some(cond_i);
    report.condition_ii = cond_ii;
    report.condition_iii = Some(cond_iii);
    report.condition_iii_prime = Some(cond_iii_prime);
    Ok(report)
}

/// Condition (iii)' checked alongside the main statement; equality forces it.
pub fn check_condition_iii_prime<W: Weight>(
    m: &WeightedRepMatroid<W>,
) -> Result<VerificationReport<W>> {
    let mut report = check_main_theorem(m)?;
    report.check = CheckKind::IiiPrime;
    Ok(report)
}

/// Under (i) and (ii), every type-II cocircuit weighs exactly `(q-1)/q·w(M)`.
pub fn check_typeii_sublemma<W: Weight>(
    m: &WeightedRepMatroid<W>,
    emb: &Embedding,
) -> Result<VerificationReport<W>> {
    require_simple(m)?;
    let q = m.field().q() as u64;
    let mut report = base_report(m, CheckKind::TypeiiSublemma, cnt(q), cnt(q - 1))?;
    let (cond_i, k) = condition_i(m, emb);
    let Some(k) = k else {
        return Err(Error::Precondition("condition (i) fails".into()));
    };
    let cond_ii = condition_ii(m, emb)?;
    if !cond_ii.holds {
        return Err(Error::Precondition("condition (ii) fails".into()));
    }
    let classified = classify_cocircuits(m, emb)?;
    report.checks.push(typeii_condition(m, &classified));
    report.type_counts = Some(type_counts(&classified));
    report.complement_rank = Some(k);
    report.condition_i = Some(cond_i);
    report.condition_ii = Some(cond_ii);
    Ok(report)
}

/// Picks the applicable statement for an arbitrary loopless matroid, after
/// simplifying it with class weights: rank 2, then full projective geometry,
/// otherwise the main bound.
pub fn verify_auto<W: Weight>(m: &WeightedRepMatroid<W>) -> Result<VerificationReport<W>> {
    let loops = m.loops();
    if !loops.is_empty() {
        return Err(Error::HasLoops(loops));
    }
    let s = m.simplify()?;
    if s.rank() == 2 {
        check_rank2(&s)
    } else if is_full_pg(&s) {
        check_pg_proposition(&s)
    } else {
        check_main_theorem(&s)
    }
}
