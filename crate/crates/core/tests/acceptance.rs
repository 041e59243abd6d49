//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::time::{Duration, Instant};

use cogirth_core::cogirth::{cogirth, cogirth_oracle, CoType};
use cogirth_core::geometry::{
    embed_in_pg, hyperplanes_containing, pk1_copies_containing, ProjectivePointSet,
};
use cogirth_core::gf::FieldSpec;
use cogirth_core::verify::{
    check_pg_proposition, check_rank2, instances, paper_example, scan_instances, Phase, ScanSpec,
};
use cogirth_core::{Fraction, Matroid, ScanReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn gf(q: u32) -> FieldSpec {
    FieldSpec::new(q).unwrap()
}

fn pow(q: u64, e: usize) -> u64 {
    q.pow(e as u32)
}

fn example_before() -> Outcome {
    let r = paper_example(Phase::Before);
    let facts = r.example.as_ref().unwrap();
    let classified = {
        let m = cogirth_core::verify::paper_example_matroid(Phase::Before);
        let emb = embed_in_pg(&m).unwrap();
        cogirth_core::cogirth::classify_cocircuits(&m, &emb).unwrap()
    };
    let c_star_is_type_i = classified.iter().any(|c| {
        c.cotype == CoType::TypeI && c.weight == 8 && c.support.len() == facts.c_star_labels.len()
    });
    let holds =
        |c: &Option<cogirth_core::verify::Condition<u64>>| c.as_ref().is_some_and(|c| c.holds);
    let ok = r.total_weight == 20
        && facts.c_star_weight == 8
        && c_star_is_type_i
        && (r.bound_lhs, r.bound_rhs) == (20, 16)
        && r.bound_holds
        && !r.equality
        && holds(&r.condition_i)
        && holds(&r.condition_ii)
        && holds(&r.condition_iii_prime)
        && facts.max_weight_term == 16
        && !holds(&r.condition_iii)
        && r.passed();
    outcome(
        ok,
        format!(
            "w={} w(C*)={} lhs={} rhs={} 2^3*2={} (i)={} (ii)={} (iii)={} (iii)'={}",
            r.total_weight,
            facts.c_star_weight,
            r.bound_lhs,
            r.bound_rhs,
            facts.max_weight_term,
            holds(&r.condition_i),
            holds(&r.condition_ii),
            holds(&r.condition_iii),
            holds(&r.condition_iii_prime)
        ),
    )
}

fn example_after() -> Outcome {
    let m = cogirth_core::verify::paper_example_matroid(Phase::After);
    let emb = embed_in_pg(&m).unwrap();
    let classified = cogirth_core::cogirth::classify_cocircuits(&m, &emb).unwrap();
    let type_i_ok = classified
        .iter()
        .filter(|c| c.cotype == CoType::TypeI)
        .all(|c| c.weight >= 10);
    let type_ii_ok = classified
        .iter()
        .filter(|c| c.cotype == CoType::TypeII)
        .all(|c| c.weight == 10);
    let r = paper_example(Phase::After);
    let holds =
        |c: &Option<cogirth_core::verify::Condition<u64>>| c.as_ref().is_some_and(|c| c.holds);
    let ok = type_i_ok
        && type_ii_ok
        && r.cogirth == 10
        && r.ratio == Fraction::new(2, 1)
        && r.equality
        && holds(&r.condition_i)
        && holds(&r.condition_ii)
        && holds(&r.condition_iii)
        && r.consistency == Some(true)
        && r.passed();
    outcome(
        ok,
        format!(
            "g*={} ratio={} equality={} type-I>=10:{type_i_ok} type-II=10:{type_ii_ok}",
            r.cogirth, r.ratio, r.equality
        ),
    )
}

fn sweep_line(s: &ScanReport) -> String {
    format!(
        "{} instances ({} main), bound {} / characterization {} / (iii)' {} violations, {} equality cases",
        s.instances,
        s.main_instances,
        s.bound_violations,
        s.consistency_violations,
        s.iii_prime_violations,
        s.equality_cases
    )
}

fn exhaustive(sweep: &ScanReport) -> Outcome {
    let ok = sweep.main_instances > 30_000
        && sweep.bound_violations == 0
        && sweep.consistency_violations == 0
        && sweep.iii_prime_violations == 0
        && sweep.passed();
    outcome(ok, sweep_line(sweep))
}

fn randomized(sweeps: &[(u32, usize, ScanReport)]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (q, r, s) in sweeps {
        ok &= s.instances == 500
            && s.bound_violations == 0
            && s.consistency_violations == 0
            && s.iii_formulation_disagreements == 0
            && s.restriction_oracle_disagreements == 0
            && s.passed();
        parts.push(format!(
            "GF({q}) r={r}: {} checked, (iii) formulations compared {}+{} times, {} disagreements",
            s.instances,
            s.iii_formulation_comparisons,
            s.restriction_oracle_comparisons,
            s.iii_formulation_disagreements + s.restriction_oracle_disagreements
        ));
    }
    outcome(ok, parts.join("; "))
}

fn pg_proposition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut ok = true;
    let mut strict = 0;
    for (q, r) in [(2u32, 2usize), (2, 3), (2, 4), (3, 2), (3, 3)] {
        let pg: Matroid = ProjectivePointSet::pg(&gf(q), r).unwrap().to_matroid();
        let q = q as u64;
        let bound = Fraction::new(pow(q, r) - 1, pow(q, r - 1) * (q - 1));
        for c in [1, 2, 5] {
            let rep = check_pg_proposition(&pg.reweighted(vec![c; pg.len()]).unwrap()).unwrap();
            ok &= rep.ratio == bound && rep.equality && rep.passed();
        }
        for _ in 0..200 {
            let w: Vec<u64> = loop {
                let w: Vec<u64> = (0..pg.len()).map(|_| rng.random_range(1..=5)).collect();
                if w.iter().any(|&x| x != w[0]) {
                    break w;
                }
            };
            let rep = check_pg_proposition(&pg.reweighted(w).unwrap()).unwrap();
            let larger = rep.ratio > bound && !rep.equality;
            ok &= larger && rep.passed();
            strict += usize::from(larger);
        }
    }
    outcome(ok, format!("constant weights attain the bound on 5 geometries; {strict}/1000 non-constant weightings strictly larger"))
}

fn sublemma(sweeps: &[&ScanReport]) -> Outcome {
    let instances: usize = sweeps.iter().map(|s| s.sublemma_instances).sum();
    let violations: usize = sweeps.iter().map(|s| s.sublemma_violations).sum();
    outcome(
        instances > 0 && violations == 0,
        format!("{instances} instances with (i) and (ii), {violations} violations"),
    )
}

fn oracle(sweeps: &[&ScanReport]) -> Outcome {
    let mut compared: usize = sweeps.iter().map(|s| s.oracle_comparisons).sum();
    let mut discrepancies: usize = sweeps.iter().map(|s| s.oracle_discrepancies).sum();
    let mut extra = 0;
    let mut ranks_seen = Vec::new();
    for (i, q) in [2u32, 3, 4].into_iter().enumerate() {
        let quota = if i == 2 { 66 } else { 67 };
        // small instances of ranks 2..=5, taken round-robin
        let mut pools: Vec<Vec<Matroid>> = (2..=5)
            .map(|r| {
                let spec = ScanSpec::random(q, r, 200, 77 + q as u64, 5);
                instances::<u64>(&spec)
                    .unwrap()
                    .into_iter()
                    .map(|inst| inst.matroid)
                    .filter(|m| m.len() <= 12 && m.rank() <= 5)
                    .rev()
                    .collect()
            })
            .collect();
        let mut taken = 0;
        while taken < quota && pools.iter().any(|p| !p.is_empty()) {
            for pool in pools.iter_mut() {
                let Some(m) = pool.pop() else { continue };
                if taken == quota {
                    break;
                }
                let g = cogirth(&m).unwrap().0;
                discrepancies += usize::from(g != cogirth_oracle(&m).unwrap());
                ranks_seen.push(m.rank());
                taken += 1;
            }
        }
        extra += taken;
    }
    ranks_seen.sort_unstable();
    ranks_seen.dedup();
    compared += extra;
    outcome(extra == 200 && discrepancies == 0, format!("{compared} comparisons ({extra} extra over GF(2), GF(3), GF(4), ranks {ranks_seen:?}), {discrepancies} discrepancies"))
}

fn multisets(n: usize, max: u64) -> Vec<Vec<u64>> {
    fn go(n: usize, lo: u64, max: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if acc.len() == n {
            out.push(acc.clone());
            return;
        }
        for x in lo..=max {
            acc.push(x);
            go(n, x, max, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, max, &mut Vec::new(), &mut out);
    out
}

fn rank2() -> Outcome {
    let line: Matroid = ProjectivePointSet::pg(&gf(4), 2).unwrap().to_matroid();
    let mut count = 0;
    let mut violations = 0;
    for n in 2..=5 {
        let m = line.restrict(&(0..n).collect::<Vec<_>>());
        for w in multisets(n, 4) {
            let total: u64 = w.iter().sum();
            let max = *w.iter().max().unwrap();
            let constant = w.iter().all(|&x| x == w[0]);
            let rep = check_rank2(&m.reweighted(w).unwrap()).unwrap();
            let g = rep.cogirth;
            let n = n as u64;
            let ok = n * g <= (n - 1) * total
                && (n * g == (n - 1) * total) == constant
                && rep.equality == constant
                && g == total - max
                && rep.passed();
            violations += usize::from(!ok);
            count += 1;
        }
    }
    outcome(
        violations == 0,
        format!("{count} weight multisets, {violations} violations"),
    )
}

fn projective(q: u64, k: usize) -> u64 {
    (pow(q, k) - 1) / (q - 1)
}

fn geometry_counts() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for q in [2u32, 3, 4, 5] {
        let field = gf(q);
        let qq = q as u64;
        for r in 1..=5 {
            let pg = ProjectivePointSet::pg(&field, r).unwrap();
            let ag = ProjectivePointSet::ag(&field, r).unwrap();
            let mut ok = pg.len() as u64 == projective(qq, r) && ag.len() as u64 == pow(qq, r - 1);
            let empty = ProjectivePointSet::empty(&field, r);
            ok &= hyperplanes_containing(&empty).unwrap().len() as u64 == projective(qq, r);
            for k in 1..r {
                let bb = ProjectivePointSet::bose_burton(&field, r, k).unwrap();
                ok &= bb.len() as u64 == projective(qq, r) - projective(qq, k);
                let flat = pg.difference(&bb);
                ok &= hyperplanes_containing(&flat).unwrap().len() as u64 == projective(qq, r - k);
                let copies = pk1_copies_containing(&flat).unwrap();
                ok &= copies.len() as u64 == projective(qq, r - k);
                ok &= copies
                    .iter()
                    .all(|c| c.difference(&flat).len() as u64 == pow(qq, k));
                checked += 1;
            }
            if !ok {
                bad.push(format!("q={q} r={r}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("20 geometries, {checked} Bose-Burton cases, mismatches: {bad:?}"),
    )
}

fn main() {
    let mut results: Vec<(usize, &str, Outcome, Duration, Duration)> = Vec::new();
    let mut record = |n: usize, name: &'static str, limit: u64, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let out = f();
        results.push((n, name, out, start.elapsed(), Duration::from_secs(limit)));
    };

    record(1, "worked example, before the swap", 1, &mut example_before);
    record(2, "worked example, after the swap", 1, &mut example_after);

    let mut sweep3 = ScanReport::default();
    record(3, "exhaustive sweep over PG(3,2)", 60, &mut || {
        let spec = ScanSpec::exhaustive(2, 4);
        sweep3 = scan_instances(&instances::<u64>(&spec).unwrap(), true);
        exhaustive(&sweep3)
    });

    let mut sweep4 = Vec::new();
    record(4, "randomized weighted sweep", 60, &mut || {
        sweep4 = [(2u32, 3usize), (2, 4), (3, 3)]
            .into_iter()
            .map(|(q, r)| {
                let spec = ScanSpec::random(q, r, 500, 42, 5);
                (
                    q,
                    r,
                    scan_instances(&instances::<u64>(&spec).unwrap(), true),
                )
            })
            .collect();
        randomized(&sweep4)
    });

    record(
        5,
        "projective-geometry proposition",
        30,
        &mut pg_proposition,
    );
    let sweeps: Vec<&ScanReport> = std::iter::once(&sweep3)
        .chain(sweep4.iter().map(|s| &s.2))
        .collect();
    let mut c6 = || sublemma(&sweeps);
    record(6, "type-II sublemma on sweeps 3 and 4", 60, &mut c6);
    let mut c7 = || oracle(&sweeps);
    record(7, "cogirth oracle equivalence", 60, &mut c7);
    record(8, "rank-2 lemma", 5, &mut rank2);
    record(9, "geometry counts", 60, &mut geometry_counts);

    let mut failed = 0;
    for (n, name, out, took, limit) in &results {
        let ok = out.ok && took <= limit;
        failed += usize::from(!ok);
        println!(
            "criterion {n}: {} {name} [{:.2?}, limit {:?}] {}",
            if ok { "PASS" } else { "FAIL" },
            took,
            limit,
            out.detail
        );
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
