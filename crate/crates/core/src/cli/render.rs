//! Plain-text rendering of report documents.

use std::fmt::Write as _;

use serde::Serialize;

use super::{Content, ReportDocument};
use crate::verify::{Condition, Witness};
use crate::Report;

fn witness(w: &Witness<u64>) -> String {
    match w {
        Witness::Cocircuit { labels, weight } => format!("cocircuit {labels:?} of weight {weight}"),
        Witness::Line {
            complement_points,
            matroid_labels,
        } => {
            format!("line through {complement_points:?} meets elements {matroid_labels:?}")
        }
        Witness::UnequalWeights { labels, weights } => {
            format!(
                "elements {} and {} have weights {} and {}",
                labels[0], labels[1], weights[0], weights[1]
            )
        }
        Witness::Element { label, weight } => format!("element {label} of weight {weight}"),
        Witness::Restriction {
            labels,
            weight,
            rest_weight,
        } => {
            format!("restriction {labels:?} of weight {weight} against {rest_weight}")
        }
    }
}

fn condition(out: &mut String, label: &str, c: &Option<Condition<u64>>) {
    let Some(c) = c else { return };
    let _ = write!(out, "{label}: {}", c.holds);
    if let Some(w) = &c.witness {
        let _ = write!(out, " ({})", witness(w));
    }
    out.push('\n');
}

fn json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn report(out: &mut String, r: &Report) {
    let _ = writeln!(out, "check: {}", json_line(&r.check).trim_matches('"'));
    let _ = writeln!(out, "instance: {}", r.instance);
    let _ = writeln!(
        out,
        "q: {}\nrank: {}\nelements: {}",
        r.q, r.rank, r.elements
    );
    let _ = writeln!(out, "w(M): {}\ng*(M): {}", r.total_weight, r.cogirth);
    let _ = writeln!(out, "ratio: {}/{}", r.ratio.numer(), r.ratio.denom());
    let _ = writeln!(out, "bound: {}/{}", r.bound.numer(), r.bound.denom());
    let _ = writeln!(
        out,
        "bound_lhs: {}\nbound_rhs: {}",
        r.bound_lhs, r.bound_rhs
    );
    let _ = writeln!(
        out,
        "bound_holds: {}\nequality: {}",
        r.bound_holds, r.equality
    );
    let _ = writeln!(out, "witness: {}", witness(&r.witness));
    condition(out, "condition_i", &r.condition_i);
    condition(out, "condition_ii", &r.condition_ii);
    condition(out, "condition_iii", &r.condition_iii);
    condition(out, "condition_iii_prime", &r.condition_iii_prime);
    if let Some(k) = r.complement_rank {
        let _ = writeln!(out, "complement_rank: {k}");
    }
    if let Some(t) = &r.type_counts {
        let _ = writeln!(out, "type_i: {}\ntype_ii: {}", t.type_i, t.type_ii);
    }
    if let Some(c) = r.consistency {
        let _ = writeln!(out, "consistency: {c}");
    }
    for c in &r.checks {
        let _ = writeln!(out, "check {}: {}", c.name, c.holds);
    }
    if let Some(e) = &r.example {
        let _ = writeln!(out, "example: {}", json_line(e));
    }
}

pub fn text(doc: &ReportDocument, file_to_stdout: bool) -> String {
    let mut out = String::new();
    match &doc.content {
        Content::Construct { file, .. } if file_to_stdout => out.push_str(file),
        Content::Construct {
            q, rank, elements, ..
        } => {
            let _ = writeln!(out, "wrote {elements} points of rank {rank} over GF({q})");
        }
        Content::Cogirth(c) => {
            let _ = writeln!(out, "q: {}\nn: {}\nrank: {}", c.q, c.elements, c.rank);
            let _ = writeln!(out, "w(M): {}\ng*(M): {}", c.total_weight, c.cogirth);
            let _ = writeln!(out, "ratio: {}/{}", c.ratio.numer(), c.ratio.denom());
            let _ = writeln!(out, "witness: {:?}", c.witness_labels);
        }
        Content::Report(r) => report(&mut out, r),
        Content::Scan { report, .. } => {
            let value = serde_json::to_value(report).expect("plain data serializes");
            if let Some(fields) = value.as_object() {
                for (key, v) in fields {
                    if key != "counterexample" {
                        let _ = writeln!(out, "{key}: {v}");
                    }
                }
            }
            let _ = writeln!(out, "violations: {}", report.violations());
            if let Some(c) = &report.counterexample {
                let _ = writeln!(
                    out,
                    "counterexample #{} ({}): {:?}",
                    c.index, c.family, c.problems
                );
                out.push_str(&c.file);
            }
        }
    }
    out
}
