//! Executable checks of the cogirth bounds and their equality
//! characterizations on concrete weighted matroids.
//!
//! All ratio comparisons are cross-multiplied integer comparisons: a bound
//! `w(M)/g*(M) >= a/b` is stored as `bound_lhs = b·w(M)` against
//! `bound_rhs = a·g*(M)`.

mod affine;
mod example;
mod scan;
mod theorems;

pub use affine::{
    affine_restrictions, is_affine_geometry, restriction_inequality_brute_force,
    AFFINE_MAX_ELEMENTS,
};
pub use example::{paper_example, paper_example_matroid, ExampleFacts, Phase};
pub use scan::{
    check_instance, instances, scan, scan_instances, Counterexample, Instance, ScanMode,
    ScanReport, ScanSpec,
};
pub use theorems::{
    check_condition_iii_prime, check_main_theorem, check_pg_proposition, check_rank2,
    check_typeii_sublemma, verify_auto,
};

use serde::{Deserialize, Serialize};

use crate::geometry::Point;
use crate::{Ratio, Weight};

/// Which statement a report checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Rank2,
    Main,
    IiiPrime,
    TypeiiSublemma,
    Pg,
    PaperExample,
}

/// Concrete evidence attached to a failed condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness<W> {
    Cocircuit {
        labels: Vec<usize>,
        weight: W,
    },
    /// A line through two complement points that also meets the matroid.
    Line {
        complement_points: Vec<Point>,
        matroid_labels: Vec<usize>,
    },
    /// Two elements that should carry equal weight but do not.
    UnequalWeights {
        labels: [usize; 2],
        weights: [W; 2],
    },
    Element {
        label: usize,
        weight: W,
    },
    /// An affine restriction `N` with `w(N) < (q-1)·w(E(M)-N)`.
    Restriction {
        labels: Vec<usize>,
        weight: W,
        rest_weight: W,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition<W> {
    pub name: String,
    pub holds: bool,
    pub witness: Option<Witness<W>>,
}

impl<W> Condition<W> {
    pub fn new(name: &str, holds: bool, witness: Option<Witness<W>>) -> Self {
        Self {
            name: name.to_string(),
            holds,
            witness: if holds { None } else { witness },
        }
    }

    pub fn flag(name: &str, holds: bool) -> Self {
        Self::new(name, holds, None)
    }
}

/// Counts and extreme weights of the classified cocircuits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCounts<W> {
    pub type_i: usize,
    pub type_ii: usize,
    pub min_type_i_weight: Option<W>,
    pub min_type_ii_weight: Option<W>,
    pub max_type_ii_weight: Option<W>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "W: Weight")]
pub struct VerificationReport<W: Weight> {
    pub check: CheckKind,
    pub instance: String,
    pub q: u32,
    pub rank: usize,
    pub elements: usize,
    pub total_weight: W,
    pub cogirth: W,
    /// `w(M) / g*(M)` in lowest terms.
    #[serde(with = "fraction")]
    pub ratio: Ratio<W>,
    /// The lower bound the statement asserts for `ratio`.
    #[serde(with = "fraction")]
    pub bound: Ratio<W>,
    pub bound_lhs: W,
    pub bound_rhs: W,
    pub bound_holds: bool,
    pub equality: bool,
    /// A minimum-weight cocircuit.
    pub witness: Witness<W>,
    pub condition_i: Option<Condition<W>>,
    pub condition_ii: Option<Condition<W>>,
    pub condition_iii: Option<Condition<W>>,
    pub condition_iii_prime: Option<Condition<W>>,
    /// Does equality hold exactly when the characterizing conditions do?
    pub consistency: Option<bool>,
    /// Rank of the complement when it is a flat.
    pub complement_rank: Option<usize>,
    pub type_counts: Option<TypeCounts<W>>,
    /// Cross-checks that must all hold on every instance.
    pub checks: Vec<Condition<W>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<ExampleFacts<W>>,
}

impl<W: Weight> VerificationReport<W> {
    /// Everything that indicates a bug rather than a property of the instance.
    pub fn inconsistencies(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.bound_holds {
            out.push(format!(
                "bound violated: {} < {}",
                self.bound_lhs, self.bound_rhs
            ));
        }
        if self.consistency == Some(false) {
            out.push("equality does not match its characterization".to_string());
        }
        out.extend(
            self.checks
                .iter()
                .filter(|c| !c.holds)
                .map(|c| format!("check failed: {}", c.name)),
        );
        out
    }

    pub fn passed(&self) -> bool {
        self.inconsistencies().is_empty()
    }

    pub fn check_named(&self, name: &str) -> Option<&Condition<W>> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Serializes a ratio as `"numer/denom"`.
pub(crate) mod fraction {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::{Ratio, Weight};

    pub fn serialize<W: Weight, S: Serializer>(r: &Ratio<W>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }

    pub fn deserialize<'de, W: Weight, D: Deserializer<'de>>(d: D) -> Result<Ratio<W>, D::Error> {
        let text = String::deserialize(d)?;
        let (n, m) = text
            .split_once('/')
            .ok_or_else(|| D::Error::custom("expected numer/denom"))?;
        let n: W = n.parse().map_err(|_| D::Error::custom("bad numerator"))?;
        let m: W = m.parse().map_err(|_| D::Error::custom("bad denominator"))?;
        if m.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Ratio::new(n, m))
    }
}
