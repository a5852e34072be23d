//! Seeded instance generation and a registry of executable law checks.
//!
//! Each suite re-derives one algebraic law on generated instances through
//! independent code paths and reports pass, fail (with a replayable
//! witness), or skip (with the hypothesis that ruled the instance out).

pub mod gen;
mod suites;

pub use gen::{gen_instance, maximal_chain_instance, Bounds, LatticeKind};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::lattice::Lattice;
use crate::lsubset::{LPoint, LSubset};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

/// A generated fixture: shared carriers, an ambient L-subgroup `mu`, a
/// subject `eta` lying inside it, an optional second subject `nu`, sample
/// L-points of `mu`, and an optional homomorphism out of the group.
#[derive(Clone, Debug)]
pub struct Instance {
    pub seed: u64,
    pub descriptor: String,
    pub lattice: Arc<Lattice>,
    pub group: Arc<FiniteGroup>,
    pub mu: LSubset,
    pub eta: LSubset,
    pub nu: Option<LSubset>,
    pub points: Vec<LPoint>,
    pub hom: Option<GroupHom>,
}

/// Identifier of a registered verification suite.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
#[allow(non_camel_case_types)]
pub enum SuiteId {
    /// L-subgroup predicate agrees with the level-subset characterization.
    T2_2,
    /// Homomorphic images and preimages preserve L-subgroups.
    T2_3,
    /// Relative L-subgroup predicate agrees with its levelwise form.
    T2_7,
    /// Normality agrees with its levelwise form.
    T2_12,
    /// Generated L-subgroup: well-defined, contains the seed, idempotent.
    TGen,
    /// Point conjugates of L-subgroups of `mu` stay L-subgroups of `mu`.
    T3_2,
    /// Tip of a point conjugate is the point value met with the tip.
    R3Tip,
    /// Conjugation distributes over set products.
    T3_4,
    /// Images transport point conjugates along homomorphisms.
    T3_5,
    /// Preimages transport point conjugates along surjections.
    T3_6,
    /// Point conjugation matches levelwise conjugation.
    T3_7,
    /// Crisp conjugacy agrees with the characteristic-function route.
    T3_8,
    /// Conjugates of maximal subjects collapse or stay maximal (chains).
    T3_10,
    /// Normality agrees with the contained-conjugates criterion.
    P4_1,
    /// The set-product normalizer is the largest ambient piece normalizing.
    D4_3Largest,
    /// Normalizers commute with point conjugation (distributive lattices).
    T4_4,
    /// Crisp corollary of the normalizer conjugation identity.
    C4_5,
    /// Containment agrees with its levelwise form.
    P4_7,
    /// Conjugate containment is invariant under inverting the point.
    L4_8,
    /// Commuting cosets coincide with contained conjugates.
    L4_9,
    /// The two normalizer constructions agree pointwise.
    D4_10Equivalence,
}

impl SuiteId {
    pub const ALL: [SuiteId; 21] = [
        SuiteId::T2_2,
        SuiteId::T2_3,
        SuiteId::T2_7,
        SuiteId::T2_12,
        SuiteId::TGen,
        SuiteId::T3_2,
        SuiteId::R3Tip,
        SuiteId::T3_4,
        SuiteId::T3_5,
        SuiteId::T3_6,
        SuiteId::T3_7,
        SuiteId::T3_8,
        SuiteId::T3_10,
        SuiteId::P4_1,
        SuiteId::D4_3Largest,
        SuiteId::T4_4,
        SuiteId::C4_5,
        SuiteId::P4_7,
        SuiteId::L4_8,
        SuiteId::L4_9,
        SuiteId::D4_10Equivalence,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::T2_2 => "T2.2",
            SuiteId::T2_3 => "T2.3",
            SuiteId::T2_7 => "T2.7",
            SuiteId::T2_12 => "T2.12",
            SuiteId::TGen => "Tgen",
            SuiteId::T3_2 => "T3.2",
            SuiteId::R3Tip => "R3.tip",
            SuiteId::T3_4 => "T3.4",
            SuiteId::T3_5 => "T3.5",
            SuiteId::T3_6 => "T3.6",
            SuiteId::T3_7 => "T3.7",
            SuiteId::T3_8 => "T3.8",
            SuiteId::T3_10 => "T3.10",
            SuiteId::P4_1 => "P4.1",
            SuiteId::D4_3Largest => "D4.3-largest",
            SuiteId::T4_4 => "T4.4",
            SuiteId::C4_5 => "C4.5",
            SuiteId::P4_7 => "P4.7",
            SuiteId::L4_8 => "L4.8",
            SuiteId::L4_9 => "L4.9",
            SuiteId::D4_10Equivalence => "D4.10-equivalence",
        }
    }

    pub fn parse(s: &str) -> Result<SuiteId> {
        SuiteId::ALL
            .iter()
            .find(|id| id.as_str() == s)
            .copied()
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<SuiteId> {
        SuiteId::parse(s)
    }
}

impl Serialize for SuiteId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Outcome of one suite on one instance.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail { witness: String },
    Skip { reason: String },
}

impl Verdict {
    pub fn fail(witness: impl Into<String>) -> Verdict {
        Verdict::Fail {
            witness: witness.into(),
        }
    }

    pub fn skip(reason: impl Into<String>) -> Verdict {
        Verdict::Skip {
            reason: reason.into(),
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }
}

/// One suite run on one instance. `elapsed` is informational and excluded
/// from serialized output so reports stay byte-identical across runs.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: SuiteId,
    pub instance: String,
    pub verdict: Verdict,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Run one suite over the instances, in input order.
pub fn run_suite(suite: SuiteId, instances: &[Instance]) -> Vec<Report> {
    instances
        .iter()
        .map(|inst| {
            let start = Instant::now();
            let verdict = suites::check(suite, inst);
            Report {
                suite,
                instance: inst.descriptor.clone(),
                verdict,
                elapsed: start.elapsed(),
            }
        })
        .collect()
}

/// Run every registered suite over the instances (suite-major order).
pub fn run_all(instances: &[Instance]) -> Vec<Report> {
    SuiteId::ALL
        .iter()
        .flat_map(|&suite| run_suite(suite, instances))
        .collect()
}

/// Aggregate exit status: failing iff any report failed.
pub fn any_fail(reports: &[Report]) -> bool {
    reports.iter().any(|r| r.verdict.is_fail())
}
