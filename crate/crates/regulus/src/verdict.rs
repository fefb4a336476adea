//! The three-valued answer type for semi-decidable checks.

use serde::{Deserialize, Serialize};

use crate::completion::Recipe;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictStatus {
    Member,
    NonMember,
    Unknown,
}

/// Search bounds for the staged closure search and diagram enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_stage: usize,
    pub max_objects_per_stage: usize,
    pub max_diagrams: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_stage: 3, max_objects_per_stage: 64, max_diagrams: 10_000 }
    }
}

/// Outcome of a membership or preservation check. `Member` verdicts carry a
/// re-checkable certificate where one exists; `NonMember` verdicts carry a
/// witness description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub certificate: Option<Recipe>,
    pub witness: Option<String>,
    pub bounds_used: Bounds,
}

impl Verdict {
    pub fn member(certificate: Option<Recipe>, bounds: Bounds) -> Self {
        Verdict { status: VerdictStatus::Member, certificate, witness: None, bounds_used: bounds }
    }

    pub fn non_member(witness: impl Into<String>, bounds: Bounds) -> Self {
        Verdict {
            status: VerdictStatus::NonMember,
            certificate: None,
            witness: Some(witness.into()),
            bounds_used: bounds,
        }
    }

    pub fn unknown(bounds: Bounds) -> Self {
        Verdict { status: VerdictStatus::Unknown, certificate: None, witness: None, bounds_used: bounds }
    }

    pub fn is_member(&self) -> bool {
        self.status == VerdictStatus::Member
    }

    pub fn is_decisive(&self) -> bool {
        self.status != VerdictStatus::Unknown
    }
}
