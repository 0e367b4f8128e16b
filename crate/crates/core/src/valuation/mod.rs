//! Valuations on finite sets of rays and observables.
//!
//! A valuation assigns to each observable a point of its spectrum so that the values of
//! every pairwise-commuting subset form a point of that subset's joint spectrum. For rank-1
//! projections given as rays this reduces to two rules: orthogonal rays are never both 1,
//! and every complete orthogonal basis carries exactly one 1.

mod cnf;
mod general;
mod rays;
mod search;
mod verify;

use alloc::vec::Vec;
use core::time::Duration;

pub use cnf::{encode_rays, Cnf};
pub use general::{find_valuation_general, GeneralOptions, GeneralProblem};
pub use rays::{build_contexts, ContextSystem, RaySet};
pub use search::{find_valuation, find_valuation_with_budget, Decision, RaySearch};
pub use verify::{verify_general_valuation, verify_ray_valuation, FailedConstraint, Verdict};

/// Assignment of a real value to each observable, by index.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Valuation {
    pub values: Vec<f64>,
}

impl Valuation {
    pub fn new(values: Vec<f64>) -> Self {
        Valuation { values }
    }

    /// The constant-zero assignment on `n` observables.
    pub fn zeros(n: usize) -> Self {
        Valuation { values: alloc::vec![0.0; n] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum SearchOutcome {
    Found { valuation: Valuation },
    /// The search tree was explored completely without finding a valuation.
    Exhausted,
    /// The node budget ran out before the search finished.
    Budget { budget: u64 },
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, SearchOutcome::Exhausted)
    }

    pub fn valuation(&self) -> Option<&Valuation> {
        match self {
            SearchOutcome::Found { valuation } => Some(valuation),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchCertificate {
    pub outcome: SearchOutcome,
    pub nodes: u64,
    pub propagations: u64,
    /// Filled in by callers that have a clock.
    pub elapsed: Option<Duration>,
    /// Node counts are approximate when subtrees were searched in parallel.
    pub approximate_counts: bool,
}

/// Default node budget for the general solver.
pub const DEFAULT_GENERAL_BUDGET: u64 = 10_000_000;
