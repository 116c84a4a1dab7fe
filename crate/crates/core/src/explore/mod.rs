//! State-space exploration: reachability graphs, Karp–Miller trees,
//! observation estimates and the covering-path pattern search.

mod estimate;
mod km;
mod pattern;
mod reach;
mod scc;
mod verdict;

use thiserror::Error;

use crate::net::NetError;

pub use estimate::{estimate, EstimateEngine};
pub use km::{coverable, KarpMillerTree, KmNode, OmegaCount, OmegaMarking};
pub use pattern::{
    search_pattern, Comparison, Covering, MarkingPredicate, PathPattern, SegmentLength, Term,
};
pub use reach::ReachabilityGraph;
pub(crate) use scc::Components;
pub use verdict::{Outcome, PathWitness, Stats, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExploreError {
    #[error("budget limits must be at least 1 (max_states={max_states}, max_depth={max_depth})")]
    InvalidBudget { max_states: usize, max_depth: usize },

    #[error("malformed pattern: {0}")]
    MalformedPattern(String),

    #[error("exploration budget exhausted after {states} states")]
    BudgetExhausted { states: usize },

    #[error(transparent)]
    Net(#[from] NetError),
}

/// Exploration limits. `max_states` bounds stored states, `max_depth` bounds
/// path length. Hitting either yields an inconclusive result, never a wrong one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    max_states: usize,
    max_depth: usize,
}

impl Budget {
    pub fn new(max_states: usize, max_depth: usize) -> Result<Self, ExploreError> {
        if max_states == 0 || max_depth == 0 {
            return Err(ExploreError::InvalidBudget {
                max_states,
                max_depth,
            });
        }
        Ok(Budget {
            max_states,
            max_depth,
        })
    }

    pub fn max_states(&self) -> usize {
        self.max_states
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_states: 100_000,
            max_depth: 10_000,
        }
    }
}
