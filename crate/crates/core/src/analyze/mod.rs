//! Property checkers: standing assumptions, strong and weak detectability,
//! and current-state opacity.
//!
//! Detectability is only defined for nets that are deadlock free and cannot
//! run forever unobserved; checkers reject inputs where either assumption
//! provably fails. When an assumption cannot be established within budget the
//! check proceeds and the verdict carries a note saying so.

mod assumptions;
mod observer;
mod opacity;
mod strong;
mod weak;

use std::fmt;

use thiserror::Error;

use crate::explore::{ExploreError, Witness};
use crate::net::NetError;

pub use assumptions::{check_assumptions, AssumptionReport};
pub use observer::{build_observer, Observer};
pub use opacity::{check_opacity, SecretSpec};
pub use strong::{check_strong, check_strong_gated, check_strong_oracle};
pub use weak::{check_weak, check_weak_gated};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assumption {
    DeadlockFree,
    NoInfiniteUnobservable,
}

impl Assumption {
    pub fn name(self) -> &'static str {
        match self {
            Assumption::DeadlockFree => "deadlock_free",
            Assumption::NoInfiniteUnobservable => "no_infinite_unobservable",
        }
    }
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyzeError {
    #[error("standing assumption violated: {assumption}")]
    AssumptionViolated { assumption: Assumption, witness: Witness },

    #[error("reachability graph did not close within budget ({states} states explored); a bounded net is required")]
    Unbounded { states: usize },

    #[error(transparent)]
    Explore(#[from] ExploreError),

    #[error(transparent)]
    Net(#[from] NetError),
}
