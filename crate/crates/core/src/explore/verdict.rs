use std::time::Duration;

use crate::net::{FiringSequence, LabeledPetriNet, Marking, ObservationWord};

/// A covering-path certificate: the segments fired from `start` and the
/// marking reached at the end of each segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathWitness {
    pub start: Marking,
    pub segments: Vec<FiringSequence>,
    pub markings: Vec<Marking>,
}

impl PathWitness {
    pub fn total_len(&self) -> usize {
        self.segments.iter().map(FiringSequence::len).sum()
    }

    /// Fires every segment from `start` and checks that each recorded
    /// marking is reproduced exactly.
    pub fn replays(&self, net: &LabeledPetriNet) -> bool {
        if self.segments.len() != self.markings.len() {
            return false;
        }
        let mut cur = self.start.clone();
        for (seg, expected) in self.segments.iter().zip(&self.markings) {
            match net.fire_sequence(&cur, seg) {
                Ok(m) if &m == expected => cur = m,
                _ => return false,
            }
        }
        true
    }

    /// Marking before segment `k` (0-based): the start for `k = 0`.
    pub fn marking_before(&self, k: usize) -> &Marking {
        if k == 0 {
            &self.start
        } else {
            &self.markings[k - 1]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A run satisfying a path pattern.
    Path(PathWitness),
    /// A reachable marking with no enabled transition and a run reaching it.
    Deadlock { trace: FiringSequence, marking: Marking },
    /// An observation and its complete state estimate.
    Estimate {
        word: ObservationWord,
        estimate: Vec<Marking>,
    },
    /// The finite observer has no cycle made only of singleton estimates.
    NoSingletonCycle {
        observer_states: usize,
        singleton_states: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Fails(Witness),
    Inconclusive { reason: String },
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Holds => "holds",
            Outcome::Fails(_) => "fails",
            Outcome::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Outcome::Fails(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub states_explored: usize,
    pub depth_reached: usize,
    pub wall_time: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub stats: Stats,
    pub note: Option<String>,
}

impl Verdict {
    pub fn new(outcome: Outcome, stats: Stats) -> Self {
        Verdict {
            outcome,
            stats,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn holds(&self) -> bool {
        matches!(self.outcome, Outcome::Holds)
    }

    pub fn fails(&self) -> bool {
        matches!(self.outcome, Outcome::Fails(_))
    }

    pub fn inconclusive(&self) -> bool {
        matches!(self.outcome, Outcome::Inconclusive { .. })
    }

    pub fn path_witness(&self) -> Option<&PathWitness> {
        match &self.outcome {
            Outcome::Fails(Witness::Path(w)) => Some(w),
            _ => None,
        }
    }
}
