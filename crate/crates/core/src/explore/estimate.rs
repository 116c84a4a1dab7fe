use std::collections::{BTreeSet, VecDeque};

use super::{Budget, ExploreError};
use crate::net::{LabeledPetriNet, Marking, ObservationWord, Symbol};

/// Computes state estimates `R(G, s)` one symbol at a time, with ε-closures
/// bounded by a budget.
pub struct EstimateEngine<'a> {
    net: &'a LabeledPetriNet,
    budget: Budget,
}

impl<'a> EstimateEngine<'a> {
    pub fn new(net: &'a LabeledPetriNet, budget: Budget) -> Self {
        EstimateEngine { net, budget }
    }

    /// ε-closure of `set`. `None` when the closure exceeds the budget.
    pub fn closure(&self, set: BTreeSet<Marking>) -> Result<Option<BTreeSet<Marking>>, ExploreError> {
        let mut seen = set;
        let mut queue: VecDeque<(Marking, usize)> = seen.iter().map(|m| (m.clone(), 0)).collect();
        while let Some((m, d)) = queue.pop_front() {
            for t in self.net.transition_ids() {
                if self.net.is_observable(t) {
                    continue;
                }
                let Some(next) = self.net.try_fire(&m, t)? else {
                    continue;
                };
                if seen.contains(&next) {
                    continue;
                }
                if d + 1 > self.budget.max_depth() || seen.len() >= self.budget.max_states() {
                    return Ok(None);
                }
                seen.insert(next.clone());
                queue.push_back((next, d + 1));
            }
        }
        Ok(Some(seen))
    }

    /// Estimate after observing the empty word.
    pub fn initial(&self) -> Result<Option<BTreeSet<Marking>>, ExploreError> {
        self.closure(BTreeSet::from([self.net.initial_marking().clone()]))
    }

    /// Successor estimate under one observed symbol. An empty result means
    /// the symbol cannot occur.
    pub fn step(
        &self,
        set: &BTreeSet<Marking>,
        symbol: Symbol,
    ) -> Result<Option<BTreeSet<Marking>>, ExploreError> {
        let mut next = BTreeSet::new();
        for m in set {
            for t in self.net.transition_ids() {
                if self.net.label(t) != Some(symbol) {
                    continue;
                }
                if let Some(n) = self.net.try_fire(m, t)? {
                    next.insert(n);
                }
            }
        }
        self.closure(next)
    }
}

/// `R(G, s)`: every marking reachable by a firing sequence observed as `word`.
pub fn estimate(
    net: &LabeledPetriNet,
    word: &ObservationWord,
    budget: Budget,
) -> Result<BTreeSet<Marking>, ExploreError> {
    let engine = EstimateEngine::new(net, budget);
    let exhausted = || ExploreError::BudgetExhausted {
        states: budget.max_states(),
    };
    let mut cur = engine.initial()?.ok_or_else(exhausted)?;
    for &s in word.symbols() {
        cur = engine.step(&cur, s)?.ok_or_else(exhausted)?;
    }
    Ok(cur)
}
