use std::collections::{BTreeSet, HashSet, VecDeque};
use std::time::Instant;

use super::{AnalyzeError, Observer};
use crate::explore::{Budget, EstimateEngine, Outcome, ReachabilityGraph, Stats, Verdict, Witness};
use crate::net::{LabeledPetriNet, Marking, ObservationWord, Symbol};

/// Secret markings `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SecretSpec {
    Set(Vec<Marking>),
    Single(Marking),
}

impl SecretSpec {
    pub fn markings(&self) -> &[Marking] {
        match self {
            SecretSpec::Set(v) => v,
            SecretSpec::Single(m) => std::slice::from_ref(m),
        }
    }

    fn contains_all<'a>(&self, estimate: impl IntoIterator<Item = &'a Marking>) -> bool {
        let s = self.markings();
        estimate.into_iter().all(|m| s.contains(m))
    }
}

/// Current-state opacity: no observation yields an estimate contained in the
/// secret. A `Fails` witness is a shortest such observation with its
/// estimate.
pub fn check_opacity(net: &LabeledPetriNet, secret: &SecretSpec, budget: Budget) -> Result<Verdict, AnalyzeError> {
    for m in secret.markings() {
        net.check_dimension(m)?;
    }
    let clock = Instant::now();
    let graph = ReachabilityGraph::build(net, budget)?;
    if graph.is_complete() {
        let nodes = graph.len();
        let depth = graph.max_depth();
        let obs = Observer::from_graph(net, graph);
        let stats = Stats {
            states_explored: nodes + obs.len(),
            depth_reached: depth,
            wall_time: clock.elapsed(),
        };
        // states are numbered in breadth-first order, so the first hit has
        // a shortest word
        for q in 0..obs.len() {
            let est = obs.estimate(q);
            if secret.contains_all(&est) {
                let w = Witness::Estimate {
                    word: obs.word_to(q),
                    estimate: est,
                };
                return Ok(Verdict::new(Outcome::Fails(w), stats));
            }
        }
        return Ok(Verdict::new(Outcome::Holds, stats));
    }
    on_the_fly(net, secret, budget, clock)
}

/// Breadth-first search over estimates for nets whose reachability graph
/// does not fit the budget.
fn on_the_fly(net: &LabeledPetriNet, secret: &SecretSpec, budget: Budget, clock: Instant) -> Result<Verdict, AnalyzeError> {
    let engine = EstimateEngine::new(net, budget);
    let mut seen: HashSet<BTreeSet<Marking>> = HashSet::new();
    let mut queue: VecDeque<(BTreeSet<Marking>, ObservationWord)> = VecDeque::new();
    let mut truncated = false;
    let mut depth = 0;
    let stats = |seen: usize, depth: usize| Stats {
        states_explored: seen,
        depth_reached: depth,
        wall_time: clock.elapsed(),
    };
    match engine.initial()? {
        Some(e) => {
            seen.insert(e.clone());
            queue.push_back((e, ObservationWord::default()));
        }
        None => truncated = true,
    }
    while let Some((est, word)) = queue.pop_front() {
        depth = depth.max(word.len());
        if secret.contains_all(&est) {
            let w = Witness::Estimate {
                word,
                estimate: est.into_iter().collect(),
            };
            return Ok(Verdict::new(Outcome::Fails(w), stats(seen.len(), depth)));
        }
        if word.len() >= budget.max_depth() {
            truncated = true;
            continue;
        }
        for s in (0..net.alphabet().len()).map(Symbol) {
            let Some(next) = engine.step(&est, s)? else {
                truncated = true;
                continue;
            };
            if next.is_empty() || seen.contains(&next) {
                continue;
            }
            if seen.len() >= budget.max_states() {
                truncated = true;
                continue;
            }
            seen.insert(next.clone());
            let mut w = word.clone();
            w.0.push(s);
            queue.push_back((next, w));
        }
    }
    let outcome = if truncated {
        Outcome::Inconclusive {
            reason: "estimate exploration did not close within budget".into(),
        }
    } else {
        Outcome::Holds
    };
    Ok(Verdict::new(outcome, stats(seen.len(), depth)))
}
