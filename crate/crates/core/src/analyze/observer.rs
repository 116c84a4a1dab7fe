use std::collections::{BTreeSet, VecDeque};

use indexmap::IndexSet;

use super::{check_assumptions, AnalyzeError};
use crate::explore::{Budget, ReachabilityGraph};
use crate::net::{LabeledPetriNet, Marking, ObservationWord, Symbol};

/// Deterministic observer of a bounded net: the subset construction over the
/// reachability graph, with unobservable moves closed off. Each state is the
/// exact estimate after some observation; state 0 is the estimate of the
/// empty word.
#[derive(Clone, Debug)]
pub struct Observer {
    graph: ReachabilityGraph,
    states: IndexSet<Vec<usize>>,
    transitions: Vec<Vec<(Symbol, usize)>>,
    parent: Vec<Option<(usize, Symbol)>>,
}

/// Builds the observer, rejecting unbounded nets and those violating a
/// standing assumption.
pub fn build_observer(net: &LabeledPetriNet, budget: Budget) -> Result<Observer, AnalyzeError> {
    check_assumptions(net, budget)?.gate()?;
    let graph = ReachabilityGraph::build(net, budget)?;
    if !graph.is_complete() {
        return Err(AnalyzeError::Unbounded { states: graph.len() });
    }
    let obs = Observer::from_graph(net, graph);
    assert!(
        (0..obs.len()).all(|q| !obs.successors(q).is_empty()),
        "observer state without successor in a deadlock-free net"
    );
    Ok(obs)
}

impl Observer {
    /// Subset construction over a complete reachability graph. No
    /// assumptions are checked; an unobservable cycle only makes closures
    /// larger and a deadlock leaves a state without successors.
    pub(crate) fn from_graph(net: &LabeledPetriNet, graph: ReachabilityGraph) -> Observer {
        let mut obs = Observer {
            graph,
            states: IndexSet::new(),
            transitions: Vec::new(),
            parent: Vec::new(),
        };
        let init = obs.close(BTreeSet::from([obs.graph.initial()]), net);
        obs.states.insert(init);
        obs.transitions.push(Vec::new());
        obs.parent.push(None);
        let mut queue = VecDeque::from([0usize]);
        while let Some(q) = queue.pop_front() {
            for s in (0..net.alphabet().len()).map(Symbol) {
                let moved: BTreeSet<usize> = obs.states[q]
                    .iter()
                    .flat_map(|&u| obs.graph.successors(u))
                    .filter(|&&(t, _)| net.label(t) == Some(s))
                    .map(|&(_, v)| v)
                    .collect();
                if moved.is_empty() {
                    continue;
                }
                let next = obs.close(moved, net);
                let r = match obs.states.get_index_of(&next) {
                    Some(r) => r,
                    None => {
                        let (r, _) = obs.states.insert_full(next);
                        obs.transitions.push(Vec::new());
                        obs.parent.push(Some((q, s)));
                        queue.push_back(r);
                        r
                    }
                };
                obs.transitions[q].push((s, r));
            }
        }
        obs
    }

    fn close(&self, mut set: BTreeSet<usize>, net: &LabeledPetriNet) -> Vec<usize> {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(u) = stack.pop() {
            for &(t, v) in self.graph.successors(u) {
                if !net.is_observable(t) && set.insert(v) {
                    stack.push(v);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn graph(&self) -> &ReachabilityGraph {
        &self.graph
    }

    /// Reachability-graph nodes of a state, ascending.
    pub fn nodes(&self, q: usize) -> &[usize] {
        &self.states[q]
    }

    /// The estimate held by state `q`, in marking order.
    pub fn estimate(&self, q: usize) -> Vec<Marking> {
        let set: BTreeSet<&Marking> = self.states[q].iter().map(|&u| self.graph.marking(u)).collect();
        set.into_iter().cloned().collect()
    }

    pub fn is_singleton(&self, q: usize) -> bool {
        self.states[q].len() == 1
    }

    pub fn successors(&self, q: usize) -> &[(Symbol, usize)] {
        &self.transitions[q]
    }

    pub fn step(&self, q: usize, s: Symbol) -> Option<usize> {
        self.transitions[q].iter().find(|&&(a, _)| a == s).map(|&(_, r)| r)
    }

    /// State reached by `word`, if the word can be observed.
    pub fn run(&self, word: &ObservationWord) -> Option<usize> {
        word.symbols().iter().try_fold(0, |q, &s| self.step(q, s))
    }

    /// A shortest word leading to `q`.
    pub fn word_to(&self, q: usize) -> ObservationWord {
        let mut out = Vec::new();
        let mut cur = q;
        while let Some((p, s)) = self.parent[cur] {
            out.push(s);
            cur = p;
        }
        out.reverse();
        ObservationWord(out)
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.iter().map(Vec::len).sum()
    }
}
