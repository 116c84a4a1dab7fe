use std::collections::VecDeque;

use indexmap::IndexSet;

use super::{Budget, Components, ExploreError};
use crate::net::{FiringSequence, LabeledPetriNet, Marking, TransitionId};

/// Breadth-first reachability graph, possibly truncated by a [`Budget`].
#[derive(Clone, Debug)]
pub struct ReachabilityGraph {
    markings: IndexSet<Marking>,
    successors: Vec<Vec<(TransitionId, usize)>>,
    parent: Vec<Option<(usize, TransitionId)>>,
    depth: Vec<usize>,
    complete: bool,
}

impl ReachabilityGraph {
    /// Explores from the net's initial marking.
    pub fn build(net: &LabeledPetriNet, budget: Budget) -> Result<Self, ExploreError> {
        Self::build_from(net, net.initial_marking().clone(), budget)
    }

    /// Explores from `start` in declaration order of transitions. The graph is
    /// complete iff every enabled firing of every node lands on a node.
    pub fn build_from(
        net: &LabeledPetriNet,
        start: Marking,
        budget: Budget,
    ) -> Result<Self, ExploreError> {
        net.check_dimension(&start)?;
        let mut g = ReachabilityGraph {
            markings: IndexSet::new(),
            successors: Vec::new(),
            parent: Vec::new(),
            depth: Vec::new(),
            complete: true,
        };
        g.markings.insert(start);
        g.successors.push(Vec::new());
        g.parent.push(None);
        g.depth.push(0);

        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            let here = g.markings[u].clone();
            let d = g.depth[u];
            for t in net.transition_ids() {
                let Some(next) = net.try_fire(&here, t)? else {
                    continue;
                };
                let v = match g.markings.get_index_of(&next) {
                    Some(v) => v,
                    None => {
                        if d + 1 > budget.max_depth() || g.markings.len() >= budget.max_states() {
                            g.complete = false;
                            continue;
                        }
                        let (v, _) = g.markings.insert_full(next);
                        g.successors.push(Vec::new());
                        g.parent.push(Some((u, t)));
                        g.depth.push(d + 1);
                        queue.push_back(v);
                        v
                    }
                };
                g.successors[u].push((t, v));
            }
        }
        Ok(g)
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.markings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.markings.is_empty()
    }

    /// Node index of the start marking.
    pub fn initial(&self) -> usize {
        0
    }

    pub fn marking(&self, node: usize) -> &Marking {
        &self.markings[node]
    }

    pub fn markings(&self) -> impl Iterator<Item = &Marking> {
        self.markings.iter()
    }

    pub fn index_of(&self, m: &Marking) -> Option<usize> {
        self.markings.get_index_of(m)
    }

    pub fn successors(&self, node: usize) -> &[(TransitionId, usize)] {
        &self.successors[node]
    }

    pub fn depth(&self, node: usize) -> usize {
        self.depth[node]
    }

    pub fn max_depth(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// All `(source, transition, target)` triples.
    pub fn edges(&self) -> impl Iterator<Item = (usize, TransitionId, usize)> + '_ {
        self.successors
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |&(t, v)| (u, t, v)))
    }

    pub fn num_edges(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    /// A shortest firing sequence from the start to `node`.
    pub fn path_to(&self, node: usize) -> FiringSequence {
        let mut steps = Vec::new();
        let mut cur = node;
        while let Some((p, t)) = self.parent[cur] {
            steps.push(t);
            cur = p;
        }
        steps.reverse();
        FiringSequence(steps)
    }

    pub(crate) fn components(&self) -> Components {
        let targets: Vec<Vec<usize>> = self
            .successors
            .iter()
            .map(|s| s.iter().map(|&(_, v)| v).collect())
            .collect();
        Components::new(self.len(), |u| &targets[u])
    }

    /// True if some explored marking covers `target`.
    pub fn covers(&self, target: &Marking) -> bool {
        self.markings.iter().any(|m| m.covers(target))
    }
}
