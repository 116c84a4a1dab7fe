//! Covering-path patterns and their breadth-first search.
//!
//! A pattern describes a run `start →σ1 M1 →σ2 … →σn Mn` split into up to four
//! segments, with per-segment length constraints, covering constraints
//! `Mi ≤ Mj` between segment endpoints, and a predicate on `Mn`. The search
//! explores product states `(marking, open segment, pending anchors)` in
//! breadth-first order so that the first witness found has minimal total
//! length. Anchors are the endpoint markings still needed by a covering
//! constraint; they always lie on the current path.
//!
//! When the reachability graph closes within budget the search runs over the
//! finite graph. There `Mi ≤ Mj` with `Mj` reachable from `Mi` forces
//! `Mi = Mj` (a strict increase would pump without bound), so every run
//! between anchor and target stays inside the anchor's strongly connected
//! component, and states leaving it are pruned.

use std::hash::Hash;
use std::time::Instant;

use indexmap::IndexSet;

use super::{Budget, Components, ExploreError, Outcome, PathWitness, ReachabilityGraph, Stats, Verdict, Witness};
use crate::net::{FiringSequence, LabeledPetriNet, Marking, TransitionId};
use crate::twin::TwinNet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentLength {
    Any,
    Empty,
    Nonempty,
    /// Nonempty and every step unobservable.
    NonemptyUnobservable,
}

impl SegmentLength {
    fn needs_step(self) -> bool {
        matches!(self, SegmentLength::Nonempty | SegmentLength::NonemptyUnobservable)
    }
}

/// `M_lower ≤ M_upper`, where index 0 is the start marking.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Covering {
    pub lower: usize,
    pub upper: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Term {
    Place(usize),
    Const(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

/// Boolean combination of comparisons over the final marking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MarkingPredicate {
    True,
    Compare(Term, Comparison, Term),
    And(Vec<MarkingPredicate>),
    Or(Vec<MarkingPredicate>),
    Not(Box<MarkingPredicate>),
}

impl MarkingPredicate {
    pub fn eval(&self, m: &Marking) -> bool {
        match self {
            MarkingPredicate::True => true,
            MarkingPredicate::Compare(l, op, r) => {
                let v = |t: &Term| match *t {
                    Term::Place(p) => m.get(p),
                    Term::Const(c) => c,
                };
                let (a, b) = (v(l), v(r));
                match op {
                    Comparison::Eq => a == b,
                    Comparison::Ne => a != b,
                    Comparison::Lt => a < b,
                    Comparison::Le => a <= b,
                    Comparison::Gt => a > b,
                    Comparison::Ge => a >= b,
                }
            }
            MarkingPredicate::And(ps) => ps.iter().all(|p| p.eval(m)),
            MarkingPredicate::Or(ps) => ps.iter().any(|p| p.eval(m)),
            MarkingPredicate::Not(p) => !p.eval(m),
        }
    }

    fn max_place(&self) -> Option<usize> {
        match self {
            MarkingPredicate::True => None,
            MarkingPredicate::Compare(l, _, r) => {
                let p = |t: &Term| match *t {
                    Term::Place(p) => Some(p),
                    Term::Const(_) => None,
                };
                p(l).max(p(r))
            }
            MarkingPredicate::And(ps) | MarkingPredicate::Or(ps) => ps.iter().filter_map(Self::max_place).max(),
            MarkingPredicate::Not(p) => p.max_place(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathPattern {
    segments: Vec<SegmentLength>,
    coverings: Vec<Covering>,
    final_predicate: MarkingPredicate,
}

impl PathPattern {
    pub fn new(segments: Vec<SegmentLength>, coverings: Vec<Covering>, final_predicate: MarkingPredicate) -> Self {
        PathPattern {
            segments,
            coverings,
            final_predicate,
        }
    }

    /// `M0 →α M1 →β M2 →γ M3` in the twin with `M1 ≤ M2`, `|β| > 0` and some
    /// place differing from its mirror in `M3`.
    pub fn pumpable_mismatch(twin: &TwinNet) -> Self {
        PathPattern::new(
            vec![SegmentLength::Any, SegmentLength::Nonempty, SegmentLength::Any],
            vec![Covering { lower: 1, upper: 2 }],
            mismatch_predicate(twin),
        )
    }

    /// Four-segment form of [`PathPattern::pumpable_mismatch`] with an empty
    /// first segment and the covering on `(2,3)`.
    pub fn pumpable_mismatch_four_segment(twin: &TwinNet) -> Self {
        PathPattern::new(
            vec![
                SegmentLength::Empty,
                SegmentLength::Any,
                SegmentLength::Nonempty,
                SegmentLength::Any,
            ],
            vec![Covering { lower: 2, upper: 3 }],
            mismatch_predicate(twin),
        )
    }

    /// `M0 →s1 M1 →s2 M2` with `M1 ≤ M2` and `s2` nonempty and unobservable:
    /// an infinite unobservable run exists.
    pub fn unobservable_cycle() -> Self {
        PathPattern::new(
            vec![SegmentLength::Any, SegmentLength::NonemptyUnobservable],
            vec![Covering { lower: 1, upper: 2 }],
            MarkingPredicate::True,
        )
    }

    pub fn segments(&self) -> &[SegmentLength] {
        &self.segments
    }

    pub fn coverings(&self) -> &[Covering] {
        &self.coverings
    }

    pub fn final_predicate(&self) -> &MarkingPredicate {
        &self.final_predicate
    }

    pub fn validate(&self, num_places: usize) -> Result<(), ExploreError> {
        let n = self.segments.len();
        if !(1..=4).contains(&n) {
            return Err(ExploreError::MalformedPattern(format!("{n} segments (expected 1 to 4)")));
        }
        for c in &self.coverings {
            if c.lower >= c.upper || c.upper > n {
                return Err(ExploreError::MalformedPattern(format!(
                    "covering ({},{}) out of range for {n} segments",
                    c.lower, c.upper
                )));
            }
        }
        if let Some(p) = self.final_predicate.max_place() {
            if p >= num_places {
                return Err(ExploreError::MalformedPattern(format!(
                    "predicate references place #{p} of {num_places}"
                )));
            }
        }
        Ok(())
    }

    fn anchor_needed_after(&self, index: usize, position: usize) -> bool {
        self.coverings.iter().any(|c| c.lower == index && c.upper > position)
    }
}

fn mismatch_predicate(twin: &TwinNet) -> MarkingPredicate {
    MarkingPredicate::Or(
        (0..twin.base_places())
            .map(|p| MarkingPredicate::Compare(Term::Place(p), Comparison::Ne, Term::Place(twin.mirror(p))))
            .collect(),
    )
}

/// Searches for a run from `start` matching `pattern`.
///
/// `Fails` carries the breadth-first shortest witness (ties broken by
/// transition order). `Holds` is returned only when the exploration closed;
/// any truncation gives `Inconclusive`.
pub fn search_pattern(
    net: &LabeledPetriNet,
    start: &Marking,
    pattern: &PathPattern,
    budget: Budget,
) -> Result<Verdict, ExploreError> {
    let clock = Instant::now();
    pattern.validate(net.num_places())?;
    net.check_dimension(start)?;
    let graph = ReachabilityGraph::build_from(net, start.clone(), budget)?;

    let result = if graph.is_complete() {
        let space = GraphSpace {
            net,
            components: graph.components(),
            graph: &graph,
        };
        run(&space, pattern, budget.max_states(), usize::MAX)?
    } else {
        let space = NetSpace { net, start };
        run(&space, pattern, budget.max_states(), budget.max_depth())?
    };

    let stats = Stats {
        states_explored: graph.len() + result.states,
        depth_reached: graph.max_depth().max(result.depth),
        wall_time: clock.elapsed(),
    };
    let outcome = match result.witness {
        Some(w) => Outcome::Fails(Witness::Path(w)),
        None if !result.truncated => Outcome::Holds,
        None => Outcome::Inconclusive {
            reason: format!(
                "search budget exhausted ({} states, depth {})",
                budget.max_states(),
                budget.max_depth()
            ),
        },
    };
    Ok(Verdict::new(outcome, stats))
}

trait Space {
    type Node: Clone + Eq + Hash;
    fn start(&self) -> Self::Node;
    fn marking<'s>(&'s self, n: &'s Self::Node) -> &'s Marking;
    fn successors(&self, n: &Self::Node, out: &mut Vec<(TransitionId, Self::Node)>) -> Result<(), ExploreError>;
    fn observable(&self, t: TransitionId) -> bool;
    /// False when a run from `anchor` through `n` can never return to a
    /// marking covering `anchor`.
    fn may_return(&self, _anchor: &Self::Node, _n: &Self::Node) -> bool {
        true
    }
}

struct NetSpace<'a> {
    net: &'a LabeledPetriNet,
    start: &'a Marking,
}

impl Space for NetSpace<'_> {
    type Node = Marking;

    fn start(&self) -> Marking {
        self.start.clone()
    }

    fn marking<'s>(&'s self, n: &'s Marking) -> &'s Marking {
        n
    }

    fn successors(&self, n: &Marking, out: &mut Vec<(TransitionId, Marking)>) -> Result<(), ExploreError> {
        for t in self.net.transition_ids() {
            if let Some(m) = self.net.try_fire(n, t)? {
                out.push((t, m));
            }
        }
        Ok(())
    }

    fn observable(&self, t: TransitionId) -> bool {
        self.net.is_observable(t)
    }
}

struct GraphSpace<'a> {
    net: &'a LabeledPetriNet,
    graph: &'a ReachabilityGraph,
    components: Components,
}

impl Space for GraphSpace<'_> {
    type Node = usize;

    fn start(&self) -> usize {
        self.graph.initial()
    }

    fn marking<'s>(&'s self, n: &'s usize) -> &'s Marking {
        self.graph.marking(*n)
    }

    fn successors(&self, n: &usize, out: &mut Vec<(TransitionId, usize)>) -> Result<(), ExploreError> {
        out.extend_from_slice(self.graph.successors(*n));
        Ok(())
    }

    fn observable(&self, t: TransitionId) -> bool {
        self.net.is_observable(t)
    }

    fn may_return(&self, anchor: &usize, n: &usize) -> bool {
        self.components.same(*anchor, *n)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key<N> {
    node: N,
    /// Index of the open segment.
    segment: usize,
    /// `(endpoint index, node)` for endpoints still needed by a covering.
    anchors: Vec<(usize, N)>,
    /// A step has been taken in the open segment (tracked only when required).
    moved: bool,
}

#[derive(Clone, Copy)]
enum Step {
    Root,
    Fire(TransitionId),
    Close,
}

struct SearchResult {
    witness: Option<PathWitness>,
    truncated: bool,
    states: usize,
    depth: usize,
}

struct Search<'a, S: Space> {
    space: &'a S,
    pattern: &'a PathPattern,
    states: IndexSet<Key<S::Node>>,
    parents: Vec<(usize, Step)>,
    max_states: usize,
    truncated: bool,
}

impl<S: Space> Search<'_, S> {
    fn insert(&mut self, key: Key<S::Node>, parent: usize, step: Step) -> Option<usize> {
        if self.states.contains(&key) {
            return None;
        }
        if self.states.len() >= self.max_states {
            self.truncated = true;
            return None;
        }
        let (id, _) = self.states.insert_full(key);
        self.parents.push((parent, step));
        Some(id)
    }

    fn alive(&self, key: &Key<S::Node>) -> bool {
        key.anchors.iter().all(|(_, a)| self.space.may_return(a, &key.node))
    }

    /// Closing the open segment: length and covering constraints at its end.
    fn can_close(&self, key: &Key<S::Node>) -> bool {
        let seg = self.pattern.segments[key.segment];
        if seg.needs_step() && !key.moved {
            return false;
        }
        let end = key.segment + 1;
        let here = self.space.marking(&key.node);
        self.pattern.coverings.iter().filter(|c| c.upper == end).all(|c| {
            key.anchors
                .iter()
                .find(|(i, _)| *i == c.lower)
                .is_some_and(|(_, a)| self.space.marking(a).le(here))
        })
    }

    fn closed(&self, key: &Key<S::Node>) -> Key<S::Node> {
        let end = key.segment + 1;
        let mut anchors: Vec<(usize, S::Node)> = key
            .anchors
            .iter()
            .filter(|(i, _)| self.pattern.anchor_needed_after(*i, end))
            .cloned()
            .collect();
        if self.pattern.anchor_needed_after(end, end) {
            anchors.push((end, key.node.clone()));
        }
        Key {
            node: key.node.clone(),
            segment: end,
            anchors,
            moved: false,
        }
    }

    fn witness(&self, last: usize) -> PathWitness {
        let mut steps = Vec::new();
        let mut cur = last;
        loop {
            let (parent, step) = self.parents[cur];
            match step {
                Step::Root => break,
                s => steps.push((s, cur)),
            }
            cur = parent;
        }
        steps.reverse();
        let n = self.pattern.segments.len();
        let mut segments = vec![FiringSequence::empty(); n];
        let mut markings = Vec::with_capacity(n);
        let mut seg = 0;
        for (step, id) in steps {
            match step {
                Step::Fire(t) => segments[seg].0.push(t),
                Step::Close => {
                    markings.push(self.space.marking(&self.states[id].node).clone());
                    seg += 1;
                }
                Step::Root => unreachable!(),
            }
        }
        // the final close is not stored as a state
        markings.push(self.space.marking(&self.states[last].node).clone());
        let root = &self.states[0].node;
        PathWitness {
            start: self.space.marking(root).clone(),
            segments,
            markings,
        }
    }
}

fn run<S: Space>(space: &S, pattern: &PathPattern, max_states: usize, max_depth: usize) -> Result<SearchResult, ExploreError> {
    let mut search = Search {
        space,
        pattern,
        states: IndexSet::new(),
        parents: Vec::new(),
        max_states,
        truncated: false,
    };
    let start = space.start();
    let mut anchors = Vec::new();
    if pattern.anchor_needed_after(0, 0) {
        anchors.push((0, start.clone()));
    }
    let root = Key {
        node: start,
        segment: 0,
        anchors,
        moved: false,
    };
    let last = pattern.segments.len() - 1;
    let mut layer = Vec::new();
    layer.extend(search.insert(root, 0, Step::Root));

    let mut depth = 0;
    let mut succ = Vec::new();
    loop {
        let mut next = Vec::new();
        let mut i = 0;
        while i < layer.len() {
            let id = layer[i];
            i += 1;
            let key = search.states[id].clone();

            if search.can_close(&key) {
                if key.segment == last {
                    if pattern.final_predicate.eval(space.marking(&key.node)) {
                        return Ok(SearchResult {
                            witness: Some(search.witness(id)),
                            truncated: search.truncated,
                            states: search.states.len(),
                            depth,
                        });
                    }
                } else {
                    let closed = search.closed(&key);
                    if search.alive(&closed) {
                        layer.extend(search.insert(closed, id, Step::Close));
                    }
                }
            }

            let seg = pattern.segments[key.segment];
            if seg == SegmentLength::Empty {
                continue;
            }
            succ.clear();
            space.successors(&key.node, &mut succ)?;
            if depth >= max_depth {
                if !succ.is_empty() {
                    search.truncated = true;
                }
                continue;
            }
            for (t, node) in succ.drain(..) {
                if seg == SegmentLength::NonemptyUnobservable && space.observable(t) {
                    continue;
                }
                let child = Key {
                    node,
                    segment: key.segment,
                    anchors: key.anchors.clone(),
                    moved: seg.needs_step(),
                };
                if search.alive(&child) {
                    next.extend(search.insert(child, id, Step::Fire(t)));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
        depth += 1;
    }
    Ok(SearchResult {
        witness: None,
        truncated: search.truncated,
        states: search.states.len(),
        depth,
    })
}
