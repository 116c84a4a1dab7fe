//! Labeled Petri net syntax and firing semantics.
//!
//! A [`LabeledPetriNet`] is a place/transition net with ℕ-valued pre and post
//! incidence, an initial marking and a labeling of every transition into an
//! alphabet symbol or ε. Markings are dense vectors indexed by the declared
//! place order. All operations are pure: firing returns a new marking.

use std::collections::BTreeSet;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised by net construction and firing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("unknown transition '{0}'")]
    UnknownTransition(String),

    #[error("unknown place '{0}'")]
    UnknownPlace(String),

    #[error("unknown symbol '{0}'")]
    UnknownSymbol(String),

    #[error("transition '{transition}' is not enabled: place '{place}' holds {available}, needs {required}")]
    Disabled {
        transition: String,
        place: String,
        available: u64,
        required: u64,
    },

    #[error("step {index} of the firing sequence: {source}")]
    DisabledAt {
        index: usize,
        #[source]
        source: Box<NetError>,
    },

    #[error("token count overflow in place '{0}'")]
    Overflow(String),

    #[error("marking has {found} entries, net has {expected} places")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("duplicate identifier '{0}'")]
    DuplicateId(String),

    #[error("malformed net: {0}")]
    Malformed(String),
}

/// Token counts per place, in the net's declared place order.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Marking(Vec<u64>);

impl Marking {
    pub fn new(counts: Vec<u64>) -> Self {
        Marking(counts)
    }

    pub fn zeros(len: usize) -> Self {
        Marking(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn into_counts(self) -> Vec<u64> {
        self.0
    }

    pub fn get(&self, place: usize) -> u64 {
        self.0[place]
    }

    /// Componentwise `self ≤ other`. Markings of different lengths are incomparable.
    pub fn le(&self, other: &Marking) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise `self ≥ other`.
    pub fn covers(&self, other: &Marking) -> bool {
        other.le(self)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Concatenate two markings (used for twin markings `[M M']`).
    pub fn concat(&self, other: &Marking) -> Marking {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Marking(v)
    }
}

impl From<Vec<u64>> for Marking {
    fn from(v: Vec<u64>) -> Self {
        Marking(v)
    }
}

impl fmt::Debug for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Index of a transition in its net.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransitionId(pub usize);

/// Index of a symbol in the net's (sorted) alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(pub usize);

/// A finite sequence of transitions; the empty sequence is λ.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FiringSequence(pub Vec<TransitionId>);

impl FiringSequence {
    pub fn empty() -> Self {
        FiringSequence(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn steps(&self) -> &[TransitionId] {
        &self.0
    }

    pub fn concat(&self, other: &FiringSequence) -> FiringSequence {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FiringSequence(v)
    }
}

impl FromIterator<TransitionId> for FiringSequence {
    fn from_iter<I: IntoIterator<Item = TransitionId>>(iter: I) -> Self {
        FiringSequence(iter.into_iter().collect())
    }
}

/// An observation: a word over the alphabet. ε is the empty word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObservationWord(pub Vec<Symbol>);

impl ObservationWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub id: String,
    /// `None` is ε.
    pub label: Option<Symbol>,
    pub pre: Vec<u64>,
    pub post: Vec<u64>,
}

impl Transition {
    pub fn is_observable(&self) -> bool {
        self.label.is_some()
    }
}

/// A labeled Petri net system `(N, M0, Σ, ℓ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPetriNet {
    places: Vec<String>,
    transitions: Vec<Transition>,
    alphabet: Vec<String>,
    initial: Marking,
}

impl LabeledPetriNet {
    /// Validates and assembles a net. `alphabet` must be sorted and contain
    /// every label used by `transitions`.
    fn from_parts(
        places: Vec<String>,
        transitions: Vec<Transition>,
        alphabet: Vec<String>,
        initial: Marking,
    ) -> Result<Self, NetError> {
        if places.is_empty() && transitions.is_empty() {
            return Err(NetError::Malformed("net has neither places nor transitions".into()));
        }
        let mut seen = HashSet::new();
        for id in places.iter().chain(transitions.iter().map(|t| &t.id)) {
            if id.is_empty() || id == "~" {
                return Err(NetError::Malformed(format!("invalid identifier '{id}'")));
            }
            if !seen.insert(id.as_str()) {
                return Err(NetError::DuplicateId(id.clone()));
            }
        }
        if initial.len() != places.len() {
            return Err(NetError::DimensionMismatch {
                expected: places.len(),
                found: initial.len(),
            });
        }
        for t in &transitions {
            if t.pre.len() != places.len() || t.post.len() != places.len() {
                return Err(NetError::Malformed(format!(
                    "arc table of transition '{}' has wrong size",
                    t.id
                )));
            }
            if let Some(Symbol(s)) = t.label {
                if s >= alphabet.len() {
                    return Err(NetError::Malformed(format!(
                        "transition '{}' has a label outside the alphabet",
                        t.id
                    )));
                }
            }
        }
        if alphabet.iter().any(|s| s == "~" || s.is_empty()) {
            return Err(NetError::Malformed("ε cannot be an alphabet symbol".into()));
        }
        Ok(LabeledPetriNet {
            places,
            transitions,
            alphabet,
            initial,
        })
    }

    pub fn places(&self) -> &[String] {
        &self.places
    }

    pub fn num_places(&self) -> usize {
        self.places.len()
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn transition(&self, t: TransitionId) -> Result<&Transition, NetError> {
        self.transitions
            .get(t.0)
            .ok_or_else(|| NetError::UnknownTransition(format!("#{}", t.0)))
    }

    pub fn transition_ids(&self) -> impl Iterator<Item = TransitionId> {
        (0..self.transitions.len()).map(TransitionId)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn initial_marking(&self) -> &Marking {
        &self.initial
    }

    pub fn place_index(&self, id: &str) -> Option<usize> {
        self.places.iter().position(|p| p == id)
    }

    pub fn transition_id(&self, id: &str) -> Result<TransitionId, NetError> {
        self.transitions
            .iter()
            .position(|t| t.id == id)
            .map(TransitionId)
            .ok_or_else(|| NetError::UnknownTransition(id.to_string()))
    }

    pub fn symbol(&self, name: &str) -> Result<Symbol, NetError> {
        self.alphabet
            .binary_search_by(|s| s.as_str().cmp(name))
            .map(Symbol)
            .map_err(|_| NetError::UnknownSymbol(name.to_string()))
    }

    pub fn symbol_name(&self, s: Symbol) -> &str {
        &self.alphabet[s.0]
    }

    pub fn label(&self, t: TransitionId) -> Option<Symbol> {
        self.transitions[t.0].label
    }

    pub fn label_name(&self, t: TransitionId) -> Option<&str> {
        self.label(t).map(|s| self.symbol_name(s))
    }

    pub fn is_observable(&self, t: TransitionId) -> bool {
        self.transitions[t.0].is_observable()
    }

    pub fn has_unobservable(&self) -> bool {
        self.transitions.iter().any(|t| !t.is_observable())
    }

    pub fn pre(&self, place: usize, t: TransitionId) -> u64 {
        self.transitions[t.0].pre[place]
    }

    pub fn post(&self, place: usize, t: TransitionId) -> u64 {
        self.transitions[t.0].post[place]
    }

    /// Resolves transition identifiers into a firing sequence.
    pub fn sequence(&self, ids: &[&str]) -> Result<FiringSequence, NetError> {
        ids.iter().map(|id| self.transition_id(id)).collect()
    }

    /// Resolves symbol names into an observation word.
    pub fn word(&self, symbols: &[&str]) -> Result<ObservationWord, NetError> {
        symbols
            .iter()
            .map(|s| self.symbol(s))
            .collect::<Result<Vec<_>, _>>()
            .map(ObservationWord)
    }

    pub fn word_names(&self, w: &ObservationWord) -> Vec<String> {
        w.0.iter().map(|s| self.symbol_name(*s).to_string()).collect()
    }

    pub fn sequence_names(&self, seq: &FiringSequence) -> Vec<String> {
        seq.0.iter().map(|t| self.transitions[t.0].id.clone()).collect()
    }

    /// Builds a marking from `(place, count)` pairs; unlisted places are 0.
    pub fn marking(&self, entries: &[(&str, u64)]) -> Result<Marking, NetError> {
        let mut m = vec![0; self.places.len()];
        for (id, n) in entries {
            let i = self
                .place_index(id)
                .ok_or_else(|| NetError::UnknownPlace(id.to_string()))?;
            m[i] = *n;
        }
        Ok(Marking(m))
    }

    pub fn check_dimension(&self, m: &Marking) -> Result<(), NetError> {
        if m.len() != self.places.len() {
            return Err(NetError::DimensionMismatch {
                expected: self.places.len(),
                found: m.len(),
            });
        }
        Ok(())
    }

    /// `M(p) ≥ Pre(p,t)` for every place.
    pub fn enabled(&self, m: &Marking, t: TransitionId) -> Result<bool, NetError> {
        self.check_dimension(m)?;
        let tr = self.transition(t)?;
        Ok(m.0.iter().zip(&tr.pre).all(|(have, need)| have >= need))
    }

    /// Fires `t` without dimension checks. `Ok(None)` when disabled.
    pub(crate) fn try_fire(&self, m: &Marking, t: TransitionId) -> Result<Option<Marking>, NetError> {
        let tr = &self.transitions[t.0];
        let mut next = Vec::with_capacity(m.0.len());
        for (p, ((&have, &need), &add)) in m.0.iter().zip(&tr.pre).zip(&tr.post).enumerate() {
            if have < need {
                return Ok(None);
            }
            let v = (have - need)
                .checked_add(add)
                .ok_or_else(|| NetError::Overflow(self.places[p].clone()))?;
            next.push(v);
        }
        Ok(Some(Marking(next)))
    }

    /// `M'(p) = M(p) − Pre(p,t) + Post(p,t)`.
    pub fn fire(&self, m: &Marking, t: TransitionId) -> Result<Marking, NetError> {
        self.check_dimension(m)?;
        let tr = self.transition(t)?;
        if let Some(p) = (0..m.len()).find(|&p| m.0[p] < tr.pre[p]) {
            return Err(NetError::Disabled {
                transition: tr.id.clone(),
                place: self.places[p].clone(),
                available: m.0[p],
                required: tr.pre[p],
            });
        }
        Ok(self.try_fire(m, t)?.expect("enabledness checked above"))
    }

    pub fn fire_sequence(&self, m: &Marking, seq: &FiringSequence) -> Result<Marking, NetError> {
        let mut cur = m.clone();
        for (index, &t) in seq.0.iter().enumerate() {
            cur = self.fire(&cur, t).map_err(|e| match e {
                e @ NetError::Disabled { .. } => NetError::DisabledAt {
                    index,
                    source: Box::new(e),
                },
                e => e,
            })?;
        }
        Ok(cur)
    }

    /// `ℓ(σ)`: the non-ε labels of `seq`, in order.
    pub fn observation(&self, seq: &FiringSequence) -> ObservationWord {
        ObservationWord(seq.0.iter().filter_map(|&t| self.label(t)).collect())
    }

    /// Transitions enabled at `m`, in declaration order.
    pub fn enabled_transitions<'a>(&'a self, m: &'a Marking) -> impl Iterator<Item = TransitionId> + 'a {
        self.transition_ids().filter(move |&t| {
            self.transitions[t.0]
                .pre
                .iter()
                .zip(m.counts())
                .all(|(need, have)| have >= need)
        })
    }

    /// Returns a copy of the net with a different initial marking.
    pub fn with_initial(&self, initial: Marking) -> Result<LabeledPetriNet, NetError> {
        self.check_dimension(&initial)?;
        let mut net = self.clone();
        net.initial = initial;
        Ok(net)
    }
}

#[derive(Debug, Clone)]
struct PendingTransition {
    id: String,
    label: Option<String>,
    pre: Vec<(String, u64)>,
    post: Vec<(String, u64)>,
}

/// Incremental construction of a [`LabeledPetriNet`] by identifier.
#[derive(Debug, Clone, Default)]
pub struct NetBuilder {
    places: Vec<(String, u64)>,
    transitions: Vec<PendingTransition>,
    extra_symbols: BTreeSet<String>,
}

impl NetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn place(mut self, id: impl Into<String>, tokens: u64) -> Self {
        self.add_place(id, tokens);
        self
    }

    pub fn add_place(&mut self, id: impl Into<String>, tokens: u64) -> &mut Self {
        self.places.push((id.into(), tokens));
        self
    }

    /// Adds a transition. `label = None` makes it unobservable.
    pub fn transition(
        mut self,
        id: impl Into<String>,
        label: Option<&str>,
        pre: &[(&str, u64)],
        post: &[(&str, u64)],
    ) -> Self {
        self.add_transition(
            id,
            label.map(str::to_string),
            pre.iter().map(|(p, n)| (p.to_string(), *n)).collect(),
            post.iter().map(|(p, n)| (p.to_string(), *n)).collect(),
        );
        self
    }

    pub fn add_transition(
        &mut self,
        id: impl Into<String>,
        label: Option<String>,
        pre: Vec<(String, u64)>,
        post: Vec<(String, u64)>,
    ) -> &mut Self {
        self.transitions.push(PendingTransition {
            id: id.into(),
            label,
            pre,
            post,
        });
        self
    }

    /// Widens the alphabet beyond the labels actually used.
    pub fn symbol(mut self, s: impl Into<String>) -> Self {
        self.extra_symbols.insert(s.into());
        self
    }

    pub fn add_symbol(&mut self, s: impl Into<String>) -> &mut Self {
        self.extra_symbols.insert(s.into());
        self
    }

    pub fn build(self) -> Result<LabeledPetriNet, NetError> {
        let places: Vec<String> = self.places.iter().map(|(p, _)| p.clone()).collect();
        let initial = Marking(self.places.iter().map(|(_, n)| *n).collect());
        let mut alphabet: BTreeSet<String> = self.extra_symbols;
        for t in &self.transitions {
            if let Some(l) = &t.label {
                alphabet.insert(l.clone());
            }
        }
        let alphabet: Vec<String> = alphabet.into_iter().collect();
        let index = |id: &str| -> Result<usize, NetError> {
            places
                .iter()
                .position(|p| p == id)
                .ok_or_else(|| NetError::UnknownPlace(id.to_string()))
        };
        let mut transitions = Vec::with_capacity(self.transitions.len());
        for t in self.transitions {
            let mut pre = vec![0; places.len()];
            let mut post = vec![0; places.len()];
            for (p, n) in &t.pre {
                pre[index(p)?] += n;
            }
            for (p, n) in &t.post {
                post[index(p)?] += n;
            }
            let label = t
                .label
                .map(|l| Symbol(alphabet.binary_search(&l).expect("label inserted into alphabet")));
            transitions.push(Transition {
                id: t.id,
                label,
                pre,
                post,
            });
        }
        LabeledPetriNet::from_parts(places, transitions, alphabet, initial)
    }
}
