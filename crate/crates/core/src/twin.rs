//! The label-synchronized twin of a labeled net.
//!
//! The twin runs two copies of a net side by side over places `P ⊎ P'`.
//! Unobservable transitions move one copy alone (`(t,λ)` or `(λ,t)`); an
//! observable transition of one copy must be matched by an equally-labeled
//! transition of the other. Every twin run therefore pairs two runs of the
//! original net with the same observation.

use std::collections::HashSet;

use crate::net::{FiringSequence, LabeledPetriNet, Marking, NetBuilder, TransitionId};

/// One side of a twin transition; `None` is λ (the copy does not move).
pub type Side = Option<TransitionId>;

#[derive(Clone, Debug)]
pub struct TwinNet {
    net: LabeledPetriNet,
    pairs: Vec<(Side, Side)>,
    base_places: usize,
}

impl TwinNet {
    /// Builds the twin of `g`.
    ///
    /// Transitions are enumerated as all `(t,λ)` for unobservable `t`, then
    /// all `(λ,t)`, then observable pairs `(t1,t2)` with `ℓ(t1) = ℓ(t2)` in
    /// lexicographic index order. Twin transition ids render λ as `~`.
    pub fn build(g: &LabeledPetriNet) -> TwinNet {
        let n = g.num_places();
        let mut taken: HashSet<String> = g.places().iter().cloned().collect();
        let mut builder = NetBuilder::new();
        let m0 = g.initial_marking();
        for (i, p) in g.places().iter().enumerate() {
            builder.add_place(p.clone(), m0.get(i));
        }
        let mut primed = Vec::with_capacity(n);
        for (i, p) in g.places().iter().enumerate() {
            let mut name = format!("{p}'");
            while taken.contains(&name) {
                name.push('\'');
            }
            taken.insert(name.clone());
            builder.add_place(name.clone(), m0.get(i));
            primed.push(name);
        }
        for s in g.alphabet() {
            builder.add_symbol(s.clone());
        }

        let mut pairs = Vec::new();
        let unobs: Vec<TransitionId> = g.transition_ids().filter(|&t| !g.is_observable(t)).collect();
        for &t in &unobs {
            pairs.push((Some(t), None));
        }
        for &t in &unobs {
            pairs.push((None, Some(t)));
        }
        for t1 in g.transition_ids() {
            let Some(l1) = g.label(t1) else { continue };
            for t2 in g.transition_ids() {
                if g.label(t2) == Some(l1) {
                    pairs.push((Some(t1), Some(t2)));
                }
            }
        }

        for &(a, b) in &pairs {
            let mut pre = Vec::new();
            let mut post = Vec::new();
            if let Some(t) = a {
                for (i, p) in g.places().iter().enumerate() {
                    pre.push((p.clone(), g.pre(i, t)));
                    post.push((p.clone(), g.post(i, t)));
                }
            }
            if let Some(t) = b {
                for (i, p) in primed.iter().enumerate() {
                    pre.push((p.clone(), g.pre(i, t)));
                    post.push((p.clone(), g.post(i, t)));
                }
            }
            let label = match (a, b) {
                (Some(t), Some(_)) => g.label_name(t).map(str::to_string),
                _ => None,
            };
            let side = |s: Side| s.map_or("~".to_string(), |t| g.transitions()[t.0].id.clone());
            let id = format!("({},{})", side(a), side(b));
            builder.add_transition(id, label, pre, post);
        }

        let net = builder.build().expect("twin of a well-formed net is well-formed");
        TwinNet {
            net,
            pairs,
            base_places: n,
        }
    }

    pub fn net(&self) -> &LabeledPetriNet {
        &self.net
    }

    /// Number of places of the original net.
    pub fn base_places(&self) -> usize {
        self.base_places
    }

    pub fn pair_of(&self, t: TransitionId) -> (Side, Side) {
        self.pairs[t.0]
    }

    pub fn pairs(&self) -> &[(Side, Side)] {
        &self.pairs
    }

    /// Index of the primed mirror of base place `p`.
    pub fn mirror(&self, p: usize) -> usize {
        p + self.base_places
    }

    /// Restriction of a twin marking to `P`.
    pub fn first(&self, m: &Marking) -> Marking {
        Marking::new(m.counts()[..self.base_places].to_vec())
    }

    /// Restriction of a twin marking to `P'`, re-indexed by `P`.
    pub fn second(&self, m: &Marking) -> Marking {
        Marking::new(m.counts()[self.base_places..].to_vec())
    }

    /// Splits a twin run into its two component runs, dropping λ entries.
    pub fn project(&self, seq: &FiringSequence) -> (FiringSequence, FiringSequence) {
        let first = seq.steps().iter().filter_map(|&t| self.pairs[t.0].0).collect();
        let second = seq.steps().iter().filter_map(|&t| self.pairs[t.0].1).collect();
        (first, second)
    }

    /// The least base place `p` with `m(p) ≠ m(p')`, if any.
    pub fn mismatch(&self, m: &Marking) -> Option<usize> {
        let c = m.counts();
        (0..self.base_places).find(|&p| c[p] != c[p + self.base_places])
    }
}
