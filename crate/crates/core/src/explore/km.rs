use std::collections::VecDeque;
use std::fmt;

use crate::net::{LabeledPetriNet, Marking, NetError, TransitionId};

/// A token count or ω. `Finite(_) < Omega`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmegaCount {
    Finite(u64),
    Omega,
}

impl OmegaCount {
    pub fn is_omega(self) -> bool {
        matches!(self, OmegaCount::Omega)
    }

    fn at_least(self, n: u64) -> bool {
        match self {
            OmegaCount::Finite(v) => v >= n,
            OmegaCount::Omega => true,
        }
    }
}

impl fmt::Display for OmegaCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaCount::Finite(v) => write!(f, "{v}"),
            OmegaCount::Omega => write!(f, "ω"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OmegaMarking(Vec<OmegaCount>);

impl OmegaMarking {
    pub fn counts(&self) -> &[OmegaCount] {
        &self.0
    }

    /// Componentwise order with ω as top.
    pub fn le(&self, other: &OmegaMarking) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn covers(&self, target: &Marking) -> bool {
        self.0.len() == target.len() && self.0.iter().zip(target.counts()).all(|(a, &b)| a.at_least(b))
    }

    fn enables(&self, pre: &[u64]) -> bool {
        self.0.iter().zip(pre).all(|(a, &b)| a.at_least(b))
    }

    fn fire(&self, pre: &[u64], post: &[u64], places: &[String]) -> Result<OmegaMarking, NetError> {
        let mut next = Vec::with_capacity(self.0.len());
        for (p, (&c, (&sub, &add))) in self.0.iter().zip(pre.iter().zip(post)).enumerate() {
            next.push(match c {
                OmegaCount::Omega => OmegaCount::Omega,
                OmegaCount::Finite(v) => OmegaCount::Finite(
                    (v - sub)
                        .checked_add(add)
                        .ok_or_else(|| NetError::Overflow(places[p].clone()))?,
                ),
            });
        }
        Ok(OmegaMarking(next))
    }
}

impl From<&Marking> for OmegaMarking {
    fn from(m: &Marking) -> Self {
        OmegaMarking(m.counts().iter().map(|&v| OmegaCount::Finite(v)).collect())
    }
}

impl fmt::Display for OmegaMarking {
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

#[derive(Clone, Debug)]
pub struct KmNode {
    pub marking: OmegaMarking,
    pub parent: Option<(usize, TransitionId)>,
    pub children: Vec<usize>,
    /// Node repeats an ancestor's marking and was not expanded.
    pub duplicate: bool,
}

/// Karp–Miller coverability tree.
#[derive(Clone, Debug)]
pub struct KarpMillerTree {
    nodes: Vec<KmNode>,
}

impl KarpMillerTree {
    /// Breadth-first construction. A successor that strictly covers an
    /// ancestor has every strictly larger coordinate replaced by ω; a node
    /// equal to one of its ancestors is a leaf.
    pub fn build(net: &LabeledPetriNet) -> Result<Self, NetError> {
        let mut nodes = vec![KmNode {
            marking: OmegaMarking::from(net.initial_marking()),
            parent: None,
            children: Vec::new(),
            duplicate: false,
        }];
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            let ancestors = ancestors(&nodes, u);
            if ancestors[1..].iter().any(|&a| nodes[a].marking == nodes[u].marking) {
                nodes[u].duplicate = true;
                continue;
            }
            for t in net.transition_ids() {
                let tr = &net.transitions()[t.0];
                if !nodes[u].marking.enables(&tr.pre) {
                    continue;
                }
                let mut next = nodes[u].marking.fire(&tr.pre, &tr.post, net.places())?;
                for &a in &ancestors {
                    let anc = &nodes[a].marking;
                    if anc.le(&next) && anc != &next {
                        for p in 0..next.0.len() {
                            if anc.0[p] < next.0[p] {
                                next.0[p] = OmegaCount::Omega;
                            }
                        }
                    }
                }
                let v = nodes.len();
                nodes.push(KmNode {
                    marking: next,
                    parent: Some((u, t)),
                    children: Vec::new(),
                    duplicate: false,
                });
                nodes[u].children.push(v);
                queue.push_back(v);
            }
        }
        Ok(KarpMillerTree { nodes })
    }

    pub fn nodes(&self) -> &[KmNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> &KmNode {
        &self.nodes[0]
    }

    pub fn covers(&self, target: &Marking) -> bool {
        self.nodes.iter().any(|n| n.marking.covers(target))
    }

    /// A net is bounded iff its tree has no ω entry.
    pub fn is_bounded(&self) -> bool {
        self.nodes.iter().all(|n| n.marking.0.iter().all(|c| !c.is_omega()))
    }
}

/// `u` and its ancestors, nearest first.
fn ancestors(nodes: &[KmNode], u: usize) -> Vec<usize> {
    let mut out = vec![u];
    let mut cur = u;
    while let Some((p, _)) = nodes[cur].parent {
        out.push(p);
        cur = p;
    }
    out
}

/// Whether some reachable marking covers `target`.
pub fn coverable(net: &LabeledPetriNet, target: &Marking) -> Result<bool, NetError> {
    net.check_dimension(target)?;
    Ok(KarpMillerTree::build(net)?.covers(target))
}
