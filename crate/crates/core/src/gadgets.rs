//! Reduction gadgets: nets built from other nets (or from a coverability
//! instance) so that a property of the output encodes a question about the
//! input.
//!
//! Every element a gadget adds is recorded in [`GadgetOutput::provenance`]
//! with its role in the construction; elements of the input keep their ids.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::net::{LabeledPetriNet, Marking, NetBuilder, NetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("identifier '{0}' is reserved by the construction")]
    ReservedName(String),

    #[error("input net has unobservable transition '{0}'")]
    Unobservable(String),

    #[error("net has no element with role '{0}'")]
    MissingRole(String),

    #[error(transparent)]
    Net(#[from] NetError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementKind {
    Place,
    Transition,
    Symbol,
}

impl ElementKind {
    pub fn keyword(self) -> &'static str {
        match self {
            ElementKind::Place => "place",
            ElementKind::Transition => "trans",
            ElementKind::Symbol => "symbol",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "place" => Some(ElementKind::Place),
            "trans" => Some(ElementKind::Transition),
            "symbol" => Some(ElementKind::Symbol),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Provenance {
    pub kind: ElementKind,
    pub id: String,
    pub role: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetOutput {
    pub net: LabeledPetriNet,
    pub provenance: Vec<Provenance>,
    pub secret: Option<Marking>,
}

impl GadgetOutput {
    /// Id of the element playing `role`.
    pub fn element(&self, kind: ElementKind, role: &str) -> Option<&str> {
        self.provenance
            .iter()
            .find(|p| p.kind == kind && p.role == role)
            .map(|p| p.id.as_str())
    }

    pub fn role_of(&self, kind: ElementKind, id: &str) -> Option<&str> {
        self.provenance
            .iter()
            .find(|p| p.kind == kind && p.id == id)
            .map(|p| p.role.as_str())
    }
}

struct Recorder(Vec<Provenance>);

impl Recorder {
    fn add(&mut self, kind: ElementKind, id: &str, role: impl Into<String>) {
        self.0.push(Provenance {
            kind,
            id: id.to_string(),
            role: role.into(),
        });
    }
}

fn ids(net: &LabeledPetriNet) -> BTreeSet<&str> {
    net.places()
        .iter()
        .map(String::as_str)
        .chain(net.transitions().iter().map(|t| t.id.as_str()))
        .collect()
}

fn arcs(net: &LabeledPetriNet, row: &[u64], rename: impl Fn(&str) -> String) -> Vec<(String, u64)> {
    row.iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(p, &n)| (rename(&net.places()[p]), n))
        .collect()
}

const COV_PLACES: [&str; 3] = ["p_new,1", "p_new,2", "p_new,3"];
const COV_TRANS: [&str; 3] = ["t_uo,1", "t_uo,2", "t_loop"];

/// Coverability instance `(net, target)` to strong detectability: the output
/// is strongly detectable iff `target` is not coverable in `net`.
///
/// Original transitions are relabeled by their own ids. Two unobservable
/// transitions `t_uo,1`, `t_uo,2` each consume `target` and put a token in
/// their own fresh place; a marked place with an observable self-loop
/// `t_loop` keeps the net alive.
pub fn coverability_to_strong(net: &LabeledPetriNet, target: &Marking) -> Result<GadgetOutput, GadgetError> {
    net.check_dimension(target)?;
    let taken = ids(net);
    for r in COV_PLACES.iter().chain(&COV_TRANS) {
        if taken.contains(r) {
            return Err(GadgetError::ReservedName(r.to_string()));
        }
    }
    let mut b = NetBuilder::new();
    let mut rec = Recorder(Vec::new());
    for (p, id) in net.places().iter().enumerate() {
        b.add_place(id.clone(), net.initial_marking().get(p));
    }
    for (i, id) in COV_PLACES.iter().enumerate() {
        b.add_place(*id, u64::from(i == 2));
        rec.add(ElementKind::Place, id, *id);
    }
    for t in net.transitions() {
        b.add_transition(
            t.id.clone(),
            Some(t.id.clone()),
            arcs(net, &t.pre, str::to_string),
            arcs(net, &t.post, str::to_string),
        );
    }
    let need = arcs(net, target.counts(), str::to_string);
    for (i, id) in COV_TRANS[..2].iter().enumerate() {
        b.add_transition(*id, None, need.clone(), vec![(COV_PLACES[i].to_string(), 1)]);
        rec.add(ElementKind::Transition, id, *id);
    }
    let lp = (COV_PLACES[2].to_string(), 1);
    b.add_transition(COV_TRANS[2], Some(COV_TRANS[2].to_string()), vec![lp.clone()], vec![lp]);
    rec.add(ElementKind::Transition, COV_TRANS[2], COV_TRANS[2]);
    for t in net.transitions() {
        rec.add(ElementKind::Symbol, &t.id, format!("label of {}", t.id));
    }
    rec.add(ElementKind::Symbol, COV_TRANS[2], "label of t_loop");
    Ok(GadgetOutput {
        net: b.build()?,
        provenance: rec.0,
        secret: None,
    })
}

/// First of `base`, `base'`, `base''`, ... not in `used`.
fn fresh(base: &str, used: &BTreeSet<String>) -> String {
    let mut s = base.to_string();
    while used.contains(&s) {
        s.push('\'');
    }
    s
}

/// Language inclusion `L(g1) ⊆ L(g2)` to weak detectability: the output is
/// weakly detectable iff inclusion fails.
///
/// Ten control places `p0`..`p9` and three new labels `x`, `a`, `b` are
/// added. From `p0` an `x` starts one of three branches: `g1` (control `p1`)
/// or one of two identical copies of `g2` (controls `p4`, `p7`, places
/// suffixed `'` and `''`). A second `x` moves control to `p2`/`p5`/`p8`,
/// where `a` drains one token from any `g1` place (branch 1) or loops
/// (branches 2 and 3), and `b` moves to `p3`/`p6`/`p9`, which loop on `b`.
/// When the inputs already use `x`, `a` or `b`, primes are appended to the
/// new labels until they are fresh.
pub fn inclusion_to_weak(g1: &LabeledPetriNet, g2: &LabeledPetriNet) -> Result<GadgetOutput, GadgetError> {
    for g in [g1, g2] {
        if let Some(t) = g.transitions().iter().find(|t| !t.is_observable()) {
            return Err(GadgetError::Unobservable(t.id.clone()));
        }
    }
    let copy = |suffix: &'static str| move |id: &str| format!("{id}{suffix}");
    let (ca, cb) = (copy("'"), copy("''"));

    let mut used_labels: BTreeSet<String> = g1.alphabet().iter().chain(g2.alphabet()).cloned().collect();
    let mut label = |base: &str| {
        let l = fresh(base, &used_labels);
        used_labels.insert(l.clone());
        l
    };
    let (x, a, bl) = (label("x"), label("a"), label("b"));

    let ctrl: Vec<String> = (0..10).map(|i| format!("p{i}")).collect();
    let mut new_trans: Vec<String> = ["x_p0_p1", "x_p0_p4", "x_p0_p7", "x_p1_p2", "x_p4_p5", "x_p7_p8"]
        .iter()
        .chain(&["a_p5", "a_p8", "b_p2_p3", "b_p5_p6", "b_p8_p9", "b_p3", "b_p6", "b_p9"])
        .map(|s| s.to_string())
        .collect();
    new_trans.extend(g1.places().iter().map(|q| format!("a_p2_{q}")));

    let mut seen: BTreeSet<String> = BTreeSet::new();
    let orig = g1
        .places()
        .iter()
        .chain(g1.transitions().iter().map(|t| &t.id))
        .cloned()
        .chain(g2.places().iter().chain(g2.transitions().iter().map(|t| &t.id)).flat_map(|id| [ca(id), cb(id)]));
    for id in orig {
        if ctrl.contains(&id) || new_trans.contains(&id) {
            return Err(GadgetError::ReservedName(id));
        }
        if !seen.insert(id.clone()) {
            return Err(NetError::DuplicateId(id).into());
        }
    }

    let mut b = NetBuilder::new();
    let mut rec = Recorder(Vec::new());
    for (i, p) in ctrl.iter().enumerate() {
        b.add_place(p.clone(), u64::from(i == 0));
        rec.add(ElementKind::Place, p, p.clone());
    }
    for p in g1.places() {
        b.add_place(p.clone(), 0);
    }
    for (tag, rename) in [("copy A", &ca), ("copy B", &cb)] {
        for p in g2.places() {
            let id = rename(p);
            b.add_place(id.clone(), 0);
            rec.add(ElementKind::Place, &id, format!("{tag} of {p}"));
        }
    }

    // g1 and the two g2 copies, each self-looped on its control place
    let sim = |b: &mut NetBuilder, g: &LabeledPetriNet, rename: &dyn Fn(&str) -> String, control: &str| {
        for t in g.transitions() {
            let mut pre = arcs(g, &t.pre, rename);
            let mut post = arcs(g, &t.post, rename);
            pre.push((control.to_string(), 1));
            post.push((control.to_string(), 1));
            b.add_transition(rename(&t.id), t.label.map(|s| g.symbol_name(s).to_string()), pre, post);
        }
    };
    sim(&mut b, g1, &str::to_string, "p1");
    sim(&mut b, g2, &ca, "p4");
    sim(&mut b, g2, &cb, "p7");
    for (tag, rename) in [("copy A", &ca), ("copy B", &cb)] {
        for t in g2.transitions() {
            let id = rename(&t.id);
            rec.add(ElementKind::Transition, &id, format!("{tag} of {}", t.id));
        }
    }

    let mut add = |b: &mut NetBuilder, id: &str, label: &str, pre: Vec<(String, u64)>, post: Vec<(String, u64)>| {
        b.add_transition(id, Some(label.to_string()), pre, post);
        rec.add(ElementKind::Transition, id, id.to_string());
    };
    let one = |p: &str| (p.to_string(), 1u64);
    type Rename<'a> = &'a dyn Fn(&str) -> String;
    let starts: [(&str, &str, &LabeledPetriNet, Rename); 3] = [
        ("x_p0_p1", "p1", g1, &str::to_string),
        ("x_p0_p4", "p4", g2, &ca),
        ("x_p0_p7", "p7", g2, &cb),
    ];
    for (id, control, g, rename) in starts {
        let mut post = arcs(g, g.initial_marking().counts(), rename);
        post.push(one(control));
        add(&mut b, id, &x, vec![one("p0")], post);
    }
    for (from, to) in [("p1", "p2"), ("p4", "p5"), ("p7", "p8")] {
        add(&mut b, &format!("x_{from}_{to}"), &x, vec![one(from)], vec![one(to)]);
    }
    for q in g1.places() {
        add(&mut b, &format!("a_p2_{q}"), &a, vec![one("p2"), one(q)], vec![one("p2")]);
    }
    for p in ["p5", "p8"] {
        add(&mut b, &format!("a_{p}"), &a, vec![one(p)], vec![one(p)]);
    }
    for (from, to) in [("p2", "p3"), ("p5", "p6"), ("p8", "p9")] {
        add(&mut b, &format!("b_{from}_{to}"), &bl, vec![one(from)], vec![one(to)]);
    }
    for p in ["p3", "p6", "p9"] {
        add(&mut b, &format!("b_{p}"), &bl, vec![one(p)], vec![one(p)]);
    }
    for (role, l) in [("x", &x), ("a", &a), ("b", &bl)] {
        rec.add(ElementKind::Symbol, l, role);
    }

    let mut out = GadgetOutput {
        net: b.build()?,
        provenance: rec.0,
        secret: None,
    };
    out.secret = Some(secret_marking(&out)?);
    Ok(out)
}

/// The secret marking of an inclusion gadget: one token in `p3`, nothing
/// elsewhere.
pub fn secret_marking(gadget: &GadgetOutput) -> Result<Marking, GadgetError> {
    let id = gadget
        .element(ElementKind::Place, "p3")
        .ok_or_else(|| GadgetError::MissingRole("p3".into()))?;
    let idx = gadget
        .net
        .place_index(id)
        .ok_or_else(|| GadgetError::MissingRole("p3".into()))?;
    let mut counts = vec![0; gadget.net.num_places()];
    counts[idx] = 1;
    Ok(Marking::new(counts))
}

/// Adds an unobservable transition whose pre and post are both `target`: it
/// can fire forever iff `target` is coverable.
pub fn selfloop_unobservable(net: &LabeledPetriNet, target: &Marking) -> Result<GadgetOutput, GadgetError> {
    net.check_dimension(target)?;
    let used: BTreeSet<String> = ids(net).into_iter().map(str::to_string).collect();
    let id = fresh("t_selfloop", &used);
    let mut b = NetBuilder::new();
    for (p, pid) in net.places().iter().enumerate() {
        b.add_place(pid.clone(), net.initial_marking().get(p));
    }
    for t in net.transitions() {
        b.add_transition(
            t.id.clone(),
            t.label.map(|s| net.symbol_name(s).to_string()),
            arcs(net, &t.pre, str::to_string),
            arcs(net, &t.post, str::to_string),
        );
    }
    for s in net.alphabet() {
        b.add_symbol(s.clone());
    }
    let need = arcs(net, target.counts(), str::to_string);
    b.add_transition(id.clone(), None, need.clone(), need);
    Ok(GadgetOutput {
        net: b.build()?,
        provenance: vec![Provenance {
            kind: ElementKind::Transition,
            id,
            role: "unobservable self-loop".into(),
        }],
        secret: None,
    })
}
