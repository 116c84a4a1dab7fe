//! Small reference nets used throughout the tests and documentation.

use crate::net::{LabeledPetriNet, NetBuilder};

/// One place, one `a`-labeled self-loop, one token. Bounded and detectable.
pub fn e1() -> LabeledPetriNet {
    NetBuilder::new()
        .place("p", 1)
        .transition("t", Some("a"), &[("p", 1)], &[("p", 1)])
        .build()
        .expect("fixture e1")
}

/// `t1` loops on `p`, `t2` moves the token to `q`, `t3` loops on `q`; all
/// labeled `a`. Bounded, neither strongly nor weakly detectable.
pub fn e2() -> LabeledPetriNet {
    NetBuilder::new()
        .place("p", 1)
        .place("q", 0)
        .transition("t1", Some("a"), &[("p", 1)], &[("p", 1)])
        .transition("t2", Some("a"), &[("p", 1)], &[("q", 1)])
        .transition("t3", Some("a"), &[("q", 1)], &[("q", 1)])
        .build()
        .expect("fixture e2")
}

/// A producer: `t` keeps the token in `p` and adds one to `q`. Unbounded,
/// deterministic, strongly detectable.
pub fn e3() -> LabeledPetriNet {
    NetBuilder::new()
        .place("p", 1)
        .place("q", 0)
        .transition("t", Some("a"), &[("p", 1)], &[("p", 1), ("q", 1)])
        .build()
        .expect("fixture e3")
}

/// [`e3`] plus a second `a`-labeled producer `u` into `r`. Unbounded and not
/// strongly detectable.
pub fn e4() -> LabeledPetriNet {
    NetBuilder::new()
        .place("p", 1)
        .place("q", 0)
        .place("r", 0)
        .transition("t", Some("a"), &[("p", 1)], &[("p", 1), ("q", 1)])
        .transition("u", Some("a"), &[("p", 1)], &[("p", 1), ("r", 1)])
        .build()
        .expect("fixture e4")
}

/// All four fixtures with their names.
pub fn all() -> Vec<(&'static str, LabeledPetriNet)> {
    vec![("e1", e1()), ("e2", e2()), ("e3", e3()), ("e4", e4())]
}
