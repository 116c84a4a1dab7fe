//! Graphviz DOT export for nets and the state spaces built from them.

use std::fmt::Write;

use crate::analyze::Observer;
use crate::explore::{KarpMillerTree, ReachabilityGraph};
use crate::net::{LabeledPetriNet, TransitionId};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn label_of(net: &LabeledPetriNet, t: TransitionId) -> &str {
    net.label_name(t).unwrap_or("ε")
}

/// Places as circles captioned with their token count, transitions as boxes
/// captioned with their label; arc weights above one are printed.
pub fn net_dot(net: &LabeledPetriNet) -> String {
    let mut out = String::from("digraph net {\n  rankdir=LR;\n");
    for (p, id) in net.places().iter().enumerate() {
        let cap = format!("{id}\n{}", net.initial_marking().get(p));
        writeln!(out, "  p{p} [shape=circle, label={}];", quote(&cap)).unwrap();
    }
    for (i, t) in net.transitions().iter().enumerate() {
        let cap = format!("{}\n{}", t.id, label_of(net, TransitionId(i)));
        writeln!(out, "  t{i} [shape=box, label={}];", quote(&cap)).unwrap();
    }
    let weight = |n: u64| if n > 1 { format!(" [label=\"{n}\"]") } else { String::new() };
    for (i, t) in net.transitions().iter().enumerate() {
        for (p, &n) in t.pre.iter().enumerate().filter(|(_, &n)| n > 0) {
            writeln!(out, "  p{p} -> t{i}{};", weight(n)).unwrap();
        }
        for (p, &n) in t.post.iter().enumerate().filter(|(_, &n)| n > 0) {
            writeln!(out, "  t{i} -> p{p}{};", weight(n)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Nodes captioned with markings, edges with transition ids. A truncated
/// graph is marked in the graph caption.
pub fn reachability_dot(graph: &ReachabilityGraph, net: &LabeledPetriNet) -> String {
    let mut out = String::from("digraph reachability {\n");
    if !graph.is_complete() {
        out.push_str("  label=\"truncated\";\n");
    }
    for n in 0..graph.len() {
        let shape = if n == graph.initial() { ", penwidth=2" } else { "" };
        writeln!(out, "  m{n} [label={}{shape}];", quote(&graph.marking(n).to_string())).unwrap();
    }
    for (u, t, v) in graph.edges() {
        writeln!(out, "  m{u} -> m{v} [label={}];", quote(&net.transitions()[t.0].id)).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Observer states captioned with their estimates, edges with symbols.
pub fn observer_dot(obs: &Observer, net: &LabeledPetriNet) -> String {
    let mut out = String::from("digraph observer {\n");
    for q in 0..obs.len() {
        let est: Vec<String> = obs.estimate(q).iter().map(|m| m.to_string()).collect();
        let cap = format!("{{{}}}", est.join(","));
        let style = if obs.is_singleton(q) { ", peripheries=2" } else { "" };
        writeln!(out, "  q{q} [label={}{style}];", quote(&cap)).unwrap();
    }
    for q in 0..obs.len() {
        for &(s, r) in obs.successors(q) {
            writeln!(out, "  q{q} -> q{r} [label={}];", quote(net.symbol_name(s))).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Tree nodes captioned with ω-markings; repeated markings are dashed.
pub fn km_dot(tree: &KarpMillerTree, net: &LabeledPetriNet) -> String {
    let mut out = String::from("digraph karp_miller {\n");
    for (i, n) in tree.nodes().iter().enumerate() {
        let style = if n.duplicate { ", style=dashed" } else { "" };
        writeln!(out, "  n{i} [label={}{style}];", quote(&n.marking.to_string())).unwrap();
    }
    for (i, n) in tree.nodes().iter().enumerate() {
        if let Some((p, t)) = n.parent {
            writeln!(out, "  n{p} -> n{i} [label={}];", quote(&net.transitions()[t.0].id)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
