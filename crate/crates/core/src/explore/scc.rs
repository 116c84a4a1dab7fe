use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

/// Strongly connected components of a finite successor relation.
#[derive(Clone, Debug)]
pub(crate) struct Components {
    component: Vec<usize>,
    nontrivial: Vec<bool>,
}

impl Components {
    pub(crate) fn new<'a, I>(node_count: usize, successors: impl Fn(usize) -> I) -> Self
    where
        I: IntoIterator<Item = &'a usize>,
    {
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(node_count, 0);
        for _ in 0..node_count {
            g.add_node(());
        }
        for u in 0..node_count {
            for &v in successors(u) {
                g.add_edge(NodeIndex::new(u), NodeIndex::new(v), ());
            }
        }
        let sccs = tarjan_scc(&g);
        let mut component = vec![0; node_count];
        let mut nontrivial = vec![false; sccs.len()];
        for (c, members) in sccs.iter().enumerate() {
            for n in members {
                component[n.index()] = c;
            }
            nontrivial[c] = members.len() > 1;
        }
        for u in 0..node_count {
            if successors(u).into_iter().any(|&v| v == u) {
                nontrivial[component[u]] = true;
            }
        }
        Components {
            component,
            nontrivial,
        }
    }

    pub(crate) fn same(&self, a: usize, b: usize) -> bool {
        self.component[a] == self.component[b]
    }

    /// True when `node` lies on a cycle of length ≥ 1.
    pub(crate) fn on_cycle(&self, node: usize) -> bool {
        self.nontrivial[self.component[node]]
    }
}
