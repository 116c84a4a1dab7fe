use std::collections::VecDeque;
use std::time::Instant;

use super::{check_assumptions, AnalyzeError, AssumptionReport, Observer};
use crate::explore::{Budget, Outcome, ReachabilityGraph, Stats, Verdict, Witness};
use crate::net::{LabeledPetriNet, ObservationWord, Symbol};

/// Weak detectability: some infinite observation eventually pins down the
/// current marking forever. Exact for bounded nets; unbounded nets give
/// `Inconclusive`.
pub fn check_weak(net: &LabeledPetriNet, budget: Budget) -> Result<Verdict, AnalyzeError> {
    let report = check_assumptions(net, budget)?;
    check_weak_gated(net, budget, &report)
}

/// As [`check_weak`], reusing an assumption report already computed.
pub fn check_weak_gated(
    net: &LabeledPetriNet,
    budget: Budget,
    report: &AssumptionReport,
) -> Result<Verdict, AnalyzeError> {
    report.gate()?;
    let clock = Instant::now();
    let graph = ReachabilityGraph::build(net, budget)?;
    if !graph.is_complete() {
        let stats = Stats {
            states_explored: graph.len(),
            depth_reached: graph.max_depth(),
            wall_time: clock.elapsed(),
        };
        return Ok(Verdict::new(
            Outcome::Inconclusive {
                reason: "reachability graph did not close; weak detectability of unbounded nets is undecidable in general".into(),
            },
            stats,
        ));
    }
    let depth = graph.max_depth();
    let nodes = graph.len();
    let obs = Observer::from_graph(net, graph);
    let singles: Vec<bool> = (0..obs.len()).map(|q| obs.is_singleton(q)).collect();
    let succ: Vec<Vec<usize>> = (0..obs.len())
        .map(|q| {
            if !singles[q] {
                return Vec::new();
            }
            obs.successors(q).iter().map(|&(_, r)| r).filter(|&r| singles[r]).collect()
        })
        .collect();
    let comps = crate::explore::Components::new(obs.len(), |q| &succ[q]);
    let stats = Stats {
        states_explored: nodes + obs.len(),
        depth_reached: depth,
        wall_time: clock.elapsed(),
    };
    let mut verdict = match (0..obs.len()).find(|&q| singles[q] && comps.on_cycle(q)) {
        Some(q) => {
            let cycle = singleton_cycle(&obs, q, &singles);
            let note = format!(
                "lasso prefix={} cycle={}",
                show(net, &obs.word_to(q)),
                show(net, &cycle)
            );
            Verdict::new(Outcome::Holds, stats).with_note(note)
        }
        None => Verdict::new(
            Outcome::Fails(Witness::NoSingletonCycle {
                observer_states: obs.len(),
                singleton_states: singles.iter().filter(|&&s| s).count(),
            }),
            stats,
        ),
    };
    if let Some(c) = report.caveat() {
        verdict.note = Some(match verdict.note {
            Some(n) => format!("{n}; {c}"),
            None => c,
        });
    }
    Ok(verdict)
}

/// Shortest nonempty word from `q` back to `q` through singleton states.
fn singleton_cycle(obs: &Observer, q: usize, singles: &[bool]) -> ObservationWord {
    let mut parent: Vec<Option<(usize, Symbol)>> = vec![None; obs.len()];
    let mut seen = vec![false; obs.len()];
    let mut queue = VecDeque::from([q]);
    while let Some(u) = queue.pop_front() {
        for &(s, r) in obs.successors(u) {
            if !singles[r] {
                continue;
            }
            if r == q {
                let mut word = vec![s];
                let mut cur = u;
                while cur != q {
                    let (p, a) = parent[cur].expect("bfs parent");
                    word.push(a);
                    cur = p;
                }
                word.reverse();
                return ObservationWord(word);
            }
            if !seen[r] {
                seen[r] = true;
                parent[r] = Some((u, s));
                queue.push_back(r);
            }
        }
    }
    unreachable!("state lies on a singleton cycle")
}

fn show(net: &LabeledPetriNet, w: &ObservationWord) -> String {
    if w.is_empty() {
        "ε".into()
    } else {
        net.word_names(w).join(" ")
    }
}
