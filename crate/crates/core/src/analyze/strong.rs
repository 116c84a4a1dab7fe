use std::collections::VecDeque;

use super::{build_observer, check_assumptions, AnalyzeError, AssumptionReport};
use crate::explore::{search_pattern, Budget, Components, PathPattern, Verdict};
use crate::net::LabeledPetriNet;
use crate::twin::TwinNet;

/// Strong detectability via a pumpable mismatch in the twin plant. A `Fails`
/// witness is a run of [`TwinNet::build`]`(net)`.
pub fn check_strong(net: &LabeledPetriNet, budget: Budget) -> Result<Verdict, AnalyzeError> {
    let report = check_assumptions(net, budget)?;
    check_strong_gated(net, budget, &report)
}

/// As [`check_strong`], reusing an assumption report already computed.
pub fn check_strong_gated(
    net: &LabeledPetriNet,
    budget: Budget,
    report: &AssumptionReport,
) -> Result<Verdict, AnalyzeError> {
    report.gate()?;
    let twin = TwinNet::build(net);
    let pattern = PathPattern::pumpable_mismatch(&twin);
    let mut verdict = search_pattern(twin.net(), twin.net().initial_marking(), &pattern, budget)?;
    if let Some(c) = report.caveat() {
        verdict = verdict.with_note(c);
    }
    Ok(verdict)
}

/// Independent decision for bounded nets from the observer: strong
/// detectability fails iff some observer state on a cycle can reach a
/// non-singleton estimate.
pub fn check_strong_oracle(net: &LabeledPetriNet, budget: Budget) -> Result<bool, AnalyzeError> {
    let obs = build_observer(net, budget)?;
    let n = obs.len();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|q| obs.successors(q).iter().map(|&(_, r)| r).collect())
        .collect();
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (q, rs) in succ.iter().enumerate() {
        for &r in rs {
            pred[r].push(q);
        }
    }
    let mut reaches_ambiguous = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&q| !obs.is_singleton(q)).collect();
    for &q in &queue {
        reaches_ambiguous[q] = true;
    }
    while let Some(r) = queue.pop_front() {
        for &q in &pred[r] {
            if !reaches_ambiguous[q] {
                reaches_ambiguous[q] = true;
                queue.push_back(q);
            }
        }
    }
    let comps = Components::new(n, |q| &succ[q]);
    Ok(!(0..n).any(|q| comps.on_cycle(q) && reaches_ambiguous[q]))
}
