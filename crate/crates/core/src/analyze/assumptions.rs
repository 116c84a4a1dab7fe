use crate::explore::{search_pattern, Budget, ExploreError, Outcome, PathPattern, ReachabilityGraph, Stats, Verdict, Witness};
use crate::net::LabeledPetriNet;

use super::{AnalyzeError, Assumption};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssumptionReport {
    pub deadlock_free: Verdict,
    pub no_infinite_unobservable: Verdict,
}

impl AssumptionReport {
    /// Rejects the net if an assumption provably fails.
    pub fn gate(&self) -> Result<(), AnalyzeError> {
        for (assumption, v) in [
            (Assumption::DeadlockFree, &self.deadlock_free),
            (Assumption::NoInfiniteUnobservable, &self.no_infinite_unobservable),
        ] {
            if let Outcome::Fails(w) = &v.outcome {
                return Err(AnalyzeError::AssumptionViolated {
                    assumption,
                    witness: w.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn both_hold(&self) -> bool {
        self.deadlock_free.holds() && self.no_infinite_unobservable.holds()
    }

    /// Note attached to detectability verdicts computed without both
    /// assumptions established.
    pub(crate) fn caveat(&self) -> Option<String> {
        let open: Vec<&str> = [
            (Assumption::DeadlockFree, &self.deadlock_free),
            (Assumption::NoInfiniteUnobservable, &self.no_infinite_unobservable),
        ]
        .into_iter()
        .filter(|(_, v)| v.inconclusive())
        .map(|(a, _)| a.name())
        .collect();
        if open.is_empty() {
            None
        } else {
            Some(format!("assumptions not established within budget: {}", open.join(", ")))
        }
    }
}

/// Checks deadlock freedom and absence of infinite unobservable runs.
pub fn check_assumptions(net: &LabeledPetriNet, budget: Budget) -> Result<AssumptionReport, AnalyzeError> {
    Ok(AssumptionReport {
        deadlock_free: deadlock_free(net, budget)?,
        no_infinite_unobservable: no_infinite_unobservable(net, budget)?,
    })
}

fn deadlock_free(net: &LabeledPetriNet, budget: Budget) -> Result<Verdict, ExploreError> {
    let clock = std::time::Instant::now();
    let graph = ReachabilityGraph::build(net, budget)?;
    let stats = |g: &ReachabilityGraph| Stats {
        states_explored: g.len(),
        depth_reached: g.max_depth(),
        wall_time: clock.elapsed(),
    };
    for node in 0..graph.len() {
        let m = graph.marking(node);
        if net.enabled_transitions(m).next().is_none() {
            let w = Witness::Deadlock {
                trace: graph.path_to(node),
                marking: m.clone(),
            };
            return Ok(Verdict::new(Outcome::Fails(w), stats(&graph)));
        }
    }
    if graph.is_complete() {
        return Ok(Verdict::new(Outcome::Holds, stats(&graph)));
    }
    if let Some(t) = perpetually_enabled(net) {
        let note = format!(
            "transition '{}' is enabled initially and no transition lowers its input places",
            net.transitions()[t].id
        );
        return Ok(Verdict::new(Outcome::Holds, stats(&graph)).with_note(note));
    }
    Ok(Verdict::new(
        Outcome::Inconclusive {
            reason: "no deadlock found before the budget ran out".into(),
        },
        stats(&graph),
    ))
}

/// A transition enabled at M0 whose input places no transition ever
/// decreases stays enabled forever.
fn perpetually_enabled(net: &LabeledPetriNet) -> Option<usize> {
    let m0 = net.initial_marking();
    net.transition_ids()
        .find(|&t| {
            net.enabled(m0, t).unwrap_or(false)
                && (0..net.num_places())
                    .filter(|&p| net.pre(p, t) > 0)
                    .all(|p| net.transitions().iter().all(|u| u.post[p] >= u.pre[p]))
        })
        .map(|t| t.0)
}

fn no_infinite_unobservable(net: &LabeledPetriNet, budget: Budget) -> Result<Verdict, ExploreError> {
    if !net.has_unobservable() {
        return Ok(Verdict::new(Outcome::Holds, Stats::default()).with_note("net has no unobservable transitions"));
    }
    let v = search_pattern(net, net.initial_marking(), &PathPattern::unobservable_cycle(), budget)?;
    if !v.inconclusive() {
        return Ok(v);
    }
    if unobservable_runs_terminate(net) {
        return Ok(Verdict {
            outcome: Outcome::Holds,
            note: Some("every unobservable transition strictly decreases a token weighting".into()),
            ..v
        });
    }
    Ok(v)
}

/// Sound structural test: some 0/1 place weighting is strictly decreased by
/// every unobservable transition, so unobservable runs are finite.
fn unobservable_runs_terminate(net: &LabeledPetriNet) -> bool {
    let unobs: Vec<_> = net.transitions().iter().filter(|t| !t.is_observable()).collect();
    let all: Vec<bool> = vec![true; net.num_places()];
    let inputs: Vec<bool> = (0..net.num_places())
        .map(|p| unobs.iter().any(|t| t.pre[p] > 0))
        .collect();
    [all, inputs].iter().any(|weights| {
        unobs.iter().all(|t| {
            let delta: i128 = (0..net.num_places())
                .filter(|&p| weights[p])
                .map(|p| t.post[p] as i128 - t.pre[p] as i128)
                .sum();
            delta < 0
        })
    })
}
