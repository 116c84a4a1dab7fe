//! Machine-readable verdict reports.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analyze::AssumptionReport;
use crate::explore::{Outcome, Verdict, Witness};
use crate::net::{LabeledPetriNet, TransitionId};
use crate::twin::TwinNet;

/// JSON schema every [`VerdictReport`] conforms to.
pub const REPORT_SCHEMA: &str = include_str!("../../schema/verdict-report.schema.json");

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One firing step: a transition id, or for twin runs the pair of original
/// ids with `~` for an idle side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Step {
    Single(String),
    Pair([String; 2]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessReport {
    Path {
        start: Vec<u64>,
        segments: Vec<Vec<Step>>,
        markings: Vec<Vec<u64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        observation: Option<Vec<Vec<String>>>,
    },
    Deadlock {
        trace: Vec<String>,
        marking: Vec<u64>,
    },
    Estimate {
        word: Vec<String>,
        estimate: Vec<Vec<u64>>,
    },
    NoSingletonCycle {
        observer_states: usize,
        singleton_states: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionsReport {
    pub deadlock_free: String,
    pub no_infinite_unobservable: String,
}

impl From<&AssumptionReport> for AssumptionsReport {
    fn from(r: &AssumptionReport) -> Self {
        AssumptionsReport {
            deadlock_free: r.deadlock_free.outcome.name().into(),
            no_infinite_unobservable: r.no_infinite_unobservable.outcome.name().into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub states_explored: usize,
    pub depth_reached: usize,
    pub wall_time_us: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub tool: String,
    pub version: String,
    pub property: String,
    pub input_digest: String,
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assumptions: Option<AssumptionsReport>,
    pub stats: StatsReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// How witness steps map back to names.
pub enum StepNames<'a> {
    /// Steps are transitions of this net.
    Net(&'a LabeledPetriNet),
    /// Steps are transitions of this twin; rendered as pairs of ids of `base`.
    Twin { twin: &'a TwinNet, base: &'a LabeledPetriNet },
}

impl StepNames<'_> {
    fn step(&self, t: TransitionId) -> Step {
        match self {
            StepNames::Net(net) => Step::Single(net.transitions()[t.0].id.clone()),
            StepNames::Twin { twin, base } => {
                let name = |s: Option<TransitionId>| s.map_or("~".to_string(), |t| base.transitions()[t.0].id.clone());
                let (a, b) = twin.pair_of(t);
                Step::Pair([name(a), name(b)])
            }
        }
    }

    fn net(&self) -> &LabeledPetriNet {
        match self {
            StepNames::Net(n) => n,
            StepNames::Twin { twin, .. } => twin.net(),
        }
    }
}

pub fn digest(input: &str) -> String {
    let hash = Sha256::digest(input.as_bytes());
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

impl WitnessReport {
    pub fn new(w: &Witness, names: &StepNames<'_>) -> Self {
        let net = names.net();
        match w {
            Witness::Path(p) => WitnessReport::Path {
                start: p.start.counts().to_vec(),
                segments: p
                    .segments
                    .iter()
                    .map(|s| s.steps().iter().map(|&t| names.step(t)).collect())
                    .collect(),
                markings: p.markings.iter().map(|m| m.counts().to_vec()).collect(),
                observation: Some(p.segments.iter().map(|s| net.word_names(&net.observation(s))).collect()),
            },
            Witness::Deadlock { trace, marking } => WitnessReport::Deadlock {
                trace: net.sequence_names(trace),
                marking: marking.counts().to_vec(),
            },
            Witness::Estimate { word, estimate } => WitnessReport::Estimate {
                word: net.word_names(word),
                estimate: estimate.iter().map(|m| m.counts().to_vec()).collect(),
            },
            &Witness::NoSingletonCycle {
                observer_states,
                singleton_states,
            } => WitnessReport::NoSingletonCycle {
                observer_states,
                singleton_states,
            },
        }
    }
}

impl VerdictReport {
    pub fn new(
        property: &str,
        input: &str,
        verdict: &Verdict,
        names: &StepNames<'_>,
        assumptions: Option<&AssumptionReport>,
    ) -> Self {
        let reason = match &verdict.outcome {
            Outcome::Inconclusive { reason } => Some(reason.clone()),
            _ => None,
        };
        VerdictReport {
            tool: TOOL.into(),
            version: VERSION.into(),
            property: property.into(),
            input_digest: digest(input),
            outcome: verdict.outcome.name().into(),
            reason,
            witness: verdict.outcome.witness().map(|w| WitnessReport::new(w, names)),
            assumptions: assumptions.map(AssumptionsReport::from),
            stats: StatsReport {
                states_explored: verdict.stats.states_explored,
                depth_reached: verdict.stats.depth_reached,
                wall_time_us: verdict.stats.wall_time.as_micros() as u64,
            },
            note: verdict.note.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
