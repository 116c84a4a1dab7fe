//! Command-line surface. [`run_cli`] does all the work and returns what the
//! binary should print, so the whole contract is testable in-process.
//!
//! Exit codes: 0 the property holds, 1 it fails, 2 inconclusive within
//! budget, 3 input, usage or assumption error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};

use super::dot::{km_dot, net_dot, observer_dot, reachability_dot};
use super::format::{parse_lpn, render_gadget, render_lpn};
use super::report::{Step, StepNames, VerdictReport, WitnessReport};
use crate::analyze::{
    build_observer, check_assumptions, check_opacity, check_strong_gated, check_weak_gated, AnalyzeError,
    AssumptionReport, Observer, SecretSpec,
};
use crate::explore::{estimate, Budget, ExploreError, KarpMillerTree, Outcome, ReachabilityGraph};
use crate::gadgets::{coverability_to_strong, inclusion_to_weak, secret_marking, selfloop_unobservable};
use crate::net::{LabeledPetriNet, Marking, ObservationWord};
use crate::twin::TwinNet;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "lpn-detect", version, about = "Detectability and opacity checks for labeled Petri nets")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Maximum number of states explored by any search
    #[arg(long, global = true, default_value_t = 100_000)]
    max_states: usize,

    /// Maximum search depth
    #[arg(long, global = true, default_value_t = 10_000)]
    max_depth: usize,

    /// Print a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Also write a Graphviz rendering to FILE
    #[arg(long, global = true, value_name = "FILE")]
    dot: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a net and report its size
    Validate { net: PathBuf },
    /// Print the twin plant of a net
    Twin { net: PathBuf },
    /// Print the observer of a bounded net
    Observer { net: PathBuf },
    /// Print the Karp-Miller coverability tree
    Km { net: PathBuf },
    /// Decide strong detectability
    CheckStrong { net: PathBuf },
    /// Decide weak detectability
    CheckWeak { net: PathBuf },
    /// Decide current-state opacity
    CheckOpacity {
        net: PathBuf,
        /// Secret markings, one per line as <place>=<count> pairs
        #[arg(long, value_name = "FILE")]
        secret: PathBuf,
    },
    /// Check deadlock freedom and absence of unobservable cycles
    CheckAssumptions { net: PathBuf },
    /// Build a reduction gadget
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Print the state estimate after an observation
    Estimate {
        net: PathBuf,
        /// Observed symbols, space separated; a single run of one-character symbols may be written unseparated
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
}

#[derive(Subcommand, Debug)]
enum GadgetCommand {
    /// Coverability of MARKING to strong detectability
    Cov2strong {
        net: PathBuf,
        #[arg(long)]
        marking: String,
    },
    /// Language inclusion of G1 in G2 to weak detectability
    Incl2weak { g1: PathBuf, g2: PathBuf },
    /// Secret marking of an inclusion gadget, in --secret file format
    Secret { gadget: PathBuf },
    /// Unobservable self-loop on MARKING
    Selfloop {
        net: PathBuf,
        #[arg(long)]
        marking: String,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the tool on `argv` (program name first).
pub fn run_cli<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: EXIT_ERROR,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut out = CliOutput::default();
    match dispatch(&cli, &mut out) {
        Ok(code) => out.code = code,
        Err(e) => {
            out.code = EXIT_ERROR;
            writeln!(out.stderr, "error: {e:#}").unwrap();
        }
    }
    out
}

struct Input {
    text: String,
    net: LabeledPetriNet,
}

fn load(path: &Path) -> anyhow::Result<Input> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let doc = parse_lpn(&text).with_context(|| format!("{}", path.display()))?;
    Ok(Input { text, net: doc.net })
}

fn write_dot(cli: &Cli, dot: impl FnOnce() -> String) -> anyhow::Result<()> {
    if let Some(path) = &cli.dot {
        std::fs::write(path, dot()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

fn exit_code(o: &Outcome) -> i32 {
    match o {
        Outcome::Holds => EXIT_HOLDS,
        Outcome::Fails(_) => EXIT_FAILS,
        Outcome::Inconclusive { .. } => EXIT_INCONCLUSIVE,
    }
}

/// Parses `<place>=<count>` pairs separated by whitespace; unlisted places
/// are zero.
pub fn parse_marking(net: &LabeledPetriNet, text: &str) -> anyhow::Result<Marking> {
    let mut counts = vec![0u64; net.num_places()];
    let mut seen = vec![false; net.num_places()];
    for tok in text.split_whitespace() {
        let (id, n) = tok
            .split_once('=')
            .ok_or_else(|| anyhow!("expected <place>=<count>, found '{tok}'"))?;
        let p = net.place_index(id).ok_or_else(|| anyhow!("unknown place '{id}'"))?;
        if std::mem::replace(&mut seen[p], true) {
            bail!("place '{id}' listed twice");
        }
        counts[p] = n.parse().with_context(|| format!("invalid count '{n}' for place '{id}'"))?;
    }
    Ok(Marking::new(counts))
}

fn parse_secret(net: &LabeledPetriNet, text: &str) -> anyhow::Result<SecretSpec> {
    let mut set = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        set.push(parse_marking(net, line).with_context(|| format!("secret line {}", i + 1))?);
    }
    if set.is_empty() {
        bail!("secret file lists no markings");
    }
    Ok(SecretSpec::Set(set))
}

/// Symbols separated by whitespace. A lone token that is not a symbol but
/// whose characters all are is read one character per symbol.
pub fn parse_word(net: &LabeledPetriNet, text: &str) -> anyhow::Result<ObservationWord> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    if let [one] = toks[..] {
        if net.symbol(one).is_err() {
            let chars: Vec<String> = one.chars().map(String::from).collect();
            if chars.iter().all(|c| net.symbol(c).is_ok()) {
                let refs: Vec<&str> = chars.iter().map(String::as_str).collect();
                return Ok(net.word(&refs)?);
            }
        }
    }
    Ok(net.word(&toks)?)
}

fn show_marking_set<'a>(ms: impl IntoIterator<Item = &'a Marking>) -> String {
    let v: Vec<String> = ms.into_iter().map(|m| m.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

fn show_steps(steps: &[Step]) -> String {
    if steps.is_empty() {
        return "λ".into();
    }
    steps
        .iter()
        .map(|s| match s {
            Step::Single(t) => t.clone(),
            Step::Pair([a, b]) => format!("({a},{b})"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn show_word(w: &[String]) -> String {
    if w.is_empty() {
        "ε".into()
    } else {
        w.join(" ")
    }
}

fn describe(r: &VerdictReport) -> String {
    let mut s = format!("{}: {}\n", r.property, r.outcome);
    if let Some(reason) = &r.reason {
        writeln!(s, "reason: {reason}").unwrap();
    }
    match &r.witness {
        Some(WitnessReport::Path {
            start,
            segments,
            markings,
            observation,
        }) => {
            writeln!(s, "witness from {}:", Marking::new(start.clone())).unwrap();
            for (i, (seg, m)) in segments.iter().zip(markings).enumerate() {
                let obs = observation.as_ref().map(|o| show_word(&o[i])).unwrap_or_default();
                writeln!(s, "  segment {}: {} observed {} reaching {}", i + 1, show_steps(seg), obs, Marking::new(m.clone())).unwrap();
            }
        }
        Some(WitnessReport::Deadlock { trace, marking }) => {
            let steps: Vec<Step> = trace.iter().cloned().map(Step::Single).collect();
            writeln!(s, "deadlock at {} after {}", Marking::new(marking.clone()), show_steps(&steps)).unwrap();
        }
        Some(WitnessReport::Estimate { word, estimate }) => {
            let ms: Vec<Marking> = estimate.iter().cloned().map(Marking::new).collect();
            writeln!(s, "after {} the estimate is {}", show_word(word), show_marking_set(&ms)).unwrap();
        }
        Some(WitnessReport::NoSingletonCycle {
            observer_states,
            singleton_states,
        }) => {
            writeln!(
                s,
                "no cycle of singleton estimates among {observer_states} observer states ({singleton_states} singleton)"
            )
            .unwrap();
        }
        None => {}
    }
    if let Some(a) = &r.assumptions {
        writeln!(
            s,
            "assumptions: deadlock_free={} no_infinite_unobservable={}",
            a.deadlock_free, a.no_infinite_unobservable
        )
        .unwrap();
    }
    if let Some(n) = &r.note {
        writeln!(s, "note: {n}").unwrap();
    }
    writeln!(s, "explored {} states to depth {}", r.stats.states_explored, r.stats.depth_reached).unwrap();
    s
}

fn emit(cli: &Cli, out: &mut CliOutput, report: &VerdictReport) {
    if cli.json {
        out.stdout.push_str(&report.to_json());
        out.stdout.push('\n');
    } else {
        out.stdout.push_str(&describe(report));
    }
}

/// Maps an analysis error to an exit code, reporting it on stderr.
fn analysis_error(e: AnalyzeError, net: &LabeledPetriNet, out: &mut CliOutput) -> anyhow::Result<i32> {
    match e {
        AnalyzeError::Unbounded { states } => {
            writeln!(out.stderr, "inconclusive: reachability graph exceeds the budget ({states} states)").unwrap();
            Ok(EXIT_INCONCLUSIVE)
        }
        AnalyzeError::AssumptionViolated { assumption, witness } => {
            let w = WitnessReport::new(&witness, &StepNames::Net(net));
            let detail = match w {
                WitnessReport::Deadlock { trace, marking } => format!(
                    "deadlock at {} after {}",
                    Marking::new(marking),
                    show_steps(&trace.into_iter().map(Step::Single).collect::<Vec<_>>())
                ),
                WitnessReport::Path { segments, .. } => format!(
                    "unobservable cycle {} after {}",
                    show_steps(&segments[1]),
                    show_steps(&segments[0])
                ),
                _ => String::new(),
            };
            Err(anyhow!("standing assumption {assumption} violated: {detail}"))
        }
        other => Err(other.into()),
    }
}

fn dispatch(cli: &Cli, out: &mut CliOutput) -> anyhow::Result<i32> {
    let budget = Budget::new(cli.max_states, cli.max_depth)?;
    match &cli.command {
        Command::Validate { net } => {
            let input = load(net)?;
            let n = &input.net;
            writeln!(
                out.stdout,
                "ok: {} places, {} transitions, {} symbols",
                n.num_places(),
                n.num_transitions(),
                n.alphabet().len()
            )
            .unwrap();
            write_dot(cli, || net_dot(n))?;
            Ok(0)
        }
        Command::Twin { net } => {
            let input = load(net)?;
            let twin = TwinNet::build(&input.net);
            out.stdout.push_str(&render_lpn(twin.net()));
            write_dot(cli, || net_dot(twin.net()))?;
            Ok(0)
        }
        Command::Observer { net } => {
            let input = load(net)?;
            let obs = match build_observer(&input.net, budget) {
                Ok(o) => o,
                Err(e) => return analysis_error(e, &input.net, out),
            };
            print_observer(&obs, &input.net, out);
            write_dot(cli, || observer_dot(&obs, &input.net))?;
            Ok(0)
        }
        Command::Km { net } => {
            let input = load(net)?;
            let tree = KarpMillerTree::build(&input.net)?;
            for (i, n) in tree.nodes().iter().enumerate() {
                write!(out.stdout, "n{i} {}", n.marking).unwrap();
                if let Some((p, t)) = n.parent {
                    write!(out.stdout, " from n{p} by {}", input.net.transitions()[t.0].id).unwrap();
                }
                if n.duplicate {
                    out.stdout.push_str(" (repeated)");
                }
                out.stdout.push('\n');
            }
            writeln!(out.stdout, "bounded: {}", tree.is_bounded()).unwrap();
            write_dot(cli, || km_dot(&tree, &input.net))?;
            Ok(0)
        }
        Command::CheckStrong { net } => {
            let input = load(net)?;
            let report = check_assumptions(&input.net, budget)?;
            let verdict = match check_strong_gated(&input.net, budget, &report) {
                Ok(v) => v,
                Err(e) => return analysis_error(e, &input.net, out),
            };
            let twin = TwinNet::build(&input.net);
            let names = StepNames::Twin {
                twin: &twin,
                base: &input.net,
            };
            let r = VerdictReport::new("strong_detectability", &input.text, &verdict, &names, Some(&report));
            emit(cli, out, &r);
            write_dot(cli, || net_dot(twin.net()))?;
            Ok(exit_code(&verdict.outcome))
        }
        Command::CheckWeak { net } => {
            let input = load(net)?;
            let report = check_assumptions(&input.net, budget)?;
            let verdict = match check_weak_gated(&input.net, budget, &report) {
                Ok(v) => v,
                Err(e) => return analysis_error(e, &input.net, out),
            };
            let r = VerdictReport::new("weak_detectability", &input.text, &verdict, &StepNames::Net(&input.net), Some(&report));
            emit(cli, out, &r);
            write_state_space_dot(cli, &input.net, budget)?;
            Ok(exit_code(&verdict.outcome))
        }
        Command::CheckOpacity { net, secret } => {
            let input = load(net)?;
            let text = std::fs::read_to_string(secret).with_context(|| format!("cannot read {}", secret.display()))?;
            let spec = parse_secret(&input.net, &text)?;
            let verdict = check_opacity(&input.net, &spec, budget)?;
            let r = VerdictReport::new("opacity", &input.text, &verdict, &StepNames::Net(&input.net), None);
            emit(cli, out, &r);
            write_state_space_dot(cli, &input.net, budget)?;
            Ok(exit_code(&verdict.outcome))
        }
        Command::CheckAssumptions { net } => {
            let input = load(net)?;
            let report = check_assumptions(&input.net, budget)?;
            let names = StepNames::Net(&input.net);
            let reports = [
                VerdictReport::new("deadlock_free", &input.text, &report.deadlock_free, &names, None),
                VerdictReport::new("no_infinite_unobservable", &input.text, &report.no_infinite_unobservable, &names, None),
            ];
            if cli.json {
                out.stdout.push_str(&serde_json::to_string_pretty(&reports)?);
                out.stdout.push('\n');
            } else {
                for r in &reports {
                    out.stdout.push_str(&describe(r));
                }
            }
            write_dot(cli, || {
                let g = ReachabilityGraph::build(&input.net, budget).expect("graph already built once");
                reachability_dot(&g, &input.net)
            })?;
            Ok(assumptions_code(&report))
        }
        Command::Gadget(g) => gadget(cli, g, out),
        Command::Estimate { net, word } => {
            let input = load(net)?;
            let w = parse_word(&input.net, word)?;
            match estimate(&input.net, &w, budget) {
                Ok(set) => {
                    if cli.json {
                        let v: Vec<&[u64]> = set.iter().map(Marking::counts).collect();
                        out.stdout.push_str(&serde_json::to_string(&v)?);
                        out.stdout.push('\n');
                    } else {
                        writeln!(out.stdout, "{}", show_marking_set(&set)).unwrap();
                    }
                    Ok(0)
                }
                Err(ExploreError::BudgetExhausted { states }) => {
                    writeln!(out.stderr, "inconclusive: estimate exceeds the budget ({states} states)").unwrap();
                    Ok(EXIT_INCONCLUSIVE)
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn assumptions_code(r: &AssumptionReport) -> i32 {
    if r.deadlock_free.fails() || r.no_infinite_unobservable.fails() {
        EXIT_FAILS
    } else if r.both_hold() {
        EXIT_HOLDS
    } else {
        EXIT_INCONCLUSIVE
    }
}

/// Observer when the graph closes, otherwise the partial reachability graph.
fn write_state_space_dot(cli: &Cli, net: &LabeledPetriNet, budget: Budget) -> anyhow::Result<()> {
    if cli.dot.is_none() {
        return Ok(());
    }
    let graph = ReachabilityGraph::build(net, budget)?;
    write_dot(cli, || {
        if graph.is_complete() {
            observer_dot(&Observer::from_graph(net, graph), net)
        } else {
            reachability_dot(&graph, net)
        }
    })
}

fn print_observer(obs: &Observer, net: &LabeledPetriNet, out: &mut CliOutput) {
    for q in 0..obs.len() {
        write!(out.stdout, "q{q} {}", show_marking_set(&obs.estimate(q))).unwrap();
        for &(s, r) in obs.successors(q) {
            write!(out.stdout, " {}->q{r}", net.symbol_name(s)).unwrap();
        }
        out.stdout.push('\n');
    }
}

fn gadget(cli: &Cli, g: &GadgetCommand, out: &mut CliOutput) -> anyhow::Result<i32> {
    let built = match g {
        GadgetCommand::Cov2strong { net, marking } => {
            let input = load(net)?;
            let m = parse_marking(&input.net, marking)?;
            coverability_to_strong(&input.net, &m)?
        }
        GadgetCommand::Selfloop { net, marking } => {
            let input = load(net)?;
            let m = parse_marking(&input.net, marking)?;
            selfloop_unobservable(&input.net, &m)?
        }
        GadgetCommand::Incl2weak { g1, g2 } => inclusion_to_weak(&load(g1)?.net, &load(g2)?.net)?,
        GadgetCommand::Secret { gadget } => {
            let text = std::fs::read_to_string(gadget).with_context(|| format!("cannot read {}", gadget.display()))?;
            let doc = parse_lpn(&text).with_context(|| format!("{}", gadget.display()))?.into_gadget();
            let ms = secret_marking(&doc)?;
            let pairs: Vec<String> = doc
                .net
                .places()
                .iter()
                .zip(ms.counts())
                .filter(|(_, &n)| n > 0)
                .map(|(p, n)| format!("{p}={n}"))
                .collect();
            writeln!(out.stdout, "{}", pairs.join(" ")).unwrap();
            return Ok(0);
        }
    };
    out.stdout.push_str(&render_gadget(&built));
    write_dot(cli, || net_dot(&built.net))?;
    Ok(0)
}
