//! Acceptance run: every criterion prints one PASS or FAIL line; the process
//! exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use lpn_detect::analyze::{
    build_observer, check_assumptions, check_opacity, check_strong, check_strong_oracle, check_weak, SecretSpec,
};
use lpn_detect::explore::{coverable, Budget, ReachabilityGraph, Verdict};
use lpn_detect::fixtures;
use lpn_detect::gadgets::{coverability_to_strong, inclusion_to_weak, secret_marking, selfloop_unobservable, GadgetOutput};
use lpn_detect::io::{parse_lpn, render_gadget, render_lpn, run_cli, REPORT_SCHEMA};
use lpn_detect::net::{LabeledPetriNet, Marking, NetBuilder, TransitionId};
use lpn_detect::twin::TwinNet;
use rand::Rng;

use common::*;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:.2?}, limit {limit:.0?}"))
}

fn shape(places: usize, transitions: usize, unobservable: f64) -> Shape {
    Shape {
        places,
        transitions,
        max_weight: 2,
        max_tokens: 2,
        labels: &["a", "b"],
        unobservable,
        place_prefix: "q",
        trans_prefix: "t",
    }
}

fn renamed(net: &LabeledPetriNet, place_prefix: &str, trans_prefix: &str) -> LabeledPetriNet {
    let mut b = NetBuilder::new();
    let pname = |p: usize| format!("{place_prefix}{p}");
    for p in 0..net.num_places() {
        b.add_place(pname(p), net.initial_marking().get(p));
    }
    let arcs = |row: &[u64]| -> Vec<(String, u64)> {
        row.iter().enumerate().filter(|(_, &n)| n > 0).map(|(p, &n)| (pname(p), n)).collect()
    };
    for (i, t) in net.transitions().iter().enumerate() {
        b.add_transition(
            format!("{trans_prefix}{i}"),
            net.label_name(TransitionId(i)).map(str::to_string),
            arcs(&t.pre),
            arcs(&t.post),
        );
    }
    b.build().unwrap()
}

fn with_extra_transition(net: &LabeledPetriNet, id: &str, label: &str) -> LabeledPetriNet {
    let mut b = builder_of(net);
    let p = net.places()[0].clone();
    b.add_transition(id, Some(label.into()), vec![(p.clone(), 1)], vec![(p, 1)]);
    b.build().unwrap()
}

fn c1_twin() -> Check {
    let start = Instant::now();
    let mut r = rng(1);
    let (mut seqs, mut pairs) = (0, 0);
    for i in 0..100 {
        let net = random_net(&mut r, &shape(4, 5, 0.2));
        let twin = TwinNet::build(&net);
        seqs += twin_soundness(&net, &twin, 6).map_err(|e| format!("net {i} soundness: {e}"))?;
        pairs += twin_completeness(&net, &twin, 4).map_err(|e| format!("net {i} completeness: {e}"))?;
    }
    within(start, Duration::from_secs(60), "twin checks")?;
    Ok(format!(
        "100 nets, {seqs} twin sequences (len <= 6), {pairs} equal-observation pairs (len <= 4), 0 violations, {:.1?}",
        start.elapsed()
    ))
}

fn strong_agreement(name: &str, net: &LabeledPetriNet, fails: &mut usize) -> Result<(), String> {
    let b = Budget::default();
    let v = check_strong(net, b).map_err(|e| format!("{name}: {e}"))?;
    let oracle = check_strong_oracle(net, b).map_err(|e| format!("{name}: {e}"))?;
    ensure(!v.inconclusive(), || format!("{name}: inconclusive on a bounded net"))?;
    ensure(v.holds() == oracle, || format!("{name}: check_strong {} vs oracle {oracle}", v.outcome.name()))?;
    if let Some(w) = v.path_witness() {
        *fails += 1;
        check_pumping(net, &TwinNet::build(net), w).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn c2_strong() -> Check {
    let start = Instant::now();
    let mut fails = 0;
    let mut total = 0;
    let cov = coverability_to_strong(&fixtures::e1(), &Marking::new(vec![1])).unwrap().net;
    for (name, net) in [("e1", fixtures::e1()), ("e2", fixtures::e2()), ("cov(e1,[1])", cov)] {
        strong_agreement(name, &net, &mut fails)?;
        total += 1;
    }
    let mut r = rng(2);
    for i in 0..100 {
        let net = random_bounded(&mut r, &shape(5, 6, 0.2), 5000);
        strong_agreement(&format!("random {i}"), &net, &mut fails)?;
        total += 1;
    }
    within(start, Duration::from_secs(120), "agreement suite")?;
    Ok(format!(
        "{total} bounded nets agree ({fails} not strongly detectable, all witnesses replay and pump), {:.1?}",
        start.elapsed()
    ))
}

fn random_target(r: &mut impl Rng, n: usize) -> Marking {
    loop {
        let v: Vec<u64> = (0..n).map(|_| r.gen_range(0..=2)).collect();
        if v.iter().any(|&x| x > 0) {
            return Marking::new(v);
        }
    }
}

fn c3_coverability() -> Check {
    let mut r = rng(3);
    let budget = Budget::new(20_000, 60).unwrap();
    let (mut cov, mut uncov_bounded, mut uncov_unbounded) = (0, 0, 0);
    let mut cov_unbounded = 0;
    let mut i = 0;
    while cov + uncov_bounded + uncov_unbounded < 40 || cov < 12 || uncov_bounded < 12 {
        i += 1;
        let net = random_net(&mut r, &shape(3, 4, 0.0));
        let target = random_target(&mut r, net.num_places());
        let g = coverability_to_strong(&net, &target).map_err(|e| e.to_string())?;
        let is_cov = coverable(&net, &target).unwrap();
        let bounded = ReachabilityGraph::build(&g.net, budget).unwrap().is_complete();
        if !is_cov && bounded && uncov_bounded >= 20 || is_cov && cov >= 20 || !is_cov && !bounded && uncov_unbounded >= 8 {
            continue;
        }
        let v = check_strong(&g.net, budget).map_err(|e| format!("instance {i}: {e}"))?;
        let ok = match (is_cov, bounded) {
            (true, _) => v.fails(),
            (false, true) => v.holds(),
            (false, false) => !v.fails(),
        };
        ensure(ok, || {
            format!("instance {i}: coverable={is_cov} bounded={bounded} but check_strong {}\n{}", v.outcome.name(), render_lpn(&net))
        })?;
        match (is_cov, bounded) {
            (true, b) => {
                cov += 1;
                cov_unbounded += usize::from(!b);
            }
            (false, true) => uncov_bounded += 1,
            (false, false) => uncov_unbounded += 1,
        }
    }
    Ok(format!(
        "{} instances: {cov} coverable ({cov_unbounded} unbounded) -> fails, {uncov_bounded} uncoverable bounded -> holds, {uncov_unbounded} uncoverable unbounded -> never fails; 0 disagreements",
        cov + uncov_bounded + uncov_unbounded
    ))
}

/// (G1, G2) pairs without unobservable transitions, bounded, with inclusion
/// decided by the automata oracle.
fn inclusion_instances() -> Vec<(LabeledPetriNet, LabeledPetriNet, bool)> {
    let mut r = rng(4);
    let sh = Shape {
        places: 2,
        transitions: 3,
        max_weight: 1,
        max_tokens: 2,
        labels: &["a", "b"],
        unobservable: 0.0,
        place_prefix: "u",
        trans_prefix: "s",
    };
    let mut out = Vec::new();
    let (mut yes, mut no) = (0, 0);
    let mut k = 0;
    while out.len() < 30 || yes < 10 || no < 10 {
        k += 1;
        let g1 = random_bounded(&mut r, &sh, 40);
        let g2 = match k % 4 {
            0 => renamed(&random_bounded(&mut r, &sh, 40), "v", "r"),
            1 => renamed(&g1, "v", "r"),
            2 => with_extra_transition(&renamed(&g1, "v", "r"), "r_extra", if r.gen_bool(0.5) { "a" } else { "b" }),
            _ => renamed(&random_bounded(&mut r, &sh, 40), "v", "r"),
        };
        let g1 = if k % 4 == 3 { with_extra_transition(&g1, "s_extra", "c") } else { g1 };
        let inc = language_included(&g1, &g2);
        if inc && yes >= 20 || !inc && no >= 20 {
            continue;
        }
        if inc {
            yes += 1;
        } else {
            no += 1;
        }
        out.push((g1, g2, inc));
    }
    out
}

struct InclusionRun {
    gadget: GadgetOutput,
    included: bool,
    weak: Verdict,
}

fn inclusion_runs() -> Result<Vec<InclusionRun>, String> {
    let budget = Budget::new(100_000, 1000).unwrap();
    inclusion_instances()
        .into_iter()
        .map(|(g1, g2, included)| {
            let gadget = inclusion_to_weak(&g1, &g2).map_err(|e| e.to_string())?;
            let r = check_assumptions(&gadget.net, budget).map_err(|e| e.to_string())?;
            ensure(r.both_hold(), || "gadget violates an assumption".into())?;
            let weak = check_weak(&gadget.net, budget).map_err(|e| e.to_string())?;
            Ok(InclusionRun { gadget, included, weak })
        })
        .collect()
}

fn c4_inclusion(runs: &[InclusionRun]) -> Check {
    for (i, run) in runs.iter().enumerate() {
        ensure(!run.weak.inconclusive(), || format!("pair {i}: weak check inconclusive on a bounded gadget"))?;
        ensure(run.included == run.weak.fails(), || {
            format!("pair {i}: included={} but check_weak {}", run.included, run.weak.outcome.name())
        })?;
    }
    let yes = runs.iter().filter(|r| r.included).count();
    Ok(format!(
        "{} pairs ({yes} included -> fails, {} not included -> holds); 0 disagreements",
        runs.len(),
        runs.len() - yes
    ))
}

fn c5_opacity(runs: &[InclusionRun]) -> Check {
    let budget = Budget::new(100_000, 1000).unwrap();
    for (i, run) in runs.iter().enumerate() {
        let ms = secret_marking(&run.gadget).map_err(|e| e.to_string())?;
        let v = check_opacity(&run.gadget.net, &SecretSpec::Single(ms), budget).map_err(|e| e.to_string())?;
        ensure(!v.inconclusive(), || format!("pair {i}: opacity inconclusive"))?;
        ensure(v.holds() == run.weak.fails(), || {
            format!("pair {i}: opacity {} and weak {}", v.outcome.name(), run.weak.outcome.name())
        })?;
    }
    Ok(format!("{} gadgets: opacity is the complement of weak detectability; 0 disagreements", runs.len()))
}

/// E4 and ten variants: unbounded nets with two runs that observe the same
/// but pump different places.
fn e4_family() -> Vec<(String, LabeledPetriNet)> {
    let mut out = vec![("e4".to_string(), fixtures::e4())];
    let producers = |k: usize, weight: u64, init: u64, label: fn(usize) -> &'static str| {
        let mut b = NetBuilder::new().place("p", init);
        for i in 0..k {
            b = b.place(format!("c{i}"), 0);
        }
        for i in 0..k {
            b = b.transition(format!("t{i}"), Some(label(i)), &[("p", 1)], &[("p", 1), (&format!("c{i}"), weight)]);
        }
        b
    };
    let a = |_| "a";
    let ab = |i: usize| if i.is_multiple_of(2) { "a" } else { "b" };
    out.push(("three producers".into(), producers(3, 1, 1, a).build().unwrap()));
    out.push(("four producers".into(), producers(4, 1, 1, a).build().unwrap()));
    out.push(("weight two".into(), producers(2, 2, 1, a).build().unwrap()));
    out.push(("two tokens".into(), producers(2, 1, 2, a).build().unwrap()));
    out.push((
        "with consumer".into(),
        producers(2, 1, 1, a).transition("d", Some("b"), &[("c0", 1)], &[]).build().unwrap(),
    ));
    out.push((
        "unequal amounts".into(),
        NetBuilder::new()
            .place("p", 1)
            .place("c", 0)
            .transition("t", Some("a"), &[("p", 1)], &[("p", 1), ("c", 1)])
            .transition("u", Some("a"), &[("p", 1)], &[("p", 1), ("c", 2)])
            .build()
            .unwrap(),
    ));
    out.push((
        "after a start step".into(),
        producers(2, 1, 0, a)
            .place("s", 1)
            .transition("go", Some("g"), &[("s", 1)], &[("p", 1)])
            .build()
            .unwrap(),
    ));
    out.push((
        "unobservable drain".into(),
        producers(2, 1, 1, a)
            .place("sink", 0)
            .transition("e", None, &[("c0", 1)], &[("sink", 1)])
            .build()
            .unwrap(),
    ));
    out.push((
        "two labels".into(),
        producers(4, 1, 1, ab).build().unwrap(),
    ));
    out.push((
        "guarded producers".into(),
        producers(2, 1, 1, a)
            .place("g", 1)
            .transition("h", Some("b"), &[("g", 1), ("p", 1)], &[("g", 1), ("p", 1)])
            .build()
            .unwrap(),
    ));
    out
}

fn c6_unbounded() -> Check {
    let budget = Budget::new(100_000, 20).unwrap();
    let mut slowest = Duration::ZERO;
    let family = e4_family();
    for (name, net) in &family {
        let start = Instant::now();
        let v = check_strong(net, budget).map_err(|e| format!("{name}: {e}"))?;
        let t = start.elapsed();
        slowest = slowest.max(t);
        let w = v.path_witness().ok_or_else(|| format!("{name}: expected fails, got {}", v.outcome.name()))?;
        ensure(w.total_len() <= 20, || format!("{name}: witness length {}", w.total_len()))?;
        ensure(t < Duration::from_secs(1), || format!("{name}: took {t:.2?}"))?;
        check_pumping(net, &TwinNet::build(net), w).map_err(|e| format!("{name}: {e}"))?;
    }
    let budgets = [(1, 1), (10, 5), (50, 50), (200, 20), (1000, 100), (5000, 10), (20_000, 20_000)];
    for (s, d) in budgets {
        let v = check_strong(&fixtures::e3(), Budget::new(s, d).unwrap()).map_err(|e| e.to_string())?;
        ensure(v.inconclusive(), || format!("e3 at ({s},{d}) gave {}", v.outcome.name()))?;
    }
    Ok(format!(
        "{} unbounded nets fail with witnesses of length <= 20 (slowest {slowest:.1?}); e3 inconclusive at {} budgets",
        family.len(),
        budgets.len()
    ))
}

fn c7_selfloop() -> Check {
    let budget = Budget::new(5000, 200).unwrap();
    let mut r = rng(7);
    let (mut exact, mut sound, mut open) = (0, 0, 0);
    for i in 0..40 {
        let net = random_net(&mut r, &shape(3, 4, 0.0));
        let target = Marking::new((0..net.num_places()).map(|_| r.gen_range(0..=2)).collect());
        let g = selfloop_unobservable(&net, &target).map_err(|e| e.to_string())?;
        let is_cov = coverable(&net, &target).unwrap();
        let v = check_assumptions(&g.net, budget).map_err(|e| e.to_string())?.no_infinite_unobservable;
        let complete = ReachabilityGraph::build(&g.net, budget).unwrap().is_complete();
        if complete {
            ensure(!v.inconclusive() && v.fails() == is_cov, || {
                format!("instance {i}: coverable={is_cov}, bounded verdict {}", v.outcome.name())
            })?;
            exact += 1;
        } else {
            ensure(!(v.fails() && !is_cov) && !(v.holds() && is_cov), || {
                format!("instance {i}: coverable={is_cov}, unbounded verdict {}", v.outcome.name())
            })?;
            if v.inconclusive() {
                open += 1;
            } else {
                sound += 1;
            }
        }
    }
    // unobservable-cycle oracle on bounded nets
    let e1 = fixtures::e1();
    let mut bounded: Vec<(String, LabeledPetriNet)> = vec![
        ("e1".into(), e1.clone()),
        ("e2".into(), fixtures::e2()),
        ("cov(e1,[1])".into(), coverability_to_strong(&e1, &Marking::new(vec![1])).unwrap().net),
        ("cov(e1,[2])".into(), coverability_to_strong(&e1, &Marking::new(vec![2])).unwrap().net),
        ("loop(e1,[1])".into(), selfloop_unobservable(&e1, &Marking::new(vec![1])).unwrap().net),
        ("loop(e1,[2])".into(), selfloop_unobservable(&e1, &Marking::new(vec![2])).unwrap().net),
        ("incl(e1,e1)".into(), inclusion_to_weak(&e1, &e1).unwrap().net),
    ];
    let mut r = rng(70);
    while bounded.len() < 40 {
        let net = random_net(&mut r, &shape(3, 4, 0.5));
        if reachable(&net, 500).is_some() {
            bounded.push((format!("random {}", bounded.len()), net));
        }
    }
    let mut cycles = 0;
    for (name, net) in &bounded {
        let v = check_assumptions(net, budget).map_err(|e| e.to_string())?.no_infinite_unobservable;
        let oracle = has_unobservable_cycle(net, 5000).unwrap();
        cycles += usize::from(oracle);
        ensure(!v.inconclusive() && v.fails() == oracle, || {
            format!("{name}: oracle cycle={oracle}, checker {}", v.outcome.name())
        })?;
    }
    Ok(format!(
        "40 self-loop instances ({exact} exact, {sound} decided on unbounded nets, {open} inconclusive, 0 wrong); cycle oracle agrees on {} bounded nets ({cycles} with cycles)",
        bounded.len()
    ))
}

fn c8_observer() -> Check {
    let e1 = fixtures::e1();
    let mut nets: Vec<(String, LabeledPetriNet)> = vec![
        ("e1".into(), e1.clone()),
        ("e2".into(), fixtures::e2()),
        ("cov(e1,[1])".into(), coverability_to_strong(&e1, &Marking::new(vec![1])).unwrap().net),
        ("cov(e1,[2])".into(), coverability_to_strong(&e1, &Marking::new(vec![2])).unwrap().net),
        ("incl(e1,e1)".into(), inclusion_to_weak(&e1, &e1).unwrap().net),
    ];
    let mut r = rng(8);
    for i in 0..10 {
        nets.push((format!("random {i}"), random_bounded(&mut r, &shape(3, 4, 0.3), 200)));
    }
    let mut checked = 0;
    for (name, net) in &nets {
        let obs = build_observer(net, Budget::default()).map_err(|e| format!("{name}: {e}"))?;
        let cap = reachable(net, 5000).unwrap().len() + 1;
        for w in words(net, 5) {
            let brute = brute_estimate(net, &w, cap);
            let got: std::collections::BTreeSet<Marking> =
                obs.run(&w).map(|q| obs.estimate(q).into_iter().collect()).unwrap_or_default();
            ensure(got == brute, || format!("{name}: word {:?} observer {got:?} brute {brute:?}", net.word_names(&w)))?;
            checked += 1;
        }
    }
    Ok(format!("{} bounded nets, {checked} observations of length <= 5, 0 mismatches", nets.len()))
}

fn c9_tooling() -> Check {
    // round trips
    let e1 = fixtures::e1();
    let gadgets = [
        coverability_to_strong(&e1, &Marking::new(vec![1])).unwrap(),
        coverability_to_strong(&fixtures::e4(), &Marking::new(vec![1, 1, 0])).unwrap(),
        inclusion_to_weak(&e1, &e1).unwrap(),
        inclusion_to_weak(&fixtures::e2(), &fixtures::e4()).unwrap(),
        selfloop_unobservable(&fixtures::e2(), &Marking::new(vec![0, 1])).unwrap(),
    ];
    for (name, net) in fixtures::all() {
        let back = parse_lpn(&render_lpn(&net)).map_err(|e| format!("{name}: {e}"))?;
        ensure(back.net == net, || format!("{name} does not round-trip"))?;
    }
    for (i, g) in gadgets.iter().enumerate() {
        let back = parse_lpn(&render_gadget(g)).map_err(|e| format!("gadget {i}: {e}"))?;
        ensure(back.net == g.net && back.provenance == g.provenance, || format!("gadget {i} does not round-trip"))?;
    }
    ensure(render_lpn(&e1) == "places p\ninitial p=1\ntrans t label a pre p:1 post p:1\n", || "E1 text".into())?;

    // end-to-end exit codes and schema validation
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |n: &str| dir.path().join(n).display().to_string();
    for (name, net) in fixtures::all() {
        std::fs::write(path(&format!("{name}.lpn")), render_lpn(&net)).unwrap();
    }
    std::fs::write(path("dead.lpn"), "places p\ninitial p=1\ntrans t label a pre p:1\n").unwrap();
    std::fs::write(path("s.txt"), "p=1\n").unwrap();
    let schema: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).map_err(|e| e.to_string())?;
    let validator = jsonschema::validator_for(&schema).map_err(|e| e.to_string())?;
    let cases: Vec<(Vec<String>, i32)> = vec![
        (vec!["check-strong".into(), path("e1.lpn")], 0),
        (vec!["check-strong".into(), path("e2.lpn")], 1),
        (vec!["check-strong".into(), path("e4.lpn"), "--max-depth".into(), "20".into()], 1),
        (vec!["check-strong".into(), path("e3.lpn"), "--max-states".into(), "200".into()], 2),
        (vec!["check-strong".into(), path("dead.lpn")], 3),
        (vec!["check-weak".into(), path("e1.lpn")], 0),
        (vec!["check-weak".into(), path("e2.lpn")], 1),
        (vec!["check-weak".into(), path("e3.lpn"), "--max-states".into(), "200".into()], 2),
        (vec!["check-opacity".into(), path("e1.lpn"), "--secret".into(), path("s.txt")], 1),
        (vec!["check-assumptions".into(), path("dead.lpn")], 1),
        (vec!["no-such-command".into()], 3),
        (vec!["check-strong".into(), path("e1.lpn"), "--no-such-flag".into()], 3),
    ];
    let mut reports = 0;
    for (args, code) in &cases {
        let mut argv = vec!["lpn-detect".to_string()];
        argv.extend(args.iter().cloned());
        let out = run_cli(argv.clone());
        ensure(out.code == *code, || format!("{args:?}: exit {} expected {code}", out.code))?;
        if args[0].starts_with("check-") && args[0] != "check-assumptions" && *code < 3 {
            argv.push("--json".into());
            let out = run_cli(argv);
            let json: serde_json::Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
            ensure(validator.is_valid(&json), || format!("{args:?}: report not schema-valid"))?;
            ensure(json.get("witness").is_some() == (*code == 1), || format!("{args:?}: witness presence"))?;
            reports += 1;
        }
    }
    let mut bad: serde_json::Value = serde_json::from_str(&run_cli(["lpn-detect", "check-strong", &path("e2.lpn"), "--json"]).stdout).unwrap();
    bad.as_object_mut().unwrap().remove("witness");
    ensure(!validator.is_valid(&bad), || "schema accepts fails without witness".into())?;
    Ok(format!(
        "{} fixtures and {} gadgets round-trip; {} exit-code cases; {reports} reports schema-valid",
        fixtures::all().len(),
        gadgets.len(),
        cases.len()
    ))
}

fn run(n: usize, title: &str, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let t = start.elapsed();
    match result {
        Ok(detail) => {
            println!("criterion {n} ({title}): PASS [{t:.1?}] {detail}");
            true
        }
        Err(detail) => {
            println!("criterion {n} ({title}): FAIL [{t:.1?}] {detail}");
            false
        }
    }
}

fn main() {
    let mut ok = true;
    ok &= run(1, "twin plant soundness and completeness", c1_twin);
    ok &= run(2, "strong detectability agreement", c2_strong);
    ok &= run(3, "coverability gadget", c3_coverability);
    let mut runs = Err("inclusion instances not built".to_string());
    ok &= run(4, "inclusion gadget", || {
        runs = inclusion_runs();
        c4_inclusion(runs.as_ref().map_err(Clone::clone)?)
    });
    ok &= run(5, "opacity complement", || c5_opacity(runs.as_ref().map_err(Clone::clone)?));
    ok &= run(6, "unbounded witness search", c6_unbounded);
    ok &= run(7, "unobservable self-loop gadget", c7_selfloop);
    ok &= run(8, "observer correctness", c8_observer);
    ok &= run(9, "tooling", c9_tooling);
    if !ok {
        std::process::exit(1);
    }
}
