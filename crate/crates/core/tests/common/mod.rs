//! Random net generators and brute-force oracles shared by the integration
//! tests. Oracles use only the public firing API and their own search code.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use lpn_detect::explore::PathWitness;
use lpn_detect::net::{FiringSequence, LabeledPetriNet, Marking, NetBuilder, ObservationWord, TransitionId};
use lpn_detect::twin::TwinNet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug)]
pub struct Shape {
    pub places: usize,
    pub transitions: usize,
    pub max_weight: u64,
    pub max_tokens: u64,
    pub labels: &'static [&'static str],
    /// Probability that a transition is unobservable.
    pub unobservable: f64,
    pub place_prefix: &'static str,
    pub trans_prefix: &'static str,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            places: 3,
            transitions: 4,
            max_weight: 2,
            max_tokens: 2,
            labels: &["a", "b"],
            unobservable: 0.2,
            place_prefix: "q",
            trans_prefix: "t",
        }
    }
}

/// A random net with between one and `shape.places` places and between one
/// and `shape.transitions` transitions.
pub fn random_net(rng: &mut impl Rng, shape: &Shape) -> LabeledPetriNet {
    let np = rng.gen_range(1..=shape.places);
    let nt = rng.gen_range(1..=shape.transitions);
    let mut b = NetBuilder::new();
    let place = |i: usize| format!("{}{i}", shape.place_prefix);
    let mut any_token = false;
    for i in 0..np {
        let tokens = rng.gen_range(0..=shape.max_tokens);
        any_token |= tokens > 0;
        b.add_place(place(i), if i == np - 1 && !any_token { 1 } else { tokens });
    }
    for j in 0..nt {
        let mut pre: Vec<(String, u64)> = Vec::new();
        let mut post: Vec<(String, u64)> = Vec::new();
        for i in 0..np {
            if rng.gen_bool(0.4) {
                pre.push((place(i), rng.gen_range(1..=shape.max_weight)));
            }
            if rng.gen_bool(0.4) {
                post.push((place(i), rng.gen_range(1..=shape.max_weight)));
            }
        }
        if pre.is_empty() && rng.gen_bool(0.9) {
            pre.push((place(rng.gen_range(0..np)), 1));
        }
        let label = if rng.gen_bool(shape.unobservable) {
            None
        } else {
            Some(shape.labels[rng.gen_range(0..shape.labels.len())].to_string())
        };
        b.add_transition(format!("{}{j}", shape.trans_prefix), label, pre, post);
    }
    b.build().expect("generated net is well formed")
}

/// Copies `net` into a builder so tests can extend it.
pub fn builder_of(net: &LabeledPetriNet) -> NetBuilder {
    let mut b = NetBuilder::new();
    for (p, id) in net.places().iter().enumerate() {
        b.add_place(id.clone(), net.initial_marking().get(p));
    }
    let arcs = |row: &[u64]| -> Vec<(String, u64)> {
        row.iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(p, &n)| (net.places()[p].clone(), n))
            .collect()
    };
    for (i, t) in net.transitions().iter().enumerate() {
        let label = net.label_name(TransitionId(i)).map(str::to_string);
        b.add_transition(t.id.clone(), label, arcs(&t.pre), arcs(&t.post));
    }
    for s in net.alphabet() {
        b.add_symbol(s.clone());
    }
    b
}

/// Adds a marked place with an observable self-loop labeled `z`, making any
/// net deadlock free.
pub fn keep_alive(net: &LabeledPetriNet) -> LabeledPetriNet {
    let mut b = builder_of(net);
    b.add_place("alive", 1);
    b.add_transition("keep", Some("z".into()), vec![("alive".into(), 1)], vec![("alive".into(), 1)]);
    b.build().unwrap()
}

/// All reachable markings, or `None` past `cap`.
pub fn reachable(net: &LabeledPetriNet, cap: usize) -> Option<Vec<Marking>> {
    let mut seen: HashSet<Marking> = HashSet::new();
    let mut order = Vec::new();
    let mut stack = vec![net.initial_marking().clone()];
    seen.insert(net.initial_marking().clone());
    while let Some(m) = stack.pop() {
        order.push(m.clone());
        for t in net.transition_ids() {
            if net.enabled(&m, t).unwrap() {
                let n = net.fire(&m, t).unwrap();
                if seen.insert(n.clone()) {
                    if seen.len() > cap {
                        return None;
                    }
                    stack.push(n);
                }
            }
        }
    }
    Some(order)
}

pub fn deadlock_free(net: &LabeledPetriNet, cap: usize) -> Option<bool> {
    let r = reachable(net, cap)?;
    Some(r.iter().all(|m| net.transition_ids().any(|t| net.enabled(m, t).unwrap())))
}

/// Whether the reachable state space has a cycle of unobservable moves.
pub fn has_unobservable_cycle(net: &LabeledPetriNet, cap: usize) -> Option<bool> {
    let r = reachable(net, cap)?;
    let index: HashMap<&Marking, usize> = r.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let succ: Vec<Vec<usize>> = r
        .iter()
        .map(|m| {
            net.transition_ids()
                .filter(|&t| !net.is_observable(t) && net.enabled(m, t).unwrap())
                .map(|t| index[&net.fire(m, t).unwrap()])
                .collect()
        })
        .collect();
    // 0 unvisited, 1 on stack, 2 done
    let mut color = vec![0u8; r.len()];
    for s in 0..r.len() {
        if color[s] != 0 {
            continue;
        }
        let mut stack = vec![(s, 0usize)];
        color[s] = 1;
        while let Some(&mut (u, ref mut k)) = stack.last_mut() {
            if *k < succ[u].len() {
                let v = succ[u][*k];
                *k += 1;
                match color[v] {
                    0 => {
                        color[v] = 1;
                        stack.push((v, 0));
                    }
                    1 => return Some(true),
                    _ => {}
                }
            } else {
                color[u] = 2;
                stack.pop();
            }
        }
    }
    Some(false)
}

/// Every enabled firing sequence of length at most `max_len` with its final
/// marking, shortest first.
pub fn sequences(net: &LabeledPetriNet, max_len: usize) -> Vec<(FiringSequence, Marking)> {
    let mut out = vec![(FiringSequence::empty(), net.initial_marking().clone())];
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (seq, m) in &frontier {
            for t in net.transition_ids() {
                if net.enabled(m, t).unwrap() {
                    let mut s = seq.clone();
                    s.0.push(t);
                    next.push((s, net.fire(m, t).unwrap()));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Brute-force estimate: markings reached by sequences observed as `word`.
/// Runs of unobservable moves are cut at `eps_cap` steps, which is exact
/// when no unobservable cycle is reachable and `eps_cap` exceeds the number
/// of reachable markings.
pub fn brute_estimate(net: &LabeledPetriNet, word: &ObservationWord, eps_cap: usize) -> BTreeSet<Marking> {
    let mut out = BTreeSet::new();
    let mut seen: HashSet<(usize, Marking, usize)> = HashSet::new();
    let mut stack = vec![(0usize, net.initial_marking().clone(), 0usize)];
    while let Some((pos, m, eps)) = stack.pop() {
        if !seen.insert((pos, m.clone(), eps)) {
            continue;
        }
        if pos == word.len() {
            out.insert(m.clone());
        }
        for t in net.transition_ids() {
            if !net.enabled(&m, t).unwrap() {
                continue;
            }
            match net.label(t) {
                None if eps < eps_cap => stack.push((pos, net.fire(&m, t).unwrap(), eps + 1)),
                Some(s) if pos < word.len() && word.symbols()[pos] == s => {
                    stack.push((pos + 1, net.fire(&m, t).unwrap(), 0))
                }
                _ => {}
            }
        }
    }
    out
}

/// All words over the alphabet of length at most `n`.
pub fn words(net: &LabeledPetriNet, n: usize) -> Vec<ObservationWord> {
    let k = net.alphabet().len();
    let mut out = vec![ObservationWord::default()];
    let mut frontier = out.clone();
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &frontier {
            for s in 0..k {
                let mut v = w.clone();
                v.0.push(lpn_detect::net::Symbol(s));
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn successors_by_label<'a>(net: &'a LabeledPetriNet, m: &'a Marking, label: &'a str) -> impl Iterator<Item = Marking> + 'a {
    net.transition_ids()
        .filter(move |&t| net.label_name(t) == Some(label) && net.enabled(m, t).unwrap())
        .map(move |t| net.fire(m, t).unwrap())
}

/// `L(g1) ⊆ L(g2)` for bounded nets without unobservable transitions, by a
/// search over pairs (marking of g1, set of markings of g2). Symbols are
/// compared by name.
pub fn language_included(g1: &LabeledPetriNet, g2: &LabeledPetriNet) -> bool {
    let start = (g1.initial_marking().clone(), BTreeSet::from([g2.initial_marking().clone()]));
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([start]);
    while let Some((m1, s2)) = queue.pop_front() {
        if !seen.insert((m1.clone(), s2.clone())) {
            continue;
        }
        for label in g1.alphabet() {
            let next1: Vec<Marking> = successors_by_label(g1, &m1, label).collect();
            if next1.is_empty() {
                continue;
            }
            let next2: BTreeSet<Marking> = s2.iter().flat_map(|m| successors_by_label(g2, m, label)).collect();
            if next2.is_empty() {
                return false;
            }
            for n in next1 {
                queue.push_back((n, next2.clone()));
            }
        }
    }
    true
}

/// Coverability by exhaustive search, for bounded nets.
pub fn covers_exhaustive(net: &LabeledPetriNet, target: &Marking, cap: usize) -> Option<bool> {
    Some(reachable(net, cap)?.iter().any(|m| m.covers(target)))
}

/// Checks a strong-detectability witness of `twin`: it replays, and for
/// every m in {0, 1, 2, 5} firing α·β^(m+1)·γ reaches exactly
/// M3 + m·(M2 − M1), whose two halves are reached in `g` by the projected
/// sequences with equal observations. The halves differ at m = 0 and agree
/// for at most one m.
pub fn check_pumping(g: &LabeledPetriNet, twin: &TwinNet, w: &PathWitness) -> Result<(), String> {
    let tn = twin.net();
    if !w.replays(tn) {
        return Err("witness does not replay".into());
    }
    if w.segments.len() != 3 || w.segments[1].is_empty() {
        return Err("witness is not of the form α β γ with β nonempty".into());
    }
    let (m1, m2, m3) = (&w.markings[0], &w.markings[1], &w.markings[2]);
    if !m1.le(m2) {
        return Err(format!("M1 {m1} is not covered by M2 {m2}"));
    }
    let mut equal_halves = 0;
    for m in [0u64, 1, 2, 5] {
        let mut seq = w.segments[0].clone();
        for _ in 0..=m {
            seq = seq.concat(&w.segments[1]);
        }
        seq = seq.concat(&w.segments[2]);
        let reached = tn
            .fire_sequence(tn.initial_marking(), &seq)
            .map_err(|e| format!("pumped sequence m={m} not firable: {e}"))?;
        let expected: Vec<u64> = (0..m3.len())
            .map(|p| m3.get(p) + m * (m2.get(p) - m1.get(p)))
            .collect();
        if reached.counts() != &expected[..] {
            return Err(format!("m={m}: reached {reached}, formula gives {expected:?}"));
        }
        let (s1, s2) = twin.project(&seq);
        let f1 = g.fire_sequence(g.initial_marking(), &s1).map_err(|e| format!("first projection: {e}"))?;
        let f2 = g.fire_sequence(g.initial_marking(), &s2).map_err(|e| format!("second projection: {e}"))?;
        if g.observation(&s1) != g.observation(&s2) {
            return Err(format!("m={m}: projections observe differently"));
        }
        if f1 != twin.first(&reached) || f2 != twin.second(&reached) {
            return Err(format!("m={m}: projections do not reach the twin halves"));
        }
        if f1 == f2 {
            if m == 0 {
                return Err("final halves agree at m=0".into());
            }
            equal_halves += 1;
        }
    }
    if equal_halves > 1 {
        return Err("final halves agree for several m".into());
    }
    Ok(())
}

/// Bounded, deadlock-free net without unobservable cycles whose state space
/// has at most `cap` markings. Deadlocking candidates get a keep-alive loop.
pub fn random_bounded(rng: &mut impl Rng, shape: &Shape, cap: usize) -> LabeledPetriNet {
    loop {
        let mut net = random_net(rng, shape);
        if reachable(&net, cap).is_none() {
            continue;
        }
        if !deadlock_free(&net, cap).unwrap() {
            net = keep_alive(&net);
        }
        if has_unobservable_cycle(&net, cap) == Some(false) && reachable(&net, cap).is_some() {
            return net;
        }
    }
}

/// Twin sequences from the twin's initial marking up to `len`, checked on
/// the fly: both projections replay in `g` with equal observations and
/// reach the two halves of the twin marking. Returns the number of
/// sequences visited.
pub fn twin_soundness(g: &LabeledPetriNet, twin: &TwinNet, len: usize) -> Result<usize, String> {
    let tn = twin.net();
    let mut count = 0;
    #[allow(clippy::type_complexity)]
    let mut stack: Vec<(Marking, Marking, Marking, Vec<String>, Vec<String>, usize)> = vec![(
        tn.initial_marking().clone(),
        g.initial_marking().clone(),
        g.initial_marking().clone(),
        Vec::new(),
        Vec::new(),
        0,
    )];
    while let Some((mt, a, b, oa, ob, d)) = stack.pop() {
        count += 1;
        if oa != ob {
            return Err(format!("observations differ: {oa:?} vs {ob:?}"));
        }
        if twin.first(&mt) != a || twin.second(&mt) != b {
            return Err(format!("twin marking {mt} does not match projections {a} {b}"));
        }
        if d == len {
            continue;
        }
        for t in tn.transition_ids() {
            if !tn.enabled(&mt, t).unwrap() {
                continue;
            }
            let (x, y) = twin.pair_of(t);
            let step = |m: &Marking, s: Option<TransitionId>, o: &Vec<String>| -> Result<(Marking, Vec<String>), String> {
                let Some(s) = s else { return Ok((m.clone(), o.clone())) };
                let n = g.fire(m, s).map_err(|e| format!("projection not firable: {e}"))?;
                let mut o = o.clone();
                if let Some(l) = g.label_name(s) {
                    o.push(l.to_string());
                }
                Ok((n, o))
            };
            let (na, noa) = step(&a, x, &oa)?;
            let (nb, nob) = step(&b, y, &ob)?;
            stack.push((tn.fire(&mt, t).unwrap(), na, nb, noa, nob, d + 1));
        }
    }
    Ok(count)
}

/// For every pair of firing sequences of `g` up to `len` with equal
/// observations, finds a twin sequence projecting to the pair. Returns the
/// number of pairs checked.
pub fn twin_completeness(g: &LabeledPetriNet, twin: &TwinNet, len: usize) -> Result<usize, String> {
    let tn = twin.net();
    let lookup: HashMap<(Option<TransitionId>, Option<TransitionId>), TransitionId> =
        twin.pairs().iter().enumerate().map(|(i, &p)| (p, TransitionId(i))).collect();
    let mut by_obs: HashMap<ObservationWord, Vec<FiringSequence>> = HashMap::new();
    for (s, _) in sequences(g, len) {
        by_obs.entry(g.observation(&s)).or_default().push(s);
    }
    let mut pairs = 0;
    for group in by_obs.values() {
        for s1 in group {
            for s2 in group {
                pairs += 1;
                if !interleave(g, tn, &lookup, s1.steps(), s2.steps()) {
                    return Err(format!(
                        "no twin sequence for ({:?}, {:?})",
                        g.sequence_names(s1),
                        g.sequence_names(s2)
                    ));
                }
            }
        }
    }
    Ok(pairs)
}

fn interleave(
    g: &LabeledPetriNet,
    tn: &LabeledPetriNet,
    lookup: &HashMap<(Option<TransitionId>, Option<TransitionId>), TransitionId>,
    s1: &[TransitionId],
    s2: &[TransitionId],
) -> bool {
    let mut seen = HashSet::new();
    let mut stack = vec![(0usize, 0usize, tn.initial_marking().clone())];
    while let Some((i, j, m)) = stack.pop() {
        if i == s1.len() && j == s2.len() {
            return true;
        }
        if !seen.insert((i, j)) {
            continue;
        }
        let mut moves = Vec::new();
        if i < s1.len() && !g.is_observable(s1[i]) {
            moves.push(((Some(s1[i]), None), i + 1, j));
        }
        if j < s2.len() && !g.is_observable(s2[j]) {
            moves.push(((None, Some(s2[j])), i, j + 1));
        }
        if i < s1.len() && j < s2.len() && g.is_observable(s1[i]) && g.label(s1[i]) == g.label(s2[j]) {
            moves.push(((Some(s1[i]), Some(s2[j])), i + 1, j + 1));
        }
        for (pair, ni, nj) in moves {
            let Some(&t) = lookup.get(&pair) else { return false };
            if tn.enabled(&m, t).unwrap() {
                stack.push((ni, nj, tn.fire(&m, t).unwrap()));
            }
        }
    }
    false
}
