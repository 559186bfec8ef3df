//! Helpers shared by the integration tests: hand-built networks, a random
//! network generator that satisfies the condensation restrictions, and
//! brute-force oracles for fates and condensed reactions.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;
use strandnet::moves::MoveType;
use strandnet::network::NetReaction;
use strandnet::{CondensedNetwork, Complex, Domain, ReactionNetwork, Strand};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

pub fn read_data(name: &str) -> String {
    std::fs::read_to_string(data(name)).expect("test data file")
}

/// A one-strand placeholder complex; the domain name keeps it unique.
pub fn placeholder(name: &str) -> Complex {
    let d = Domain::new(format!("x{name}"), 5, false).unwrap();
    let s = Strand::new(vec![d]).unwrap();
    Complex::new(name, vec![s], vec![vec![None]]).unwrap()
}

/// Builds a network over placeholder complexes from named reactions.
pub fn hand_network(names: &[&str], reactions: &[(&[&str], &[&str], f64)]) -> ReactionNetwork {
    let complexes: Vec<Complex> = names.iter().map(|n| placeholder(n)).collect();
    let idx = |n: &str| names.iter().position(|m| *m == n).expect("declared name");
    let rx = reactions
        .iter()
        .map(|(r, p, k)| {
            let mt = if r.len() == 1 {
                MoveType::Branch3Way
            } else {
                MoveType::Bind
            };
            NetReaction::new(
                r.iter().map(|n| idx(n)).collect(),
                p.iter().map(|n| idx(n)).collect(),
                mt,
                *k,
            )
        })
        .collect();
    ReactionNetwork::from_parts(complexes, rx)
}

fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    10f64.powf(rng.random_range(lo.log10()..hi.log10()))
}

/// Random network of at most `max_n` complexes. Complexes are split into
/// ordered groups; each group is a fast (1,1) cycle, fast reactions only
/// leave a group towards later groups, and bimolecular reactions only
/// consume members of groups without exits. The last group never has
/// exits, so at least one resting set exists.
pub fn random_network<R: Rng>(rng: &mut R, max_n: usize) -> ReactionNetwork {
    let n = rng.random_range(3..=max_n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < n {
        let size = rng.random_range(1..=3usize).min(n - i);
        groups.push(order[i..i + size].to_vec());
        i += size;
    }
    let g = groups.len();
    let transient: Vec<bool> = (0..g).map(|k| k + 1 < g && rng.random_bool(0.6)).collect();
    let mut rx = Vec::new();
    for (k, members) in groups.iter().enumerate() {
        if members.len() > 1 {
            for w in 0..members.len() {
                let (a, b) = (members[w], members[(w + 1) % members.len()]);
                rx.push(NetReaction::new(vec![a], vec![b], MoveType::Branch3Way, log_uniform(rng, 0.1, 10.0)));
            }
            if members.len() > 2 && rng.random_bool(0.5) {
                rx.push(NetReaction::new(
                    vec![members[1]],
                    vec![members[0]],
                    MoveType::Branch3Way,
                    log_uniform(rng, 0.1, 10.0),
                ));
            }
        }
        if transient[k] {
            let later: Vec<usize> = groups[k + 1..].iter().flatten().copied().collect();
            for _ in 0..rng.random_range(1..=3) {
                let from = members[rng.random_range(0..members.len())];
                let count = if rng.random_bool(0.3) { 2 } else { 1 };
                let products = (0..count)
                    .map(|_| later[rng.random_range(0..later.len())])
                    .collect();
                rx.push(NetReaction::new(vec![from], products, MoveType::Branch3Way, log_uniform(rng, 0.1, 10.0)));
            }
        }
    }
    let resting: Vec<usize> = groups
        .iter()
        .zip(&transient)
        .filter(|(_, t)| !**t)
        .flat_map(|(m, _)| m.iter().copied())
        .collect();
    for _ in 0..rng.random_range(1..=4) {
        let a = resting[rng.random_range(0..resting.len())];
        let b = resting[rng.random_range(0..resting.len())];
        let count = rng.random_range(1..=2);
        let products = (0..count).map(|_| rng.random_range(0..n)).collect();
        rx.push(NetReaction::new(vec![a, b], products, MoveType::Bind, log_uniform(rng, 1e4, 1e7)));
    }
    let complexes = (0..n).map(|i| placeholder(&format!("c{i}"))).collect();
    ReactionNetwork::from_parts(complexes, rx)
}

fn set_of(net: &ReactionNetwork) -> Vec<Option<usize>> {
    let mut v = vec![None; net.complexes.len()];
    for (k, rs) in net.resting_sets.iter().enumerate() {
        for &x in rs {
            v[x] = Some(k);
        }
    }
    v
}

const STATE_LIMIT: usize = 200_000;

/// Every multiset of resting complexes reachable from `start` by fast
/// reactions alone, found by breadth-first search over multisets.
pub fn resting_states_from(net: &ReactionNetwork, start: &[usize]) -> BTreeSet<Vec<usize>> {
    let sets = set_of(net);
    let mut by_reactant: BTreeMap<usize, Vec<&NetReaction>> = BTreeMap::new();
    for r in net.reactions.iter().filter(|r| r.is_fast()) {
        by_reactant.entry(r.reactants[0]).or_default().push(r);
    }
    let mut first = start.to_vec();
    first.sort_unstable();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([first.clone()]);
    let mut queue = VecDeque::from([first]);
    let mut out = BTreeSet::new();
    while let Some(state) = queue.pop_front() {
        if state.iter().all(|&x| sets[x].is_some()) {
            out.insert(state.clone());
        }
        let mut distinct = state.clone();
        distinct.dedup();
        for x in distinct {
            for r in by_reactant.get(&x).into_iter().flatten() {
                let mut next = state.clone();
                let pos = next.iter().position(|&y| y == x).unwrap();
                next.remove(pos);
                next.extend(&r.products);
                next.sort_unstable();
                if seen.insert(next.clone()) {
                    assert!(seen.len() < STATE_LIMIT, "fast closure too large");
                    queue.push_back(next);
                }
            }
        }
    }
    out
}

fn image(sets: &[Option<usize>], state: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = state.iter().map(|&x| sets[x].unwrap()).collect();
    v.sort_unstable();
    v
}

/// Fate sets recomputed by exhaustive search.
pub fn brute_force_fates(net: &ReactionNetwork) -> Vec<BTreeSet<Vec<usize>>> {
    let sets = set_of(net);
    (0..net.complexes.len())
        .map(|x| {
            resting_states_from(net, &[x])
                .iter()
                .map(|s| image(&sets, s))
                .collect()
        })
        .collect()
}

/// Whether `target` is reachable from `from` using (1,1) moves between
/// resting complexes only.
fn resting_moves_reach(net: &ReactionNetwork, from: &[usize], target: &[usize]) -> bool {
    let sets = set_of(net);
    let mut first = from.to_vec();
    first.sort_unstable();
    let mut goal = target.to_vec();
    goal.sort_unstable();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([first.clone()]);
    let mut queue = VecDeque::from([first]);
    while let Some(state) = queue.pop_front() {
        if state == goal {
            return true;
        }
        for r in &net.reactions {
            if r.reactants.len() != 1 || r.products.len() != 1 || sets[r.reactants[0]].is_none() {
                continue;
            }
            if let Some(pos) = state.iter().position(|&y| y == r.reactants[0]) {
                let mut next = state.clone();
                next[pos] = r.products[0];
                next.sort_unstable();
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    false
}

/// Checks both directions of the correspondence between detailed
/// resting-state transitions and condensed reactions, plus the fate sets.
pub fn check_condensation(net: &ReactionNetwork, cn: &CondensedNetwork) -> Result<(), String> {
    if cn.resting_sets != net.resting_sets {
        return Err("resting sets differ between detailed and condensed networks".into());
    }
    let sets = set_of(net);
    let fates = brute_force_fates(net);
    for (x, expected) in fates.iter().enumerate() {
        if *expected != cn.fate_set(x) {
            return Err(format!("fates of complex {x}: {:?} vs {:?}", cn.fate_set(x), expected));
        }
    }

    // Every detailed resting-state transition has a condensed counterpart.
    let mut detailed: BTreeMap<(Vec<usize>, Vec<usize>), Vec<usize>> = BTreeMap::new();
    for (ri, r) in net.reactions.iter().enumerate().filter(|(_, r)| r.reactants.len() == 2) {
        let reactants = image(&sets, &r.reactants);
        for state in resting_states_from(net, &r.products) {
            detailed
                .entry((reactants.clone(), image(&sets, &state)))
                .or_default()
                .push(ri);
        }
    }
    let condensed: BTreeSet<(Vec<usize>, Vec<usize>)> = cn
        .reactions
        .iter()
        .map(|r| (r.reactants.clone(), r.products.clone()))
        .collect();
    for key in detailed.keys() {
        if !condensed.contains(key) {
            return Err(format!("detailed transition {key:?} missing from condensed network"));
        }
    }

    // Every condensed reaction is realised for every representation of its
    // reactants and products.
    for r in &cn.reactions {
        if r.rate.is_nan() || r.rate <= 0.0 {
            return Err(format!("condensed reaction {r:?} has rate {}", r.rate));
        }
        let key = (r.reactants.clone(), r.products.clone());
        let Some(sources) = detailed.get(&key) else {
            return Err(format!("condensed reaction {key:?} has no detailed transition"));
        };
        let reps_a = representations(&cn.resting_sets, &r.reactants);
        let reps_b = representations(&cn.resting_sets, &r.products);
        for a in &reps_a {
            for b in &reps_b {
                let ok = sources.iter().any(|&ri| {
                    let d = &net.reactions[ri];
                    resting_moves_reach(net, a, &d.reactants)
                        && resting_states_from(net, &d.products).contains(b)
                });
                if !ok {
                    return Err(format!("no transition {a:?} -> {b:?} for {key:?}"));
                }
            }
        }
    }
    Ok(())
}

/// All multisets choosing one member from each listed resting set.
pub fn representations(resting_sets: &[Vec<usize>], sets: &[usize]) -> Vec<Vec<usize>> {
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::from([Vec::new()]);
    for &k in sets {
        out = out
            .iter()
            .flat_map(|prefix| {
                resting_sets[k].iter().map(move |&m| {
                    let mut v = prefix.clone();
                    v.push(m);
                    v.sort_unstable();
                    v
                })
            })
            .collect();
    }
    out.into_iter().collect()
}

/// Samples the decay of complex `x` by simulating the jump chain of every
/// complex it produces until all are resting. Runs whole trajectories
/// until at least `steps` jumps were taken; returns the empirical fate
/// frequencies and the number of trajectories.
pub fn sample_fates<R: Rng>(
    net: &ReactionNetwork,
    x: usize,
    steps: usize,
    rng: &mut R,
) -> (BTreeMap<Vec<usize>, f64>, usize) {
    let sets = set_of(net);
    let mut by_reactant: BTreeMap<usize, Vec<&NetReaction>> = BTreeMap::new();
    for r in net.reactions.iter().filter(|r| r.is_fast()) {
        by_reactant.entry(r.reactants[0]).or_default().push(r);
    }
    let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut taken = 0;
    let mut runs = 0;
    while taken < steps {
        let mut stack = vec![x];
        let mut fate = Vec::new();
        while let Some(c) = stack.pop() {
            if let Some(k) = sets[c] {
                fate.push(k);
                continue;
            }
            let options = &by_reactant[&c];
            let total: f64 = options.iter().map(|r| r.rate).sum();
            let mut u = rng.random::<f64>() * total;
            let mut chosen = options[options.len() - 1];
            for r in options {
                if u < r.rate {
                    chosen = r;
                    break;
                }
                u -= r.rate;
            }
            stack.extend(&chosen.products);
            taken += 1;
        }
        fate.sort_unstable();
        *counts.entry(fate).or_default() += 1;
        runs += 1;
    }
    let freq = counts
        .into_iter()
        .map(|(f, c)| (f, c as f64 / runs as f64))
        .collect();
    (freq, runs)
}
