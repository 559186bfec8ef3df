//! Structural invariants of enumerated networks on random strand systems.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use strandnet::enumerate::get_fast_reactions;
use strandnet::io::write_json;
use strandnet::{condense, enumerate, Complex, Domain, EnumConfig, ReactionNetwork, Strand};

const ALPHABET: [(&str, u32, bool); 6] = [
    ("t", 6, false),
    ("t", 6, true),
    ("x", 12, false),
    ("x", 12, true),
    ("s", 4, false),
    ("s", 4, true),
];

fn system(codes: &[Vec<usize>]) -> Option<Vec<Complex>> {
    let mut out: Vec<Complex> = Vec::new();
    for (i, cs) in codes.iter().enumerate() {
        let ds = cs
            .iter()
            .map(|&k| Domain::new(ALPHABET[k].0, ALPHABET[k].1, ALPHABET[k].2).unwrap())
            .collect();
        let s = Strand::new(ds).unwrap();
        let n = s.len();
        let c = Complex::new(format!("S{i}"), vec![s], vec![vec![None; n]]).unwrap();
        if out.iter().any(|o| o.kernel() == c.kernel()) {
            return None;
        }
        out.push(c);
    }
    Some(out)
}

fn systems() -> impl Strategy<Value = Vec<Complex>> {
    prop::collection::vec(prop::collection::vec(0..6usize, 1..=3), 2..=3)
        .prop_filter_map("distinct strands", |c| system(&c))
}

fn config() -> EnumConfig {
    EnumConfig {
        max_complexes: 60,
        max_reactions: 400,
        ..EnumConfig::default()
    }
}

fn key_set(net: &ReactionNetwork) -> BTreeSet<String> {
    net.complexes.iter().map(|c| c.kernel()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn network_is_closed_and_classified(initial in systems()) {
        let cfg = config();
        let net = enumerate(&initial, &cfg).unwrap();
        let n = net.complexes.len();
        prop_assert_eq!(key_set(&net).len(), n, "complexes are unique");
        let mut classified: Vec<usize> = net.transients.clone();
        classified.extend(net.resting_sets.iter().flatten());
        classified.sort_unstable();
        prop_assert_eq!(classified, (0..n).collect::<Vec<_>>());
        for r in &net.reactions {
            prop_assert!(r.reactants.iter().chain(&r.products).all(|&i| i < n));
            prop_assert!(net.strand_balance(r));
            prop_assert!(r.rate > 0.0 && r.rate.is_finite());
            if r.reactants.len() == 2 {
                prop_assert!(r.reactants.iter().all(|&i| !net.is_transient(i)));
            }
        }
        for rs in &net.resting_sets {
            for r in net.reactions.iter().filter(|r| r.is_fast() && rs.contains(&r.reactants[0])) {
                prop_assert!(r.products.len() == 1 && rs.contains(&r.products[0]));
            }
        }
        for &t in &net.transients {
            prop_assert!(net.reactions.iter().any(|r| r.is_fast() && r.reactants == [t]));
        }
    }

    #[test]
    fn complete_runs_contain_every_fast_move(initial in systems()) {
        let cfg = config();
        let net = enumerate(&initial, &cfg).unwrap();
        prop_assume!(!net.truncated);
        let keys = key_set(&net);
        for (i, c) in net.complexes.iter().enumerate() {
            let (rx, products) = get_fast_reactions(c, &cfg).unwrap();
            prop_assert!(products.iter().all(|p| keys.contains(&p.kernel())));
            let listed = net.reactions.iter().filter(|r| r.reactants == [i]).count();
            prop_assert_eq!(listed, rx.len());
        }
    }

    #[test]
    fn condensation_agrees_with_exhaustive_search(initial in systems()) {
        let net = enumerate(&initial, &config()).unwrap();
        prop_assume!(!net.truncated);
        let cn = condense(&net).unwrap();
        prop_assert!(common::check_condensation(&net, &cn).is_ok(), "{:?}", common::check_condensation(&net, &cn));
        for d in &cn.fates {
            prop_assert!((d.values().sum::<f64>() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn enumeration_is_deterministic(initial in systems()) {
        let cfg = config();
        let a = enumerate(&initial, &cfg).unwrap();
        let mut reversed = initial.clone();
        reversed.reverse();
        let b = enumerate(&reversed, &cfg).unwrap();
        prop_assert_eq!(write_json(&a, None), write_json(&b, None));
    }
}
