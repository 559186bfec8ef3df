//! Reaction enumeration with separation of timescales.
//!
//! Complexes move through a fixed set of work lists. Newly discovered
//! complexes wait in `pending` until their fast neighborhood is explored;
//! the neighborhood's (1,1) SCCs then sort them into resting complexes
//! (`resting`, later `expanded` once their bimolecular reactions are known)
//! and transients. Pop order is always the smallest kernel string, which
//! makes runs reproducible.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{EnumerateError, KineticsError};
use crate::kinetics::KineticsConfig;
use crate::model::{self, Complex};
use crate::moves::{self, MoveConfig, MoveType, Reaction};
use crate::network::{self, natural_cmp, NetReaction, ReactionNetwork};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnumConfig {
    pub max_complexes: usize,
    pub max_reactions: usize,
    pub moves: MoveConfig,
    pub kinetics: KineticsConfig,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            max_complexes: 1000,
            max_reactions: 5000,
            moves: MoveConfig::default(),
            kinetics: KineticsConfig::default(),
        }
    }
}

/// A move with its rate constant attached.
#[derive(Clone, Debug)]
pub struct RatedReaction {
    pub reaction: Reaction,
    pub rate: f64,
}

type Key = String;

fn key(c: &Complex) -> Key {
    c.kernel()
}

fn rate_all(
    reactions: Vec<Reaction>,
    cfg: &KineticsConfig,
) -> Result<Vec<RatedReaction>, KineticsError> {
    reactions
        .into_iter()
        .map(|reaction| {
            let rate = reaction.rate_constant(cfg)?;
            Ok(RatedReaction { reaction, rate })
        })
        .collect()
}

fn products_of(reactions: &[RatedReaction]) -> Vec<Complex> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in reactions {
        for p in &r.reaction.products {
            if seen.insert(key(p)) {
                out.push(p.clone());
            }
        }
    }
    out
}

/// All unimolecular reactions consuming `c`, with rates, and their products.
pub fn get_fast_reactions(
    c: &Complex,
    cfg: &EnumConfig,
) -> Result<(Vec<RatedReaction>, Vec<Complex>), KineticsError> {
    let rated = rate_all(moves::fast_moves(c, &cfg.moves), &cfg.kinetics)?;
    let products = products_of(&rated);
    Ok((rated, products))
}

/// All bimolecular reactions between `c` and each partner (which may
/// include `c` itself).
pub fn get_slow_reactions(
    c: &Complex,
    partners: &[Complex],
    cfg: &EnumConfig,
) -> Result<(Vec<RatedReaction>, Vec<Complex>), KineticsError> {
    let mut all = Vec::new();
    for p in partners {
        all.extend(moves::bind21(c, p));
    }
    let rated = rate_all(all, &cfg.kinetics)?;
    let products = products_of(&rated);
    Ok((rated, products))
}

/// Result of exploring the fast closure of one complex.
#[derive(Clone, Debug, Default)]
pub struct Neighborhood {
    pub resting: Vec<Complex>,
    pub transient: Vec<Complex>,
    pub resting_sets: Vec<Vec<Complex>>,
    pub reactions: Vec<RatedReaction>,
}

/// Explores everything reachable from `b` by fast reactions, skipping
/// complexes in `known` (already classified elsewhere), and classifies the
/// newly found complexes by their (1,1) SCCs.
pub fn enumerate_neighborhood(
    b: &Complex,
    known: &HashSet<Key>,
    cfg: &EnumConfig,
) -> Result<Neighborhood, KineticsError> {
    let mut frontier: BTreeMap<Key, Complex> = BTreeMap::new();
    frontier.insert(key(b), b.clone());
    let mut found: BTreeMap<Key, Complex> = BTreeMap::new();
    let mut reactions = Vec::new();
    while let Some((k, x)) = frontier.pop_first() {
        let (rx, products) = get_fast_reactions(&x, cfg)?;
        for p in products {
            let pk = key(&p);
            if !known.contains(&pk) && !found.contains_key(&pk) && pk != k {
                frontier.entry(pk).or_insert(p);
            }
        }
        reactions.extend(rx);
        found.insert(k, x);
    }

    let keys: Vec<&Key> = found.keys().collect();
    let index: BTreeMap<&Key, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let outside = usize::MAX;
    let net: Vec<NetReaction> = reactions
        .iter()
        .map(|r| {
            let id = |c: &Complex| index.get(&key(c)).copied().unwrap_or(outside);
            NetReaction::new(
                r.reaction.reactants.iter().map(id).collect(),
                r.reaction.products.iter().map(id).collect(),
                r.reaction.move_type(),
                r.rate,
            )
        })
        .collect();
    // reactions leading to already known complexes still count as exits
    let local: Vec<NetReaction> = net
        .into_iter()
        .map(|mut r| {
            if r.products.contains(&outside) {
                r.products = vec![r.reactants[0], r.reactants[0]];
            }
            r
        })
        .collect();
    let class = network::classify(keys.len(), &local);
    let all: Vec<&Complex> = found.values().collect();
    let mut hood = Neighborhood {
        reactions,
        ..Default::default()
    };
    for (i, c) in all.iter().enumerate() {
        if class.is_resting_complex(i) {
            hood.resting.push((*c).clone());
        } else {
            hood.transient.push((*c).clone());
        }
    }
    for set in class.resting_sets() {
        hood.resting_sets.push(set.iter().map(|&i| all[i].clone()).collect());
    }
    Ok(hood)
}

/// Working state of the enumeration loop.
#[derive(Default)]
struct State {
    pending: BTreeMap<Key, Complex>,
    resting: BTreeMap<Key, Complex>,
    expanded: BTreeMap<Key, Complex>,
    transient: BTreeMap<Key, Complex>,
    resting_sets: Vec<Vec<Key>>,
    reactions: Vec<RatedReaction>,
    reaction_index: HashSet<(MoveType, Vec<Key>, Vec<Key>)>,
}

impl State {
    fn classified(&self) -> usize {
        self.resting.len() + self.expanded.len() + self.transient.len()
    }

    fn is_known(&self, k: &Key) -> bool {
        self.resting.contains_key(k) || self.expanded.contains_key(k) || self.transient.contains_key(k)
    }

    fn known_keys(&self) -> HashSet<Key> {
        self.resting
            .keys()
            .chain(self.expanded.keys())
            .chain(self.transient.keys())
            .cloned()
            .collect()
    }

    fn add_reactions(&mut self, rx: Vec<RatedReaction>) {
        for r in rx {
            let (t, a, b) = r.reaction.sort_key();
            if self.reaction_index.insert((t, a, b)) {
                self.reactions.push(r);
            }
        }
    }

    fn over_limit(&self, cfg: &EnumConfig) -> bool {
        self.classified() > cfg.max_complexes || self.reactions.len() > cfg.max_reactions
    }
}

/// Enumerates the detailed network reachable from `initial`.
///
/// When a limit is hit the loop stops between neighborhoods, reactions
/// producing unexplored complexes are dropped, and the network is flagged
/// as truncated.
pub fn enumerate(initial: &[Complex], cfg: &EnumConfig) -> Result<ReactionNetwork, EnumerateError> {
    let mut st = State::default();
    let mut names: BTreeMap<Key, String> = BTreeMap::new();
    for c in initial {
        let (s, t) = (c.strands(), c.structure());
        if let Err(violation) = model::validate(s, t) {
            return Err(EnumerateError::InvalidInitial {
                name: c.name().to_string(),
                violation,
            });
        }
        let canon = model::canonical_form(c);
        let k = key(&canon);
        if !c.name().is_empty() {
            names.entry(k.clone()).or_insert_with(|| c.name().to_string());
        }
        st.pending.insert(k, canon);
    }

    let mut truncated = false;
    'outer: loop {
        while let Some((_, b)) = st.pending.pop_first() {
            if st.over_limit(cfg) {
                let bk = key(&b);
                st.pending.insert(bk, b);
                truncated = true;
                break 'outer;
            }
            let hood = enumerate_neighborhood(&b, &st.known_keys(), cfg)?;
            for c in hood.resting {
                let k = key(&c);
                st.pending.remove(&k);
                st.resting.insert(k, c);
            }
            for c in hood.transient {
                let k = key(&c);
                st.pending.remove(&k);
                st.transient.insert(k, c);
            }
            st.resting_sets
                .extend(hood.resting_sets.iter().map(|s| s.iter().map(key).collect()));
            st.add_reactions(hood.reactions);
        }
        let Some((k, c)) = st.resting.pop_first() else {
            break;
        };
        if st.over_limit(cfg) {
            st.resting.insert(k, c);
            truncated = true;
            break;
        }
        st.expanded.insert(k, c.clone());
        let partners: Vec<Complex> = st.expanded.values().cloned().collect();
        let (rx, products) = get_slow_reactions(&c, &partners, cfg)?;
        for p in products {
            let pk = key(&p);
            if !st.is_known(&pk) {
                st.pending.entry(pk).or_insert(p);
            }
        }
        st.add_reactions(rx);
    }

    Ok(finish(st, names, initial, truncated))
}

fn finish(
    mut st: State,
    mut names: BTreeMap<Key, String>,
    initial: &[Complex],
    truncated: bool,
) -> ReactionNetwork {
    let mut notices = Vec::new();
    if truncated {
        let dropped = st.pending.len();
        st.reactions.retain(|r| {
            r.reaction
                .products
                .iter()
                .all(|p| !st.pending.contains_key(&key(p)))
        });
        notices.push(format!(
            "enumeration truncated at a limit; {dropped} unexplored complexes and the reactions producing them were dropped"
        ));
    }

    let mut all: BTreeMap<Key, (Complex, bool)> = BTreeMap::new();
    for (k, c) in st.resting.iter().chain(st.expanded.iter()) {
        all.insert(k.clone(), (c.clone(), true));
    }
    for (k, c) in &st.transient {
        all.insert(k.clone(), (c.clone(), false));
    }

    for c in initial {
        let k = key(&model::canonical_form(c));
        if st.transient.contains_key(&k) {
            notices.push(format!(
                "initial complex '{}' is transient and takes no part in bimolecular reactions",
                c.name()
            ));
        }
    }

    // auto names: resting complexes first, then transients, each by kernel
    let taken: HashSet<String> = names.values().cloned().collect();
    let mut next = 1u64;
    let mut unnamed: Vec<(&Key, bool)> = all
        .iter()
        .filter(|(k, _)| !names.contains_key(*k))
        .map(|(k, (_, resting))| (k, *resting))
        .collect();
    unnamed.sort_by_key(|(k, resting)| (!resting, (*k).clone()));
    let mut auto = Vec::new();
    for (k, _) in unnamed {
        while taken.contains(&next.to_string()) {
            next += 1;
        }
        auto.push((k.clone(), next.to_string()));
        next += 1;
    }
    names.extend(auto);

    let keys: Vec<&Key> = all.keys().collect();
    let index: BTreeMap<&Key, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let complexes: Vec<Complex> = all
        .iter()
        .map(|(k, (c, _))| c.clone().with_name(names[k].clone()))
        .collect();

    let mut reactions: Vec<NetReaction> = st
        .reactions
        .iter()
        .map(|r| {
            let ids = |cs: &[Complex]| cs.iter().map(|c| index[&key(c)]).collect::<Vec<_>>();
            let mut nr = NetReaction::new(
                ids(&r.reaction.reactants),
                ids(&r.reaction.products),
                r.reaction.move_type(),
                r.rate,
            );
            nr.mechanism = Some(r.reaction.mechanism.clone());
            nr
        })
        .collect();
    let cmp_names = |a: &[usize], b: &[usize]| {
        let na: Vec<&str> = a.iter().map(|&i| complexes[i].name()).collect();
        let nb: Vec<&str> = b.iter().map(|&i| complexes[i].name()).collect();
        na.iter()
            .zip(&nb)
            .map(|(x, y)| natural_cmp(x, y))
            .find(|o| o.is_ne())
            .unwrap_or(na.len().cmp(&nb.len()))
    };
    reactions.sort_by(|a, b| {
        cmp_names(&a.reactants, &b.reactants)
            .then_with(|| cmp_names(&a.products, &b.products))
            .then_with(|| a.move_type.cmp(&b.move_type))
    });

    let mut resting_sets: Vec<Vec<usize>> = st
        .resting_sets
        .iter()
        .map(|s| {
            let mut v: Vec<usize> = s.iter().map(|k| index[k]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    resting_sets.sort();
    let transients: Vec<usize> = st.transient.keys().map(|k| index[k]).collect::<BTreeSet<_>>().into_iter().collect();

    ReactionNetwork {
        complexes,
        reactions,
        resting_sets,
        transients,
        truncated,
        notices,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel;

    fn parse(exprs: &[(&str, &str)], lens: &[(&str, u32)]) -> Vec<Complex> {
        let lengths = lens.iter().map(|(n, l)| (n.to_string(), *l)).collect();
        exprs
            .iter()
            .map(|(name, e)| {
                let (s, t) = kernel::parse(e, &lengths).unwrap();
                Complex::new(*name, s, t).unwrap()
            })
            .collect()
    }

    #[test]
    fn inert_complex_alone() {
        let init = parse(&[("D", "a( + )")], &[("a", 12)]);
        let net = enumerate(&init, &EnumConfig::default()).unwrap();
        assert_eq!(net.complexes.len(), 1);
        assert!(net.reactions.is_empty());
        assert_eq!(net.resting_sets, vec![vec![0]]);
    }

    #[test]
    fn two_strand_system_avoids_polymers() {
        let init = parse(&[("T", "a b"), ("B", "b* a*")], &[("a", 10), ("b", 10)]);
        let net = enumerate(&init, &EnumConfig::default()).unwrap();
        assert_eq!(net.complexes.len(), 5);
        assert!(net.complexes.iter().all(|c| c.size() <= 2));
        assert_eq!(net.transients.len(), 2);
        assert_eq!(net.resting_sets.len(), 3);
        let slow = net.reactions.iter().filter(|r| !r.is_fast()).count();
        assert_eq!((slow, net.reactions.len() - slow), (2, 2));
        assert!(net.complex("1").is_some_and(|c| c.kernel() == "a( b( + ) )"));
    }

    #[test]
    fn neighborhood_of_inert_complex() {
        let init = parse(&[("D", "a( + )")], &[("a", 12)]);
        let h = enumerate_neighborhood(&init[0], &HashSet::new(), &EnumConfig::default()).unwrap();
        assert_eq!(h.resting.len(), 1);
        assert!(h.transient.is_empty() && h.reactions.is_empty());
        assert_eq!(h.resting_sets.len(), 1);
    }

    #[test]
    fn reversible_toehold_forms_two_member_resting_set() {
        // a short duplex that opens and a hairpin that re-closes
        let init = parse(&[("H", "t( l )")], &[("t", 5), ("l", 6)]);
        let net = enumerate(&init, &EnumConfig::default()).unwrap();
        assert_eq!(net.resting_sets.len(), 1);
        assert_eq!(net.resting_sets[0].len(), 2);
    }

    #[test]
    fn limits_truncate_and_drop_dangling_reactions() {
        // each strand can bridge two partners, so chains grow without bound
        let init = parse(&[("P", "a b"), ("Q", "a* b*")], &[("a", 12), ("b", 12)]);
        let cfg = EnumConfig {
            max_complexes: 10,
            ..Default::default()
        };
        let net = enumerate(&init, &cfg).unwrap();
        assert!(net.truncated);
        for r in &net.reactions {
            for &p in &r.products {
                assert!(p < net.complexes.len());
            }
        }
    }

    #[test]
    fn deterministic() {
        let init = parse(&[("T", "a b"), ("B", "b* a*")], &[("a", 6), ("b", 10)]);
        let a = enumerate(&init, &EnumConfig::default()).unwrap();
        let b = enumerate(&init, &EnumConfig::default()).unwrap();
        assert_eq!(a.reactions, b.reactions);
        assert_eq!(a.complexes, b.complexes);
    }
}
