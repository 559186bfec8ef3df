//! Detailed reaction networks over concrete complexes.

use std::collections::BTreeMap;

use crate::model::Complex;
use crate::moves::{Mechanism, MoveType};
use crate::scc;

#[derive(Clone, Debug, PartialEq)]
pub struct NetReaction {
    /// Indices into [`ReactionNetwork::complexes`], sorted.
    pub reactants: Vec<usize>,
    pub products: Vec<usize>,
    pub move_type: MoveType,
    /// Absent for hand-built networks.
    pub mechanism: Option<Mechanism>,
    /// /s for unimolecular reactions, /M/s for bimolecular ones.
    pub rate: f64,
}

impl NetReaction {
    pub fn new(
        mut reactants: Vec<usize>,
        mut products: Vec<usize>,
        move_type: MoveType,
        rate: f64,
    ) -> Self {
        reactants.sort_unstable();
        products.sort_unstable();
        NetReaction {
            reactants,
            products,
            move_type,
            mechanism: None,
            rate,
        }
    }

    pub fn is_fast(&self) -> bool {
        self.reactants.len() == 1
    }

    pub fn units(&self) -> &'static str {
        match self.reactants.len() {
            1 => "/s",
            2 => "/M/s",
            _ => "/M^n/s",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ReactionNetwork {
    pub complexes: Vec<Complex>,
    pub reactions: Vec<NetReaction>,
    /// Members of each resting set, sorted; the sets are sorted too.
    pub resting_sets: Vec<Vec<usize>>,
    pub transients: Vec<usize>,
    /// Set when enumeration stopped at a limit.
    pub truncated: bool,
    pub notices: Vec<String>,
}

impl ReactionNetwork {
    /// Builds a network from parts and classifies its complexes.
    pub fn from_parts(complexes: Vec<Complex>, reactions: Vec<NetReaction>) -> Self {
        let class = classify(complexes.len(), &reactions);
        ReactionNetwork {
            resting_sets: class.resting_sets(),
            transients: class.transients(),
            complexes,
            reactions,
            truncated: false,
            notices: Vec::new(),
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.complexes.iter().position(|c| c.name() == name)
    }

    pub fn complex(&self, name: &str) -> Option<&Complex> {
        self.complexes.iter().find(|c| c.name() == name)
    }

    pub fn is_transient(&self, i: usize) -> bool {
        self.transients.binary_search(&i).is_ok()
    }

    pub fn resting_set_of(&self, i: usize) -> Option<usize> {
        self.resting_sets.iter().position(|rs| rs.contains(&i))
    }

    /// Name of a resting set: the complex name for singletons, otherwise
    /// the member names in braces.
    pub fn resting_set_name(&self, k: usize) -> String {
        let members = &self.resting_sets[k];
        if members.len() == 1 {
            return self.complexes[members[0]].name().to_string();
        }
        let mut names: Vec<&str> = members.iter().map(|&m| self.complexes[m].name()).collect();
        names.sort_by(|a, b| natural_cmp(a, b));
        format!("{{{}}}", names.join(","))
    }

    pub fn names(&self, ids: &[usize]) -> Vec<String> {
        let mut v: Vec<String> = ids
            .iter()
            .map(|&i| self.complexes[i].name().to_string())
            .collect();
        v.sort_by(|a, b| natural_cmp(a, b));
        v
    }

    /// Total strand count per strand name; conserved by every reaction.
    pub fn strand_balance(&self, r: &NetReaction) -> bool {
        let count = |ids: &[usize]| {
            let mut m: BTreeMap<String, usize> = BTreeMap::new();
            for &i in ids {
                for (s, n) in self.complexes[i].strand_counts() {
                    *m.entry(s.to_string()).or_default() += n;
                }
            }
            m
        };
        count(&r.reactants) == count(&r.products)
    }
}

/// Orders names with embedded integers numerically ("2" < "10").
pub fn natural_cmp(a: &str, b: &str) -> std::cmp::Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => std::cmp::Ordering::Greater,
        (Err(_), Ok(_)) => std::cmp::Ordering::Less,
        _ => a.cmp(b),
    }
}

/// SCC structure of the fast (1,1) graph.
#[derive(Clone, Debug)]
pub struct Classification {
    pub sccs: Vec<Vec<usize>>,
    pub scc_of: Vec<usize>,
    pub resting: Vec<bool>,
}

impl Classification {
    pub fn resting_sets(&self) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = self
            .sccs
            .iter()
            .zip(&self.resting)
            .filter(|(_, r)| **r)
            .map(|(c, _)| c.clone())
            .collect();
        v.sort();
        v
    }

    pub fn transients(&self) -> Vec<usize> {
        (0..self.scc_of.len())
            .filter(|&i| !self.resting[self.scc_of[i]])
            .collect()
    }

    pub fn is_resting_complex(&self, i: usize) -> bool {
        self.resting[self.scc_of[i]]
    }
}

/// Computes SCCs of the (1,1) fast reactions among `n` complexes and marks
/// an SCC resting when no fast reaction leaves it.
pub fn classify(n: usize, reactions: &[NetReaction]) -> Classification {
    let mut adj = vec![Vec::new(); n];
    for r in reactions {
        if r.reactants.len() == 1 && r.products.len() == 1 {
            adj[r.reactants[0]].push(r.products[0]);
        }
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    let sccs = scc::tarjan(&adj);
    let mut scc_of = vec![0; n];
    for (k, c) in sccs.iter().enumerate() {
        for &v in c {
            scc_of[v] = k;
        }
    }
    let mut resting = vec![true; sccs.len()];
    for r in reactions.iter().filter(|r| r.is_fast()) {
        let home = scc_of[r.reactants[0]];
        let internal = r.products.len() == 1 && scc_of[r.products[0]] == home;
        if !internal {
            resting[home] = false;
        }
    }
    Classification {
        sccs,
        scc_of,
        resting,
    }
}
