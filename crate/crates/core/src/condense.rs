//! Condensation of a detailed network onto resting sets.
//!
//! Every slow reaction is followed by its fast aftermath: each product
//! complex decays through transient states until it settles in resting
//! sets. A fate is the multiset of resting sets reached; a condensed
//! reaction maps reactant resting sets to one fate, and its rate is the sum
//! over detailed reactions of stationary occupancy times rate times decay
//! probability.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::{DMatrix, DVector};

use crate::error::CondenseError;
use crate::network::{self, Classification, ReactionNetwork};

/// Sorted multiset of resting-set indices.
pub type Fate = Vec<usize>;

/// Probability of each fate.
pub type FateDistribution = BTreeMap<Fate, f64>;

#[derive(Clone, Debug, PartialEq)]
pub struct CondenseConfig {
    pub residual_tol: f64,
    pub normalization_tol: f64,
}

impl Default for CondenseConfig {
    fn default() -> Self {
        CondenseConfig {
            residual_tol: 1e-9,
            normalization_tol: 1e-12,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CondensedReaction {
    /// Resting-set indices, sorted; always two.
    pub reactants: Vec<usize>,
    pub products: Fate,
    /// /M/s
    pub rate: f64,
}

#[derive(Clone, Debug)]
pub struct CondensedNetwork {
    /// Members of each resting set (complex indices).
    pub resting_sets: Vec<Vec<usize>>,
    pub names: Vec<String>,
    /// Stationary occupancy of each member, aligned with `resting_sets`.
    pub stationary: Vec<Vec<f64>>,
    /// Decay distribution of every complex of the detailed network.
    pub fates: Vec<FateDistribution>,
    pub reactions: Vec<CondensedReaction>,
}

impl CondensedNetwork {
    /// Probability that complex `x` decays into `fate`; zero if the fate is
    /// not reachable.
    pub fn decay_probability(&self, x: usize, fate: &[usize]) -> f64 {
        self.fates[x].get(fate).copied().unwrap_or(0.0)
    }

    pub fn fate_set(&self, x: usize) -> BTreeSet<Fate> {
        self.fates[x].keys().cloned().collect()
    }

    pub fn fate_names(&self, fate: &[usize]) -> Vec<String> {
        let mut v: Vec<String> = fate.iter().map(|&k| self.names[k].clone()).collect();
        v.sort_by(|a, b| network::natural_cmp(a, b));
        v
    }
}

/// Adds two multisets.
pub fn fate_sum(a: &[usize], b: &[usize]) -> Fate {
    let mut v: Fate = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v
}

/// `{a + b : a in A, b in B}`.
pub fn cartesian_sum(a: &BTreeSet<Fate>, b: &BTreeSet<Fate>) -> BTreeSet<Fate> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| fate_sum(x, y)))
        .collect()
}

/// Distribution of the sum of independent fates.
pub fn convolve(a: &FateDistribution, b: &FateDistribution) -> FateDistribution {
    let mut out = FateDistribution::new();
    for (fa, pa) in a {
        for (fb, pb) in b {
            *out.entry(fate_sum(fa, fb)).or_insert(0.0) += pa * pb;
        }
    }
    out
}

/// Stationary distribution of a continuous-time chain over `n` states with
/// `(from, to, rate)` transitions, which must form one irreducible class.
///
/// Solves the balance equations with one row replaced by normalization.
/// The generator is scaled by its largest entry, so `residual_tol` bounds
/// the residual relative to the fastest rate.
pub fn stationary_distribution(
    n: usize,
    transitions: &[(usize, usize, f64)],
    cfg: &CondenseConfig,
) -> Result<Vec<f64>, CondenseError> {
    if n == 1 {
        return Ok(vec![1.0]);
    }
    let mut t = DMatrix::<f64>::zeros(n, n);
    for &(i, j, k) in transitions {
        if i != j {
            t[(j, i)] += k;
            t[(i, i)] -= k;
        }
    }
    let scale = t.amax();
    if scale <= 0.0 || !scale.is_finite() {
        return Err(CondenseError::Numerical("resting set without transitions".into()));
    }
    t /= scale;
    let mut a = t.clone();
    for c in 0..n {
        a[(n - 1, c)] = 1.0;
    }
    let mut rhs = DVector::<f64>::zeros(n);
    rhs[n - 1] = 1.0;
    let s = a
        .lu()
        .solve(&rhs)
        .ok_or_else(|| CondenseError::Numerical("singular balance equations".into()))?;
    if s.iter().any(|&x| x < -cfg.residual_tol || !x.is_finite()) {
        return Err(CondenseError::Numerical("negative stationary probability".into()));
    }
    let s = s.map(|x| x.max(0.0));
    let s = &s / s.sum();
    let residual = (&t * &s).amax();
    if residual > cfg.residual_tol || (s.sum() - 1.0).abs() > cfg.normalization_tol {
        return Err(CondenseError::Numerical(format!(
            "stationary residual {residual:e} exceeds tolerance"
        )));
    }
    Ok(s.iter().copied().collect())
}

/// Absorption probabilities of a transient class: entry (i, j) is the
/// probability that a walk started in state i leaves through exit j.
///
/// `internal` holds `(from, to, rate)` between the `n` states, `exits`
/// holds `(from, exit, rate)` with `exit < n_exits`. Computes `N R` with
/// `N = (I - Q)^-1` by solving `(I - Q) X = R`.
pub fn absorption_matrix(
    n: usize,
    internal: &[(usize, usize, f64)],
    exits: &[(usize, usize, f64)],
    n_exits: usize,
) -> Result<DMatrix<f64>, CondenseError> {
    let (q, r) = branching_matrices(n, internal, exits, n_exits)?;
    let a = DMatrix::<f64>::identity(n, n) - q;
    a.lu()
        .solve(&r)
        .ok_or_else(|| CondenseError::Numerical("singular absorption system".into()))
}

/// Jump-chain matrices `Q` (state to state) and `R` (state to exit).
pub fn branching_matrices(
    n: usize,
    internal: &[(usize, usize, f64)],
    exits: &[(usize, usize, f64)],
    n_exits: usize,
) -> Result<(DMatrix<f64>, DMatrix<f64>), CondenseError> {
    let mut total = vec![0.0; n];
    for &(i, _, k) in internal.iter().chain(exits) {
        total[i] += k;
    }
    if let Some(i) = total.iter().position(|&t| t <= 0.0 || !t.is_finite()) {
        return Err(CondenseError::Numerical(format!(
            "state {i} of a transient class has no outgoing rate"
        )));
    }
    let mut q = DMatrix::<f64>::zeros(n, n);
    let mut r = DMatrix::<f64>::zeros(n, n_exits);
    for &(i, j, k) in internal {
        q[(i, j)] += k / total[i];
    }
    for &(i, e, k) in exits {
        r[(i, e)] += k / total[i];
    }
    Ok((q, r))
}

fn restriction(reaction: usize, reason: &str) -> CondenseError {
    CondenseError::Restriction {
        reaction,
        reason: reason.to_string(),
    }
}

/// Checks the structural conditions condensation relies on: at most two
/// reactants, and only resting complexes take part in bimolecular steps.
fn check_restrictions(net: &ReactionNetwork, class: &Classification) -> Result<(), CondenseError> {
    for (i, r) in net.reactions.iter().enumerate() {
        match r.reactants.len() {
            0 => return Err(restriction(i, "without reactants")),
            1 => {}
            2 => {
                if r.reactants.iter().any(|&a| !class.is_resting_complex(a)) {
                    return Err(restriction(i, "bimolecular with a transient reactant"));
                }
            }
            _ => return Err(restriction(i, "of order higher than two")),
        }
        if r.rate < 0.0 || !r.rate.is_finite() {
            return Err(restriction(i, "given a negative or non-finite rate"));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq)]
enum Mark {
    Todo,
    Active,
    Done,
}

struct FateSolver<'a> {
    net: &'a ReactionNetwork,
    class: &'a Classification,
    /// Resting-set index of each resting SCC.
    set_of_scc: Vec<Option<usize>>,
    /// Fast reactions by reactant.
    fast_by_reactant: Vec<Vec<usize>>,
    mark: Vec<Mark>,
    fates: Vec<FateDistribution>,
}

impl<'a> FateSolver<'a> {
    fn solve_scc(&mut self, s: usize) -> Result<(), CondenseError> {
        match self.mark[s] {
            Mark::Done => return Ok(()),
            Mark::Active => unreachable!("cycles are caught before recursing"),
            Mark::Todo => {}
        }
        self.mark[s] = Mark::Active;
        let members = self.class.sccs[s].clone();
        if let Some(k) = self.set_of_scc[s] {
            for &x in &members {
                self.fates[x] = FateDistribution::from([(vec![k], 1.0)]);
            }
            self.mark[s] = Mark::Done;
            return Ok(());
        }

        let local: BTreeMap<usize, usize> =
            members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut internal = Vec::new();
        let mut exits = Vec::new();
        let mut exit_reactions = Vec::new();
        let net = self.net;
        for &x in &members {
            for ri in self.fast_by_reactant[x].clone() {
                let r = &net.reactions[ri];
                let i = local[&x];
                if let [p] = r.products[..] {
                    if let Some(&j) = local.get(&p) {
                        internal.push((i, j, r.rate));
                        continue;
                    }
                }
                for &p in &r.products {
                    let ps = self.class.scc_of[p];
                    if self.mark[ps] == Mark::Active {
                        return Err(restriction(
                            ri,
                            "part of a fast cycle through a reaction that changes the number of complexes",
                        ));
                    }
                    self.solve_scc(ps)?;
                }
                exits.push((i, exit_reactions.len(), r.rate));
                exit_reactions.push(ri);
            }
        }

        let b = absorption_matrix(members.len(), &internal, &exits, exit_reactions.len())?;
        let exit_dists: Vec<FateDistribution> = exit_reactions
            .iter()
            .map(|&ri| self.product_distribution(&self.net.reactions[ri].products))
            .collect();
        for (i, &x) in members.iter().enumerate() {
            let mut d = FateDistribution::new();
            for (j, ed) in exit_dists.iter().enumerate() {
                for (f, p) in ed {
                    *d.entry(f.clone()).or_insert(0.0) += b[(i, j)] * p;
                }
            }
            self.fates[x] = d;
        }
        self.mark[s] = Mark::Done;
        Ok(())
    }

    fn product_distribution(&self, products: &[usize]) -> FateDistribution {
        products.iter().fold(
            FateDistribution::from([(Vec::new(), 1.0)]),
            |acc, &p| convolve(&acc, &self.fates[p]),
        )
    }
}

fn solve_fates(
    net: &ReactionNetwork,
    class: &Classification,
    resting_sets: &[Vec<usize>],
) -> Result<Vec<FateDistribution>, CondenseError> {
    let n = net.complexes.len();
    let mut set_of_scc = vec![None; class.sccs.len()];
    for (k, rs) in resting_sets.iter().enumerate() {
        set_of_scc[class.scc_of[rs[0]]] = Some(k);
    }
    let mut fast_by_reactant = vec![Vec::new(); n];
    for (i, r) in net.reactions.iter().enumerate() {
        if r.is_fast() {
            fast_by_reactant[r.reactants[0]].push(i);
        }
    }
    let mut solver = FateSolver {
        net,
        class,
        set_of_scc,
        fast_by_reactant,
        mark: vec![Mark::Todo; class.sccs.len()],
        fates: vec![FateDistribution::new(); n],
    };
    for s in 0..class.sccs.len() {
        solver.solve_scc(s)?;
    }
    Ok(solver.fates)
}

/// The set of fates of every complex.
pub fn compute_fates(net: &ReactionNetwork) -> Result<Vec<BTreeSet<Fate>>, CondenseError> {
    let class = network::classify(net.complexes.len(), &net.reactions);
    check_restrictions(net, &class)?;
    let dists = solve_fates(net, &class, &class.resting_sets())?;
    Ok(dists
        .into_iter()
        .map(|d| d.into_keys().collect())
        .collect())
}

/// Condenses a detailed network onto its resting sets.
pub fn condense(net: &ReactionNetwork) -> Result<CondensedNetwork, CondenseError> {
    condense_with(net, &CondenseConfig::default())
}

pub fn condense_with(
    net: &ReactionNetwork,
    cfg: &CondenseConfig,
) -> Result<CondensedNetwork, CondenseError> {
    let n = net.complexes.len();
    let class = network::classify(n, &net.reactions);
    check_restrictions(net, &class)?;
    let resting_sets = class.resting_sets();

    let mut set_of = vec![usize::MAX; n];
    let mut occupancy = vec![0.0; n];
    let mut stationary = Vec::with_capacity(resting_sets.len());
    for (k, members) in resting_sets.iter().enumerate() {
        let local: BTreeMap<usize, usize> =
            members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let transitions: Vec<(usize, usize, f64)> = net
            .reactions
            .iter()
            .filter(|r| r.reactants.len() == 1 && r.products.len() == 1)
            .filter_map(|r| {
                let i = local.get(&r.reactants[0])?;
                let j = local.get(&r.products[0])?;
                Some((*i, *j, r.rate))
            })
            .collect();
        let s = stationary_distribution(members.len(), &transitions, cfg)?;
        for (&x, &p) in members.iter().zip(&s) {
            set_of[x] = k;
            occupancy[x] = p;
        }
        stationary.push(s);
    }

    let fates = solve_fates(net, &class, &resting_sets)?;

    let mut merged: BTreeMap<(Vec<usize>, Fate), f64> = BTreeMap::new();
    for r in net.reactions.iter().filter(|r| r.reactants.len() == 2) {
        let mut reactants: Vec<usize> = r.reactants.iter().map(|&a| set_of[a]).collect();
        reactants.sort_unstable();
        let weight = occupancy[r.reactants[0]] * occupancy[r.reactants[1]] * r.rate;
        let outcome = r.products.iter().fold(
            FateDistribution::from([(Vec::new(), 1.0)]),
            |acc, &p| convolve(&acc, &fates[p]),
        );
        for (fate, p) in outcome {
            *merged.entry((reactants.clone(), fate)).or_insert(0.0) += weight * p;
        }
    }
    if let Some(((reactants, _), rate)) = merged.iter().find(|(_, r)| !r.is_finite()) {
        return Err(CondenseError::Numerical(format!(
            "condensed rate for resting sets {reactants:?} is {rate}"
        )));
    }
    let reactions = merged
        .into_iter()
        .map(|((reactants, products), rate)| CondensedReaction {
            reactants,
            products,
            rate,
        })
        .collect();

    let names = (0..resting_sets.len())
        .map(|k| {
            let members = &resting_sets[k];
            if members.len() == 1 {
                return net.complexes[members[0]].name().to_string();
            }
            let mut names: Vec<&str> = members.iter().map(|&m| net.complexes[m].name()).collect();
            names.sort_by(|a, b| network::natural_cmp(a, b));
            format!("{{{}}}", names.join(","))
        })
        .collect();

    Ok(CondensedNetwork {
        resting_sets,
        names,
        stationary,
        fates,
        reactions,
    })
}
