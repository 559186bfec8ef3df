//! Move functions: each takes one complex (or two) and returns every
//! reaction of its type.
//!
//! All moves work on a flat view of the complex where domain positions are
//! numbered in strand order. Because complexes are non-pseudoknotted in
//! that order, a loop can be traversed by stepping to the next position and
//! jumping across each paired position to its partner.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::KineticsError;
use crate::kinetics::{self, KineticsConfig, LoopContext};
use crate::model::{self, Complex, Domain, Layout, Loc, Strand, Structure};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MoveConfig {
    /// Helices strictly shorter than this many nucleotides open spontaneously.
    pub release_cutoff: u32,
    pub enable_remote_toehold: bool,
    pub enable_4way: bool,
}

impl Default for MoveConfig {
    fn default() -> Self {
        MoveConfig {
            release_cutoff: 8,
            enable_remote_toehold: true,
            enable_4way: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveType {
    Bind,
    Open,
    Branch3Way,
    Branch4Way,
}

impl MoveType {
    pub fn as_str(self) -> &'static str {
        match self {
            MoveType::Bind => "bind",
            MoveType::Open => "open",
            MoveType::Branch3Way => "branch3way",
            MoveType::Branch4Way => "branch4way",
        }
    }
}

impl fmt::Display for MoveType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What the move did, with the geometry the rate formulas need.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Mechanism {
    Bind21,
    Bind11 { context: LoopContext },
    Open { helix_length: u32 },
    /// `stems_crossed` counts the helices walked across between the invader
    /// and the displaced pair, including the one holding the invader; one
    /// means the template sits right next to the toehold (direct).
    ThreeWay {
        migrated: u32,
        stems_crossed: u32,
        loop_unpaired: u32,
    },
    FourWay { migrated: u32 },
}

impl Mechanism {
    pub fn move_type(&self) -> MoveType {
        match self {
            Mechanism::Bind21 | Mechanism::Bind11 { .. } => MoveType::Bind,
            Mechanism::Open { .. } => MoveType::Open,
            Mechanism::ThreeWay { .. } => MoveType::Branch3Way,
            Mechanism::FourWay { .. } => MoveType::Branch4Way,
        }
    }

    pub fn is_remote(&self) -> bool {
        matches!(self, Mechanism::ThreeWay { stems_crossed, .. } if *stems_crossed > 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Speed {
    Fast,
    Slow,
}

/// A detailed reaction between concrete complexes.
#[derive(Clone, Debug)]
pub struct Reaction {
    pub reactants: Vec<Complex>,
    pub products: Vec<Complex>,
    pub mechanism: Mechanism,
}

impl Reaction {
    fn new(mut reactants: Vec<Complex>, mut products: Vec<Complex>, mechanism: Mechanism) -> Self {
        reactants.sort_by_cached_key(Complex::kernel);
        products.sort_by_cached_key(Complex::kernel);
        Reaction {
            reactants,
            products,
            mechanism,
        }
    }

    pub fn move_type(&self) -> MoveType {
        self.mechanism.move_type()
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.reactants.len(), self.products.len())
    }

    pub fn rate_constant(&self, cfg: &KineticsConfig) -> Result<f64, KineticsError> {
        kinetics::rate_constant(&self.mechanism, cfg)
    }

    /// Ordering key: move type, reactant kernels, product kernels.
    pub fn sort_key(&self) -> (MoveType, Vec<String>, Vec<String>) {
        (
            self.move_type(),
            self.reactants.iter().map(Complex::kernel).collect(),
            self.products.iter().map(Complex::kernel).collect(),
        )
    }
}

/// Unimolecular reactions are fast; everything else is slow.
pub fn classify_speed(reaction: &Reaction) -> Speed {
    speed_of_arity(reaction.reactants.len())
}

pub fn speed_of_arity(reactants: usize) -> Speed {
    if reactants == 1 {
        Speed::Fast
    } else {
        Speed::Slow
    }
}

/// Flat working copy of a complex.
struct Flat<'a> {
    complex: &'a Complex,
    layout: Layout,
    pairs: Vec<Option<usize>>,
    domains: Vec<&'a Domain>,
}

/// Summary of one loop segment walked between two positions.
#[derive(Debug, Default)]
struct LoopScan {
    unpaired: Vec<u32>,
    stems: u32,
    nick_after_strand: Option<usize>,
}

impl<'a> Flat<'a> {
    fn new(complex: &'a Complex) -> Self {
        let layout = complex.layout();
        let pairs = layout.to_flat_pairs(complex.structure());
        let domains = complex
            .strands()
            .iter()
            .flat_map(|s| s.domains().iter())
            .collect();
        Flat {
            complex,
            layout,
            pairs,
            domains,
        }
    }

    fn len(&self) -> usize {
        self.pairs.len()
    }

    fn nick_after(&self, g: usize) -> bool {
        self.layout.nick_after(g)
    }

    /// Walks the loop from `from` (exclusive) to `to` (exclusive) moving 5'
    /// to 3', jumping across stems. `from == to` walks the whole loop.
    fn walk(&self, pairs: &[Option<usize>], from: usize, to: usize) -> LoopScan {
        let n = self.len();
        let mut scan = LoopScan::default();
        let mut cur = from;
        for _ in 0..=n {
            if self.nick_after(cur) {
                scan.nick_after_strand = Some(self.layout.strand_of(cur));
            }
            let next = (cur + 1) % n;
            if next == to {
                return scan;
            }
            match pairs[next] {
                Some(p) => {
                    scan.stems += 1;
                    cur = p;
                }
                None => {
                    scan.unpaired.push(self.domains[next].length());
                    cur = next;
                }
            }
        }
        unreachable!("loop walk did not return to its end point")
    }

    fn structure_from(&self, pairs: &[Option<usize>]) -> Structure {
        self.layout.to_structure(self.complex.strands(), pairs)
    }

    /// Builds products from an edited pairing table. Returns `None` if the
    /// edit produced an invalid structure.
    fn products(&self, pairs: &[Option<usize>]) -> Option<Vec<Complex>> {
        let strands = self.complex.strands();
        let structure = self.structure_from(pairs);
        let comps = model::strand_components(strands.len(), &structure);
        if comps.len() > 2 {
            return None;
        }
        if model::find_crossing(pairs).is_some() {
            return None;
        }
        Some(model::split_components(strands, &structure, &comps))
    }
}

fn dedupe(mut reactions: Vec<Reaction>) -> Vec<Reaction> {
    reactions.sort_by_cached_key(|r| (r.sort_key(), format!("{:?}", r.mechanism)));
    let mut seen = HashSet::new();
    reactions.retain(|r| seen.insert((r.move_type(), r.reactants.clone(), r.products.clone())));
    reactions
}

/// True if a new pair `u`-`v` (u < v) would cross an existing pair.
fn crosses(pairs: &[Option<usize>], u: usize, v: usize) -> bool {
    (u + 1..v).any(|g| matches!(pairs[g], Some(p) if p < u || p > v))
}

fn bind11_context(flat: &Flat, u: usize, v: usize) -> Option<LoopContext> {
    let pairs = &flat.pairs;
    let n = flat.len();
    // a hairpin needs a loop to turn around in
    if v == u + 1 && !flat.nick_after(u) {
        return None;
    }
    let stacked_inside = v > u + 2
        && pairs[u + 1] == Some(v - 1)
        && !flat.nick_after(u)
        && !flat.nick_after(v - 1);
    let stacked_outside = u > 0
        && v + 1 < n
        && pairs[u - 1] == Some(v + 1)
        && !flat.nick_after(u - 1)
        && !flat.nick_after(v);
    if stacked_inside || stacked_outside {
        return Some(LoopContext::Zipping {
            length: flat.domains[u].length(),
        });
    }
    let inner = flat.walk(pairs, u, v);
    let outer = flat.walk(pairs, v, u);
    let closed: Vec<&LoopScan> = [&inner, &outer]
        .into_iter()
        .filter(|s| s.nick_after_strand.is_none())
        .collect();
    let context = closed
        .into_iter()
        .map(|s| {
            let stems = s.stems + 1;
            let total: u32 = s.unpaired.iter().sum();
            match stems {
                1 => LoopContext::Hairpin { length: total },
                _ => LoopContext::Multiloop {
                    domains: s.unpaired.clone(),
                    stems,
                },
            }
        })
        .min_by(|a, b| a.effective_length().total_cmp(&b.effective_length()))?;
    match context {
        LoopContext::Hairpin { length: 0 } => None,
        c => Some(c),
    }
}

/// Intramolecular binding of two unpaired complementary domains that share a
/// loop.
pub fn bind11(c: &Complex) -> Vec<Reaction> {
    let flat = Flat::new(c);
    let n = flat.len();
    let mut out = Vec::new();
    for u in 0..n {
        if flat.pairs[u].is_some() {
            continue;
        }
        for v in u + 1..n {
            if flat.pairs[v].is_some() || !flat.domains[u].pairs_with(flat.domains[v]) {
                continue;
            }
            if crosses(&flat.pairs, u, v) {
                continue;
            }
            let Some(context) = bind11_context(&flat, u, v) else {
                continue;
            };
            let mut pairs = flat.pairs.clone();
            pairs[u] = Some(v);
            pairs[v] = Some(u);
            let products = flat.products(&pairs).expect("loop-local binding is valid");
            out.push(Reaction::new(
                vec![c.clone()],
                products,
                Mechanism::Bind11 { context },
            ));
        }
    }
    dedupe(out)
}

/// For each unpaired position, the strand after which the strand break in
/// its loop lies, if the loop is open.
fn exterior_nicks(flat: &Flat) -> Vec<Option<usize>> {
    (0..flat.len())
        .map(|g| {
            if flat.pairs[g].is_some() {
                None
            } else {
                flat.walk(&flat.pairs, g, g).nick_after_strand
            }
        })
        .collect()
}

fn rotated_parts(c: &Complex, first: usize) -> (Vec<Strand>, Structure) {
    let r = c.rotated(first);
    let (s, t) = r.parts();
    (s.to_vec(), t.clone())
}

/// Bimolecular association between an unpaired domain of `c1` and an
/// unpaired complementary domain of `c2`. Both domains must sit in an open
/// loop so the joined complex stays non-pseudoknotted.
pub fn bind21(c1: &Complex, c2: &Complex) -> Vec<Reaction> {
    let f1 = Flat::new(c1);
    let f2 = Flat::new(c2);
    let nicks1 = exterior_nicks(&f1);
    let nicks2 = exterior_nicks(&f2);
    let mut out = Vec::new();
    for (u, k1) in nicks1.iter().enumerate() {
        let Some(k1) = *k1 else { continue };
        for (v, k2) in nicks2.iter().enumerate() {
            let Some(k2) = *k2 else { continue };
            if !f1.domains[u].pairs_with(f2.domains[v]) {
                continue;
            }
            let n1 = c1.size();
            let n2 = c2.size();
            // rotate so each loop's strand break sits at the end of the list
            let first1 = (k1 + 1) % n1;
            let first2 = (k2 + 1) % n2;
            let (mut strands, mut structure) = rotated_parts(c1, first1);
            let (s2, t2) = rotated_parts(c2, first2);
            strands.extend(s2);
            structure.extend(t2.into_iter().map(|row| {
                row.into_iter()
                    .map(|b| b.map(|l| Loc::new(l.strand + n1, l.domain)))
                    .collect()
            }));
            let lu = f1.layout.loc(u);
            let lv = f2.layout.loc(v);
            let a = Loc::new((lu.strand + n1 - first1) % n1, lu.domain);
            let b = Loc::new((lv.strand + n2 - first2) % n2 + n1, lv.domain);
            structure[a.strand][a.domain] = Some(b);
            structure[b.strand][b.domain] = Some(a);
            let product = Complex::from_valid(String::new(), strands, structure);
            out.push(Reaction::new(
                vec![c1.clone(), c2.clone()],
                vec![product],
                Mechanism::Bind21,
            ));
        }
    }
    dedupe(out)
}

/// Dissociation of every maximal helix shorter than the release cutoff.
pub fn open(c: &Complex, cfg: &MoveConfig) -> Vec<Reaction> {
    let flat = Flat::new(c);
    let n = flat.len();
    let pairs = &flat.pairs;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in 0..n {
        let Some(q) = pairs[p] else { continue };
        if q < p {
            continue;
        }
        let (mut a, mut b) = (p, q);
        while a > 0 && b + 1 < n && pairs[a - 1] == Some(b + 1)
            && !flat.nick_after(a - 1)
            && !flat.nick_after(b)
        {
            a -= 1;
            b += 1;
        }
        if !seen.insert(a) {
            continue;
        }
        let outer = a;
        let (mut x, mut y) = (p, q);
        while x + 1 < y - 1 && pairs[x + 1] == Some(y - 1)
            && !flat.nick_after(x)
            && !flat.nick_after(y - 1)
        {
            x += 1;
            y -= 1;
        }
        let helix_length: u32 = (outer..=x).map(|g| flat.domains[g].length()).sum();
        if helix_length >= cfg.release_cutoff {
            continue;
        }
        let mut edited = pairs.clone();
        for g in outer..=x {
            let partner = edited[g].take().unwrap();
            edited[partner] = None;
        }
        let products = flat.products(&edited).expect("removing a helix stays valid");
        out.push(Reaction::new(
            vec![c.clone()],
            products,
            Mechanism::Open { helix_length },
        ));
    }
    dedupe(out)
}

#[derive(Clone, Copy)]
enum Direction {
    Left,
    Right,
}

/// Three-way branch migration: an unpaired domain next to a bound domain
/// takes over a complementary pairing found by walking the loop away from
/// it, crossing stems as long as no unpaired domain or strand end is met.
pub fn three_way(c: &Complex, cfg: &MoveConfig) -> Vec<Reaction> {
    let flat = Flat::new(c);
    let n = flat.len();
    let mut out = Vec::new();
    for g in 0..n {
        if flat.pairs[g].is_none() {
            continue;
        }
        if !flat.nick_after(g) && flat.pairs[g + 1].is_none() {
            three_way_search(&flat, g, g + 1, Direction::Left, cfg, &mut out);
        }
        if g > 0 && !flat.nick_after(g - 1) && flat.pairs[g - 1].is_none() {
            three_way_search(&flat, g, g - 1, Direction::Right, cfg, &mut out);
        }
    }
    dedupe(out)
}

#[allow(clippy::explicit_counter_loop)]
fn three_way_search(
    flat: &Flat,
    toehold: usize,
    invader: usize,
    dir: Direction,
    cfg: &MoveConfig,
    out: &mut Vec<Reaction>,
) {
    let n = flat.len();
    let mut pos = invader;
    let mut stems = 0u32;
    for _ in 0..=n {
        let next = match dir {
            Direction::Left => {
                if pos == 0 || flat.nick_after(pos - 1) {
                    return;
                }
                pos - 1
            }
            Direction::Right => {
                if flat.nick_after(pos) {
                    return;
                }
                pos + 1
            }
        };
        let Some(partner) = flat.pairs[next] else {
            return;
        };
        if next == toehold && stems > 0 {
            return;
        }
        let remote = stems > 1;
        if next != toehold
            && flat.domains[next].pairs_with(flat.domains[invader])
            && (cfg.enable_remote_toehold || !remote)
        {
            let mut edited = flat.pairs.clone();
            edited[partner] = None;
            edited[next] = Some(invader);
            edited[invader] = Some(next);
            if let Some(products) = flat.products(&edited) {
                out.push(Reaction::new(
                    vec![flat.complex.clone()],
                    products,
                    Mechanism::ThreeWay {
                        migrated: flat.domains[invader].length(),
                        stems_crossed: stems,
                        loop_unpaired: 0,
                    },
                ));
            }
        }
        stems += 1;
        pos = partner;
    }
}

/// Four-way branch migration at a junction of four helices: pairs A-B and
/// C-D become A-C and B-D.
pub fn four_way(c: &Complex, cfg: &MoveConfig) -> Vec<Reaction> {
    if !cfg.enable_4way {
        return Vec::new();
    }
    let flat = Flat::new(c);
    let n = flat.len();
    let pairs = &flat.pairs;
    let mut out = Vec::new();
    for g in 0..n {
        let Some(g_partner) = pairs[g] else { continue };
        if flat.nick_after(g) {
            continue;
        }
        let a = g + 1;
        let Some(b) = pairs[a] else { continue };
        if g_partner == 0 || flat.nick_after(g_partner - 1) {
            continue;
        }
        let c_pos = g_partner - 1;
        let Some(d) = pairs[c_pos] else { continue };
        if b == c_pos {
            continue;
        }
        let doms = &flat.domains;
        if !(doms[a].pairs_with(doms[c_pos]) && doms[b].pairs_with(doms[d])) {
            continue;
        }
        let mut edited = pairs.clone();
        edited[a] = Some(c_pos);
        edited[c_pos] = Some(a);
        edited[b] = Some(d);
        edited[d] = Some(b);
        if let Some(products) = flat.products(&edited) {
            out.push(Reaction::new(
                vec![c.clone()],
                products,
                Mechanism::FourWay {
                    migrated: doms[a].length(),
                },
            ));
        }
    }
    dedupe(out)
}

/// All unimolecular moves of a complex.
pub fn fast_moves(c: &Complex, cfg: &MoveConfig) -> Vec<Reaction> {
    let mut all = bind11(c);
    all.extend(open(c, cfg));
    all.extend(three_way(c, cfg));
    all.extend(four_way(c, cfg));
    all
}
