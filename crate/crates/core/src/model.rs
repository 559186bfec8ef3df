//! Domain-level data model: domains, strands, structures and complexes.
//!
//! A complex is a circular list of strands plus a pairing table. Pairing is
//! recorded at whole-domain granularity. Complexes are always held in
//! canonical rotation so that structural equality is plain equality.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::kernel;

/// A named run of nucleotides that hybridizes as a unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Domain {
    name: String,
    length: u32,
    complement: bool,
}

impl Domain {
    pub fn new(name: impl Into<String>, length: u32, complement: bool) -> Result<Self, ModelError> {
        let name = name.into();
        if length == 0 {
            return Err(ModelError::ZeroLengthDomain(name));
        }
        if name.is_empty() || name.ends_with('*') {
            return Err(ModelError::BadDomainName(name));
        }
        Ok(Domain {
            name,
            length,
            complement,
        })
    }

    /// Base name without the complement marker.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn is_complement(&self) -> bool {
        self.complement
    }

    pub fn complement(&self) -> Domain {
        Domain {
            name: self.name.clone(),
            length: self.length,
            complement: !self.complement,
        }
    }

    pub fn pairs_with(&self, other: &Domain) -> bool {
        self.name == other.name && self.complement != other.complement
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.complement {
            write!(f, "{}*", self.name)
        } else {
            f.write_str(&self.name)
        }
    }
}

/// An oriented (5' to 3') sequence of domains.
///
/// Strands are identified by their domain sequence; the name is derived from
/// it so two strands with the same domains are the same strand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Strand {
    name: String,
    domains: Vec<Domain>,
}

impl Strand {
    pub fn new(domains: Vec<Domain>) -> Result<Self, ModelError> {
        if domains.is_empty() {
            return Err(ModelError::EmptyStrand);
        }
        let name = domains
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        Ok(Strand { name, domains })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    pub fn len(&self) -> usize {
        self.domains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }

    /// Total length in nucleotides.
    pub fn nucleotides(&self) -> u32 {
        self.domains.iter().map(Domain::length).sum()
    }
}

/// Position of a domain inside a complex: strand index, domain index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Loc {
    pub strand: usize,
    pub domain: usize,
}

impl Loc {
    pub const fn new(strand: usize, domain: usize) -> Self {
        Loc { strand, domain }
    }
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.strand, self.domain)
    }
}

/// Per-strand list of bindings. `None` marks an unpaired domain.
pub type Structure = Vec<Vec<Option<Loc>>>;

/// A rule broken by a candidate complex, with the offending positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoStrands,
    ShapeMismatch { strand: usize },
    OutOfRange { at: Loc, target: Loc },
    SelfPair { at: Loc },
    Asymmetric { at: Loc, target: Loc },
    NotComplementary { at: Loc, target: Loc },
    Disconnected { unreachable_strand: usize },
    Pseudoknot { first: (Loc, Loc), second: (Loc, Loc) },
}

impl Violation {
    /// Short rule identifier.
    pub fn rule(&self) -> &'static str {
        match self {
            Violation::NoStrands => "no-strands",
            Violation::ShapeMismatch { .. } => "shape",
            Violation::OutOfRange { .. } => "out-of-range",
            Violation::SelfPair { .. } => "self-pair",
            Violation::Asymmetric { .. } => "asymmetric",
            Violation::NotComplementary { .. } => "not-complementary",
            Violation::Disconnected { .. } => "disconnected",
            Violation::Pseudoknot { .. } => "pseudoknot",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoStrands => write!(f, "complex has no strands"),
            Violation::ShapeMismatch { strand } => {
                write!(f, "structure length does not match strand {strand}")
            }
            Violation::OutOfRange { at, target } => {
                write!(f, "binding at {at} points outside the complex to {target}")
            }
            Violation::SelfPair { at } => write!(f, "domain {at} is paired with itself"),
            Violation::Asymmetric { at, target } => {
                write!(f, "binding {at} -> {target} is not reciprocated")
            }
            Violation::NotComplementary { at, target } => {
                write!(f, "domains {at} and {target} are paired but not complementary")
            }
            Violation::Disconnected { unreachable_strand } => {
                write!(f, "strand {unreachable_strand} is not connected to strand 0")
            }
            Violation::Pseudoknot { first, second } => write!(
                f,
                "pairs {}-{} and {}-{} cross (pseudoknot)",
                first.0, first.1, second.0, second.1
            ),
        }
    }
}

/// Flat (linear) view of a strand list: domain positions numbered 0..n in
/// strand order.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    offsets: Vec<usize>,
    strand_of: Vec<usize>,
}

impl Layout {
    pub(crate) fn new(strands: &[Strand]) -> Self {
        let mut offsets = Vec::with_capacity(strands.len() + 1);
        let mut strand_of = Vec::new();
        let mut total = 0;
        for (i, s) in strands.iter().enumerate() {
            offsets.push(total);
            total += s.len();
            strand_of.extend(std::iter::repeat_n(i, s.len()));
        }
        offsets.push(total);
        Layout { offsets, strand_of }
    }

    pub(crate) fn len(&self) -> usize {
        self.strand_of.len()
    }

    pub(crate) fn flat(&self, loc: Loc) -> usize {
        self.offsets[loc.strand] + loc.domain
    }

    pub(crate) fn loc(&self, g: usize) -> Loc {
        let s = self.strand_of[g];
        Loc::new(s, g - self.offsets[s])
    }

    pub(crate) fn strand_of(&self, g: usize) -> usize {
        self.strand_of[g]
    }

    /// True when `g` and `g + 1` (cyclically) are separated by a strand break.
    pub(crate) fn nick_after(&self, g: usize) -> bool {
        let next = g + 1;
        next == self.len() || self.strand_of[next] != self.strand_of[g]
    }

    pub(crate) fn to_flat_pairs(&self, structure: &Structure) -> Vec<Option<usize>> {
        structure
            .iter()
            .flat_map(|row| row.iter().map(|b| b.map(|l| self.flat(l))))
            .collect()
    }

    pub(crate) fn to_structure(&self, strands: &[Strand], flat: &[Option<usize>]) -> Structure {
        strands
            .iter()
            .enumerate()
            .map(|(i, s)| {
                (0..s.len())
                    .map(|j| flat[self.offsets[i] + j].map(|g| self.loc(g)))
                    .collect()
            })
            .collect()
    }
}

/// Checks symmetry, complementarity, connectivity and nesting for the stored
/// strand order. Returns the first violated rule.
pub fn validate(strands: &[Strand], structure: &Structure) -> Result<(), Violation> {
    if strands.is_empty() {
        return Err(Violation::NoStrands);
    }
    if structure.len() != strands.len() {
        return Err(Violation::ShapeMismatch {
            strand: structure.len().min(strands.len()),
        });
    }
    for (i, (s, row)) in strands.iter().zip(structure).enumerate() {
        if s.len() != row.len() {
            return Err(Violation::ShapeMismatch { strand: i });
        }
    }
    let at = |i: usize, j: usize| Loc::new(i, j);
    for (i, row) in structure.iter().enumerate() {
        for (j, b) in row.iter().enumerate() {
            let Some(t) = *b else { continue };
            if t.strand >= strands.len() || t.domain >= strands[t.strand].len() {
                return Err(Violation::OutOfRange {
                    at: at(i, j),
                    target: t,
                });
            }
            if t == at(i, j) {
                return Err(Violation::SelfPair { at: t });
            }
            if structure[t.strand][t.domain] != Some(at(i, j)) {
                return Err(Violation::Asymmetric {
                    at: at(i, j),
                    target: t,
                });
            }
            if !strands[i].domains[j].pairs_with(&strands[t.strand].domains[t.domain]) {
                return Err(Violation::NotComplementary {
                    at: at(i, j),
                    target: t,
                });
            }
        }
    }
    if let Some(s) = first_unreachable_strand(strands.len(), structure) {
        return Err(Violation::Disconnected {
            unreachable_strand: s,
        });
    }
    let layout = Layout::new(strands);
    let flat = layout.to_flat_pairs(structure);
    if let Some((a, b)) = find_crossing(&flat) {
        return Err(Violation::Pseudoknot {
            first: (layout.loc(a.0), layout.loc(a.1)),
            second: (layout.loc(b.0), layout.loc(b.1)),
        });
    }
    Ok(())
}

/// Strand components of the pairing graph, each listed in stored order.
pub(crate) fn strand_components(n: usize, structure: &Structure) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = count;
        let mut stack = vec![start];
        while let Some(s) = stack.pop() {
            for t in structure[s].iter().flatten() {
                if comp[t.strand] == usize::MAX {
                    comp[t.strand] = count;
                    stack.push(t.strand);
                }
            }
        }
        count += 1;
    }
    let mut out = vec![Vec::new(); count];
    for (s, c) in comp.into_iter().enumerate() {
        out[c].push(s);
    }
    out
}

fn first_unreachable_strand(n: usize, structure: &Structure) -> Option<usize> {
    let comps = strand_components(n, structure);
    comps.get(1).map(|c| c[0])
}

/// Finds two crossing pairs in a flat pairing table, if any.
pub(crate) fn find_crossing(flat: &[Option<usize>]) -> Option<((usize, usize), (usize, usize))> {
    let mut stack: Vec<usize> = Vec::new();
    for (g, p) in flat.iter().enumerate() {
        let Some(p) = *p else { continue };
        if p > g {
            stack.push(g);
        } else {
            let top = stack.pop().expect("closing pair without opener");
            if top != p {
                // the innermost open pair closes after this one: they cross
                return Some(((p, g), (top, flat[top].unwrap())));
            }
        }
    }
    None
}

/// A connected, non-pseudoknotted multi-strand complex in canonical rotation.
///
/// Equality and hashing ignore the name.
#[derive(Clone, Debug)]
pub struct Complex {
    name: String,
    strands: Vec<Strand>,
    structure: Structure,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.strands == other.strands && self.structure == other.structure
    }
}

impl Eq for Complex {}

impl Hash for Complex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.strands.hash(state);
        self.structure.hash(state);
    }
}

impl Complex {
    /// Validates and canonicalizes.
    pub fn new(
        name: impl Into<String>,
        strands: Vec<Strand>,
        structure: Structure,
    ) -> Result<Self, Violation> {
        validate(&strands, &structure)?;
        Ok(Complex::from_valid(name.into(), strands, structure))
    }

    /// Builds a canonical complex from parts already known to be valid.
    pub(crate) fn from_valid(name: String, strands: Vec<Strand>, structure: Structure) -> Self {
        debug_assert_eq!(validate(&strands, &structure), Ok(()));
        let raw = Complex {
            name,
            strands,
            structure,
        };
        canonical_form(&raw)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn size(&self) -> usize {
        self.strands.len()
    }

    pub fn domain(&self, at: Loc) -> &Domain {
        &self.strands[at.strand].domains[at.domain]
    }

    pub fn partner(&self, at: Loc) -> Option<Loc> {
        self.structure[at.strand][at.domain]
    }

    /// Kernel notation, e.g. `a( b + ) c`.
    pub fn kernel(&self) -> String {
        kernel::format_structure(&self.strands, &self.structure)
    }

    /// Sorted list of pairs (lower location first).
    pub fn pair_list(&self) -> Vec<(Loc, Loc)> {
        let mut out = Vec::new();
        for (i, row) in self.structure.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if let Some(t) = *b {
                    let a = Loc::new(i, j);
                    if a < t {
                        out.push((a, t));
                    }
                }
            }
        }
        out
    }

    /// Strand multiset as name -> count.
    pub fn strand_counts(&self) -> BTreeMap<&str, usize> {
        let mut m = BTreeMap::new();
        for s in &self.strands {
            *m.entry(s.name()).or_insert(0) += 1;
        }
        m
    }

    pub(crate) fn layout(&self) -> Layout {
        Layout::new(&self.strands)
    }

    /// Rotates so that strand `k` comes first, without canonicalizing.
    pub fn rotated(&self, k: usize) -> Complex {
        let (strands, structure) = rotate(&self.strands, &self.structure, k);
        Complex {
            name: self.name.clone(),
            strands,
            structure,
        }
    }

    pub(crate) fn parts(&self) -> (&[Strand], &Structure) {
        (&self.strands, &self.structure)
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.name, self.kernel())
    }
}

fn rotate(strands: &[Strand], structure: &Structure, k: usize) -> (Vec<Strand>, Structure) {
    let n = strands.len();
    let remap = |l: Loc| Loc::new((l.strand + n - k) % n, l.domain);
    let strands: Vec<Strand> = (0..n).map(|i| strands[(i + k) % n].clone()).collect();
    let structure: Structure = (0..n)
        .map(|i| {
            structure[(i + k) % n]
                .iter()
                .map(|b| b.map(remap))
                .collect()
        })
        .collect();
    (strands, structure)
}

/// Returns the rotation whose strand-name sequence is lexicographically
/// smallest; ties between rotations are broken by the kernel serialization.
pub fn canonical_form(complex: &Complex) -> Complex {
    let n = complex.strands.len();
    let names: Vec<&str> = complex.strands.iter().map(Strand::name).collect();
    let names = &names;
    let name_seq = |k: usize| (0..n).map(move |i| names[(i + k) % n]);
    let mut best: Vec<usize> = vec![0];
    for k in 1..n {
        match name_seq(k).cmp(name_seq(best[0])) {
            std::cmp::Ordering::Less => best = vec![k],
            std::cmp::Ordering::Equal => best.push(k),
            std::cmp::Ordering::Greater => {}
        }
    }
    let (strands, structure) = if best.len() == 1 {
        rotate(&complex.strands, &complex.structure, best[0])
    } else {
        best.iter()
            .map(|&k| rotate(&complex.strands, &complex.structure, k))
            .min_by_key(|(s, t)| kernel::format_structure(s, t))
            .unwrap()
    };
    Complex {
        name: complex.name.clone(),
        strands,
        structure,
    }
}

/// Splits a (possibly disconnected) strand list into its connected
/// components, each returned as a canonical complex. At most two components
/// are expected after removing a single helix or exchanging pairs.
pub fn split(strands: &[Strand], structure: &Structure) -> Result<Vec<Complex>, ModelError> {
    let comps = strand_components(strands.len(), structure);
    if comps.len() > 2 {
        return Err(ModelError::TooManyComponents(comps.len()));
    }
    Ok(split_components(strands, structure, &comps))
}

pub(crate) fn split_components(
    strands: &[Strand],
    structure: &Structure,
    comps: &[Vec<usize>],
) -> Vec<Complex> {
    if comps.len() == 1 {
        return vec![Complex::from_valid(
            String::new(),
            strands.to_vec(),
            structure.clone(),
        )];
    }
    comps
        .iter()
        .map(|members| {
            let mut index = vec![usize::MAX; strands.len()];
            for (new, &old) in members.iter().enumerate() {
                index[old] = new;
            }
            let sub_strands: Vec<Strand> = members.iter().map(|&s| strands[s].clone()).collect();
            let sub_structure: Structure = members
                .iter()
                .map(|&s| {
                    structure[s]
                        .iter()
                        .map(|b| b.map(|l| Loc::new(index[l.strand], l.domain)))
                        .collect()
                })
                .collect();
            Complex::from_valid(String::new(), sub_strands, sub_structure)
        })
        .collect()
}
