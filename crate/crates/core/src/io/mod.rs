//! Input parsing and output writers.
//!
//! Writers work on a [`View`], a flat list of named species and reactions
//! built from either a detailed or a condensed network, so the same text
//! formats serve both.

mod crn;
mod dot;
pub mod input;
mod json;
mod sbml;

pub use crn::write_crn;
pub use dot::write_dot;
pub use input::{parse_input, InputSpec};
pub use json::{read_json_complexes, write_json, SCHEMA_VERSION};
pub use sbml::write_sbml_min;

use crate::condense::CondensedNetwork;
use crate::network::{natural_cmp, ReactionNetwork};

#[derive(Clone, Debug)]
pub struct SpeciesView {
    pub name: String,
    pub transient: bool,
    /// Resting set for detailed views with multi-member sets.
    pub cluster: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ReactionView {
    /// Species indices, sorted by species name.
    pub reactants: Vec<usize>,
    pub products: Vec<usize>,
    pub rate: f64,
}

impl ReactionView {
    pub fn units(&self) -> &'static str {
        if self.reactants.len() == 1 {
            "/s"
        } else {
            "/M/s"
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct View {
    pub species: Vec<SpeciesView>,
    pub reactions: Vec<ReactionView>,
}

impl View {
    pub fn detailed(net: &ReactionNetwork) -> View {
        let species = (0..net.complexes.len())
            .map(|i| SpeciesView {
                name: net.complexes[i].name().to_string(),
                transient: net.is_transient(i),
                cluster: net.resting_set_of(i),
            })
            .collect();
        let mut v = View {
            species,
            reactions: Vec::new(),
        };
        v.reactions = net
            .reactions
            .iter()
            .map(|r| v.reaction(&r.reactants, &r.products, r.rate))
            .collect();
        v
    }

    pub fn condensed(cn: &CondensedNetwork) -> View {
        let species = cn
            .names
            .iter()
            .enumerate()
            .map(|(k, name)| SpeciesView {
                name: name.clone(),
                transient: false,
                cluster: Some(k),
            })
            .collect();
        let mut v = View {
            species,
            reactions: Vec::new(),
        };
        v.reactions = cn
            .reactions
            .iter()
            .map(|r| v.reaction(&r.reactants, &r.products, r.rate))
            .collect();
        v
    }

    fn reaction(&self, reactants: &[usize], products: &[usize], rate: f64) -> ReactionView {
        ReactionView {
            reactants: self.sorted(reactants),
            products: self.sorted(products),
            rate,
        }
    }

    fn sorted(&self, ids: &[usize]) -> Vec<usize> {
        let mut v = ids.to_vec();
        v.sort_by(|&a, &b| natural_cmp(&self.species[a].name, &self.species[b].name));
        v
    }

    pub fn side(&self, ids: &[usize]) -> String {
        ids.iter()
            .map(|&i| self.species[i].name.as_str())
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Scientific notation with six fractional digits and a signed two-digit
/// exponent, e.g. `2.000000e+06`.
/// Non-finite values print as `inf`, `-inf` or `NaN`.
pub fn format_rate(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{x:.6e}");
    let (mantissa, exp) = s.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}
