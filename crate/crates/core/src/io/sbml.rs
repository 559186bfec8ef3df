//! Minimal SBML Level 3 Version 2 core model with mass-action kinetics.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::{format_rate, View};

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn stoichiometry(ids: &[usize]) -> BTreeMap<usize, u32> {
    let mut m = BTreeMap::new();
    for &i in ids {
        *m.entry(i).or_insert(0) += 1;
    }
    m
}

pub fn write_sbml_min(view: &View) -> String {
    let mut o = String::new();
    o.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    o.push_str("<sbml xmlns=\"http://www.sbml.org/sbml/level3/version2/core\" level=\"3\" version=\"2\">\n");
    o.push_str("  <model id=\"strandnet\">\n");
    o.push_str("    <listOfCompartments>\n");
    o.push_str("      <compartment id=\"solution\" spatialDimensions=\"3\" size=\"1\" constant=\"true\"/>\n");
    o.push_str("    </listOfCompartments>\n");
    o.push_str("    <listOfSpecies>\n");
    for (i, s) in view.species.iter().enumerate() {
        writeln!(
            o,
            "      <species id=\"s{i}\" name=\"{}\" compartment=\"solution\" initialConcentration=\"0\" hasOnlySubstanceUnits=\"false\" boundaryCondition=\"false\" constant=\"false\"/>",
            escape(&s.name)
        )
        .unwrap();
    }
    o.push_str("    </listOfSpecies>\n");
    o.push_str("    <listOfParameters>\n");
    for (j, r) in view.reactions.iter().enumerate() {
        writeln!(
            o,
            "      <parameter id=\"k{j}\" value=\"{}\" constant=\"true\"/>",
            format_rate(r.rate)
        )
        .unwrap();
    }
    o.push_str("    </listOfParameters>\n");
    o.push_str("    <listOfReactions>\n");
    for (j, r) in view.reactions.iter().enumerate() {
        writeln!(o, "      <reaction id=\"r{j}\" reversible=\"false\">").unwrap();
        for (tag, ids) in [("listOfReactants", &r.reactants), ("listOfProducts", &r.products)] {
            writeln!(o, "        <{tag}>").unwrap();
            for (i, n) in stoichiometry(ids) {
                writeln!(
                    o,
                    "          <speciesReference species=\"s{i}\" stoichiometry=\"{n}\" constant=\"true\"/>"
                )
                .unwrap();
            }
            writeln!(o, "        </{tag}>").unwrap();
        }
        o.push_str("        <kineticLaw>\n");
        o.push_str("          <math xmlns=\"http://www.w3.org/1998/Math/MathML\">\n");
        o.push_str("            <apply>\n              <times/>\n");
        writeln!(o, "              <ci> k{j} </ci>").unwrap();
        for &i in &r.reactants {
            writeln!(o, "              <ci> s{i} </ci>").unwrap();
        }
        o.push_str("            </apply>\n          </math>\n        </kineticLaw>\n");
        o.push_str("      </reaction>\n");
    }
    o.push_str("    </listOfReactions>\n  </model>\n</sbml>\n");
    o
}
