//! JSON document. Object keys come out sorted because `serde_json::Map` is
//! ordered; arrays follow name order.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::condense::CondensedNetwork;
use crate::kernel;
use crate::model::Complex;
use crate::network::{natural_cmp, ReactionNetwork};

pub const SCHEMA_VERSION: u32 = 1;

fn complex_json(c: &Complex, transient: bool) -> Value {
    let structure: Vec<Vec<Value>> = c
        .structure()
        .iter()
        .map(|row| {
            row.iter()
                .map(|b| match b {
                    Some(l) => json!([l.strand, l.domain]),
                    None => Value::Null,
                })
                .collect()
        })
        .collect();
    json!({
        "name": c.name(),
        "kernel": c.kernel(),
        "strands": c.strands().iter().map(|s| s.name()).collect::<Vec<_>>(),
        "structure": structure,
        "transient": transient,
    })
}

fn condensed_json(cn: &CondensedNetwork, net: &ReactionNetwork) -> Value {
    let mut sets: Vec<(String, Value)> = cn
        .resting_sets
        .iter()
        .enumerate()
        .map(|(k, members)| {
            let mut pairs: Vec<(&str, f64)> = members
                .iter()
                .zip(&cn.stationary[k])
                .map(|(&m, &p)| (net.complexes[m].name(), p))
                .collect();
            pairs.sort_by(|a, b| natural_cmp(a.0, b.0));
            let doc = json!({
                "name": cn.names[k],
                "members": pairs.iter().map(|p| p.0).collect::<Vec<_>>(),
                "stationary": pairs.iter().map(|p| p.1).collect::<Vec<_>>(),
            });
            (cn.names[k].clone(), doc)
        })
        .collect();
    sets.sort_by(|a, b| natural_cmp(&a.0, &b.0));
    let sets: Vec<Value> = sets.into_iter().map(|(_, v)| v).collect();
    let mut reactions: Vec<(Vec<String>, Vec<String>, f64)> = cn
        .reactions
        .iter()
        .map(|r| (cn.fate_names(&r.reactants), cn.fate_names(&r.products), r.rate))
        .collect();
    reactions.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    json!({
        "resting_sets": sets,
        "reactions": reactions
            .into_iter()
            .map(|(a, b, k)| json!({
                "reactants": a,
                "products": b,
                "arity": [2, b.len()],
                "rate": k,
                "units": "/M/s",
            }))
            .collect::<Vec<_>>(),
    })
}

/// Serializes a network (and its condensation, if given) as pretty JSON
/// with a trailing newline.
pub fn write_json(net: &ReactionNetwork, condensed: Option<&CondensedNetwork>) -> String {
    let mut order: Vec<usize> = (0..net.complexes.len()).collect();
    order.sort_by(|&a, &b| natural_cmp(net.complexes[a].name(), net.complexes[b].name()));

    let mut domains: BTreeMap<&str, u32> = BTreeMap::new();
    let mut strands: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for c in &net.complexes {
        for s in c.strands() {
            strands
                .entry(s.name())
                .or_insert_with(|| s.domains().iter().map(|d| d.to_string()).collect());
            for d in s.domains() {
                domains.insert(d.name(), d.length());
            }
        }
    }

    let reactions: Vec<Value> = net
        .reactions
        .iter()
        .map(|r| {
            json!({
                "reactants": net.names(&r.reactants),
                "products": net.names(&r.products),
                "move_type": r.move_type.as_str(),
                "arity": [r.reactants.len(), r.products.len()],
                "rate": r.rate,
                "units": r.units(),
            })
        })
        .collect();

    let mut resting: Vec<Vec<String>> = net.resting_sets.iter().map(|s| net.names(s)).collect();
    resting.sort_by(|a, b| natural_cmp(&a[0], &b[0]));
    let condensed_value = condensed.map(|cn| condensed_json(cn, net)).unwrap_or(Value::Null);

    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "domains": domains.iter().map(|(n, l)| json!({"name": n, "length": l})).collect::<Vec<_>>(),
        "strands": strands.iter().map(|(n, d)| json!({"name": n, "domains": d})).collect::<Vec<_>>(),
        "complexes": order.iter().map(|&i| complex_json(&net.complexes[i], net.is_transient(i))).collect::<Vec<_>>(),
        "reactions": reactions,
        "resting_sets": resting,
        "transients": net.names(&net.transients),
        "truncated": net.truncated,
        "notices": net.notices,
        "condensed": condensed_value,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("json serializes");
    s.push('\n');
    s
}

/// Reads the complexes back from a document written by [`write_json`].
pub fn read_json_complexes(text: &str) -> Result<Vec<Complex>, String> {
    let doc: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let version = doc["schema_version"].as_u64().ok_or("missing schema_version")?;
    if version != u64::from(SCHEMA_VERSION) {
        return Err(format!("unsupported schema_version {version}"));
    }
    let mut lengths = BTreeMap::new();
    for d in doc["domains"].as_array().ok_or("missing domains")? {
        let name = d["name"].as_str().ok_or("domain without name")?;
        let len = d["length"].as_u64().ok_or("domain without length")?;
        lengths.insert(name.to_string(), len as u32);
    }
    doc["complexes"]
        .as_array()
        .ok_or("missing complexes")?
        .iter()
        .map(|c| {
            let name = c["name"].as_str().ok_or("complex without name")?;
            let expr = c["kernel"].as_str().ok_or("complex without kernel")?;
            let (s, t) = kernel::parse(expr, &lengths).map_err(|e| e.message)?;
            Complex::new(name, s, t).map_err(|v| v.to_string())
        })
        .collect()
}
