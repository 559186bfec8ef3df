use std::fmt::Write;

use super::View;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Bipartite digraph: boxes for species (dashed when transient), circles
/// for reactions, and one cluster per resting set.
pub fn write_dot(view: &View) -> String {
    let mut out = String::from("digraph reactions {\n  rankdir=LR;\n");
    let mut clusters: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, s) in view.species.iter().enumerate() {
        match s.cluster {
            Some(k) if !s.transient => match clusters.iter_mut().find(|(c, _)| *c == k) {
                Some((_, v)) => v.push(i),
                None => clusters.push((k, vec![i])),
            },
            _ => {
                let style = if s.transient { ", style=dashed" } else { "" };
                writeln!(out, "  {} [shape=box{style}];", quote(&s.name)).unwrap();
            }
        }
    }
    for (k, members) in &clusters {
        writeln!(out, "  subgraph cluster_{k} {{").unwrap();
        for &i in members {
            writeln!(out, "    {} [shape=box];", quote(&view.species[i].name)).unwrap();
        }
        out.push_str("  }\n");
    }
    let mut order: Vec<usize> = (0..view.reactions.len()).collect();
    let label = |r: usize| {
        let rx = &view.reactions[r];
        (view.side(&rx.reactants), view.side(&rx.products))
    };
    order.sort_by_key(|&r| label(r));
    for (n, &r) in order.iter().enumerate() {
        let rx = &view.reactions[r];
        let node = format!("r{n}");
        writeln!(out, "  {node} [shape=circle, label=\"\", width=0.15];").unwrap();
        for &a in &rx.reactants {
            writeln!(out, "  {} -> {node};", quote(&view.species[a].name)).unwrap();
        }
        for &b in &rx.products {
            writeln!(out, "  {node} -> {};", quote(&view.species[b].name)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
