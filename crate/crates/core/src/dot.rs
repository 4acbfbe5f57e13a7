//! Graphviz DOT text for Hasse diagrams and stratification maps.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::strata::{quotient_to_poset, Poset, Proset, StratificationMap};

fn quote(label: &str) -> String {
    let mut out = String::with_capacity(label.len() + 2);
    out.push('"');
    for c in label.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Nodes are the poset elements, edges the covering relation, drawn
/// bottom-up.
pub fn hasse_dot(poset: &Poset, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for (i, label) in poset.carrier().iter().enumerate() {
        writeln!(out, "  n{i} [label={}];", quote(label)).unwrap();
    }
    for (a, b) in poset.covers() {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of the quotient of a proset.
pub fn proset_dot(proset: &Proset, name: &str) -> String {
    hasse_dot(&quotient_to_poset(proset).0, name)
}

/// Two clusters: the quotient of the source proset and the part of the target
/// poset hit by the map, each with its covering edges, plus dashed edges
/// from each source class to its image.
pub fn stratification_dot(strat: &StratificationMap, name: &str) -> String {
    let (classes, projection) = quotient_to_poset(strat.source());
    let image: BTreeSet<usize> = strat.map().iter().copied().collect();
    let image: Vec<usize> = image.into_iter().collect();
    let target = strat.target();

    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  subgraph cluster_source {{").unwrap();
    writeln!(out, "    label=\"source\";").unwrap();
    for (i, label) in classes.carrier().iter().enumerate() {
        writeln!(out, "    s{i} [label={}];", quote(label)).unwrap();
    }
    for (a, b) in classes.covers() {
        writeln!(out, "    s{a} -> s{b};").unwrap();
    }
    writeln!(out, "  }}").unwrap();
    writeln!(out, "  subgraph cluster_target {{").unwrap();
    writeln!(out, "    label=\"target\";").unwrap();
    for &t in &image {
        writeln!(out, "    t{t} [label={}];", quote(&target.carrier()[t])).unwrap();
    }
    let lt = |a: usize, b: usize| a != b && target.leq(a, b);
    for &a in &image {
        for &b in &image {
            if lt(a, b) && !image.iter().any(|&c| lt(a, c) && lt(c, b)) {
                writeln!(out, "    t{a} -> t{b};").unwrap();
            }
        }
    }
    writeln!(out, "  }}").unwrap();
    let mut mapped = BTreeSet::new();
    for (a, &t) in strat.map().iter().enumerate() {
        if mapped.insert(projection[a]) {
            writeln!(out, "  s{} -> t{t} [style=dashed, constraint=false];", projection[a]).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
