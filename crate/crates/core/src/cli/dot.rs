use std::fmt::Write;

use crate::drawing::{CrossingKind, Drawing};

fn kind_name(k: CrossingKind) -> &'static str {
    match k {
        CrossingKind::Full => "full",
        CrossingKind::XCrossing => "x",
        CrossingKind::Other => "other",
        CrossingKind::Degenerate => "degenerate",
    }
}

/// Graphviz source: one node per vertex, one point node per crossing, and
/// each edge split into segments through its crossings.
pub fn to_dot(d: &Drawing) -> String {
    let g = d.graph();
    let mut out = String::from("graph drawing {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        writeln!(out, "  v{v} [label=\"{v}\"];").unwrap();
    }
    for (c, x) in d.crossings().iter().enumerate() {
        writeln!(
            out,
            "  c{c} [shape=point, crossing=true, edges=\"{} {}\", kind=\"{}\"];",
            x.e1,
            x.e2,
            kind_name(d.classify_crossing(c))
        )
        .unwrap();
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let mut chain = vec![format!("v{u}")];
        chain.extend(d.edge_crossings()[e].iter().map(|c| format!("c{c}")));
        chain.push(format!("v{v}"));
        let style = if d.is_crossed(e) { ", style=dashed" } else { "" };
        let weight = g.weights().map(|w| format!(", weight={}", w[e])).unwrap_or_default();
        for pair in chain.windows(2) {
            writeln!(out, "  {} -- {} [edge={e}{style}{weight}];", pair[0], pair[1]).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
