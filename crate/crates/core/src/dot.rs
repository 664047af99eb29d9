//! Graphviz rendering of dual graphs and of covers drawn source over target.

use std::fmt::Write;

use crate::cover::AdmissibleCover;
use crate::curve::CurveGraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn write_curve(out: &mut String, c: &CurveGraph, prefix: &str, indent: &str, edge_label: impl Fn(&str) -> String) {
    for v in &c.vertices {
        let label = if v.genus > 0 { format!("{} (g={})", v.id, v.genus) } else { v.id.clone() };
        let _ = writeln!(out, "{indent}{} [label={}];", quote(&format!("{prefix}{}", v.id)), quote(&label));
    }
    for e in &c.edges {
        let _ = writeln!(
            out,
            "{indent}{} -- {} [label={}];",
            quote(&format!("{prefix}{}", e.ends[0])),
            quote(&format!("{prefix}{}", e.ends[1])),
            quote(&edge_label(&e.id))
        );
    }
    for l in &c.legs {
        let node = quote(&format!("{prefix}leg:{}", l.label));
        let _ = writeln!(out, "{indent}{node} [shape=plaintext, label={}];", quote(&l.label));
        let _ = writeln!(out, "{indent}{} -- {node} [style=dotted];", quote(&format!("{prefix}{}", l.at)));
    }
}

/// The dual graph: one node per component, one edge per node, dotted legs.
pub fn curve_to_dot(c: &CurveGraph) -> String {
    let mut out = String::from("graph curve {\n  node [shape=circle];\n");
    write_curve(&mut out, c, "", "  ", |id| id.to_string());
    out.push_str("}\n");
    out
}

/// Source and target in two clusters, with dashed arrows for the map on
/// components. Source vertices show their local degree, source edges their
/// ramification index.
pub fn cover_to_dot(cov: &AdmissibleCover) -> String {
    let mut out = String::from("graph cover {\n  newrank=true;\n  node [shape=circle];\n");
    out.push_str("  subgraph cluster_source {\n    label=\"source\";\n");
    write_curve(&mut out, &cov.source, "s:", "    ", |id| {
        cov.edge_ram.get(id).map_or(id.to_string(), |r| format!("{id} ({})", r.ram))
    });
    for (v, d) in &cov.degrees {
        let _ = writeln!(out, "    {} [xlabel={}];", quote(&format!("s:{v}")), quote(&format!("d={d}")));
    }
    out.push_str("  }\n  subgraph cluster_target {\n    label=\"target\";\n");
    write_curve(&mut out, &cov.target.curve, "t:", "    ", |id| id.to_string());
    for a in &cov.target.anchors {
        let _ = writeln!(out, "    {} [fontcolor=gray];", quote(&format!("t:leg:{a}")));
    }
    out.push_str("  }\n");
    for (v, w) in &cov.vmap {
        let _ = writeln!(
            out,
            "  {} -- {} [style=dashed, dir=forward, constraint=true];",
            quote(&format!("s:{v}")),
            quote(&format!("t:{w}"))
        );
    }
    out.push_str("}\n");
    out
}
