//! Graphviz export of the collapsed graph, the side graphs and the Tait
//! graphs.

use std::fmt::Write;

use crate::map;
use crate::side::{Color, SideGraph};
use crate::tait::TaitGraph;
use crate::twist::CollapsedGraph;

pub fn collapsed_to_dot(g: &CollapsedGraph) -> String {
    let mut out = String::from("graph collapsed {\n  node [shape=circle];\n");
    for (v, r) in g.vertices.iter().enumerate() {
        writeln!(out, "  v{v} [label=\"{}\"];", r.signed_weight()).unwrap();
    }
    let pairing = g.map.pairing();
    for (s, &t) in pairing.iter().enumerate() {
        if s < t {
            writeln!(out, "  v{} -- v{};", map::vertex_of(s), map::vertex_of(t)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

fn side_body(out: &mut String, g: &SideGraph) {
    let (prefix, color) = match g.color {
        Color::Green => ("g", "darkgreen"),
        Color::Red => ("r", "red"),
    };
    writeln!(out, "  subgraph cluster_{prefix} {{\n    label=\"{}\";\n    color={color};", g.color).unwrap();
    for f in &g.vertices {
        writeln!(out, "    {prefix}{f} [label=\"f{f}\", color={color}];").unwrap();
    }
    for e in &g.edges {
        writeln!(out, "    {prefix}{} -- {prefix}{} [label=\"{}\", color={color}];", e.a, e.b, e.weight).unwrap();
    }
    out.push_str("  }\n");
}

pub fn side_graphs_to_dot(green: &SideGraph, red: &SideGraph) -> String {
    let mut out = String::from("graph side {\n");
    side_body(&mut out, green);
    side_body(&mut out, red);
    out.push_str("}\n");
    out
}

pub fn tait_to_dot(t: &TaitGraph) -> String {
    let mut out = format!("graph tait{} {{\n", t.class);
    for f in &t.vertices {
        writeln!(out, "  f{f};").unwrap();
    }
    for e in &t.edges {
        let sign = if e.label > 0 { "+" } else { "-" };
        writeln!(out, "  f{} -- f{} [label=\"{sign}\"];", e.a, e.b).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::criterion::analyze;
    use crate::tait::build_tait;

    #[test]
    fn trefoil_exports() {
        let a = analyze(&catalog::trefoil()).unwrap().unwrap();
        let dot = collapsed_to_dot(&a.collapsed);
        assert!(dot.starts_with("graph collapsed {"));
        assert_eq!(dot.matches(" -- ").count(), 2);
        let dot = side_graphs_to_dot(&a.green, &a.red);
        assert_eq!(dot.matches("label=\"3\"").count(), 1);
        let (t0, _) = build_tait(&catalog::trefoil());
        assert_eq!(tait_to_dot(&t0).matches(" -- ").count(), 3);
    }
}
