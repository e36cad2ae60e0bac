use std::fmt::Write as _;

use crate::kgraph::KGraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering of the skeleton. Color 1 is solid, color 2 dashed,
/// higher colors carry a `c=<i>` tag in the label.
pub fn export_dot(kg: &KGraph) -> String {
    let s = kg.skeleton();
    let mut out = String::from("digraph kgraph {\n");
    let mut vertices: Vec<&str> = s.vertex_ids().map(|v| s.vertex_name(v)).collect();
    vertices.sort_unstable();
    for v in vertices {
        let _ = writeln!(out, "  {};", quote(v));
    }
    let mut edges: Vec<_> = s.edge_ids().collect();
    edges.sort_by_key(|&e| s.edge_name(e));
    for e in edges {
        let name = s.edge_name(e);
        let attrs = match s.color(e).get() {
            1 => format!("label={}, style=solid", quote(name)),
            2 => format!("label={}, style=dashed", quote(name)),
            c => format!("label={}, style=dotted", quote(&format!("{name} c={c}"))),
        };
        let _ = writeln!(
            out,
            "  {} -> {} [{attrs}];",
            quote(s.vertex_name(s.source(e))),
            quote(s.vertex_name(s.range(e)))
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn example_b_has_four_loops() {
        let dot = export_dot(&fixtures::example_b());
        assert_eq!(dot.matches("\"v\" -> \"v\"").count(), 4);
        assert_eq!(dot.matches("style=dashed").count(), 2);
        assert_eq!(dot.matches("style=solid").count(), 2);
    }

    #[test]
    fn two_cycle_shape() {
        let dot = export_dot(&fixtures::two_cycle());
        assert_eq!(dot.lines().filter(|l| l.ends_with("\";")).count(), 2);
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert!(dot.contains("\"w\" -> \"v\" [label=\"r1\", style=solid];"));
    }

    #[test]
    fn higher_colors_are_labeled() {
        let kg = crate::corpus::loop_product(&[1, 1, 1]);
        let dot = export_dot(&kg);
        assert!(dot.contains("c=3"));
    }
}
