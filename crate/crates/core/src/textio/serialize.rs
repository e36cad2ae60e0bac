use std::fmt::Write as _;

use crate::kgraph::KGraph;

/// Comment block emitted after the header line.
pub const CONVENTION_COMMENT: &str = "\
# paths are written in traversal order, source first.
# `square a b = c d` means: a then b equals c then d.
# in composition (right-to-left) notation this is `b a ~ d c`.
";

/// Canonical text: vertices, edges and squares, each sorted by name. Each
/// square appears once, written from its lexicographically smaller side.
pub fn serialize(kg: &KGraph) -> String {
    let s = kg.skeleton();
    let mut out = String::new();
    out.push_str("kgf 1\n");
    out.push_str(CONVENTION_COMMENT);
    let _ = writeln!(out, "k {}", s.k());

    let mut vertices: Vec<&str> = s.vertex_ids().map(|v| s.vertex_name(v)).collect();
    vertices.sort_unstable();
    for v in vertices {
        let _ = writeln!(out, "vertex {v}");
    }

    let mut edges: Vec<_> = s
        .edge_ids()
        .map(|e| (s.edge_name(e), s.color(e), s.vertex_name(s.source(e)), s.vertex_name(s.range(e))))
        .collect();
    edges.sort_unstable();
    for (name, color, source, range) in edges {
        let _ = writeln!(out, "edge {name} {color} {source} -> {range}");
    }

    let mut squares: Vec<([String; 2], [String; 2])> = kg
        .named_squares()
        .into_iter()
        .filter(|(p, q)| p < q)
        .collect();
    squares.sort();
    for ([a, b], [c, d]) in squares {
        let _ = writeln!(out, "square {a} {b} = {c} {d}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::textio::parse_kgraph;

    #[test]
    fn round_trip_example_b() {
        let kg = fixtures::example_b();
        let text = serialize(&kg);
        let back = parse_kgraph(&text).unwrap();
        assert_eq!(back, kg);
        assert_eq!(serialize(&back), text);
    }

    #[test]
    fn round_trip_two_cycle() {
        let kg = fixtures::two_cycle();
        let text = serialize(&kg);
        assert!(text.starts_with("kgf 1\n"));
        assert!(text.contains("edge r1 1 w -> v\n"));
        assert!(text.contains("square b1 r2 = r1 b2\n"));
        assert_eq!(parse_kgraph(&text).unwrap(), kg);
    }
}
