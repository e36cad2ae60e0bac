//! Small named k-graphs used throughout the tests and the bundled `.kgf`
//! data files. Squares are written in traversal order: `(["f", "a"], ["b", "e"])`
//! means "f then a" is equivalent to "b then e".

use crate::kgraph::{build_kgraph, KGraph};
use crate::skeleton::Skeleton;
use crate::squares::SquareTable;

type Square = ([&'static str; 2], [&'static str; 2]);

/// Builds and validates a presentation; panics on any error since fixture
/// data is fixed.
pub fn build(
    k: usize,
    vertices: &[&str],
    edges: &[(&str, usize, &str, &str)],
    squares: &[Square],
) -> KGraph {
    let mut skeleton = Skeleton::new(k).unwrap();
    for v in vertices {
        skeleton.add_vertex(v).unwrap();
    }
    for &(name, color, s, r) in edges {
        skeleton.add_edge(name, color, s, r).unwrap();
    }
    let table = SquareTable::from_named_squares(&skeleton, squares).unwrap();
    match build_kgraph(skeleton, table) {
        Ok(kg) => kg,
        Err(report) => panic!("fixture is not a k-graph:\n{report}"),
    }
}

fn one_vertex_loops(color1: &[&'static str], color2: &[&'static str]) -> Vec<(&'static str, usize, &'static str, &'static str)> {
    color1
        .iter()
        .map(|&n| (n, 1, "v", "v"))
        .chain(color2.iter().map(|&n| (n, 2, "v", "v")))
        .collect()
}

/// One vertex, `a, b` of color 1 and `e, f` of color 2, every square a
/// plain commutation. The pairing relation links all four edges.
pub fn example_a() -> KGraph {
    build(
        2,
        &["v"],
        &one_vertex_loops(&["a", "b"], &["e", "f"]),
        &[
            (["e", "a"], ["a", "e"]),
            (["f", "a"], ["a", "f"]),
            (["e", "b"], ["b", "e"]),
            (["f", "b"], ["b", "f"]),
        ],
    )
}

/// Same skeleton as [`example_a`] with the cross squares `f a ~ b e` and
/// `e b ~ a f`; in-edges pair up as `{a, e}` and `{b, f}`.
pub fn example_b() -> KGraph {
    build(
        2,
        &["v"],
        &one_vertex_loops(&["a", "b"], &["e", "f"]),
        &[
            (["e", "a"], ["a", "e"]),
            (["f", "a"], ["b", "e"]),
            (["e", "b"], ["a", "f"]),
            (["f", "b"], ["b", "f"]),
        ],
    )
}

/// One vertex, `a..d` of color 1 and `e..h` of color 2 with sixteen squares.
pub fn example_c() -> KGraph {
    build(
        2,
        &["v"],
        &one_vertex_loops(&["a", "b", "c", "d"], &["e", "f", "g", "h"]),
        &[
            (["e", "a"], ["a", "e"]),
            (["f", "a"], ["b", "e"]),
            (["g", "a"], ["c", "e"]),
            (["h", "a"], ["d", "e"]),
            (["e", "b"], ["a", "f"]),
            (["f", "b"], ["b", "f"]),
            (["g", "b"], ["c", "f"]),
            (["h", "b"], ["d", "f"]),
            (["e", "c"], ["a", "g"]),
            (["f", "c"], ["b", "g"]),
            (["g", "c"], ["c", "g"]),
            (["h", "c"], ["d", "g"]),
            (["e", "d"], ["d", "h"]),
            (["f", "d"], ["c", "h"]),
            (["g", "d"], ["b", "h"]),
            (["h", "d"], ["a", "h"]),
        ],
    )
}

/// Two vertices `u`, `v`: loops `e` (color 1) and `a` (color 2) at `u`;
/// `f` (1) and `c` (2) from `u` to `v`; loops `g` (1) and `b` (2) at `v`.
pub fn loop_insplit() -> KGraph {
    build(
        2,
        &["u", "v"],
        &[
            ("e", 1, "u", "u"),
            ("a", 2, "u", "u"),
            ("f", 1, "u", "v"),
            ("c", 2, "u", "v"),
            ("g", 1, "v", "v"),
            ("b", 2, "v", "v"),
        ],
        &[
            (["e", "a"], ["a", "e"]),
            (["e", "c"], ["a", "f"]),
            (["c", "g"], ["f", "b"]),
            (["g", "b"], ["b", "g"]),
        ],
    )
}

/// `u -> w -> v` with red/blue loops at `u` and a red/blue pair on each arrow.
/// `v` emits nothing.
pub fn sink_chain() -> KGraph {
    build(
        2,
        &["u", "w", "v"],
        &[
            ("r0", 1, "u", "u"),
            ("b0", 2, "u", "u"),
            ("r1", 1, "u", "w"),
            ("b1", 2, "u", "w"),
            ("r2", 1, "w", "v"),
            ("b2", 2, "w", "v"),
        ],
        &[
            (["r0", "b0"], ["b0", "r0"]),
            (["r0", "b1"], ["b0", "r1"]),
            (["r1", "b2"], ["b1", "r2"]),
        ],
    )
}

/// Two vertices with a red/blue pair in each direction.
pub fn two_cycle() -> KGraph {
    build(
        2,
        &["w", "v"],
        &[
            ("r1", 1, "w", "v"),
            ("b1", 2, "w", "v"),
            ("r2", 1, "v", "w"),
            ("b2", 2, "v", "w"),
        ],
        &[(["r1", "b2"], ["b1", "r2"]), (["r2", "b1"], ["b2", "r1"])],
    )
}

/// `u -> v -> w` with red/blue loops at both ends.
pub fn reduction_chain() -> KGraph {
    build(
        2,
        &["u", "v", "w"],
        &[
            ("ru", 1, "u", "u"),
            ("bu", 2, "u", "u"),
            ("r1", 1, "u", "v"),
            ("b1", 2, "u", "v"),
            ("r2", 1, "v", "w"),
            ("b2", 2, "v", "w"),
            ("rw", 1, "w", "w"),
            ("bw", 2, "w", "w"),
        ],
        &[
            (["ru", "bu"], ["bu", "ru"]),
            (["ru", "b1"], ["bu", "r1"]),
            (["r1", "b2"], ["b1", "r2"]),
            (["r2", "bw"], ["b2", "rw"]),
            (["rw", "bw"], ["bw", "rw"]),
        ],
    )
}

fn complete_edge_skeleton() -> Vec<(&'static str, usize, &'static str, &'static str)> {
    vec![
        ("e1", 1, "v", "v"),
        ("f1", 2, "v", "v"),
        ("e2", 1, "v", "w"),
        ("f2", 2, "v", "w"),
        ("e3", 1, "w", "w"),
        ("f3", 2, "w", "w"),
    ]
}

/// Loops `e1, f1` at `v`, parallel `e2, f2` from `v` to `w`, loops `e3, f3`
/// at `w`, squares matching indices. Each `{e_i, f_i}` is a complete edge.
pub fn complete_edges_matched() -> KGraph {
    build(
        2,
        &["v", "w"],
        &complete_edge_skeleton(),
        &[
            (["e1", "f1"], ["f1", "e1"]),
            (["e1", "f2"], ["f1", "e2"]),
            (["e2", "f3"], ["f2", "e3"]),
            (["e3", "f3"], ["f3", "e3"]),
        ],
    )
}

/// Same skeleton as [`complete_edges_matched`] with crossed squares; no
/// complete edges.
pub fn complete_edges_crossed() -> KGraph {
    build(
        2,
        &["v", "w"],
        &complete_edge_skeleton(),
        &[
            (["e1", "f1"], ["f1", "e1"]),
            (["e1", "f2"], ["f2", "e3"]),
            (["e2", "f3"], ["f1", "e2"]),
            (["e3", "f3"], ["f3", "e3"]),
        ],
    )
}

/// One vertex with a color-1 loop `r` and a color-2 loop `b`.
pub fn single_loops() -> KGraph {
    build(
        2,
        &["v"],
        &[("r", 1, "v", "v"), ("b", 2, "v", "v")],
        &[(["r", "b"], ["b", "r"])],
    )
}

/// A 1-graph with one vertex and one loop.
pub fn one_loop() -> KGraph {
    build(1, &["v"], &[("x", 1, "v", "v")], &[])
}
