//! Seeded generators for test corpora: random source-free 2-graphs and
//! cartesian products of 1-graphs.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{is_source_free, matrices_commute};
use crate::kgraph::{build_kgraph, KGraph};
use crate::skeleton::{ColorIndex, EdgeId, Skeleton};
use crate::squares::SquareTable;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random source-free 2-graph with 1 to `max_vertices` vertices (uniform)
/// and at most `max_edges` edges per color. Skeletons are drawn until the adjacency
/// matrices commute, then each set of parallel bicolored 2-paths is paired
/// up by a random bijection.
pub fn random_two_graph(rng: &mut impl Rng, max_vertices: usize, max_edges: usize) -> KGraph {
    // fix the size first so rejection does not bias towards small graphs
    let n = rng.gen_range(1..=max_vertices.min(max_edges));
    loop {
        let mut s = Skeleton::new(2).unwrap();
        for i in 0..n {
            s.add_vertex(&format!("v{i}")).unwrap();
        }
        for (c, prefix) in [(1, "r"), (2, "b")] {
            let m = rng.gen_range(n..=max_edges);
            // the first n edges cover every range so the graph is source-free
            let mut ranges: Vec<usize> = (0..n).collect();
            ranges.shuffle(rng);
            for i in 0..m {
                let r = if i < n { ranges[i] } else { rng.gen_range(0..n) };
                let src = rng.gen_range(0..n);
                s.add_edge(&format!("{prefix}{i}"), c, &format!("v{src}"), &format!("v{r}"))
                    .unwrap();
            }
        }
        let bare = KGraph::new_unchecked(s, SquareTable::new());
        if matrices_commute(&bare).is_err() {
            continue;
        }
        let (s, _) = bare.into_parts();
        let table = random_pairing(&s, rng);
        let kg = build_kgraph(s, table).expect("random pairing of a commuting skeleton is a 2-graph");
        debug_assert!(is_source_free(&kg));
        return kg;
    }
}

fn random_pairing(s: &Skeleton, rng: &mut impl Rng) -> SquareTable {
    let c1 = ColorIndex::new(1).unwrap();
    let mut by_ends: BTreeMap<_, (Vec<(EdgeId, EdgeId)>, Vec<(EdgeId, EdgeId)>)> = BTreeMap::new();
    for p in s.paths_of_length(2) {
        let (a, b) = (p[0], p[1]);
        if s.color(a) == s.color(b) {
            continue;
        }
        let slot = by_ends.entry((s.source(a), s.range(b))).or_default();
        if s.color(a) == c1 {
            slot.0.push((a, b));
        } else {
            slot.1.push((a, b));
        }
    }
    let mut table = SquareTable::new();
    for (_, (first_red, mut first_blue)) in by_ends {
        assert_eq!(first_red.len(), first_blue.len(), "matrices commute");
        first_blue.shuffle(rng);
        for (p, q) in first_red.into_iter().zip(first_blue) {
            table.insert_square(p, q).unwrap();
        }
    }
    table
}

/// `count` random 2-graphs from one seed.
pub fn two_graph_corpus(seed: u64, count: usize) -> Vec<KGraph> {
    let mut rng = rng(seed);
    (0..count).map(|_| random_two_graph(&mut rng, 4, 4)).collect()
}

/// A one-vertex 2-graph whose in-edges fall into at least two pairing
/// blocks, so it can be in-split. Red and blue loops are dealt into blocks
/// of equal red and blue size, and squares only pair 2-paths whose last
/// edges share a block.
pub fn random_blocked_loops(rng: &mut impl Rng) -> KGraph {
    let n = rng.gen_range(2..=4);
    let blocks = rng.gen_range(2..=n);
    // block of loop i, every block nonempty
    let mut owner: Vec<usize> = (0..n).map(|i| if i < blocks { i } else { rng.gen_range(0..blocks) }).collect();
    owner.shuffle(rng);
    let mut s = Skeleton::new(2).unwrap();
    s.add_vertex("v").unwrap();
    let red: Vec<EdgeId> = (0..n).map(|i| s.add_edge(&format!("r{i}"), 1, "v", "v").unwrap()).collect();
    let blue: Vec<EdgeId> = (0..n).map(|i| s.add_edge(&format!("b{i}"), 2, "v", "v").unwrap()).collect();
    let mut table = SquareTable::new();
    for t in 0..blocks {
        let members: Vec<usize> = (0..n).filter(|&i| owner[i] == t).collect();
        let mut ending_red = Vec::new();
        let mut ending_blue = Vec::new();
        for j in 0..n {
            for &i in &members {
                ending_red.push((blue[j], red[i]));
                ending_blue.push((red[j], blue[i]));
            }
        }
        ending_blue.shuffle(rng);
        for (p, q) in ending_red.into_iter().zip(ending_blue) {
            table.insert_square(p, q).unwrap();
        }
    }
    build_kgraph(s, table).expect("block-respecting pairing is a 2-graph")
}

/// A directed graph given by vertex count and `(source, range)` edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl OneGraph {
    pub fn loops(count: usize) -> Self {
        OneGraph {
            vertices: 1,
            edges: vec![(0, 0); count],
        }
    }

    /// One to two vertices, each receiving at least one edge.
    pub fn random(rng: &mut impl Rng) -> Self {
        let n = rng.gen_range(1..=2);
        let mut edges: Vec<(usize, usize)> = (0..n).map(|r| (rng.gen_range(0..n), r)).collect();
        if rng.gen_bool(0.5) {
            edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
        }
        OneGraph { vertices: n, edges }
    }
}

/// The cartesian product of `factors`: one factor per color, vertices are
/// tuples, and a color-`i` edge moves only the `i`-th coordinate. Every
/// bicolored square commutes coordinatewise.
pub fn product(factors: &[OneGraph]) -> KGraph {
    let k = factors.len();
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for f in factors {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..f.vertices).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    let name = |t: &[usize]| format!("p{}", t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("."));
    let mut s = Skeleton::new(k).unwrap();
    for t in &tuples {
        s.add_vertex(&name(t)).unwrap();
    }
    // (color slot, factor edge index, fixed tuple) for each product edge
    let mut meta: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        for (j, &(src, rng)) in f.edges.iter().enumerate() {
            for t in tuples.iter().filter(|t| t[i] == src) {
                let mut r = t.clone();
                r[i] = rng;
                s.add_edge(&format!("x{}_{}_{}", i + 1, j, name(t)), i + 1, &name(t), &name(&r))
                    .unwrap();
                meta.push((i, j, t.clone()));
            }
        }
    }
    let find = |s: &Skeleton, i: usize, j: usize, source: &[usize]| {
        s.edge_by_name(&format!("x{}_{}_{}", i + 1, j, name(source))).unwrap()
    };
    let mut table = SquareTable::new();
    for p in s.paths_of_length(2) {
        let (a, b) = (p[0], p[1]);
        let (ia, ja, ta) = &meta[a.index()];
        let (ib, jb, _) = &meta[b.index()];
        if ia == ib {
            continue;
        }
        // apply b's move first, then a's
        let c = find(&s, *ib, *jb, ta);
        let mid = s.range(c);
        let tmid = tuples.iter().find(|t| name(t) == s.vertex_name(mid)).unwrap();
        let d = find(&s, *ia, *ja, tmid);
        table.insert((a, b), (c, d));
    }
    build_kgraph(s, table).expect("products of 1-graphs are k-graphs")
}

/// Product of one-vertex 1-graphs with the given loop counts.
pub fn loop_product(counts: &[usize]) -> KGraph {
    product(&counts.iter().map(|&c| OneGraph::loops(c)).collect::<Vec<_>>())
}

/// `count` products of three random 1-graphs from one seed.
pub fn three_graph_corpus(seed: u64, count: usize) -> Vec<KGraph> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| product(&[OneGraph::random(&mut rng), OneGraph::random(&mut rng), OneGraph::random(&mut rng)]))
        .collect()
}

/// A presentation of rank 3 that passes every 2-dimensional check but has
/// two associativity routes that disagree.
///
/// Start from the product of two color-1 loops `x1, x2`, one color-2 loop
/// `y`, and a color-3 two-cycle `z0: p -> q`, `z1: q -> p`, then cross the
/// color-1/color-2 squares at `p` only. Both faces stay involutive and
/// endpoint-preserving but no longer fit together into a cube.
pub fn cube_mismatch() -> (Skeleton, SquareTable) {
    let mut s = Skeleton::new(3).unwrap();
    s.add_vertex("p").unwrap();
    s.add_vertex("q").unwrap();
    for v in ["p", "q"] {
        s.add_edge(&format!("x1{v}"), 1, v, v).unwrap();
        s.add_edge(&format!("x2{v}"), 1, v, v).unwrap();
        s.add_edge(&format!("y{v}"), 2, v, v).unwrap();
    }
    s.add_edge("z0", 3, "p", "q").unwrap();
    s.add_edge("z1", 3, "q", "p").unwrap();
    let squares: &[([&str; 2], [&str; 2])] = &[
        // crossed at p
        (["x1p", "yp"], ["yp", "x2p"]),
        (["x2p", "yp"], ["yp", "x1p"]),
        // plain at q
        (["x1q", "yq"], ["yq", "x1q"]),
        (["x2q", "yq"], ["yq", "x2q"]),
        (["x1p", "z0"], ["z0", "x1q"]),
        (["x2p", "z0"], ["z0", "x2q"]),
        (["x1q", "z1"], ["z1", "x1p"]),
        (["x2q", "z1"], ["z1", "x2p"]),
        (["yp", "z0"], ["z0", "yq"]),
        (["yq", "z1"], ["z1", "yp"]),
    ];
    let table = SquareTable::from_named_squares(&s, squares).unwrap();
    (s, table)
}
