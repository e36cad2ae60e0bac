//! Structural diagnostics: sinks and sources, adjacency matrices,
//! saturation of vertex sets, and well-definedness of edge weightings.

use std::collections::BTreeSet;
use std::fmt;

use crate::kgraph::KGraph;
use crate::skeleton::{ColorIndex, EdgeId, VertexId};

/// Pairs `(v, i)` such that `v` emits no edge of color `i`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SinkReport {
    pub entries: Vec<(VertexId, ColorIndex)>,
}

impl SinkReport {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.entries.iter().map(|&(v, _)| v).collect()
    }

    pub fn contains(&self, v: VertexId, color: ColorIndex) -> bool {
        self.entries.contains(&(v, color))
    }
}

/// Pairs `(v, i)` such that `v` receives no edge of color `i`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SourceReport {
    pub entries: Vec<(VertexId, ColorIndex)>,
}

impl SourceReport {
    pub fn is_source_free(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn sinks(kg: &KGraph) -> SinkReport {
    let s = kg.skeleton();
    let mut entries = Vec::new();
    for v in s.vertex_ids() {
        for c in ColorIndex::all(s.k()) {
            if !s.out_edges(v).iter().any(|&e| s.color(e) == c) {
                entries.push((v, c));
            }
        }
    }
    SinkReport { entries }
}

pub fn is_sink(kg: &KGraph, v: VertexId) -> bool {
    let s = kg.skeleton();
    ColorIndex::all(s.k()).any(|c| !s.out_edges(v).iter().any(|&e| s.color(e) == c))
}

pub fn sources(kg: &KGraph) -> SourceReport {
    let s = kg.skeleton();
    let mut entries = Vec::new();
    for v in s.vertex_ids() {
        for c in ColorIndex::all(s.k()) {
            if !s.in_edges(v).iter().any(|&e| s.color(e) == c) {
                entries.push((v, c));
            }
        }
    }
    SourceReport { entries }
}

pub fn is_source_free(kg: &KGraph) -> bool {
    sources(kg).is_source_free()
}

/// Every vertex receives finitely many edges of each color. Always true for
/// the finite skeletons this crate handles.
pub fn is_row_finite(_kg: &KGraph) -> bool {
    true
}

/// `M[u][x]` is the number of edges of one color with range `u` and source `x`.
/// Rows and columns follow vertex handle order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    pub color: ColorIndex,
    pub entries: Vec<Vec<u64>>,
}

impl AdjacencyMatrix {
    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn mul(&self, rhs: &AdjacencyMatrix) -> Vec<Vec<u64>> {
        let n = self.order();
        let mut out = vec![vec![0u64; n]; n];
        for (u, row) in out.iter_mut().enumerate() {
            for (y, &a) in self.entries[u].iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (x, cell) in row.iter_mut().enumerate() {
                    *cell += a * rhs.entries[y][x];
                }
            }
        }
        out
    }
}

impl fmt::Display for AdjacencyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

pub fn adjacency_matrix(kg: &KGraph, color: ColorIndex) -> AdjacencyMatrix {
    let s = kg.skeleton();
    let n = s.vertex_count();
    let mut entries = vec![vec![0u64; n]; n];
    for e in s.edges_of_color(color) {
        entries[s.range(e).index()][s.source(e).index()] += 1;
    }
    AdjacencyMatrix { color, entries }
}

/// First entry where `M_i M_j` and `M_j M_i` differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommutationWitness {
    pub i: ColorIndex,
    pub j: ColorIndex,
    pub u: VertexId,
    pub x: VertexId,
}

/// Checks `M_i M_j = M_j M_i` for every pair of colors `i < j`.
pub fn matrices_commute(kg: &KGraph) -> Result<(), CommutationWitness> {
    let k = kg.k();
    let mats: Vec<AdjacencyMatrix> = ColorIndex::all(k).map(|c| adjacency_matrix(kg, c)).collect();
    for i in 0..k {
        for j in i + 1..k {
            let ij = mats[i].mul(&mats[j]);
            let ji = mats[j].mul(&mats[i]);
            for u in 0..ij.len() {
                for x in 0..ij.len() {
                    if ij[u][x] != ji[u][x] {
                        return Err(CommutationWitness {
                            i: mats[i].color,
                            j: mats[j].color,
                            u: VertexId(u as u32),
                            x: VertexId(x as u32),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Smallest superset of `x` closed under heredity (sources of edges into
/// the set join it) and saturation (a vertex joins once, for some color `i`,
/// the sources of all its color-`i` in-edges are in the set).
///
/// Saturation only ranges over the generators `e_i`. A vertex receiving no
/// color-`i` edge satisfies the saturation clause vacuously.
pub fn saturation(kg: &KGraph, x: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
    let s = kg.skeleton();
    let mut set = x.clone();
    loop {
        let mut changed = false;
        for v in s.vertex_ids() {
            if set.contains(&v) {
                for &e in s.in_edges(v) {
                    changed |= set.insert(s.source(e));
                }
            } else {
                let saturated = ColorIndex::all(s.k()).any(|c| {
                    s.in_edges(v)
                        .iter()
                        .filter(|&&e| s.color(e) == c)
                        .all(|&e| set.contains(&s.source(e)))
                });
                if saturated {
                    set.insert(v);
                    changed = true;
                }
            }
        }
        if !changed {
            return set;
        }
    }
}

/// An integer vector in `Z^k` per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeWeighting {
    weights: Vec<Vec<i64>>,
}

impl EdgeWeighting {
    /// The degree map itself.
    pub fn degree(kg: &KGraph) -> Self {
        let s = kg.skeleton();
        Self::from_fn(kg, |e| {
            let mut w = vec![0; s.k()];
            w[s.color(e).slot()] = 1;
            w
        })
    }

    pub fn from_fn(kg: &KGraph, mut f: impl FnMut(EdgeId) -> Vec<i64>) -> Self {
        EdgeWeighting {
            weights: kg.skeleton().edge_ids().map(&mut f).collect(),
        }
    }

    pub fn weight(&self, e: EdgeId) -> &[i64] {
        &self.weights[e.index()]
    }

    pub fn set(&mut self, e: EdgeId, w: Vec<i64>) {
        self.weights[e.index()] = w;
    }

    fn path_weight(&self, edges: &[EdgeId]) -> Vec<i64> {
        let mut total = vec![0; self.weights.first().map_or(0, Vec::len)];
        for &e in edges {
            for (t, w) in total.iter_mut().zip(self.weight(e)) {
                *t += w;
            }
        }
        total
    }
}

/// Outcome of [`check_degree_functor`]: every square whose two sides get
/// different total weight, each listed once.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FunctorCheck {
    pub violations: Vec<([EdgeId; 2], [EdgeId; 2])>,
}

impl FunctorCheck {
    pub fn is_well_defined(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Whether summing `weights` along paths is constant on equivalence classes.
/// Classes are generated by squares, so checking each square suffices.
pub fn check_degree_functor(kg: &KGraph, weights: &EdgeWeighting) -> FunctorCheck {
    let mut check = FunctorCheck::default();
    for ((a, b), (c, d)) in kg.squares().classes() {
        if weights.path_weight(&[a, b]) != weights.path_weight(&[c, d]) {
            check.violations.push(([a, b], [c, d]));
        }
    }
    check
}
