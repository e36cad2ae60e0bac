use std::collections::{BTreeMap, BTreeSet};

use crate::kgraph::KGraph;
use crate::normal::normalize;
use crate::path::Path;
use crate::skeleton::{ColorIndex, EdgeId, Skeleton, VertexId};
use crate::squares::SquareTable;

use super::{check_vertex, finish, EdgeParent, MoveError, MoveKind, MoveResult, VertexParent};

/// A set of parallel edges, one per color, closed under the squares.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CompleteEdge {
    pub edges: BTreeSet<EdgeId>,
    pub source: VertexId,
    pub range: VertexId,
}

/// Whether `edges` has one edge per color, a common source and range, and
/// contains the partner edge in the same slot of every square through it.
pub fn is_complete_edge(kg: &KGraph, edges: &BTreeSet<EdgeId>) -> bool {
    let s = kg.skeleton();
    if edges.len() != s.k() || edges.iter().any(|&e| !s.contains_edge(e)) {
        return false;
    }
    let colors: BTreeSet<ColorIndex> = edges.iter().map(|&e| s.color(e)).collect();
    if colors.len() != s.k() {
        return false;
    }
    let first = *edges.iter().next().unwrap();
    if edges
        .iter()
        .any(|&e| s.source(e) != s.source(first) || s.range(e) != s.range(first))
    {
        return false;
    }
    kg.squares().iter().all(|((a, b), (c, d))| {
        (!edges.contains(&a) || edges.contains(&c)) && (!edges.contains(&b) || edges.contains(&d))
    })
}

/// All complete edges, sorted by edge handles.
pub fn complete_edges(kg: &KGraph) -> Vec<CompleteEdge> {
    let s = kg.skeleton();
    let mut parallel: BTreeMap<(VertexId, VertexId), Vec<Vec<EdgeId>>> = BTreeMap::new();
    for e in s.edge_ids() {
        parallel
            .entry((s.source(e), s.range(e)))
            .or_insert_with(|| vec![Vec::new(); s.k()])[s.color(e).slot()]
            .push(e);
    }
    let mut out = Vec::new();
    for ((source, range), by_color) in parallel {
        if by_color.iter().any(Vec::is_empty) {
            continue;
        }
        let mut choice = vec![0usize; s.k()];
        loop {
            let edges: BTreeSet<EdgeId> = choice.iter().enumerate().map(|(c, &i)| by_color[c][i]).collect();
            if is_complete_edge(kg, &edges) {
                out.push(CompleteEdge { edges, source, range });
            }
            // odometer over the per-color candidates
            let mut slot = 0;
            while slot < s.k() {
                choice[slot] += 1;
                if choice[slot] < by_color[slot].len() {
                    break;
                }
                choice[slot] = 0;
                slot += 1;
            }
            if slot == s.k() {
                break;
            }
        }
    }
    out.sort();
    out
}

/// Contracts the complete edge leaving `v` onto its range `w`: `v` and its
/// out-edges disappear and edges into `v` are redirected to `w`.
pub fn reduce(kg: &KGraph, v: VertexId) -> Result<MoveResult, MoveError> {
    check_vertex(kg, v)?;
    let s = kg.skeleton();
    let name = || s.vertex_name(v).to_string();
    let out_set: BTreeSet<EdgeId> = s.out_edges(v).iter().copied().collect();
    if !is_complete_edge(kg, &out_set) {
        return Err(MoveError::IncompleteOut(name()));
    }
    let w = s.range(*out_set.iter().next().unwrap());
    if w == v {
        return Err(MoveError::LoopAtV(name()));
    }
    let in_set: BTreeSet<EdgeId> = s.in_edges(v).iter().copied().collect();
    if !is_complete_edge(kg, &in_set) {
        return Err(MoveError::IncompleteIn(name()));
    }
    let f = *out_set.iter().min_by_key(|&&e| s.color(e)).unwrap();

    let mut out = Skeleton::new(s.k())?;
    let mut vertex_parents = Vec::new();
    let mut vmap: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for x in s.vertex_ids().filter(|&x| x != v) {
        vmap.insert(x, out.add_vertex(s.vertex_name(x))?);
        vertex_parents.push(VertexParent::Vertex(x));
    }
    vmap.insert(v, vmap[&w]);
    let mut edge_parents = Vec::new();
    let mut emap: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for e in s.edge_ids().filter(|e| !out_set.contains(e)) {
        let id = out.add_edge_ids(s.edge_name(e), s.color(e), vmap[&s.source(e)], vmap[&s.range(e)])?;
        emap.insert(e, id);
        edge_parents.push(if s.range(e) == v {
            EdgeParent::Path(vec![e, f])
        } else {
            EdgeParent::Edge(e)
        });
    }
    let inverse: BTreeMap<EdgeId, EdgeId> = emap.iter().map(|(&a, &b)| (b, a)).collect();
    let par = |x: EdgeId| -> Vec<EdgeId> {
        let e = inverse[&x];
        if s.range(e) == v {
            vec![e, f]
        } else {
            vec![e]
        }
    };
    let fc = s.color(f);

    let mut table = SquareTable::new();
    for path in out.paths_of_length(2) {
        let (x, y) = (path[0], path[1]);
        let (cx, cy) = (out.color(x), out.color(y));
        if cx == cy {
            continue;
        }
        let mut parent = par(x);
        parent.extend(par(y));
        let parent = Path::new(s, parent).map_err(|e| MoveError::Construction(e.to_string()))?;
        let padded = parent.len() - 2;
        // which of the two swapped slots is followed by f
        let layouts: &[[bool; 2]] = match padded {
            0 => &[[false, false]],
            1 => &[[true, false], [false, true]],
            _ => &[[true, true]],
        };
        let mut found = Vec::new();
        for layout in layouts {
            let mut target = Vec::new();
            for (c, pad) in [cy, cx].into_iter().zip(layout) {
                target.push(c);
                if *pad {
                    target.push(fc);
                }
            }
            let Ok(q) = normalize(kg, &parent, &target) else {
                continue;
            };
            if let Some(pair) = strip(s, q.edges(), layout, f, v) {
                if let (Some(&c), Some(&d)) = (emap.get(&pair[0]), emap.get(&pair[1])) {
                    found.push((c, d));
                }
            }
        }
        match found.as_slice() {
            [pair] => {
                table.insert((x, y), *pair);
            }
            _ => {
                return Err(MoveError::Construction(format!(
                    "{} candidate factorizations for {}",
                    found.len(),
                    out.path_names(&path)
                )))
            }
        }
    }

    let output = finish(out, table)?;
    Ok(MoveResult {
        output,
        kind: MoveKind::Reduce {
            vertex: name(),
            f: s.edge_name(f).to_string(),
        },
        vertex_parents,
        edge_parents,
    })
}

/// Removes the `f` slots described by `layout`. Succeeds only when every
/// padded slot holds `f` and the edge before it ends at `v`, while unpadded
/// edges avoid `v`.
fn strip(s: &Skeleton, edges: &[EdgeId], layout: &[bool; 2], f: EdgeId, v: VertexId) -> Option<[EdgeId; 2]> {
    let mut it = edges.iter().copied();
    let mut pair = [f; 2];
    for (slot, &pad) in layout.iter().enumerate() {
        let e = it.next()?;
        if (s.range(e) == v) != pad {
            return None;
        }
        if pad && it.next()? != f {
            return None;
        }
        pair[slot] = e;
    }
    Some(pair)
}
