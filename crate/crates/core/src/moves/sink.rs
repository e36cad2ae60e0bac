use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::analysis::is_sink;
use crate::kgraph::KGraph;
use crate::skeleton::{EdgeId, Skeleton, VertexId};
use crate::squares::SquareTable;

use super::{check_vertex, finish, EdgeParent, MoveError, MoveKind, MoveResult, VertexParent};

/// `v` together with every vertex reachable from it.
pub fn downset(kg: &KGraph, v: VertexId) -> Result<BTreeSet<VertexId>, MoveError> {
    check_vertex(kg, v)?;
    let s = kg.skeleton();
    let mut seen = BTreeSet::from([v]);
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for &e in s.out_edges(x) {
            if seen.insert(s.range(e)) {
                queue.push_back(s.range(e));
            }
        }
    }
    Ok(seen)
}

/// Removes the down-set of the sink `v` and every edge ending in it.
pub fn delete_sink(kg: &KGraph, v: VertexId) -> Result<MoveResult, MoveError> {
    check_vertex(kg, v)?;
    let s = kg.skeleton();
    if !is_sink(kg, v) {
        return Err(MoveError::NotASink(s.vertex_name(v).to_string()));
    }
    let removed = downset(kg, v)?;
    if removed.len() == s.vertex_count() {
        return Err(MoveError::EmptyResult(s.vertex_name(v).to_string()));
    }

    let mut out = Skeleton::new(s.k())?;
    let mut vertex_parents = Vec::new();
    let mut vmap: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for x in s.vertex_ids().filter(|x| !removed.contains(x)) {
        vmap.insert(x, out.add_vertex(s.vertex_name(x))?);
        vertex_parents.push(VertexParent::Vertex(x));
    }
    let mut edge_parents = Vec::new();
    let mut emap: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for e in s.edge_ids().filter(|&e| !removed.contains(&s.range(e))) {
        // a surviving range forces a surviving source, since the down-set is
        // closed under following edges
        let id = out.add_edge_ids(s.edge_name(e), s.color(e), vmap[&s.source(e)], vmap[&s.range(e)])?;
        emap.insert(e, id);
        edge_parents.push(EdgeParent::Edge(e));
    }
    let mut table = SquareTable::new();
    for ((a, b), (c, d)) in kg.squares().iter() {
        if let (Some(&a), Some(&b), Some(&c), Some(&d)) = (emap.get(&a), emap.get(&b), emap.get(&c), emap.get(&d)) {
            table.insert((a, b), (c, d));
        }
    }

    let output = finish(out, table)?;
    Ok(MoveResult {
        output,
        kind: MoveKind::DeleteSink {
            vertex: s.vertex_name(v).to_string(),
        },
        vertex_parents,
        edge_parents,
    })
}
