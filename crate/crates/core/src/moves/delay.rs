use std::collections::{BTreeMap, BTreeSet};

use crate::kgraph::KGraph;
use crate::normal::swap_adjacent;
use crate::path::Path;
use crate::skeleton::{ColorIndex, EdgeId, Skeleton, VertexId};
use crate::squares::{SquareTable, TwoPath};

use super::{
    check_edge, finish, fresh_name, require_source_free, EdgeParent, MoveError, MoveKind, MoveResult,
    VertexParent,
};

/// Edges of the delayed color that must be subdivided together with `f`,
/// and the squares they touch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelayClosure {
    pub base_color: ColorIndex,
    pub delayed_edges: BTreeSet<EdgeId>,
    /// One entry per affected square: its representative whose first edge
    /// has the base color, mapped to the other representative.
    pub affected_squares: BTreeMap<TwoPath, TwoPath>,
}

impl DelayClosure {
    /// Number of affected squares whose other color is `color`.
    pub fn affected_of_color(&self, kg: &KGraph, color: ColorIndex) -> usize {
        self.affected_squares
            .keys()
            .filter(|(_, b)| kg.skeleton().color(*b) == color)
            .count()
    }
}

/// Grows `{f}` by linking the two base-colored edges of every square that
/// has one base-colored edge per side, until nothing changes.
pub fn delay_closure(kg: &KGraph, f: EdgeId) -> Result<DelayClosure, MoveError> {
    check_edge(kg, f)?;
    let s = kg.skeleton();
    let c = s.color(f);
    let mut delayed = BTreeSet::from([f]);
    loop {
        let mut changed = false;
        for ((g, b), (a, h)) in kg.squares().iter() {
            if s.color(g) == c && delayed.contains(&g) {
                changed |= delayed.insert(h);
            } else if s.color(b) == c && delayed.contains(&b) {
                changed |= delayed.insert(a);
            }
        }
        if !changed {
            break;
        }
    }
    let affected_squares = kg
        .squares()
        .iter()
        .filter(|&((g, _), (_, h))| s.color(g) == c && (delayed.contains(&g) || delayed.contains(&h)))
        .collect();
    Ok(DelayClosure {
        base_color: c,
        delayed_edges: delayed,
        affected_squares,
    })
}

/// Subdivides every edge of the closure of `f` through a new midpoint
/// vertex and stretches each affected square into a rectangle joined by a
/// new connector edge.
pub fn delay(kg: &KGraph, f: EdgeId) -> Result<MoveResult, MoveError> {
    check_edge(kg, f)?;
    require_source_free(kg)?;
    let closure = delay_closure(kg, f)?;
    let s = kg.skeleton();
    let delayed = &closure.delayed_edges;

    let mut out = Skeleton::new(s.k())?;
    let mut vertex_taken: BTreeSet<String> = s.vertex_ids().map(|x| s.vertex_name(x).to_string()).collect();
    let mut edge_taken: BTreeSet<String> = s
        .edge_ids()
        .filter(|e| !delayed.contains(e))
        .map(|e| s.edge_name(e).to_string())
        .collect();

    let mut vertex_parents = Vec::new();
    for x in s.vertex_ids() {
        out.add_vertex(s.vertex_name(x))?;
        vertex_parents.push(VertexParent::Vertex(x));
    }
    // input vertex handles are reused as output handles
    let mut mid: BTreeMap<EdgeId, VertexId> = BTreeMap::new();
    for &g in delayed {
        let name = fresh_name(&mut vertex_taken, &format!("v_{}", s.edge_name(g)));
        mid.insert(g, out.add_vertex(&name)?);
        vertex_parents.push(VertexParent::Midpoint(g));
    }

    let mut edge_parents = Vec::new();
    let mut kept: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    let mut halves: BTreeMap<EdgeId, (EdgeId, EdgeId)> = BTreeMap::new();
    for e in s.edge_ids() {
        if let Some(&m) = mid.get(&e) {
            let n1 = fresh_name(&mut edge_taken, &format!("{}^1", s.edge_name(e)));
            let n2 = fresh_name(&mut edge_taken, &format!("{}^2", s.edge_name(e)));
            let e1 = out.add_edge_ids(&n1, s.color(e), s.source(e), m)?;
            let e2 = out.add_edge_ids(&n2, s.color(e), m, s.range(e))?;
            halves.insert(e, (e1, e2));
            edge_parents.push(EdgeParent::Edge(e));
            edge_parents.push(EdgeParent::Edge(e));
        } else {
            kept.insert(e, out.add_edge_ids(s.edge_name(e), s.color(e), s.source(e), s.range(e))?);
            edge_parents.push(EdgeParent::Edge(e));
        }
    }
    let mut connector: BTreeMap<TwoPath, EdgeId> = BTreeMap::new();
    for (&(g, b), &(_, h)) in &closure.affected_squares {
        let name = fresh_name(&mut edge_taken, &format!("e_{}_{}", s.edge_name(g), s.edge_name(b)));
        connector.insert((g, b), out.add_edge_ids(&name, s.color(b), mid[&g], mid[&h])?);
        edge_parents.push(EdgeParent::Square(g, b));
    }

    let mut table = SquareTable::new();
    // squares away from the delayed edges carry over unchanged
    for ((a, b), (x, y)) in kg.squares().iter() {
        if [a, b, x, y].iter().all(|e| kept.contains_key(e)) {
            table.insert((kept[&a], kept[&b]), (kept[&x], kept[&y]));
        }
    }
    // each affected square splits into two
    for (&(g, b), &(a, h)) in &closure.affected_squares {
        let e = connector[&(g, b)];
        table.insert_square((halves[&g].0, e), (kept[&a], halves[&h].0))?;
        table.insert_square((halves[&g].1, kept[&b]), (e, halves[&h].1))?;
    }
    // connectors of different colors meet on the faces of a 3-cube
    for (&(g, b), &(_, h)) in &closure.affected_squares {
        for (&(h0, b2), _) in closure.affected_squares.range((h, EdgeId(0))..) {
            if h0 != h {
                break;
            }
            if s.color(b) == s.color(b2) {
                continue;
            }
            let cube = Path::new(s, vec![g, b, b2]).map_err(|e| MoveError::Construction(e.to_string()))?;
            let turned = swap_adjacent(kg, &cube, 1).map_err(|e| MoveError::Construction(e.to_string()))?;
            let (d1, d2) = (turned.edges()[1], turned.edges()[2]);
            let (_, h2) = kg
                .squares()
                .get((g, d1))
                .ok_or_else(|| MoveError::Construction("missing square in a delayed cube".into()))?;
            let lookup = |key: TwoPath| {
                connector
                    .get(&key)
                    .copied()
                    .ok_or_else(|| MoveError::Construction("cube face is not an affected square".into()))
            };
            table.insert_square((connector[&(g, b)], connector[&(h, b2)]), (lookup((g, d1))?, lookup((h2, d2))?))?;
        }
    }

    let output = finish(out, table)?;
    Ok(MoveResult {
        output,
        kind: MoveKind::Delay {
            edge: s.edge_name(f).to_string(),
        },
        vertex_parents,
        edge_parents,
    })
}
