use std::collections::{BTreeMap, BTreeSet};

use crate::kgraph::KGraph;
use crate::skeleton::{ColorIndex, EdgeId, Skeleton, VertexId};
use crate::squares::SquareTable;

use super::{
    check_vertex, finish, fresh_name, require_source_free, EdgeParent, MoveError, MoveKind, MoveResult,
    VertexParent,
};

/// The in-edges of `vertex` grouped into the smallest sets that a legal
/// partition must keep together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingBlocks {
    pub vertex: VertexId,
    pub blocks: Vec<BTreeSet<EdgeId>>,
}

impl PairingBlocks {
    pub fn block_of(&self, e: EdgeId) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&e))
    }

    /// Blocks as sorted name lists.
    pub fn names(&self, kg: &KGraph) -> Vec<Vec<String>> {
        let s = kg.skeleton();
        let mut out: Vec<Vec<String>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut names: Vec<String> = b.iter().map(|&e| s.edge_name(e).to_string()).collect();
                names.sort();
                names
            })
            .collect();
        out.sort();
        out
    }
}

/// Two edges into `v` are adjacent when they are the last edges of the two
/// sides of some square. Blocks are the connected components.
pub fn pairing_blocks(kg: &KGraph, v: VertexId) -> Result<PairingBlocks, MoveError> {
    check_vertex(kg, v)?;
    let s = kg.skeleton();
    let incoming = s.in_edges(v);
    let mut parent: BTreeMap<EdgeId, EdgeId> = incoming.iter().map(|&e| (e, e)).collect();
    fn root(parent: &BTreeMap<EdgeId, EdgeId>, mut e: EdgeId) -> EdgeId {
        while parent[&e] != e {
            e = parent[&e];
        }
        e
    }
    for ((_, a), (_, f)) in kg.squares().iter() {
        if s.range(a) == v {
            let (ra, rf) = (root(&parent, a), root(&parent, f));
            if ra != rf {
                parent.insert(ra.max(rf), ra.min(rf));
            }
        }
    }
    let mut groups: BTreeMap<EdgeId, BTreeSet<EdgeId>> = BTreeMap::new();
    for &e in incoming {
        groups.entry(root(&parent, e)).or_default().insert(e);
    }
    Ok(PairingBlocks {
        vertex: v,
        blocks: groups.into_values().collect(),
    })
}

/// A two-way split of the edges into a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsplitPartition {
    pub e1: BTreeSet<EdgeId>,
    pub e2: BTreeSet<EdgeId>,
}

impl InsplitPartition {
    pub fn new(e1: impl IntoIterator<Item = EdgeId>, e2: impl IntoIterator<Item = EdgeId>) -> Self {
        InsplitPartition {
            e1: e1.into_iter().collect(),
            e2: e2.into_iter().collect(),
        }
    }

    pub fn from_names<S: AsRef<str>>(kg: &KGraph, e1: &[S], e2: &[S]) -> Result<Self, MoveError> {
        let s = kg.skeleton();
        let lookup = |names: &[S]| -> Result<BTreeSet<EdgeId>, MoveError> {
            names
                .iter()
                .map(|n| s.edge_by_name(n.as_ref()).ok_or_else(|| MoveError::UnknownEdge(n.as_ref().to_string())))
                .collect()
        };
        Ok(InsplitPartition {
            e1: lookup(e1)?,
            e2: lookup(e2)?,
        })
    }

    fn side(&self, e: EdgeId) -> usize {
        if self.e1.contains(&e) {
            0
        } else {
            1
        }
    }

    /// Checks the partition against `v`: both sides nonempty, disjoint,
    /// covering the in-edges, unions of pairing blocks, and each holding
    /// every color.
    pub fn check(&self, kg: &KGraph, v: VertexId) -> Result<(), MoveError> {
        let s = kg.skeleton();
        let names = |set: &BTreeSet<EdgeId>| {
            set.iter().map(|&e| s.edge_name(e)).collect::<Vec<_>>().join(",")
        };
        if self.e1.is_empty() || self.e2.is_empty() {
            return Err(MoveError::InvalidPartition("a side is empty".into()));
        }
        let both: BTreeSet<EdgeId> = self.e1.intersection(&self.e2).copied().collect();
        if !both.is_empty() {
            return Err(MoveError::InvalidPartition(format!("sides overlap in {}", names(&both))));
        }
        let incoming: BTreeSet<EdgeId> = s.in_edges(v).iter().copied().collect();
        let union: BTreeSet<EdgeId> = self.e1.union(&self.e2).copied().collect();
        if union != incoming {
            let stray: BTreeSet<EdgeId> = union.difference(&incoming).copied().collect();
            if !stray.is_empty() {
                return Err(MoveError::InvalidPartition(format!(
                    "{} do not have range {}",
                    names(&stray),
                    s.vertex_name(v)
                )));
            }
            let missing: BTreeSet<EdgeId> = incoming.difference(&union).copied().collect();
            return Err(MoveError::InvalidPartition(format!("{} are not assigned", names(&missing))));
        }
        let blocks = pairing_blocks(kg, v)?;
        for block in &blocks.blocks {
            let sides: BTreeSet<usize> = block.iter().map(|&e| self.side(e)).collect();
            if sides.len() > 1 {
                return Err(MoveError::InvalidPartition(format!(
                    "pairing condition: {} must lie on one side",
                    names(block)
                )));
            }
        }
        for (i, side) in [&self.e1, &self.e2].into_iter().enumerate() {
            for c in ColorIndex::all(s.k()) {
                if !side.iter().any(|&e| s.color(e) == c) {
                    return Err(MoveError::InvalidPartition(format!("side {} has no edge of color {c}", i + 1)));
                }
            }
        }
        Ok(())
    }
}

/// Splits `v` into `v^1` and `v^2`. Out-edges of `v` are duplicated, one
/// copy leaving each new vertex; in-edges of `v` end at the new vertex named
/// by their side of `part`.
pub fn insplit(kg: &KGraph, v: VertexId, part: &InsplitPartition) -> Result<MoveResult, MoveError> {
    check_vertex(kg, v)?;
    require_source_free(kg)?;
    part.check(kg, v)?;
    let s = kg.skeleton();

    let mut out = Skeleton::new(s.k())?;
    let mut vertex_taken: BTreeSet<String> = s.vertex_ids().map(|x| s.vertex_name(x).to_string()).collect();
    vertex_taken.remove(s.vertex_name(v));
    let mut edge_taken: BTreeSet<String> = s.edge_ids().map(|e| s.edge_name(e).to_string()).collect();

    let mut vertex_parents = Vec::new();
    let mut vmap: Vec<VertexId> = Vec::new();
    let mut split = [v; 2];
    for x in s.vertex_ids() {
        if x == v {
            for (i, slot) in split.iter_mut().enumerate() {
                let name = fresh_name(&mut vertex_taken, &format!("{}^{}", s.vertex_name(v), i + 1));
                *slot = out.add_vertex(&name)?;
                vertex_parents.push(VertexParent::Vertex(v));
            }
            vmap.push(split[0]);
        } else {
            vmap.push(out.add_vertex(s.vertex_name(x))?);
            vertex_parents.push(VertexParent::Vertex(x));
        }
    }

    let range_of = |e: EdgeId| {
        if s.range(e) == v {
            split[part.side(e)]
        } else {
            vmap[s.range(e).index()]
        }
    };
    // children[e] lists the output copies of input edge e
    let mut children: Vec<Vec<EdgeId>> = vec![Vec::new(); s.edge_count()];
    let mut edge_parents = Vec::new();
    for e in s.edge_ids() {
        if s.source(e) == v {
            edge_taken.remove(s.edge_name(e));
        }
    }
    for e in s.edge_ids() {
        if s.source(e) == v {
            for (i, &src) in split.iter().enumerate() {
                let name = fresh_name(&mut edge_taken, &format!("{}^{}", s.edge_name(e), i + 1));
                children[e.index()].push(out.add_edge_ids(&name, s.color(e), src, range_of(e))?);
                edge_parents.push(EdgeParent::Edge(e));
            }
        } else {
            let src = vmap[s.source(e).index()];
            children[e.index()].push(out.add_edge_ids(s.edge_name(e), s.color(e), src, range_of(e))?);
            edge_parents.push(EdgeParent::Edge(e));
        }
    }
    let parent_of = |x: EdgeId| match edge_parents[x.index()] {
        EdgeParent::Edge(p) => p,
        _ => unreachable!(),
    };
    let lift = |p: EdgeId, source: VertexId| {
        children[p.index()].iter().copied().find(|&c| out.source(c) == source)
    };

    let mut table = SquareTable::new();
    for path in out.paths_of_length(2) {
        let (x, y) = (path[0], path[1]);
        if out.color(x) == out.color(y) {
            continue;
        }
        let (c, d) = kg
            .squares()
            .get((parent_of(x), parent_of(y)))
            .ok_or_else(|| MoveError::Construction("input square table is not total".into()))?;
        let c1 = lift(c, out.source(x));
        let d1 = c1.and_then(|c1| lift(d, out.range(c1)));
        match (c1, d1) {
            (Some(c1), Some(d1)) => {
                table.insert((x, y), (c1, d1));
            }
            _ => {
                return Err(MoveError::Construction(format!(
                    "no lift of {} starting at {}",
                    s.path_names(&[c, d]),
                    out.vertex_name(out.source(x))
                )))
            }
        }
    }

    let output = finish(out, table)?;
    let sorted_names = |set: &BTreeSet<EdgeId>| {
        let mut n: Vec<String> = set.iter().map(|&e| s.edge_name(e).to_string()).collect();
        n.sort();
        n
    };
    Ok(MoveResult {
        output,
        kind: MoveKind::Insplit {
            vertex: s.vertex_name(v).to_string(),
            e1: sorted_names(&part.e1),
            e2: sorted_names(&part.e2),
        },
        vertex_parents,
        edge_parents,
    })
}
