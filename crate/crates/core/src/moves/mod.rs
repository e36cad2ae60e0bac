//! The four moves: in-splitting, delay, sink deletion and reduction.
//!
//! Every move checks its preconditions, builds a fresh presentation, runs it
//! through [`build_kgraph`](crate::kgraph::build_kgraph) and returns a
//! [`MoveResult`] recording the parent of each output vertex and edge.

mod delay;
mod insplit;
mod reduce;
mod sink;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::kgraph::{build_kgraph, KGraph, ValidationReport};
use crate::skeleton::{EdgeId, Skeleton, SkeletonError, VertexId};
use crate::squares::{SquareConflict, SquareTable};

pub use delay::{delay, delay_closure, DelayClosure};
pub use insplit::{insplit, pairing_blocks, InsplitPartition, PairingBlocks};
pub use reduce::{complete_edges, is_complete_edge, reduce, CompleteEdge};
pub use sink::{delete_sink, downset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("input is not source-free: {}", format_pairs(.0))]
    NotSourceFree(Vec<(String, usize)>),
    #[error("{0} is not a sink")]
    NotASink(String),
    #[error("deleting the down-set of {0} would remove every vertex")]
    EmptyResult(String),
    #[error("edges with source {0} do not form a complete edge")]
    IncompleteOut(String),
    #[error("edges with range {0} do not form a complete edge")]
    IncompleteIn(String),
    #[error("the complete edge out of {0} is a loop")]
    LoopAtV(String),
    /// The construction could not assign a square to an output 2-path, or
    /// the output failed validation. Not expected on valid inputs.
    #[error("move produced an invalid presentation: {0}")]
    Construction(String),
}

fn format_pairs(pairs: &[(String, usize)]) -> String {
    pairs
        .iter()
        .map(|(v, c)| format!("({v}, {c})"))
        .collect::<Vec<_>>()
        .join(" ")
}

impl From<SkeletonError> for MoveError {
    fn from(e: SkeletonError) -> Self {
        MoveError::Construction(e.to_string())
    }
}

impl From<SquareConflict> for MoveError {
    fn from(e: SquareConflict) -> Self {
        MoveError::Construction(e.to_string())
    }
}

impl From<ValidationReport> for MoveError {
    fn from(r: ValidationReport) -> Self {
        MoveError::Construction(r.to_string().trim_end().to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveKind {
    Insplit { vertex: String, e1: Vec<String>, e2: Vec<String> },
    Delay { edge: String },
    DeleteSink { vertex: String },
    Reduce { vertex: String, f: String },
}

/// Where an output vertex comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexParent {
    Vertex(VertexId),
    /// The new vertex placed in the middle of a delayed edge.
    Midpoint(EdgeId),
}

/// Where an output edge comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeParent {
    Edge(EdgeId),
    /// An input path in traversal order.
    Path(Vec<EdgeId>),
    /// The connector edge of a delayed square, keyed by its representative
    /// that starts with the delayed color.
    Square(EdgeId, EdgeId),
}

/// Output of a move. `vertex_parents` and `edge_parents` are indexed by the
/// output's vertex and edge handles.
#[derive(Debug, Clone)]
pub struct MoveResult {
    pub output: KGraph,
    pub kind: MoveKind,
    pub vertex_parents: Vec<VertexParent>,
    pub edge_parents: Vec<EdgeParent>,
}

impl MoveResult {
    pub fn vertex_parent(&self, v: VertexId) -> VertexParent {
        self.vertex_parents[v.index()]
    }

    pub fn edge_parent(&self, e: EdgeId) -> &EdgeParent {
        &self.edge_parents[e.index()]
    }

    /// Parent of an output path: the concatenation of the parents of its
    /// edges. Square parents have no path image and yield `None`.
    pub fn parent_path(&self, edges: &[EdgeId]) -> Option<Vec<EdgeId>> {
        let mut out = Vec::new();
        for &e in edges {
            match self.edge_parent(e) {
                EdgeParent::Edge(p) => out.push(*p),
                EdgeParent::Path(p) => out.extend_from_slice(p),
                EdgeParent::Square(..) => return None,
            }
        }
        Some(out)
    }

    /// One line per output vertex and edge, sorted by output name.
    pub fn forward_map_text(&self, input: &KGraph) -> String {
        let src = input.skeleton();
        let out = self.output.skeleton();
        let mut text = String::new();
        let _ = writeln!(text, "# move: {}", self.kind_text());
        let mut vertices: Vec<_> = out
            .vertex_ids()
            .map(|v| {
                let parent = match self.vertex_parent(v) {
                    VertexParent::Vertex(p) => src.vertex_name(p).to_string(),
                    VertexParent::Midpoint(e) => format!("midpoint {}", src.edge_name(e)),
                };
                (out.vertex_name(v).to_string(), parent)
            })
            .collect();
        vertices.sort();
        for (name, parent) in vertices {
            let _ = writeln!(text, "vertex {name} <- {parent}");
        }
        let mut edges: Vec<_> = out
            .edge_ids()
            .map(|e| {
                let parent = match self.edge_parent(e) {
                    EdgeParent::Edge(p) => src.edge_name(*p).to_string(),
                    EdgeParent::Path(p) => format!("path {}", src.path_names(p)),
                    EdgeParent::Square(a, b) => {
                        format!("square {} {}", src.edge_name(*a), src.edge_name(*b))
                    }
                };
                (out.edge_name(e).to_string(), parent)
            })
            .collect();
        edges.sort();
        for (name, parent) in edges {
            let _ = writeln!(text, "edge {name} <- {parent}");
        }
        text
    }

    fn kind_text(&self) -> String {
        match &self.kind {
            MoveKind::Insplit { vertex, e1, e2 } => {
                format!("insplit {vertex} e1={} e2={}", e1.join(","), e2.join(","))
            }
            MoveKind::Delay { edge } => format!("delay {edge}"),
            MoveKind::DeleteSink { vertex } => format!("delete-sink {vertex}"),
            MoveKind::Reduce { vertex, f } => format!("reduce {vertex} f={f}"),
        }
    }
}

/// `base` if unused, otherwise `base` followed by as many apostrophes as
/// needed. The returned name is recorded as taken.
pub(crate) fn fresh_name(taken: &mut BTreeSet<String>, base: &str) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    taken.insert(name.clone());
    name
}

pub(crate) fn check_vertex(kg: &KGraph, v: VertexId) -> Result<(), MoveError> {
    if kg.skeleton().contains_vertex(v) {
        Ok(())
    } else {
        Err(MoveError::UnknownVertex(format!("#{}", v.index())))
    }
}

pub(crate) fn check_edge(kg: &KGraph, e: EdgeId) -> Result<(), MoveError> {
    if kg.skeleton().contains_edge(e) {
        Ok(())
    } else {
        Err(MoveError::UnknownEdge(format!("#{}", e.index())))
    }
}

pub(crate) fn require_source_free(kg: &KGraph) -> Result<(), MoveError> {
    let report = crate::analysis::sources(kg);
    if report.is_source_free() {
        return Ok(());
    }
    let s = kg.skeleton();
    Err(MoveError::NotSourceFree(
        report
            .entries
            .iter()
            .map(|&(v, c)| (s.vertex_name(v).to_string(), c.get()))
            .collect(),
    ))
}

pub(crate) fn finish(skeleton: Skeleton, table: SquareTable) -> Result<KGraph, MoveError> {
    Ok(build_kgraph(skeleton, table)?)
}
