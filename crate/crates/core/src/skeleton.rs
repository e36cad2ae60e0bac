//! The 1-skeleton of a k-graph: a finite k-colored directed multigraph.
//!
//! Vertices and edges are addressed by dense handles ([`VertexId`], [`EdgeId`])
//! that are only meaningful for the skeleton that issued them. Every handle
//! also carries a user-facing name, which is what the text format and the
//! move naming conventions operate on.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Add;

use thiserror::Error;

/// A color, i.e. one of the standard generators `e_i` of `N^k`. One-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorIndex(u16);

impl ColorIndex {
    /// Returns `None` for zero.
    pub fn new(value: usize) -> Option<Self> {
        if value == 0 || value > u16::MAX as usize {
            None
        } else {
            Some(ColorIndex(value as u16))
        }
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// Zero-based position of this color inside a degree vector.
    pub fn slot(self) -> usize {
        self.0 as usize - 1
    }

    /// All colors `1..=k`.
    pub fn all(k: usize) -> impl Iterator<Item = ColorIndex> {
        (1..=k).map(|c| ColorIndex(c as u16))
    }
}

impl fmt::Display for ColorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `N^k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeVector(Vec<u32>);

impl DegreeVector {
    pub fn zero(k: usize) -> Self {
        DegreeVector(vec![0; k])
    }

    /// The generator `e_c`.
    pub fn unit(k: usize, color: ColorIndex) -> Self {
        let mut counts = vec![0; k];
        counts[color.slot()] = 1;
        DegreeVector(counts)
    }

    pub fn from_counts(counts: Vec<u32>) -> Self {
        DegreeVector(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `|n|`, the sum of the entries.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add_color(&mut self, color: ColorIndex) {
        self.0[color.slot()] += 1;
    }
}

impl Add for &DegreeVector {
    type Output = DegreeVector;

    fn add(self, rhs: &DegreeVector) -> DegreeVector {
        assert_eq!(self.0.len(), rhs.0.len(), "degree vectors of different rank");
        DegreeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Handle to a vertex of a particular [`Skeleton`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub(crate) u32);

/// Handle to an edge of a particular [`Skeleton`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub(crate) u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub color: ColorIndex,
    pub source: VertexId,
    pub range: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeletonError {
    #[error("rank k must be at least 1")]
    ZeroRank,
    #[error("invalid identifier {0:?}")]
    InvalidId(String),
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdge(String),
    #[error("edge {edge:?} refers to undeclared vertex {vertex:?}")]
    UnknownVertex { edge: String, vertex: String },
    #[error("edge {edge:?} has color {color}, outside 1..={k}")]
    ColorOutOfRange { edge: String, color: usize, k: usize },
}

/// Identifiers are nonempty and drawn from `[A-Za-z0-9_.'^-]`.
pub fn is_valid_id(id: &str) -> bool {
    !id.is_empty()
        && id
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '\'' | '^' | '-'))
}

/// A finite k-colored directed multigraph.
///
/// Well-formedness (unique ids, declared endpoints, colors in range) is
/// enforced on insertion, so every value of this type is well-formed.
#[derive(Debug, Clone)]
pub struct Skeleton {
    k: usize,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
}

impl Skeleton {
    pub fn new(k: usize) -> Result<Self, SkeletonError> {
        if k == 0 {
            return Err(SkeletonError::ZeroRank);
        }
        Ok(Skeleton {
            k,
            vertices: Vec::new(),
            edges: Vec::new(),
            vertex_index: HashMap::new(),
            edge_index: HashMap::new(),
            out_edges: Vec::new(),
            in_edges: Vec::new(),
        })
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId, SkeletonError> {
        if !is_valid_id(name) {
            return Err(SkeletonError::InvalidId(name.to_string()));
        }
        if self.vertex_index.contains_key(name) {
            return Err(SkeletonError::DuplicateVertex(name.to_string()));
        }
        let id = VertexId(self.vertices.len() as u32);
        self.vertices.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        self.out_edges.push(Vec::new());
        self.in_edges.push(Vec::new());
        Ok(id)
    }

    /// Adds an edge by vertex name.
    pub fn add_edge(
        &mut self,
        name: &str,
        color: usize,
        source: &str,
        range: &str,
    ) -> Result<EdgeId, SkeletonError> {
        let lookup = |v: &str| {
            self.vertex(v).ok_or_else(|| SkeletonError::UnknownVertex {
                edge: name.to_string(),
                vertex: v.to_string(),
            })
        };
        let s = lookup(source)?;
        let r = lookup(range)?;
        let color = ColorIndex::new(color)
            .filter(|c| c.get() <= self.k)
            .ok_or(SkeletonError::ColorOutOfRange {
                edge: name.to_string(),
                color,
                k: self.k,
            })?;
        self.add_edge_ids(name, color, s, r)
    }

    /// Adds an edge between existing vertex handles.
    pub fn add_edge_ids(
        &mut self,
        name: &str,
        color: ColorIndex,
        source: VertexId,
        range: VertexId,
    ) -> Result<EdgeId, SkeletonError> {
        if !is_valid_id(name) {
            return Err(SkeletonError::InvalidId(name.to_string()));
        }
        if self.edge_index.contains_key(name) {
            return Err(SkeletonError::DuplicateEdge(name.to_string()));
        }
        if color.get() > self.k {
            return Err(SkeletonError::ColorOutOfRange {
                edge: name.to_string(),
                color: color.get(),
                k: self.k,
            });
        }
        assert!(source.index() < self.vertices.len() && range.index() < self.vertices.len());
        let id = EdgeId(self.edges.len() as u32);
        self.edges.push(Edge {
            name: name.to_string(),
            color,
            source,
            range,
        });
        self.edge_index.insert(name.to_string(), id);
        self.out_edges[source.index()].push(id);
        self.in_edges[range.index()].push(id);
        Ok(id)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.index() < self.vertices.len()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        e.index() < self.edges.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.index()].name
    }

    pub fn color(&self, e: EdgeId) -> ColorIndex {
        self.edges[e.index()].color
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].range
    }

    /// `s^{-1}(v)`, in insertion order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.index()]
    }

    /// `r^{-1}(v)`, in insertion order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.index()]
    }

    pub fn edges_of_color(&self, color: ColorIndex) -> impl Iterator<Item = EdgeId> + '_ {
        self.edge_ids().filter(move |&e| self.color(e) == color)
    }

    /// Looks up a list of edge names.
    pub fn edges_by_names<S: AsRef<str>>(&self, names: &[S]) -> Option<Vec<EdgeId>> {
        names.iter().map(|n| self.edge_by_name(n.as_ref())).collect()
    }

    /// All composable edge sequences of the given length, in traversal order.
    pub fn paths_of_length(&self, len: usize) -> Vec<Vec<EdgeId>> {
        if len == 0 {
            return Vec::new();
        }
        let mut current: Vec<Vec<EdgeId>> = self.edge_ids().map(|e| vec![e]).collect();
        for _ in 1..len {
            let mut next = Vec::new();
            for p in &current {
                let last = *p.last().unwrap();
                for &e in self.out_edges(self.range(last)) {
                    let mut q = p.clone();
                    q.push(e);
                    next.push(q);
                }
            }
            current = next;
        }
        current
    }

    /// A name-level description that ignores handle numbering: used for
    /// structural equality between skeletons built in different orders.
    pub fn canonical_records(&self) -> (usize, BTreeSet<String>, BTreeSet<(String, usize, String, String)>) {
        let vertices = self.vertices.iter().cloned().collect();
        let edges = self
            .edges
            .iter()
            .map(|e| {
                (
                    e.name.clone(),
                    e.color.get(),
                    self.vertex_name(e.source).to_string(),
                    self.vertex_name(e.range).to_string(),
                )
            })
            .collect();
        (self.k, vertices, edges)
    }

    /// Renders an edge sequence as space-separated names.
    pub fn path_names(&self, edges: &[EdgeId]) -> String {
        edges
            .iter()
            .map(|&e| self.edge_name(e))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl PartialEq for Skeleton {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_records() == other.canonical_records()
    }
}

impl Eq for Skeleton {}
