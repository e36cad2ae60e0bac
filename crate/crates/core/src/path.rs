use std::fmt;

use thiserror::Error;

use crate::skeleton::{ColorIndex, DegreeVector, EdgeId, Skeleton, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("a path needs at least one edge")]
    Empty,
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("edges at positions {0} and {} are not composable", .0 + 1)]
    NotComposable(usize),
}

/// A composable edge sequence, stored in traversal order (first edge first).
///
/// A path written right-to-left as `λ_n ⋯ λ_1` in composition notation is the
/// traversal sequence `[λ_1, …, λ_n]` here. Color order, degree and endpoints
/// are cached on construction; equality and ordering only look at the edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    edges: Vec<EdgeId>,
    colors: Vec<ColorIndex>,
    degree: DegreeVector,
    source: VertexId,
    range: VertexId,
}

impl Path {
    pub fn new(skeleton: &Skeleton, edges: Vec<EdgeId>) -> Result<Self, PathError> {
        let first = *edges.first().ok_or(PathError::Empty)?;
        for &e in &edges {
            if !skeleton.contains_edge(e) {
                return Err(PathError::UnknownEdge(format!("#{}", e.index())));
            }
        }
        for (i, w) in edges.windows(2).enumerate() {
            if skeleton.range(w[0]) != skeleton.source(w[1]) {
                return Err(PathError::NotComposable(i));
            }
        }
        let mut degree = DegreeVector::zero(skeleton.k());
        let colors: Vec<ColorIndex> = edges.iter().map(|&e| skeleton.color(e)).collect();
        for &c in &colors {
            degree.add_color(c);
        }
        let last = *edges.last().unwrap();
        Ok(Path {
            source: skeleton.source(first),
            range: skeleton.range(last),
            edges,
            colors,
            degree,
        })
    }

    /// Builds a path from edge names given in traversal order.
    pub fn from_names<S: AsRef<str>>(skeleton: &Skeleton, names: &[S]) -> Result<Self, PathError> {
        let edges = names
            .iter()
            .map(|n| {
                skeleton
                    .edge_by_name(n.as_ref())
                    .ok_or_else(|| PathError::UnknownEdge(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Path::new(skeleton, edges)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn color_order(&self) -> &[ColorIndex] {
        &self.colors
    }

    pub fn degree(&self) -> &DegreeVector {
        &self.degree
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn names<'a>(&self, skeleton: &'a Skeleton) -> Vec<&'a str> {
        self.edges.iter().map(|&e| skeleton.edge_name(e)).collect()
    }

    pub fn display<'a>(&'a self, skeleton: &'a Skeleton) -> PathDisplay<'a> {
        PathDisplay { path: self, skeleton }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    skeleton: &'a Skeleton,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.skeleton.path_names(&self.path.edges))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_vertex() -> Skeleton {
        let mut s = Skeleton::new(2).unwrap();
        s.add_vertex("u").unwrap();
        s.add_vertex("w").unwrap();
        s.add_edge("x", 1, "u", "w").unwrap();
        s.add_edge("y", 2, "w", "w").unwrap();
        s
    }

    #[test]
    fn caches_traversal_metadata() {
        let s = two_vertex();
        let p = Path::from_names(&s, &["x", "y", "y"]).unwrap();
        assert_eq!(p.source(), s.vertex("u").unwrap());
        assert_eq!(p.range(), s.vertex("w").unwrap());
        let colors: Vec<usize> = p.color_order().iter().map(|c| c.get()).collect();
        assert_eq!(colors, vec![1, 2, 2]);
        assert_eq!(p.degree().counts(), &[1, 2]);
        assert_eq!(p.display(&s).to_string(), "[x y y]");
    }

    #[test]
    fn rejects_bad_paths() {
        let s = two_vertex();
        assert_eq!(Path::from_names::<&str>(&s, &[]), Err(PathError::Empty));
        assert_eq!(Path::from_names(&s, &["y", "x"]), Err(PathError::NotComposable(0)));
        assert!(matches!(Path::from_names(&s, &["q"]), Err(PathError::UnknownEdge(_))));
    }
}
