//! Higher-rank graphs (k-graphs) presented as k-colored directed multigraphs
//! with a commuting-square table.
//!
//! The crate validates presentations, computes normal forms of paths, and
//! implements four moves that preserve the Morita equivalence class of the
//! associated C*-algebra: in-splitting, delay, sink deletion and reduction.
//! Each move checks its preconditions, builds the output presentation and
//! records where every new vertex and edge came from.

pub mod analysis;
pub mod corpus;
pub mod fixtures;
pub mod kgraph;
pub mod moves;
pub mod normal;
pub mod path;
pub mod skeleton;
pub mod squares;
pub mod textio;

pub use kgraph::{build_kgraph, KGraph, ValidationReport, Violation, ViolationKind};
pub use path::Path;
pub use skeleton::{ColorIndex, DegreeVector, EdgeId, Skeleton, VertexId};
pub use squares::SquareTable;
