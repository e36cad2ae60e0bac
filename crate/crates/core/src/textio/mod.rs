//! The `kgf 1` text format, DOT export and the command-line front end.

pub mod cli;
mod dot;
mod parse;
mod serialize;

pub use dot::export_dot;
pub use parse::{
    parse_document, parse_kgraph, parse_presentation, Document, EdgeDecl, LoadError, ParseError, SquareDecl,
    VertexDecl,
};
pub use serialize::{serialize, CONVENTION_COMMENT};
