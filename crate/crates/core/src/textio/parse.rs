use std::fmt;

use thiserror::Error;

use crate::kgraph::{build_kgraph, KGraph, ValidationReport};
use crate::skeleton::{is_valid_id, Skeleton, SkeletonError};
use crate::squares::SquareTable;

/// A diagnostic tied to a 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexDecl {
    pub name: String,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDecl {
    pub name: String,
    pub color: usize,
    pub source: String,
    pub range: String,
    pub line: usize,
}

/// `square a b = c d`: traversal `a` then `b` is equivalent to `c` then `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareDecl {
    pub left: [String; 2],
    pub right: [String; 2],
    pub line: usize,
}

/// Declarations in source order, before any semantic checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub version: u32,
    pub k: usize,
    pub vertices: Vec<VertexDecl>,
    pub edges: Vec<EdgeDecl>,
    pub squares: Vec<SquareDecl>,
}

/// Fails when the text is not syntactically a `kgf 1` document.
pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (n, header) = lines.next().ok_or_else(|| err(1, "empty document"))?;
    let version = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["kgf", "1"] => 1,
        ["kgf", v] => return Err(err(n, format!("unsupported format version {v}"))),
        _ => return Err(err(n, "expected header `kgf 1`")),
    };
    let (n, rank) = lines.next().ok_or_else(|| err(n, "missing `k <int>` line"))?;
    let k = match rank.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["k", v] => v
            .parse::<usize>()
            .ok()
            .filter(|&k| k >= 1)
            .ok_or_else(|| err(n, format!("invalid rank {v:?}")))?,
        _ => return Err(err(n, "expected `k <int>`")),
    };

    let mut doc = Document {
        version,
        k,
        vertices: Vec::new(),
        edges: Vec::new(),
        squares: Vec::new(),
    };
    let id = |line: usize, s: &str| -> Result<String, ParseError> {
        if is_valid_id(s) {
            Ok(s.to_string())
        } else {
            Err(err(line, format!("invalid id {s:?}")))
        }
    };
    for (n, line) in lines {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            ["vertex", v] => doc.vertices.push(VertexDecl {
                name: id(n, v)?,
                line: n,
            }),
            ["edge", e, c, s, "->", r] => {
                let color = c.parse::<usize>().map_err(|_| err(n, format!("invalid color {c:?}")))?;
                doc.edges.push(EdgeDecl {
                    name: id(n, e)?,
                    color,
                    source: id(n, s)?,
                    range: id(n, r)?,
                    line: n,
                });
            }
            ["square", a, b, "=", c, d] => doc.squares.push(SquareDecl {
                left: [id(n, a)?, id(n, b)?],
                right: [id(n, c)?, id(n, d)?],
                line: n,
            }),
            ["vertex", ..] => return Err(err(n, "expected `vertex <id>`")),
            ["edge", ..] => return Err(err(n, "expected `edge <id> <color> <source> -> <range>`")),
            ["square", ..] => return Err(err(n, "expected `square <a> <b> = <c> <d>`")),
            ["k", ..] => return Err(err(n, "duplicate `k` line")),
            [word, ..] => return Err(err(n, format!("unknown declaration {word:?}"))),
            [] => unreachable!("blank lines are filtered"),
        }
    }
    Ok(doc)
}

impl Document {
    /// Resolves names into a skeleton and square table. Vertices may be
    /// declared after the edges that use them.
    pub fn to_presentation(&self) -> Result<(Skeleton, SquareTable), ParseError> {
        let mut skeleton = Skeleton::new(self.k).map_err(|e| err(1, e.to_string()))?;
        for v in &self.vertices {
            skeleton.add_vertex(&v.name).map_err(|e| err(v.line, describe(e)))?;
        }
        for e in &self.edges {
            skeleton
                .add_edge(&e.name, e.color, &e.source, &e.range)
                .map_err(|x| err(e.line, describe(x)))?;
        }
        let mut table = SquareTable::new();
        for sq in &self.squares {
            let lookup = |n: &String| {
                skeleton
                    .edge_by_name(n)
                    .ok_or_else(|| err(sq.line, format!("undeclared edge {n}")))
            };
            let p = (lookup(&sq.left[0])?, lookup(&sq.left[1])?);
            let q = (lookup(&sq.right[0])?, lookup(&sq.right[1])?);
            table.insert_square(p, q).map_err(|c| {
                err(
                    sq.line,
                    format!(
                        "contradictory square: {} already pairs with {}",
                        skeleton.path_names(&[c.key.0, c.key.1]),
                        skeleton.path_names(&[c.existing.0, c.existing.1])
                    ),
                )
            })?;
        }
        Ok((skeleton, table))
    }
}

fn describe(e: SkeletonError) -> String {
    match e {
        SkeletonError::UnknownVertex { edge, vertex } => {
            format!("edge {edge} uses undeclared vertex {vertex}")
        }
        other => other.to_string(),
    }
}

/// Parse failure or axiom violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoadError {
    Parse(ParseError),
    Invalid(ValidationReport),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Parse(e) => write!(f, "{e}"),
            LoadError::Invalid(r) => write!(f, "{r}"),
        }
    }
}

impl std::error::Error for LoadError {}

impl From<ParseError> for LoadError {
    fn from(e: ParseError) -> Self {
        LoadError::Parse(e)
    }
}

pub fn parse_presentation(text: &str) -> Result<(Skeleton, SquareTable), ParseError> {
    parse_document(text)?.to_presentation()
}

/// Parses and validates.
pub fn parse_kgraph(text: &str) -> Result<KGraph, LoadError> {
    let (skeleton, table) = parse_presentation(text)?;
    build_kgraph(skeleton, table).map_err(LoadError::Invalid)
}
