//! Validated k-graphs and the axiom checker.
//!
//! A presentation is a [`Skeleton`] together with a [`SquareTable`]. It
//! defines a k-graph exactly when the table is total on mixed 2-paths,
//! involutive, endpoint- and degree-preserving, and every tri-colored 3-path
//! factors to the same result along both associativity routes. Edges are
//! identified by id, so the edge-level uniqueness condition holds
//! structurally.

use std::fmt;

use crate::skeleton::{EdgeId, Skeleton};
use crate::squares::{SquareTable, TwoPath};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    /// A composable mixed-color 2-path has no square entry.
    MissingSquare,
    /// `table(table(q)) != q`.
    NonInvolutiveSquare,
    /// An entry changes source, range or degree.
    SourceRangeMismatch,
    /// The two associativity routes disagree on a tri-colored 3-path.
    CubeMismatch,
    /// An entry mentions an unknown edge, a non-composable pair, or a
    /// single-color pair.
    DanglingEdge,
    /// An equivalence class holds more than one path of some color order.
    NonUniqueFactorization,
    /// An equivalence class has no path of some permuted color order.
    MissingFactorization,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::MissingSquare => "MissingSquare",
            ViolationKind::NonInvolutiveSquare => "NonInvolutiveSquare",
            ViolationKind::SourceRangeMismatch => "SourceRangeMismatch",
            ViolationKind::CubeMismatch => "CubeMismatch",
            ViolationKind::DanglingEdge => "DanglingEdge",
            ViolationKind::NonUniqueFactorization => "NonUniqueFactorization",
            ViolationKind::MissingFactorization => "MissingFactorization",
        };
        f.write_str(s)
    }
}

/// One failed check. Witness paths are edge names in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Vec<Vec<String>>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.kind)?;
        for (i, w) in self.witness.iter().enumerate() {
            if i > 0 {
                write!(f, " |")?;
            }
            write!(f, " {}", w.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn of_kind(&self, kind: ViolationKind) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.kind == kind)
    }

    pub(crate) fn push(&mut self, kind: ViolationKind, witness: Vec<Vec<String>>) {
        self.violations.push(Violation { kind, witness });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return writeln!(f, "ok");
        }
        writeln!(f, "{} violation(s)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// A skeleton with a square table. Values produced by [`build_kgraph`] (and
/// by every move) satisfy the k-graph axioms; [`KGraph::new_unchecked`]
/// skips validation.
#[derive(Debug, Clone)]
pub struct KGraph {
    skeleton: Skeleton,
    squares: SquareTable,
}

impl KGraph {
    /// Pairs a skeleton with a table without validating it.
    pub fn new_unchecked(skeleton: Skeleton, squares: SquareTable) -> Self {
        KGraph { skeleton, squares }
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn squares(&self) -> &SquareTable {
        &self.squares
    }

    pub fn k(&self) -> usize {
        self.skeleton.k()
    }

    pub fn into_parts(self) -> (Skeleton, SquareTable) {
        (self.skeleton, self.squares)
    }

    /// Squares as sorted name pairs, independent of handle numbering.
    pub fn named_squares(&self) -> Vec<([String; 2], [String; 2])> {
        let name = |e: EdgeId| self.skeleton.edge_name(e).to_string();
        let mut out: Vec<_> = self
            .squares
            .iter()
            .map(|((a, b), (c, d))| ([name(a), name(b)], [name(c), name(d)]))
            .collect();
        out.sort();
        out
    }
}

impl PartialEq for KGraph {
    fn eq(&self, other: &Self) -> bool {
        self.skeleton == other.skeleton && self.named_squares() == other.named_squares()
    }
}

impl Eq for KGraph {}

/// Validates a presentation and wraps it as a [`KGraph`], or returns the full
/// list of violations.
pub fn build_kgraph(skeleton: Skeleton, squares: SquareTable) -> Result<KGraph, ValidationReport> {
    let report = validate_presentation(&skeleton, &squares);
    if report.is_ok() {
        Ok(KGraph { skeleton, squares })
    } else {
        Err(report)
    }
}

fn names(skeleton: &Skeleton, edges: &[EdgeId]) -> Vec<String> {
    edges
        .iter()
        .map(|&e| {
            if skeleton.contains_edge(e) {
                skeleton.edge_name(e).to_string()
            } else {
                format!("#{}", e.index())
            }
        })
        .collect()
}

fn composable(skeleton: &Skeleton, (a, b): TwoPath) -> bool {
    skeleton.contains_edge(a) && skeleton.contains_edge(b) && skeleton.range(a) == skeleton.source(b)
}

/// Runs every axiom check and collects all violations.
pub fn validate_presentation(skeleton: &Skeleton, squares: &SquareTable) -> ValidationReport {
    let mut report = ValidationReport::default();

    for (key, value) in squares.iter() {
        let witness = || vec![names(skeleton, &[key.0, key.1]), names(skeleton, &[value.0, value.1])];
        if !composable(skeleton, key)
            || !composable(skeleton, value)
            || skeleton.color(key.0) == skeleton.color(key.1)
        {
            report.push(ViolationKind::DanglingEdge, witness());
            continue;
        }
        let preserves = skeleton.source(key.0) == skeleton.source(value.0)
            && skeleton.range(key.1) == skeleton.range(value.1)
            && skeleton.color(value.0) == skeleton.color(key.1)
            && skeleton.color(value.1) == skeleton.color(key.0);
        if !preserves {
            report.push(ViolationKind::SourceRangeMismatch, witness());
        }
        if let Some(back) = squares.get(value) {
            if back != key {
                report.push(
                    ViolationKind::NonInvolutiveSquare,
                    vec![
                        names(skeleton, &[key.0, key.1]),
                        names(skeleton, &[value.0, value.1]),
                        names(skeleton, &[back.0, back.1]),
                    ],
                );
            }
        }
    }

    for path in skeleton.paths_of_length(2) {
        let (a, b) = (path[0], path[1]);
        if skeleton.color(a) != skeleton.color(b) && squares.get((a, b)).is_none() {
            report.push(ViolationKind::MissingSquare, vec![names(skeleton, &path)]);
        }
    }

    if skeleton.k() >= 3 {
        for path in skeleton.paths_of_length(3) {
            let c: Vec<_> = path.iter().map(|&e| skeleton.color(e)).collect();
            if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
                continue;
            }
            let route1 = swap_sequence(squares, &path, &[1, 0, 1]);
            let route2 = swap_sequence(squares, &path, &[0, 1, 0]);
            if let (Some(r1), Some(r2)) = (route1, route2) {
                if r1 != r2 {
                    report.push(
                        ViolationKind::CubeMismatch,
                        vec![names(skeleton, &path), names(skeleton, &r1), names(skeleton, &r2)],
                    );
                }
            }
        }
    }

    report
}

/// Applies table lookups at the given traversal positions in order.
fn swap_sequence(squares: &SquareTable, path: &[EdgeId], positions: &[usize]) -> Option<Vec<EdgeId>> {
    let mut p = path.to_vec();
    for &i in positions {
        let (c, d) = squares.get((p[i], p[i + 1]))?;
        p[i] = c;
        p[i + 1] = d;
    }
    Some(p)
}
