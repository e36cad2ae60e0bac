#![allow(dead_code)]

use std::collections::BTreeSet;

use kgraph::analysis::{is_source_free, sinks};
use kgraph::corpus;
use kgraph::kgraph::validate_presentation;
use kgraph::moves::{self, pairing_blocks, InsplitPartition, MoveError, MoveResult};
use kgraph::{ColorIndex, EdgeId, KGraph, VertexId};

pub const TWO_GRAPH_SEED: u64 = 2024;
pub const BLOCKED_SEED: u64 = 77;
pub const THREE_GRAPH_SEED: u64 = 31;

pub struct Corpus {
    pub two: Vec<KGraph>,
    pub three: Vec<KGraph>,
}

impl Corpus {
    pub fn all(&self) -> impl Iterator<Item = &KGraph> {
        self.two.iter().chain(&self.three)
    }
}

/// 200 random 2-graphs, 40 in-splittable one-vertex 2-graphs and 24
/// products of three 1-graphs.
pub fn corpus() -> Corpus {
    let mut two = corpus::two_graph_corpus(TWO_GRAPH_SEED, 200);
    let mut rng = corpus::rng(BLOCKED_SEED);
    two.extend((0..40).map(|_| corpus::random_blocked_loops(&mut rng)));
    let mut three = corpus::three_graph_corpus(THREE_GRAPH_SEED, 23);
    three.push(corpus::loop_product(&[2, 3, 5]));
    Corpus { two, three }
}

/// Every split of the pairing blocks at `v` into two nonempty unions.
pub fn block_splits(kg: &KGraph, v: VertexId) -> Vec<InsplitPartition> {
    let blocks = pairing_blocks(kg, v).unwrap().blocks;
    let b = blocks.len();
    if b < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    // block 0 always sits in e1, so each unordered split appears once
    for mask in 0..(1u32 << (b - 1)) {
        let mut e1 = BTreeSet::new();
        let mut e2 = BTreeSet::new();
        for (i, block) in blocks.iter().enumerate() {
            let in_e2 = i > 0 && mask & (1 << (i - 1)) != 0;
            if in_e2 {
                e2.extend(block);
            } else {
                e1.extend(block);
            }
        }
        if !e2.is_empty() {
            out.push(InsplitPartition { e1, e2 });
        }
    }
    out
}

pub fn has_every_color(kg: &KGraph, side: &BTreeSet<EdgeId>) -> bool {
    let s = kg.skeleton();
    ColorIndex::all(s.k()).all(|c| side.iter().any(|&e| s.color(e) == c))
}

#[derive(Debug, Clone)]
pub enum Applied {
    Insplit { v: VertexId, part: InsplitPartition },
    Delay { f: EdgeId },
    DeleteSink { v: VertexId },
    Reduce { v: VertexId },
}

pub struct Case<'a> {
    pub input: &'a KGraph,
    pub applied: Applied,
    pub result: Result<MoveResult, MoveError>,
}

/// Runs every move at every place it can be attempted: each block split at
/// each vertex, each edge, each sink, and each vertex for reduction.
/// Reductions whose preconditions fail are dropped.
pub fn apply_all(kg: &KGraph) -> Vec<Case<'_>> {
    let s = kg.skeleton();
    let mut cases = Vec::new();
    for v in s.vertex_ids() {
        for part in block_splits(kg, v) {
            let result = moves::insplit(kg, v, &part);
            cases.push(Case {
                input: kg,
                applied: Applied::Insplit { v, part },
                result,
            });
        }
    }
    for f in s.edge_ids() {
        cases.push(Case {
            input: kg,
            applied: Applied::Delay { f },
            result: moves::delay(kg, f),
        });
    }
    let sink_vertices = sinks(kg).vertices();
    for &v in &sink_vertices {
        cases.push(Case {
            input: kg,
            applied: Applied::DeleteSink { v },
            result: moves::delete_sink(kg, v),
        });
    }
    for v in s.vertex_ids() {
        let result = moves::reduce(kg, v);
        if matches!(
            result,
            Err(MoveError::IncompleteOut(_) | MoveError::IncompleteIn(_) | MoveError::LoopAtV(_))
        ) {
            continue;
        }
        cases.push(Case {
            input: kg,
            applied: Applied::Reduce { v },
            result,
        });
    }
    cases
}

/// Independent re-check of a move output: axioms, source-freeness.
pub fn output_ok(out: &KGraph) -> Result<(), String> {
    let report = validate_presentation(out.skeleton(), out.squares());
    if !report.is_ok() {
        return Err(format!("output fails validation: {report}"));
    }
    if !is_source_free(out) {
        return Err("output is not source-free".into());
    }
    Ok(())
}

pub fn count_color(kg: &KGraph, c: ColorIndex) -> usize {
    kg.skeleton().edges_of_color(c).count()
}
