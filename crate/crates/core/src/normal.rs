//! Factorization along the square table: adjacent swaps, normal forms, and
//! the brute-force equivalence closure used as an oracle.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::kgraph::{KGraph, ValidationReport, ViolationKind};
use crate::path::Path;
use crate::skeleton::ColorIndex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalFormError {
    #[error("position {position} is out of range for a path of length {len}")]
    OutOfRange { position: usize, len: usize },
    #[error("edges at positions {0} and {} have the same color", .0 + 1)]
    SameColor(usize),
    #[error("no square entry for the 2-path at position {0}")]
    MissingSquare(usize),
    #[error("target color order is not a permutation of the path's color order")]
    NotAPermutation,
}

/// Replaces the edges at traversal positions `i` and `i + 1` (zero-based) by
/// their square partner.
pub fn swap_adjacent(kg: &KGraph, p: &Path, i: usize) -> Result<Path, NormalFormError> {
    if i + 1 >= p.len() {
        return Err(NormalFormError::OutOfRange {
            position: i,
            len: p.len(),
        });
    }
    let colors = p.color_order();
    if colors[i] == colors[i + 1] {
        return Err(NormalFormError::SameColor(i));
    }
    let edges = p.edges();
    let (c, d) = kg
        .squares()
        .get((edges[i], edges[i + 1]))
        .ok_or(NormalFormError::MissingSquare(i))?;
    let mut swapped = edges.to_vec();
    swapped[i] = c;
    swapped[i + 1] = d;
    // the table is checked to be endpoint-preserving, so this cannot fail on
    // a validated k-graph
    Path::new(kg.skeleton(), swapped).map_err(|_| NormalFormError::MissingSquare(i))
}

fn is_permutation(a: &[ColorIndex], b: &[ColorIndex]) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort();
    y.sort();
    x == y
}

/// The unique path equivalent to `p` whose color order is `target`.
///
/// Realized by a left-to-right bubble schedule of adjacent swaps; on a
/// validated k-graph the result does not depend on the schedule.
pub fn normalize(kg: &KGraph, p: &Path, target: &[ColorIndex]) -> Result<Path, NormalFormError> {
    if !is_permutation(p.color_order(), target) {
        return Err(NormalFormError::NotAPermutation);
    }
    let mut current = p.clone();
    for j in 0..target.len() {
        if current.color_order()[j] == target[j] {
            continue;
        }
        let m = (j + 1..current.len())
            .find(|&m| current.color_order()[m] == target[j])
            .expect("target is a permutation");
        for i in (j..m).rev() {
            current = swap_adjacent(kg, &current, i)?;
        }
    }
    Ok(current)
}

/// Normal form with nondecreasing color order; one representative per class.
pub fn canonical_form(kg: &KGraph, p: &Path) -> Result<Path, NormalFormError> {
    let mut target = p.color_order().to_vec();
    target.sort();
    normalize(kg, p, &target)
}

/// Closure of `{p}` under every legal adjacent swap. Independent of
/// [`normalize`]; used as its oracle.
pub fn equiv_class_bruteforce(kg: &KGraph, p: &Path) -> BTreeSet<Path> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(p.clone());
    queue.push_back(p.clone());
    while let Some(q) = queue.pop_front() {
        for i in 0..q.len().saturating_sub(1) {
            if let Ok(next) = swap_adjacent(kg, &q, i) {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

/// All distinct rearrangements of a color sequence.
pub fn distinct_permutations(colors: &[ColorIndex]) -> Vec<Vec<ColorIndex>> {
    let mut counts: BTreeMap<ColorIndex, usize> = BTreeMap::new();
    for &c in colors {
        *counts.entry(c).or_default() += 1;
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(colors.len());
    fn rec(
        counts: &mut BTreeMap<ColorIndex, usize>,
        len: usize,
        current: &mut Vec<ColorIndex>,
        out: &mut Vec<Vec<ColorIndex>>,
    ) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        let keys: Vec<ColorIndex> = counts.iter().filter(|(_, &n)| n > 0).map(|(&c, _)| c).collect();
        for c in keys {
            *counts.get_mut(&c).unwrap() -= 1;
            current.push(c);
            rec(counts, len, current, out);
            current.pop();
            *counts.get_mut(&c).unwrap() += 1;
        }
    }
    rec(&mut counts, colors.len(), &mut current, &mut out);
    out
}

/// Brute-force unique-factorization check: every path of length
/// `2..=max_len` must have exactly one equivalent path per permutation of
/// its color order.
pub fn check_kg4(kg: &KGraph, max_len: usize) -> ValidationReport {
    let skeleton = kg.skeleton();
    let mut report = ValidationReport::default();
    let mut reported: BTreeSet<Path> = BTreeSet::new();
    for len in 2..=max_len {
        for edges in skeleton.paths_of_length(len) {
            let p = Path::new(skeleton, edges).expect("enumerated paths are composable");
            if reported.contains(&p) {
                continue;
            }
            let class = equiv_class_bruteforce(kg, &p);
            let mut by_order: BTreeMap<Vec<ColorIndex>, Vec<&Path>> = BTreeMap::new();
            for q in &class {
                by_order.entry(q.color_order().to_vec()).or_default().push(q);
            }
            let mut bad = false;
            for sigma in distinct_permutations(p.color_order()) {
                match by_order.get(&sigma).map(Vec::len).unwrap_or(0) {
                    1 => {}
                    0 => {
                        bad = true;
                        let order = sigma.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
                        report.push(
                            ViolationKind::MissingFactorization,
                            vec![p.names(skeleton).iter().map(|s| s.to_string()).collect(), vec![order]],
                        );
                    }
                    _ => {
                        bad = true;
                        let mut witness = vec![p.names(skeleton).iter().map(|s| s.to_string()).collect()];
                        for q in &by_order[&sigma] {
                            witness.push(q.names(skeleton).iter().map(|s| s.to_string()).collect());
                        }
                        report.push(ViolationKind::NonUniqueFactorization, witness);
                    }
                }
            }
            if bad {
                // one report per class is enough
                reported.extend(class);
            }
        }
    }
    report
}
