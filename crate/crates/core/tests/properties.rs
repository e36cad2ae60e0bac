mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use kgraph::analysis::{check_degree_functor, saturation, EdgeWeighting};
use kgraph::corpus;
use kgraph::moves::{self, MoveResult};
use kgraph::normal::{canonical_form, distinct_permutations, equiv_class_bruteforce, normalize, swap_adjacent};
use kgraph::textio::{parse_kgraph, serialize};
use kgraph::{fixtures, ColorIndex, KGraph, Path, VertexId};

use common::{apply_all, Applied};

/// A corpus-style graph picked by seed: mostly random 2-graphs, some
/// in-splittable loop graphs and some 3-graph products.
fn graph(seed: u64) -> KGraph {
    let mut rng = corpus::rng(seed);
    match seed % 6 {
        0 => corpus::random_blocked_loops(&mut rng),
        1 => corpus::three_graph_corpus(seed, 1).remove(0),
        _ => corpus::random_two_graph(&mut rng, 4, 4),
    }
}

fn random_path(kg: &KGraph, rng: &mut impl Rng) -> Option<Path> {
    let s = kg.skeleton();
    let len = rng.gen_range(2..=4);
    let paths = s.paths_of_length(len);
    let edges = paths.choose(rng)?.clone();
    Some(Path::new(s, edges).unwrap())
}

/// Sorts `p` into `target` by swapping a randomly chosen out-of-order
/// adjacent pair until none is left.
fn random_schedule(kg: &KGraph, p: &Path, target: &[ColorIndex], rng: &mut impl Rng) -> Path {
    // slot[i]: where the occurrence at position i must end up; equal colors
    // never swap, so occurrences of a color keep their relative order
    let mut used = vec![false; target.len()];
    let mut slot: Vec<usize> = p
        .color_order()
        .iter()
        .map(|c| {
            let j = (0..target.len()).find(|&j| !used[j] && target[j] == *c).unwrap();
            used[j] = true;
            j
        })
        .collect();
    let mut current = p.clone();
    loop {
        let inversions: Vec<usize> = (0..slot.len() - 1).filter(|&i| slot[i] > slot[i + 1]).collect();
        let Some(&i) = inversions.choose(rng) else { break };
        current = swap_adjacent(kg, &current, i).unwrap();
        slot.swap(i, i + 1);
    }
    current
}

fn vertex_subset(kg: &KGraph, mask: u64) -> BTreeSet<VertexId> {
    kg.skeleton()
        .vertex_ids()
        .enumerate()
        .filter(|(i, _)| mask & (1 << (i % 64)) != 0)
        .map(|(_, v)| v)
        .collect()
}

/// Both sides of every output square have equivalent parents in the input.
fn squares_descend(input: &KGraph, res: &MoveResult) -> Result<(), TestCaseError> {
    let s = input.skeleton();
    for ((a, b), (c, d)) in res.output.squares().classes() {
        let (Some(p), Some(q)) = (res.parent_path(&[a, b]), res.parent_path(&[c, d])) else {
            continue;
        };
        let p = Path::new(s, p).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let q = Path::new(s, q).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(canonical_form(input, &p).unwrap(), canonical_form(input, &q).unwrap());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn square_table_is_an_involution(seed in any::<u64>()) {
        let kg = graph(seed);
        for (p, q) in kg.squares().iter() {
            prop_assert_eq!(kg.squares().get(q), Some(p));
            prop_assert_ne!(p, q);
        }
    }

    #[test]
    fn any_swap_schedule_reaches_the_normal_form(seed in any::<u64>(), pick in any::<u64>()) {
        let kg = graph(seed);
        let mut rng = corpus::rng(pick);
        let Some(p) = random_path(&kg, &mut rng) else { return Ok(()) };
        let perms = distinct_permutations(p.color_order());
        let target = perms.choose(&mut rng).unwrap();
        let expected = normalize(&kg, &p, target).unwrap();
        for _ in 0..4 {
            prop_assert_eq!(&random_schedule(&kg, &p, target, &mut rng), &expected);
        }
    }

    #[test]
    fn normal_forms_are_the_oracle_class(seed in any::<u64>(), pick in any::<u64>()) {
        let kg = graph(seed);
        let mut rng = corpus::rng(pick);
        let Some(p) = random_path(&kg, &mut rng) else { return Ok(()) };
        let class = equiv_class_bruteforce(&kg, &p);
        let normals: BTreeSet<Path> = distinct_permutations(p.color_order())
            .iter()
            .map(|t| normalize(&kg, &p, t).unwrap())
            .collect();
        prop_assert_eq!(class, normals);
    }

    #[test]
    fn saturation_is_a_closure(seed in any::<u64>(), x in any::<u64>(), y in any::<u64>()) {
        let kg = graph(seed);
        let small = vertex_subset(&kg, x & y);
        let large = vertex_subset(&kg, x);
        let sat = saturation(&kg, &small);
        prop_assert!(sat.is_superset(&small));
        prop_assert_eq!(&saturation(&kg, &sat), &sat);
        prop_assert!(saturation(&kg, &large).is_superset(&sat));
    }

    #[test]
    fn delay_closure_is_the_same_from_any_member(seed in any::<u64>()) {
        let kg = graph(seed);
        for f in kg.skeleton().edge_ids() {
            let closure = moves::delay_closure(&kg, f).unwrap();
            prop_assert!(closure.delayed_edges.contains(&f));
            for &g in &closure.delayed_edges {
                prop_assert_eq!(&moves::delay_closure(&kg, g).unwrap(), &closure);
            }
        }
    }

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let kg = graph(seed);
        let text = serialize(&kg);
        let back = parse_kgraph(&text).unwrap();
        prop_assert_eq!(&back, &kg);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn degree_is_well_defined_before_and_after_moves(seed in any::<u64>()) {
        let kg = graph(seed);
        prop_assert!(check_degree_functor(&kg, &EdgeWeighting::degree(&kg)).is_well_defined());
        for case in apply_all(&kg) {
            if let Ok(res) = case.result {
                let out = &res.output;
                prop_assert!(check_degree_functor(out, &EdgeWeighting::degree(out)).is_well_defined());
            }
        }
    }

    #[test]
    fn output_squares_have_equivalent_parents(seed in any::<u64>()) {
        let kg = graph(seed);
        for case in apply_all(&kg) {
            if let (Applied::Insplit { .. } | Applied::DeleteSink { .. } | Applied::Reduce { .. }, Ok(res)) =
                (&case.applied, &case.result)
            {
                squares_descend(&kg, res)?;
            }
        }
    }
}

/// Every output edge of a reduction descends from an edge of the same color,
/// followed by the contracted edge exactly when it used to end at `v`.
fn check_reduce_parents(kg: &KGraph, v: VertexId) {
    let res = moves::reduce(kg, v).unwrap();
    let (s, o) = (kg.skeleton(), res.output.skeleton());
    for e in o.edge_ids() {
        let parent = res.parent_path(&[e]).unwrap();
        assert_eq!(s.color(parent[0]), o.color(e));
        assert!(s.range(parent[0]) == v || parent.len() == 1);
        if parent.len() == 2 {
            assert_eq!(s.source(parent[1]), v);
            assert_ne!(s.range(parent[1]), v);
        }
        Path::new(s, parent).unwrap();
    }
    squares_descend(kg, &res).unwrap();
}

#[test]
fn reduction_parents_on_examples() {
    for kg in [fixtures::two_cycle(), fixtures::reduction_chain()] {
        let v = kg.skeleton().vertex("v").unwrap();
        check_reduce_parents(&kg, v);
    }
}

#[test]
fn reduction_parents_on_corpus() {
    let mut seen = 0;
    for kg in corpus::two_graph_corpus(common::TWO_GRAPH_SEED, 200) {
        for case in apply_all(&kg) {
            if let (Applied::Reduce { v }, Ok(_)) = (&case.applied, &case.result) {
                check_reduce_parents(&kg, *v);
                seen += 1;
            }
        }
    }
    assert!(seen > 0);
}
