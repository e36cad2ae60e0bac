//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use kgraph::analysis::{is_sink, matrices_commute, saturation, sinks};
use kgraph::moves::{self, complete_edges, downset, InsplitPartition, MoveError, MoveResult, VertexParent};
use kgraph::normal::{distinct_permutations, equiv_class_bruteforce, normalize};
use kgraph::textio::{parse_kgraph, serialize};
use kgraph::{ColorIndex, KGraph, Path, VertexId};

use common::{apply_all, block_splits, corpus, count_color, has_every_color, output_ok, Applied, Case, Corpus};

type Check = Result<String, String>;
type Criterion = Box<dyn Fn(&Corpus) -> Check>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn data(name: &str) -> KGraph {
    let path = format!("{}/data/{name}.kgf", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    parse_kgraph(&text).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn vid(kg: &KGraph, name: &str) -> VertexId {
    kg.skeleton().vertex(name).unwrap()
}

fn sizes(kg: &KGraph) -> (usize, usize) {
    (kg.skeleton().vertex_count(), kg.skeleton().edge_count())
}

fn split(kg: &KGraph, v: &str, e1: &[&str], e2: &[&str]) -> Result<MoveResult, MoveError> {
    let part = InsplitPartition::from_names(kg, e1, e2)?;
    moves::insplit(kg, vid(kg, v), &part)
}

fn block_names(kg: &KGraph) -> Vec<Vec<String>> {
    moves::pairing_blocks(kg, vid(kg, "v")).unwrap().names(kg)
}

fn complete_names(kg: &KGraph) -> Vec<Vec<String>> {
    let s = kg.skeleton();
    let mut out: Vec<Vec<String>> = complete_edges(kg)
        .iter()
        .map(|c| {
            let mut n: Vec<String> = c.edges.iter().map(|&e| s.edge_name(e).to_string()).collect();
            n.sort();
            n
        })
        .collect();
    out.sort();
    out
}

fn strings(groups: &[&[&str]]) -> Vec<Vec<String>> {
    groups.iter().map(|g| g.iter().map(|s| s.to_string()).collect()).collect()
}

fn criterion_1() -> Check {
    let a = data("example-a");
    ensure(block_names(&a) == strings(&[&["a", "b", "e", "f"]]), || {
        format!("example A blocks {:?}", block_names(&a))
    })?;
    let names = ["a", "b", "e", "f"];
    for mask in 1..15u32 {
        let e1: Vec<&str> = (0..4).filter(|i| mask & (1 << i) != 0).map(|i| names[i]).collect();
        let e2: Vec<&str> = (0..4).filter(|i| mask & (1 << i) == 0).map(|i| names[i]).collect();
        ensure(matches!(split(&a, "v", &e1, &e2), Err(MoveError::InvalidPartition(_))), || {
            format!("example A split {e1:?}/{e2:?} was not rejected")
        })?;
    }

    let b = data("example-b");
    ensure(block_names(&b) == strings(&[&["a", "e"], &["b", "f"]]), || {
        format!("example B blocks {:?}", block_names(&b))
    })?;
    let res = split(&b, "v", &["a", "e"], &["b", "f"]).map_err(|e| format!("example B insplit: {e}"))?;
    ensure(sizes(&res.output) == (2, 8), || format!("example B insplit sizes {:?}", sizes(&res.output)))?;

    let c = data("example-c");
    ensure(
        block_names(&c) == strings(&[&["a", "e"], &["b", "f"], &["c", "g"], &["d", "h"]]),
        || format!("example C blocks {:?}", block_names(&c)),
    )?;
    for (e1, e2) in [
        (&["a", "c", "e", "g"][..], &["b", "d", "f", "h"][..]),
        (&["a", "e"], &["b", "c", "d", "f", "g", "h"]),
    ] {
        split(&c, "v", e1, e2).map_err(|e| format!("example C split {e1:?}: {e}"))?;
    }

    let fig = data("loop-insplit");
    let res = split(&fig, "v", &["c", "f"], &["b", "g"]).map_err(|e| format!("loop insplit: {e}"))?;
    ensure(sizes(&res.output) == (3, 8), || format!("loop insplit sizes {:?}", sizes(&res.output)))?;

    let chain = data("sink-chain");
    ensure(!sinks(&chain).is_empty(), || "chain has no sink".into())?;
    let first = moves::delete_sink(&chain, vid(&chain, "v")).map_err(|e| e.to_string())?;
    ensure(!sinks(&first.output).is_empty(), || "chain sink-free after one deletion".into())?;
    let w = vid(&first.output, "w");
    let second = moves::delete_sink(&first.output, w).map_err(|e| e.to_string())?;
    ensure(sinks(&second.output).is_empty(), || "chain not sink-free after two deletions".into())?;
    let counts = [chain.skeleton().vertex_count(), first.output.skeleton().vertex_count(), second.output.skeleton().vertex_count()];
    ensure(counts == [3, 2, 1], || format!("chain vertex counts {counts:?}"))?;

    let cyc = data("two-cycle");
    let res = moves::reduce(&cyc, vid(&cyc, "v")).map_err(|e| e.to_string())?;
    let out = res.output.skeleton();
    ensure(sizes(&res.output) == (1, 2), || format!("two-cycle reduction sizes {:?}", sizes(&res.output)))?;
    ensure(out.edge_ids().all(|e| out.source(e) == out.range(e)), || "reduced edges are not loops".into())?;

    let chain = data("reduction-chain");
    let res = moves::reduce(&chain, vid(&chain, "v")).map_err(|e| e.to_string())?;
    ensure(sizes(&res.output) == (2, 6), || format!("chain reduction sizes {:?}", sizes(&res.output)))?;

    let matched = data("complete-matched");
    ensure(
        complete_names(&matched) == strings(&[&["e1", "f1"], &["e2", "f2"], &["e3", "f3"]]),
        || format!("matched complete edges {:?}", complete_names(&matched)),
    )?;
    let crossed = data("complete-crossed");
    ensure(complete_names(&crossed).is_empty(), || {
        format!("crossed complete edges {:?}", complete_names(&crossed))
    })?;
    Ok("all worked examples reproduced".into())
}

struct Tally {
    by_move: BTreeMap<&'static str, usize>,
}

fn move_name(a: &Applied) -> &'static str {
    match a {
        Applied::Insplit { .. } => "insplit",
        Applied::Delay { .. } => "delay",
        Applied::DeleteSink { .. } => "delete-sink",
        Applied::Reduce { .. } => "reduce",
    }
}

fn counting_law(case: &Case, out: &KGraph) -> Result<(), String> {
    let kg = case.input;
    let s = kg.skeleton();
    let o = out.skeleton();
    let (nv, ne) = (s.vertex_count(), s.edge_count());
    match &case.applied {
        Applied::Insplit { v, .. } => {
            let expected = (nv + 1, ne + s.out_edges(*v).len());
            ensure(sizes(out) == expected, || format!("insplit sizes {:?}, expected {expected:?}", sizes(out)))
        }
        Applied::Delay { f } => {
            let cl = moves::delay_closure(kg, *f).unwrap();
            ensure(o.vertex_count() == nv + cl.delayed_edges.len(), || "delay vertex count".into())?;
            for c in ColorIndex::all(s.k()) {
                let gain = if c == cl.base_color {
                    cl.delayed_edges.len()
                } else {
                    cl.affected_of_color(kg, c)
                };
                ensure(count_color(out, c) == count_color(kg, c) + gain, || {
                    format!("delay color {c} count {} expected {}", count_color(out, c), count_color(kg, c) + gain)
                })?;
            }
            Ok(())
        }
        Applied::DeleteSink { v } => {
            let down = downset(kg, *v).unwrap();
            let edges = s.edge_ids().filter(|&e| !down.contains(&s.range(e))).count();
            ensure(sizes(out) == (nv - down.len(), edges), || "delete-sink sizes".into())
        }
        Applied::Reduce { .. } => {
            ensure(sizes(out) == (nv - 1, ne - s.k()), || format!("reduce sizes {:?}", sizes(out)))
        }
    }
}

fn criterion_2(corpus: &Corpus) -> Check {
    let mut tally = Tally { by_move: BTreeMap::new() };
    let mut graphs = 0;
    for kg in corpus.all() {
        graphs += 1;
        for case in apply_all(kg) {
            let label = move_name(&case.applied);
            match &case.result {
                Ok(res) => {
                    output_ok(&res.output).map_err(|e| format!("{label} on graph {graphs}: {e}"))?;
                    counting_law(&case, &res.output).map_err(|e| format!("{label} on graph {graphs}: {e}"))?;
                    *tally.by_move.entry(label).or_default() += 1;
                }
                Err(MoveError::EmptyResult(_)) => {
                    let Applied::DeleteSink { v } = case.applied else { unreachable!() };
                    ensure(downset(kg, v).unwrap().len() == kg.skeleton().vertex_count(), || {
                        "EmptyResult with survivors".into()
                    })?;
                }
                Err(e) => return Err(format!("{label} on graph {graphs} failed: {e}")),
            }
        }
    }
    ensure(corpus.two.len() >= 200 && corpus.three.len() >= 20, || "corpus too small".into())?;
    let summary: Vec<String> = tally.by_move.iter().map(|(k, v)| format!("{k} {v}")).collect();
    Ok(format!(
        "{} 2-graphs, {} 3-graphs; outputs checked: {}",
        corpus.two.len(),
        corpus.three.len(),
        summary.join(", ")
    ))
}

fn criterion_3(corpus: &Corpus) -> Check {
    let mut classes = 0usize;
    let mut normalizations = 0usize;
    for (g, kg) in corpus.all().enumerate() {
        let s = kg.skeleton();
        let mut seen: BTreeSet<Path> = BTreeSet::new();
        for len in 2..=4 {
            for edges in s.paths_of_length(len) {
                let p = Path::new(s, edges).unwrap();
                if seen.contains(&p) {
                    continue;
                }
                let class = equiv_class_bruteforce(kg, &p);
                classes += 1;
                let mut by_order: BTreeMap<Vec<ColorIndex>, Vec<&Path>> = BTreeMap::new();
                for q in &class {
                    by_order.entry(q.color_order().to_vec()).or_default().push(q);
                }
                let perms = distinct_permutations(p.color_order());
                ensure(by_order.len() == perms.len() && by_order.values().all(|v| v.len() == 1), || {
                    format!("graph {g}: class of {} is not one path per color order", p.display(s))
                })?;
                for q in &class {
                    for sigma in &perms {
                        let n = normalize(kg, q, sigma).map_err(|e| format!("graph {g}: {e}"))?;
                        normalizations += 1;
                        ensure(&n == by_order[sigma][0], || {
                            format!("graph {g}: normalize({}) disagrees with the oracle", q.display(s))
                        })?;
                    }
                }
                seen.extend(class);
            }
        }
    }
    Ok(format!("{classes} classes, {normalizations} normalizations agree"))
}

fn criterion_4(corpus: &Corpus) -> Check {
    let mut checked = 0;
    for kg in corpus.all() {
        matrices_commute(kg).map_err(|w| format!("corpus graph: colors {} {} differ", w.i, w.j))?;
        checked += 1;
        for case in apply_all(kg) {
            if let Ok(res) = case.result {
                matrices_commute(&res.output).map_err(|w| {
                    format!("{} output: colors {} {} differ", move_name(&case.applied), w.i, w.j)
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} graphs commute"))
}

fn criterion_5(corpus: &Corpus) -> Check {
    let mut counts = [0usize; 3];
    for kg in corpus.all() {
        let all: BTreeSet<VertexId> = kg.skeleton().vertex_ids().collect();
        for case in apply_all(kg) {
            let Ok(res) = &case.result else { continue };
            match case.applied {
                Applied::Delay { .. } => {
                    let out = res.output.skeleton();
                    let old: BTreeSet<VertexId> = out
                        .vertex_ids()
                        .filter(|&v| matches!(res.vertex_parent(v), VertexParent::Vertex(_)))
                        .collect();
                    let everything: BTreeSet<VertexId> = out.vertex_ids().collect();
                    ensure(saturation(&res.output, &old) == everything, || "delay saturation".into())?;
                    counts[0] += 1;
                }
                Applied::DeleteSink { v } => {
                    let down = downset(kg, v).unwrap();
                    let survivors: BTreeSet<VertexId> = all.difference(&down).copied().collect();
                    ensure(saturation(kg, &survivors) == all, || "sink deletion saturation".into())?;
                    counts[1] += 1;
                }
                Applied::Reduce { v } => {
                    let rest: BTreeSet<VertexId> = all.iter().copied().filter(|&x| x != v).collect();
                    ensure(saturation(kg, &rest) == all, || "reduction saturation".into())?;
                    counts[2] += 1;
                }
                Applied::Insplit { .. } => {}
            }
        }
    }
    Ok(format!("delay {}, delete-sink {}, reduce {}", counts[0], counts[1], counts[2]))
}

fn criterion_6(corpus: &Corpus) -> Check {
    let (mut splits, mut sink_pairs, mut lifts) = (0usize, 0usize, 0usize);
    for kg in corpus.all() {
        let s = kg.skeleton();
        for v in s.vertex_ids() {
            for part in block_splits(kg, v) {
                ensure(has_every_color(kg, &part.e1) && has_every_color(kg, &part.e2), || {
                    "a pairing-respecting side misses a color".into()
                })?;
                splits += 1;
            }
        }
        for &(v, c) in &sinks(kg).entries {
            let down = downset(kg, v).unwrap();
            ensure(down.iter().all(|&w| sinks(kg).contains(w, c)), || {
                format!("down-set of a color-{c} sink has a vertex emitting color {c}")
            })?;
            ensure(is_sink(kg, v), || "sink report disagrees with is_sink".into())?;
            sink_pairs += 1;
        }
        for case in apply_all(kg) {
            let (Applied::Insplit { .. }, Ok(res)) = (&case.applied, &case.result) else { continue };
            let out = res.output.skeleton();
            let mut seen = BTreeMap::new();
            for p in out.paths_of_length(2) {
                let key = (res.parent_path(&p).unwrap(), out.source(p[0]));
                if let Some(prev) = seen.insert(key, p.clone()) {
                    return Err(format!("two lifts {} and {}", out.path_names(&prev), out.path_names(&p)));
                }
                lifts += 1;
            }
        }
    }
    Ok(format!("{splits} splits colorful, {sink_pairs} sink down-sets closed, {lifts} lifted 2-paths unique"))
}

fn canonical_dump(corpus: &Corpus) -> String {
    corpus.all().map(serialize).collect::<Vec<_>>().join("\n")
}

fn criterion_7(corpus: &Corpus) -> Check {
    let mut n = 0;
    for kg in corpus.all() {
        let text = serialize(kg);
        let back = parse_kgraph(&text).map_err(|e| e.to_string())?;
        ensure(&back == kg, || "parse(serialize(kg)) differs".into())?;
        ensure(serialize(&back) == text, || "serialization not byte-stable".into())?;
        n += 1;
        for case in apply_all(kg) {
            if let Ok(res) = case.result {
                let text = serialize(&res.output);
                ensure(serialize(&parse_kgraph(&text).map_err(|e| e.to_string())?) == text, || {
                    "move output round trip".into()
                })?;
                n += 1;
            }
        }
    }
    let dir = format!("{}/data", env!("CARGO_MANIFEST_DIR"));
    let mut files = 0;
    for entry in std::fs::read_dir(&dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path.extension().is_some_and(|x| x == "kgf") {
            let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
            let kg = parse_kgraph(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            ensure(serialize(&kg) == text, || format!("{} is not canonical", path.display()))?;
            files += 1;
        }
    }
    ensure(canonical_dump(corpus) == canonical_dump(&common::corpus()), || {
        "regenerated corpus differs".into()
    })?;
    Ok(format!("{n} graphs and {files} data files round-trip byte-identically; corpus regeneration identical"))
}

fn main() {
    let started = Instant::now();
    let corpus = corpus();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("worked examples", Box::new(|_| criterion_1())),
        ("move preservation", Box::new(criterion_2)),
        ("normal-form oracle", Box::new(criterion_3)),
        ("matrix commutation", Box::new(criterion_4)),
        ("saturation identities", Box::new(criterion_5)),
        ("lemma-level checks", Box::new(criterion_6)),
        ("round-trip and determinism", Box::new(criterion_7)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(&corpus)))
            .unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {ms} ms)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail}; {ms} ms)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {} ms",
        criteria.len() - failed,
        started.elapsed().as_millis()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
