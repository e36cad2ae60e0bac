use kgraph::fixtures;
use kgraph::textio::{parse_kgraph, serialize};
use kgraph::KGraph;

fn read(name: &str) -> String {
    let path = format!("{}/data/{name}.kgf", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

fn pairs() -> Vec<(&'static str, KGraph)> {
    vec![
        ("example-a", fixtures::example_a()),
        ("example-b", fixtures::example_b()),
        ("example-c", fixtures::example_c()),
        ("loop-insplit", fixtures::loop_insplit()),
        ("sink-chain", fixtures::sink_chain()),
        ("two-cycle", fixtures::two_cycle()),
        ("reduction-chain", fixtures::reduction_chain()),
        ("complete-matched", fixtures::complete_edges_matched()),
        ("complete-crossed", fixtures::complete_edges_crossed()),
        ("single-loops", fixtures::single_loops()),
    ]
}

#[test]
fn data_files_match_fixtures() {
    for (name, kg) in pairs() {
        let text = read(name);
        assert_eq!(parse_kgraph(&text).unwrap(), kg, "{name}");
        assert_eq!(serialize(&kg), text, "{name}");
    }
}

#[test]
fn every_data_file_is_covered() {
    let dir = format!("{}/data", env!("CARGO_MANIFEST_DIR"));
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "kgf"))
        .map(|p| p.file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    names.sort();
    let mut expected: Vec<String> = pairs().into_iter().map(|(n, _)| n.to_string()).collect();
    expected.sort();
    assert_eq!(names, expected);
}
