use bigcycle::families::{complete_bipartite, relabel};
use bigcycle::graph::*;
use bigcycle::io::*;

fn k(g: &MultiGraph, m: usize) -> bool {
    g.vertex_count() == 2 * m && is_connected(g) && two_coloring(g).is_ok() && !g.has_parallel_edges()
}

#[test]
fn round_trip() {
    let g = relabel(&complete_bipartite(3, 3), 4);
    let text = write_graph(&g);
    let h = parse_graph(&text).unwrap();
    assert_eq!(write_graph(&h), text);
    assert_eq!(h.edge_count(), 9);
}

#[test]
fn comments_and_blank_lines() {
    let g = parse_graph("# square\n4 4\n\n0 1\n1 2\n# more\n2 3\n3 0\n").unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
    assert!(write_graph(&g).starts_with("4 4\n0 1\n"));
}

#[test]
fn parse_errors_carry_lines() {
    assert_eq!(
        parse_graph("4 1\n0 4").unwrap_err(),
        IoError::Parse { line: 2, reason: "vertex index out of range 0..4".into() }
    );
    assert!(matches!(parse_graph("3 1\n1 1"), Err(IoError::Parse { line: 2, .. })));
    assert!(matches!(parse_graph("3 2\n0 1"), Err(IoError::Parse { .. })));
    assert!(matches!(parse_graph("x y"), Err(IoError::Parse { line: 1, .. })));
    assert!(matches!(parse_graph(""), Err(IoError::Parse { .. })));
}

#[test]
fn generated_graphs_are_valid() {
    for seed in 0..30 {
        let g = generate(&GenSpec::cubic(10 + seed as usize, seed)).unwrap();
        assert!(is_cubic(&g) && k(&g, 10 + seed as usize));
    }
    for d in 4..=7 {
        let g = generate(&GenSpec::k_regular(25, d, 1)).unwrap();
        assert!(is_regular(&g, d) && k(&g, 25));
    }
}

#[test]
fn smallest_cases_are_complete() {
    let g = generate(&GenSpec::cubic(3, 7)).unwrap();
    assert_eq!(g.edge_count(), 9);
    assert!(k(&g, 3));
    let g = generate(&GenSpec::k_regular(4, 4, 7)).unwrap();
    assert_eq!(g.edge_count(), 16);
}

#[test]
fn seeds_are_deterministic() {
    let a = write_graph(&generate(&GenSpec::cubic(50, 11)).unwrap());
    assert_eq!(a, write_graph(&generate(&GenSpec::cubic(50, 11)).unwrap()));
    assert_ne!(a, write_graph(&generate(&GenSpec::cubic(50, 12)).unwrap()));
}

#[test]
fn impossible_specs() {
    assert!(matches!(generate(&GenSpec::k_regular(3, 4, 0)), Err(IoError::InvalidSpec(_))));
    assert!(matches!(generate(&GenSpec::cubic(0, 0)), Err(IoError::InvalidSpec(_))));
    let g = generate(&GenSpec::k_regular(1, 1, 0)).unwrap();
    assert_eq!(g.edge_count(), 1);
}

#[test]
fn spec_json() {
    let spec = GenSpec::k_regular(12, 5, 9);
    let text = serde_json::to_string(&spec).unwrap();
    assert!(text.contains("\"k_regular_bipartite\""));
    assert_eq!(serde_json::from_str::<GenSpec>(&text).unwrap(), spec);
}

#[test]
fn multigraph_round_trip() {
    use bigcycle::pipeline::{bigcycle, SolveOptions};
    let g = generate(&GenSpec::cubic(40, 2)).unwrap();
    let sol = bigcycle(&g, &SolveOptions::default()).unwrap();
    let text = write_multigraph(&g, &sol.result);
    let back = read_multigraph(&g, &text).unwrap();
    assert_eq!(back.edges, sol.result.edges);
    assert_eq!((back.cycles, back.edge_count), (sol.result.cycles, sol.result.edge_count));
    assert!(bigcycle::oracle::validate_eulerian(&g, &back).is_ok());
}

#[test]
fn multigraph_foreign_pair() {
    let g = complete_bipartite(3, 3);
    let res = read_multigraph(&g, "6 6\n0 1\n0 3\n1 4\n1 5\n2 3\n2 4\n").unwrap();
    let codes: Vec<char> =
        bigcycle::oracle::validate_eulerian(&g, &res).unwrap_err().iter().map(|v| v.code()).collect();
    assert!(codes.contains(&'a'));
    assert!(read_multigraph(&g, "5 0\n").is_err());
}
