use std::collections::BTreeSet;

use bigcycle::families::{bond, complete_bipartite, cube, disjoint_union, honeycomb, prism, relabel};
use bigcycle::graph::*;
use bigcycle::matching::TwoFactor;
use bigcycle::oracle::{enumerate_perfect_matchings, validate_eulerian};
use bigcycle::pipeline::*;
use bigcycle::{generate, GenSpec};
use num_rational::Ratio;

fn opts() -> SolveOptions {
    SolveOptions { debug_checks: true, trace: true, euler: true }
}

fn assert_walk(g: &MultiGraph, sol: &Solution) {
    let walk = sol.euler.as_ref().unwrap();
    assert_eq!(walk.len(), sol.result.edge_count + 1);
    assert_eq!(walk.first(), walk.last());
    for w in walk.windows(2) {
        assert!(!g.edges_between(w[0], w[1]).is_empty());
    }
    let seen: BTreeSet<VertexId> = walk.iter().copied().collect();
    assert_eq!(seen.len(), g.vertex_count());
}

#[test]
fn k33_is_one_hexagon() {
    let g = complete_bipartite(3, 3);
    let sol = bigcycle(&g, &opts()).unwrap();
    assert_eq!(sol.result.cycles, 1);
    assert_eq!(sol.result.edge_count, 6);
    assert!(sol.result.edges.iter().all(|&(_, m)| m == 1));
    assert!(sol.report.ok());
    assert_walk(&g, &sol);
}

#[test]
fn cube_is_hamiltonian() {
    let g = cube();
    let sol = bigcycle(&g, &opts()).unwrap();
    assert_eq!((sol.result.cycles, sol.result.edge_count), (1, 8));
    assert_eq!(sol.counters.square_compressions, 1);
    assert_walk(&g, &sol);
}

#[test]
fn trace_is_mirrored() {
    let g = relabel(&prism(12), 9);
    let sol = bigcycle(&g, &opts()).unwrap();
    let (c, e): (Vec<_>, Vec<_>) = sol.trace.iter().partition(|t| t.phase == "compress");
    assert_eq!(c.len(), e.len());
    assert!(!c.is_empty());
    for (a, b) in c.iter().zip(e.iter().rev()) {
        assert_eq!((a.kind, &a.internal_vertices, &a.stub_map), (b.kind, &b.internal_vertices, &b.stub_map));
        assert!(b.case_id.is_some());
    }
}

#[test]
fn edge_count_follows_cycles() {
    for seed in 0..20 {
        let g = generate(&GenSpec::cubic(20 + seed as usize, seed)).unwrap();
        let sol = bigcycle(&g, &opts()).unwrap();
        let r = &sol.result;
        assert_eq!(r.edge_count, r.n + 2 * (r.cycles - 1));
        assert_eq!(r.edges.iter().filter(|&&(_, m)| m == 2).count(), r.cycles - 1);
        assert!(validate_eulerian(&g, r).is_ok());
        assert!(sol.report.ok());
        assert_walk(&g, &sol);
    }
}

/// Two copies of K3,3 with one edge each swapped across.
fn linked_k33() -> (MultiGraph, [EdgeId; 2]) {
    let mut g = disjoint_union(&complete_bipartite(3, 3), &complete_bipartite(3, 3));
    let a = g.edges_between(VertexId(0), VertexId(3))[0];
    let b = g.edges_between(VertexId(6), VertexId(9))[0];
    g.remove_edge(a).unwrap();
    g.remove_edge(b).unwrap();
    let x = g.add_edge(VertexId(0), VertexId(9)).unwrap();
    let y = g.add_edge(VertexId(6), VertexId(3)).unwrap();
    (g, [x, y])
}

#[test]
fn tree_edge_between_cycles_is_doubled() {
    let (g, cross) = linked_k33();
    let m =
        enumerate_perfect_matchings(&g).unwrap().into_iter().find(|m| cross.iter().all(|e| m.contains(*e))).unwrap();
    let f = TwoFactor::new(g.edge_ids().filter(|e| !m.contains(*e)).collect());
    let res = doubletree(&g, &f).unwrap();
    assert_eq!((res.cycles, res.edge_count), (2, 14));
    let doubled: Vec<EdgeId> = res.edges.iter().filter(|&&(_, k)| k == 2).map(|&(e, _)| e).collect();
    assert_eq!(doubled.len(), 1);
    assert!(cross.contains(&doubled[0]));
    let walk = euler_circuit(&g, &res).unwrap();
    assert_eq!(walk.len(), 15);
}

#[test]
fn linked_k33_solves_to_one_cycle() {
    let (g, _) = linked_k33();
    let sol = bigcycle(&g, &opts()).unwrap();
    assert_eq!(sol.result.cycles, 1);
}

fn invalid(r: Result<Solution>) -> bool {
    matches!(r, Err(PipelineError::InputInvalid(_)))
}

#[test]
fn bad_inputs_rejected() {
    let o = SolveOptions::default();
    assert!(invalid(bigcycle(&MultiGraph::new(), &o)));
    assert!(invalid(bigcycle(&bond(3), &o)));
    assert!(invalid(bigcycle(&complete_bipartite(4, 4), &o)));
    assert!(invalid(bigcycle(&disjoint_union(&cube(), &cube()), &o)));
    let mut k4 = MultiGraph::with_vertices(4);
    for a in 0..4 {
        for b in a + 1..4 {
            k4.add_edge(VertexId(a), VertexId(b)).unwrap();
        }
    }
    assert!(invalid(bigcycle(&k4, &o)));
    assert!(invalid(solve_k_regular(&cube(), 2, &o)));
    assert!(invalid(solve_k_regular(&cube(), 4, &o)));
}

#[test]
fn k44_single_cycle() {
    let g = complete_bipartite(4, 4);
    let sol = solve_k_regular(&g, 4, &opts()).unwrap();
    assert_eq!(sol.result.cycles, 1);
    assert_eq!(sol.report.k, 4);
    assert!(sol.report.ok());
    assert_walk(&g, &sol);
}

#[test]
fn cubic_subgraph_is_spanning() {
    for k in 4..=6 {
        let g = generate(&GenSpec::k_regular(30, k, k as u64)).unwrap();
        let h = cubic_subgraph(&g, k).unwrap();
        assert!(is_cubic(&h));
        assert_eq!(h.vertex_count(), g.vertex_count());
        for e in h.edge_ids() {
            assert_eq!(h.endpoints(e), g.endpoints(e));
        }
        assert!(count_k33(&h) * 6 * (k - 2) <= g.vertex_count());
    }
}

#[test]
fn k33_components_counted() {
    let g = disjoint_union(&complete_bipartite(3, 3), &disjoint_union(&cube(), &complete_bipartite(3, 3)));
    assert_eq!(count_k33(&g), 2);
    assert_eq!(count_k33(&prism(6)), 0);
}

#[test]
fn seventy_vertices_within_bound() {
    for seed in 0..10 {
        let g = generate(&GenSpec::cubic(35, seed)).unwrap();
        let sol = bigcycle(&g, &SolveOptions::default()).unwrap();
        assert!(sol.result.cycles <= 10);
        assert!(sol.result.edge_count <= 88);
    }
}

#[test]
fn exact_bounds() {
    let (c, e) = bounds(70, 3);
    assert_eq!((c, e), (Ratio::from_integer(10), Ratio::from_integer(88)));
    let (c, _) = bounds(84, 4);
    assert_eq!(c, Ratio::new(12, 1) + Ratio::new(1, 1));
    let r = SolveReport::new(14, 3, 3, 18, 0.0);
    assert!(!r.ok());
    assert!(SolveReport::new(6, 3, 1, 6, 0.0).ok());
    assert!(!SolveReport::new(6, 3, 2, 8, 0.0).ok());
}

#[test]
fn prisms_and_honeycombs() {
    for g in [prism(4), prism(8), prism(14), honeycomb(4, 6), honeycomb(10, 10)] {
        let sol = bigcycle(&g, &opts()).unwrap();
        assert!(sol.report.ok(), "{:?}", sol.report);
        assert!(!sol.counters.stalled);
    }
}
