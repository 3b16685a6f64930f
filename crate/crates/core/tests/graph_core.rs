use std::collections::BTreeSet;

use bigcycle::families::{bond, complete_bipartite, cube, disjoint_union};
use bigcycle::graph::*;

#[test]
fn ids_are_never_recycled() {
    let mut g = MultiGraph::with_vertices(3);
    let e0 = g.add_edge(VertexId(0), VertexId(1)).unwrap();
    let e1 = g.add_edge(VertexId(1), VertexId(2)).unwrap();
    g.remove_edge(e0).unwrap();
    let e2 = g.add_edge(VertexId(0), VertexId(2)).unwrap();
    assert!(e2 > e1);
    assert!(!g.contains_edge(e0));
    g.insert_edge(e0, VertexId(0), VertexId(1), true).unwrap();
    assert_eq!(g.endpoints(e0), (VertexId(0), VertexId(1)));
    assert_eq!(g.insert_edge(e0, VertexId(0), VertexId(1), true), Err(GraphError::SlotOccupied(e0.0)));
}

#[test]
fn self_loops_rejected() {
    let mut g = MultiGraph::with_vertices(1);
    assert_eq!(g.add_edge(VertexId(0), VertexId(0)), Err(GraphError::SelfLoop(VertexId(0))));
}

#[test]
fn remove_vertex_drops_incident_edges() {
    let mut g = complete_bipartite(3, 3);
    let prov = g.remove_vertex(VertexId(0)).unwrap();
    assert!(prov.is_organic());
    assert_eq!(g.vertex_count(), 5);
    assert_eq!(g.edge_count(), 6);
    assert!(g.vertex_ids().all(|v| v.index() != 0));
}

#[test]
fn reattach_moves_one_endpoint() {
    let mut g = MultiGraph::with_vertices(3);
    let e = g.add_edge(VertexId(0), VertexId(1)).unwrap();
    g.reattach(e, VertexId(1), VertexId(2)).unwrap();
    assert_eq!(g.degree(VertexId(1)), 0);
    assert_eq!(g.other(e, VertexId(0)), VertexId(2));
}

#[test]
fn parallel_edges_are_distinct() {
    let g = bond(3);
    assert_eq!(g.edges_between(VertexId(0), VertexId(1)).len(), 3);
    assert!(g.has_parallel_edges());
    assert!(is_cubic(&g));
    assert!(!complete_bipartite(3, 3).has_parallel_edges());
}

#[test]
fn coloring_and_odd_witness() {
    let sides = two_coloring(&cube()).unwrap();
    for v in 0..8u32 {
        let parity = v.count_ones() % 2;
        assert_eq!(sides.side(VertexId(v)) == sides.side(VertexId(0)), parity == 0);
    }
    let mut tri = MultiGraph::with_vertices(3);
    for (a, b) in [(0, 1), (1, 2), (2, 0)] {
        tri.add_edge(VertexId(a), VertexId(b)).unwrap();
    }
    match two_coloring(&tri) {
        Err(GraphError::NotBipartite { witness }) => assert!(witness.len() % 2 == 1 || witness.len() >= 3),
        other => panic!("expected odd-cycle error, got {other:?}"),
    }
}

#[test]
fn components_sorted_by_smallest_vertex() {
    let g = disjoint_union(&complete_bipartite(3, 3), &cube());
    let comps = connected_components(&g);
    assert_eq!(comps.len(), 2);
    assert_eq!(comps[0][0], VertexId(0));
    assert_eq!(comps[1].len(), 8);
    assert!(!is_connected(&g));
}

#[test]
fn cycle_decomposition_of_hamiltonian_factor() {
    let g = complete_bipartite(3, 3);
    // 0-3-1-4-2-5-0
    let want = [(0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0)];
    let f: BTreeSet<EdgeId> = g
        .edge_ids()
        .filter(|&e| {
            let (a, b) = g.endpoints(e);
            want.iter().any(|&(x, y)| (a.0, b.0) == (x, y) || (a.0, b.0) == (y, x))
        })
        .collect();
    let cs = cycle_decomposition(&g, &f).unwrap();
    assert_eq!(cs.len(), 1);
    assert_eq!(cs[0].len(), 6);
    assert_eq!(cs[0].vertices[0], VertexId(0));
}

#[test]
fn cycle_decomposition_rejects_degree_three() {
    let g = complete_bipartite(3, 3);
    let all: BTreeSet<EdgeId> = g.edge_ids().collect();
    assert!(matches!(cycle_decomposition(&g, &all), Err(GraphError::NotTwoRegular { .. })));
}

#[test]
fn two_cycles_from_parallel_pairs() {
    let mut g = MultiGraph::with_vertices(2);
    let a = g.add_edge(VertexId(0), VertexId(1)).unwrap();
    let b = g.add_edge(VertexId(0), VertexId(1)).unwrap();
    let cs = cycle_decomposition(&g, &[a, b].into_iter().collect()).unwrap();
    assert_eq!(cs.len(), 1);
    assert_eq!(cs[0].len(), 2);
}

#[test]
fn induced_keeps_ids() {
    let g = cube();
    let keep = [VertexId(1), VertexId(3), VertexId(5), VertexId(7)];
    let h = g.induced(&keep);
    assert_eq!(h.vertex_count(), 4);
    assert_eq!(h.edge_count(), 4);
    for e in h.edge_ids() {
        assert_eq!(h.endpoints(e), g.endpoints(e));
    }
}
