use std::collections::BTreeSet;

use bigcycle::families::{bond, complete_bipartite, cube, disjoint_union};
use bigcycle::fixture::{build_appendix_fixture, default_lengths};
use bigcycle::gadgets::{case_table, expand_step};
use bigcycle::graph::*;
use bigcycle::matching::TwoFactor;
use bigcycle::oracle::*;
use bigcycle::pipeline::{bigcycle, SolveOptions};
use bigcycle::{generate, GenSpec};

#[test]
fn small_minimum_cycle_counts() {
    assert_eq!(min_cycles_two_factor(&complete_bipartite(3, 3)).unwrap().min_cycles, 1);
    assert_eq!(min_cycles_two_factor(&cube()).unwrap().min_cycles, 1);
    assert_eq!(min_cycles_two_factor(&bond(3)).unwrap().min_cycles, 1);
    let two = disjoint_union(&complete_bipartite(3, 3), &complete_bipartite(3, 3));
    let r = min_cycles_two_factor(&two).unwrap();
    assert_eq!(r.min_cycles, 2);
    assert_eq!(r.matchings_enumerated, 36);
    assert!(validate_two_factor(&two, &r.optimal_two_factor).is_ok());
}

#[test]
fn oracle_limits() {
    let g = generate(&GenSpec::cubic(ORACLE_LIMIT / 2 + 1, 0)).unwrap();
    assert!(matches!(min_cycles_two_factor(&g), Err(OracleError::BudgetExceeded { n: 42 })));
    assert!(matches!(min_cycles_two_factor(&complete_bipartite(4, 4)), Err(OracleError::NotCubic)));
}

#[test]
fn visitor_count_matches_list() {
    let g = cube();
    let mut seen = 0;
    let count = for_each_perfect_matching(&g, |m| {
        assert!(m.is_perfect_in(&g));
        seen += 1;
    })
    .unwrap();
    assert_eq!((seen, count), (9, 9));
}

#[test]
fn two_factor_violations() {
    let g = complete_bipartite(3, 3);
    let mut f: BTreeSet<EdgeId> = g.edge_ids().take(5).collect();
    assert!(matches!(validate_two_factor(&g, &f), Err(TwoFactorViolation::Degree { .. })));
    f.insert(EdgeId(99));
    assert_eq!(validate_two_factor(&g, &f), Err(TwoFactorViolation::MissingEdge(EdgeId(99))));
}

fn codes(r: Result<(), Vec<EulerViolation>>) -> BTreeSet<char> {
    r.unwrap_err().iter().map(EulerViolation::code).collect()
}

#[test]
fn tampered_multigraphs_caught() {
    let g = generate(&GenSpec::cubic(40, 3)).unwrap();
    let sol = bigcycle(&g, &SolveOptions::default()).unwrap();
    assert!(validate_eulerian(&g, &sol.result).is_ok());

    let mut bad = sol.result.clone();
    bad.edges.push((EdgeId(10_000), 2));
    bad.edge_count += 2;
    assert!(codes(validate_eulerian(&g, &bad)).contains(&'a'));

    let mut bad = sol.result.clone();
    bad.edges[0].1 = 2;
    bad.edge_count += 1;
    assert!(codes(validate_eulerian(&g, &bad)).contains(&'b'));

    let mut bad = sol.result.clone();
    bad.edges.push((g.edge_ids().find(|e| sol.result.edges.iter().all(|x| x.0 != *e)).unwrap(), 2));
    assert!(codes(validate_eulerian(&g, &bad)).contains(&'d'));
}

#[test]
fn dropping_a_cycle_breaks_spanning() {
    let g = cube();
    let res = bigcycle::pipeline::EulerianResult {
        edges: g.edge_ids().take(4).map(|e| (e, 2)).collect(),
        n: 8,
        cycles: 1,
        edge_count: 8,
        elapsed_ms: 0.0,
    };
    assert!(codes(validate_eulerian(&g, &res)).contains(&'c'));
}

#[test]
fn rewiring_is_one_of_the_completions() {
    for case in case_table() {
        let fx = build_appendix_fixture(case.id, default_lengths(case)).unwrap();
        let mut g = fx.graph.clone();
        let mut f = fx.two_factor.edges.clone();
        let (fstate, _) = expand_step(&mut g, &fx.record, &mut f).unwrap();
        let chosen: BTreeSet<EdgeId> =
            fx.record.internal_edges.iter().map(|&(e, _)| e).filter(|e| f.contains(e)).collect();
        let all = completion_solver(&fx.record, &fstate);
        assert!(all.contains(&chosen), "{}", case.id);
        assert!(TwoFactor::new(f).cycles(&g).is_ok());
    }
}
