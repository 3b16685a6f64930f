use bigcycle::graph::*;
use bigcycle::matching::{perfect_matching, TwoFactor};
use bigcycle::oracle::{validate_eulerian, validate_two_factor};
use bigcycle::pipeline::*;
use bigcycle::{generate, parse_graph, write_graph, GenSpec};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cubic_solutions_hold(m in 3usize..80, seed in any::<u64>()) {
        let g = generate(&GenSpec::cubic(m, seed)).unwrap();
        let sol = bigcycle(&g, &SolveOptions { debug_checks: true, ..Default::default() }).unwrap();
        prop_assert!(validate_two_factor(&g, &sol.two_factor.edges).is_ok());
        prop_assert!(validate_eulerian(&g, &sol.result).is_ok());
        prop_assert!(sol.report.ok(), "{:?}", sol.report);
        prop_assert!(!sol.counters.stalled);
    }

    #[test]
    fn k_regular_solutions_hold(m in 6usize..40, k in 4usize..7, seed in any::<u64>()) {
        prop_assume!(k <= m);
        let g = generate(&GenSpec::k_regular(m, k, seed)).unwrap();
        let sol = solve_k_regular(&g, k, &SolveOptions::default()).unwrap();
        prop_assert!(validate_eulerian(&g, &sol.result).is_ok());
        prop_assert!(sol.report.ok(), "{:?}", sol.report);
    }

    #[test]
    fn text_round_trip(m in 3usize..30, k in 3usize..6, seed in any::<u64>()) {
        prop_assume!(k <= m);
        let g = generate(&GenSpec::k_regular(m, k, seed)).unwrap();
        let text = write_graph(&g);
        prop_assert_eq!(write_graph(&parse_graph(&text).unwrap()), text);
    }

    #[test]
    fn doubletree_on_any_factor(m in 3usize..50, seed in any::<u64>()) {
        let g = generate(&GenSpec::cubic(m, seed)).unwrap();
        let pm = perfect_matching(&g, &two_coloring(&g).unwrap()).unwrap();
        let f = TwoFactor::new(g.edge_ids().filter(|e| !pm.contains(*e)).collect());
        let res = doubletree(&g, &f).unwrap();
        prop_assert_eq!(res.edge_count, 2 * m + 2 * (res.cycles - 1));
        prop_assert!(validate_eulerian(&g, &res).is_ok());
        let walk = euler_circuit(&g, &res).unwrap();
        prop_assert_eq!(walk.len(), res.edge_count + 1);
    }

    #[test]
    fn expansion_restores_the_input(m in 4usize..60, seed in any::<u64>()) {
        let g = generate(&GenSpec::cubic(m, seed)).unwrap();
        let opts = SolveOptions { debug_checks: true, ..Default::default() };
        let state = compress_phase(&g, &opts).unwrap();
        prop_assert!(is_cubic(&state.graph));
        let (f, _, _) = expand_phase(state, &opts).unwrap();
        prop_assert!(validate_two_factor(&g, &f.edges).is_ok());
    }
}
