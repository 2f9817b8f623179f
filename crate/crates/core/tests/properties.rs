use dense_edgecolor::classic::{hakimi_realize, konig_color, misra_gries, star_multigraph_color};
use dense_edgecolor::coloring::{kempe_chain, parity_audit, verify_proper, EdgeColoring};
use dense_edgecolor::gen;
use dense_edgecolor::graph::io::{parse_mg, to_mg};
use dense_edgecolor::graph::{is_overfull, overfull_subgraph_check_dense, Multigraph, OverfullVerdict};
use dense_edgecolor::oracle::{brute_chromatic_index, brute_overfull_scan};
use dense_edgecolor::output::{color_graph, to_json, ColorOptions, Verdict};
use proptest::prelude::*;

/// Independent properness check: no vertex sees a color twice and every
/// edge is colored.
fn proper_total(g: &Multigraph, c: &EdgeColoring) -> bool {
    let mut seen = std::collections::HashSet::new();
    for (e, u, v) in g.edges() {
        let Some(col) = c.color_of(e) else { return false };
        if !seen.insert((u, col)) || !seen.insert((v, col)) {
            return false;
        }
    }
    true
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Multigraph> {
    (1..=max_n, 0.0f64..1.0, any::<u64>()).prop_map(|(n, p, seed)| gen::random_graph(n, p, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pipeline_output_is_proper_within_vizing(g in graph_strategy(24)) {
        let rep = color_graph(&g, &ColorOptions::default()).unwrap();
        prop_assert!(proper_total(&g, &rep.edge_coloring));
        prop_assert!(rep.colors_used <= g.max_degree() + 1);
        match rep.verdict {
            Verdict::ClassOne => prop_assert_eq!(rep.colors_used, g.max_degree()),
            Verdict::ClassTwo => prop_assert_eq!(rep.colors_used, g.max_degree() + 1),
            Verdict::Fallback => {}
        }
    }

    #[test]
    fn misra_gries_uses_delta_plus_one(g in graph_strategy(40)) {
        let mut c = EdgeColoring::new(&g, g.max_degree() + 1);
        misra_gries(&g, &mut c, &g.edge_ids()).unwrap();
        prop_assert!(proper_total(&g, &c));
    }

    #[test]
    fn star_multigraphs_within_delta_plus_one(n in 2usize..30, p in 0.1f64..1.0, mu in 1usize..5, seed in any::<u64>()) {
        let g = gen::random_star_multigraph(n, p, mu, seed);
        let c = star_multigraph_color(&g).unwrap();
        prop_assert!(proper_total(&g, &c));
        prop_assert!(c.max_color_used() <= g.max_degree() + 1);
    }

    #[test]
    fn konig_is_exact(n in 2usize..60, mu in 1usize..6, p in 0.0f64..1.0, seed in any::<u64>()) {
        let g = gen::random_bipartite_multigraph(n, mu, p, seed);
        let c = konig_color(&g).unwrap();
        prop_assert!(proper_total(&g, &c));
        prop_assert!(c.max_color_used() <= g.max_degree());
    }

    #[test]
    fn hakimi_matches_closed_form(seq in prop::collection::vec(0usize..12, 0..12)) {
        let sum: usize = seq.iter().sum();
        let max = seq.iter().copied().max().unwrap_or(0);
        let feasible = sum.is_multiple_of(2) && 2 * max <= sum;
        match hakimi_realize(&seq) {
            Ok(g) => {
                prop_assert!(feasible);
                prop_assert_eq!(g.degrees(), seq);
                prop_assert!(g.edges().all(|(_, u, v)| u != v));
            }
            Err(_) => prop_assert!(!feasible),
        }
    }

    #[test]
    fn mg_round_trip(n in 1usize..20, mu in 1usize..4, p in 0.0f64..1.0, seed in any::<u64>()) {
        let g = gen::random_star_multigraph(n, p, mu, seed);
        let h = parse_mg(&to_mg(&g)).unwrap();
        prop_assert_eq!(h.vertex_count(), g.vertex_count());
        prop_assert_eq!(h.edge_count(), g.edge_count());
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(h.multiplicity(u, v), g.multiplicity(u, v));
            }
        }
    }

    #[test]
    fn kempe_swap_keeps_properness(g in graph_strategy(20), a in 1usize..4, b in 1usize..4, start in 0usize..20) {
        prop_assume!(a != b && g.vertex_count() > 0);
        let mut c = EdgeColoring::new(&g, g.max_degree() + 3);
        misra_gries(&g, &mut c, &g.edge_ids()).unwrap();
        let v = start % g.vertex_count();
        let chain = kempe_chain(&g, &c, v, a, b);
        let mut swapped = EdgeColoring::new(&g, c.k());
        for (e, _, _) in g.edges() {
            let col = c.color_of(e).unwrap();
            let col = if chain.edges.contains(&e) { if col == a { b } else { a } } else { col };
            swapped.set(&g, e, col).unwrap();
        }
        prop_assert!(proper_total(&g, &swapped));
    }

    #[test]
    fn total_colorings_pass_parity(g in graph_strategy(30)) {
        let mut c = EdgeColoring::new(&g, g.max_degree() + 1);
        misra_gries(&g, &mut c, &g.edge_ids()).unwrap();
        let n = g.vertex_count();
        for col in 1..=c.k() {
            prop_assert_eq!((n - 2 * c.class(col).len()) % 2, n % 2);
        }
        prop_assert!(parity_audit(&g, &c).passed());
    }

    #[test]
    fn overfull_witness_forces_class_two(g in graph_strategy(7)) {
        prop_assume!(g.edge_count() > 0);
        let chi = brute_chromatic_index(&g).unwrap().chi_prime;
        let delta = g.max_degree();
        prop_assert!(chi == delta || chi == delta + 1);
        if brute_overfull_scan(&g).unwrap().is_some() {
            prop_assert_eq!(chi, delta + 1);
        }
        if let OverfullVerdict::Witness(x) = overfull_subgraph_check_dense(&g, 0.5).verdict {
            prop_assert_eq!(chi, delta + 1);
            prop_assert!(x.len() % 2 == 1);
        }
        if g.vertex_count() % 2 == 1 && is_overfull(&g) {
            prop_assert!(brute_overfull_scan(&g).unwrap().is_some());
        }
    }

    #[test]
    fn reports_are_repeatable(g in graph_strategy(20), seed in 0u64..4) {
        let opts = ColorOptions { seed, ..Default::default() };
        let a = to_json(&color_graph(&g, &opts).unwrap());
        let b = to_json(&color_graph(&g, &opts).unwrap());
        prop_assert_eq!(a, b);
    }
}

#[test]
fn verify_proper_flags_a_clash() {
    let g = Multigraph::from_simple_edges(3, &[(0, 1), (1, 2)]).unwrap();
    let mut c = EdgeColoring::new(&g, 1);
    c.set(&g, 0, 1).unwrap();
    assert!(c.set(&g, 1, 1).is_err());
    assert!(verify_proper(&g, &c).ok);
    assert!(!c.is_total(&g));
}
