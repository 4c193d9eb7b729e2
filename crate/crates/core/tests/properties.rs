use std::collections::BTreeSet;

use edge_ends::ends::{lambda_ends, EndSelector, Lambda, LambdaOptions, Terminal};
use edge_ends::generate::{random_inner_eulerian, random_presentation, PresentationBounds};
use edge_ends::menger::{max_edge_disjoint_paths, min_edge_cut};
use edge_ends::multigraph::{EdgeSet, Multigraph, VertexId, VertexSet};
use edge_ends::presentation::{EndStructure, Presentation};
use edge_ends::suites::{check_ends_duality, check_lc_ends, check_line_round_trip, check_menger, check_packing};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph(max_n: u32, max_m: usize) -> impl Strategy<Value = Multigraph> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_m).prop_map(move |pairs| {
            let mut g = Multigraph::with_vertices(n);
            for (u, v) in pairs {
                if u != v {
                    g.push_edge(VertexId(u), VertexId(v));
                }
            }
            g
        })
    })
}

fn subset(g: &Multigraph, mask: u64) -> VertexSet {
    g.vertices().filter(|v| mask >> (v.0 % 64) & 1 == 1).collect()
}

fn presentation(seed: u64) -> Presentation {
    random_presentation(&mut ChaCha8Rng::seed_from_u64(seed), PresentationBounds::default())
}

/// Classes as (sorted dominators, strand count), independent of ids.
fn class_shape(p: &Presentation) -> Vec<(Vec<u32>, usize)> {
    let ends = EndStructure::new(p).unwrap();
    let mut shape: Vec<(Vec<u32>, usize)> =
        ends.classes.iter().map(|c| (c.dominators.iter().map(|d| d.0).collect(), c.strands.len())).collect();
    shape.sort();
    shape
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cuts_are_symmetric(g in graph(8, 16), mask in any::<u64>()) {
        let x = subset(&g, mask);
        let rest: VertexSet = g.vertices().filter(|v| !x.contains(v)).collect();
        prop_assert_eq!(g.delta(&x).unwrap().edges, g.delta(&rest).unwrap().edges);
    }

    #[test]
    fn blowup_degrees(g in graph(7, 14)) {
        let b = g.clique_blowup();
        for (c, v) in &b.owner {
            let (d, got) = (g.degree(*v), b.graph.degree(*c));
            prop_assert!(got == d || got + 1 == d, "clique vertex of degree {} for d(v) = {}", got, d);
        }
    }

    #[test]
    fn line_graph_counts(g in graph(8, 16)) {
        // drop parallel edges to get a simple graph
        let mut simple = Multigraph::with_vertices(g.num_vertices() as u32);
        let mut seen = BTreeSet::new();
        for (_, u, v) in g.edges() {
            if seen.insert((u.min(v), u.max(v))) {
                simple.push_edge(u, v);
            }
        }
        let line = simple.line_graph();
        prop_assert_eq!(line.graph.num_vertices(), simple.num_edges());
        let pairs: usize = simple.vertices().map(|v| simple.degree(v) * simple.degree(v).saturating_sub(1) / 2).sum();
        prop_assert_eq!(line.graph.num_edges(), pairs);
    }

    #[test]
    fn contraction_keeps_class_cuts(g in graph(8, 16), labels in prop::collection::vec(0..3u8, 8)) {
        let mut parts = vec![VertexSet::new(); 3];
        for v in g.vertices() {
            parts[labels[v.0 as usize] as usize].insert(v);
        }
        parts.retain(|c| !c.is_empty());
        let (h, lineage) = g.contract(&parts).unwrap();
        for c in &parts {
            let rep = *c.iter().next().unwrap();
            let contracted: EdgeSet =
                h.delta(&VertexSet::from([rep])).unwrap().edges.iter().flat_map(|e| lineage[e].iter().copied()).collect();
            prop_assert_eq!(contracted, g.delta(c).unwrap().edges);
        }
    }

    #[test]
    fn line_paths_round_trip(g in graph(8, 14), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert!(check_line_round_trip(&mut rng, &g).is_ok());
    }

    #[test]
    fn menger_duality(g in graph(8, 16), a in any::<u64>(), b in any::<u64>()) {
        let a = subset(&g, a);
        let b: VertexSet = subset(&g, b).difference(&a).copied().collect();
        prop_assume!(!a.is_empty() && !b.is_empty());
        prop_assert!(check_menger(&g, &a, &b).is_ok(), "{:?}", check_menger(&g, &a, &b));
        let family = max_edge_disjoint_paths(&g, &a, &b).unwrap();
        prop_assert_eq!(family.family.len(), min_edge_cut(&g, &a, &b).unwrap().edges.len());
    }

    #[test]
    fn min_cuts_are_minimal(g in graph(8, 16), a in any::<u64>(), b in any::<u64>()) {
        let a = subset(&g, a);
        let b: VertexSet = subset(&g, b).difference(&a).copied().collect();
        prop_assume!(!a.is_empty() && !b.is_empty());
        let cut = min_edge_cut(&g, &a, &b).unwrap();
        prop_assert!(g.reachable(&a, &cut.edges).is_disjoint(&b));
        for &e in &cut.edges {
            let mut fewer = cut.edges.clone();
            fewer.remove(&e);
            prop_assert!(!g.reachable(&a, &fewer).is_disjoint(&b), "{} is redundant in the cut", e);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn packing_attains_half_the_terminal_cuts(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some((g, t)) = random_inner_eulerian(&mut rng, 10, 24) {
            prop_assert!(check_packing(&g, &t).is_ok(), "{:?}", check_packing(&g, &t));
        }
    }

    #[test]
    fn only_core_vertices_with_columns_dominate(seed in any::<u64>()) {
        let p = presentation(seed);
        let ends = EndStructure::new(&p).unwrap();
        let columns = p.dominating_vertices();
        for c in &ends.classes {
            prop_assert!(c.dominators.is_subset(&columns));
        }
    }

    #[test]
    fn classes_ignore_arm_order(seed in any::<u64>()) {
        let p = presentation(seed);
        let mut q = p.clone();
        let k = q.arms.len();
        q.arms.reverse();
        for a in q.attach.iter_mut().chain(q.dominating.iter_mut()) {
            a.arm = k - 1 - a.arm;
        }
        prop_assert_eq!(class_shape(&p), class_shape(&q));
    }

    #[test]
    fn distinct_classes_are_finitely_separated(seed in any::<u64>()) {
        let p = presentation(seed);
        let ends = EndStructure::new(&p).unwrap();
        for a in 0..ends.classes.len() {
            for b in a + 1..ends.classes.len() {
                let r = lambda_ends(&p, &ends, &[EndSelector::Class(a)], &[EndSelector::Class(b)], &LambdaOptions::default()).unwrap();
                prop_assert!(matches!(r.value, Lambda::Finite(_)), "classes {} and {}", a, b);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn end_duality(seed in any::<u64>()) {
        let p = presentation(seed);
        prop_assert!(check_ends_duality(&p).is_ok(), "{:?}", check_ends_duality(&p));
    }

    #[test]
    fn end_packing(seed in any::<u64>()) {
        let p = presentation(seed);
        let ends = EndStructure::new(&p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut all: Vec<Terminal> = (0..ends.classes.len()).map(Terminal::Class).collect();
        all.extend(p.core.vertices().map(Terminal::Core));
        all.shuffle(&mut rng);
        let k = rng.gen_range(2..=all.len().max(2)).min(all.len());
        prop_assume!(k >= 2);
        all.truncate(k);
        // outside the hypotheses is fine; anything else must verify
        let outcome = check_lc_ends(&p, &all);
        prop_assert!(outcome.is_ok(), "{:?}: {:?}", all, outcome.err());
    }
}
