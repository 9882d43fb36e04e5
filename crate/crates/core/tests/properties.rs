use std::collections::BTreeSet;

use proptest::prelude::*;

use indep12::blocks::{block_decomposition, is_cactus};
use indep12::dp::{self, extend_table, merge_tables, star_table, LabelTable, Rule};
use indep12::generate::{random_cactus, random_connected, random_tree, rng};
use indep12::oracle::{oracle_all_sets, oracle_decide, oracle_min, validate_set};
use indep12::rooted::root_tree;
use indep12::spanning::{construct_spanning_tree, verify_condition};
use indep12::structure::{
    associated_family, generating_family, is_semiexcellent, strong_support_vertex,
    witness_containing,
};
use indep12::{parse_graph, sweep, Graph, Label, VertexSet};

fn small_tree() -> impl Strategy<Value = Graph> {
    (1usize..=14, any::<u64>()).prop_map(|(n, s)| random_tree(n, s))
}

fn small_connected() -> impl Strategy<Value = Graph> {
    (1usize..=11, 0.0f64..0.4, any::<u64>())
        .prop_map(|(n, p, s)| random_connected(n, p, &mut rng(s)))
}

fn table() -> impl Strategy<Value = LabelTable> {
    proptest::collection::vec(proptest::option::of(0u32..6), 5).prop_map(|costs| {
        let pairs: Vec<(Label, u32)> = Label::ALL
            .iter()
            .zip(costs)
            .filter_map(|(&l, c)| c.map(|c| (l, c)))
            .collect();
        LabelTable::from_costs(&pairs, Rule::Promoted)
    })
}

fn subset_of(g: &Graph, mask: u64) -> VertexSet {
    g.vertices().filter(|&v| mask >> v & 1 == 1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_list_roundtrip(g in small_connected()) {
        let text = g.to_edge_list();
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_edge_list(), text);
    }

    #[test]
    fn random_trees_are_trees(n in 1usize..200, seed in any::<u64>()) {
        let t = random_tree(n, seed);
        prop_assert_eq!(t.vertex_count(), n);
        prop_assert!(t.is_tree());
    }

    #[test]
    fn dp_matches_oracle(t in small_tree()) {
        let r = dp::solve(&t).unwrap();
        prop_assert_eq!(r.answer, oracle_decide(&t).unwrap());
        prop_assert_eq!(r.min_cardinality, oracle_min(&t).unwrap());
        if let Some(w) = &r.witness {
            prop_assert!(validate_set(&t, w).is_valid());
            prop_assert_eq!(Some(w.len()), r.min_cardinality);
        }
        prop_assert!(r.stats.rule_applications <= 2 * t.vertex_count());
    }

    #[test]
    fn min_independent_of_root(t in small_tree()) {
        prop_assume!(t.vertex_count() >= 3);
        let base = dp::solve(&t).unwrap().min_cardinality;
        for r in t.vertices().filter(|&v| !t.is_leaf(v)) {
            let rooted = root_tree(&t, Some(r)).unwrap();
            prop_assert_eq!(dp::run_dp(&rooted).min_cardinality, base);
        }
    }

    #[test]
    fn forced_vertex_matches_oracle(t in small_tree(), pick in any::<usize>()) {
        let x = pick % t.vertex_count();
        let best = oracle_all_sets(&t).unwrap().into_iter().filter(|s| s.contains(x)).map(|s| s.len()).min();
        let got = dp::min_witness_containing(&t, x).unwrap();
        prop_assert_eq!(got.as_ref().map(|s| s.len()), best);
        if let Some(s) = got {
            prop_assert!(s.contains(x));
            prop_assert!(validate_set(&t, &s).is_valid());
        }
    }

    #[test]
    fn transfer_outputs_are_closed(a in table(), b in table(), r in 1usize..6) {
        prop_assert!(star_table(r).unwrap().is_closed());
        if let Ok(e) = extend_table(&a) {
            prop_assert!(e.is_closed());
        }
        prop_assert!(merge_tables(&a, &b).is_closed());
    }

    #[test]
    fn validate_set_matches_definition(g in small_connected(), mask in any::<u64>()) {
        let s = subset_of(&g, mask);
        let independent = g.edges().iter().all(|&(u, v)| !(s.contains(u) && s.contains(v)));
        let counted = g.vertices().filter(|&v| !s.contains(v)).all(|v| {
            let k = g.neighbors(v).iter().filter(|&&u| s.contains(u)).count();
            (1..=2).contains(&k)
        });
        prop_assert_eq!(validate_set(&g, &s).is_valid(), independent && counted);
    }

    #[test]
    fn blocks_partition_edges(g in small_connected()) {
        let dec = block_decomposition(&g).unwrap();
        let mut seen = BTreeSet::new();
        for b in &dec.blocks {
            for &e in &b.edges {
                prop_assert!(seen.insert(e));
            }
            // Removing any vertex leaves the rest of the block connected.
            if b.vertices.len() >= 3 {
                for &cut in &b.vertices {
                    let rest: Vec<_> = b.vertices.iter().copied().filter(|&v| v != cut).collect();
                    let edges = b.edges.iter().copied().filter(|&(u, v)| u != cut && v != cut);
                    let (sub, map) = (Graph::new(g.vertex_count(), edges).unwrap(), rest);
                    let reach = reach_from(&sub, map[0]);
                    prop_assert!(map.iter().all(|&v| reach.contains(&v)));
                }
            }
        }
        prop_assert_eq!(seen.len(), g.edge_count());
        let brute: Vec<_> = g.vertices().filter(|&v| {
            let keep: Vec<_> = g.vertices().filter(|&u| u != v).collect();
            !keep.is_empty() && !g.induced(&keep).0.is_connected()
        }).collect();
        prop_assert_eq!(&dec.cut_vertices, &brute);
    }

    #[test]
    fn random_cacti_are_cacti(n in 1usize..40, bias in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = random_cactus(n, bias, seed);
        prop_assert_eq!(g.vertex_count(), n);
        prop_assert!(g.is_connected());
        prop_assert!(is_cactus(&g).unwrap());
    }

    #[test]
    fn generating_family_invariants(t in small_tree()) {
        prop_assume!(t.vertex_count() >= 2 && strong_support_vertex(&t).is_none());
        let fam = generating_family(&t).unwrap();
        prop_assert_eq!(fam.check(&t), Ok(()));
    }

    #[test]
    fn associated_family_of_every_set(t in small_tree()) {
        prop_assume!(t.vertex_count() >= 2);
        for s in oracle_all_sets(&t).unwrap() {
            let fam = associated_family(&t, &s).unwrap();
            prop_assert_eq!(fam.check(&t), Ok(()));
            prop_assert_eq!(fam.associated_set(), s);
        }
    }

    #[test]
    fn witness_containing_sound(t in small_tree()) {
        if is_semiexcellent(&t).unwrap() {
            for x in t.vertices() {
                let s = witness_containing(&t, x).unwrap();
                prop_assert!(s.contains(x));
                prop_assert!(validate_set(&t, &s).is_valid());
            }
        }
    }

    #[test]
    fn construction_gives_certificate(g in small_connected()) {
        for s in oracle_all_sets(&g).unwrap() {
            let cert = construct_spanning_tree(&g, &s).unwrap();
            prop_assert!(verify_condition(&g, &cert.tree, &s).is_ok());
        }
    }
}

fn reach_from(g: &Graph, start: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if seen.insert(u) {
                stack.push(u);
            }
        }
    }
    seen
}

#[test]
fn batch_helpers_agree() {
    let trees: Vec<Graph> = (0..100)
        .map(|s| random_tree(3 + s % 30, s as u64))
        .collect();
    assert_eq!(sweep::decide_all(&trees), sweep::decide_all_seq(&trees));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn set_edge_forest_always_certifies(g in small_connected()) {
        for s in oracle_all_sets(&g).unwrap() {
            let t = indep12::spanning::forest_of_set_edges(&g, &s);
            prop_assert!(verify_condition(&g, &t, &s).is_ok());
        }
    }
}
