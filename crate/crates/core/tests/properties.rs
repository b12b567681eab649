use proptest::prelude::*;

use compedge::betti::{betti_monotonicity_check, characteristic_agrees, hs_oracle, pd_oracle, BettiTable, OracleConfig};
use compedge::comp_edge::{comp_edge_ideal, power_set_map, set_tree, set_via_even_connected};
use compedge::corpus::{canonical_tree_labeling, prufer_decode};
use compedge::graph::{caterpillar_from_profile, even_connected, tree_distance_labeling, Edge, EdgeMultiset, Graph, Relabeling};
use compedge::hs::{hs1_formula, hs1_via_lcm, hs_rees_containment_check, hs_subgraph_containment_check, hs_tree_formula, PowerTower};

/// A random tree plus extra edges, so always connected.
fn arb_connected(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n)
        .prop_flat_map(|n| (prop::collection::vec(1..=n, n - 2), prop::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(seq, extra)| {
            let tree = prufer_decode(&seq).unwrap();
            let n = tree.n();
            let mut edges: Vec<(usize, usize)> = tree.edges().iter().map(|e| (e.low(), e.high())).collect();
            let pairs = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b)));
            // roughly one extra edge in four
            let mut k = 0;
            for (p, add) in pairs.zip(extra) {
                if add && k % 4 == 0 {
                    edges.push(p);
                }
                k += usize::from(add);
            }
            edges.sort();
            edges.dedup();
            Graph::new(n, edges).unwrap()
        })
}

fn arb_tree(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n)
        .prop_flat_map(|n| prop::collection::vec(1..=n, n - 2))
        .prop_map(|seq| prufer_decode(&seq).unwrap())
}

fn arb_multiset(g: &Graph, max: usize) -> impl Strategy<Value = EdgeMultiset> {
    let edges = g.edges().to_vec();
    prop::collection::vec(prop::sample::select(edges), 0..=max).prop_map(EdgeMultiset::from_edges)
}

fn relabeled(g: &Graph) -> Graph {
    g.relabel(&g.admissible_relabeling().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn even_connection_is_symmetric((g, es) in arb_connected(3, 6).prop_flat_map(|g| { let m = arb_multiset(&g, 3); (Just(g), m) }), j in 1usize..=6, k in 1usize..=6) {
        prop_assume!(j <= g.n() && k <= g.n());
        prop_assert_eq!(even_connected(&g, j, k, &es).is_some(), even_connected(&g, k, j, &es).is_some());
    }

    #[test]
    fn bipartite_vertices_never_reach_themselves((g, es) in arb_tree(3, 7).prop_flat_map(|g| { let m = arb_multiset(&g, 4); (Just(g), m) })) {
        for v in 1..=g.n() {
            prop_assert!(even_connected(&g, v, v, &es).is_none());
        }
    }

    #[test]
    fn odd_cycles_close_up(m in 1usize..4, extra in prop::collection::vec(0usize..7, 0..3)) {
        let n = 2 * m + 1;
        let g = Graph::cycle(n).unwrap();
        let mut edges: Vec<Edge> = (1..m + 1).map(|t| Edge::new(2 * t - 1, 2 * t).unwrap()).collect();
        edges.extend(extra.iter().map(|&t| g.edges()[t % g.num_edges()]));
        let es = EdgeMultiset::from_edges(edges);
        prop_assert!(even_connected(&g, n, n, &es).is_some());
    }

    #[test]
    fn caterpillars_are_admissible(profile in prop::collection::vec(1u32..4, 1..5)) {
        let t = caterpillar_from_profile(&profile).unwrap();
        prop_assert!(t.graph().validate_lex_labeling().unwrap());
        let b = t.child_counts();
        let mut sigma = 0usize;
        for &a in &profile {
            sigma += a as usize;
            prop_assert_eq!(b[sigma], a);
        }
    }

    #[test]
    fn distance_labelings_are_admissible(g in arb_tree(2, 8), pick in any::<prop::sample::Index>()) {
        let leaves: Vec<usize> = (1..=g.n()).filter(|&v| g.degree(v) == 1).collect();
        let tl = tree_distance_labeling(&g, *pick.get(&leaves)).unwrap();
        prop_assert!(tl.tree.graph().validate_lex_labeling().unwrap());
        prop_assert_eq!(g.relabel(&tl.relabeling), tl.tree.graph().clone());
    }

    #[test]
    fn walk_sets_match_colon_sets(g in arb_connected(3, 6), s in 1u32..=3) {
        let h = relabeled(&g);
        let (gens, sm) = power_set_map(&h, s).unwrap();
        for (f, set) in gens.iter().zip(sm.sets()) {
            prop_assert_eq!(&set_via_even_connected(&h, f), set);
        }
    }

    #[test]
    fn tree_sets_match_colon_sets(g in arb_tree(2, 7), s in 1u32..=3) {
        let (t, _) = canonical_tree_labeling(&g).unwrap();
        let (gens, sm) = power_set_map(t.graph(), s).unwrap();
        for (f, set) in gens.iter().zip(sm.sets()) {
            prop_assert_eq!(&set_tree(&t, f), set);
        }
    }

    #[test]
    fn pd_grows_and_respects_subgraphs(g in arb_connected(3, 6), drop in any::<prop::sample::Index>()) {
        let mut tower = PowerTower::new(&g).unwrap();
        let pd: Vec<usize> = (1..=3).map(|s| tower.pd(s).unwrap()).collect();
        prop_assert!(pd.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(pd[0] == 1, g.is_tree());
        let e = *drop.get(g.edges());
        let rest: Vec<Edge> = g.edges().iter().copied().filter(|&f| f != e).collect();
        if let Ok((h, _)) = g.edge_subgraph(&rest) {
            if h.is_connected() && h.num_edges() > 0 {
                let mut sub = PowerTower::new(&h).unwrap();
                for s in 1..=3 {
                    prop_assert!(sub.pd(s).unwrap() <= pd[s as usize - 1]);
                }
            }
        }
    }

    #[test]
    fn tree_formula_matches_on_any_labels(g in arb_tree(3, 6), s in 1u32..=3, i in 1usize..=3, pick in any::<prop::sample::Index>()) {
        prop_assume!(i as u32 <= s);
        let reference = PowerTower::new(&g).unwrap().hs(i, s).unwrap();
        let leaves: Vec<usize> = (1..=g.n()).filter(|&v| g.degree(v) == 1).collect();
        let tl = tree_distance_labeling(&g, *pick.get(&leaves)).unwrap();
        let h = hs_tree_formula(&tl.tree, i, s).unwrap().reindex(tl.relabeling.inverse().as_map(), g.n());
        prop_assert_eq!(h, reference);
    }

    #[test]
    fn shift_ideals_have_the_expected_shape(g in arb_connected(3, 6), s in 1u32..=2) {
        let mut tower = PowerTower::new(&g).unwrap();
        let pd = tower.pd(s).unwrap();
        let power = tower.power(s).unwrap();
        for i in 0..=g.n() {
            let h = tower.hs(i, s).unwrap();
            prop_assert_eq!(h.is_zero(), i > pd);
            for gen in h.generators() {
                let ok = power.generators().iter().any(|u| {
                    gen.checked_div(u).is_some_and(|q| q.degree() == i as u32 && q.exponents().iter().all(|&e| e <= 1))
                });
                prop_assert!(ok, "{} is not x_F u", gen);
            }
        }
    }

    #[test]
    fn first_shift_three_ways(g in arb_connected(2, 6)) {
        let mut tower = PowerTower::new(&g).unwrap();
        let lq = tower.hs(1, 1).unwrap();
        prop_assert_eq!(&hs1_formula(&g).unwrap(), &lq);
        prop_assert_eq!(&hs1_via_lcm(&comp_edge_ideal(&g).unwrap()), &lq);
    }

    #[test]
    fn shifts_are_rees_modules(g in arb_connected(3, 5), s in 1u32..=2, i in 0usize..5) {
        prop_assert!(hs_rees_containment_check(&g, i, s).unwrap().holds);
    }

    #[test]
    fn subgraph_shifts_embed(g in arb_connected(3, 5), drop in any::<prop::sample::Index>(), s in 1u32..=2, i in 0usize..4) {
        let v = drop.index(g.n()) + 1;
        let rest: Vec<Edge> = g.edges().iter().copied().filter(|e| !e.contains(v)).collect();
        prop_assume!(!rest.is_empty());
        let (h, verts) = g.edge_subgraph(&rest).unwrap();
        prop_assume!(h.is_connected() && verts.len() == g.n() - 1);
        prop_assert!(hs_subgraph_containment_check(&g, &rest, i, s).unwrap().holds);
    }

    #[test]
    fn relabeling_commutes_with_shifts(g in arb_connected(3, 5), perm in Just((1..=5usize).collect::<Vec<_>>()).prop_shuffle(), s in 1u32..=2, i in 0usize..4) {
        let n = g.n();
        let labels: Vec<usize> = perm.into_iter().filter(|&v| v <= n).collect();
        let r = Relabeling::new(labels).unwrap();
        let moved = PowerTower::new(&g.relabel(&r)).unwrap().hs(i, s).unwrap();
        let direct = PowerTower::new(&g).unwrap().hs(i, s).unwrap().reindex(r.as_map(), n);
        prop_assert_eq!(moved, direct);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_agrees_with_linear_quotients(g in arb_connected(2, 5), s in 1u32..=2) {
        let cfg = OracleConfig::default();
        let mut tower = PowerTower::new(&g).unwrap();
        let ideal = tower.power(s).unwrap();
        let table = BettiTable::compute(&ideal, &cfg).unwrap();
        for i in 0..=g.n() {
            prop_assert_eq!(table.hs(i), tower.hs(i, s).unwrap());
        }
        prop_assert_eq!(pd_oracle(&ideal, &cfg).unwrap(), tower.pd(s).unwrap());
        let d = ideal.single_degree().unwrap();
        prop_assert!(table.iter().all(|(i, a, _)| a.degree() == d + i as u32));
    }

    #[test]
    fn betti_numbers_do_not_depend_on_the_field(g in arb_connected(2, 5), s in 1u32..=2) {
        let ideal = PowerTower::new(&g).unwrap().power(s).unwrap();
        prop_assert!(characteristic_agrees(&ideal, OracleConfig::default().lattice_cap).unwrap());
    }

    #[test]
    fn betti_numbers_grow_along_powers(g in arb_connected(2, 4), s in 1u32..=2) {
        let cfg = OracleConfig::default();
        let mut tower = PowerTower::new(&g).unwrap();
        let (cur, next) = (tower.power(s).unwrap(), tower.power(s + 1).unwrap());
        let u = tower.power(1).unwrap().generators()[0].clone();
        prop_assert!(betti_monotonicity_check(&cur.mul_monomial(&u), &next, &cfg).unwrap());
        let (a, b) = (BettiTable::compute(&cur, &cfg).unwrap().totals(), BettiTable::compute(&next, &cfg).unwrap().totals());
        prop_assert!(a.iter().enumerate().all(|(i, &x)| x <= b.get(i).copied().unwrap_or(0)));
    }
}

#[test]
fn oracle_examples() {
    let cfg = OracleConfig::default();
    let c4 = comp_edge_ideal(&Graph::cycle(4).unwrap()).unwrap();
    assert_eq!(pd_oracle(&c4, &cfg).unwrap(), 2);
    assert_eq!(hs_oracle(&c4, 2, &cfg).unwrap().num_gens(), 1);
    // the subgraph-embedding instance: x1 · I_c(P3 on {2,3,4}) inside I_c(P4)
    let p4 = comp_edge_ideal(&Graph::path(4)).unwrap();
    let p3 = comp_edge_ideal(&Graph::path(3)).unwrap().reindex(&[2, 3, 4], 4);
    let j = p3.mul_monomial(&compedge::monomial::Monomial::var(4, 1));
    assert!(p4.contains_ideal(&j));
    assert!(betti_monotonicity_check(&j, &p4, &cfg).unwrap());
    assert!(betti_monotonicity_check(&p4, &p4, &cfg).unwrap());
}
