use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use homtop::dichotomy::classify;
use homtop::graph::{compute_core, Graph};
use homtop::mhom::build_mhom;
use homtop::poset::{dismantle, random_poset};
use homtop::polysearch::{search_polymorphism, verify_polymorphism, IdentitySystem, SearchOptions, SearchStatus};
use homtop::topology::{homology, order_complex, smith_normal_form, IntMatrix};

/// Graph on `n` vertices with the edges picked by `mask` (loops included).
fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n);
    let mut bit = 0;
    for u in 0..n {
        for v in u..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(u, v);
            }
            bit += 1;
        }
    }
    g
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, mask)| graph_from_mask(n, mask))
}

fn loopless(max_n: usize) -> impl Strategy<Value = Graph> {
    graph(max_n).prop_map(|g| {
        let mut h = Graph::empty(g.n());
        for (u, v) in g.edges().into_iter().filter(|(u, v)| u != v) {
            h.add_edge(u, v);
        }
        h
    })
}

fn betti(p: &homtop::poset::Poset, top: usize) -> Vec<(usize, usize)> {
    let c = order_complex(p, None, 1_000_000).unwrap();
    homology(&c, top).iter().map(|g| (g.betti, g.torsion.len())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mhom_elements_are_valid_and_ordered_by_inclusion(h in graph(4)) {
        let g = Graph::complete(2);
        let mp = build_mhom(&g, &h, 100_000).unwrap();
        for (i, a) in mp.elements.iter().enumerate() {
            prop_assert!(a.is_valid(&g, &h));
            prop_assert_eq!(mp.index_of(&a.values), Some(i));
            for (j, b) in mp.elements.iter().enumerate() {
                let subset = a.values.iter().zip(&b.values).all(|(x, y)| x & !y == 0);
                prop_assert_eq!(mp.poset.leq(i, j), subset);
            }
        }
    }

    #[test]
    fn sat_tables_verify_and_search_is_deterministic(h in loopless(4), seed in 0u64..4) {
        let core = compute_core(&h, 8).unwrap().core;
        let sys = IdentitySystem::siggers4();
        let opts = SearchOptions { seed, ..SearchOptions::default() };
        let a = search_polymorphism(&core, &sys, &opts).unwrap();
        let b = search_polymorphism(&core, &sys, &opts).unwrap();
        prop_assert_eq!(a.status, b.status);
        prop_assert_eq!(&a.table, &b.table);
        prop_assert_eq!((a.stats.nodes, a.stats.backtracks), (b.stats.nodes, b.stats.backtracks));
        prop_assert_ne!(a.status, SearchStatus::Timeout);
        if let Some(t) = &a.table {
            prop_assert!(verify_polymorphism(&core, t, &sys).is_ok());
        }
    }

    #[test]
    fn classification_ignores_vertex_names(h in graph(6), shift in 0usize..6) {
        let n = h.n();
        let perm: Vec<usize> = (0..n).map(|v| (v * 5 + shift) % n).collect();
        let mut seen = vec![false; n];
        prop_assume!(perm.iter().all(|&v| !std::mem::replace(&mut seen[v], true)));
        prop_assert_eq!(classify(&h).verdict, classify(&h.relabel(&perm)).verdict);
    }

    #[test]
    fn dismantling_keeps_homology(k in 1usize..8, density in 0.05f64..0.9, seed in any::<u64>()) {
        let p = random_poset(k, density, &mut ChaCha8Rng::seed_from_u64(seed));
        let t = dismantle(&p);
        prop_assert!(t.residual.len() >= 1);
        prop_assert_eq!(betti(&p, k), betti(&t.residual, k));
    }

    #[test]
    fn smith_factors_form_a_divisibility_chain(rows in 1usize..6, cols in 1usize..6, entries in prop::collection::vec(-9i64..=9, 36)) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * 6..i * 6 + cols].to_vec()).collect();
        let s = smith_normal_form(&IntMatrix::from_rows(&m));
        prop_assert_eq!(s.factors.len(), s.rank);
        prop_assert!(s.rank <= rows.min(cols));
        for w in s.factors.windows(2) {
            prop_assert_eq!(&w[1] % &w[0], 0u32.into());
        }
        let all_zero = m.iter().flatten().all(|&x| x == 0);
        prop_assert_eq!(s.rank == 0, all_zero);
    }
}
