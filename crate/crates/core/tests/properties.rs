mod common;

use common::*;
use pag::{
    check_balanced, check_nash, check_spne, construct_balanced, indifferent, pair_traversal,
    precarious_ordering, spne_rule1, strongly_prefers, validate_path, weakly_prefers,
    BalancedConstruction, ChainKind, DecisionRule, GraphChain, PowerVector, SignedGraph, State,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn weak_preference_is_reflexive(seed: u64, n in 2usize..7) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, 0.3, 0.4, 12);
        let p = real_powers(&mut r, n);
        let u = random_matrix(&mut r, &g, &p);
        for i in 1..=n {
            prop_assert!(weakly_prefers(i, &u, &u).unwrap());
            prop_assert!(indifferent(i, &u, &u).unwrap());
            prop_assert!(!strongly_prefers(i, &u, &u).unwrap());
        }
    }

    #[test]
    fn indifference_is_symmetric_and_implies_weak_both_ways(seed: u64, n in 2usize..7) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, 0.3, 0.4, 12);
        let p = integer_powers(&mut r, n, 3);
        let u = on_grid_matrix(&mut r, &g, &p, 2);
        let v = on_grid_matrix(&mut r, &g, &p, 2);
        let w = on_grid_matrix(&mut r, &g, &p, 2);
        for i in 1..=n {
            let uv = indifferent(i, &u, &v).unwrap();
            prop_assert_eq!(uv, indifferent(i, &v, &u).unwrap());
            if uv {
                prop_assert!(weakly_prefers(i, &u, &v).unwrap());
                prop_assert!(weakly_prefers(i, &v, &u).unwrap());
                if indifferent(i, &v, &w).unwrap() {
                    prop_assert!(indifferent(i, &u, &w).unwrap());
                }
            }
        }
    }

    #[test]
    fn strong_preference_is_antisymmetric(seed: u64, n in 2usize..7) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, 0.3, 0.4, 12);
        let p = integer_powers(&mut r, n, 3);
        let u = on_grid_matrix(&mut r, &g, &p, 3);
        let v = on_grid_matrix(&mut r, &g, &p, 3);
        for i in 1..=n {
            prop_assert!(!(strongly_prefers(i, &u, &v).unwrap() && strongly_prefers(i, &v, &u).unwrap()));
        }
    }

    #[test]
    fn scaling_powers_preserves_states_and_certificates(seed: u64, n in 2usize..7, c in 0.01f64..100.0) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, 0.3, 0.4, 12);
        let p = integer_powers(&mut r, n, 4);
        let u = on_grid_matrix(&mut r, &g, &p, 4);
        let s = u.scaled(c).unwrap();
        prop_assert_eq!(u.classify(), s.classify());
        prop_assert_eq!(check_nash(&u).unwrap().holds, check_nash(&s).unwrap().holds);
        prop_assert_eq!(check_balanced(&u).unwrap().holds, check_balanced(&s).unwrap().holds);
    }

    #[test]
    fn traversal_conserves_power(seed: u64, n in 2usize..9) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, 0.2, 0.5, 12);
        let p = real_powers(&mut r, n);
        let order = shuffled_pairs(&mut r, &g);
        let trace = pair_traversal(&g, &p, &order).unwrap();
        for (t, res) in trace.residuals.iter().enumerate() {
            let spent: f64 = trace.steps[..t].iter().map(|s| 2.0 * s.amount).sum();
            let left: f64 = res.iter().sum();
            prop_assert!((spent + left - p.total()).abs() < 1e-9 * p.total().max(1.0));
            prop_assert!(res.iter().all(|&z| z >= 0.0));
            let u = &trace.path.matrices()[t];
            for i in 1..=n {
                prop_assert_eq!(u.get(i, i), res[i - 1]);
            }
        }
        let last = trace.final_matrix();
        prop_assert_eq!(last.classify().count(State::Unsafe), 0);
        for pair in g.adversary_pairs() {
            prop_assert_eq!(last.get(pair.lo(), pair.hi()), last.get(pair.hi(), pair.lo()));
        }
    }

    #[test]
    fn traversal_paths_certify_under_both_rules(seed: u64, n in 2usize..9) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, 0.2, 0.5, 12);
        let p = real_powers(&mut r, n);
        let trace = pair_traversal(&g, &p, &shuffled_pairs(&mut r, &g)).unwrap();
        prop_assert!(validate_path(&trace.path).is_empty());
        prop_assert!(check_spne(&trace.path).unwrap().holds);
        prop_assert!(check_spne(&trace.path.with_rule(DecisionRule::Rule1)).unwrap().holds);
    }

    #[test]
    fn precarious_target_when_outweighed(seed: u64, n in 2usize..9) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, 0.2, 0.5, 12);
        let p = real_powers(&mut r, n);
        for i in 1..=n {
            let adv = g.adversaries_of(i).unwrap();
            let opposing: f64 = adv.iter().map(|&j| p.get(j)).sum();
            if adv.is_empty() || p.get(i) > opposing {
                continue;
            }
            let u = precarious_ordering(&g, &p, i).unwrap();
            let last = u.final_matrix();
            prop_assert!((last.support(i) - last.threat(i)).abs() <= 1e-9);
            prop_assert_eq!(last.state(i), State::Precarious);
        }
    }

    #[test]
    fn balanced_constructions_pass_the_checker(seed: u64, n in 2usize..8) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, 0.2, 0.6, 12);
        let p = integer_powers(&mut r, n, 4);
        if let BalancedConstruction::Found(u) = construct_balanced(&g, &p).unwrap() {
            prop_assert!(check_balanced(&u).unwrap().holds);
            prop_assert!(check_nash(&u).unwrap().holds);
        }
    }

    #[test]
    fn rule1_paths_on_random_chains(seed: u64, n in 2usize..7) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, 0.3, 0.5, 10);
        let p = real_powers(&mut r, n);
        let mid = {
            let edges: Vec<_> = g.edges().into_iter().filter(|_| rand::Rng::gen_bool(&mut r, 0.5)).collect();
            SignedGraph::from_signed_edges(n, edges).unwrap()
        };
        let chain = GraphChain::new(vec![SignedGraph::edgeless(n), mid, g], ChainKind::Ascending).unwrap();
        let path = spne_rule1(&chain, &p).unwrap();
        prop_assert!(check_spne(&path).unwrap().holds);
        let desc = spne_rule1(&chain.reversed(), &p).unwrap();
        prop_assert!(check_spne(&desc).unwrap().holds);
    }
}

#[test]
fn zero_power_countries_are_never_unsafe_without_threat() {
    let g = SignedGraph::new(3, [(1, 2)], [(2, 3)]).unwrap();
    let p = PowerVector::new(vec![0.0, 0.0, 0.0]).unwrap();
    let trace = pair_traversal(&g, &p, &pag::lexicographic_ordering(&g)).unwrap();
    assert_eq!(trace.final_matrix().classify().count(State::Precarious), 3);
}
