mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tdkern::graph::{bits, BoundariedGraph, Graph, LabeledGraph};
use tdkern::minor::Folio;
use tdkern::solver::*;
use tdkern::{Caps, ForbiddenFamily};

fn fam(name: &str) -> ForbiddenFamily {
    ForbiddenFamily::from_preset(name).unwrap()
}

#[test]
fn branching_matches_exhaustive_search() {
    let caps = Caps::default();
    let mut r = ChaCha8Rng::seed_from_u64(40);
    for name in ["K2", "K3"] {
        let f = fam(name);
        for _ in 0..300 {
            let n = r.gen_range(0..=10);
            let p = r.gen_range(0.1..0.7);
            let g = common::random_graph(&mut r, n, p);
            let (s, y) = opt_f(&g, &f, &caps).unwrap();
            let (sb, _) = opt_f_bruteforce(&g, &f, &caps).unwrap();
            assert_eq!(s, sb, "{name} {g:?}");
            let all = optsol_enum_bruteforce(&g, &f, &caps).unwrap();
            assert_eq!(optsol_enum(&g, &f, &caps).unwrap(), all);
            assert_eq!(y, all.iter().min().unwrap().clone());
            assert!(f.is_free_in(&g, g.all() & !y.mask()));
        }
    }
}

#[test]
fn planar_family_on_small_graphs() {
    let caps = Caps::default();
    let f = fam("K5+K33");
    let mut r = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..40 {
        let n = r.gen_range(5..=8);
        let g = common::random_graph(&mut r, n, 0.75);
        assert_eq!(opt_f(&g, &f, &caps).unwrap().0, opt_f_bruteforce(&g, &f, &caps).unwrap().0);
    }
    assert_eq!(opt_f(&Graph::complete(6), &f, &caps).unwrap().0, 2);
    assert_eq!(opt_f(&Graph::complete_bipartite(3, 3), &f, &caps).unwrap().0, 1);
}

#[test]
fn optimum_adds_over_components() {
    let caps = Caps::default();
    let f = fam("K3");
    let mut r = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..100 {
        let n1 = r.gen_range(1..=7);
        let n2 = r.gen_range(1..=7);
        let a = common::random_graph(&mut r, n1, 0.5);
        let b = common::random_graph(&mut r, n2, 0.5);
        let sum = opt_f(&a, &f, &caps).unwrap().0 + opt_f(&b, &f, &caps).unwrap().0;
        assert_eq!(opt_f(&a.disjoint_union(&b), &f, &caps).unwrap().0, sum);
    }
}

#[test]
fn oversized_inputs_are_refused() {
    let caps = Caps::default();
    let g = Graph::path(17);
    assert!(opt_f(&g, &fam("K2"), &caps).is_err());
    assert!(opt_f_bruteforce(&g, &fam("K2"), &caps).is_err());
}

#[test]
fn breaking_solutions_by_double_computation() {
    let caps = Caps::default();
    let f = fam("K2");
    let mut r = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..300 {
        let n = r.gen_range(1..=7);
        let c = common::random_labeled(&mut r, n, 2, 0.4);
        let q: Vec<LabeledGraph> = (0..r.gen_range(1..=3))
            .map(|_| {
                let m = r.gen_range(1..=2);
                common::random_labeled(&mut r, m, 2, 0.5)
            })
            .collect();
        let got = exists_optsol_breaking(&c, &f, &q, &caps).unwrap();
        let expected = optsol_enum_bruteforce(&c.graph, &f, &caps)
            .unwrap()
            .into_iter()
            .find(|y| {
                let rest = c.without(y.mask());
                q.iter().all(|h| !tdkern::minor::is_labeled_minor(h, &rest))
            });
        assert_eq!(got, expected);
    }
}

#[test]
fn constrained_optimum_is_no_smaller() {
    let caps = Caps::default();
    let f = fam("K3");
    let mut r = ChaCha8Rng::seed_from_u64(44);
    let mut feasible = 0;
    for _ in 0..300 {
        let g = common::random_boundaried(&mut r, 8, 2, 0, 0.0);
        let universe = tdkern::calculus::mpcs_plus_family(&f, 2, &caps).unwrap();
        let pi: Folio = universe.graphs().filter(|_| r.gen_bool(0.2)).cloned().collect();
        let delta = g.boundary_mask();
        let (free, _) = opt_f(&g.graph, &f, &caps).unwrap();
        match opt_f_constrained(&g, &f, &pi, delta, &caps).unwrap() {
            Some((s, y)) => {
                feasible += 1;
                assert!(s >= free);
                assert_eq!(y.mask() & delta, 0);
                let rest = g.without(y.mask());
                assert!(f.is_free(&rest.graph));
                assert!(pi.graphs().all(|p| !tdkern::minor::is_minor(p, &rest)));
            }
            None => {
                // Even deleting every unprotected vertex fails.
                let rest = g.without(g.graph.all() & !delta);
                let blocked = !f.is_free(&rest.graph) || pi.graphs().any(|p| tdkern::minor::is_minor(p, &rest));
                assert!(blocked);
            }
        }
        if pi.is_empty() && f.is_free_in(&g.graph, delta) {
            let (s, _) = opt_f_constrained(&g, &f, &pi, delta, &caps).unwrap().unwrap();
            let (sb, _) = opt_f_bruteforce(&g.graph, &f, &caps).unwrap();
            assert!(s >= sb);
        }
    }
    assert!(feasible > 50);
    let g = BoundariedGraph::new(Graph::path(2), vec![0, 0], vec![1, 0], 1).unwrap();
    assert!(opt_f_constrained(&g, &f, &Folio::default(), 0, &caps).is_err());
}

proptest! {
    #[test]
    fn every_enumerated_solution_is_minimum_and_valid(n in 1usize..9, seed in any::<u64>()) {
        let caps = Caps::default();
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut r, n, 0.5);
        let f = fam("K3");
        let (s, _) = opt_f(&g, &f, &caps).unwrap();
        let sols = optsol_enum(&g, &f, &caps).unwrap();
        prop_assert!(!sols.is_empty());
        for y in &sols {
            prop_assert_eq!(y.size(), s);
            prop_assert!(f.is_free_in(&g, g.all() & !y.mask()));
            for v in bits(y.mask()) {
                prop_assert!(!f.is_free_in(&g, g.all() & !(y.mask() & !(1 << v))));
            }
        }
    }
}
