mod common;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tdkern::canon::{canonical_form_labeled, CanonicalKey};
use tdkern::gen::{random_modulated, GeneratorConfig};
use tdkern::graph::{bits, Graph, LabeledGraph};
use tdkern::kernel::*;
use tdkern::oracle::{mark_components_literal, verify_removals};
use tdkern::solver::opt_f_bruteforce;
use tdkern::treedepth::{td_decreasing_vertex, treedepth_value};
use tdkern::{Caps, ForbiddenFamily};

fn fam(name: &str) -> ForbiddenFamily {
    ForbiddenFamily::from_preset(name).unwrap()
}

/// Many small components around a small modulator, so that marking has
/// something to drop.
fn crowded(seed: u64, modulator: usize, comps: usize, size_max: usize, eta: usize) -> Instance {
    random_modulated(&GeneratorConfig {
        seed,
        modulator_size: modulator,
        components: comps,
        component_size_min: 1,
        component_size_max: size_max,
        eta,
        p_modulator: 0.5,
        p_cross: 0.5,
        p_component: 0.5,
        k: None,
    })
    .unwrap()
}

#[test]
fn fast_marking_matches_literal_rule() {
    let caps = Caps::default();
    let mut r = ChaCha8Rng::seed_from_u64(50);
    let mut dropped = 0;
    let cases = [("K2", 1, 1), ("K2", 0, 2), ("K2", 1, 2), ("K3", 1, 1), ("K3", 0, 1)];
    for (name, xs, gamma) in cases {
        let f = fam(name);
        let params = MarkingParameters::new(gamma, xs, &f).unwrap();
        for _ in 0..12 {
            let comps = params.tau + r.gen_range(1..=5);
            let inst = crowded(r.gen(), xs, comps, 3, 2);
            let fast = mark_components(&inst.graph, inst.modulator, &f, &params, &caps).unwrap();
            let literal = mark_components_literal(&inst.graph, inst.modulator, &f, &params, &caps).unwrap();
            assert_eq!(fast, literal, "{name} |X|={xs} gamma={gamma} {:?}", inst.graph);
            dropped += inst.components().len() - fast.len();
        }
    }
    assert!(dropped > 0);
}

#[test]
fn few_components_are_all_marked_unless_emptied() {
    let caps = Caps::default();
    let f = fam("K3");
    let mut r = ChaCha8Rng::seed_from_u64(51);
    for _ in 0..50 {
        let inst = crowded(r.gen(), 2, 4, 4, 3);
        let params = MarkingParameters::new(1, 2, &f).unwrap();
        let marked = mark_components(&inst.graph, inst.modulator, &f, &params, &caps).unwrap();
        for c in inst.components() {
            let view = labeled_view(c, &inst.graph, inst.modulator);
            let emptied = tdkern::solver::optsol_enum_bruteforce(&view.graph, &f, &caps)
                .unwrap()
                .iter()
                .any(|y| y.size() == view.n());
            assert_eq!(marked.contains(&c), !emptied);
        }
    }
}

#[test]
fn pruning_shifts_the_optimum_by_delta() {
    let caps = Caps::default();
    let mut r = ChaCha8Rng::seed_from_u64(52);
    for (name, gamma) in [("K2", 1), ("K3", 1), ("K2", 2)] {
        let f = fam(name);
        for _ in 0..30 {
            let inst = crowded(r.gen(), 1, r.gen_range(6..=12), 2, 2);
            if inst.graph.n() > 16 {
                continue;
            }
            let params = MarkingParameters::new(gamma, 1, &f).unwrap();
            let p = prune(&inst.graph, inst.modulator, &f, &params, &caps).unwrap();
            let (o, _) = opt_f_bruteforce(&inst.graph, &f, &caps).unwrap();
            let (ok, _) = opt_f_bruteforce(&p.graph, &f, &caps).unwrap();
            assert_eq!(o, ok + p.delta);
            assert_eq!(p.components_before, inst.components().len());
        }
    }
}

#[test]
fn verified_removals_reverify() {
    let caps = Caps::default();
    let mut r = ChaCha8Rng::seed_from_u64(53);
    for name in ["K2", "K3"] {
        let f = fam(name);
        for _ in 0..30 {
            let inst = crowded(r.gen(), 2, r.gen_range(2..=5), 3, 2);
            let (p, log) = verified_prune(&inst.graph, inst.modulator, &f, &caps).unwrap();
            let rep = verify_removals(&inst.graph, &log, &f, &caps).unwrap();
            assert!(rep.passed(), "{rep:?}");
            assert_eq!(log.iter().map(|x| x.opt_component).sum::<usize>(), p.delta);
            let (o, _) = opt_f_bruteforce(&inst.graph, &f, &caps).unwrap();
            let (ok, _) = opt_f_bruteforce(&p.graph, &f, &caps).unwrap();
            assert_eq!(o, ok + p.delta);
        }
    }
}

/// Grows connected labeled graphs by pendant vertices and extra edges.
fn fragments_by_growth(x_size: usize, f: &ForbiddenFamily) -> BTreeSet<CanonicalKey> {
    let labelsets: Vec<u64> = (0..1u64 << x_size)
        .filter(|s| s.count_ones() as usize <= f.norm())
        .collect();
    let mut seen = BTreeSet::new();
    let mut frontier: Vec<LabeledGraph> = labelsets
        .iter()
        .map(|&l| LabeledGraph::new(Graph::empty(1), vec![l]).unwrap())
        .collect();
    while let Some(g) = frontier.pop() {
        if !seen.insert(canonical_form_labeled(&g)) {
            continue;
        }
        if g.graph.edge_count() == f.m_f() {
            continue;
        }
        for u in 0..g.n() {
            for &l in &labelsets {
                let mut h = g.clone();
                let v = h.graph.add_vertex();
                h.labels.push(l);
                h.graph.add_edge(u, v);
                frontier.push(h);
            }
            for v in u + 1..g.n() {
                if !g.graph.has_edge(u, v) {
                    let mut h = g.clone();
                    h.graph.add_edge(u, v);
                    frontier.push(h);
                }
            }
        }
    }
    seen
}

#[test]
fn fragment_enumeration_matches_growth() {
    let caps = Caps::default();
    for (name, xs) in [("K2", 0), ("K2", 1), ("K2", 2), ("K3", 0), ("K3", 1), ("K3", 2)] {
        let f = fam(name);
        let got: BTreeSet<CanonicalKey> = enumerate_fragments(xs, &f, &caps)
            .unwrap()
            .iter()
            .map(canonical_form_labeled)
            .collect();
        assert_eq!(got, fragments_by_growth(xs, &f), "{name} {xs}");
        assert!(got.len() as f64 <= fragment_universe_bound(xs, &f));
    }
    assert_eq!(enumerate_fragments(0, &fam("K2"), &caps).unwrap().len(), 2);
    assert_eq!(enumerate_fragments(1, &fam("K2"), &caps).unwrap().len(), 5);
}

#[test]
fn fragment_cap_is_enforced() {
    let caps = Caps {
        max_fragment_universe: 10,
        ..Caps::default()
    };
    assert!(enumerate_fragments(3, &fam("K3"), &caps).is_err());
}

#[test]
fn modulators_are_minimum_and_lexicographically_first() {
    let caps = Caps::default();
    let mut r = ChaCha8Rng::seed_from_u64(54);
    for _ in 0..60 {
        let n = r.gen_range(1..=8);
        let g = common::random_graph(&mut r, n, 0.45);
        let eta = r.gen_range(1..=3);
        let x = find_modulator(&g, eta, &caps).unwrap();
        let works = |y: u64| treedepth_value(&g.without(y).0) <= eta;
        assert!(works(x));
        let size = x.count_ones();
        let mut all: Vec<Vec<usize>> = (0u64..1 << n)
            .filter(|y| y.count_ones() <= size && works(*y))
            .map(|y| bits(y).collect())
            .collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        assert_eq!(all[0], bits(x).collect::<Vec<_>>());
    }
}

#[test]
fn adding_decreasing_vertices_lowers_the_level() {
    let mut r = ChaCha8Rng::seed_from_u64(55);
    for _ in 0..100 {
        let eta = r.gen_range(2..=4);
        let inst = crowded(r.gen(), 2, r.gen_range(1..=4), 7, eta);
        let mut x = inst.modulator;
        for c in inst.components() {
            if c.count_ones() >= 2 {
                let (cg, old) = inst.graph.induced(c);
                x |= 1 << old[td_decreasing_vertex(&cg).unwrap()];
            }
        }
        let (rest, _) = inst.graph.without(x);
        assert!(treedepth_value(&rest) < eta);
    }
}

#[test]
fn reduction_is_sound_in_both_modes() {
    let caps = Caps::default();
    let mut r = ChaCha8Rng::seed_from_u64(56);
    for name in ["K2", "K3"] {
        let f = fam(name);
        for _ in 0..25 {
            let inst = crowded(r.gen(), 1, r.gen_range(4..=10), 2, 2);
            if inst.graph.n() > 14 {
                continue;
            }
            let (o, _) = opt_f_bruteforce(&inst.graph, &f, &caps).unwrap();
            for mode in [PruneMode::Marking { gamma: 1 }, PruneMode::Verified] {
                let red = reduce(&inst, &f, mode, &caps).unwrap();
                let (ok, _) = opt_f_bruteforce(&red.graph, &f, &caps).unwrap();
                assert_eq!(o, ok + red.total_delta);
                assert_eq!(red.levels.len(), 2);
                assert_eq!(red.modulator.count_ones(), 1);
                let kinst = Instance::new(red.graph.clone(), red.modulator, 0, inst.eta);
                assert!(kinst.is_ok());
                let (kern, rep) = kernelize(&inst, &f, mode, &caps).unwrap();
                kern.validate().unwrap();
                let yes = o <= inst.k;
                let kyes = opt_f_bruteforce(&kern.graph, &f, &caps).unwrap().0 <= kern.k;
                assert_eq!(yes, kyes, "{rep:?}");
            }
        }
    }
}

#[test]
fn decided_instances() {
    let caps = Caps::default();
    let f = fam("K3");
    let forest = Instance::new(Graph::path(5), 0, 0, 3).unwrap();
    let (k, rep) = kernelize(&forest, &f, PruneMode::Verified, &caps).unwrap();
    assert_eq!(k.graph.n(), 0);
    assert_eq!(rep.answer.as_deref(), Some("yes"));

    let mut g = Graph::empty(0);
    for _ in 0..4 {
        g = g.disjoint_union(&Graph::complete(3));
    }
    let inst = Instance::new(g, 0, 1, 3).unwrap();
    let (k, rep) = kernelize(&inst, &f, PruneMode::Verified, &caps).unwrap();
    assert_eq!(rep.answer.as_deref(), Some("no"));
    assert_eq!(k, no_instance(&f, 3));
    assert!(opt_f_bruteforce(&k.graph, &f, &caps).unwrap().0 > k.k);
}

#[test]
fn instance_validation() {
    assert!(Instance::new(Graph::path(4), 0, 1, 2).is_err());
    assert!(Instance::new(Graph::path(4), 0b0010, 1, 2).is_ok());
    assert!(Instance::new(Graph::path(4), 1 << 9, 1, 5).is_err());
}
