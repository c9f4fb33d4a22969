mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tdkern::graph::{bits, BoundariedGraph, Graph, LabeledGraph};
use tdkern::minor::*;

#[test]
fn minor_test_agrees_with_minor_closure() {
    let mut r = ChaCha8Rng::seed_from_u64(30);
    let mut positives = 0;
    for _ in 0..150 {
        let t = r.gen_range(0..=2);
        let g = common::random_boundaried(&mut r, 5, t, 1, 0.3);
        let closure = folio(&g, usize::MAX);
        for h in closure.graphs() {
            assert!(is_minor(h, &g), "{h:?} in {g:?}");
        }
        positives += closure.len();
        for _ in 0..20 {
            let h = common::random_boundaried(&mut r, 4, t, 1, 0.3);
            assert_eq!(is_minor(&h, &g), closure.contains(&h), "{h:?} in {g:?}");
        }
    }
    assert!(positives > 1000);
}

#[test]
fn found_models_are_valid() {
    let mut r = ChaCha8Rng::seed_from_u64(31);
    let mut found = 0;
    for _ in 0..600 {
        let n = r.gen_range(1..=9);
        let g = common::random_graph(&mut r, n, 0.35);
        let hn = r.gen_range(1..=4);
        let h = common::random_connected(&mut r, hn, 0.6);
        if let Some(m) = find_minor_model(&h, &g) {
            let (hb, gb) = (BoundariedGraph::plain(h.clone()), BoundariedGraph::plain(g.clone()));
            assert!(is_valid_model(&hb, &gb, &m, ModelKind::Plain));
            found += 1;
        }
        let hl = common::random_labeled(&mut r, hn.min(3), 2, 0.3);
        let gl = LabeledGraph::new(g.clone(), (0..g.n()).map(|_| r.gen_range(0..4)).collect()).unwrap();
        if let Some(m) = find_labeled_minor_model(&hl, &gl) {
            assert!(is_valid_model(&hl.to_boundaried(0), &gl.to_boundaried(0), &m, ModelKind::Labeled));
        }
    }
    assert!(found > 100);
}

#[test]
fn minimised_models_cannot_shrink() {
    let mut r = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..300 {
        let n = r.gen_range(3..=9);
        let g = common::random_graph(&mut r, n, 0.4);
        let h = if r.gen_bool(0.5) { Graph::complete(3) } else { Graph::path(3) };
        let Some(m) = find_minor_model(&h, &g) else { continue };
        let (hb, gb) = (BoundariedGraph::plain(h.clone()), BoundariedGraph::plain(g.clone()));
        let mm = minimize_minor_model(&m, &hb, &gb, ModelKind::Plain).unwrap();
        assert!(is_valid_model(&hb, &gb, &mm, ModelKind::Plain));
        assert_eq!(mm.range() & !m.range(), 0);
        for v in bits(mm.range()) {
            let (rest, _) = g.induced(mm.range() & !(1 << v));
            assert!(find_minor_model(&h, &rest).is_none());
        }
    }
}

#[test]
fn invalid_models_are_rejected() {
    let h = BoundariedGraph::plain(Graph::path(2));
    let g = BoundariedGraph::plain(Graph::path(3));
    let good = find_minor_model(&h.graph, &g.graph).unwrap();
    let mut bad = good.clone();
    bad.branch[1] = bad.branch[0];
    assert!(!is_valid_model(&h, &g, &bad, ModelKind::Plain));
    assert!(minimize_minor_model(&bad, &h, &g, ModelKind::Plain).is_err());
    let mut split = good;
    split.branch = vec![0b001, 0b100];
    assert!(!is_valid_model(&h, &g, &split, ModelKind::Plain));
}

#[test]
fn boundary_indices_must_match() {
    let h = BoundariedGraph::new(Graph::empty(1), vec![0], vec![1], 2).unwrap();
    let g1 = BoundariedGraph::new(Graph::path(2), vec![0, 0], vec![1, 0], 2).unwrap();
    let g2 = BoundariedGraph::new(Graph::path(2), vec![0, 0], vec![2, 0], 2).unwrap();
    assert!(is_minor(&h, &g1));
    assert!(!is_minor(&h, &g2));
    let both = BoundariedGraph::new(Graph::path(2), vec![0, 0], vec![1, 2], 2).unwrap();
    let merged = BoundariedGraph::new(Graph::empty(1), vec![0], vec![1], 2).unwrap();
    assert!(is_minor(&merged, &both));
    let k = BoundariedGraph::new(Graph::empty(1), vec![0], vec![0], 2).unwrap();
    assert!(!is_minor(&k, &BoundariedGraph::new(Graph::empty(1), vec![0], vec![1], 2).unwrap()));
}

#[test]
fn labels_flow_through_contraction() {
    let h = LabeledGraph::new(Graph::empty(1), vec![0b11]).unwrap();
    let g = LabeledGraph::new(Graph::path(3), vec![0b01, 0, 0b10]).unwrap();
    assert!(is_labeled_minor(&h, &g));
    let apart = LabeledGraph::new(Graph::empty(3), vec![0b01, 0, 0b10]).unwrap();
    assert!(!is_labeled_minor(&h, &apart));
}

#[test]
fn folio_of_an_edge() {
    // Empty graph, one vertex, two vertices, the edge.
    let f = folio(&BoundariedGraph::plain(Graph::path(2)), 2);
    assert_eq!(f.len(), 4);
    let f1 = folio(&BoundariedGraph::plain(Graph::path(2)), 1);
    assert_eq!(f1.len(), 2);
}

#[test]
fn folio_of_a_triangle() {
    // Up to isomorphism: empty, K1, 2K1, K2, 3K1, K2+K1, P3, K3.
    assert_eq!(folio(&BoundariedGraph::plain(Graph::complete(3)), 3).len(), 8);
}

#[test]
fn model_component_counts() {
    let g = Graph::from_edges(5, &[(0, 1), (0, 2), (3, 4)]).unwrap();
    let m = MinorModel {
        branch: vec![0b00011, 0b00100],
        edge_map: vec![((0, 1), (0, 2))],
    };
    assert_eq!(components_intersected(&m, &g, 0b00001), 2);
    assert_eq!(components_intersected(&m, &g, 0), 1);
}
