#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use tdkern::graph::{BoundariedGraph, Graph, LabeledGraph};

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    loop {
        let g = random_graph(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

/// Random `t`-boundaried graph with up to `max_n` vertices over `labels` labels.
pub fn random_boundaried<R: Rng>(rng: &mut R, max_n: usize, t: u32, labels: usize, p_label: f64) -> BoundariedGraph {
    let n = rng.gen_range(0..=max_n);
    let g = random_graph(rng, n, 0.45);
    let lab = (0..n)
        .map(|_| (0..labels).filter(|_| rng.gen_bool(p_label)).fold(0u64, |a, l| a | 1 << l))
        .collect();
    let mut idx: Vec<u32> = (1..=t).collect();
    idx.shuffle(rng);
    let mut boundary = vec![0u32; n];
    let mut verts: Vec<usize> = (0..n).collect();
    verts.shuffle(rng);
    for (&v, &i) in verts.iter().zip(idx.iter()) {
        if rng.gen_bool(0.7) {
            boundary[v] = i;
        }
    }
    BoundariedGraph::new(g, lab, boundary, t).unwrap()
}

pub fn random_labeled<R: Rng>(rng: &mut R, n: usize, labels: usize, p_label: f64) -> LabeledGraph {
    random_boundaried_fixed(rng, n, 0, labels, p_label).labeled()
}

fn random_boundaried_fixed<R: Rng>(rng: &mut R, n: usize, t: u32, labels: usize, p_label: f64) -> BoundariedGraph {
    loop {
        let g = random_boundaried(rng, n, t, labels, p_label);
        if g.n() == n {
            return g;
        }
    }
}

pub fn relabel<R: Rng>(rng: &mut R, g: &BoundariedGraph) -> BoundariedGraph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    let mut labels = vec![0; g.n()];
    let mut boundary = vec![0; g.n()];
    for v in 0..g.n() {
        labels[perm[v]] = g.labels[v];
        boundary[perm[v]] = g.boundary[v];
    }
    BoundariedGraph::new(g.graph.permute(&perm), labels, boundary, g.t).unwrap()
}
