//! Seeded instance generators and small fixture families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{mask_of, Graph, LabeledGraph, MAX_VERTICES};
use crate::kernel::Instance;

/// Triangles `{a_i, b_i, c_i}` (vertices `3i, 3i+1, 3i+2`) chained by the edges `b_i a_{i+1}`.
pub fn path_of_triangles(t: usize) -> Result<Graph> {
    if t < 1 || 3 * t > MAX_VERTICES {
        return Err(Error::invalid(format!("triangle count {t} out of range")));
    }
    let mut g = Graph::empty(3 * t);
    for i in 0..t {
        let (a, b, c) = (3 * i, 3 * i + 1, 3 * i + 2);
        g.add_edge(a, b);
        g.add_edge(b, c);
        g.add_edge(a, c);
        if i + 1 < t {
            g.add_edge(b, 3 * (i + 1));
        }
    }
    Ok(g)
}

/// [`path_of_triangles`] plus a vertex `z = 3t` adjacent to `a_1` and `b_t`.
pub fn clause_gadget(t: usize) -> Result<Graph> {
    if t < 1 || 3 * t + 1 > MAX_VERTICES {
        return Err(Error::invalid(format!("clause gadget size {t} out of range")));
    }
    let mut g = path_of_triangles(t)?;
    let z = g.add_vertex();
    g.add_edge(z, 0);
    g.add_edge(z, 3 * t - 2);
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub modulator_size: usize,
    pub components: usize,
    pub component_size_min: usize,
    pub component_size_max: usize,
    pub eta: usize,
    /// Edge probability inside the modulator.
    pub p_modulator: f64,
    /// Edge probability between a modulator vertex and a component vertex.
    pub p_cross: f64,
    /// Probability of each extra ancestor-descendant edge inside a component.
    pub p_component: f64,
    /// Budget; drawn from `0..=n/2` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

const RESAMPLE_LIMIT: usize = 1000;

/// Random instance: modulator vertices first, then components built as random
/// rooted trees of depth at most `eta` with extra ancestor-descendant edges.
pub fn random_modulated(cfg: &GeneratorConfig) -> Result<Instance> {
    if cfg.component_size_min == 0 || cfg.component_size_min > cfg.component_size_max || cfg.eta == 0 {
        return Err(Error::invalid("component sizes and eta must be positive and ordered"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..RESAMPLE_LIMIT {
        let sizes: Vec<usize> = (0..cfg.components)
            .map(|_| rng.gen_range(cfg.component_size_min..=cfg.component_size_max))
            .collect();
        let n = cfg.modulator_size + sizes.iter().sum::<usize>();
        if n > MAX_VERTICES {
            return Err(Error::invalid(format!("generated graph would have {n} vertices")));
        }
        let mut g = Graph::empty(n);
        let m = cfg.modulator_size;
        for u in 0..m {
            for v in u + 1..m {
                if rng.gen_bool(cfg.p_modulator) {
                    g.add_edge(u, v);
                }
            }
        }
        let mut next = m;
        for &s in &sizes {
            let base = next;
            // parent[i] and depth[i] for the i-th vertex of this component
            let mut parent: Vec<Option<usize>> = Vec::with_capacity(s);
            let mut depth: Vec<usize> = Vec::with_capacity(s);
            for i in 0..s {
                let open: Vec<usize> = (0..i).filter(|&j| depth[j] < cfg.eta).collect();
                if open.is_empty() {
                    parent.push(None);
                    depth.push(1);
                } else {
                    let p = open[rng.gen_range(0..open.len())];
                    parent.push(Some(p));
                    depth.push(depth[p] + 1);
                    g.add_edge(base + i, base + p);
                    let mut a = parent[p];
                    while let Some(anc) = a {
                        if rng.gen_bool(cfg.p_component) {
                            g.add_edge(base + i, base + anc);
                        }
                        a = parent[anc];
                    }
                }
            }
            for v in base..base + s {
                for x in 0..m {
                    if rng.gen_bool(cfg.p_cross) {
                        g.add_edge(v, x);
                    }
                }
            }
            next += s;
        }
        let k = cfg.k.unwrap_or_else(|| rng.gen_range(0..=n / 2));
        if let Ok(inst) = Instance::new(g, mask_of(0..m), k, cfg.eta) {
            return Ok(inst);
        }
    }
    Err(Error::invalid("resample limit reached"))
}

/// Modulator of `n_mod` vertices plus `comps` clause gadgets of size `q`, each
/// gadget vertex joined to each modulator vertex with probability 1/4.
/// The budget is `n_mod` plus one deletion per triangle.
pub fn lowerbound_layout(n_mod: usize, q: usize, comps: usize, seed: u64) -> Result<Instance> {
    if q < 1 {
        return Err(Error::invalid("gadget size must be positive"));
    }
    let gadget = clause_gadget(q)?;
    let n = n_mod + comps * gadget.n();
    if n > MAX_VERTICES {
        return Err(Error::invalid(format!("layout would have {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for c in 0..comps {
        let base = n_mod + c * gadget.n();
        for (u, v) in gadget.edges() {
            g.add_edge(base + u, base + v);
        }
        for v in 0..gadget.n() {
            for x in 0..n_mod {
                if rng.gen_bool(0.25) {
                    g.add_edge(base + v, x);
                }
            }
        }
    }
    let eta = layout_eta(q);
    Instance::new(g, mask_of(0..n_mod), n_mod + comps * q, eta)
}

/// `ceil(log2 q) + 4`.
pub fn layout_eta(q: usize) -> usize {
    let mut r = 0;
    while (1usize << r) < q {
        r += 1;
    }
    r + 4
}

/// A labeled graph and a family of labeled patterns over its labels.
pub type Fixture = (LabeledGraph, Vec<LabeledGraph>);

fn singleton(labels: u64) -> LabeledGraph {
    LabeledGraph::new(Graph::empty(1), vec![labels]).expect("valid")
}

/// A path of `n` triangles with a pendant vertex at each end (on `a_1` and
/// `b_n`); the third vertex of triangle `i` carries label `i`. The family is the
/// `n` one-label singletons. Every minimum vertex cover keeps some labeled
/// vertex, and for each `i` one of them keeps only label `i`.
pub fn triangle_chain_cover_fixture(n: usize) -> Result<Fixture> {
    let mut g = path_of_triangles(n)?;
    let s = g.add_vertex();
    let e = g.add_vertex();
    g.add_edge(s, 0);
    g.add_edge(e, 3 * n - 2);
    let mut labels = vec![0u64; g.n()];
    for i in 0..n {
        labels[3 * i + 2] = 1 << i;
    }
    let q = (0..n).map(|i| singleton(1 << i)).collect();
    Ok((LabeledGraph::new(g, labels)?, q))
}

/// A hub joined to two vertices `u_i, v_i` of each of `n` triangles
/// `{u_i, v_i, w_i}`; `u_i` carries label `2i` and `v_i` label `2i + 1`. The
/// family has the two-label singletons pairing consecutive gadgets across sides
/// and the wrap-around pairs `{u_n, u_1}`, `{v_n, v_1}`: `2n` members, all needed.
pub fn hub_triangles_fixture(n: usize) -> Result<Fixture> {
    if n < 2 || 3 * n + 1 > MAX_VERTICES {
        return Err(Error::invalid("hub fixture needs at least two triangles"));
    }
    let mut g = Graph::empty(3 * n + 1);
    let hub = 3 * n;
    let mut labels = vec![0u64; g.n()];
    for i in 0..n {
        let (u, v, w) = (3 * i, 3 * i + 1, 3 * i + 2);
        g.add_edge(u, v);
        g.add_edge(v, w);
        g.add_edge(u, w);
        g.add_edge(hub, u);
        g.add_edge(hub, v);
        labels[u] = 1 << (2 * i);
        labels[v] = 1 << (2 * i + 1);
    }
    let a = |i: usize| 1u64 << (2 * i);
    let b = |i: usize| 1u64 << (2 * i + 1);
    let mut q = Vec::new();
    for i in 0..n - 1 {
        q.push(singleton(a(i) | b(i + 1)));
        q.push(singleton(b(i) | a(i + 1)));
    }
    q.push(singleton(a(n - 1) | a(0)));
    q.push(singleton(b(n - 1) | b(0)));
    Ok((LabeledGraph::new(g, labels)?, q))
}

/// A matching `u_i v_i` with `u_i` labeled `{x_i, y_i}` and `v_i` labeled
/// `{x_i, z_i}` (labels `3i, 3i+1, 3i+2`), and every two-label singleton over
/// the `3n` labels as the family.
pub fn matching_saturated_fixture(n: usize) -> Result<Fixture> {
    if n < 1 || 2 * n > MAX_VERTICES {
        return Err(Error::invalid("matching fixture size out of range"));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (2 * i, 2 * i + 1)).collect();
    let g = Graph::from_edges(2 * n, &edges)?;
    let mut labels = vec![0u64; 2 * n];
    for i in 0..n {
        labels[2 * i] = 1 << (3 * i) | 1 << (3 * i + 1);
        labels[2 * i + 1] = 1 << (3 * i) | 1 << (3 * i + 2);
    }
    let l = 3 * n;
    let mut q = Vec::new();
    for a in 0..l {
        for b in a + 1..l {
            q.push(singleton(1 << a | 1 << b));
        }
    }
    Ok((LabeledGraph::new(g, labels)?, q))
}
