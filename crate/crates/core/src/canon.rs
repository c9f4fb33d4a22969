//! Canonical labelling of boundaried labeled graphs by colour refinement and
//! individualisation, keeping the lexicographically smallest leaf encoding.
//!
//! The key covers vertices, edges, labelsets and boundary indices but not the
//! declared width, so a graph and its widened copy share a key.

use std::fmt;

use crate::graph::{bits, BoundariedGraph, Graph, LabeledGraph};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

struct Canon<'a> {
    g: &'a Graph,
    labels: &'a [u64],
    boundary: &'a [u32],
    best: Option<(Vec<u8>, Vec<usize>)>,
}

fn rank<T: Ord + Clone>(sig: &[T]) -> (Vec<usize>, usize) {
    let mut sorted: Vec<T> = sig.to_vec();
    sorted.sort();
    sorted.dedup();
    let colors = sig
        .iter()
        .map(|s| sorted.binary_search(s).unwrap())
        .collect();
    (colors, sorted.len())
}

impl<'a> Canon<'a> {
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let n = colors.len();
        let mut classes = {
            let mut c = colors.clone();
            c.sort();
            c.dedup();
            c.len()
        };
        loop {
            let sig: Vec<(usize, Vec<usize>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<usize> = bits(self.g.adj(v)).map(|w| colors[w]).collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let (next, k) = rank(&sig);
            colors = next;
            if k == classes {
                return colors;
            }
            classes = k;
        }
    }

    fn encode(&self, colors: &[usize]) -> (Vec<u8>, Vec<usize>) {
        let n = colors.len();
        let mut order = vec![0usize; n];
        for (v, &c) in colors.iter().enumerate() {
            order[c] = v;
        }
        let mut out = Vec::with_capacity(1 + n * 9 + n * n / 16 + 1);
        out.push(n as u8);
        for &v in &order {
            out.push(self.boundary[v] as u8);
            out.extend_from_slice(&self.labels[v].to_be_bytes());
        }
        let mut acc = 0u8;
        let mut used = 0;
        for i in 0..n {
            for j in i + 1..n {
                acc = acc << 1 | self.g.has_edge(order[i], order[j]) as u8;
                used += 1;
                if used == 8 {
                    out.push(acc);
                    acc = 0;
                    used = 0;
                }
            }
        }
        if used > 0 {
            out.push(acc << (8 - used));
        }
        (out, order)
    }

    fn search(&mut self, colors: Vec<usize>) {
        let colors = self.refine(colors);
        let n = colors.len();
        let mut size = vec![0usize; n];
        for &c in &colors {
            size[c] += 1;
        }
        let target = (0..n).find(|&c| size[c] > 1);
        let Some(target) = target else {
            let leaf = self.encode(&colors);
            if self.best.as_ref().map_or(true, |b| leaf.0 < b.0) {
                self.best = Some(leaf);
            }
            return;
        };
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            let twin = tried.iter().any(|&u| {
                self.g.adj(u) & !(1 << v) == self.g.adj(v) & !(1 << u)
            });
            if twin {
                continue;
            }
            tried.push(v);
            let split: Vec<(usize, bool)> = (0..n).map(|x| (colors[x], x != v)).collect();
            let (next, _) = rank(&split);
            self.search(next);
        }
    }
}

fn run(g: &Graph, labels: &[u64], boundary: &[u32]) -> (Vec<u8>, Vec<usize>) {
    let n = g.n();
    if n == 0 {
        return (vec![0], vec![]);
    }
    let init: Vec<(u32, u64, usize)> = (0..n)
        .map(|v| (boundary[v], labels[v], g.degree(v)))
        .collect();
    let (colors, _) = rank(&init);
    let mut c = Canon {
        g,
        labels,
        boundary,
        best: None,
    };
    c.search(colors);
    c.best.unwrap()
}

/// Key identifying a boundaried labeled graph up to isomorphism preserving
/// labelsets and boundary indices.
pub fn canonical_form(g: &BoundariedGraph) -> CanonicalKey {
    CanonicalKey(run(&g.graph, &g.labels, &g.boundary).0)
}

pub fn canonical_form_labeled(g: &LabeledGraph) -> CanonicalKey {
    CanonicalKey(run(&g.graph, &g.labels, &vec![0; g.n()]).0)
}

pub fn canonical_form_plain(g: &Graph) -> CanonicalKey {
    let n = g.n();
    CanonicalKey(run(g, &vec![0; n], &vec![0; n]).0)
}

/// The isomorphic copy of `g` whose vertex order is the canonical one.
pub fn canonical_representative(g: &BoundariedGraph) -> (CanonicalKey, BoundariedGraph) {
    let (key, order) = run(&g.graph, &g.labels, &g.boundary);
    let mut perm = vec![0usize; g.n()];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i;
    }
    let rep = BoundariedGraph {
        graph: g.graph.permute(&perm),
        labels: order.iter().map(|&v| g.labels[v]).collect(),
        boundary: order.iter().map(|&v| g.boundary[v]).collect(),
        t: g.t,
    };
    (CanonicalKey(key), rep)
}
