//! Minor models: backtracking search over connected branch sets, validation,
//! minimisation, and the folio closures.

use std::collections::{BTreeMap, HashSet};

use crate::calculus::mpcs_plus;
use crate::caps::Caps;
use crate::canon::{canonical_form, CanonicalKey};
use crate::error::{Error, Result};
use crate::graph::{bits, BoundariedGraph, Graph, LabeledGraph};

/// Branch sets `branch[u]` (bitmasks over host vertices) for every pattern vertex
/// `u`, and for every pattern edge `(a, b)` with `a < b` a host edge
/// `(x, y)` with `x` in `branch[a]` and `y` in `branch[b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    pub branch: Vec<u64>,
    pub edge_map: Vec<((usize, usize), (usize, usize))>,
}

impl MinorModel {
    pub fn range(&self) -> u64 {
        self.branch.iter().fold(0, |a, &b| a | b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Plain,
    Labeled,
    Boundaried,
}

impl ModelKind {
    fn labels(self) -> bool {
        self != ModelKind::Plain
    }

    fn boundary(self) -> bool {
        self == ModelKind::Boundaried
    }
}

/// Checks every model invariant for the given kind.
pub fn is_valid_model(h: &BoundariedGraph, g: &BoundariedGraph, m: &MinorModel, kind: ModelKind) -> bool {
    if m.branch.len() != h.n() {
        return false;
    }
    let mut seen = 0u64;
    for (u, &b) in m.branch.iter().enumerate() {
        if b == 0 || b & !g.graph.all() != 0 || b & seen != 0 || !g.graph.is_connected_in(b) {
            return false;
        }
        seen |= b;
        if kind.labels() {
            let have = bits(b).fold(0, |a, v| a | g.labels[v]);
            if h.labels[u] & !have != 0 {
                return false;
            }
        }
        if kind.boundary() {
            let idx: Vec<u32> = bits(b).map(|v| g.boundary[v]).filter(|&i| i != 0).collect();
            let ok = match h.boundary[u] {
                0 => idx.is_empty(),
                i => idx == [i],
            };
            if !ok {
                return false;
            }
        }
    }
    let h_edges = h.graph.edges();
    if m.edge_map.len() != h_edges.len() {
        return false;
    }
    h_edges.iter().zip(&m.edge_map).all(|(&e, &(he, (x, y)))| {
        he == e
            && x < g.n()
            && y < g.n()
            && g.graph.has_edge(x, y)
            && m.branch[e.0] >> x & 1 == 1
            && m.branch[e.1] >> y & 1 == 1
    })
}

fn edge_map_for(h: &Graph, g: &Graph, branch: &[u64]) -> Vec<((usize, usize), (usize, usize))> {
    h.edges()
        .into_iter()
        .map(|(a, b)| {
            let x = bits(branch[a])
                .find(|&x| g.adj(x) & branch[b] != 0)
                .expect("branch sets of adjacent pattern vertices touch");
            let y = (g.adj(x) & branch[b]).trailing_zeros() as usize;
            ((a, b), (x, y))
        })
        .collect()
}

/// Enumerates connected vertex sets containing `root` inside `allowed | root`,
/// never using vertices of `forbidden`, with at most `max` vertices. Stops as soon
/// as `f` returns true and reports whether that happened.
pub fn for_each_connected_set(
    g: &Graph,
    root: usize,
    allowed: u64,
    forbidden: u64,
    max: u32,
    f: &mut dyn FnMut(u64) -> bool,
) -> bool {
    fn rec(
        g: &Graph,
        set: u64,
        cand: u64,
        mut forb: u64,
        allowed: u64,
        max: u32,
        f: &mut dyn FnMut(u64) -> bool,
    ) -> bool {
        if f(set) {
            return true;
        }
        if set.count_ones() >= max {
            return false;
        }
        let mut cand = cand;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let next = set | 1 << v;
            let ext = cand | (g.adj(v) & allowed & !next & !forb);
            if rec(g, next, ext, forb, allowed, max, f) {
                return true;
            }
            forb |= 1 << v;
        }
        false
    }
    if max == 0 {
        return false;
    }
    let forb = forbidden & !(1 << root);
    let set = 1u64 << root;
    let cand = g.adj(root) & allowed & !forb & !set;
    rec(g, set, cand, forb | set, allowed, max, f)
}

struct Search<'a> {
    h: &'a BoundariedGraph,
    g: &'a BoundariedGraph,
    kind: ModelKind,
    order: Vec<usize>,
    pos: Vec<usize>,
    branch: Vec<u64>,
    g_boundary: u64,
}

impl<'a> Search<'a> {
    fn place(&mut self, depth: usize, free: u64) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let u = self.order[depth];
        let remaining_after = (self.order.len() - depth - 1) as u32;
        let avail = free.count_ones();
        if avail < remaining_after + 1 {
            return false;
        }
        let max = avail - remaining_after;
        let hb = if self.kind.boundary() { self.h.boundary[u] } else { 0 };
        let allowed = if self.kind.boundary() {
            free & !self.g_boundary
        } else {
            free
        };
        let placed_nbrs: Vec<usize> = bits(self.h.graph.adj(u))
            .filter(|&w| self.pos[w] < depth)
            .collect();
        let need: Vec<u64> = placed_nbrs
            .iter()
            .map(|&w| self.g.graph.neighbourhood(self.branch[w]))
            .collect();
        let want_labels = if self.kind.labels() { self.h.labels[u] } else { 0 };
        let g = self.g;

        let roots: Vec<usize>;
        if hb != 0 {
            match g.vertex_with_index(hb) {
                Some(s) if free >> s & 1 == 1 => roots = vec![s],
                _ => return false,
            }
        } else if let Some(first) = need.first() {
            roots = bits(first & allowed).collect();
        } else {
            roots = bits(allowed).collect();
        }
        let mut done_roots = 0u64;
        for r in roots {
            let forbidden = done_roots;
            done_roots |= 1 << r;
            let found = for_each_connected_set(&g.graph, r, allowed, forbidden, max, &mut |b| {
                if want_labels != 0 {
                    let have = bits(b).fold(0, |a, v| a | g.labels[v]);
                    if want_labels & !have != 0 {
                        return false;
                    }
                }
                if need.iter().any(|&n| n & b == 0) {
                    return false;
                }
                self.branch[u] = b;
                self.place(depth + 1, free & !b)
            });
            if found {
                return true;
            }
        }
        false
    }
}

fn search_order(h: &BoundariedGraph, kind: ModelKind) -> Vec<usize> {
    let n = h.n();
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    if kind.boundary() {
        let mut bs: Vec<usize> = (0..n).filter(|&v| h.boundary[v] != 0).collect();
        bs.sort_by_key(|&v| h.boundary[v]);
        for v in bs {
            order.push(v);
            placed |= 1 << v;
        }
    }
    while order.len() < n {
        let v = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| {
                (
                    (h.graph.adj(v) & placed).count_ones(),
                    h.graph.degree(v),
                    h.labels[v].count_ones(),
                    std::cmp::Reverse(v),
                )
            })
            .unwrap();
        order.push(v);
        placed |= 1 << v;
    }
    order
}

fn fast_path(h: &BoundariedGraph, g: &BoundariedGraph, host: u64, kind: ModelKind) -> Option<Option<Vec<u64>>> {
    let plain_h = h.labels.iter().all(|&l| l == 0 || !kind.labels())
        && h.boundary.iter().all(|&b| b == 0 || !kind.boundary());
    if !plain_h {
        return None;
    }
    let host = if kind.boundary() {
        host & !g.boundary_mask()
    } else {
        host
    };
    match (h.n(), h.graph.edge_count()) {
        (1, 0) => Some((host != 0).then(|| vec![1u64 << host.trailing_zeros()])),
        (2, 1) => Some(bits(host).find_map(|x| {
            let nb = g.graph.adj(x) & host;
            (nb != 0).then(|| vec![1u64 << x, 1u64 << nb.trailing_zeros()])
        })),
        (3, 3) => Some(g.graph.find_cycle_in(host).map(|c| {
            let rest = c[2..].iter().fold(0u64, |a, &v| a | 1 << v);
            vec![1u64 << c[0], 1u64 << c[1], rest]
        })),
        _ => None,
    }
}

/// Finds branch sets of `h` inside `g[host]`, or `None`.
pub(crate) fn search_within(
    h: &BoundariedGraph,
    g: &BoundariedGraph,
    host: u64,
    kind: ModelKind,
) -> Option<Vec<u64>> {
    let host = host & g.graph.all();
    if h.n() == 0 {
        return Some(Vec::new());
    }
    if h.n() > host.count_ones() as usize || h.graph.edge_count() > g.graph.edge_count_in(host) {
        return None;
    }
    if let Some(r) = fast_path(h, g, host, kind) {
        return r;
    }
    if kind.labels() {
        let have = bits(host).fold(0, |a, v| a | g.labels[v]);
        if h.labels.iter().any(|&l| l & !have != 0) {
            return None;
        }
    }
    let order = search_order(h, kind);
    let mut pos = vec![0usize; h.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut s = Search {
        h,
        g,
        kind,
        order,
        pos,
        branch: vec![0; h.n()],
        g_boundary: g.boundary_mask(),
    };
    if s.place(0, host) {
        Some(s.branch)
    } else {
        None
    }
}

pub(crate) fn model_within(
    h: &BoundariedGraph,
    g: &BoundariedGraph,
    host: u64,
    kind: ModelKind,
) -> Option<MinorModel> {
    search_within(h, g, host, kind).map(|branch| MinorModel {
        edge_map: edge_map_for(&h.graph, &g.graph, &branch),
        branch,
    })
}

pub fn find_minor_model(h: &Graph, g: &Graph) -> Option<MinorModel> {
    let (hb, gb) = (BoundariedGraph::plain(h.clone()), BoundariedGraph::plain(g.clone()));
    model_within(&hb, &gb, gb.graph.all(), ModelKind::Plain)
}

pub fn find_labeled_minor_model(h: &LabeledGraph, g: &LabeledGraph) -> Option<MinorModel> {
    let (hb, gb) = (h.to_boundaried(0), g.to_boundaried(0));
    model_within(&hb, &gb, gb.graph.all(), ModelKind::Labeled)
}

pub fn find_boundaried_labeled_minor_model(
    h: &BoundariedGraph,
    g: &BoundariedGraph,
) -> Result<Option<MinorModel>> {
    if h.t != g.t {
        return Err(Error::WidthMismatch(h.t, g.t));
    }
    Ok(model_within(h, g, g.graph.all(), ModelKind::Boundaried))
}

/// Boundaried labeled minor test that ignores the declared widths.
pub fn is_minor(h: &BoundariedGraph, g: &BoundariedGraph) -> bool {
    search_within(h, g, g.graph.all(), ModelKind::Boundaried).is_some()
}

pub fn is_labeled_minor(h: &LabeledGraph, g: &LabeledGraph) -> bool {
    search_within(&h.to_boundaried(0), &g.to_boundaried(0), g.graph.all(), ModelKind::Labeled)
        .is_some()
}

/// Shrinks a model until no model of the same pattern uses a strictly smaller range.
pub fn minimize_minor_model(
    m: &MinorModel,
    h: &BoundariedGraph,
    g: &BoundariedGraph,
    kind: ModelKind,
) -> Result<MinorModel> {
    if !is_valid_model(h, g, m, kind) {
        return Err(Error::Precondition("model is not valid for the given graphs".into()));
    }
    let mut cur = m.clone();
    'outer: loop {
        let range = cur.range();
        // Cheap local step first: drop one vertex from its branch set if that stays valid.
        for v in bits(range) {
            let u = cur.branch.iter().position(|&b| b >> v & 1 == 1).unwrap();
            let b = cur.branch[u] & !(1 << v);
            if b == 0 {
                continue;
            }
            let mut branch = cur.branch.clone();
            branch[u] = b;
            let adjacent = h.graph.edges().into_iter().all(|(a, c)| {
                g.graph.neighbourhood(branch[a]) & branch[c] != 0
            });
            if !adjacent {
                continue;
            }
            let cand = MinorModel {
                edge_map: edge_map_for(&h.graph, &g.graph, &branch),
                branch,
            };
            if is_valid_model(h, g, &cand, kind) {
                cur = cand;
                continue 'outer;
            }
        }
        for v in bits(range) {
            if let Some(next) = model_within(h, g, range & !(1 << v), kind) {
                cur = next;
                continue 'outer;
            }
        }
        return Ok(cur);
    }
}

/// Number of components of `g - x` that meet the model's range.
pub fn components_intersected(m: &MinorModel, g: &Graph, x: u64) -> usize {
    let range = m.range();
    g.components_in(g.all() & !x)
        .into_iter()
        .filter(|&c| c & range != 0)
        .count()
}

/// Canonically deduplicated set of boundaried graphs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Folio {
    pub members: BTreeMap<CanonicalKey, BoundariedGraph>,
}

impl Folio {
    pub fn insert(&mut self, g: BoundariedGraph) -> bool {
        let k = canonical_form(&g);
        if self.members.contains_key(&k) {
            false
        } else {
            self.members.insert(k, g);
            true
        }
    }

    pub fn contains(&self, g: &BoundariedGraph) -> bool {
        self.members.contains_key(&canonical_form(g))
    }

    pub fn contains_key(&self, k: &CanonicalKey) -> bool {
        self.members.contains_key(k)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &CanonicalKey> {
        self.members.keys()
    }

    pub fn graphs(&self) -> impl Iterator<Item = &BoundariedGraph> {
        self.members.values()
    }

    pub fn is_subset(&self, other: &Folio) -> bool {
        self.members.keys().all(|k| other.members.contains_key(k))
    }
}

impl FromIterator<BoundariedGraph> for Folio {
    fn from_iter<I: IntoIterator<Item = BoundariedGraph>>(iter: I) -> Self {
        let mut f = Folio::default();
        for g in iter {
            f.insert(g);
        }
        f
    }
}

/// All graphs reachable from `g` by one minor operation: deleting a vertex, an
/// edge or a label, or contracting an edge that does not join two boundary vertices.
pub fn one_step_minors(g: &BoundariedGraph) -> Vec<BoundariedGraph> {
    let mut out = Vec::new();
    for v in 0..g.n() {
        out.push(g.without(1 << v));
    }
    for (u, v) in g.graph.edges() {
        let mut d = g.clone();
        d.graph.remove_edge(u, v);
        out.push(d);
        if g.boundary[u] == 0 || g.boundary[v] == 0 {
            out.push(g.contract_edge(u, v).expect("contractible edge"));
        }
    }
    for v in 0..g.n() {
        for l in bits(g.labels[v]) {
            let mut d = g.clone();
            d.labels[v] &= !(1 << l);
            out.push(d);
        }
    }
    out
}

/// Every minor of `g` with at most `max_vertices` vertices, the empty graph included.
pub fn folio(g: &BoundariedGraph, max_vertices: usize) -> Folio {
    let mut seen: HashSet<CanonicalKey> = HashSet::new();
    let mut out = Folio::default();
    let mut stack = vec![g.clone()];
    seen.insert(canonical_form(g));
    while let Some(cur) = stack.pop() {
        for m in one_step_minors(&cur) {
            let k = canonical_form(&m);
            if seen.insert(k) {
                stack.push(m);
            }
        }
        if cur.n() <= max_vertices {
            out.insert(cur);
        }
    }
    out
}

/// Members of `mpcs_plus(q, t)` that are minors of `g`.
pub fn folio_star(g: &BoundariedGraph, q: &[LabeledGraph], t: u32, caps: &Caps) -> Result<Folio> {
    if q.iter().any(|h| !h.graph.is_connected()) {
        return Err(Error::Precondition("folio* needs connected pattern graphs".into()));
    }
    let universe = mpcs_plus(q, t, caps)?;
    Ok(universe
        .members
        .into_values()
        .filter(|m| is_minor(m, g))
        .collect())
}
