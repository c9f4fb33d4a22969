//! Simple undirected graphs on at most 64 vertices, stored as adjacency bitmasks,
//! plus the labeled and boundaried variants built on top of them.

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;
pub const MAX_LABELS: usize = 64;

/// Iterator over the set bits of a mask, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(u64);

impl Iterator for Bits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

pub fn bits(mask: u64) -> Bits {
    Bits(mask)
}

pub fn mask_of(vs: impl IntoIterator<Item = usize>) -> u64 {
    vs.into_iter().fold(0, |m, v| m | (1u64 << v))
}

pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices. Panics if `n` exceeds [`MAX_VERTICES`].
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graphs are limited to {MAX_VERTICES} vertices");
        Graph { adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::invalid(format!(
                "{n} vertices exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::invalid(format!("parallel edge ({u},{v})")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(0, n - 1);
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn all(&self) -> u64 {
        full_mask(self.n())
    }

    pub fn adj(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-loops are not allowed");
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn add_vertex(&mut self) -> usize {
        assert!(self.n() < MAX_VERTICES, "graphs are limited to {MAX_VERTICES} vertices");
        self.adj.push(0);
        self.adj.len() - 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edge_count_in(&self, mask: u64) -> usize {
        bits(mask)
            .map(|v| (self.adj[v] & mask).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges as pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for v in bits(self.adj[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    /// Neighbourhood of a vertex set, excluding the set itself.
    pub fn neighbourhood(&self, set: u64) -> u64 {
        bits(set).fold(0, |m, v| m | self.adj[v]) & !set
    }

    /// Induced subgraph on `mask`; also returns the old id of every new vertex.
    pub fn induced(&self, mask: u64) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = bits(mask).collect();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in old.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(old.len());
        for (i, &v) in old.iter().enumerate() {
            for w in bits(self.adj[v] & mask) {
                g.adj[i] |= 1 << index[w];
            }
        }
        (g, old)
    }

    pub fn without(&self, removed: u64) -> (Graph, Vec<usize>) {
        self.induced(self.all() & !removed)
    }

    pub fn component_of(&self, v: usize, mask: u64) -> u64 {
        let mut seen = 1u64 << v;
        let mut frontier = seen;
        while frontier != 0 {
            let next = self.neighbourhood(frontier) & mask & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components of `G[mask]`, ordered by smallest vertex id.
    pub fn components_in(&self, mask: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let c = self.component_of(v, mask);
            out.push(c);
            rest &= !c;
        }
        out
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        self.components_in(self.all())
            .into_iter()
            .map(|c| bits(c).collect())
            .collect()
    }

    pub fn is_connected_in(&self, mask: u64) -> bool {
        mask == 0 || self.component_of(mask.trailing_zeros() as usize, mask) == mask
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_in(self.all())
    }

    /// Contracts `{u, v}`. The merged vertex takes the smaller id, the larger id is
    /// removed and later ids shift down; the returned map sends old ids to new ids.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<(Graph, Vec<usize>)> {
        if u >= self.n() || v >= self.n() || u == v || !self.has_edge(u, v) {
            return Err(Error::invalid(format!("({u},{v}) is not an edge")));
        }
        let (keep, gone) = if u < v { (u, v) } else { (v, u) };
        let map: Vec<usize> = (0..self.n())
            .map(|x| match x.cmp(&gone) {
                std::cmp::Ordering::Less => x,
                std::cmp::Ordering::Equal => keep,
                std::cmp::Ordering::Greater => x - 1,
            })
            .collect();
        let mut g = Graph::empty(self.n() - 1);
        for (a, b) in self.edges() {
            let (x, y) = (map[a], map[b]);
            if x != y {
                g.add_edge(x, y);
            }
        }
        Ok((g, map))
    }

    /// Relabels vertices: old vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = Graph::empty(off + other.n());
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + off, v + off);
        }
        g
    }

    /// Some cycle inside `G[mask]` as a vertex sequence, preferring short ones.
    pub fn find_cycle_in(&self, mask: u64) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        for root in bits(mask) {
            // BFS tree from root; the first non-tree edge closes a short cycle through it.
            let mut parent = [usize::MAX; MAX_VERTICES];
            let mut depth = [0usize; MAX_VERTICES];
            let mut seen = 1u64 << root;
            let mut queue = vec![root];
            let mut head = 0;
            let mut found = None;
            'bfs: while head < queue.len() {
                let x = queue[head];
                head += 1;
                for y in bits(self.adj[x] & mask) {
                    if y == parent[x] {
                        continue;
                    }
                    if seen >> y & 1 == 1 {
                        found = Some((x, y));
                        break 'bfs;
                    }
                    seen |= 1 << y;
                    parent[y] = x;
                    depth[y] = depth[x] + 1;
                    queue.push(y);
                }
            }
            if let Some((mut a, mut b)) = found {
                let mut left = vec![a];
                let mut right = vec![b];
                while a != b {
                    if depth[a] >= depth[b] {
                        a = parent[a];
                        left.push(a);
                    } else {
                        b = parent[b];
                        right.push(b);
                    }
                }
                right.pop();
                right.reverse();
                left.extend(right);
                if best.as_ref().map_or(true, |c| left.len() < c.len()) {
                    best = Some(left);
                }
                if best.as_ref().map_or(false, |c| c.len() == 3) {
                    break;
                }
            }
        }
        best
    }

    pub fn is_forest_in(&self, mask: u64) -> bool {
        let comps = self.components_in(mask).len();
        self.edge_count_in(mask) + comps == mask.count_ones() as usize
    }
}

/// A graph whose vertices carry labelsets, encoded as bitmasks over label indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<u64>,
}

impl LabeledGraph {
    pub fn unlabeled(graph: Graph) -> Self {
        let n = graph.n();
        LabeledGraph {
            graph,
            labels: vec![0; n],
        }
    }

    pub fn new(graph: Graph, labels: Vec<u64>) -> Result<Self> {
        if labels.len() != graph.n() {
            return Err(Error::invalid("labelset count differs from vertex count"));
        }
        Ok(LabeledGraph { graph, labels })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Every labelset has at most `theta` labels.
    pub fn is_restricted(&self, theta: usize) -> bool {
        self.labels.iter().all(|l| l.count_ones() as usize <= theta)
    }

    pub fn label_union(&self) -> u64 {
        self.labels.iter().fold(0, |a, &l| a | l)
    }

    pub fn contract_edge(&self, u: usize, v: usize) -> Result<LabeledGraph> {
        let (graph, map) = self.graph.contract_edge(u, v)?;
        let mut labels = vec![0u64; graph.n()];
        for (old, &new) in map.iter().enumerate() {
            labels[new] |= self.labels[old];
        }
        Ok(LabeledGraph { graph, labels })
    }

    pub fn induced(&self, mask: u64) -> LabeledGraph {
        let (graph, old) = self.graph.induced(mask);
        let labels = old.iter().map(|&v| self.labels[v]).collect();
        LabeledGraph { graph, labels }
    }

    pub fn without(&self, removed: u64) -> LabeledGraph {
        self.induced(self.graph.all() & !removed)
    }

    pub fn to_boundaried(&self, t: u32) -> BoundariedGraph {
        BoundariedGraph {
            graph: self.graph.clone(),
            labels: self.labels.clone(),
            boundary: vec![0; self.n()],
            t,
        }
    }
}

/// A labeled graph with a partial injective map from vertices to `1..=t`.
/// `boundary[v] == 0` means `v` is not a boundary vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BoundariedGraph {
    pub graph: Graph,
    pub labels: Vec<u64>,
    pub boundary: Vec<u32>,
    pub t: u32,
}

impl BoundariedGraph {
    /// The graph without vertices, at width `t`.
    pub fn empty(t: u32) -> Self {
        BoundariedGraph {
            t,
            ..Default::default()
        }
    }

    pub fn plain(graph: Graph) -> Self {
        LabeledGraph::unlabeled(graph).to_boundaried(0)
    }

    pub fn new(graph: Graph, labels: Vec<u64>, boundary: Vec<u32>, t: u32) -> Result<Self> {
        if labels.len() != graph.n() || boundary.len() != graph.n() {
            return Err(Error::invalid("per-vertex data length differs from vertex count"));
        }
        let mut used = 0u64;
        for &b in &boundary {
            if b == 0 {
                continue;
            }
            if b > t {
                return Err(Error::invalid(format!("boundary index {b} exceeds width {t}")));
            }
            if b as usize > MAX_VERTICES {
                return Err(Error::invalid(format!("boundary index {b} too large")));
            }
            if used >> (b - 1) & 1 == 1 {
                return Err(Error::invalid(format!("boundary index {b} used twice")));
            }
            used |= 1 << (b - 1);
        }
        Ok(BoundariedGraph {
            graph,
            labels,
            boundary,
            t,
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn is_empty(&self) -> bool {
        self.n() == 0
    }

    pub fn boundary_mask(&self) -> u64 {
        mask_of(self.boundary.iter().enumerate().filter(|(_, &b)| b != 0).map(|(v, _)| v))
    }

    /// Bitmask of the boundary indices in use (bit `i - 1` for index `i`).
    pub fn indices_used(&self) -> u64 {
        self.boundary
            .iter()
            .filter(|&&b| b != 0)
            .fold(0, |m, &b| m | 1 << (b - 1))
    }

    pub fn vertex_with_index(&self, i: u32) -> Option<usize> {
        self.boundary.iter().position(|&b| b == i && i != 0)
    }

    pub fn labeled(&self) -> LabeledGraph {
        LabeledGraph {
            graph: self.graph.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Reinterpret at a larger width; the new indices stay undefined.
    pub fn widened(&self, t: u32) -> Self {
        assert!(t >= self.t);
        let mut g = self.clone();
        g.t = t;
        g
    }

    pub fn add_vertex(&mut self, labels: u64, boundary: u32) -> usize {
        let v = self.graph.add_vertex();
        self.labels.push(labels);
        self.boundary.push(boundary);
        v
    }

    pub fn induced(&self, mask: u64) -> BoundariedGraph {
        let (graph, old) = self.graph.induced(mask);
        BoundariedGraph {
            graph,
            labels: old.iter().map(|&v| self.labels[v]).collect(),
            boundary: old.iter().map(|&v| self.boundary[v]).collect(),
            t: self.t,
        }
    }

    pub fn without(&self, removed: u64) -> BoundariedGraph {
        self.induced(self.graph.all() & !removed)
    }

    /// Contraction under the boundary rules: an edge between two boundary vertices
    /// is rejected, otherwise the merged vertex inherits any boundary index.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<BoundariedGraph> {
        if u < self.n() && v < self.n() && self.boundary[u] != 0 && self.boundary[v] != 0 {
            return Err(Error::invalid("edges between boundary vertices cannot be contracted"));
        }
        let (graph, map) = self.graph.contract_edge(u, v)?;
        let mut labels = vec![0u64; graph.n()];
        let mut boundary = vec![0u32; graph.n()];
        for (old, &new) in map.iter().enumerate() {
            labels[new] |= self.labels[old];
            boundary[new] = boundary[new].max(self.boundary[old]);
        }
        Ok(BoundariedGraph {
            graph,
            labels,
            boundary,
            t: self.t,
        })
    }

    /// Every connected component contains a boundary vertex.
    pub fn is_attached(&self) -> bool {
        let b = self.boundary_mask();
        self.graph
            .components_in(self.graph.all())
            .into_iter()
            .all(|c| c & b != 0)
    }
}

impl From<Graph> for BoundariedGraph {
    fn from(g: Graph) -> Self {
        BoundariedGraph::plain(g)
    }
}

impl From<LabeledGraph> for BoundariedGraph {
    fn from(g: LabeledGraph) -> Self {
        g.to_boundaried(0)
    }
}
