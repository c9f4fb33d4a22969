//! Exact treedepth by memoised recursion over connected vertex subsets.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

/// Rooted forest over the vertex set; `parent[v] == None` marks a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreedepthDecomposition {
    pub parent: Vec<Option<usize>>,
    pub depth: usize,
}

impl TreedepthDecomposition {
    fn ancestors(&self, mut v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while let Some(p) = self.parent[v] {
            out.push(p);
            v = p;
        }
        out
    }

    /// Checks that every edge joins an ancestor-descendant pair and that `depth`
    /// is the number of vertices on the longest root-to-leaf path.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        if self.parent.len() != g.n() {
            return false;
        }
        let mut longest = 0;
        for v in 0..g.n() {
            let anc = self.ancestors(v);
            if anc.len() >= g.n() {
                return false;
            }
            longest = longest.max(anc.len() + 1);
        }
        if longest != self.depth {
            return false;
        }
        g.edges().into_iter().all(|(u, v)| {
            self.ancestors(u).contains(&v) || self.ancestors(v).contains(&u)
        })
    }
}

/// Memoised treedepth evaluator over subsets of one host graph.
pub struct TreedepthSolver<'a> {
    g: &'a Graph,
    memo: HashMap<u64, (u8, u8)>,
}

impl<'a> TreedepthSolver<'a> {
    pub fn new(g: &'a Graph) -> Self {
        TreedepthSolver {
            g,
            memo: HashMap::new(),
        }
    }

    /// Treedepth of `G[mask]`.
    pub fn of(&mut self, mask: u64) -> usize {
        self.g
            .components_in(mask)
            .into_iter()
            .map(|c| self.connected(c).0 as usize)
            .max()
            .unwrap_or(0)
    }

    fn connected(&mut self, c: u64) -> (u8, u8) {
        if c.count_ones() == 1 {
            return (1, c.trailing_zeros() as u8);
        }
        if let Some(&r) = self.memo.get(&c) {
            return r;
        }
        let mut order: Vec<usize> = bits(c).collect();
        order.sort_by_key(|&v| std::cmp::Reverse((self.g.adj(v) & c).count_ones()));
        let mut best = (u8::MAX, 0u8);
        for v in order {
            let rest = c & !(1 << v);
            let mut worst = 0u8;
            for comp in self.g.components_in(rest) {
                if worst + 1 >= best.0 {
                    break;
                }
                worst = worst.max(self.connected(comp).0);
            }
            let cand = worst + 1;
            if cand < best.0 {
                best = (cand, v as u8);
            }
            if best.0 == 2 {
                break;
            }
        }
        self.memo.insert(c, best);
        best
    }

    fn build(&mut self, mask: u64, parent: Option<usize>, out: &mut Vec<Option<usize>>) {
        for comp in self.g.components_in(mask) {
            let (_, root) = self.connected(comp);
            let root = root as usize;
            out[root] = parent;
            self.build(comp & !(1 << root), Some(root), out);
        }
    }

    pub fn decomposition(&mut self, mask: u64) -> TreedepthDecomposition {
        let mut parent = vec![None; self.g.n()];
        self.build(mask, None, &mut parent);
        TreedepthDecomposition {
            parent,
            depth: self.of(mask),
        }
    }
}

pub fn treedepth(g: &Graph) -> (usize, TreedepthDecomposition) {
    let mut s = TreedepthSolver::new(g);
    let d = s.decomposition(g.all());
    (d.depth, d)
}

pub fn treedepth_value(g: &Graph) -> usize {
    TreedepthSolver::new(g).of(g.all())
}

/// Smallest vertex whose removal lowers the treedepth of a connected graph.
pub fn td_decreasing_vertex(g: &Graph) -> Result<usize> {
    if g.n() < 2 || !g.is_connected() {
        return Err(Error::Precondition(
            "treedepth-decreasing vertex needs a connected graph with at least two vertices"
                .into(),
        ));
    }
    let mut s = TreedepthSolver::new(g);
    let td = s.of(g.all());
    (0..g.n())
        .find(|&v| s.of(g.all() & !(1 << v)) < td)
        .ok_or_else(|| Error::Precondition("no treedepth-decreasing vertex found".into()))
}
