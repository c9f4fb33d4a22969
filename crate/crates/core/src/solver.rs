//! Exact F-Deletion on small graphs by branching on minor-model vertex sets,
//! with exhaustive subset search kept as an independent reference.

use crate::caps::Caps;
use crate::error::{check_cap, Error, Result};
use crate::family::ForbiddenFamily;
use crate::graph::{bits, mask_of, BoundariedGraph, Graph, LabeledGraph};
use crate::minor::{is_labeled_minor, is_minor, Folio};

/// A vertex set whose deletion leaves the graph free of the family.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Solution {
    pub vertices: Vec<usize>,
}

impl Solution {
    pub fn from_mask(mask: u64) -> Self {
        Solution {
            vertices: bits(mask).collect(),
        }
    }

    pub fn mask(&self) -> u64 {
        mask_of(self.vertices.iter().copied())
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

fn check_size(g: &Graph, caps: &Caps) -> Result<()> {
    check_cap("exact solver input", caps.max_bruteforce_vertices, g.n())
}

/// Whether some set of at most `budget` vertices outside `protected` hits every
/// model inside `g[host]`.
fn solvable(g: &Graph, f: &ForbiddenFamily, host: u64, budget: usize, protected: u64) -> bool {
    let Some(range) = f.obstruction_in(g, host) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    bits(range & !protected).any(|v| solvable(g, f, host & !(1 << v), budget - 1, protected))
}

/// Minimum number of deletions inside `g[host]`, avoiding `protected`; `None` if
/// no deletion set avoiding `protected` works.
fn opt_within(g: &Graph, f: &ForbiddenFamily, host: u64, protected: u64) -> Option<usize> {
    if !f.is_free_in(g, host & protected) {
        return None;
    }
    let free = (host & !protected).count_ones() as usize;
    (0..=free).find(|&k| solvable(g, f, host, k, protected))
}

/// Lexicographically smallest minimum solution inside `g[host]`.
fn lex_min_solution(g: &Graph, f: &ForbiddenFamily, host: u64, size: usize) -> u64 {
    let mut y = 0u64;
    let mut left = size;
    for v in bits(host) {
        if left == 0 {
            break;
        }
        if solvable(g, f, host & !y & !(1 << v), left - 1, 0) {
            y |= 1 << v;
            left -= 1;
        }
    }
    y
}

/// Size of a minimum solution and the lexicographically smallest one.
pub fn opt_f(g: &Graph, f: &ForbiddenFamily, caps: &Caps) -> Result<(usize, Solution)> {
    check_size(g, caps)?;
    let size = opt_within(g, f, g.all(), 0).expect("deleting everything always works");
    Ok((size, Solution::from_mask(lex_min_solution(g, f, g.all(), size))))
}

/// Minimum solution size of `g[host]`; no cap check, callers bound the host.
pub(crate) fn opt_size_in(g: &Graph, f: &ForbiddenFamily, host: u64) -> usize {
    opt_within(g, f, host, 0).expect("deleting everything always works")
}

fn enumerate(
    g: &Graph,
    f: &ForbiddenFamily,
    host: u64,
    budget: usize,
    protected: u64,
    deleted: u64,
    out: &mut Vec<u64>,
) {
    let Some(range) = f.obstruction_in(g, host) else {
        out.push(deleted);
        return;
    };
    if budget == 0 {
        return;
    }
    let mut prot = protected;
    for v in bits(range & !protected) {
        enumerate(g, f, host & !(1 << v), budget - 1, prot, deleted | 1 << v, out);
        prot |= 1 << v;
    }
}

/// Minimum solutions of `g[host]` as masks in ascending lexicographic order.
pub(crate) fn optsols_in(g: &Graph, f: &ForbiddenFamily, host: u64) -> Vec<u64> {
    let size = opt_size_in(g, f, host);
    let mut out = Vec::new();
    enumerate(g, f, host, size, 0, 0, &mut out);
    out.sort_by_key(|&m| bits(m).collect::<Vec<_>>());
    out
}

/// Every minimum solution, each exactly once, in lexicographic order.
pub fn optsol_enum(g: &Graph, f: &ForbiddenFamily, caps: &Caps) -> Result<Vec<Solution>> {
    check_size(g, caps)?;
    let sols = optsols_in(g, f, g.all());
    check_cap("optimal solution count", caps.max_set_size, sols.len())?;
    Ok(sols.into_iter().map(Solution::from_mask).collect())
}

/// Subsets of `0..n` in order of size, then lexicographically.
fn subsets_by_size(n: usize, avoid: u64, f: &mut dyn FnMut(u64) -> bool) {
    let free: Vec<usize> = (0..n).filter(|&v| avoid >> v & 1 == 0).collect();
    for k in 0..=free.len() {
        let mut stop = false;
        crate::calculus::for_each_subset_of_size(free.len(), k, &mut |sub| {
            let y = mask_of(bits(sub).map(|i| free[i]));
            stop = f(y);
            !stop
        });
        if stop {
            return;
        }
    }
}

/// Minimum solution by trying all subsets in order of size.
pub fn opt_f_bruteforce(g: &Graph, f: &ForbiddenFamily, caps: &Caps) -> Result<(usize, Solution)> {
    check_size(g, caps)?;
    let mut best = None;
    subsets_by_size(g.n(), 0, &mut |y| {
        if f.is_free_in(g, g.all() & !y) {
            best = Some(y);
            true
        } else {
            false
        }
    });
    let y = best.expect("deleting everything always works");
    Ok((y.count_ones() as usize, Solution::from_mask(y)))
}

/// All minimum solutions found by trying every subset of the optimum size.
pub fn optsol_enum_bruteforce(g: &Graph, f: &ForbiddenFamily, caps: &Caps) -> Result<Vec<Solution>> {
    let (size, _) = opt_f_bruteforce(g, f, caps)?;
    let mut out = Vec::new();
    crate::calculus::for_each_subset_of_size(g.n(), size, &mut |y| {
        if f.is_free_in(g, g.all() & !y) {
            out.push(Solution::from_mask(y));
        }
        true
    });
    Ok(out)
}

/// Some minimum solution of `c` after which no member of `q` is a labeled minor,
/// the lexicographically smallest such one; `None` if every minimum solution
/// leaves a `q`-minor.
pub fn exists_optsol_breaking(
    c: &LabeledGraph,
    f: &ForbiddenFamily,
    q: &[LabeledGraph],
    caps: &Caps,
) -> Result<Option<Solution>> {
    for y in optsol_enum(&c.graph, f, caps)? {
        let rest = c.without(y.mask());
        if !q.iter().any(|h| is_labeled_minor(h, &rest)) {
            return Ok(Some(y));
        }
    }
    Ok(None)
}

/// Minimum solution avoiding the protected set `s` (the boundary of `g`) that also
/// leaves no member of `pi` as a boundaried minor; `None` when none exists.
pub fn opt_f_constrained(
    g: &BoundariedGraph,
    f: &ForbiddenFamily,
    pi: &Folio,
    s: u64,
    caps: &Caps,
) -> Result<Option<(usize, Solution)>> {
    check_size(&g.graph, caps)?;
    if s != g.boundary_mask() {
        return Err(Error::Precondition(
            "the protected set must be the boundary of the graph".into(),
        ));
    }
    let mut best = None;
    subsets_by_size(g.n(), s, &mut |y| {
        if !f.is_free_in(&g.graph, g.graph.all() & !y) {
            return false;
        }
        let rest = g.without(y);
        if pi.graphs().any(|p| is_minor(p, &rest)) {
            return false;
        }
        best = Some(y);
        true
    });
    Ok(best.map(|y| (y.count_ones() as usize, Solution::from_mask(y))))
}
