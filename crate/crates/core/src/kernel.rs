//! Component marking and pruning relative to a treedepth modulator, and the
//! recursive kernelization built on it.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form_labeled, CanonicalKey};
use crate::caps::Caps;
use crate::error::{check_cap, Error, Result};
use crate::family::ForbiddenFamily;
use crate::graph::{bits, full_mask, mask_of, Graph, LabeledGraph};
use crate::minor::{is_labeled_minor, one_step_minors, for_each_connected_set};
use crate::solver::{opt_size_in, optsols_in};
use crate::treedepth::{td_decreasing_vertex, TreedepthSolver};

/// A graph with a modulator `X` (bitmask) such that `td(G - X) <= eta`, and a budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub modulator: u64,
    pub k: usize,
    pub eta: usize,
}

impl Instance {
    pub fn new(graph: Graph, modulator: u64, k: usize, eta: usize) -> Result<Self> {
        let inst = Instance {
            graph,
            modulator,
            k,
            eta,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.modulator & !self.graph.all() != 0 {
            return Err(Error::invalid("modulator contains a vertex outside the graph"));
        }
        let td = TreedepthSolver::new(&self.graph).of(self.graph.all() & !self.modulator);
        if td > self.eta {
            return Err(Error::invalid(format!(
                "treedepth of the graph minus the modulator is {td}, above eta = {}",
                self.eta
            )));
        }
        Ok(())
    }

    pub fn modulator_vertices(&self) -> Vec<usize> {
        bits(self.modulator).collect()
    }

    /// Components of `G - X` in ascending order of their smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        self.graph.components_in(self.graph.all() & !self.modulator)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MarkingParameters {
    pub gamma: usize,
    pub rho: usize,
    pub tau: usize,
}

impl MarkingParameters {
    pub fn new(gamma: usize, modulator_size: usize, f: &ForbiddenFamily) -> Result<Self> {
        if gamma == 0 {
            return Err(Error::invalid("gamma must be positive"));
        }
        let rho = modulator_size + f.max_size();
        Ok(MarkingParameters {
            gamma,
            rho,
            tau: modulator_size + 1 + gamma * rho,
        })
    }
}

/// The component `c` of `g - x` with every vertex labeled by its neighbours in `x`;
/// label `i` stands for the `i`-th smallest vertex of `x`.
pub fn labeled_view(c: u64, g: &Graph, x: u64) -> LabeledGraph {
    let xs: Vec<usize> = bits(x).collect();
    let (graph, old) = g.induced(c);
    let labels = old
        .iter()
        .map(|&v| mask_of(xs.iter().enumerate().filter(|&(_, &w)| g.has_edge(v, w)).map(|(i, _)| i)))
        .collect();
    LabeledGraph::new(graph, labels).expect("labels fit")
}

fn is_fragment(h: &LabeledGraph, f: &ForbiddenFamily) -> bool {
    h.n() > 0 && h.graph.is_connected() && h.graph.edge_count() <= f.m_f() && h.is_restricted(f.norm())
}

/// All connected `norm(F)`-restricted graphs over `x_size` labels with at most
/// `m_F` edges, one per isomorphism class, ordered by canonical key.
pub fn enumerate_fragments(x_size: usize, f: &ForbiddenFamily, caps: &Caps) -> Result<Vec<LabeledGraph>> {
    let m = f.m_f();
    let labelsets: Vec<u64> = (0..1u64 << x_size)
        .filter(|s| s.count_ones() as usize <= f.norm())
        .collect();
    let mut raw = 0usize;
    for n in 1..=m + 1 {
        let pairs = n * (n - 1) / 2;
        let shapes = 1usize.checked_shl(pairs as u32).unwrap_or(usize::MAX);
        let labelings = labelsets.len().checked_pow(n as u32).unwrap_or(usize::MAX);
        raw = raw.saturating_add(shapes.saturating_mul(labelings));
    }
    check_cap("raw fragment enumeration", caps.max_set_size, raw)?;
    let mut out: HashMap<CanonicalKey, LabeledGraph> = HashMap::new();
    for n in 1..=m + 1 {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for emask in 0u64..1 << pairs.len() {
            if emask.count_ones() as usize > m {
                continue;
            }
            let mut g = Graph::empty(n);
            for i in bits(emask) {
                g.add_edge(pairs[i].0, pairs[i].1);
            }
            if !g.is_connected() {
                continue;
            }
            let mut idx = vec![0usize; n];
            loop {
                let lg = LabeledGraph::new(g.clone(), idx.iter().map(|&i| labelsets[i]).collect())?;
                out.entry(canonical_form_labeled(&lg)).or_insert(lg);
                let mut i = 0;
                while i < n {
                    idx[i] += 1;
                    if idx[i] < labelsets.len() {
                        break;
                    }
                    idx[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
            check_cap("fragment universe", caps.max_fragment_universe, out.len())?;
        }
    }
    let mut v: Vec<(CanonicalKey, LabeledGraph)> = out.into_iter().collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(v.into_iter().map(|(_, g)| g).collect())
}

/// Upper bound on the fragment universe size, as a float.
pub fn fragment_universe_bound(x_size: usize, f: &ForbiddenFamily) -> f64 {
    let m = f.m_f() as f64;
    2f64.powf((m + 1.0) * (m + 1.0)) * (x_size as f64 + 1.0).powf(f.norm() as f64 * (m + 1.0))
}

/// Per-component data needed by the marking decision.
struct ComponentData {
    view: LabeledGraph,
    /// Minimum solutions as masks over the vertices of `view`.
    optsols: Vec<u64>,
    /// Some minimum solution deletes the whole component.
    emptied: bool,
}

fn component_data(g: &Graph, x: u64, c: u64, f: &ForbiddenFamily) -> ComponentData {
    let view = labeled_view(c, g, x);
    let optsols = optsols_in(&view.graph, f, view.graph.all());
    let emptied = optsols.iter().any(|&y| y == view.graph.all());
    ComponentData {
        view,
        optsols,
        emptied,
    }
}

/// Maximal fragments that are minors of the connected labeled graph `d`: its
/// vertex set split into at most `m_F + 1` connected blocks, a connected spanning
/// set of quotient edges of the largest admissible size, and labelsets cut down
/// to `norm(F)` labels in every possible way.
fn generators(d: &LabeledGraph, f: &ForbiddenFamily, out: &mut Vec<LabeledGraph>) {
    let m = f.m_f();
    let mut blocks: Vec<u64> = Vec::new();
    partitions(&d.graph, d.graph.all(), m + 1, &mut blocks, &mut |blocks| {
        let p = blocks.len();
        let mut q = Graph::empty(p);
        for i in 0..p {
            for j in i + 1..p {
                if d.graph.neighbourhood(blocks[i]) & blocks[j] != 0 {
                    q.add_edge(i, j);
                }
            }
        }
        let unions: Vec<u64> = blocks.iter().map(|&b| bits(b).fold(0, |a, v| a | d.labels[v])).collect();
        let label_choices: Vec<Vec<u64>> = unions
            .iter()
            .map(|&u| {
                let ls: Vec<usize> = bits(u).collect();
                if ls.len() <= f.norm() {
                    vec![u]
                } else {
                    let mut v = Vec::new();
                    crate::calculus::for_each_subset_of_size(ls.len(), f.norm(), &mut |s| {
                        v.push(mask_of(bits(s).map(|i| ls[i])));
                        true
                    });
                    v
                }
            })
            .collect();
        let edges = q.edges();
        let take = edges.len().min(m);
        crate::calculus::for_each_subset_of_size(edges.len(), take, &mut |s| {
            let chosen: Vec<(usize, usize)> = bits(s).map(|i| edges[i]).collect();
            let sub = Graph::from_edges(p, &chosen).expect("simple");
            if !sub.is_connected() {
                return true;
            }
            let mut idx = vec![0usize; p];
            loop {
                let labels = idx.iter().zip(&label_choices).map(|(&i, c)| c[i]).collect();
                out.push(LabeledGraph::new(sub.clone(), labels).expect("labels fit"));
                let mut i = 0;
                while i < p {
                    idx[i] += 1;
                    if idx[i] < label_choices[i].len() {
                        break;
                    }
                    idx[i] = 0;
                    i += 1;
                }
                if i == p {
                    break;
                }
            }
            true
        });
    });
}

/// Calls `f` with every partition of `rest` into at most `max_blocks` connected blocks.
fn partitions(g: &Graph, rest: u64, max_blocks: usize, blocks: &mut Vec<u64>, f: &mut dyn FnMut(&[u64])) {
    if rest == 0 {
        f(blocks);
        return;
    }
    if blocks.len() == max_blocks {
        return;
    }
    let root = rest.trailing_zeros() as usize;
    let mut found = Vec::new();
    for_each_connected_set(g, root, rest, 0, rest.count_ones(), &mut |s| {
        found.push(s);
        false
    });
    for s in found {
        // Every remaining piece must still be coverable by connected blocks.
        let left = rest & !s;
        if g.components_in(left).len() + blocks.len() + 1 > max_blocks {
            continue;
        }
        blocks.push(s);
        partitions(g, left, max_blocks, blocks, f);
        blocks.pop();
    }
}

/// Fragments below the given generators, with connectedness kept at every step.
struct DownSets<'a> {
    f: &'a ForbiddenFamily,
    graphs: HashMap<CanonicalKey, LabeledGraph>,
    closure: HashMap<CanonicalKey, HashSet<CanonicalKey>>,
}

impl<'a> DownSets<'a> {
    fn new(f: &'a ForbiddenFamily) -> Self {
        DownSets {
            f,
            graphs: HashMap::new(),
            closure: HashMap::new(),
        }
    }

    fn children(&self, h: &LabeledGraph) -> Vec<LabeledGraph> {
        one_step_minors(&h.to_boundaried(0))
            .into_iter()
            .map(|b| b.labeled())
            .filter(|c| c.n() > 0 && c.graph.is_connected())
            .collect()
    }

    fn of(&mut self, top: &LabeledGraph, cap: usize) -> Result<HashSet<CanonicalKey>> {
        let k = canonical_form_labeled(top);
        if let Some(s) = self.closure.get(&k) {
            return Ok(s.clone());
        }
        let mut seen: HashSet<CanonicalKey> = HashSet::new();
        let mut stack = vec![top.clone()];
        seen.insert(k.clone());
        self.graphs.entry(k.clone()).or_insert_with(|| top.clone());
        while let Some(cur) = stack.pop() {
            for c in self.children(&cur) {
                let ck = canonical_form_labeled(&c);
                if seen.insert(ck.clone()) {
                    self.graphs.entry(ck).or_insert_with(|| c.clone());
                    stack.push(c);
                }
            }
            check_cap("fragment down-set", cap, seen.len())?;
        }
        let set: HashSet<CanonicalKey> = seen
            .into_iter()
            .filter(|k| is_fragment(&self.graphs[k], self.f))
            .collect();
        self.closure.insert(k, set.clone());
        Ok(set)
    }
}

/// Decides for each component whether it is among the first `tau` components of
/// `C_Q` for some fragment set `Q` with `1 <= |Q| <= gamma`.
///
/// Instead of ranging over all `Q`, only fragments surviving some minimum
/// solution of the component itself are considered, fragments whose
/// one-step-larger fragment survives the same solutions are skipped, and only
/// inclusion-minimal hitting sets are tried.
pub fn mark_components(
    g: &Graph,
    x: u64,
    f: &ForbiddenFamily,
    params: &MarkingParameters,
    caps: &Caps,
) -> Result<Vec<u64>> {
    check_cap("fragment subset size", caps.max_subset_gamma, params.gamma)?;
    let comps = g.components_in(g.all() & !x);
    for &c in &comps {
        check_cap("exact solver input", caps.max_bruteforce_vertices, c.count_ones() as usize)?;
    }
    let data: Vec<ComponentData> = comps.par_iter().map(|&c| component_data(g, x, c, f)).collect();
    for d in &data {
        check_cap("minimum solutions per component", 64, d.optsols.len())?;
    }
    let eligible: Vec<usize> = (0..comps.len()).filter(|&i| !data[i].emptied).collect();
    let mut marked = Vec::new();
    let mut down = DownSets::new(f);
    let mut surv_cache: HashMap<(usize, CanonicalKey), u64> = HashMap::new();
    for (pos, &i) in eligible.iter().enumerate() {
        // Q = {K1} already hits every solution of an eligible component.
        if pos < params.tau {
            marked.push(comps[i]);
            continue;
        }
        let earlier = &eligible[..pos];
        if marked_by_some_q(i, earlier, &data, f, params, caps, &mut down, &mut surv_cache)? {
            marked.push(comps[i]);
        }
    }
    marked.sort_unstable();
    Ok(marked)
}

#[allow(clippy::too_many_arguments)]
fn marked_by_some_q(
    i: usize,
    earlier: &[usize],
    data: &[ComponentData],
    f: &ForbiddenFamily,
    params: &MarkingParameters,
    caps: &Caps,
    down: &mut DownSets,
    surv_cache: &mut HashMap<(usize, CanonicalKey), u64>,
) -> Result<bool> {
    let d = &data[i];
    let nsol = d.optsols.len();
    let full = full_mask(nsol);
    // T-mask per candidate fragment: the minimum solutions it survives.
    let mut tmask: HashMap<CanonicalKey, u64> = HashMap::new();
    for (s, &y) in d.optsols.iter().enumerate() {
        let rest = d.view.without(y);
        let mut gens = Vec::new();
        for comp in rest.graph.components_in(rest.graph.all()) {
            generators(&rest.induced(comp), f, &mut gens);
        }
        for gen in &gens {
            for k in down.of(gen, caps.max_set_size)? {
                *tmask.entry(k).or_insert(0) |= 1 << s;
            }
        }
        check_cap("candidate fragments", caps.max_fragment_universe, tmask.len())?;
    }
    let mut dominated: HashSet<CanonicalKey> = HashSet::new();
    for (k, &t) in &tmask {
        for c in down.children(&down.graphs[k]) {
            let ck = canonical_form_labeled(&c);
            if tmask.get(&ck) == Some(&t) {
                dominated.insert(ck);
            }
        }
    }
    let mut useful: Vec<(CanonicalKey, u64)> = tmask
        .into_iter()
        .filter(|(k, _)| !dominated.contains(k))
        .collect();
    useful.sort();
    let mut found = false;
    for size in 1..=params.gamma.min(useful.len()) {
        crate::calculus::for_each_subset_of_size(useful.len(), size, &mut |sub| {
            let members: Vec<usize> = bits(sub).collect();
            let cover = members.iter().fold(0, |a, &j| a | useful[j].1);
            if cover != full {
                return true;
            }
            let minimal = members.iter().all(|&drop| {
                members.iter().filter(|&&j| j != drop).fold(0, |a, &j| a | useful[j].1) != full
            });
            if !minimal {
                return true;
            }
            let mut count = 0;
            for &e in earlier {
                let de = &data[e];
                let efull = full_mask(de.optsols.len());
                let mut hit = 0u64;
                for &j in &members {
                    let key = (e, useful[j].0.clone());
                    let m = *surv_cache.entry(key).or_insert_with(|| {
                        let h = &down.graphs[&useful[j].0];
                        de.optsols.iter().enumerate().fold(0u64, |a, (s, &y)| {
                            if is_labeled_minor(h, &de.view.without(y)) {
                                a | 1 << s
                            } else {
                                a
                            }
                        })
                    });
                    hit |= m;
                }
                if hit == efull {
                    count += 1;
                    if count >= params.tau {
                        return true;
                    }
                }
            }
            found = true;
            false
        });
        if found {
            break;
        }
    }
    Ok(found)
}

/// Result of one pruning step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pruned {
    /// Surviving vertices of the input graph, ascending.
    pub kept: Vec<usize>,
    pub graph: Graph,
    pub delta: usize,
    pub components_before: usize,
    pub components_kept: usize,
}

fn pruned_from(g: &Graph, x: u64, kept_comps: &[u64], delta: usize, before: usize) -> Pruned {
    let keep = kept_comps.iter().fold(x, |a, &c| a | c);
    let (graph, kept) = g.induced(keep);
    Pruned {
        kept,
        graph,
        delta,
        components_before: before,
        components_kept: kept_comps.len(),
    }
}

/// Keeps `X` and the marked components; `delta` sums the optima of the rest.
pub fn prune(g: &Graph, x: u64, f: &ForbiddenFamily, params: &MarkingParameters, caps: &Caps) -> Result<Pruned> {
    let comps = g.components_in(g.all() & !x);
    let marked = mark_components(g, x, f, params, caps)?;
    let unmarked: Vec<u64> = comps.iter().copied().filter(|c| !marked.contains(c)).collect();
    let delta: usize = unmarked.par_iter().map(|&c| opt_size_in(g, f, c)).sum();
    Ok(pruned_from(g, x, &marked, delta, comps.len()))
}

/// One component removal made by [`verified_prune`], in input vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Removal {
    pub component: u64,
    pub opt_before: usize,
    pub opt_after: usize,
    pub opt_component: usize,
}

/// Removes components one at a time, each only after checking
/// `opt(G) = opt(G - C) + opt(G[C])` exactly, until no component qualifies.
pub fn verified_prune(g: &Graph, x: u64, f: &ForbiddenFamily, caps: &Caps) -> Result<(Pruned, Vec<Removal>)> {
    check_cap("exact solver input", caps.max_bruteforce_vertices, g.n())?;
    let comps = g.components_in(g.all() & !x);
    let mut alive = g.all();
    let mut opt_alive = opt_size_in(g, f, alive);
    let mut log = Vec::new();
    let mut delta = 0;
    loop {
        let mut removed = false;
        for &c in &comps {
            if alive & c == 0 {
                continue;
            }
            let after = opt_size_in(g, f, alive & !c);
            let oc = opt_size_in(g, f, c);
            if opt_alive == after + oc {
                log.push(Removal {
                    component: c,
                    opt_before: opt_alive,
                    opt_after: after,
                    opt_component: oc,
                });
                alive &= !c;
                opt_alive = after;
                delta += oc;
                removed = true;
                break;
            }
        }
        if !removed {
            break;
        }
    }
    let kept: Vec<u64> = comps.iter().copied().filter(|&c| alive & c != 0).collect();
    Ok((pruned_from(g, x, &kept, delta, comps.len()), log))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub eta: usize,
    pub modulator_size: usize,
    pub components_before: usize,
    pub components_marked: usize,
    pub delta: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub levels: Vec<LevelReport>,
    pub total_delta: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub answer: Option<String>,
}

/// Pruning strategy used at each level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PruneMode {
    Marking { gamma: usize },
    Verified,
}

/// The reduced graph with the surviving part of the input modulator and the
/// per-level statistics; independent of the budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub graph: Graph,
    pub kept: Vec<usize>,
    pub modulator: u64,
    pub levels: Vec<LevelReport>,
    pub total_delta: usize,
}

/// Prunes at level `eta`, then for `eta > 1` adds one treedepth-decreasing vertex
/// of every component with two or more vertices to the modulator and continues
/// at `eta - 1`.
pub fn reduce(inst: &Instance, f: &ForbiddenFamily, mode: PruneMode, caps: &Caps) -> Result<Reduction> {
    let mut g = inst.graph.clone();
    let mut kept: Vec<usize> = (0..g.n()).collect();
    let mut x = inst.modulator;
    let mut levels = Vec::new();
    let mut total = 0;
    let mut eta = inst.eta.max(1);
    loop {
        let pruned = match mode {
            PruneMode::Marking { gamma } => {
                let params = MarkingParameters::new(gamma, x.count_ones() as usize, f)?;
                prune(&g, x, f, &params, caps)?
            }
            PruneMode::Verified => verified_prune(&g, x, f, caps)?.0,
        };
        levels.push(LevelReport {
            eta,
            modulator_size: x.count_ones() as usize,
            components_before: pruned.components_before,
            components_marked: pruned.components_kept,
            delta: pruned.delta,
        });
        total += pruned.delta;
        x = mask_of(pruned.kept.iter().enumerate().filter(|&(_, &v)| x >> v & 1 == 1).map(|(i, _)| i));
        kept = pruned.kept.iter().map(|&v| kept[v]).collect();
        g = pruned.graph;
        if eta <= 1 {
            break;
        }
        for c in g.components_in(g.all() & !x) {
            if c.count_ones() >= 2 {
                let (cg, old) = g.induced(c);
                x |= 1 << old[td_decreasing_vertex(&cg)?];
            }
        }
        eta -= 1;
    }
    let original_x = mask_of(
        kept.iter()
            .enumerate()
            .filter(|&(_, &v)| inst.modulator >> v & 1 == 1)
            .map(|(i, _)| i),
    );
    Ok(Reduction {
        graph: g,
        kept,
        modulator: original_x,
        levels,
        total_delta: total,
    })
}

/// The fixed instance returned when the budget is already exhausted: the first
/// forbidden graph, all of it in the modulator, with budget zero.
pub fn no_instance(f: &ForbiddenFamily, eta: usize) -> Instance {
    let h = f.members()[0].clone();
    let all = h.all();
    Instance {
        graph: h,
        modulator: all,
        k: 0,
        eta,
    }
}

/// Kernelizes an instance. A graph already free of the family gives the empty
/// yes-instance; a budget smaller than the accumulated `delta` gives [`no_instance`].
pub fn kernelize(inst: &Instance, f: &ForbiddenFamily, mode: PruneMode, caps: &Caps) -> Result<(Instance, Report)> {
    if f.is_free(&inst.graph) {
        let out = Instance {
            graph: Graph::empty(0),
            modulator: 0,
            k: inst.k,
            eta: inst.eta,
        };
        let report = Report {
            levels: Vec::new(),
            total_delta: 0,
            answer: Some("yes".into()),
        };
        return Ok((out, report));
    }
    let r = reduce(inst, f, mode, caps)?;
    let mut report = Report {
        levels: r.levels,
        total_delta: r.total_delta,
        answer: None,
    };
    if r.total_delta > inst.k {
        report.answer = Some("no".into());
        return Ok((no_instance(f, inst.eta), report));
    }
    let out = Instance {
        graph: r.graph,
        modulator: r.modulator,
        k: inst.k - r.total_delta,
        eta: inst.eta,
    };
    Ok((out, report))
}

/// Smallest modulator for `eta`, lexicographically first among those of that size.
pub fn find_modulator(g: &Graph, eta: usize, caps: &Caps) -> Result<u64> {
    check_cap("exact solver input", caps.max_bruteforce_vertices, g.n())?;
    let mut s = TreedepthSolver::new(g);
    for size in 0..=g.n() {
        let mut found = None;
        crate::calculus::for_each_subset_of_size(g.n(), size, &mut |y| {
            if s.of(g.all() & !y) <= eta {
                found = Some(y);
                false
            } else {
                true
            }
        });
        if let Some(y) = found {
            return Ok(y);
        }
    }
    unreachable!("removing every vertex leaves treedepth 0")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(name: &str) -> ForbiddenFamily {
        ForbiddenFamily::from_preset(name).unwrap()
    }

    #[test]
    fn parameters() {
        let p = MarkingParameters::new(3, 2, &fam("K3")).unwrap();
        assert_eq!(p.rho, 2 + 6);
        assert_eq!(p.tau, 2 + 1 + 3 * 8);
        assert!(MarkingParameters::new(0, 2, &fam("K3")).is_err());
    }

    #[test]
    fn labeled_view_examples() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 3), (1, 2)]).unwrap();
        let v = labeled_view(0b0011, &g, 0b1100);
        assert_eq!(v.labels, vec![0b10, 0b01]);
        let v = labeled_view(0b0011, &g, 0);
        assert_eq!(v.labels, vec![0, 0]);
    }

    #[test]
    fn fragments_for_an_edge() {
        let caps = Caps::default();
        assert_eq!(enumerate_fragments(0, &fam("K2"), &caps).unwrap().len(), 2);
        assert_eq!(enumerate_fragments(1, &fam("K2"), &caps).unwrap().len(), 5);
    }

    #[test]
    fn modulators() {
        let caps = Caps::default();
        assert_eq!(find_modulator(&Graph::complete(4), 1, &caps).unwrap().count_ones(), 3);
        assert_eq!(find_modulator(&Graph::path(7), 2, &caps).unwrap(), 1 << 3);
        assert_eq!(find_modulator(&Graph::path(3), 2, &caps).unwrap(), 0);
    }

    #[test]
    fn verified_prune_two_triangles() {
        let g = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let (p, log) = verified_prune(&g, 0, &fam("K3"), &Caps::default()).unwrap();
        assert_eq!(p.delta, 2);
        assert_eq!(log.len(), 2);
        assert_eq!(p.graph.n(), 0);
    }
}
