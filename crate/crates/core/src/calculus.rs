//! Algebra of boundaried labeled graphs: gluing, forgetting, extending, pieces,
//! multi-pieces, prohibition splitting and merging, saturation and counting.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::canon::{canonical_form, canonical_form_labeled, CanonicalKey};
use crate::caps::Caps;
use crate::error::{check_cap, Error, Result};
use crate::family::ForbiddenFamily;
use crate::graph::{bits, mask_of, BoundariedGraph, Graph, LabeledGraph};
use crate::minor::{is_minor, Folio};

/// A set of unlabeled boundaried graphs that a partial solution has to destroy.
pub type Prohibition = Folio;

/// Glues two graphs of equal width along equal boundary indices.
pub fn oplus(g1: &BoundariedGraph, g2: &BoundariedGraph) -> Result<BoundariedGraph> {
    if g1.t != g2.t {
        return Err(Error::WidthMismatch(g1.t, g2.t));
    }
    let mut out = g1.clone();
    let mut map = Vec::with_capacity(g2.n());
    for v in 0..g2.n() {
        let b = g2.boundary[v];
        let target = if b != 0 { g1.vertex_with_index(b) } else { None };
        match target {
            Some(w) => {
                out.labels[w] |= g2.labels[v];
                map.push(w);
            }
            None => map.push(out.add_vertex(g2.labels[v], b)),
        }
    }
    for (u, v) in g2.graph.edges() {
        out.graph.add_edge(map[u], map[v]);
    }
    Ok(out)
}

/// Sum of a collection; the empty collection gives the empty graph of width `t`.
pub fn oplus_all<'a>(pieces: impl IntoIterator<Item = &'a BoundariedGraph>, t: u32) -> Result<BoundariedGraph> {
    let mut acc = BoundariedGraph::empty(t);
    for p in pieces {
        acc = oplus(&acc, p)?;
    }
    Ok(acc)
}

/// Drops boundary indices above `k`; the result has width `k`.
pub fn forget(g: &BoundariedGraph, k: u32) -> Result<BoundariedGraph> {
    if k > g.t {
        return Err(Error::Precondition(format!("cannot forget down to {k} from width {}", g.t)));
    }
    let mut out = g.clone();
    for b in out.boundary.iter_mut() {
        if *b > k {
            *b = 0;
        }
    }
    out.t = k;
    Ok(out)
}

/// The pieces of a graph, isomorphic pieces kept as separate entries.
pub fn pcs(g: &BoundariedGraph) -> Vec<BoundariedGraph> {
    let t = g.t;
    let single = |b: u32, labels: u64| {
        BoundariedGraph::new(Graph::empty(1), vec![labels], vec![b], t).expect("valid piece")
    };
    let delta = g.boundary_mask();
    let mut out = Vec::new();
    for v in bits(delta) {
        out.push(single(g.boundary[v], 0));
    }
    for v in bits(delta) {
        for l in bits(g.labels[v]) {
            out.push(single(g.boundary[v], 1 << l));
        }
    }
    for (u, v) in g.graph.edges() {
        if delta >> u & 1 == 1 && delta >> v & 1 == 1 {
            let e = BoundariedGraph::new(
                Graph::path(2),
                vec![0, 0],
                vec![g.boundary[u], g.boundary[v]],
                t,
            )
            .expect("valid piece");
            out.push(e);
        }
    }
    for c in g.graph.components_in(g.graph.all() & !delta) {
        let attached = c | (g.graph.neighbourhood(c) & delta);
        let mut p = g.induced(attached);
        let pd = p.boundary_mask();
        for (u, v) in p.graph.edges() {
            if pd >> u & 1 == 1 && pd >> v & 1 == 1 {
                p.graph.remove_edge(u, v);
            }
        }
        for v in bits(pd) {
            p.labels[v] = 0;
        }
        out.push(p);
    }
    out
}

fn group_pieces(pieces: Vec<BoundariedGraph>) -> Vec<(BoundariedGraph, usize)> {
    let mut groups: BTreeMap<CanonicalKey, (BoundariedGraph, usize)> = BTreeMap::new();
    for p in pieces {
        groups.entry(canonical_form(&p)).or_insert((p, 0)).1 += 1;
    }
    groups.into_values().collect()
}

/// Sums of all nonempty piece subsets, deduplicated up to isomorphism.
pub fn mpcs(g: &BoundariedGraph, caps: &Caps) -> Result<Folio> {
    let groups = group_pieces(pcs(g));
    let combos = groups
        .iter()
        .try_fold(1usize, |acc, (_, m)| acc.checked_mul(m + 1))
        .unwrap_or(usize::MAX);
    check_cap("multi-piece combinations", caps.max_set_size, combos)?;
    let mut out = Folio::default();
    let mut counts = vec![0usize; groups.len()];
    loop {
        let mut i = 0;
        while i < groups.len() && counts[i] == groups[i].1 {
            counts[i] = 0;
            i += 1;
        }
        if i == groups.len() {
            break;
        }
        counts[i] += 1;
        let mut acc = BoundariedGraph::empty(g.t);
        for (j, &c) in counts.iter().enumerate() {
            for _ in 0..c {
                acc = oplus(&acc, &groups[j].0)?;
            }
        }
        out.insert(acc);
    }
    Ok(out)
}

/// Graphs reachable by one removal step: an interior component with its edges to
/// the boundary, an edge between boundary vertices, a label of a boundary vertex,
/// or an isolated boundary vertex.
fn removal_steps(g: &BoundariedGraph) -> Vec<BoundariedGraph> {
    let delta = g.boundary_mask();
    let mut out = Vec::new();
    for c in g.graph.components_in(g.graph.all() & !delta) {
        out.push(g.without(c));
    }
    for (u, v) in g.graph.edges() {
        if delta >> u & 1 == 1 && delta >> v & 1 == 1 {
            let mut d = g.clone();
            d.graph.remove_edge(u, v);
            out.push(d);
        }
    }
    for v in bits(delta) {
        for l in bits(g.labels[v]) {
            let mut d = g.clone();
            d.labels[v] &= !(1 << l);
            out.push(d);
        }
        if g.graph.adj(v) == 0 {
            out.push(g.without(1 << v));
        }
    }
    out
}

/// Multi-pieces through the removal characterisation. The empty graph is reachable
/// by removals but is not a sum of a nonempty piece set, so it is left out.
pub fn mpcs_by_removal(g: &BoundariedGraph, caps: &Caps) -> Result<Folio> {
    let mut seen: HashSet<CanonicalKey> = HashSet::new();
    let mut out = Folio::default();
    let mut stack = vec![g.clone()];
    seen.insert(canonical_form(g));
    while let Some(cur) = stack.pop() {
        for m in removal_steps(&cur) {
            if seen.insert(canonical_form(&m)) {
                stack.push(m);
            }
        }
        check_cap("multi-piece closure", caps.max_set_size, seen.len())?;
        if !cur.is_empty() {
            out.insert(cur);
        }
    }
    Ok(out)
}

/// One extension step; results have width `t + 1`.
pub fn ext_plus_one(h: &BoundariedGraph) -> Vec<BoundariedGraph> {
    let t1 = h.t + 1;
    let mut out = vec![h.widened(t1)];
    for v in 0..h.n() {
        if h.boundary[v] == 0 {
            let mut g = h.widened(t1);
            g.boundary[v] = t1;
            out.push(g);
        }
    }
    for u in 0..h.n() {
        if h.boundary[u] == 0 {
            continue;
        }
        let nbrs: Vec<usize> = bits(h.graph.adj(u)).collect();
        let labels: Vec<usize> = bits(h.labels[u]).collect();
        for moved in 0u64..1 << nbrs.len() {
            for lab in 0u64..1 << labels.len() {
                let mut g = h.widened(t1);
                let lmask = mask_of(bits(lab).map(|i| labels[i]));
                g.labels[u] &= !lmask;
                let v = g.add_vertex(lmask, t1);
                g.graph.add_edge(u, v);
                for i in bits(moved) {
                    g.graph.remove_edge(u, nbrs[i]);
                    g.graph.add_edge(v, nbrs[i]);
                }
                out.push(g);
            }
        }
    }
    out
}

/// All graphs reachable by exactly `steps` extension steps, deduplicated.
pub fn ext_plus(h: &BoundariedGraph, steps: u32, caps: &Caps) -> Result<Folio> {
    let mut level: Folio = std::iter::once(h.clone()).collect();
    for _ in 0..steps {
        let mut next = Folio::default();
        for g in level.graphs() {
            for e in ext_plus_one(g) {
                next.insert(e);
            }
            check_cap("extension set", caps.max_set_size, next.len())?;
        }
        level = next;
    }
    Ok(level)
}

/// Multi-pieces of all `t`-fold extensions of the (unboundaried) members of `q`.
pub fn mpcs_plus(q: &[LabeledGraph], t: u32, caps: &Caps) -> Result<Folio> {
    let mut out = Folio::default();
    for h in q {
        for e in ext_plus(&h.to_boundaried(0), t, caps)?.graphs() {
            for (k, m) in mpcs(e, caps)?.members {
                out.members.entry(k).or_insert(m);
            }
            check_cap("extended multi-piece set", caps.max_set_size, out.len())?;
        }
    }
    Ok(out)
}

pub fn mpcs_plus_family(f: &ForbiddenFamily, t: u32, caps: &Caps) -> Result<Folio> {
    let q: Vec<LabeledGraph> = f.members().iter().cloned().map(LabeledGraph::unlabeled).collect();
    mpcs_plus(&q, t, caps)
}

/// Memoised "some member of a set is a minor of this graph" tests.
struct HitCache<'a> {
    set: &'a Folio,
    memo: HashMap<CanonicalKey, bool>,
}

impl<'a> HitCache<'a> {
    fn new(set: &'a Folio) -> Self {
        HitCache {
            set,
            memo: HashMap::new(),
        }
    }

    fn hit(&mut self, g: &BoundariedGraph) -> bool {
        let k = canonical_form(g);
        if let Some(&r) = self.memo.get(&k) {
            return r;
        }
        let r = self.set.graphs().any(|p| is_minor(p, g));
        self.memo.insert(k, r);
        r
    }
}

fn piece_sums(h: &BoundariedGraph, caps: &Caps) -> Result<Vec<(BoundariedGraph, BoundariedGraph)>> {
    let pieces = pcs(h);
    check_cap("piece subsets", caps.max_set_size, 1usize.checked_shl(pieces.len() as u32).unwrap_or(usize::MAX))?;
    let all = (1u64 << pieces.len()) - 1;
    let mut out = Vec::new();
    for sub in 0..=all {
        let a = oplus_all(bits(sub).map(|i| &pieces[i]), h.t)?;
        let b = oplus_all(bits(all & !sub).map(|i| &pieces[i]), h.t)?;
        out.push((a, b));
    }
    Ok(out)
}

fn upward_close(base: &Folio, universe: &Folio) -> Folio {
    let mut out = base.clone();
    for g in universe.graphs() {
        if !out.contains(g) && base.graphs().any(|p| is_minor(p, g)) {
            out.insert(g.clone());
        }
    }
    out
}

/// The constructive pair of the splitting argument: for every member and every
/// piece subset, the part that is not a minor of its side is prohibited there,
/// then both sides are closed upward inside the extended multi-pieces of `f`.
pub fn split_against(
    pi: &Prohibition,
    g1: &BoundariedGraph,
    g2: &BoundariedGraph,
    f: &ForbiddenFamily,
    caps: &Caps,
) -> Result<(Prohibition, Prohibition)> {
    let glued = oplus(g1, g2)?;
    if let Some(p) = pi.graphs().find(|p| is_minor(p, &glued)) {
        return Err(Error::Precondition(format!(
            "the glued graph already contains a prohibited minor on {} vertices",
            p.n()
        )));
    }
    let t = g1.t;
    let mut pi1 = pi.clone();
    let mut pi2 = pi.clone();
    let mut in1: HashMap<CanonicalKey, bool> = HashMap::new();
    let mut in2: HashMap<CanonicalKey, bool> = HashMap::new();
    for h in pi.graphs() {
        for (a, b) in piece_sums(h, caps)? {
            let ka = canonical_form(&a);
            if !*in1.entry(ka).or_insert_with(|| is_minor(&a, g1)) {
                pi1.insert(a);
            }
            let kb = canonical_form(&b);
            if !*in2.entry(kb).or_insert_with(|| is_minor(&b, g2)) {
                pi2.insert(b);
            }
        }
    }
    let universe = mpcs_plus_family(f, t, caps)?;
    Ok((upward_close(&pi1, &universe), upward_close(&pi2, &universe)))
}

/// Decides whether `(pi1, pi2)` can be produced by the splitting procedure for `pi`.
pub fn is_split_member(
    pi: &Prohibition,
    pi1: &Prohibition,
    pi2: &Prohibition,
    f: &ForbiddenFamily,
    t: u32,
    caps: &Caps,
) -> Result<bool> {
    if !pi.is_subset(pi1) || !pi.is_subset(pi2) {
        return Ok(false);
    }
    let mut base1 = pi.clone();
    let mut base2 = pi.clone();
    for h in pi.graphs() {
        let sums = piece_sums(h, caps)?;
        for (a, b) in &sums {
            if !pi1.contains(a) && !pi2.contains(b) {
                return Ok(false);
            }
        }
        for (a, b) in sums {
            base1.insert(a);
            base2.insert(b);
        }
    }
    let universe = mpcs_plus_family(f, t, caps)?;
    for (side, base) in [(pi1, &base1), (pi2, &base2)] {
        // Closed upward inside the universe.
        for g in universe.graphs() {
            if !side.contains(g) && side.graphs().any(|p| is_minor(p, g)) {
                return Ok(false);
            }
        }
        // Nothing beyond what the procedure can add.
        for g in side.graphs() {
            let justified = base.contains(g)
                || (universe.contains(g) && base.graphs().any(|p| is_minor(p, g)));
            if !justified {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Calls `f(g1, g2)` for every edge-disjoint pair with `g1 ⊕ g2 = g`, stopping when
/// `f` returns false. Returns whether every call returned true.
pub fn for_each_decomposition(
    g: &BoundariedGraph,
    f: &mut dyn FnMut(&BoundariedGraph, &BoundariedGraph) -> bool,
) -> bool {
    let delta = g.boundary_mask();
    let comps = g.graph.components_in(g.graph.all() & !delta);
    let bb: Vec<(usize, usize)> = g
        .graph
        .edges()
        .into_iter()
        .filter(|&(u, v)| delta >> u & 1 == 1 && delta >> v & 1 == 1)
        .collect();
    let bverts: Vec<usize> = bits(delta).collect();
    let nc = comps.len();
    let ne = bb.len();
    for side_bits in 0u64..1 << (nc + ne) {
        // required[i]: bit 0 = needed on side 1, bit 1 = needed on side 2
        let mut required = vec![0u8; bverts.len()];
        for (ci, &c) in comps.iter().enumerate() {
            let s = 1u8 << (side_bits >> ci & 1);
            for (bi, &b) in bverts.iter().enumerate() {
                if g.graph.adj(b) & c != 0 {
                    required[bi] |= s;
                }
            }
        }
        for (ei, &(u, v)) in bb.iter().enumerate() {
            let s = 1u8 << (side_bits >> (nc + ei) & 1);
            for (bi, &b) in bverts.iter().enumerate() {
                if b == u || b == v {
                    required[bi] |= s;
                }
            }
        }
        let presence_opts: Vec<Vec<u8>> = required
            .iter()
            .map(|&r| (1u8..=3).filter(|&p| p & r == r).collect())
            .collect();
        let mut pres_idx = vec![0usize; bverts.len()];
        loop {
            let presence: Vec<u8> = pres_idx
                .iter()
                .zip(&presence_opts)
                .map(|(&i, o)| o[i])
                .collect();
            // label assignments: each label of a boundary vertex goes to a nonempty
            // subset of the sides where that vertex is present
            let label_slots: Vec<(usize, usize, Vec<u8>)> = bverts
                .iter()
                .enumerate()
                .flat_map(|(bi, &b)| {
                    let p = presence[bi];
                    let opts: Vec<u8> = (1u8..=3).filter(|&s| s & p == s).collect();
                    bits(g.labels[b]).map(move |l| (b, l, opts.clone()))
                })
                .collect();
            let mut lab_idx = vec![0usize; label_slots.len()];
            loop {
                let (g1, g2) = build_sides(g, &comps, &bb, &bverts, side_bits, &presence, &label_slots, &lab_idx);
                if !f(&g1, &g2) {
                    return false;
                }
                if !advance(&mut lab_idx, |i| label_slots[i].2.len()) {
                    break;
                }
            }
            if !advance(&mut pres_idx, |i| presence_opts[i].len()) {
                break;
            }
        }
    }
    true
}

fn advance(idx: &mut [usize], len: impl Fn(usize) -> usize) -> bool {
    for i in 0..idx.len() {
        idx[i] += 1;
        if idx[i] < len(i) {
            return true;
        }
        idx[i] = 0;
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn build_sides(
    g: &BoundariedGraph,
    comps: &[u64],
    bb: &[(usize, usize)],
    bverts: &[usize],
    side_bits: u64,
    presence: &[u8],
    label_slots: &[(usize, usize, Vec<u8>)],
    lab_idx: &[usize],
) -> (BoundariedGraph, BoundariedGraph) {
    let nc = comps.len();
    let mut sides = Vec::with_capacity(2);
    for s in 0..2u8 {
        let bit = 1u8 << s;
        let mut keep = 0u64;
        for (ci, &c) in comps.iter().enumerate() {
            if (side_bits >> ci & 1) as u8 == s {
                keep |= c;
            }
        }
        for (bi, &b) in bverts.iter().enumerate() {
            if presence[bi] & bit != 0 {
                keep |= 1 << b;
            }
        }
        let mut h = g.clone();
        for (ei, &(u, v)) in bb.iter().enumerate() {
            if (side_bits >> (nc + ei) & 1) as u8 != s {
                h.graph.remove_edge(u, v);
            }
        }
        for &b in bverts {
            h.labels[b] = 0;
        }
        for (slot, &(b, l, ref opts)) in label_slots.iter().enumerate() {
            if opts[lab_idx[slot]] & bit != 0 {
                h.labels[b] |= 1 << l;
            }
        }
        sides.push(h.induced(keep));
    }
    let g2 = sides.pop().unwrap();
    let g1 = sides.pop().unwrap();
    (g1, g2)
}

/// Members of the extended multi-pieces of `f` for which every edge-disjoint
/// decomposition has a `pi1`-minor on the first side or a `pi2`-minor on the second.
pub fn merge_odot(pi1: &Prohibition, pi2: &Prohibition, f: &ForbiddenFamily, t: u32, caps: &Caps) -> Result<Prohibition> {
    let universe = mpcs_plus_family(f, t, caps)?;
    let mut c1 = HitCache::new(pi1);
    let mut c2 = HitCache::new(pi2);
    let mut out = Folio::default();
    for g in universe.graphs() {
        let ok = for_each_decomposition(g, &mut |a, b| c1.hit(a) || c2.hit(b));
        if ok {
            out.insert(g.clone());
        }
    }
    Ok(out)
}

/// The same set computed from two-part partitions of the pieces of each member.
pub fn merge_by_pieces(pi1: &Prohibition, pi2: &Prohibition, f: &ForbiddenFamily, t: u32, caps: &Caps) -> Result<Prohibition> {
    let universe = mpcs_plus_family(f, t, caps)?;
    let mut c1 = HitCache::new(pi1);
    let mut c2 = HitCache::new(pi2);
    let mut out = Folio::default();
    for g in universe.graphs() {
        let mut ok = true;
        for (a, b) in piece_sums(g, caps)? {
            if !(c1.hit(&a) || c2.hit(&b)) {
                ok = false;
                break;
            }
        }
        if ok {
            out.insert(g.clone());
        }
    }
    Ok(out)
}

/// Every `theta`-subset of the labels in `x` appears in `q` as a single vertex
/// carrying exactly that labelset.
pub fn is_saturated(q: &[LabeledGraph], x: u64, theta: usize) -> bool {
    let keys: HashSet<CanonicalKey> = q.iter().map(canonical_form_labeled).collect();
    let labels: Vec<usize> = bits(x).collect();
    if theta > labels.len() {
        return true;
    }
    let mut ok = true;
    for_each_subset_of_size(labels.len(), theta, &mut |sub| {
        let set = mask_of(bits(sub).map(|i| labels[i]));
        let single = LabeledGraph::new(Graph::empty(1), vec![set]).unwrap();
        if !keys.contains(&canonical_form_labeled(&single)) {
            ok = false;
        }
        ok
    });
    ok
}

/// Calls `f` on every `k`-subset of `0..n` (as a bitmask) in increasing
/// lexicographic order of the sorted element lists, stopping when `f` returns false.
pub fn for_each_subset_of_size(n: usize, k: usize, f: &mut dyn FnMut(u64) -> bool) {
    fn rec(start: usize, n: usize, k: usize, acc: u64, f: &mut dyn FnMut(u64) -> bool) -> bool {
        if k == 0 {
            return f(acc);
        }
        for i in start..=n - k {
            if !rec(i + 1, n, k - 1, acc | 1 << i, f) {
                return false;
            }
        }
        true
    }
    if k <= n {
        rec(0, n, k, 0, f);
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Number of `theta`-restricted `t`-boundaried graphs over `l` labels with at most
/// `n` vertices, counted up to isomorphism (the empty graph included).
pub fn count_n(l: usize, t: u32, n: usize, theta: usize, caps: &Caps) -> Result<usize> {
    if l > 16 || n > 8 || t > 8 {
        return Err(Error::CapExceeded {
            what: "counting parameters",
            limit: 8,
            needed: n.max(t as usize).max(l / 2),
        });
    }
    let labelsets: Vec<u64> = (0u64..1 << l)
        .filter(|s| s.count_ones() as usize <= theta)
        .collect();
    let mut raw: u64 = 0;
    for k in 0..=n as u64 {
        let edges = 1u64.checked_shl((k * k.saturating_sub(1) / 2) as u32).unwrap_or(u64::MAX);
        let bmaps: u64 = (0..=k.min(t as u64))
            .map(|j| binomial(k, j).saturating_mul((0..j).fold(1u64, |a, i| a * (t as u64 - i))))
            .sum();
        let labs = (labelsets.len() as u64).saturating_pow(k as u32);
        raw = raw.saturating_add(edges.saturating_mul(bmaps).saturating_mul(labs));
    }
    check_cap("graphs enumerated for counting", caps.max_set_size * 8, raw as usize)?;

    let mut seen: HashSet<CanonicalKey> = HashSet::new();
    for k in 0..=n {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
        for emask in 0u64..1 << pairs.len() {
            let mut g = Graph::empty(k);
            for i in bits(emask) {
                g.add_edge(pairs[i].0, pairs[i].1);
            }
            let mut boundary = vec![0u32; k];
            enumerate_boundaries(0, t, 0, &mut boundary, &mut |b| {
                let mut lab = vec![0usize; k];
                loop {
                    let labels: Vec<u64> = lab.iter().map(|&i| labelsets[i]).collect();
                    let bg = BoundariedGraph {
                        graph: g.clone(),
                        labels,
                        boundary: b.to_vec(),
                        t,
                    };
                    seen.insert(canonical_form(&bg));
                    if !advance(&mut lab, |_| labelsets.len()) {
                        break;
                    }
                }
            });
        }
    }
    Ok(seen.len())
}

fn enumerate_boundaries(v: usize, t: u32, used: u64, b: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if v == b.len() {
        f(b);
        return;
    }
    b[v] = 0;
    enumerate_boundaries(v + 1, t, used, b, f);
    for i in 1..=t {
        if used >> i & 1 == 0 {
            b[v] = i;
            enumerate_boundaries(v + 1, t, used | 1 << i, b, f);
        }
    }
    b[v] = 0;
}
