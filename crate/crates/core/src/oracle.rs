//! Brute-force cross-checks: kernel equivalence, removal soundness, minimum
//! covering fragment sets, minimal-model component bounds, and a literal
//! reading of the marking rule.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::caps::Caps;
use crate::error::{check_cap, Result};
use crate::family::ForbiddenFamily;
use crate::graph::{bits, BoundariedGraph, Graph, LabeledGraph};
use crate::kernel::{enumerate_fragments, labeled_view, Instance, MarkingParameters, Removal};
use crate::minor::{components_intersected, is_labeled_minor, minimize_minor_model, model_within, ModelKind};
use crate::solver::{opt_f_bruteforce, optsol_enum_bruteforce};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub property: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(id: impl Into<String>) -> Self {
        VerificationReport {
            id: id.into(),
            checks: Vec::new(),
        }
    }

    pub fn record(&mut self, property: &str, pass: bool, witness: impl FnOnce() -> String) {
        self.checks.push(Check {
            property: property.into(),
            pass,
            witness: if pass { None } else { Some(witness()) },
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Checks `opt(G) = opt(G') + delta` and that both budgets give the same answer.
pub fn verify_kernel_equiv(
    original: &Instance,
    kernel: &Instance,
    delta: usize,
    f: &ForbiddenFamily,
    caps: &Caps,
) -> Result<VerificationReport> {
    let (o, yo) = opt_f_bruteforce(&original.graph, f, caps)?;
    let (kk, yk) = opt_f_bruteforce(&kernel.graph, f, caps)?;
    let mut r = VerificationReport::new("kernel-equivalence");
    r.record("optimum shifts by delta", o == kk + delta, || {
        format!(
            "opt(original) = {o} via {:?}, opt(kernel) = {kk} via {:?}, delta = {delta}",
            yo.vertices, yk.vertices
        )
    });
    let (ao, ak) = (o <= original.k, kk <= kernel.k);
    r.record("answers agree", ao == ak, || {
        format!(
            "original: opt {o}, k {} -> {ao}; kernel: opt {kk}, k {} -> {ak}",
            original.k, kernel.k
        )
    });
    Ok(r)
}

/// Answer agreement only, for kernels that are a fixed decided instance.
pub fn verify_answer(original: &Instance, kernel: &Instance, f: &ForbiddenFamily, caps: &Caps) -> Result<VerificationReport> {
    let (o, _) = opt_f_bruteforce(&original.graph, f, caps)?;
    let (kk, _) = opt_f_bruteforce(&kernel.graph, f, caps)?;
    let mut r = VerificationReport::new("answer-equivalence");
    let (ao, ak) = (o <= original.k, kk <= kernel.k);
    r.record("answers agree", ao == ak, || {
        format!("original: opt {o}, k {} -> {ao}; kernel: opt {kk}, k {} -> {ak}", original.k, kernel.k)
    });
    Ok(r)
}

/// Re-derives each logged removal with exhaustive optima.
pub fn verify_removals(g: &Graph, removals: &[Removal], f: &ForbiddenFamily, caps: &Caps) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("removal-soundness");
    let mut alive = g.all();
    for (i, rm) in removals.iter().enumerate() {
        let (before, _) = induced_opt(g, alive, f, caps)?;
        let (after, _) = induced_opt(g, alive & !rm.component, f, caps)?;
        let (oc, _) = induced_opt(g, rm.component, f, caps)?;
        r.record(&format!("removal {i} keeps the optimum additive"), before == after + oc, || {
            format!(
                "component {:?}: opt before {before}, after {after}, component {oc}",
                bits(rm.component).collect::<Vec<_>>()
            )
        });
        alive &= !rm.component;
    }
    Ok(r)
}

fn induced_opt(g: &Graph, mask: u64, f: &ForbiddenFamily, caps: &Caps) -> Result<(usize, Vec<usize>)> {
    let (h, old) = g.induced(mask);
    let (s, y) = opt_f_bruteforce(&h, f, caps)?;
    Ok((s, y.vertices.iter().map(|&v| old[v]).collect()))
}

/// For each minimum solution (exhaustive), the mask of `q`-members that survive it.
fn survivors(c: &LabeledGraph, f: &ForbiddenFamily, q: &[LabeledGraph], caps: &Caps) -> Result<Vec<u64>> {
    check_cap("fragment family size", 64, q.len())?;
    let sols = optsol_enum_bruteforce(&c.graph, f, caps)?;
    Ok(sols
        .iter()
        .map(|y| {
            let rest = c.without(y.mask());
            q.iter()
                .enumerate()
                .filter(|(_, h)| is_labeled_minor(h, &rest))
                .fold(0u64, |a, (j, _)| a | 1 << j)
        })
        .collect())
}

/// Whether every minimum solution of `c` leaves some member of `q` as a labeled minor.
pub fn leaves_q_minor_all_optsols(c: &LabeledGraph, f: &ForbiddenFamily, q: &[LabeledGraph], caps: &Caps) -> Result<bool> {
    Ok(survivors(c, f, q, caps)?.iter().all(|&s| s != 0))
}

/// Indices of a smallest subfamily of `q` that still meets every minimum
/// solution's survivors (lexicographically first among the smallest), or `None`
/// when `q` itself does not.
pub fn main_lemma_oracle(c: &LabeledGraph, f: &ForbiddenFamily, q: &[LabeledGraph], caps: &Caps) -> Result<Option<Vec<usize>>> {
    let surv = survivors(c, f, q, caps)?;
    if surv.iter().any(|&s| s == 0) {
        return Ok(None);
    }
    for size in 0..=q.len() {
        let mut best = None;
        crate::calculus::for_each_subset_of_size(q.len(), size, &mut |sub| {
            if surv.iter().all(|&s| s & sub != 0) {
                best = Some(sub);
                false
            } else {
                true
            }
        });
        if let Some(b) = best {
            return Ok(Some(bits(b).collect()));
        }
    }
    unreachable!("the whole family covers")
}

/// Random minimal models of family members in `g`, each checked against
/// `|X| + |V(H)| + |E(H)|` intersected components of `g - x`.
pub fn audit_minimal_models<R: Rng>(
    g: &Graph,
    x: u64,
    f: &ForbiddenFamily,
    trials: usize,
    rng: &mut R,
) -> Result<(VerificationReport, usize)> {
    let mut r = VerificationReport::new("minimal-model-components");
    let gb = BoundariedGraph::plain(g.clone());
    let mut audited = 0;
    for trial in 0..trials {
        let h = f.members().choose(rng).expect("nonempty family");
        let hb = BoundariedGraph::plain(h.clone());
        // A random host subset steers the search to different models.
        let host = bits(g.all()).filter(|_| rng.gen_bool(0.8)).fold(0u64, |a, v| a | 1 << v);
        let Some(m) = model_within(&hb, &gb, host, ModelKind::Plain) else {
            continue;
        };
        let m = minimize_minor_model(&m, &hb, &gb, ModelKind::Plain)?;
        let bound = x.count_ones() as usize + h.n() + h.edge_count();
        let got = components_intersected(&m, g, x);
        audited += 1;
        r.record(&format!("trial {trial}"), got <= bound, || {
            format!("model {:?} meets {got} components, bound {bound}", m.branch)
        });
    }
    Ok((r, audited))
}

/// Marking by the literal rule: every fragment set `Q` with `1 <= |Q| <= gamma`
/// marks the first `tau` components all of whose minimum solutions leave a
/// `Q`-minor. Exponential in the fragment universe; small inputs only.
pub fn mark_components_literal(
    g: &Graph,
    x: u64,
    f: &ForbiddenFamily,
    params: &MarkingParameters,
    caps: &Caps,
) -> Result<Vec<u64>> {
    let universe = enumerate_fragments(x.count_ones() as usize, f, caps)?;
    let comps = g.components_in(g.all() & !x);
    let mut surv: Vec<Vec<Vec<bool>>> = Vec::new();
    for &c in &comps {
        let view = labeled_view(c, g, x);
        let sols = optsol_enum_bruteforce(&view.graph, f, caps)?;
        surv.push(
            sols.iter()
                .map(|y| {
                    let rest = view.without(y.mask());
                    universe.iter().map(|h| is_labeled_minor(h, &rest)).collect()
                })
                .collect(),
        );
    }
    let mut marked = vec![false; comps.len()];
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        start: usize,
        chosen: &mut Vec<usize>,
        gamma: usize,
        n: usize,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if !chosen.is_empty() {
            visit(chosen);
        }
        if chosen.len() == gamma {
            return;
        }
        for j in start..n {
            chosen.push(j);
            rec(j + 1, chosen, gamma, n, visit);
            chosen.pop();
        }
    }
    rec(0, &mut chosen, params.gamma, universe.len(), &mut |qset| {
        let mut taken = 0;
        for (i, s) in surv.iter().enumerate() {
            if taken == params.tau {
                break;
            }
            if s.iter().all(|row| qset.iter().any(|&j| row[j])) {
                marked[i] = true;
                taken += 1;
            }
        }
    });
    Ok(comps.into_iter().zip(marked).filter(|&(_, m)| m).map(|(c, _)| c).collect())
}

/// True if `sub` (indices into `q`) meets the survivors of every minimum solution.
pub fn covers(c: &LabeledGraph, f: &ForbiddenFamily, q: &[LabeledGraph], sub: &[usize], caps: &Caps) -> Result<bool> {
    let surv = survivors(c, f, q, caps)?;
    let mask = sub.iter().fold(0u64, |a, &j| a | 1 << j);
    Ok(surv.iter().all(|&s| s & mask != 0))
}

/// Whether every element of `sub` is needed for [`covers`].
pub fn is_minimal_cover(c: &LabeledGraph, f: &ForbiddenFamily, q: &[LabeledGraph], sub: &[usize], caps: &Caps) -> Result<bool> {
    let surv = survivors(c, f, q, caps)?;
    let full = sub.iter().fold(0u64, |a, &j| a | 1 << j);
    let all_hit = |m: u64| surv.iter().all(|&s| s & m != 0);
    Ok(all_hit(full) && sub.iter().all(|&j| !all_hit(full & !(1 << j))))
}
