//! Finite families of connected forbidden minors.

use crate::canon::canonical_form_plain;
use crate::error::{Error, Result};
use crate::graph::{BoundariedGraph, Graph};
use crate::minor::{model_within, search_within, ModelKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenFamily {
    members: Vec<Graph>,
    host_kind: HostKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum HostKind {
    Edge,
    Cycle,
    General,
}

impl ForbiddenFamily {
    /// Builds a family, dropping members that have another member as a minor.
    pub fn new(members: Vec<Graph>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::invalid("forbidden family is empty"));
        }
        for h in &members {
            if h.n() == 0 || !h.is_connected() {
                return Err(Error::invalid("forbidden graphs must be connected and nonempty"));
            }
            if h.n() == 1 {
                return Err(Error::invalid("K1 cannot be a forbidden graph"));
            }
        }
        let mut sorted: Vec<Graph> = members;
        sorted.sort_by_key(|h| (h.n(), h.edge_count(), canonical_form_plain(h)));
        sorted.dedup_by_key(|h| canonical_form_plain(h));
        let mut kept: Vec<Graph> = Vec::new();
        for h in sorted {
            let hb = BoundariedGraph::plain(h.clone());
            let redundant = kept.iter().any(|k| {
                search_within(&BoundariedGraph::plain(k.clone()), &hb, hb.graph.all(), ModelKind::Plain).is_some()
            });
            if !redundant {
                kept.push(h);
            }
        }
        let host_kind = match kept.as_slice() {
            [h] if h.n() == 2 => HostKind::Edge,
            [h] if h.n() == 3 && h.edge_count() == 3 => HostKind::Cycle,
            _ => HostKind::General,
        };
        Ok(ForbiddenFamily {
            members: kept,
            host_kind,
        })
    }

    pub fn from_preset(name: &str) -> Result<Self> {
        match name {
            "K2" => Self::new(vec![Graph::complete(2)]),
            "K3" => Self::new(vec![Graph::complete(3)]),
            "K5+K33" => Self::new(vec![Graph::complete(5), Graph::complete_bipartite(3, 3)]),
            _ => Err(Error::invalid(format!("unknown family preset {name:?}"))),
        }
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    /// Smallest member order.
    pub fn n_f(&self) -> usize {
        self.members.iter().map(Graph::n).min().unwrap()
    }

    /// Largest member edge count.
    pub fn m_f(&self) -> usize {
        self.members.iter().map(Graph::edge_count).max().unwrap()
    }

    /// Largest member order.
    pub fn norm(&self) -> usize {
        self.members.iter().map(Graph::n).max().unwrap()
    }

    /// Largest `|V(H)| + |E(H)|` over members.
    pub fn max_size(&self) -> usize {
        self.members.iter().map(|h| h.n() + h.edge_count()).max().unwrap()
    }

    /// The vertex set of some minor model of a member inside `g[host]`, or `None`
    /// when `g[host]` is free of the family.
    pub fn obstruction_in(&self, g: &Graph, host: u64) -> Option<u64> {
        match self.host_kind {
            HostKind::Edge => {
                for v in crate::graph::bits(host) {
                    let nb = g.adj(v) & host;
                    if nb != 0 {
                        return Some(1 << v | 1 << nb.trailing_zeros());
                    }
                }
                None
            }
            HostKind::Cycle => g
                .find_cycle_in(host)
                .map(|c| crate::graph::mask_of(c)),
            HostKind::General => {
                let gb = BoundariedGraph::plain(g.clone());
                self.members.iter().find_map(|h| {
                    let hb = BoundariedGraph::plain(h.clone());
                    model_within(&hb, &gb, host, ModelKind::Plain).map(|m| m.range())
                })
            }
        }
    }

    pub fn is_free_in(&self, g: &Graph, host: u64) -> bool {
        match self.host_kind {
            HostKind::Cycle => g.is_forest_in(host),
            _ => self.obstruction_in(g, host).is_none(),
        }
    }

    pub fn is_free(&self, g: &Graph) -> bool {
        self.is_free_in(g, g.all())
    }
}
