//! The JSON graph format shared by every tool.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::{bits, mask_of, BoundariedGraph, Graph, MAX_LABELS, MAX_VERTICES};
use crate::kernel::Instance;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<BTreeMap<String, u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulator: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical: Option<String>,
}

/// A parsed graph file: the graph, the label names by index, and the optional
/// instance fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphData {
    pub graph: BoundariedGraph,
    pub label_names: Vec<String>,
    pub modulator: Option<u64>,
    pub k: Option<usize>,
}

fn vertex_key(s: &str, n: usize) -> Result<usize> {
    let v: usize = s
        .parse()
        .map_err(|_| Error::invalid(format!("vertex key {s:?} is not an integer")))?;
    if v >= n {
        return Err(Error::invalid(format!("vertex {v} out of range")));
    }
    Ok(v)
}

impl GraphFile {
    pub fn label_set(&self) -> BTreeSet<String> {
        self.labels.iter().flat_map(|m| m.values().flatten()).cloned().collect()
    }

    pub fn parse(&self) -> Result<GraphData> {
        let names: Vec<String> = self.label_set().into_iter().collect();
        self.parse_with(&names)
    }

    /// Parses against a fixed sorted label universe, so several files can share
    /// label indices.
    pub fn parse_with(&self, label_names: &[String]) -> Result<GraphData> {
        if self.n > MAX_VERTICES {
            return Err(Error::invalid(format!("at most {MAX_VERTICES} vertices are supported")));
        }
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let graph = Graph::from_edges(self.n, &edges)?;
        if label_names.len() > MAX_LABELS {
            return Err(Error::invalid(format!("at most {MAX_LABELS} distinct labels are supported")));
        }
        let mut labels = vec![0u64; self.n];
        for (key, ls) in self.labels.iter().flatten() {
            let v = vertex_key(key, self.n)?;
            for l in ls {
                let i = label_names
                    .binary_search(l)
                    .map_err(|_| Error::invalid(format!("label {l:?} outside the label universe")))?;
                labels[v] |= 1 << i;
            }
        }
        let mut boundary = vec![0u32; self.n];
        for (key, &b) in self.boundary.iter().flatten() {
            if b == 0 {
                return Err(Error::invalid("boundary indices are positive"));
            }
            boundary[vertex_key(key, self.n)?] = b;
        }
        let t = self.t.unwrap_or_else(|| boundary.iter().copied().max().unwrap_or(0));
        let graph = BoundariedGraph::new(graph, labels, boundary, t)?;
        if let Some(c) = &self.canonical {
            if *c != canonical_form(&graph).to_hex() {
                return Err(Error::invalid("canonical key does not match the graph"));
            }
        }
        let modulator = match &self.modulator {
            Some(vs) => {
                for &v in vs {
                    if v >= self.n {
                        return Err(Error::invalid(format!("modulator vertex {v} out of range")));
                    }
                }
                Some(mask_of(vs.iter().copied()))
            }
            None => None,
        };
        Ok(GraphData {
            graph,
            label_names: label_names.to_vec(),
            modulator,
            k: self.k,
        })
    }

    /// Serialises a boundaried graph; label `i` is written as `label_names[i]`
    /// when given, as `x{i}` otherwise.
    pub fn from_boundaried(g: &BoundariedGraph, label_names: Option<&[String]>) -> Self {
        let name = |i: usize| match label_names {
            Some(ns) => ns[i].clone(),
            None => format!("x{i}"),
        };
        let labels: BTreeMap<String, Vec<String>> = (0..g.n())
            .filter(|&v| g.labels[v] != 0)
            .map(|v| (v.to_string(), bits(g.labels[v]).map(name).collect()))
            .collect();
        let boundary: BTreeMap<String, u32> = (0..g.n())
            .filter(|&v| g.boundary[v] != 0)
            .map(|v| (v.to_string(), g.boundary[v]))
            .collect();
        GraphFile {
            n: g.n(),
            edges: g.graph.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: (!labels.is_empty()).then_some(labels),
            boundary: (!boundary.is_empty()).then_some(boundary),
            t: (g.t > 0).then_some(g.t),
            ..GraphFile::default()
        }
    }

    /// Like [`GraphFile::from_boundaried`] with the canonical key attached.
    pub fn with_canonical(g: &BoundariedGraph, label_names: Option<&[String]>) -> Self {
        GraphFile {
            canonical: Some(canonical_form(g).to_hex()),
            ..Self::from_boundaried(g, label_names)
        }
    }

    pub fn from_instance(inst: &Instance) -> Self {
        GraphFile {
            modulator: Some(bits(inst.modulator).collect()),
            k: Some(inst.k),
            ..Self::from_boundaried(&BoundariedGraph::plain(inst.graph.clone()), None)
        }
    }

    /// Reads an instance; the modulator and budget must be present.
    pub fn to_instance(&self, eta: usize) -> Result<Instance> {
        let d = self.parse()?;
        let modulator = d.modulator.ok_or_else(|| Error::invalid("instance has no modulator"))?;
        let k = d.k.ok_or_else(|| Error::invalid("instance has no budget k"))?;
        Instance::new(d.graph.graph, modulator, k, eta)
    }
}

/// Parses several files over the union of their label names.
pub fn parse_shared(files: &[GraphFile]) -> Result<(Vec<GraphData>, Vec<String>)> {
    let names: Vec<String> = files
        .iter()
        .flat_map(|f| f.label_set())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let data = files.iter().map(|f| f.parse_with(&names)).collect::<Result<_>>()?;
    Ok((data, names))
}

pub fn from_json_str(s: &str) -> Result<GraphFile> {
    serde_json::from_str(s).map_err(|e| Error::invalid(e.to_string()))
}

pub fn to_json_string(f: &GraphFile) -> String {
    serde_json::to_string(f).expect("serialisable")
}
