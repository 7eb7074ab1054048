//! Hypergraphs with two-component vertex weights and costed nets.

mod label;
mod partition;
mod shgr;

use std::collections::HashMap;
use std::fmt;

pub use label::{CoarseLabel, LabelParseError, NetLabel, VertexLabel};
pub use partition::{read_partition, write_partition, Partition};
pub use shgr::{read_hgr, write_hgr};

/// A hypergraph whose vertices carry `(w_comp, w_mem)` weights and whose
/// nets carry integer costs. Pins are stored compressed by net.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    labels: Vec<VertexLabel>,
    w_comp: Vec<u64>,
    w_mem: Vec<u64>,
    net_labels: Vec<NetLabel>,
    costs: Vec<u64>,
    net_ptr: Vec<usize>,
    pins: Vec<usize>,
    total_comp: u64,
    total_mem: u64,
}

impl Default for Hypergraph {
    fn default() -> Self {
        HypergraphBuilder::new().build()
    }
}

/// Incrementally assembles a [`Hypergraph`]. No checks are made here; use
/// [`Hypergraph::validate`] on untrusted input.
#[derive(Clone, Debug, Default)]
pub struct HypergraphBuilder {
    h: Hypergraph,
}

impl HypergraphBuilder {
    pub fn new() -> Self {
        Self {
            h: Hypergraph {
                labels: Vec::new(),
                w_comp: Vec::new(),
                w_mem: Vec::new(),
                net_labels: Vec::new(),
                costs: Vec::new(),
                net_ptr: vec![0],
                pins: Vec::new(),
                total_comp: 0,
                total_mem: 0,
            },
        }
    }

    pub fn add_vertex(&mut self, label: VertexLabel, w_comp: u64, w_mem: u64) -> usize {
        self.h.labels.push(label);
        self.h.w_comp.push(w_comp);
        self.h.w_mem.push(w_mem);
        self.h.total_comp += w_comp;
        self.h.total_mem += w_mem;
        self.h.labels.len() - 1
    }

    pub fn add_net(&mut self, label: NetLabel, cost: u64, pins: impl IntoIterator<Item = usize>) -> usize {
        self.h.pins.extend(pins);
        self.h.net_ptr.push(self.h.pins.len());
        self.h.net_labels.push(label);
        self.h.costs.push(cost);
        self.h.costs.len() - 1
    }

    pub fn num_vertices(&self) -> usize {
        self.h.labels.len()
    }

    pub fn build(self) -> Hypergraph {
        self.h
    }
}

/// One invariant violation found by [`Hypergraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    PinOutOfRange { net: usize, pin: usize },
    DuplicatePin { net: usize, vertex: usize },
    EmptyNet { net: usize },
    ZeroCost { net: usize },
    DuplicateVertexLabel { first: usize, second: usize },
    DuplicateNetLabel { first: usize, second: usize },
    TotalsMismatch,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PinOutOfRange { net, pin } => write!(f, "net {net}: pin {pin} out of range"),
            Violation::DuplicatePin { net, vertex } => write!(f, "net {net}: vertex {vertex} pinned twice"),
            Violation::EmptyNet { net } => write!(f, "net {net} has no pins"),
            Violation::ZeroCost { net } => write!(f, "net {net} has zero cost"),
            Violation::DuplicateVertexLabel { first, second } => {
                write!(f, "vertices {first} and {second} share a label")
            }
            Violation::DuplicateNetLabel { first, second } => write!(f, "nets {first} and {second} share a label"),
            Violation::TotalsMismatch => write!(f, "cached weight totals are stale"),
        }
    }
}

impl Hypergraph {
    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_nets(&self) -> usize {
        self.costs.len()
    }

    pub fn num_pins(&self) -> usize {
        self.pins.len()
    }

    pub fn label(&self, v: usize) -> VertexLabel {
        self.labels[v]
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn w_comp(&self, v: usize) -> u64 {
        self.w_comp[v]
    }

    pub fn w_mem(&self, v: usize) -> u64 {
        self.w_mem[v]
    }

    pub fn comp_weights(&self) -> &[u64] {
        &self.w_comp
    }

    pub fn mem_weights(&self) -> &[u64] {
        &self.w_mem
    }

    pub fn total_comp(&self) -> u64 {
        self.total_comp
    }

    pub fn total_mem(&self) -> u64 {
        self.total_mem
    }

    pub fn net_label(&self, n: usize) -> NetLabel {
        self.net_labels[n]
    }

    pub fn cost(&self, n: usize) -> u64 {
        self.costs[n]
    }

    pub fn costs(&self) -> &[u64] {
        &self.costs
    }

    pub fn pins(&self, n: usize) -> &[usize] {
        &self.pins[self.net_ptr[n]..self.net_ptr[n + 1]]
    }

    pub fn net_ptr(&self) -> &[usize] {
        &self.net_ptr
    }

    pub fn all_pins(&self) -> &[usize] {
        &self.pins
    }

    /// Vertex-to-net incidence in compressed form `(ptr, nets)`; nets of
    /// each vertex appear in ascending order.
    pub fn incidence(&self) -> (Vec<usize>, Vec<usize>) {
        let nv = self.num_vertices();
        let mut ptr = vec![0usize; nv + 1];
        for &v in &self.pins {
            if v < nv {
                ptr[v + 1] += 1;
            }
        }
        for v in 0..nv {
            ptr[v + 1] += ptr[v];
        }
        let mut fill = ptr.clone();
        let mut nets = vec![0usize; ptr[nv]];
        for n in 0..self.num_nets() {
            for &v in self.pins(n) {
                if v < nv {
                    nets[fill[v]] = n;
                    fill[v] += 1;
                }
            }
        }
        (ptr, nets)
    }

    /// Index of the vertex with the given label, by linear scan.
    pub fn find_vertex(&self, label: VertexLabel) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn find_net(&self, label: NetLabel) -> Option<usize> {
        self.net_labels.iter().position(|&l| l == label)
    }

    /// Returns every invariant violation; an empty list means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let nv = self.num_vertices();
        let mut stamp = vec![usize::MAX; nv];
        for n in 0..self.num_nets() {
            let pins = self.pins(n);
            if pins.is_empty() {
                out.push(Violation::EmptyNet { net: n });
            }
            if self.costs[n] == 0 {
                out.push(Violation::ZeroCost { net: n });
            }
            for &v in pins {
                if v >= nv {
                    out.push(Violation::PinOutOfRange { net: n, pin: v });
                } else if stamp[v] == n {
                    out.push(Violation::DuplicatePin { net: n, vertex: v });
                } else {
                    stamp[v] = n;
                }
            }
        }
        let mut seen: HashMap<VertexLabel, usize> = HashMap::with_capacity(nv);
        for (v, l) in self.labels.iter().enumerate() {
            if let Some(&first) = seen.get(l) {
                out.push(Violation::DuplicateVertexLabel { first, second: v });
            } else {
                seen.insert(*l, v);
            }
        }
        let mut seen_n: HashMap<NetLabel, usize> = HashMap::with_capacity(self.num_nets());
        for (n, l) in self.net_labels.iter().enumerate() {
            if let Some(&first) = seen_n.get(l) {
                out.push(Violation::DuplicateNetLabel { first, second: n });
            } else {
                seen_n.insert(*l, n);
            }
        }
        if self.w_comp.iter().sum::<u64>() != self.total_comp || self.w_mem.iter().sum::<u64>() != self.total_mem {
            out.push(Violation::TotalsMismatch);
        }
        out
    }

    /// Structural equivalence up to vertex and net order.
    ///
    /// Vertices are matched by label and must agree on both weights; nets
    /// are compared as a multiset of `(cost, pin label set)`. Net labels are
    /// not compared: a coalesced net keeps the label of one constituent,
    /// which need not match a directly constructed counterpart.
    pub fn equivalent(&self, other: &Hypergraph) -> bool {
        if self.num_vertices() != other.num_vertices() || self.num_nets() != other.num_nets() {
            return false;
        }
        let key = |h: &Hypergraph| {
            let mut vs: Vec<(VertexLabel, u64, u64)> =
                (0..h.num_vertices()).map(|v| (h.labels[v], h.w_comp[v], h.w_mem[v])).collect();
            vs.sort_unstable();
            let mut ns: Vec<(u64, Vec<VertexLabel>)> = (0..h.num_nets())
                .map(|n| {
                    let mut pl: Vec<VertexLabel> = h.pins(n).iter().map(|&v| h.labels[v]).collect();
                    pl.sort_unstable();
                    (h.costs[n], pl)
                })
                .collect();
            ns.sort_unstable();
            (vs, ns)
        };
        key(self) == key(other)
    }

    /// Copy with vertex and net labels replaced by their mirrors.
    pub(crate) fn mirrored(mut self) -> Self {
        for l in &mut self.labels {
            *l = l.mirror();
        }
        for l in &mut self.net_labels {
            *l = l.mirror();
        }
        self
    }
}
