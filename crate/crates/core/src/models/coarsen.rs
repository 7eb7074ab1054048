use std::collections::HashMap;

use super::ModelKind;
use crate::error::{Error, Result};
use crate::hypergraph::{CoarseLabel, Hypergraph, HypergraphBuilder, VertexLabel};

/// Assignment of source vertices to coarse vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoarseningMap {
    group_of: Vec<usize>,
    labels: Vec<VertexLabel>,
}

impl CoarseningMap {
    /// `group_of[v]` names the coarse vertex of `v`; `labels[g]` is the
    /// label of coarse vertex `g`. Every group must be used.
    pub fn new(group_of: Vec<usize>, labels: Vec<VertexLabel>) -> Result<Self> {
        let mut used = vec![false; labels.len()];
        for (v, &g) in group_of.iter().enumerate() {
            *used
                .get_mut(g)
                .ok_or_else(|| Error::BadCoarsening(format!("vertex {v} mapped to unknown group {g}")))? = true;
        }
        if let Some(g) = used.iter().position(|&u| !u) {
            return Err(Error::BadCoarsening(format!("group {g} is empty")));
        }
        Ok(Self { group_of, labels })
    }

    /// Groups named by label; groups are numbered by first appearance.
    pub fn from_labels(labels: impl IntoIterator<Item = VertexLabel>) -> Self {
        let mut ids: HashMap<VertexLabel, usize> = HashMap::new();
        let mut names = Vec::new();
        let group_of = labels
            .into_iter()
            .map(|l| {
                *ids.entry(l).or_insert_with(|| {
                    names.push(l);
                    names.len() - 1
                })
            })
            .collect();
        Self { group_of, labels: names }
    }

    pub fn identity(h: &Hypergraph) -> Self {
        Self {
            group_of: (0..h.num_vertices()).collect(),
            labels: h.labels().to_vec(),
        }
    }

    pub fn num_groups(&self) -> usize {
        self.labels.len()
    }

    pub fn group_of(&self) -> &[usize] {
        &self.group_of
    }
}

/// Merges vertices per `map`: weights add, a coarse vertex joins every net
/// of its constituents, nets with equal pin sets merge with summed cost
/// and nets left with one pin are dropped.
///
/// Surviving nets keep the label and pin order of their first
/// constituent.
pub fn coarsen(h: &Hypergraph, map: &CoarseningMap) -> Result<Hypergraph> {
    if map.group_of.len() != h.num_vertices() {
        return Err(Error::BadCoarsening(format!(
            "map covers {} vertices but the hypergraph has {}",
            map.group_of.len(),
            h.num_vertices()
        )));
    }
    let ng = map.num_groups();
    let mut wc = vec![0u64; ng];
    let mut wm = vec![0u64; ng];
    for v in 0..h.num_vertices() {
        wc[map.group_of[v]] += h.w_comp(v);
        wm[map.group_of[v]] += h.w_mem(v);
    }
    let mut hb = HypergraphBuilder::new();
    for g in 0..ng {
        hb.add_vertex(map.labels[g], wc[g], wm[g]);
    }

    let mut stamp = vec![usize::MAX; ng];
    let mut nets: Vec<(crate::hypergraph::NetLabel, u64, Vec<usize>)> = Vec::new();
    let mut by_set: HashMap<Vec<usize>, usize> = HashMap::new();
    for n in 0..h.num_nets() {
        let mut pins = Vec::new();
        for &v in h.pins(n) {
            let g = map.group_of[v];
            if stamp[g] != n {
                stamp[g] = n;
                pins.push(g);
            }
        }
        if pins.len() < 2 {
            continue;
        }
        let mut key = pins.clone();
        key.sort_unstable();
        match by_set.get(&key) {
            Some(&e) => nets[e].1 += h.cost(n),
            None => {
                by_set.insert(key, nets.len());
                nets.push((h.net_label(n), h.cost(n), pins));
            }
        }
    }
    for (l, c, pins) in nets {
        hb.add_net(l, c, pins);
    }
    Ok(hb.build())
}

/// Removes vertices that stand only for stored data, then drops nets left
/// with fewer than two pins and merges nets with equal pin sets.
pub fn drop_data_vertices(h: &Hypergraph) -> Hypergraph {
    let keep: Vec<usize> = (0..h.num_vertices()).filter(|&v| !h.label(v).is_nonzero()).collect();
    let mut new_id = vec![usize::MAX; h.num_vertices()];
    let mut hb = HypergraphBuilder::new();
    for &v in &keep {
        new_id[v] = hb.add_vertex(h.label(v), h.w_comp(v), h.w_mem(v));
    }
    let mut by_set: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut nets: Vec<(crate::hypergraph::NetLabel, u64, Vec<usize>)> = Vec::new();
    for n in 0..h.num_nets() {
        let pins: Vec<usize> = h.pins(n).iter().map(|&v| new_id[v]).filter(|&v| v != usize::MAX).collect();
        if pins.len() < 2 {
            continue;
        }
        let mut key = pins.clone();
        key.sort_unstable();
        match by_set.get(&key) {
            Some(&e) => nets[e].1 += h.cost(n),
            None => {
                by_set.insert(key, nets.len());
                nets.push((h.net_label(n), h.cost(n), pins));
            }
        }
    }
    for (l, c, pins) in nets {
        hb.add_net(l, c, pins);
    }
    hb.build()
}

/// The grouping of fine-grained vertices that produces each restricted
/// model. Works on fine-grained hypergraphs with or without data vertices.
pub fn natural_map(h: &Hypergraph, kind: ModelKind) -> Result<CoarseningMap> {
    use CoarseLabel as L;
    use VertexLabel as V;
    let group = |l: VertexLabel| -> Option<VertexLabel> {
        let c = match (kind, l) {
            (ModelKind::RowWise, V::Mult { i, .. } | V::NzA { i, .. } | V::NzC { i, .. }) => L::Row(i),
            (ModelKind::RowWise, V::NzB { k, .. }) => L::RowOfB(k),
            (ModelKind::ColWise, V::Mult { j, .. } | V::NzB { j, .. } | V::NzC { j, .. }) => L::Col(j),
            (ModelKind::ColWise, V::NzA { k, .. }) => L::ColOfA(k),
            (ModelKind::OuterProduct, V::Mult { k, .. } | V::NzA { k, .. } | V::NzB { k, .. }) => L::Outer(k),
            (ModelKind::MonoA, V::Mult { i, k, .. } | V::NzA { i, k }) => L::FiberA(i, k),
            (ModelKind::MonoA, V::NzB { k, .. }) => L::RowOfB(k),
            (ModelKind::MonoB, V::Mult { k, j, .. } | V::NzB { k, j }) => L::FiberB(k, j),
            (ModelKind::MonoB, V::NzA { k, .. }) => L::ColOfA(k),
            (ModelKind::MonoC, V::Mult { i, j, .. } | V::NzC { i, j }) => L::FiberC(i, j),
            (_, V::NzA { .. } | V::NzB { .. } | V::NzC { .. }) => return Some(l),
            _ => return None,
        };
        Some(V::Coarse(c))
    };
    if !matches!(
        kind,
        ModelKind::RowWise
            | ModelKind::ColWise
            | ModelKind::OuterProduct
            | ModelKind::MonoA
            | ModelKind::MonoB
            | ModelKind::MonoC
    ) {
        return Err(Error::InvalidArgument(format!("no natural coarsening for model '{kind}'")));
    }
    let labels = h
        .labels()
        .iter()
        .map(|&l| group(l).ok_or_else(|| Error::BadCoarsening(format!("vertex '{l}' is not fine-grained"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoarseningMap::from_labels(labels))
}
