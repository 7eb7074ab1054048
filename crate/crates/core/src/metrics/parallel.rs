//! Two-phase parallel schedule: tree broadcasts of input nonzeros, then
//! tree reductions of output partial sums.

use super::check_partition;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Partition, VertexLabel};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScheduleTrace {
    pub per_proc_sends: Vec<u64>,
    pub per_proc_recvs: Vec<u64>,
    /// Rounds of the expand phase plus rounds of the fold phase.
    pub steps: usize,
    pub expand_steps: usize,
    pub fold_steps: usize,
    pub expand_words: u64,
    pub fold_words: u64,
}

impl ScheduleTrace {
    /// Words sent plus words received by part `q`.
    pub fn words(&self, q: usize) -> u64 {
        self.per_proc_sends[q] + self.per_proc_recvs[q]
    }
}

/// Depth of node `t` in a complete binary tree numbered level by level.
fn depth(t: usize) -> usize {
    (usize::BITS - 1 - (t + 1).leading_zeros()) as usize
}

/// Simulates the schedule on a fine-grained hypergraph that includes data
/// vertices.
///
/// Each cut A or B net is broadcast from the part holding its nonzero to
/// every other part it touches; each cut C net is reduced to the part
/// holding its output entry. A tree has the owner at the root and the other
/// parts in ascending order, laid out as a complete binary tree; every edge
/// carries the net cost in words. Trees of one phase run concurrently, one
/// level per round.
pub fn simulate_parallel(h: &Hypergraph, part: &Partition) -> Result<ScheduleTrace> {
    check_partition(h, part)?;
    let p = part.p();
    let mut t = ScheduleTrace { per_proc_sends: vec![0; p], per_proc_recvs: vec![0; p], ..Default::default() };
    let mut nodes = Vec::new();
    for n in 0..h.num_nets() {
        let pins = h.pins(n);
        let Some(&data) = pins.iter().find(|&&v| h.label(v).is_nonzero()) else {
            return Err(Error::InvalidArgument(format!("net {n} has no data vertex to own it")));
        };
        let owner = part.part(data);
        nodes.clear();
        nodes.extend(pins.iter().map(|&v| part.part(v)).filter(|&q| q != owner));
        nodes.sort_unstable();
        nodes.dedup();
        if nodes.is_empty() {
            continue;
        }
        nodes.insert(0, owner);
        let fold = matches!(h.label(data), VertexLabel::NzC { .. });
        let c = h.cost(n);
        for child in 1..nodes.len() {
            let parent = (child - 1) / 2;
            let (from, to) = if fold { (nodes[child], nodes[parent]) } else { (nodes[parent], nodes[child]) };
            t.per_proc_sends[from] += c;
            t.per_proc_recvs[to] += c;
        }
        let words = c * (nodes.len() as u64 - 1);
        let rounds = depth(nodes.len() - 1);
        if fold {
            t.fold_words += words;
            t.fold_steps = t.fold_steps.max(rounds);
        } else {
            t.expand_words += words;
            t.expand_steps = t.expand_steps.max(rounds);
        }
    }
    t.steps = t.expand_steps + t.fold_steps;
    Ok(t)
}
