//! Communication metrics of a partition and schedule simulators.

mod parallel;
mod sequential;

pub use parallel::{simulate_parallel, ScheduleTrace};
pub use sequential::{sequential_lb, sequential_lb_with, simulate_sequential_blocked, IoTrace, LowerBound};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Partition};

pub(crate) fn check_partition(h: &Hypergraph, part: &Partition) -> Result<()> {
    if part.len() != h.num_vertices() {
        return Err(Error::PartitionMismatch(format!(
            "partition has {} entries for {} vertices",
            part.len(),
            h.num_vertices()
        )));
    }
    Ok(())
}

/// Distinct parts touched by net `n`, ascending.
fn parts_of(h: &Hypergraph, part: &Partition, n: usize, out: &mut Vec<usize>) {
    out.clear();
    out.extend(h.pins(n).iter().map(|&v| part.part(v)));
    out.sort_unstable();
    out.dedup();
}

/// Cut set of every part: the nets with a pin inside the part and a pin
/// outside it. Each list is in ascending net order.
pub fn cut_sets(h: &Hypergraph, part: &Partition) -> Result<Vec<Vec<usize>>> {
    check_partition(h, part)?;
    let mut q = vec![Vec::new(); part.p()];
    let mut touched = Vec::new();
    for n in 0..h.num_nets() {
        parts_of(h, part, n, &mut touched);
        if touched.len() > 1 {
            for &i in &touched {
                q[i].push(n);
            }
        }
    }
    Ok(q)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommReport {
    /// Summed net cost of each part's cut set.
    pub per_part_cut_cost: Vec<u64>,
    pub max_cut_cost: u64,
    /// Sum over nets of `cost * (parts touched - 1)`.
    pub connectivity_total: u64,
    /// Smallest `epsilon` the partition satisfies on `w_comp`.
    pub achieved_epsilon: f64,
    /// Same for `w_mem`; infinite when the total memory weight is zero.
    pub achieved_delta: f64,
}

fn achieved(loads: &[u64], total: u64) -> f64 {
    if total == 0 {
        return f64::INFINITY;
    }
    let max = loads.iter().copied().max().unwrap_or(0);
    max as f64 * loads.len() as f64 / total as f64 - 1.0
}

pub fn comm_report(h: &Hypergraph, part: &Partition) -> Result<CommReport> {
    check_partition(h, part)?;
    let mut per_part = vec![0u64; part.p()];
    let mut conn = 0u64;
    let mut touched = Vec::new();
    for n in 0..h.num_nets() {
        parts_of(h, part, n, &mut touched);
        if touched.len() > 1 {
            let c = h.cost(n);
            conn += c * (touched.len() as u64 - 1);
            for &i in &touched {
                per_part[i] += c;
            }
        }
    }
    let achieved_epsilon = if h.total_comp() == 0 { 0.0 } else { achieved(&part.part_sums(h.comp_weights()), h.total_comp()) };
    Ok(CommReport {
        max_cut_cost: per_part.iter().copied().max().unwrap_or(0),
        per_part_cut_cost: per_part,
        connectivity_total: conn,
        achieved_epsilon,
        achieved_delta: achieved(&part.part_sums(h.mem_weights()), h.total_mem()),
    })
}
