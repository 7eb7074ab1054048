//! Balanced p-way hypergraph partitioning.
//!
//! Balance is enforced on summed `w_comp`: every part may hold at most
//! `floor((1 + epsilon) * W / p)` where `W` is the total. If `delta` is set,
//! `w_mem` is capped the same way.

mod bruteforce;
mod geometric;
mod multilevel;
mod refine;
mod state;

use std::fmt;
use std::str::FromStr;

pub use bruteforce::{partition_bruteforce, partition_bruteforce_with, BruteForceGuard};
pub use geometric::{geometric_partition, GeometricProblem, GeometricScheme};
pub use multilevel::partition_multilevel;
pub use refine::refine_fm;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Partition};
use crate::metrics::comm_report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Objective {
    /// Sum over nets of `cost * (parts touched - 1)`.
    Connectivity,
    /// Largest per-part cut-set cost; ties broken by the sum over parts.
    MaxPartCut,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Connectivity => "connectivity",
            Objective::MaxPartCut => "max-cut",
        })
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "connectivity" | "conn" => Ok(Objective::Connectivity),
            "max-cut" | "maxcut" | "max" => Ok(Objective::MaxPartCut),
            _ => Err(Error::InvalidArgument(format!("unknown objective '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartitionConfig {
    pub p: usize,
    pub epsilon: f64,
    /// Memory imbalance tolerance; `None` leaves memory unconstrained.
    pub delta: Option<f64>,
    pub objective: Objective,
    pub seed: u64,
    pub refinement_passes: usize,
}

impl PartitionConfig {
    pub fn new(p: usize) -> Self {
        Self {
            p,
            epsilon: 0.01,
            delta: None,
            objective: Objective::Connectivity,
            seed: 0,
            refinement_passes: 4,
        }
    }

    pub fn with_objective(mut self, objective: Objective) -> Self {
        self.objective = objective;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn check(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::InvalidArgument("p must be at least 1".into()));
        }
        if !(self.epsilon >= 0.0) || self.delta.is_some_and(|d| !(d >= 0.0)) {
            return Err(Error::InvalidArgument("balance tolerances must be nonnegative".into()));
        }
        Ok(())
    }
}

/// Largest load a part may carry.
pub fn capacity(total: u64, p: usize, tol: f64) -> u64 {
    ((1.0 + tol) * total as f64 / p as f64 + 1e-9).floor() as u64
}

/// Lexicographic objective value; smaller is better.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Score(pub u64, pub u64);

/// Load caps for both weight components.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Caps {
    pub comp: u64,
    pub mem: u64,
}

impl Caps {
    pub fn new(h: &Hypergraph, cfg: &PartitionConfig) -> Self {
        Self {
            comp: capacity(h.total_comp(), cfg.p, cfg.epsilon),
            mem: cfg.delta.map_or(u64::MAX, |d| capacity(h.total_mem(), cfg.p, d)),
        }
    }
}

/// Rejects configurations no partition can satisfy.
pub(crate) fn check_feasible(h: &Hypergraph, cfg: &PartitionConfig) -> Result<Caps> {
    cfg.check()?;
    if cfg.p > h.num_vertices().max(1) {
        return Err(Error::InvalidArgument(format!(
            "p = {} exceeds the number of vertices ({})",
            cfg.p,
            h.num_vertices()
        )));
    }
    let caps = Caps::new(h, cfg);
    for (cap, total, w) in [
        (caps.comp, h.total_comp(), h.comp_weights()),
        (caps.mem, h.total_mem(), h.mem_weights()),
    ] {
        if let Some((v, &wt)) = w.iter().enumerate().find(|(_, &x)| x > cap) {
            return Err(Error::HeavyVertex { vertex: v, weight: wt, capacity: cap });
        }
        if (cap as u128) * (cfg.p as u128) < total as u128 {
            return Err(Error::InfeasibleBalance { total, parts: cfg.p, capacity: cap });
        }
    }
    Ok(caps)
}

/// True when the partition meets the configured balance constraints.
pub fn is_balanced(h: &Hypergraph, part: &Partition, cfg: &PartitionConfig) -> bool {
    let caps = Caps::new(h, cfg);
    part.part_sums(h.comp_weights()).iter().all(|&l| l <= caps.comp)
        && part.part_sums(h.mem_weights()).iter().all(|&l| l <= caps.mem)
}

/// Objective value of `part` (max-cut or connectivity).
pub fn objective_value(h: &Hypergraph, part: &Partition, objective: Objective) -> Result<u64> {
    let r = comm_report(h, part)?;
    Ok(match objective {
        Objective::Connectivity => r.connectivity_total,
        Objective::MaxPartCut => r.max_cut_cost,
    })
}
