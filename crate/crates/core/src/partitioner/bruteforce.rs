//! Exhaustive search for small instances, used as an optimality oracle.

use super::{Caps, Objective, PartitionConfig, Score};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteForceGuard {
    pub max_vertices: usize,
    pub max_parts: usize,
}

impl Default for BruteForceGuard {
    fn default() -> Self {
        Self { max_vertices: 16, max_parts: 3 }
    }
}

struct Search<'a> {
    h: &'a Hypergraph,
    p: usize,
    caps: Caps,
    objective: Objective,
    inc: Vec<Vec<usize>>,
    pc: Vec<u32>,
    lambda: Vec<u32>,
    cut: Vec<u64>,
    conn: u64,
    load: Vec<u64>,
    mload: Vec<u64>,
    assign: Vec<usize>,
    best: Option<(Score, Vec<usize>)>,
}

impl Search<'_> {
    /// Cost already committed by the assigned prefix; only grows deeper in
    /// the tree, so it bounds every completion from below.
    fn bound(&self) -> Score {
        match self.objective {
            Objective::Connectivity => Score(self.conn, 0),
            Objective::MaxPartCut => Score(self.cut.iter().copied().max().unwrap_or(0), self.cut.iter().sum()),
        }
    }

    fn place(&mut self, v: usize, q: usize) {
        let p = self.p;
        for &n in &self.inc[v] {
            let c = self.h.cost(n);
            if self.pc[n * p + q] == 0 {
                self.lambda[n] += 1;
                if self.lambda[n] >= 2 {
                    self.conn += c;
                    self.cut[q] += c;
                }
                if self.lambda[n] == 2 {
                    // the one part already holding pins now sees a cut net
                    let r = (0..p).find(|&r| r != q && self.pc[n * p + r] > 0).expect("second part");
                    self.cut[r] += c;
                }
            }
            self.pc[n * p + q] += 1;
        }
        self.load[q] += self.h.w_comp(v);
        self.mload[q] += self.h.w_mem(v);
        self.assign[v] = q;
    }

    fn unplace(&mut self, v: usize, q: usize) {
        let p = self.p;
        for &n in &self.inc[v] {
            let c = self.h.cost(n);
            self.pc[n * p + q] -= 1;
            if self.pc[n * p + q] == 0 {
                if self.lambda[n] == 2 {
                    let r = (0..p).find(|&r| r != q && self.pc[n * p + r] > 0).expect("second part");
                    self.cut[r] -= c;
                }
                if self.lambda[n] >= 2 {
                    self.conn -= c;
                    self.cut[q] -= c;
                }
                self.lambda[n] -= 1;
            }
        }
        self.load[q] -= self.h.w_comp(v);
        self.mload[q] -= self.h.w_mem(v);
    }

    fn dfs(&mut self, v: usize, used: usize) {
        if let Some((b, _)) = &self.best {
            if self.bound() >= *b {
                return;
            }
        }
        let nv = self.h.num_vertices();
        if nv - v < self.p - used {
            return;
        }
        if v == nv {
            self.best = Some((self.bound(), self.assign.clone()));
            return;
        }
        let (wc, wm) = (self.h.w_comp(v), self.h.w_mem(v));
        for q in 0..(used + 1).min(self.p) {
            if self.load[q] + wc > self.caps.comp || self.mload[q].saturating_add(wm) > self.caps.mem {
                continue;
            }
            self.place(v, q);
            self.dfs(v + 1, used.max(q + 1));
            self.unplace(v, q);
        }
    }
}

/// Globally optimal balanced partition by branch and bound over
/// restricted-growth strings (parts numbered by first use), within the
/// default guard of 16 vertices and 3 parts. Every part receives at least
/// one vertex.
pub fn partition_bruteforce(h: &Hypergraph, cfg: &PartitionConfig) -> Result<Partition> {
    partition_bruteforce_with(h, cfg, BruteForceGuard::default())
}

pub fn partition_bruteforce_with(h: &Hypergraph, cfg: &PartitionConfig, guard: BruteForceGuard) -> Result<Partition> {
    cfg.check()?;
    if h.num_vertices() > guard.max_vertices || cfg.p > guard.max_parts {
        return Err(Error::SizeGuard(format!(
            "exhaustive search allows {} vertices and {} parts, got {} and {}",
            guard.max_vertices,
            guard.max_parts,
            h.num_vertices(),
            cfg.p
        )));
    }
    let nv = h.num_vertices();
    let (ptr, inc) = h.incidence();
    let p = cfg.p;
    let mut s = Search {
        h,
        p,
        caps: Caps::new(h, cfg),
        objective: cfg.objective,
        inc: (0..nv).map(|v| inc[ptr[v]..ptr[v + 1]].to_vec()).collect(),
        pc: vec![0; h.num_nets() * p],
        lambda: vec![0; h.num_nets()],
        cut: vec![0; p],
        conn: 0,
        load: vec![0; p],
        mload: vec![0; p],
        assign: vec![0; nv],
        best: None,
    };
    s.dfs(0, 0);
    let (_, parts) = s.best.ok_or(Error::NoBalancedPartition)?;
    Partition::new(p, parts)
}
