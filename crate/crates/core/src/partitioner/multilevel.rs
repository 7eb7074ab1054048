//! Multilevel partitioning: matching-based coarsening, recursive-bisection
//! initial partitions on the coarsest level, then projection and
//! refinement back up to the input.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::refine::{rebalance, refine_level};
use super::state::State;
use super::{check_feasible, PartitionConfig, Score};
use crate::error::{Error, Result};
use crate::hypergraph::{CoarseLabel, Hypergraph, Partition, VertexLabel};
use crate::models::{coarsen, CoarseningMap};

/// Nets larger than this are ignored when rating matches and growing
/// regions; they are rarely decisive and cost quadratic time.
const LARGE_NET: usize = 256;

const NONE: usize = usize::MAX;

/// Partitions `h` into `cfg.p` parts under the `epsilon` (and optional
/// `delta`) balance constraint, minimizing `cfg.objective`.
///
/// Deterministic for a given hypergraph and configuration. Fails up front
/// when balance is impossible; if the heuristic cannot reach balance on a
/// feasible input the best partition found is returned inside
/// [`Error::BalanceNotAchieved`].
pub fn partition_multilevel(h: &Hypergraph, cfg: &PartitionConfig) -> Result<Partition> {
    let caps = check_feasible(h, cfg)?;
    let p = cfg.p;
    let nv = h.num_vertices();
    if p == 1 {
        return Partition::new(1, vec![0; nv]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let target = (4 * p).max(80);
    let max_comp = ((1.5 * h.total_comp() as f64 / target as f64).ceil() as u64).clamp(1, caps.comp.max(1));
    let max_mem = match cfg.delta {
        Some(_) => ((1.5 * h.total_mem() as f64 / target as f64).ceil() as u64).clamp(1, caps.mem.max(1)),
        None => u64::MAX,
    };
    let mut levels: Vec<Hypergraph> = Vec::new();
    let mut maps: Vec<Vec<usize>> = Vec::new();
    loop {
        let cur = levels.last().unwrap_or(h);
        if cur.num_vertices() <= target {
            break;
        }
        let (group, ng) = match_vertices(cur, max_comp, max_mem, &mut rng);
        if ng as f64 > 0.95 * cur.num_vertices() as f64 {
            break;
        }
        let labels = (0..ng).map(|g| VertexLabel::Coarse(CoarseLabel::Group(g))).collect();
        let map = CoarseningMap::new(group.clone(), labels)?;
        levels.push(coarsen(cur, &map)?);
        maps.push(group);
    }

    let coarsest = levels.last().unwrap_or(h);
    let tries = if coarsest.num_vertices() <= 200 { 16 } else { 8 };
    let mut best: Option<((bool, Score), Vec<usize>)> = None;
    for t in 0..=tries {
        let parts = if t == tries {
            heaviest_first(coarsest, p)
        } else {
            recursive_bisection(coarsest, p, cfg.epsilon, &mut rng)
        };
        let mut s = State::new(coarsest, p, parts, cfg.objective);
        let balanced = rebalance(&mut s, &caps);
        refine_level(&mut s, &caps, cfg.refinement_passes);
        let key = (!balanced, s.score());
        if best.as_ref().is_none_or(|(bk, _)| key < *bk) {
            best = Some((key, s.into_parts()));
        }
    }
    let mut parts = best.expect("at least one try").1;

    for lvl in (0..levels.len()).rev() {
        let finer = if lvl == 0 { h } else { &levels[lvl - 1] };
        let fine_parts: Vec<usize> = maps[lvl].iter().map(|&g| parts[g]).collect();
        let mut s = State::new(finer, p, fine_parts, cfg.objective);
        rebalance(&mut s, &caps);
        refine_level(&mut s, &caps, cfg.refinement_passes);
        parts = s.into_parts();
    }

    let part = Partition::new(p, parts)?;
    let loads = part.part_sums(h.comp_weights());
    let mloads = part.part_sums(h.mem_weights());
    if loads.iter().all(|&l| l <= caps.comp) && mloads.iter().all(|&l| l <= caps.mem) {
        Ok(part)
    } else {
        let max = loads.iter().copied().max().unwrap_or(0);
        let achieved = max as f64 * p as f64 / h.total_comp().max(1) as f64 - 1.0;
        Err(Error::BalanceNotAchieved { achieved, partition: Box::new(part) })
    }
}

/// Heavy-connectivity matching. Vertices are visited in random order; each
/// unmatched vertex pairs with the unmatched neighbor sharing the most net
/// cost (scaled by `1 / (|net| - 1)`), subject to the weight caps.
fn match_vertices(h: &Hypergraph, max_comp: u64, max_mem: u64, rng: &mut ChaCha8Rng) -> (Vec<usize>, usize) {
    let nv = h.num_vertices();
    let (ptr, inc) = h.incidence();
    let mut order: Vec<usize> = (0..nv).collect();
    order.shuffle(rng);
    let mut group = vec![NONE; nv];
    let mut rating = vec![0.0f64; nv];
    let mut touched = Vec::new();
    let mut ng = 0;
    for &u in &order {
        if group[u] != NONE {
            continue;
        }
        for &n in &inc[ptr[u]..ptr[u + 1]] {
            let pins = h.pins(n);
            if pins.len() < 2 || pins.len() > LARGE_NET {
                continue;
            }
            let r = h.cost(n) as f64 / (pins.len() - 1) as f64;
            for &v in pins {
                if v != u && group[v] == NONE {
                    if rating[v] == 0.0 {
                        touched.push(v);
                    }
                    rating[v] += r;
                }
            }
        }
        let mut pick: Option<(f64, usize)> = None;
        for &v in &touched {
            let ok = h.w_comp(u) + h.w_comp(v) <= max_comp && h.w_mem(u).saturating_add(h.w_mem(v)) <= max_mem;
            if ok && pick.is_none_or(|(r, w)| rating[v] > r || (rating[v] == r && v < w)) {
                pick = Some((rating[v], v));
            }
        }
        for &v in &touched {
            rating[v] = 0.0;
        }
        touched.clear();
        group[u] = ng;
        if let Some((_, v)) = pick {
            group[v] = ng;
        }
        ng += 1;
    }
    (group, ng)
}

/// Longest-processing-time assignment: vertices in order of decreasing
/// weight, each to the least loaded part, ties going to the part sharing
/// the most net cost with it. Few heavy vertices of a handful of distinct
/// weights (1D models) defeat region growing but not this.
fn heaviest_first(h: &Hypergraph, p: usize) -> Vec<usize> {
    let nv = h.num_vertices();
    let (ptr, inc) = h.incidence();
    let mut order: Vec<usize> = (0..nv).collect();
    order.sort_by_key(|&v| (Reverse(h.w_comp(v)), Reverse(h.w_mem(v)), v));
    let mut parts = vec![NONE; nv];
    let mut load = vec![0u64; p];
    let mut conn = vec![0u64; p];
    for v in order {
        let min = *load.iter().min().expect("p >= 1");
        conn.iter_mut().for_each(|c| *c = 0);
        for &n in &inc[ptr[v]..ptr[v + 1]] {
            let pins = h.pins(n);
            if pins.len() > LARGE_NET {
                continue;
            }
            for &u in pins {
                if parts[u] != NONE {
                    conn[parts[u]] += h.cost(n);
                }
            }
        }
        let q = (0..p).filter(|&q| load[q] == min).max_by_key(|&q| (conn[q], Reverse(q))).expect("a lightest part");
        parts[v] = q;
        load[q] += h.w_comp(v);
    }
    parts
}

/// Initial `p`-way partition by recursive bisection. Each bisection grows a
/// region from a random seed vertex, always adding the frontier vertex most
/// connected to the region, until the region reaches its share of weight.
fn recursive_bisection(h: &Hypergraph, p: usize, eps: f64, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let nv = h.num_vertices();
    let (ptr, inc) = h.incidence();
    let mut parts = vec![0usize; nv];
    let mut stack = vec![((0..nv).collect::<Vec<usize>>(), 0usize, p)];
    let mut in_set = vec![false; nv];
    let mut in_region = vec![false; nv];
    let mut gain = vec![0u64; nv];
    while let Some((verts, lo, k)) = stack.pop() {
        if k == 1 || verts.is_empty() {
            for &v in &verts {
                parts[v] = lo;
            }
            continue;
        }
        let k1 = k / 2;
        let total: u64 = verts.iter().map(|&v| h.w_comp(v)).sum();
        let w = |v: usize| if total > 0 { h.w_comp(v) } else { 1 };
        let total = if total > 0 { total } else { verts.len() as u64 };
        let want = total as f64 * k1 as f64 / k as f64;
        let limit = want * (1.0 + eps);

        for &v in &verts {
            in_set[v] = true;
        }
        let mut heap: BinaryHeap<(u64, Reverse<usize>)> = BinaryHeap::new();
        let mut region_w = 0u64;
        let mut region = Vec::new();
        let mut rest: Vec<usize> = verts.clone();
        rest.shuffle(rng);
        let mut next_seed = 0;
        while (region_w as f64) < want {
            let v = loop {
                match heap.pop() {
                    Some((g, Reverse(v))) if !in_region[v] && g == gain[v] => break Some(v),
                    Some(_) => continue,
                    None => break None,
                }
            };
            let v = match v {
                Some(v) => v,
                None => {
                    // new component: random unused vertex
                    while next_seed < rest.len() && in_region[rest[next_seed]] {
                        next_seed += 1;
                    }
                    if next_seed == rest.len() {
                        break;
                    }
                    let v = rest[next_seed];
                    next_seed += 1;
                    v
                }
            };
            if region_w > 0 && region_w as f64 + w(v) as f64 > limit {
                // too heavy for the region; leave it for the other side
                in_region[v] = true;
                continue;
            }
            in_region[v] = true;
            region.push(v);
            region_w += w(v);
            for &n in &inc[ptr[v]..ptr[v + 1]] {
                let pins = h.pins(n);
                if pins.len() > LARGE_NET {
                    continue;
                }
                for &u in pins {
                    if in_set[u] && !in_region[u] {
                        gain[u] += h.cost(n);
                        heap.push((gain[u], Reverse(u)));
                    }
                }
            }
        }
        let region_set: std::collections::HashSet<usize> = region.iter().copied().collect();
        let other: Vec<usize> = verts.iter().copied().filter(|v| !region_set.contains(v)).collect();
        for &v in &verts {
            in_set[v] = false;
            in_region[v] = false;
            gain[v] = 0;
        }
        // a random coin keeps bisections of equal halves from always
        // favoring the grown side
        let (first, second) = if k1 * 2 == k && rng.gen::<bool>() { (other, region) } else { (region, other) };
        stack.push((second, lo + k1, k - k1));
        stack.push((first, lo, k1));
    }
    parts
}
