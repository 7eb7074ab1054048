//! Move-based local improvement and rebalancing.

use super::state::State;
use super::{Caps, PartitionConfig, Score};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Partition};

/// Levels up to this many vertices also get rollback passes, which scan
/// every vertex per move.
pub(crate) const FM_LIMIT: usize = 400;

/// Swap search in the rebalancer is quadratic; skip it above this size.
const SWAP_LIMIT: usize = 5000;

fn fits(s: &State, caps: &Caps, v: usize, b: usize) -> bool {
    s.load[b] + s.h.w_comp(v) <= caps.comp && s.mload[b].saturating_add(s.h.w_mem(v)) <= caps.mem
}

fn max_load(s: &State) -> u64 {
    s.load.iter().copied().max().unwrap_or(0)
}

/// One sweep over boundary vertices in index order. A vertex moves to the
/// adjacent part that gives the best score, provided the target stays
/// within its cap and the move strictly improves the score, or keeps it
/// while evening out the two loads.
pub(crate) fn greedy_pass(s: &mut State, caps: &Caps) -> bool {
    let mut moved = false;
    let mut adj = Vec::new();
    for v in 0..s.h.num_vertices() {
        if !s.is_boundary(v) {
            continue;
        }
        let a = s.part[v];
        let w = s.h.w_comp(v);
        s.adjacent_parts(v, &mut adj);
        let cur = s.score();
        let mut best: Option<(Score, u64, usize)> = None;
        for &b in &adj {
            if !fits(s, caps, v, b) {
                continue;
            }
            let sc = s.eval_move(v, b);
            let evens = sc == cur && w > 0 && s.load[a] > s.load[b] + w;
            if sc < cur || evens {
                let key = (sc, s.load[b], b);
                if best.is_none_or(|bk| key < bk) {
                    best = Some(key);
                }
            }
        }
        if let Some((_, _, b)) = best {
            s.apply_move(v, b);
            moved = true;
        }
    }
    moved
}

/// Fiduccia-Mattheyses style pass: repeatedly apply the best feasible move
/// of an unlocked vertex, even if it worsens the score, then roll back to
/// the best prefix. Returns true if the kept prefix is nonempty.
pub(crate) fn fm_pass(s: &mut State, caps: &Caps) -> bool {
    let nv = s.h.num_vertices();
    let mut locked = vec![false; nv];
    let mut moves: Vec<(usize, usize)> = Vec::new();
    let mut best = (s.score(), max_load(s));
    let mut best_len = 0;
    let mut adj = Vec::new();
    while moves.len() < nv && moves.len() - best_len <= 64 {
        let mut pick: Option<(Score, usize, usize)> = None;
        for v in 0..nv {
            if locked[v] {
                continue;
            }
            s.adjacent_parts(v, &mut adj);
            for &b in &adj {
                if !fits(s, caps, v, b) {
                    continue;
                }
                let key = (s.eval_move(v, b), v, b);
                if pick.is_none_or(|pk| key < pk) {
                    pick = Some(key);
                }
            }
        }
        let Some((_, v, b)) = pick else { break };
        moves.push((v, s.part[v]));
        s.apply_move(v, b);
        locked[v] = true;
        let now = (s.score(), max_load(s));
        if now < best {
            best = now;
            best_len = moves.len();
        }
    }
    for &(v, from) in moves[best_len..].iter().rev() {
        s.apply_move(v, from);
    }
    best_len > 0
}

/// Runs up to `passes` rounds of greedy and (on small inputs) rollback
/// passes, stopping early once a round changes nothing.
pub(crate) fn refine_level(s: &mut State, caps: &Caps, passes: usize) {
    for _ in 0..passes {
        let mut improved = greedy_pass(s, caps);
        if s.h.num_vertices() <= FM_LIMIT {
            improved |= fm_pass(s, caps);
        }
        if !improved {
            break;
        }
    }
}

fn overload(s: &State, caps: &Caps, q: usize) -> u64 {
    s.load[q].saturating_sub(caps.comp) + s.mload[q].saturating_sub(caps.mem)
}

/// Moves (and if needed swaps) vertices out of overloaded parts until all
/// parts fit, picking the cheapest change each time. Every step lowers the
/// total overload, so the loop terminates. Returns whether it succeeded.
pub(crate) fn rebalance(s: &mut State, caps: &Caps) -> bool {
    let nv = s.h.num_vertices();
    let mut members: Vec<usize> = Vec::new();
    loop {
        let Some(a) = (0..s.p).filter(|&q| overload(s, caps, q) > 0).max_by_key(|&q| (overload(s, caps, q), std::cmp::Reverse(q))) else {
            return true;
        };
        let comp_over = s.load[a] > caps.comp;
        let helps = |s: &State, v: usize| if comp_over { s.h.w_comp(v) > 0 } else { s.h.w_mem(v) > 0 };
        members.clear();
        members.extend((0..nv).filter(|&v| s.part[v] == a && helps(s, v)));

        let mut best: Option<(Score, usize, usize)> = None;
        for &v in &members {
            for b in 0..s.p {
                if b == a || !fits(s, caps, v, b) {
                    continue;
                }
                let key = (s.eval_move(v, b), v, b);
                if best.is_none_or(|bk| key < bk) {
                    best = Some(key);
                }
            }
        }
        if let Some((_, v, b)) = best {
            s.apply_move(v, b);
            continue;
        }
        if nv > SWAP_LIMIT {
            return false;
        }
        // exchange v in `a` with a lighter u elsewhere
        let mut best: Option<(Score, usize, usize)> = None;
        for &v in &members {
            for u in 0..nv {
                let b = s.part[u];
                if b == a {
                    continue;
                }
                let (wv, wu) = (s.h.w_comp(v), s.h.w_comp(u));
                let (mv, mu) = (s.h.w_mem(v), s.h.w_mem(u));
                let lowers = if comp_over { wu < wv } else { mu < mv };
                if !lowers
                    || s.load[b] - wu + wv > caps.comp
                    || (s.mload[b] - mu).saturating_add(mv) > caps.mem
                {
                    continue;
                }
                // the other component must not push `a` further over
                if comp_over && s.mload[a] - mv + mu > caps.mem.max(s.mload[a]) {
                    continue;
                }
                if !comp_over && s.load[a] - wv + wu > caps.comp.max(s.load[a]) {
                    continue;
                }
                s.apply_move(v, b);
                let sc = s.eval_move(u, a);
                s.apply_move(v, a);
                let key = (sc, v, u);
                if best.is_none_or(|bk| key < bk) {
                    best = Some(key);
                }
            }
        }
        let Some((_, v, u)) = best else { return false };
        let b = s.part[u];
        s.apply_move(v, b);
        s.apply_move(u, a);
    }
}

/// Local improvement of an existing partition. The score never increases,
/// moves never push a part over its cap, and ties go to the lowest vertex
/// and part index. Stops after `refinement_passes` rounds or once a round
/// changes nothing.
pub fn refine_fm(h: &Hypergraph, part: &Partition, cfg: &PartitionConfig) -> Result<Partition> {
    if part.len() != h.num_vertices() {
        return Err(Error::PartitionMismatch(format!(
            "partition has {} entries for {} vertices",
            part.len(),
            h.num_vertices()
        )));
    }
    if part.p() != cfg.p {
        return Err(Error::PartitionMismatch(format!("partition has p = {}, config p = {}", part.p(), cfg.p)));
    }
    cfg.check()?;
    let caps = Caps::new(h, cfg);
    let mut s = State::new(h, cfg.p, part.parts().to_vec(), cfg.objective);
    refine_level(&mut s, &caps, cfg.refinement_passes);
    Partition::new(cfg.p, s.into_parts())
}
