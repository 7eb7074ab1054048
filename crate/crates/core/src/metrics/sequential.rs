//! Sequential two-level memory model: a blocked schedule and an exact
//! lower bound on its I/O.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::check_partition;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Partition, VertexLabel};
use crate::sparse::{mult_triples, NonzeroStructure, Triple};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IoTrace {
    pub loads: u64,
    pub stores: u64,
    /// Number of blocks executed.
    pub blocks: u64,
    pub fast_memory: usize,
}

impl IoTrace {
    pub fn total(&self) -> u64 {
        self.loads + self.stores
    }
}

/// Executes the multiplications of `h` part by part in blocks that fit in a
/// fast memory of `m_fast` words.
///
/// Each part's sets of touched A, B and C nonzeros are sorted and cut into
/// chunks of `m = m_fast / 3`. A block is a distinct (A chunk, B chunk, C
/// chunk) combination used by some multiplication of the part; blocks run in
/// order of part, then C, A and B chunk. A block loads its A and B chunks in
/// full and those of its C entries that an earlier block already wrote, and
/// stores every C entry it updates. Only multiplication vertices matter.
pub fn simulate_sequential_blocked(h: &Hypergraph, part: &Partition, m_fast: usize) -> Result<IoTrace> {
    check_partition(h, part)?;
    if m_fast < 3 {
        return Err(Error::InvalidArgument(format!("fast memory {m_fast} must hold at least 3 words")));
    }
    let m = m_fast / 3;
    let mut by_part: Vec<Vec<Triple>> = vec![Vec::new(); part.p()];
    for (v, l) in h.labels().iter().enumerate() {
        if let VertexLabel::Mult { i, k, j } = *l {
            by_part[part.part(v)].push(Triple::new(i, k, j));
        }
    }
    let mut trace = IoTrace { fast_memory: m_fast, ..Default::default() };
    let mut written: HashSet<(usize, usize)> = HashSet::new();
    for mults in &by_part {
        let rank = |keys: BTreeSet<(usize, usize)>| -> (HashMap<(usize, usize), usize>, usize) {
            let len = keys.len();
            (keys.into_iter().enumerate().map(|(r, key)| (key, r)).collect(), len)
        };
        let (ra, na) = rank(mults.iter().map(|t| (t.i, t.k)).collect());
        let (rb, nb) = rank(mults.iter().map(|t| (t.k, t.j)).collect());
        let (rc, _) = rank(mults.iter().map(|t| (t.i, t.j)).collect());
        // (C chunk, A chunk, B chunk) -> C entries updated
        let mut blocks: BTreeSet<(usize, usize, usize, (usize, usize))> = BTreeSet::new();
        for t in mults {
            let (ca, cb, cc) = (ra[&(t.i, t.k)] / m, rb[&(t.k, t.j)] / m, rc[&(t.i, t.j)] / m);
            blocks.insert((cc, ca, cb, (t.i, t.j)));
        }
        let chunk_len = |c: usize, len: usize| m.min(len - c * m) as u64;
        let mut iter = blocks.into_iter().peekable();
        while let Some((cc, ca, cb, first)) = iter.next() {
            let mut entries = vec![first];
            while let Some(&(c2, a2, b2, e)) = iter.peek() {
                if (c2, a2, b2) != (cc, ca, cb) {
                    break;
                }
                entries.push(e);
                iter.next();
            }
            trace.blocks += 1;
            trace.loads += chunk_len(ca, na) + chunk_len(cb, nb);
            trace.loads += entries.iter().filter(|e| written.contains(e)).count() as u64;
            trace.stores += entries.len() as u64;
            written.extend(entries);
        }
    }
    Ok(trace)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LowerBound {
    /// Fewest parts such that every part touches at most `2M` nonzeros of
    /// each of A, B and C.
    pub h: usize,
    /// `M * (h - 1)` words of I/O.
    pub bound: u64,
}

/// Exact lower bound with the default guard of 14 multiplications.
pub fn sequential_lb(a: &NonzeroStructure, b: &NonzeroStructure, m_fast: usize) -> Result<LowerBound> {
    sequential_lb_with(a, b, m_fast, 14)
}

/// Finds the smallest `h` for which the multiplications split into `h`
/// parts, each touching at most `2 * m_fast` distinct nonzeros of A, of B
/// and of C. Data vertices never constrain the split, so only
/// multiplications are counted against `max_mults` (at most 128).
pub fn sequential_lb_with(
    a: &NonzeroStructure,
    b: &NonzeroStructure,
    m_fast: usize,
    max_mults: usize,
) -> Result<LowerBound> {
    if m_fast < 3 {
        return Err(Error::InvalidArgument(format!("fast memory {m_fast} must hold at least 3 words")));
    }
    let triples: Vec<Triple> = mult_triples(a, b)?.collect();
    if triples.len() > max_mults.min(128) {
        return Err(Error::SizeGuard(format!(
            "lower-bound search allows {} multiplications, got {}",
            max_mults.min(128),
            triples.len()
        )));
    }
    let index = |keys: Vec<(usize, usize)>| -> Vec<u128> {
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        sorted.dedup();
        keys.iter().map(|k| 1u128 << sorted.binary_search(k).unwrap()).collect()
    };
    let ma = index(triples.iter().map(|t| (t.i, t.k)).collect());
    let mb = index(triples.iter().map(|t| (t.k, t.j)).collect());
    let mc = index(triples.iter().map(|t| (t.i, t.j)).collect());
    let items: Vec<[u128; 3]> = (0..triples.len()).map(|v| [ma[v], mb[v], mc[v]]).collect();
    let cap = 2 * m_fast as u32;

    let mut h = 1;
    if !items.is_empty() {
        let all = items.iter().fold([0u128; 3], |acc, x| [acc[0] | x[0], acc[1] | x[1], acc[2] | x[2]]);
        h = all.iter().map(|s| s.count_ones().div_ceil(cap) as usize).max().unwrap().max(1);
        loop {
            let mut search = LbSearch { items: &items, cap, k: h, failed: HashSet::new() };
            if search.dfs(0, &mut Vec::new()) {
                break;
            }
            h += 1;
        }
    }
    Ok(LowerBound { h, bound: m_fast as u64 * (h as u64 - 1) })
}

struct LbSearch<'a> {
    items: &'a [[u128; 3]],
    cap: u32,
    k: usize,
    failed: HashSet<(usize, Vec<[u128; 3]>)>,
}

impl LbSearch<'_> {
    fn dfs(&mut self, v: usize, parts: &mut Vec<[u128; 3]>) -> bool {
        if v == self.items.len() {
            return true;
        }
        let mut key = parts.clone();
        key.sort_unstable();
        let key = (v, key);
        if self.failed.contains(&key) {
            return false;
        }
        let x = self.items[v];
        // a part already holding all three nonzeros absorbs v for free
        if parts.iter().any(|s| (0..3).all(|d| s[d] & x[d] == x[d])) {
            let ok = self.dfs(v + 1, parts);
            if !ok {
                self.failed.insert(key);
            }
            return ok;
        }
        let mut seen: Vec<[u128; 3]> = Vec::new();
        for q in 0..parts.len() {
            let old = parts[q];
            let new = [old[0] | x[0], old[1] | x[1], old[2] | x[2]];
            if new.iter().any(|s| s.count_ones() > self.cap) || seen.contains(&old) {
                continue;
            }
            seen.push(old);
            parts[q] = new;
            let ok = self.dfs(v + 1, parts);
            parts[q] = old;
            if ok {
                return true;
            }
        }
        if parts.len() < self.k {
            parts.push(x);
            let ok = self.dfs(v + 1, parts);
            parts.pop();
            if ok {
                return true;
            }
        }
        self.failed.insert(key);
        false
    }
}
