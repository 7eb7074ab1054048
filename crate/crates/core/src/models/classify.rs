use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Partition, VertexLabel};
use crate::sparse::{MultTripleSet, Triple};

/// Which slice and fiber families a parallelization keeps on one part.
///
/// `a`, `b`, `c` refer to fibers `(i,k,*)`, `(*,k,j)`, `(i,*,j)`; `r`, `l`,
/// `u` to slices with fixed `i`, fixed `j` and fixed `k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParallelizationFlags {
    pub r: bool,
    pub l: bool,
    pub u: bool,
    pub a: bool,
    pub b: bool,
    pub c: bool,
}

impl ParallelizationFlags {
    /// Parses a string such as `"ABU"`; order does not matter.
    pub fn from_letters(s: &str) -> Self {
        let mut f = Self::default();
        for ch in s.chars() {
            match ch {
                'R' => f.r = true,
                'L' => f.l = true,
                'U' => f.u = true,
                'A' => f.a = true,
                'B' => f.b = true,
                'C' => f.c = true,
                _ => {}
            }
        }
        f
    }

    pub fn all() -> Self {
        Self::from_letters("RLUABC")
    }
}

impl fmt::Display for ParallelizationFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = [(self.r, 'R'), (self.l, 'L'), (self.u, 'U'), (self.a, 'A'), (self.b, 'B'), (self.c, 'C')];
        let names: Vec<String> = set.iter().filter(|(on, _)| *on).map(|(_, c)| c.to_string()).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

fn monochrome<K: Hash + Eq>(items: impl Iterator<Item = (K, usize)>) -> bool {
    let mut seen: HashMap<K, usize> = HashMap::new();
    for (k, part) in items {
        if *seen.entry(k).or_insert(part) != part {
            return false;
        }
    }
    true
}

/// Flags of the parallelization that puts triple `t` on `part_of(t)`.
pub fn classify_parallelization(
    m: &MultTripleSet,
    part_of: impl Fn(Triple) -> Option<usize>,
) -> Result<ParallelizationFlags> {
    let assigned: Vec<(Triple, usize)> = m
        .iter()
        .map(|t| part_of(t).map(|q| (t, q)).ok_or(Error::MissingTriple(t.i, t.k, t.j)))
        .collect::<Result<_>>()?;
    let it = || assigned.iter().copied();
    Ok(ParallelizationFlags {
        r: monochrome(it().map(|(t, q)| (t.i, q))),
        l: monochrome(it().map(|(t, q)| (t.j, q))),
        u: monochrome(it().map(|(t, q)| (t.k, q))),
        a: monochrome(it().map(|(t, q)| ((t.i, t.k), q))),
        b: monochrome(it().map(|(t, q)| ((t.k, t.j), q))),
        c: monochrome(it().map(|(t, q)| ((t.i, t.j), q))),
    })
}

/// Classifies a partition of a fine-grained hypergraph by the parts of its
/// multiplication vertices.
pub fn classify_partition(h: &Hypergraph, part: &Partition) -> Result<ParallelizationFlags> {
    let mut map = HashMap::new();
    let mut triples = Vec::new();
    for v in 0..h.num_vertices() {
        if let VertexLabel::Mult { i, k, j } = h.label(v) {
            let t = Triple::new(i, k, j);
            map.insert(t, part.part(v));
            triples.push(t);
        }
    }
    let m = MultTripleSet::from_triples(triples);
    classify_parallelization(&m, |t| map.get(&t).copied())
}
