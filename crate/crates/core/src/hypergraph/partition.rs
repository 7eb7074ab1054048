use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Assignment of every vertex to one of `p` parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    p: usize,
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(p: usize, parts: Vec<usize>) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidArgument("part count must be at least 1".into()));
        }
        if let Some((v, &q)) = parts.iter().enumerate().find(|(_, &q)| q >= p) {
            return Err(Error::InvalidArgument(format!("vertex {v} assigned to part {q} >= p = {p}")));
        }
        Ok(Self { p, parts })
    }

    /// Everything in part 0.
    pub fn single(p: usize, n: usize) -> Self {
        Self { p: p.max(1), parts: vec![0; n] }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, v: usize) -> usize {
        self.parts[v]
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of `w` over each part.
    pub fn part_sums(&self, w: &[u64]) -> Vec<u64> {
        let mut s = vec![0u64; self.p];
        for (v, &q) in self.parts.iter().enumerate() {
            s[q] += w[v];
        }
        s
    }

    /// Relabels parts in order of first occurrence, so equal partitions
    /// compare equal regardless of part naming.
    pub fn canonical(&self) -> Self {
        let mut map = vec![usize::MAX; self.p];
        let mut next = 0;
        let parts = self
            .parts
            .iter()
            .map(|&q| {
                if map[q] == usize::MAX {
                    map[q] = next;
                    next += 1;
                }
                map[q]
            })
            .collect();
        Self { p: self.p, parts }
    }
}

/// `p <p>` followed by one `<vertex> <part>` line per vertex.
pub fn write_partition(part: &Partition) -> String {
    let mut out = String::with_capacity(8 * part.len() + 8);
    let _ = writeln!(out, "p {}", part.p);
    for (v, q) in part.parts.iter().enumerate() {
        let _ = writeln!(out, "{v} {q}");
    }
    out
}

pub fn read_partition(text: &str) -> Result<Partition> {
    let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (ln, head) = lines.next().ok_or_else(|| err(1, "missing 'p <parts>' line"))?;
    let p: usize = head
        .strip_prefix("p ")
        .and_then(|t| t.trim().parse().ok())
        .ok_or_else(|| err(ln, "expected 'p <parts>'"))?;
    let mut parts = Vec::new();
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        let (Some(v), Some(q), None) = (toks.next(), toks.next(), toks.next()) else {
            return Err(err(ln, "expected '<vertex> <part>'"));
        };
        let v: usize = v.parse().map_err(|_| err(ln, "bad vertex index"))?;
        let q: usize = q.parse().map_err(|_| err(ln, "bad part index"))?;
        if v != parts.len() {
            return Err(err(ln, "vertex indices must be listed in order from 0"));
        }
        if q >= p {
            return Err(err(ln, "part index out of range"));
        }
        parts.push(q);
    }
    Partition::new(p, parts)
}
