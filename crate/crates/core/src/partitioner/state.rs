//! Incremental bookkeeping for a partition under single-vertex moves.

use super::{Objective, Score};
use crate::hypergraph::Hypergraph;

pub(crate) struct State<'a> {
    pub h: &'a Hypergraph,
    pub p: usize,
    pub part: Vec<usize>,
    inc_ptr: Vec<usize>,
    inc: Vec<usize>,
    /// pins of net `n` in part `q`, at `n * p + q`
    pc: Vec<u32>,
    lambda: Vec<u32>,
    pub load: Vec<u64>,
    pub mload: Vec<u64>,
    /// cost of nets in each part's cut set
    cutc: Vec<u64>,
    cut_sum: u64,
    conn: u64,
    /// up to three largest `(cutc, part)` pairs
    top: [(u64, usize); 3],
    objective: Objective,
}

impl<'a> State<'a> {
    pub fn new(h: &'a Hypergraph, p: usize, part: Vec<usize>, objective: Objective) -> Self {
        let (inc_ptr, inc) = h.incidence();
        let nn = h.num_nets();
        let mut s = State {
            h,
            p,
            part,
            inc_ptr,
            inc,
            pc: vec![0; nn * p],
            lambda: vec![0; nn],
            load: vec![0; p],
            mload: vec![0; p],
            cutc: vec![0; p],
            cut_sum: 0,
            conn: 0,
            top: [(0, usize::MAX); 3],
            objective,
        };
        s.recompute();
        s
    }

    fn recompute(&mut self) {
        let (h, p) = (self.h, self.p);
        self.pc.iter_mut().for_each(|x| *x = 0);
        self.load.iter_mut().for_each(|x| *x = 0);
        self.mload.iter_mut().for_each(|x| *x = 0);
        self.cutc.iter_mut().for_each(|x| *x = 0);
        self.conn = 0;
        for v in 0..h.num_vertices() {
            self.load[self.part[v]] += h.w_comp(v);
            self.mload[self.part[v]] += h.w_mem(v);
        }
        for n in 0..h.num_nets() {
            let size = h.pins(n).len() as u32;
            for &v in h.pins(n) {
                self.pc[n * p + self.part[v]] += 1;
            }
            let row = &self.pc[n * p..(n + 1) * p];
            let lam = row.iter().filter(|&&c| c > 0).count() as u32;
            self.lambda[n] = lam;
            if lam > 1 {
                self.conn += h.cost(n) * (lam as u64 - 1);
                for q in 0..p {
                    if row[q] > 0 && row[q] < size {
                        self.cutc[q] += h.cost(n);
                    }
                }
            }
        }
        self.cut_sum = self.cutc.iter().sum();
        self.refresh_top();
    }

    fn refresh_top(&mut self) {
        const NONE: usize = usize::MAX;
        let mut top = [(0u64, NONE); 3];
        for (q, &c) in self.cutc.iter().enumerate() {
            let e = (c, q);
            if top[0].1 == NONE || c > top[0].0 {
                top = [e, top[0], top[1]];
            } else if top[1].1 == NONE || c > top[1].0 {
                top = [top[0], e, top[1]];
            } else if top[2].1 == NONE || c > top[2].0 {
                top[2] = e;
            }
        }
        self.top = top;
    }

    pub fn nets_of(&self, v: usize) -> &[usize] {
        &self.inc[self.inc_ptr[v]..self.inc_ptr[v + 1]]
    }

    pub fn max_cut(&self) -> u64 {
        self.cutc.iter().copied().max().unwrap_or(0)
    }

    pub fn score(&self) -> Score {
        match self.objective {
            Objective::Connectivity => Score(self.conn, 0),
            Objective::MaxPartCut => Score(self.max_cut(), self.cut_sum),
        }
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.nets_of(v).iter().any(|&n| self.lambda[n] > 1)
    }

    /// Parts other than `v`'s own that share a net with `v`, ascending.
    pub fn adjacent_parts(&self, v: usize, out: &mut Vec<usize>) {
        out.clear();
        let a = self.part[v];
        for &n in self.nets_of(v) {
            if self.lambda[n] as usize == 1 && self.pc[n * self.p + a] > 0 {
                continue;
            }
            let row = &self.pc[n * self.p..(n + 1) * self.p];
            for (q, &c) in row.iter().enumerate() {
                if c > 0 && q != a {
                    out.push(q);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
    }

    /// Score after moving `v` to part `b`, without applying the move.
    pub fn eval_move(&self, v: usize, b: usize) -> Score {
        let a = self.part[v];
        if a == b {
            return self.score();
        }
        let p = self.p;
        match self.objective {
            Objective::Connectivity => {
                let mut conn = self.conn as i64;
                for &n in self.nets_of(v) {
                    let c = self.h.cost(n) as i64;
                    if self.pc[n * p + b] == 0 {
                        conn += c;
                    }
                    if self.pc[n * p + a] == 1 {
                        conn -= c;
                    }
                }
                Score(conn as u64, 0)
            }
            Objective::MaxPartCut => {
                let (mut ca, mut cb) = (self.cutc[a] as i64, self.cutc[b] as i64);
                for &n in self.nets_of(v) {
                    let (da, db) = self.cut_deltas(n, a, b);
                    ca += da;
                    cb += db;
                }
                let other = self.top.iter().find(|(_, q)| *q != a && *q != b && *q != usize::MAX);
                let rest = other.map_or(0, |t| t.0);
                let max = rest.max(ca as u64).max(cb as u64);
                let sum = self.cut_sum as i64 - self.cutc[a] as i64 - self.cutc[b] as i64 + ca + cb;
                Score(max, sum as u64)
            }
        }
    }

    fn cut_deltas(&self, n: usize, a: usize, b: usize) -> (i64, i64) {
        let p = self.p;
        let size = self.h.pins(n).len() as u32;
        let c = self.h.cost(n) as i64;
        let (pa, pb) = (self.pc[n * p + a], self.pc[n * p + b]);
        let (old_a, new_a) = (pa < size, pa >= 2);
        let (old_b, new_b) = (pb > 0 && pb < size, pb + 1 < size);
        let d = |o: bool, nw: bool| (nw as i64 - o as i64) * c;
        (d(old_a, new_a), d(old_b, new_b))
    }

    pub fn apply_move(&mut self, v: usize, b: usize) {
        let a = self.part[v];
        if a == b {
            return;
        }
        let p = self.p;
        for idx in self.inc_ptr[v]..self.inc_ptr[v + 1] {
            let n = self.inc[idx];
            let (da, db) = self.cut_deltas(n, a, b);
            self.cutc[a] = (self.cutc[a] as i64 + da) as u64;
            self.cutc[b] = (self.cutc[b] as i64 + db) as u64;
            self.cut_sum = (self.cut_sum as i64 + da + db) as u64;
            let c = self.h.cost(n);
            if self.pc[n * p + b] == 0 {
                self.lambda[n] += 1;
                self.conn += c;
            }
            if self.pc[n * p + a] == 1 {
                self.lambda[n] -= 1;
                self.conn -= c;
            }
            self.pc[n * p + a] -= 1;
            self.pc[n * p + b] += 1;
        }
        let (wc, wm) = (self.h.w_comp(v), self.h.w_mem(v));
        self.load[a] -= wc;
        self.load[b] += wc;
        self.mload[a] -= wm;
        self.mload[b] += wm;
        self.part[v] = b;
        if self.objective == Objective::MaxPartCut {
            self.refresh_top();
        }
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.part
    }

    #[cfg(test)]
    pub fn check_consistent(&self) {
        let fresh = State::new(self.h, self.p, self.part.clone(), self.objective);
        assert_eq!(fresh.pc, self.pc);
        assert_eq!(fresh.cutc, self.cutc);
        assert_eq!(fresh.conn, self.conn);
        assert_eq!(fresh.load, self.load);
        assert_eq!(fresh.lambda, self.lambda);
    }
}
