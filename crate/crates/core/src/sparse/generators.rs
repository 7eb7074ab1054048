//! Test-instance generators.
//!
//! Grid points of an `N x N x N` grid are linearized x-fastest:
//! `index = x + N*y + N*N*z`. The same order is used for the coarse grid of
//! the prolongator, whose aggregates are the `3 x 3 x 3` blocks of fine
//! points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{product_structure, NonzeroStructure};
use crate::error::{Error, Result};

/// Linearization of a cubic grid with side `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grid3 {
    pub n: usize,
}

impl Grid3 {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn index(&self, [x, y, z]: [usize; 3]) -> usize {
        x + self.n * (y + self.n * z)
    }

    pub fn coords(&self, u: usize) -> [usize; 3] {
        [u % self.n, (u / self.n) % self.n, u / (self.n * self.n)]
    }

    /// Points differing from `u` by at most one in every coordinate,
    /// including `u` itself, in ascending index order.
    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        let [x, y, z] = self.coords(u);
        let span = |c: usize| c.saturating_sub(1)..=(c + 1).min(self.n - 1);
        let mut out = Vec::with_capacity(27);
        for zz in span(z) {
            for yy in span(y) {
                for xx in span(x) {
                    out.push(self.index([xx, yy, zz]));
                }
            }
        }
        out
    }
}

/// 27-point stencil on an `n^3` grid.
pub fn gen_stencil27(n: usize) -> Result<NonzeroStructure> {
    if n == 0 {
        return Err(Error::InvalidArgument("grid side must be at least 1".into()));
    }
    let g = Grid3::new(n);
    let rows = (0..g.len()).map(|u| g.neighbors(u)).collect();
    Ok(NonzeroStructure::from_rows(g.len(), rows))
}

/// Coarse point (aggregate) owning fine point `u` when `n` is divisible by 3.
pub fn aggregate_of(n: usize, u: usize) -> usize {
    let fine = Grid3::new(n);
    let coarse = Grid3::new(n / 3);
    let [x, y, z] = fine.coords(u);
    coarse.index([x / 3, y / 3, z / 3])
}

/// Structure of the damped-Jacobi smoothed-aggregation prolongator:
/// stencil times the tentative prolongator over `3 x 3 x 3` aggregates.
///
/// Row `u` has a nonzero in coarse column `c` iff some stencil neighbor of
/// `u` lies in aggregate `c`.
pub fn gen_sa_prolongator(n: usize) -> Result<NonzeroStructure> {
    if n == 0 || !n.is_multiple_of(3) {
        return Err(Error::InvalidArgument(format!(
            "grid side {n} must be a positive multiple of 3"
        )));
    }
    let g = Grid3::new(n);
    let nc = n / 3;
    let rows = (0..g.len())
        .map(|u| {
            let mut row: Vec<usize> = g.neighbors(u).into_iter().map(|v| aggregate_of(n, v)).collect();
            row.sort_unstable();
            row.dedup();
            row
        })
        .collect();
    Ok(NonzeroStructure::from_rows(nc * nc * nc, rows))
}

/// Operands of the AMG product `A * P` on an `n^3` grid.
pub fn amg_ap(n: usize) -> Result<(NonzeroStructure, NonzeroStructure)> {
    Ok((gen_stencil27(n)?, gen_sa_prolongator(n)?))
}

/// Operands of the AMG triple product's second step, `P^T * (A P)`.
pub fn amg_ptap(n: usize) -> Result<(NonzeroStructure, NonzeroStructure)> {
    let (a, p) = amg_ap(n)?;
    let ap = product_structure(&a, &p)?;
    Ok((p.transpose(), ap))
}

/// Square `n x n` pattern with every entry present independently with
/// probability `d / n`. Deterministic for a given seed.
pub fn gen_erdos_renyi(n: usize, d: f64, seed: u64) -> Result<NonzeroStructure> {
    if n == 0 || !(d >= 0.0) || d > n as f64 {
        return Err(Error::InvalidArgument(format!(
            "need n >= 1 and 0 <= d <= n (got n={n}, d={d})"
        )));
    }
    let q = d / n as f64;
    let total = n * n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coords = Vec::new();
    if q >= 1.0 {
        coords.extend((0..total).map(|x| (x / n, x % n)));
    } else if q > 0.0 {
        // geometric skipping over the row-major positions
        let log_q = (1.0 - q).ln();
        let mut pos: usize = 0;
        loop {
            let u: f64 = rng.gen::<f64>();
            let skip = ((1.0 - u).ln() / log_q).floor();
            if !skip.is_finite() || skip >= (total - pos) as f64 {
                break;
            }
            pos += skip as usize;
            coords.push((pos / n, pos % n));
            pos += 1;
            if pos >= total {
                break;
            }
        }
    }
    Ok(NonzeroStructure::from_sorted_unique(n, n, &coords))
}
