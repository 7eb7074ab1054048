//! Subcube baselines for the AMG model problem.
//!
//! The grid is cut into `q^3` contiguous subcubes (`q = p^(1/3)`), and each
//! part owns one subcube. Parts are numbered in the same x-fastest order as
//! grid points.

use crate::error::{Error, Result};
use crate::hypergraph::{CoarseLabel, Hypergraph, Partition, VertexLabel};
use crate::sparse::{aggregate_of, Grid3};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeometricScheme {
    /// Row-wise model of `A * P`, split by fine-grid subcubes.
    Row,
    /// Outer-product model of `P^T * (A P)`, split by coarse-grid subcubes.
    Outer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeometricProblem {
    /// Fine grid side.
    pub n: usize,
    pub scheme: GeometricScheme,
}

fn cube_root(p: usize) -> Option<usize> {
    let q = (p as f64).cbrt().round() as usize;
    (q * q * q == p).then_some(q)
}

/// Part owning point `u` of a grid with side `side` cut into `q^3` subcubes.
fn subcube(side: usize, q: usize, u: usize) -> usize {
    let [x, y, z] = Grid3::new(side).coords(u);
    let s = side / q;
    Grid3::new(q).index([x / s, y / s, z / s])
}

/// Assigns every vertex of `h` (the model named by `problem.scheme`) to the
/// part owning its subcube.
///
/// Row: `Row(i)` goes with fine point `i`, `RowOfB(k)` with fine point `k`.
/// Outer: `Outer(k)` goes with the aggregate of fine point `k`, and C
/// nonzeros with their coarse row. Requires `p` to be a perfect cube whose
/// root divides `n` (Row) or `n / 3` (Outer).
pub fn geometric_partition(h: &Hypergraph, problem: GeometricProblem, p: usize) -> Result<Partition> {
    let n = problem.n;
    let q = cube_root(p).ok_or_else(|| Error::InvalidArgument(format!("p = {p} is not a perfect cube")))?;
    if n == 0 || !n.is_multiple_of(3) {
        return Err(Error::InvalidArgument(format!("grid side {n} must be a positive multiple of 3")));
    }
    let nc = n / 3;
    let parts = match problem.scheme {
        GeometricScheme::Row => {
            if !n.is_multiple_of(q) {
                return Err(Error::InvalidArgument(format!("cube root {q} of p does not divide N = {n}")));
            }
            let fine = n * n * n;
            h.labels()
                .iter()
                .map(|l| match *l {
                    VertexLabel::Coarse(CoarseLabel::Row(i) | CoarseLabel::RowOfB(i)) if i < fine => {
                        Ok(subcube(n, q, i))
                    }
                    other => Err(Error::InvalidArgument(format!("vertex {other} is not part of the row-wise model"))),
                })
                .collect::<Result<Vec<_>>>()?
        }
        GeometricScheme::Outer => {
            if !nc.is_multiple_of(q) {
                return Err(Error::InvalidArgument(format!("cube root {q} of p does not divide N/3 = {nc}")));
            }
            let (fine, coarse) = (n * n * n, nc * nc * nc);
            h.labels()
                .iter()
                .map(|l| match *l {
                    VertexLabel::Coarse(CoarseLabel::Outer(k)) if k < fine => Ok(subcube(nc, q, aggregate_of(n, k))),
                    VertexLabel::NzC { i, .. } if i < coarse => Ok(subcube(nc, q, i)),
                    other => {
                        Err(Error::InvalidArgument(format!("vertex {other} is not part of the outer-product model")))
                    }
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    Partition::new(p, parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{build_model, ModelKind, ModelSpec};
    use crate::sparse::{amg_ap, amg_ptap};

    #[test]
    fn trivial_single_part() {
        let (a, p) = amg_ap(3).unwrap();
        let h = build_model(&a, &p, &ModelSpec::new(ModelKind::RowWise)).unwrap();
        let part = geometric_partition(&h, GeometricProblem { n: 3, scheme: GeometricScheme::Row }, 1).unwrap();
        assert!(part.parts().iter().all(|&x| x == 0));
    }

    #[test]
    fn row_owns_27_fine_rows() {
        let (a, p) = amg_ap(6).unwrap();
        let h = build_model(&a, &p, &ModelSpec::new(ModelKind::RowWise)).unwrap();
        let part = geometric_partition(&h, GeometricProblem { n: 6, scheme: GeometricScheme::Row }, 8).unwrap();
        let mut rows = [0; 8];
        for (v, l) in h.labels().iter().enumerate() {
            if let VertexLabel::Coarse(CoarseLabel::Row(_)) = l {
                rows[part.part(v)] += 1;
            }
        }
        assert_eq!(rows, [27; 8]);
    }

    #[test]
    fn outer_owns_one_coarse_point() {
        let (pt, ap) = amg_ptap(6).unwrap();
        let h = build_model(&pt, &ap, &ModelSpec::new(ModelKind::OuterProduct)).unwrap();
        let part = geometric_partition(&h, GeometricProblem { n: 6, scheme: GeometricScheme::Outer }, 8).unwrap();
        let mut owners = vec![Vec::new(); 8];
        for (v, l) in h.labels().iter().enumerate() {
            if let VertexLabel::NzC { i, .. } = l {
                owners[part.part(v)].push(*i);
            }
        }
        for (q, rows) in owners.iter_mut().enumerate() {
            rows.dedup();
            assert_eq!(rows, &vec![q]);
        }
    }

    #[test]
    fn divisibility() {
        let (a, p) = amg_ap(6).unwrap();
        let h = build_model(&a, &p, &ModelSpec::new(ModelKind::RowWise)).unwrap();
        let row = GeometricProblem { n: 6, scheme: GeometricScheme::Row };
        assert!(geometric_partition(&h, row, 4).is_err());
        assert!(geometric_partition(&h, row, 64).is_err());
        let outer = GeometricProblem { n: 6, scheme: GeometricScheme::Outer };
        assert!(geometric_partition(&h, outer, 27).is_err());
    }
}
