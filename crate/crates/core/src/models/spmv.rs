use crate::error::{Error, Result};
use crate::hypergraph::{CoarseLabel, Hypergraph, HypergraphBuilder, NetLabel, VertexLabel};
use crate::sparse::NonzeroStructure;

/// Fine-grain model of `y = A x` for square `A`.
///
/// Each off-diagonal nonzero is a vertex of weight `(1, 1)`. For every `i`
/// the entries `x_i`, `y_i` and `a_ii` share one diagonal vertex, weighted
/// `(1, 3)` when `a_ii` is stored and `(0, 2)` otherwise. Diagonal vertices
/// come first. Each row and column gives a unit-cost net; one-pin nets are
/// left out, as are the nets of single nonzeros of A.
pub fn build_spmv_finegrain(a: &NonzeroStructure) -> Result<Hypergraph> {
    let n = a.n_rows();
    if a.n_cols() != n {
        return Err(Error::Dimension(format!("SpMV needs a square matrix, got {}x{}", n, a.n_cols())));
    }
    let mut hb = HypergraphBuilder::new();
    for i in 0..n {
        let (wc, wm) = if a.contains(i, i) { (1, 3) } else { (0, 2) };
        hb.add_vertex(VertexLabel::Coarse(CoarseLabel::Diag(i)), wc, wm);
    }
    let mut rows: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut cols: Vec<Vec<usize>> = (0..n).map(|k| vec![k]).collect();
    for (i, k) in a.iter().filter(|&(i, k)| i != k) {
        let v = hb.add_vertex(VertexLabel::NzA { i, k }, 1, 1);
        rows[i].push(v);
        cols[k].push(v);
    }
    for (i, pins) in rows.into_iter().enumerate().filter(|(_, p)| p.len() > 1) {
        hb.add_net(NetLabel::SpmvRow(i), 1, pins);
    }
    for (k, pins) in cols.into_iter().enumerate().filter(|(_, p)| p.len() > 1) {
        hb.add_net(NetLabel::SpmvCol(k), 1, pins);
    }
    Ok(hb.build())
}
