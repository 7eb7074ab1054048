//! Restricted (1D and 2D) SpGEMM models, built directly from the
//! structures without materializing the fine-grained hypergraph.
//!
//! Every builder needs the product pattern `S_C`, which costs about as much
//! as a symbolic multiplication.

use super::coarsen::drop_data_vertices;
use super::fine::require_nonempty;
use super::ModelKind;
use crate::error::{Error, Result};
use crate::hypergraph::{CoarseLabel, Hypergraph, HypergraphBuilder, NetLabel, VertexLabel};
use crate::sparse::{check_inner, product_structure, NonzeroStructure};

pub fn build_restricted(
    a: &NonzeroStructure,
    b: &NonzeroStructure,
    kind: ModelKind,
    with_data_vertices: bool,
) -> Result<Hypergraph> {
    check_inner(a, b)?;
    require_nonempty(a, b, true)?;
    let h = match kind {
        ModelKind::RowWise => row_wise(a, b)?,
        ModelKind::ColWise => row_wise(&b.transpose(), &a.transpose())?.mirrored(),
        ModelKind::OuterProduct => outer_product(a, b)?,
        ModelKind::MonoA => mono_a(a, b)?,
        ModelKind::MonoB => mono_a(&b.transpose(), &a.transpose())?.mirrored(),
        ModelKind::MonoC => mono_c(a, b)?,
        other => {
            return Err(Error::InvalidArgument(format!("'{other}' is not a restricted model")));
        }
    };
    Ok(if with_data_vertices { h } else { drop_data_vertices(&h) })
}

/// Row-wise parallelization with row-wise A, B and C.
fn row_wise(a: &NonzeroStructure, b: &NonzeroStructure) -> Result<Hypergraph> {
    let c = product_structure(a, b)?;
    let at = a.transpose();
    let mut hb = HypergraphBuilder::new();
    for i in 0..a.n_rows() {
        let comp: usize = a.row(i).iter().map(|&k| b.row_nnz(k)).sum();
        let mem = a.row_nnz(i) + c.row_nnz(i);
        hb.add_vertex(VertexLabel::Coarse(CoarseLabel::Row(i)), comp as u64, mem as u64);
    }
    let base = a.n_rows();
    for k in 0..b.n_rows() {
        hb.add_vertex(VertexLabel::Coarse(CoarseLabel::RowOfB(k)), 0, b.row_nnz(k) as u64);
    }
    for k in 0..b.n_rows() {
        let pins = at.row(k).iter().copied().chain([base + k]);
        hb.add_net(NetLabel::RowOfB(k), b.row_nnz(k) as u64, pins);
    }
    Ok(hb.build())
}

/// Outer-product parallelization with column-wise A, row-wise B and
/// fine-grained C.
fn outer_product(a: &NonzeroStructure, b: &NonzeroStructure) -> Result<Hypergraph> {
    let c = product_structure(a, b)?;
    let col_a = a.col_counts();
    let mut hb = HypergraphBuilder::new();
    for k in 0..a.n_cols() {
        let (ca, rb) = (col_a[k] as u64, b.row_nnz(k) as u64);
        hb.add_vertex(VertexLabel::Coarse(CoarseLabel::Outer(k)), ca * rb, ca + rb);
    }
    let base = a.n_cols();
    for (i, j) in c.iter() {
        hb.add_vertex(VertexLabel::NzC { i, j }, 0, 1);
    }
    for (p, (i, j)) in c.iter().enumerate() {
        let ks = a.row(i).iter().copied().filter(|&k| b.contains(k, j));
        hb.add_net(NetLabel::C { i, j }, 1, ks.chain([base + p]));
    }
    Ok(hb.build())
}

/// Monochrome-A parallelization with fine-grained A, row-wise B and
/// fine-grained C.
fn mono_a(a: &NonzeroStructure, b: &NonzeroStructure) -> Result<Hypergraph> {
    let c = product_structure(a, b)?;
    let at = a.transpose();
    let mut hb = HypergraphBuilder::new();
    for (i, k) in a.iter() {
        hb.add_vertex(VertexLabel::Coarse(CoarseLabel::FiberA(i, k)), b.row_nnz(k) as u64, 1);
    }
    let b_base = a.nnz();
    for k in 0..b.n_rows() {
        hb.add_vertex(VertexLabel::Coarse(CoarseLabel::RowOfB(k)), 0, b.row_nnz(k) as u64);
    }
    let c_base = b_base + b.n_rows();
    for (i, j) in c.iter() {
        hb.add_vertex(VertexLabel::NzC { i, j }, 0, 1);
    }
    let fiber = |i: usize, k: usize| a.position(i, k).expect("stored entry");
    for k in 0..b.n_rows() {
        let pins = at.row(k).iter().map(|&i| fiber(i, k)).chain([b_base + k]);
        hb.add_net(NetLabel::RowOfB(k), b.row_nnz(k) as u64, pins);
    }
    for (p, (i, j)) in c.iter().enumerate() {
        let pins = a
            .row(i)
            .iter()
            .filter(|&&k| b.contains(k, j))
            .map(|&k| fiber(i, k))
            .chain([c_base + p]);
        hb.add_net(NetLabel::C { i, j }, 1, pins);
    }
    Ok(hb.build())
}

/// Monochrome-C parallelization with fine-grained A, B and C.
fn mono_c(a: &NonzeroStructure, b: &NonzeroStructure) -> Result<Hypergraph> {
    let c = product_structure(a, b)?;
    let at = a.transpose();
    let mut hb = HypergraphBuilder::new();
    for (i, j) in c.iter() {
        let w = a.row(i).iter().filter(|&&k| b.contains(k, j)).count();
        hb.add_vertex(VertexLabel::Coarse(CoarseLabel::FiberC(i, j)), w as u64, 1);
    }
    let a_base = c.nnz();
    for (i, k) in a.iter() {
        hb.add_vertex(VertexLabel::NzA { i, k }, 0, 1);
    }
    let b_base = a_base + a.nnz();
    for (k, j) in b.iter() {
        hb.add_vertex(VertexLabel::NzB { k, j }, 0, 1);
    }
    let fiber = |i: usize, j: usize| c.position(i, j).expect("product entry");
    for (p, (i, k)) in a.iter().enumerate() {
        let pins = b.row(k).iter().map(|&j| fiber(i, j)).chain([a_base + p]);
        hb.add_net(NetLabel::A { i, k }, 1, pins);
    }
    for (p, (k, j)) in b.iter().enumerate() {
        let pins = at.row(k).iter().map(|&i| fiber(i, j)).chain([b_base + p]);
        hb.add_net(NetLabel::B { k, j }, 1, pins);
    }
    Ok(hb.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::tests::running_example;
    use crate::models::{build_fine_grained, coarsen, natural_map};

    fn find(h: &Hypergraph, l: CoarseLabel) -> usize {
        h.find_vertex(VertexLabel::Coarse(l)).unwrap()
    }

    #[test]
    fn running_example_row_wise() {
        let (a, b) = running_example();
        let h = build_restricted(&a, &b, ModelKind::RowWise, true).unwrap();
        assert_eq!((h.num_vertices(), h.num_nets()), (7, 4));
        let w: Vec<u64> = (0..3).map(|i| h.w_comp(find(&h, CoarseLabel::Row(i)))).collect();
        assert_eq!(w, [3, 2, 1]);
        assert_eq!(h.w_mem(find(&h, CoarseLabel::Row(0))), 4);
        let n = h.find_net(NetLabel::RowOfB(0)).unwrap();
        assert_eq!(h.cost(n), 1);
        let pins: Vec<String> = h.pins(n).iter().map(|&v| h.label(v).to_string()).collect();
        assert_eq!(pins, ["row(0)", "row(1)", "brow(0)"]);
    }

    #[test]
    fn running_example_outer_and_mono_c() {
        let (a, b) = running_example();
        let h = build_restricted(&a, &b, ModelKind::OuterProduct, true).unwrap();
        assert_eq!((h.num_vertices(), h.num_nets()), (8, 4));
        assert_eq!(h.w_comp(find(&h, CoarseLabel::Outer(2))), 2);
        let h = build_restricted(&a, &b, ModelKind::MonoC, true).unwrap();
        assert_eq!((h.num_vertices(), h.num_nets()), (14, 10));
        assert_eq!(h.w_comp(find(&h, CoarseLabel::FiberC(0, 1))), 2);
    }

    #[test]
    fn running_example_matches_coarsening() {
        let (a, b) = running_example();
        let fine = build_fine_grained(&a, &b, true).unwrap();
        for kind in ModelKind::RESTRICTED {
            let direct = build_restricted(&a, &b, kind, true).unwrap();
            let map = natural_map(&fine, kind).unwrap();
            assert!(direct.equivalent(&coarsen(&fine, &map).unwrap()), "{kind}");
            assert!(direct.validate().is_empty(), "{kind}");
        }
    }

    #[test]
    fn no_data_vertices() {
        let (a, b) = running_example();
        let h = build_restricted(&a, &b, ModelKind::RowWise, false).unwrap();
        assert_eq!(h.num_vertices(), 3);
        assert_eq!(h.total_comp(), 6);
        // only B row 0 is shared by two rows of A
        assert_eq!(h.num_nets(), 1);
    }

    #[test]
    fn rejects_non_restricted() {
        let (a, b) = running_example();
        assert!(build_restricted(&a, &b, ModelKind::FineGrained, true).is_err());
    }
}
