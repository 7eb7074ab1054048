use super::fine::{build_filtered, require_nonempty};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::sparse::{check_inner, product_structure, NonzeroStructure};

/// Fine-grained model of computing only the entries of `C` listed in
/// `mask`. Multiplications and C nets outside the mask disappear, and A/B
/// nonzeros that no longer feed any multiplication go with their nets.
pub fn build_masked(
    a: &NonzeroStructure,
    b: &NonzeroStructure,
    mask: &NonzeroStructure,
    with_data_vertices: bool,
) -> Result<Hypergraph> {
    check_inner(a, b)?;
    require_nonempty(a, b, false)?;
    let c = product_structure(a, b)?;
    if mask.n_rows() != c.n_rows() || mask.n_cols() != c.n_cols() {
        return Err(Error::Dimension(format!(
            "mask is {}x{} but C is {}x{}",
            mask.n_rows(),
            mask.n_cols(),
            c.n_rows(),
            c.n_cols()
        )));
    }
    if let Some((i, j)) = mask.iter().find(|&(i, j)| !c.contains(i, j)) {
        return Err(Error::MaskNotSubset(i, j));
    }
    Ok(build_filtered(a, b, &c, Some(mask), with_data_vertices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{NetLabel, VertexLabel};
    use crate::models::build_fine_grained;
    use crate::models::tests::running_example;

    #[test]
    fn full_mask_is_unmasked() {
        let (a, b) = running_example();
        let c = product_structure(&a, &b).unwrap();
        for data in [true, false] {
            assert_eq!(build_masked(&a, &b, &c, data).unwrap(), build_fine_grained(&a, &b, data).unwrap());
        }
    }

    #[test]
    fn single_entry() {
        let (a, b) = running_example();
        let s = NonzeroStructure::from_coords(3, 2, [(0, 0)]).unwrap();
        let h = build_masked(&a, &b, &s, true).unwrap();
        let mults: Vec<VertexLabel> = h.labels().iter().copied().filter(|l| matches!(l, VertexLabel::Mult { .. })).collect();
        assert_eq!(mults, [VertexLabel::Mult { i: 0, k: 2, j: 0 }]);
        let nets: Vec<NetLabel> = (0..h.num_nets()).map(|n| h.net_label(n)).collect();
        assert_eq!(nets, [NetLabel::A { i: 0, k: 2 }, NetLabel::B { k: 2, j: 0 }, NetLabel::C { i: 0, j: 0 }]);
        assert_eq!(h.num_vertices(), 4);
    }

    #[test]
    fn empty_mask_and_bad_mask() {
        let (a, b) = running_example();
        let h = build_masked(&a, &b, &NonzeroStructure::empty(3, 2), true).unwrap();
        assert_eq!((h.num_vertices(), h.num_nets()), (0, 0));
        let bad = NonzeroStructure::from_coords(3, 2, [(1, 0)]).unwrap();
        assert!(matches!(build_masked(&a, &b, &bad, true), Err(Error::MaskNotSubset(1, 0))));
    }
}
