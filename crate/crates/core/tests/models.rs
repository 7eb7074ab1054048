mod common;

use std::collections::BTreeSet;

use common::{example, instance, naive_triples};
use proptest::prelude::*;
use spgemm_hg::models::{
    build_fine_grained, build_masked, build_restricted, build_spmv_finegrain, coarsen, natural_map,
};
use spgemm_hg::sparse::product_structure;
use spgemm_hg::{Hypergraph, ModelKind, ModelSpec, NetLabel, VertexLabel};

fn mult(i: usize, k: usize, j: usize) -> VertexLabel {
    VertexLabel::Mult { i, k, j }
}

/// Vertex-net incidences of the running example, one entry per pin.
fn example_pins() -> Vec<(VertexLabel, NetLabel)> {
    use NetLabel as N;
    use VertexLabel as V;
    vec![
        (V::NzA { i: 0, k: 0 }, N::A { i: 0, k: 0 }),
        (V::NzA { i: 0, k: 2 }, N::A { i: 0, k: 2 }),
        (V::NzA { i: 1, k: 0 }, N::A { i: 1, k: 0 }),
        (V::NzA { i: 1, k: 3 }, N::A { i: 1, k: 3 }),
        (V::NzA { i: 2, k: 1 }, N::A { i: 2, k: 1 }),
        (V::NzB { k: 0, j: 1 }, N::B { k: 0, j: 1 }),
        (V::NzB { k: 1, j: 0 }, N::B { k: 1, j: 0 }),
        (V::NzB { k: 2, j: 0 }, N::B { k: 2, j: 0 }),
        (V::NzB { k: 2, j: 1 }, N::B { k: 2, j: 1 }),
        (V::NzB { k: 3, j: 1 }, N::B { k: 3, j: 1 }),
        (V::NzC { i: 0, j: 0 }, N::C { i: 0, j: 0 }),
        (V::NzC { i: 0, j: 1 }, N::C { i: 0, j: 1 }),
        (V::NzC { i: 1, j: 1 }, N::C { i: 1, j: 1 }),
        (V::NzC { i: 2, j: 0 }, N::C { i: 2, j: 0 }),
        (mult(0, 2, 0), N::A { i: 0, k: 2 }),
        (mult(0, 2, 0), N::B { k: 2, j: 0 }),
        (mult(0, 2, 0), N::C { i: 0, j: 0 }),
        (mult(0, 0, 1), N::A { i: 0, k: 0 }),
        (mult(0, 0, 1), N::B { k: 0, j: 1 }),
        (mult(0, 0, 1), N::C { i: 0, j: 1 }),
        (mult(0, 2, 1), N::A { i: 0, k: 2 }),
        (mult(0, 2, 1), N::B { k: 2, j: 1 }),
        (mult(0, 2, 1), N::C { i: 0, j: 1 }),
        (mult(1, 0, 1), N::A { i: 1, k: 0 }),
        (mult(1, 0, 1), N::B { k: 0, j: 1 }),
        (mult(1, 0, 1), N::C { i: 1, j: 1 }),
        (mult(1, 3, 1), N::A { i: 1, k: 3 }),
        (mult(1, 3, 1), N::B { k: 3, j: 1 }),
        (mult(1, 3, 1), N::C { i: 1, j: 1 }),
        (mult(2, 1, 0), N::A { i: 2, k: 1 }),
        (mult(2, 1, 0), N::B { k: 1, j: 0 }),
        (mult(2, 1, 0), N::C { i: 2, j: 0 }),
    ]
}

fn incidences(h: &Hypergraph) -> BTreeSet<(VertexLabel, NetLabel)> {
    (0..h.num_nets()).flat_map(|n| h.pins(n).iter().map(move |&v| (h.label(v), h.net_label(n)))).collect()
}

#[test]
fn example_matches_drawn_hypergraph() {
    let (a, b) = example();
    let h = build_fine_grained(&a, &b, true).unwrap();
    assert_eq!((h.num_vertices(), h.num_nets(), h.num_pins()), (20, 14, 32));
    let expected: BTreeSet<_> = example_pins().into_iter().collect();
    assert_eq!(expected.len(), 32);
    assert_eq!(incidences(&h), expected);
    assert!(h.validate().is_empty());
    let c11 = h.find_net(NetLabel::C { i: 1, j: 1 }).unwrap();
    let labels: Vec<_> = h.pins(c11).iter().map(|&v| h.label(v)).collect();
    assert_eq!(labels, vec![mult(1, 0, 1), mult(1, 3, 1), VertexLabel::NzC { i: 1, j: 1 }]);
}

#[test]
fn example_restricted_weights() {
    let (a, b) = example();
    let row = build_restricted(&a, &b, ModelKind::RowWise, true).unwrap();
    let comp: Vec<u64> = (0..3).map(|i| row.w_comp(i)).collect();
    assert_eq!(comp, vec![3, 2, 1]);
    assert_eq!(row.w_mem(0), 4);
    let outer = build_restricted(&a, &b, ModelKind::OuterProduct, true).unwrap();
    assert_eq!((outer.num_vertices(), outer.num_nets()), (8, 4));
    let mono_c = build_restricted(&a, &b, ModelKind::MonoC, true).unwrap();
    assert_eq!((mono_c.num_vertices(), mono_c.num_nets()), (14, 10));
}

#[test]
fn masked_single_entry() {
    let (a, b) = example();
    let s = spgemm_hg::NonzeroStructure::from_coords(3, 2, [(0, 0)]).unwrap();
    let h = build_masked(&a, &b, &s, true).unwrap();
    let mults: Vec<_> = h.labels().iter().filter(|l| matches!(l, VertexLabel::Mult { .. })).copied().collect();
    assert_eq!(mults, vec![mult(0, 2, 0)]);
    let nets: BTreeSet<_> = (0..h.num_nets()).map(|n| h.net_label(n)).collect();
    let expected: BTreeSet<_> =
        [NetLabel::A { i: 0, k: 2 }, NetLabel::B { k: 2, j: 0 }, NetLabel::C { i: 0, j: 0 }].into_iter().collect();
    assert_eq!(nets, expected);
}

#[test]
fn spmv_dense_two() {
    let d = common::dense(2, 2);
    let h = build_spmv_finegrain(&d).unwrap();
    assert_eq!((h.num_vertices(), h.num_nets()), (4, 4));
    assert!((0..4).all(|n| h.pins(n).len() == 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fine_grained_counts((a, b) in instance(12)) {
        let c = product_structure(&a, &b).unwrap();
        let m = naive_triples(&a, &b).len();
        let nz = a.nnz() + b.nnz() + c.nnz();
        let h = build_fine_grained(&a, &b, true).unwrap();
        prop_assert_eq!(h.num_vertices(), m + nz);
        prop_assert_eq!(h.num_nets(), nz);
        prop_assert_eq!(h.num_pins(), 3 * m + nz);
        prop_assert_eq!(h.total_comp() as usize, m);
        prop_assert_eq!(h.total_mem() as usize, nz);
        prop_assert!(h.validate().is_empty());
    }

    #[test]
    fn restricted_counts((a, b) in instance(12)) {
        let c = product_structure(&a, &b).unwrap();
        let (ni, nk, nj) = (a.n_rows(), a.n_cols(), b.n_cols());
        let (sa, sb, sc) = (a.nnz(), b.nnz(), c.nnz());
        let expect = [
            (ModelKind::RowWise, ni + nk, nk),
            (ModelKind::ColWise, nj + nk, nk),
            (ModelKind::OuterProduct, nk + sc, sc),
            (ModelKind::MonoA, sa + nk + sc, nk + sc),
            (ModelKind::MonoB, sb + nk + sc, nk + sc),
            (ModelKind::MonoC, sc + sa + sb, sa + sb),
        ];
        let m = naive_triples(&a, &b).len() as u64;
        for (kind, nv, nn) in expect {
            let h = build_restricted(&a, &b, kind, true).unwrap();
            prop_assert_eq!((h.num_vertices(), h.num_nets()), (nv, nn), "{}", kind);
            prop_assert_eq!(h.total_comp(), m);
            prop_assert_eq!(h.total_mem() as usize, sa + sb + sc);
        }
    }

    #[test]
    fn restricted_is_coarsened_fine((a, b) in instance(12)) {
        let fine = build_fine_grained(&a, &b, true).unwrap();
        for kind in ModelKind::RESTRICTED {
            let h = build_restricted(&a, &b, kind, true).unwrap();
            let c = coarsen(&fine, &natural_map(&fine, kind).unwrap()).unwrap();
            prop_assert!(h.equivalent(&c), "{}", kind);
        }
    }

    #[test]
    fn masked_full_is_fine((a, b) in instance(12), data in any::<bool>()) {
        let c = product_structure(&a, &b).unwrap();
        prop_assert_eq!(build_masked(&a, &b, &c, data).unwrap(), build_fine_grained(&a, &b, data).unwrap());
    }

    #[test]
    fn masked_keeps_exactly_mask((a, b) in instance(10), keep in any::<u64>()) {
        let c = product_structure(&a, &b).unwrap();
        let coords: Vec<_> = c.iter().enumerate().filter(|(x, _)| keep >> (x % 64) & 1 == 1).map(|(_, e)| e).collect();
        let s = spgemm_hg::NonzeroStructure::from_coords(c.n_rows(), c.n_cols(), coords).unwrap();
        let h = build_masked(&a, &b, &s, true).unwrap();
        let expect: Vec<_> = naive_triples(&a, &b).into_iter().filter(|&(i, _, j)| s.contains(i, j)).collect();
        let got: Vec<_> = h
            .labels()
            .iter()
            .filter_map(|l| match *l { VertexLabel::Mult { i, k, j } => Some((i, k, j)), _ => None })
            .collect();
        prop_assert_eq!(got, expect);
        prop_assert!(h.validate().is_empty());
    }

    #[test]
    fn spec_round_trip_through_build_model((a, b) in instance(8)) {
        for kind in ModelKind::RESTRICTED {
            let with = build_model_counts(&a, &b, ModelSpec::new(kind));
            let without = build_model_counts(&a, &b, ModelSpec::new(kind).without_data_vertices());
            prop_assert!(without.0 <= with.0);
            prop_assert_eq!(with.1, without.1, "comp weight must not change");
        }
    }
}

fn build_model_counts(a: &spgemm_hg::NonzeroStructure, b: &spgemm_hg::NonzeroStructure, spec: ModelSpec) -> (usize, u64) {
    let h = spgemm_hg::models::build_model(a, b, &spec).unwrap();
    (h.num_vertices(), h.total_comp())
}
