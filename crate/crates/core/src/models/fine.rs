use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, HypergraphBuilder, NetLabel, VertexLabel};
use crate::sparse::{check_inner, product_structure, NonzeroStructure};

pub(crate) fn require_nonempty(a: &NonzeroStructure, b: &NonzeroStructure, inner: bool) -> Result<()> {
    if let Some(i) = (0..a.n_rows()).find(|&i| a.row_nnz(i) == 0) {
        return Err(Error::EmptyLine { what: "row of A", index: i });
    }
    if let Some(j) = b.col_counts().iter().position(|&c| c == 0) {
        return Err(Error::EmptyLine { what: "column of B", index: j });
    }
    if inner {
        if let Some(k) = a.col_counts().iter().position(|&c| c == 0) {
            return Err(Error::EmptyLine { what: "column of A", index: k });
        }
        if let Some(k) = (0..b.n_rows()).find(|&k| b.row_nnz(k) == 0) {
            return Err(Error::EmptyLine { what: "row of B", index: k });
        }
    }
    Ok(())
}

/// The fine-grained SpGEMM hypergraph.
///
/// Vertex order: multiplications in `(i, k, j)` order, then (if requested)
/// the nonzeros of A, B and C, each row-major. Net order: A, B, C nets,
/// each row-major. Every net lists its multiplication pins in ascending
/// vertex order followed by its nonzero vertex.
///
/// Without data vertices the nets keep their multiplication pins only, so
/// nets with a single multiplication remain as singletons.
pub fn build_fine_grained(a: &NonzeroStructure, b: &NonzeroStructure, with_data_vertices: bool) -> Result<Hypergraph> {
    check_inner(a, b)?;
    require_nonempty(a, b, false)?;
    let c = product_structure(a, b)?;
    Ok(build_filtered(a, b, &c, None, with_data_vertices))
}

/// Shared builder; `mask`, when given, keeps only multiplications whose
/// `(i, j)` lies in it (`mask` must be a subset of `c`). A/B nets that lose
/// all their multiplications to the mask are dropped with their nonzero.
pub(crate) fn build_filtered(
    a: &NonzeroStructure,
    b: &NonzeroStructure,
    c: &NonzeroStructure,
    mask: Option<&NonzeroStructure>,
    with_data: bool,
) -> Hypergraph {
    let keep = |i: usize, j: usize| mask.is_none_or(|s| s.contains(i, j));

    // index of each surviving multiplication, per A position and offset in B's row
    let mut a_pins: Vec<Vec<usize>> = vec![Vec::new(); a.nnz()];
    let mut b_pins: Vec<Vec<usize>> = vec![Vec::new(); b.nnz()];
    let mut c_pins: Vec<Vec<usize>> = vec![Vec::new(); c.nnz()];
    let mut a_had = vec![false; a.nnz()];
    let mut b_had = vec![false; b.nnz()];
    let mut mults = Vec::new();
    for (pa, (i, k)) in a.iter().enumerate() {
        let bstart = b.row_start(k);
        for (off, &j) in b.row(k).iter().enumerate() {
            let pb = bstart + off;
            a_had[pa] = true;
            b_had[pb] = true;
            if !keep(i, j) {
                continue;
            }
            let v = mults.len();
            mults.push((i, k, j));
            a_pins[pa].push(v);
            b_pins[pb].push(v);
            c_pins[c.position(i, j).expect("product contains every multiplication")].push(v);
        }
    }
    // B-net pins were filled in (i, k, j) order, which is ascending in i
    // for fixed (k, j), hence ascending in vertex index.

    let a_live: Vec<bool> = (0..a.nnz()).map(|p| !a_had[p] || !a_pins[p].is_empty()).collect();
    let b_live: Vec<bool> = (0..b.nnz()).map(|p| !b_had[p] || !b_pins[p].is_empty()).collect();
    let c_live: Vec<bool> = c.iter().map(|(i, j)| keep(i, j)).collect();

    let mut hb = HypergraphBuilder::new();
    for &(i, k, j) in &mults {
        hb.add_vertex(VertexLabel::Mult { i, k, j }, 1, 0);
    }
    let data_vertex = |hb: &mut HypergraphBuilder, live: &[bool], labels: &mut dyn Iterator<Item = VertexLabel>| {
        let mut ids = vec![usize::MAX; live.len()];
        for (p, l) in labels.enumerate() {
            if live[p] && with_data {
                ids[p] = hb.add_vertex(l, 0, 1);
            }
        }
        ids
    };
    let va = data_vertex(&mut hb, &a_live, &mut a.iter().map(|(i, k)| VertexLabel::NzA { i, k }));
    let vb = data_vertex(&mut hb, &b_live, &mut b.iter().map(|(k, j)| VertexLabel::NzB { k, j }));
    let vc = data_vertex(&mut hb, &c_live, &mut c.iter().map(|(i, j)| VertexLabel::NzC { i, j }));

    let add_nets = |hb: &mut HypergraphBuilder,
                        live: &[bool],
                        pins: &[Vec<usize>],
                        ids: &[usize],
                        labels: &mut dyn Iterator<Item = NetLabel>| {
        for (p, l) in labels.enumerate() {
            if !live[p] {
                continue;
            }
            let data = with_data.then_some(ids[p]);
            if pins[p].is_empty() && data.is_none() {
                continue;
            }
            hb.add_net(l, 1, pins[p].iter().copied().chain(data));
        }
    };
    add_nets(&mut hb, &a_live, &a_pins, &va, &mut a.iter().map(|(i, k)| NetLabel::A { i, k }));
    add_nets(&mut hb, &b_live, &b_pins, &vb, &mut b.iter().map(|(k, j)| NetLabel::B { k, j }));
    add_nets(&mut hb, &c_live, &c_pins, &vc, &mut c.iter().map(|(i, j)| NetLabel::C { i, j }));
    hb.build()
}
