//! Sparse nonzero structures and symbolic SpGEMM.

mod generators;
mod mtx;
mod structure;
mod symbolic;

pub use generators::{aggregate_of, amg_ap, amg_ptap, gen_erdos_renyi, gen_sa_prolongator, gen_stencil27, Grid3};
pub use mtx::{load_matrix_market, write_matrix_market};
pub use structure::NonzeroStructure;
pub use symbolic::{
    mult_triples, product_structure, strip_empty, symbolic_multiply, MultTripleSet, Stripped, Triple,
};
pub(crate) use symbolic::check_inner;

/// Transposed pattern; an involution.
pub fn transpose(s: &NonzeroStructure) -> NonzeroStructure {
    s.transpose()
}
