//! Hypergraph models of sparse matrix-matrix multiplication (SpGEMM).
//!
//! The crate works on nonzero *structures* only. Given the patterns of `A`
//! and `B` it enumerates the nontrivial multiplications `a_ik * b_kj`,
//! builds the fine-grained SpGEMM hypergraph and its restricted (1D/2D)
//! coarsenings, partitions those hypergraphs, and evaluates the induced
//! communication with cut-set metrics and schedule simulators.
//!
//! Module map:
//!
//! * [`sparse`]: nonzero structures, symbolic multiplication, Matrix Market
//!   input and the model-problem generators.
//! * [`hypergraph`]: the weighted hypergraph, partitions and the `.shgr`
//!   text format.
//! * [`models`]: fine-grained, restricted, SpMV and masked model builders,
//!   vertex coarsening and the parallelization classifier.
//! * [`partitioner`]: multilevel heuristic, FM refinement, exhaustive oracle
//!   and geometric baselines.
//! * [`metrics`]: cut sets, communication reports, and the parallel and
//!   sequential simulators.

pub mod error;
pub mod hypergraph;
pub mod metrics;
pub mod models;
pub mod partitioner;
pub mod sparse;

pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, NetLabel, Partition, VertexLabel};
pub use models::{ModelKind, ModelSpec};
pub use partitioner::{Objective, PartitionConfig};
pub use sparse::{MultTripleSet, NonzeroStructure};
