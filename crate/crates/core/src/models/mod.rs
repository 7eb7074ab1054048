//! Hypergraph models of SpGEMM and SpMV.

mod classify;
mod coarsen;
mod fine;
mod masked;
mod restricted;
mod spmv;

use std::fmt;
use std::str::FromStr;

pub use classify::{classify_parallelization, classify_partition, ParallelizationFlags};
pub use coarsen::{coarsen, drop_data_vertices, natural_map, CoarseningMap};
pub use fine::build_fine_grained;
pub use masked::build_masked;
pub use restricted::build_restricted;
pub use spmv::build_spmv_finegrain;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::sparse::NonzeroStructure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    FineGrained,
    RowWise,
    ColWise,
    OuterProduct,
    MonoA,
    MonoB,
    MonoC,
    SpmvFineGrain,
    Masked,
}

impl ModelKind {
    pub const ALL: [ModelKind; 9] = [
        ModelKind::FineGrained,
        ModelKind::RowWise,
        ModelKind::ColWise,
        ModelKind::OuterProduct,
        ModelKind::MonoA,
        ModelKind::MonoB,
        ModelKind::MonoC,
        ModelKind::SpmvFineGrain,
        ModelKind::Masked,
    ];

    pub const RESTRICTED: [ModelKind; 6] = [
        ModelKind::RowWise,
        ModelKind::ColWise,
        ModelKind::OuterProduct,
        ModelKind::MonoA,
        ModelKind::MonoB,
        ModelKind::MonoC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::FineGrained => "fine",
            ModelKind::RowWise => "row",
            ModelKind::ColWise => "col",
            ModelKind::OuterProduct => "outer",
            ModelKind::MonoA => "mono-a",
            ModelKind::MonoB => "mono-b",
            ModelKind::MonoC => "mono-c",
            ModelKind::SpmvFineGrain => "spmv",
            ModelKind::Masked => "masked",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown model '{s}'")))
    }
}

/// What to build. `mask` is used only by [`ModelKind::Masked`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub with_data_vertices: bool,
    pub mask: Option<NonzeroStructure>,
}

impl ModelSpec {
    pub fn new(kind: ModelKind) -> Self {
        Self { kind, with_data_vertices: true, mask: None }
    }

    pub fn masked(mask: NonzeroStructure) -> Self {
        Self { kind: ModelKind::Masked, with_data_vertices: true, mask: Some(mask) }
    }

    pub fn without_data_vertices(mut self) -> Self {
        self.with_data_vertices = false;
        self
    }
}

/// Builds the model named by `spec`. The SpMV model uses `a` only.
pub fn build_model(a: &NonzeroStructure, b: &NonzeroStructure, spec: &ModelSpec) -> Result<Hypergraph> {
    let data = spec.with_data_vertices;
    match spec.kind {
        ModelKind::FineGrained => build_fine_grained(a, b, data),
        ModelKind::SpmvFineGrain => build_spmv_finegrain(a),
        ModelKind::Masked => {
            let mask = spec
                .mask
                .as_ref()
                .ok_or_else(|| Error::InvalidArgument("masked model needs a mask".into()))?;
            build_masked(a, b, mask, data)
        }
        kind => build_restricted(a, b, kind, data),
    }
}
