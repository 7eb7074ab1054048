use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty {what} {index}; strip empty rows and columns first")]
    EmptyLine { what: &'static str, index: usize },

    #[error("mask entry ({0}, {1}) is not a nonzero of C")]
    MaskNotSubset(usize, usize),

    #[error("coarsening map is not a partition of the vertex set: {0}")]
    BadCoarsening(String),

    #[error("multiplication ({0}, {1}, {2}) has no part assigned")]
    MissingTriple(usize, usize, usize),

    #[error(
        "infeasible balance: vertex {vertex} has w_comp {weight} but a part may hold at most {capacity}"
    )]
    HeavyVertex { vertex: usize, weight: u64, capacity: u64 },

    #[error("infeasible balance: total weight {total} does not fit in {parts} parts of capacity {capacity}")]
    InfeasibleBalance { total: u64, parts: usize, capacity: u64 },

    #[error("could not reach the balance constraint (achieved epsilon {achieved:.4})")]
    BalanceNotAchieved {
        achieved: f64,
        partition: Box<crate::hypergraph::Partition>,
    },

    #[error("no partition satisfies the balance constraint")]
    NoBalancedPartition,

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("partition does not match hypergraph: {0}")]
    PartitionMismatch(String),
}
