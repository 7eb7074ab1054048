//! Browser bindings. Every entry point takes Matrix Market text for the
//! operands and returns a JSON string; errors come back as JS strings.
//!
//! The `*_json` functions are plain Rust so they can be tested natively;
//! the `#[wasm_bindgen]` wrappers only convert the error type.

use serde::Serialize;
use spgemm_hg::hypergraph::Partition;
use spgemm_hg::metrics::{comm_report, sequential_lb, simulate_parallel, simulate_sequential_blocked};
use spgemm_hg::models::{build_model, classify_partition};
use spgemm_hg::partitioner::partition_multilevel;
use spgemm_hg::sparse::{load_matrix_market, mult_triples};
use spgemm_hg::{Error, Hypergraph, ModelKind, ModelSpec, NonzeroStructure, Objective, PartitionConfig, VertexLabel};
use wasm_bindgen::prelude::*;

type Res<T> = Result<T, String>;

fn operands(a: &str, b: &str) -> Res<(NonzeroStructure, NonzeroStructure)> {
    let a = load_matrix_market(a).map_err(|e| format!("A: {e}"))?;
    let b = load_matrix_market(b).map_err(|e| format!("B: {e}"))?;
    Ok((a, b))
}

fn model(a: &NonzeroStructure, b: &NonzeroStructure, name: &str, data: bool) -> Res<Hypergraph> {
    let kind: ModelKind = name.parse().map_err(|e: Error| e.to_string())?;
    if kind == ModelKind::Masked {
        return Err("the masked model needs a mask; not available here".into());
    }
    let mut spec = ModelSpec::new(kind);
    spec.with_data_vertices = data;
    build_model(a, b, &spec).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

#[derive(Serialize)]
struct ModelSummary {
    vertices: usize,
    nets: usize,
    pins: usize,
    total_comp: u64,
    mults: usize,
    /// Up to 40 vertex labels, for display.
    sample_labels: Vec<String>,
}

pub fn build_json(a: &str, b: &str, model_name: &str, data_vertices: bool) -> Res<String> {
    let (a, b) = operands(a, b)?;
    let h = model(&a, &b, model_name, data_vertices)?;
    let mults = mult_triples(&a, &b).map_err(|e| e.to_string())?.count();
    Ok(to_json(&ModelSummary {
        vertices: h.num_vertices(),
        nets: h.num_nets(),
        pins: h.num_pins(),
        total_comp: h.total_comp(),
        mults,
        sample_labels: h.labels().iter().take(40).map(|l| l.to_string()).collect(),
    }))
}

#[derive(Serialize)]
struct PartitionSummary {
    parts: Vec<usize>,
    /// Labels of the first 200 vertices, aligned with `parts`.
    labels: Vec<String>,
    max_cut: u64,
    connectivity: u64,
    cut_per_part: Vec<u64>,
    comp_loads: Vec<u64>,
    eps_achieved: f64,
    balanced: bool,
    /// Slice and fiber flags; only for models with multiplication vertices.
    flags: Option<String>,
    /// Words sent plus received by the busiest part, when every net has an
    /// owning data vertex.
    schedule_max_words: Option<u64>,
}

pub fn partition_json(a: &str, b: &str, model_name: &str, p: usize, epsilon: f64, seed: u64, objective: &str) -> Res<String> {
    let (a, b) = operands(a, b)?;
    let h = model(&a, &b, model_name, true)?;
    let objective: Objective = objective.parse().map_err(|e: Error| e.to_string())?;
    let cfg = PartitionConfig::new(p).with_epsilon(epsilon).with_seed(seed).with_objective(objective);
    let (part, balanced) = match partition_multilevel(&h, &cfg) {
        Ok(part) => (part, true),
        Err(Error::BalanceNotAchieved { partition, .. }) => (*partition, false),
        Err(e) => return Err(e.to_string()),
    };
    let r = comm_report(&h, &part).map_err(|e| e.to_string())?;
    let has_mults = h.labels().iter().any(|l| matches!(l, VertexLabel::Mult { .. }));
    let flags = if has_mults { classify_partition(&h, &part).ok().map(|f| f.to_string()) } else { None };
    let schedule_max_words = simulate_parallel(&h, &part).ok().map(|t| (0..p).map(|q| t.words(q)).max().unwrap_or(0));
    Ok(to_json(&PartitionSummary {
        parts: part.parts().to_vec(),
        labels: h.labels().iter().take(200).map(|l| l.to_string()).collect(),
        max_cut: r.max_cut_cost,
        connectivity: r.connectivity_total,
        cut_per_part: r.per_part_cut_cost,
        comp_loads: part.part_sums(h.comp_weights()),
        eps_achieved: r.achieved_epsilon,
        balanced,
        flags,
        schedule_max_words,
    }))
}

#[derive(Serialize)]
struct SequentialSummary {
    fast_memory: usize,
    lower_bound_parts: usize,
    lower_bound_words: u64,
    blocked_loads: u64,
    blocked_stores: u64,
    blocked_total: u64,
}

/// Exact sequential I/O lower bound next to the I/O of the blocked schedule
/// run on a single processor. The bound search is exhaustive, so only
/// small products (at most 14 multiplications) are accepted.
pub fn sequential_json(a: &str, b: &str, fast_memory: usize) -> Res<String> {
    let (a, b) = operands(a, b)?;
    let lb = sequential_lb(&a, &b, fast_memory).map_err(|e| e.to_string())?;
    let h = model(&a, &b, "fine", true)?;
    let io = simulate_sequential_blocked(&h, &Partition::single(1, h.num_vertices()), fast_memory)
        .map_err(|e| e.to_string())?;
    Ok(to_json(&SequentialSummary {
        fast_memory,
        lower_bound_parts: lb.h,
        lower_bound_words: lb.bound,
        blocked_loads: io.loads,
        blocked_stores: io.stores,
        blocked_total: io.total(),
    }))
}

#[wasm_bindgen]
pub fn build(a: &str, b: &str, model_name: &str, data_vertices: bool) -> Result<String, JsValue> {
    build_json(a, b, model_name, data_vertices).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn partition(a: &str, b: &str, model_name: &str, p: usize, epsilon: f64, seed: u32, objective: &str) -> Result<String, JsValue> {
    partition_json(a, b, model_name, p, epsilon, seed as u64, objective).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn sequential(a: &str, b: &str, fast_memory: usize) -> Result<String, JsValue> {
    sequential_json(a, b, fast_memory).map_err(|e| JsValue::from_str(&e))
}
