//! Parameter sweeps: a grid of (instance, model, p, seed) runs written as
//! CSV rows in grid order.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use spgemm_hg::metrics::comm_report;
use spgemm_hg::models::build_model;
use spgemm_hg::partitioner::partition_multilevel;
use spgemm_hg::{Error, Hypergraph, ModelKind, ModelSpec, Objective, Partition, PartitionConfig};

use crate::error::{CliError, CliResult};
use crate::instance::InstanceSpec;

pub const HEADER: &str = "instance,model,p,seed,max_cut,connectivity,eps_achieved,delta_achieved,feasible,runtime_ms";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartCount {
    Fixed(usize),
    /// One part per coarse grid point of an AMG instance.
    Coarse,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub instances: Vec<InstanceSpec>,
    pub models: Vec<ModelKind>,
    pub p_list: Vec<PartCount>,
    pub seeds: Vec<u64>,
    pub epsilon: f64,
    pub objective: Objective,
    pub data_vertices: bool,
    pub output: Option<PathBuf>,
}

fn bad(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::User(format!("config line {line}: {msg}"))
}

impl SweepConfig {
    /// Parses `key = value` lines; list keys (`instance`, `model`, `p`,
    /// `seed`) may repeat and also accept comma-separated values. `#`
    /// starts a comment.
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut c = SweepConfig {
            instances: Vec::new(),
            models: Vec::new(),
            p_list: Vec::new(),
            seeds: Vec::new(),
            epsilon: 0.01,
            objective: Objective::Connectivity,
            data_vertices: false,
            output: None,
        };
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body.split_once('=').ok_or_else(|| bad(line, "expected key = value"))?;
            let (key, value) = (key.trim(), value.trim());
            let items = || value.split(',').map(str::trim).filter(|s| !s.is_empty());
            match key {
                "instance" => {
                    for v in items() {
                        c.instances.push(InstanceSpec::parse(v).map_err(|e| bad(line, e))?);
                    }
                }
                "model" => {
                    for v in items() {
                        let kind: ModelKind = v.parse().map_err(|_| bad(line, format!("unknown model '{v}'")))?;
                        if kind == ModelKind::Masked {
                            return Err(bad(line, "model 'masked' needs a mask and cannot be swept"));
                        }
                        c.models.push(kind);
                    }
                }
                "p" => {
                    for v in items() {
                        c.p_list.push(match v {
                            "coarse" => PartCount::Coarse,
                            _ => match v.parse::<usize>() {
                                Ok(p) if p >= 1 => PartCount::Fixed(p),
                                _ => return Err(bad(line, format!("bad part count '{v}'"))),
                            },
                        });
                    }
                }
                "seed" => {
                    for v in items() {
                        c.seeds.push(v.parse().map_err(|_| bad(line, format!("bad seed '{v}'")))?);
                    }
                }
                "epsilon" => {
                    c.epsilon = match value.parse::<f64>() {
                        Ok(e) if e >= 0.0 => e,
                        _ => return Err(bad(line, format!("bad epsilon '{value}'"))),
                    }
                }
                "objective" => c.objective = value.parse().map_err(|e| bad(line, e))?,
                "data_vertices" => {
                    c.data_vertices = value.parse().map_err(|_| bad(line, format!("expected true or false, got '{value}'")))?
                }
                "output" => c.output = Some(PathBuf::from(value)),
                _ => return Err(bad(line, format!("unknown key '{key}'"))),
            }
        }
        for (name, empty) in [
            ("instance", c.instances.is_empty()),
            ("model", c.models.is_empty()),
            ("p", c.p_list.is_empty()),
            ("seed", c.seeds.is_empty()),
        ] {
            if empty {
                return Err(CliError::User(format!("config needs at least one '{name}'")));
            }
        }
        for inst in &c.instances {
            if c.p_list.contains(&PartCount::Coarse) && inst.coarse_points.is_none() {
                return Err(CliError::User(format!("p = coarse needs an AMG instance, got '{}'", inst.name)));
            }
        }
        Ok(c)
    }
}

struct Point {
    instance: usize,
    model: usize,
    p: usize,
    seed: u64,
}

pub fn fmt_ratio(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.6}")
    } else {
        "inf".into()
    }
}

fn report_row(h: &Hypergraph, part: &Partition, feasible: bool) -> String {
    let r = comm_report(h, part).expect("partition matches hypergraph");
    format!(
        "{},{},{},{},{}",
        r.max_cut_cost,
        r.connectivity_total,
        fmt_ratio(r.achieved_epsilon),
        fmt_ratio(r.achieved_delta),
        feasible as u8
    )
}

/// Partitions `h` and formats the metric columns (everything after `seed`
/// except the runtime). Failures without a partition leave metrics empty.
pub fn run_point(h: &Hypergraph, cfg: &PartitionConfig) -> String {
    match partition_multilevel(h, cfg) {
        Ok(part) => report_row(h, &part, true),
        Err(Error::BalanceNotAchieved { partition, .. }) => report_row(h, &partition, false),
        Err(_) => ",,,,0".into(),
    }
}

/// Runs the whole grid and returns the CSV text, header included. Grid
/// points run on the rayon pool; rows keep grid order.
pub fn run_sweep(cfg: &SweepConfig, base: &Path, timing: bool) -> CliResult<String> {
    let mut models: Vec<Vec<std::result::Result<Hypergraph, String>>> = Vec::new();
    for inst in &cfg.instances {
        let (a, b) = inst.load(base)?;
        models.push(
            cfg.models
                .iter()
                .map(|&kind| {
                    let mut spec = ModelSpec::new(kind);
                    spec.with_data_vertices = cfg.data_vertices;
                    build_model(&a, &b, &spec).map_err(|e| e.to_string())
                })
                .collect(),
        );
    }
    let mut points = Vec::new();
    for (ii, inst) in cfg.instances.iter().enumerate() {
        for mi in 0..cfg.models.len() {
            for pc in &cfg.p_list {
                let p = match pc {
                    PartCount::Fixed(p) => *p,
                    PartCount::Coarse => inst.coarse_points.expect("checked in parse"),
                };
                for &seed in &cfg.seeds {
                    points.push(Point { instance: ii, model: mi, p, seed });
                }
            }
        }
    }
    let rows: Vec<String> = points
        .par_iter()
        .map(|pt| {
            let start = Instant::now();
            let metrics = match &models[pt.instance][pt.model] {
                Ok(h) => {
                    let pcfg = PartitionConfig::new(pt.p)
                        .with_seed(pt.seed)
                        .with_epsilon(cfg.epsilon)
                        .with_objective(cfg.objective);
                    run_point(h, &pcfg)
                }
                Err(_) => ",,,,0".into(),
            };
            let ms = if timing { start.elapsed().as_millis() } else { 0 };
            format!(
                "{},{},{},{},{},{}",
                cfg.instances[pt.instance].name,
                cfg.models[pt.model].name(),
                pt.p,
                pt.seed,
                metrics,
                ms
            )
        })
        .collect();
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    Ok(out)
}
