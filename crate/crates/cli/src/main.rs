//! `spgemm-hg`: generate SpGEMM instances, build their hypergraph models,
//! partition them and report communication costs.

mod error;
mod instance;
mod sweep;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use spgemm_hg::hypergraph::{read_hgr, read_partition, write_hgr, write_partition};
use spgemm_hg::metrics::{comm_report, simulate_parallel, simulate_sequential_blocked};
use spgemm_hg::models::{build_model, classify_partition};
use spgemm_hg::partitioner::{
    geometric_partition, is_balanced, partition_bruteforce, partition_multilevel, GeometricProblem, GeometricScheme,
};
use spgemm_hg::sparse::{
    gen_erdos_renyi, gen_sa_prolongator, gen_stencil27, load_matrix_market, strip_empty, write_matrix_market,
};
use spgemm_hg::{Error, Hypergraph, ModelKind, ModelSpec, NonzeroStructure, Objective, PartitionConfig, VertexLabel};

use error::{read_file, write_file, CliError, CliResult};
use sweep::SweepConfig;

#[derive(Parser)]
#[command(name = "spgemm-hg", version, about = "Hypergraph models of sparse matrix-matrix multiplication")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generated sparsity pattern in Matrix Market format.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        /// Grid side for stencil27 and sa-prolongator.
        #[arg(long = "n", short = 'n')]
        n: usize,
        /// Expected nonzeros per row (erdos-renyi).
        #[arg(long, short = 'd')]
        d: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a model hypergraph of C = A B.
    Build {
        a: PathBuf,
        /// Pattern of B; omit and use --b for A^T or A.
        b_file: Option<PathBuf>,
        #[arg(long = "b", value_enum, conflicts_with = "b_file")]
        b_from: Option<BFrom>,
        #[arg(long, default_value = "fine")]
        model: String,
        #[arg(long)]
        no_data_vertices: bool,
        /// Output pattern for the masked model.
        #[arg(long)]
        mask: Option<PathBuf>,
        /// Drop empty rows and columns of the operands first.
        #[arg(long)]
        strip: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Partition a hypergraph and print one CSV report row.
    Partition {
        hypergraph: PathBuf,
        #[arg(long, short = 'p')]
        p: usize,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "connectivity")]
        objective: String,
        /// Exhaustive search (small hypergraphs only).
        #[arg(long, conflicts_with = "geometric")]
        oracle: bool,
        /// Geometric baseline for the AMG model problem; needs --grid.
        #[arg(long, value_enum, requires = "grid")]
        geometric: Option<Scheme>,
        /// Fine grid side of the AMG problem.
        #[arg(long)]
        grid: Option<usize>,
        /// Print the CSV header before the row.
        #[arg(long)]
        header: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Report metrics of a given partition.
    Evaluate {
        hypergraph: PathBuf,
        partition: PathBuf,
        /// Also simulate the blocked sequential schedule with this fast memory.
        #[arg(long)]
        fast_memory: Option<usize>,
    },
    /// Run a grid of partitioning experiments from a config file.
    Sweep {
        config: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write 0 in the runtime column so output is byte-reproducible.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Stencil27,
    SaProlongator,
    ErdosRenyi,
}

#[derive(Clone, Copy, ValueEnum)]
enum BFrom {
    TransposeA,
    A,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scheme {
    Row,
    Outer,
}

fn emit(output: Option<&Path>, text: &str) -> CliResult<()> {
    match output {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_mtx(path: &Path) -> CliResult<NonzeroStructure> {
    load_matrix_market(&read_file(path)?).map_err(|e| CliError::User(format!("{}: {e}", path.display())))
}

fn load_hgr(path: &Path) -> CliResult<Hypergraph> {
    read_hgr(&read_file(path)?).map_err(|e| CliError::User(format!("{}: {e}", path.display())))
}

fn cmd_gen(kind: GenKind, n: usize, d: Option<f64>, seed: u64, output: Option<&Path>) -> CliResult<()> {
    let s = match kind {
        GenKind::Stencil27 => gen_stencil27(n)?,
        GenKind::SaProlongator => gen_sa_prolongator(n)?,
        GenKind::ErdosRenyi => {
            let d = d.ok_or_else(|| CliError::User("erdos-renyi needs --d".into()))?;
            gen_erdos_renyi(n, d, seed)?
        }
    };
    emit(output, &write_matrix_market(&s))
}

#[allow(clippy::too_many_arguments)]
fn cmd_build(
    a_path: &Path,
    b_path: Option<&Path>,
    b_from: Option<BFrom>,
    model: &str,
    no_data: bool,
    mask: Option<&Path>,
    strip: bool,
    output: Option<&Path>,
) -> CliResult<()> {
    let kind: ModelKind = model.parse()?;
    let a = load_mtx(a_path)?;
    let b = match (b_path, b_from) {
        (Some(p), _) => load_mtx(p)?,
        (None, Some(BFrom::TransposeA)) => a.transpose(),
        (None, Some(BFrom::A)) => a.clone(),
        (None, None) if kind == ModelKind::SpmvFineGrain => a.clone(),
        (None, None) => return Err(CliError::User("give a B file or --b transpose-a|a".into())),
    };
    let (a, b) = if strip {
        let st = strip_empty(&a, &b)?;
        (st.a, st.b)
    } else {
        (a, b)
    };
    let mut spec = ModelSpec::new(kind);
    spec.with_data_vertices = !no_data;
    match (kind, mask) {
        (ModelKind::Masked, Some(m)) => spec.mask = Some(load_mtx(m)?),
        (ModelKind::Masked, None) => return Err(CliError::User("--model masked needs --mask".into())),
        (_, Some(_)) => return Err(CliError::User("--mask is only used by --model masked".into())),
        _ => {}
    }
    let h = build_model(&a, &b, &spec)?;
    let text = write_hgr(&h);
    if let Some(p) = output {
        write_file(p, &text)?;
    }
    println!("{} {} {} {}", h.num_vertices(), h.num_nets(), h.num_pins(), h.total_comp());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_partition(
    path: &Path,
    cfg: &PartitionConfig,
    oracle: bool,
    geometric: Option<(Scheme, usize)>,
    header: bool,
    output: Option<&Path>,
) -> CliResult<()> {
    let h = load_hgr(path)?;
    let start = Instant::now();
    let result = if oracle {
        partition_bruteforce(&h, cfg)
    } else if let Some((scheme, n)) = geometric {
        let scheme = match scheme {
            Scheme::Row => GeometricScheme::Row,
            Scheme::Outer => GeometricScheme::Outer,
        };
        geometric_partition(&h, GeometricProblem { n, scheme }, cfg.p)
    } else {
        partition_multilevel(&h, cfg)
    };
    let (part, err) = match result {
        Ok(part) => (part, None),
        Err(e @ Error::BalanceNotAchieved { .. }) => {
            let msg = e.to_string();
            let Error::BalanceNotAchieved { partition, .. } = e else { unreachable!() };
            (*partition, Some(msg))
        }
        Err(e) => return Err(e.into()),
    };
    let ms = start.elapsed().as_millis();
    if let Some(p) = output {
        write_file(p, &write_partition(&part))?;
    }
    let r = comm_report(&h, &part)?;
    let feasible = err.is_none() && is_balanced(&h, &part, cfg);
    if header {
        println!("{}", sweep::HEADER);
    }
    println!(
        "{},-,{},{},{},{},{},{},{},{}",
        path.display(),
        cfg.p,
        cfg.seed,
        r.max_cut_cost,
        r.connectivity_total,
        sweep::fmt_ratio(r.achieved_epsilon),
        sweep::fmt_ratio(r.achieved_delta),
        feasible as u8,
        ms
    );
    match err {
        Some(msg) => Err(CliError::Internal(msg)),
        None => Ok(()),
    }
}

fn cmd_evaluate(h_path: &Path, p_path: &Path, fast_memory: Option<usize>) -> CliResult<()> {
    let h = load_hgr(h_path)?;
    let part = read_partition(&read_file(p_path)?).map_err(|e| CliError::User(format!("{}: {e}", p_path.display())))?;
    let r = comm_report(&h, &part)?;
    let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    println!("parts={}", part.p());
    println!("max_cut={}", r.max_cut_cost);
    println!("connectivity={}", r.connectivity_total);
    println!("cut_per_part={}", list(&r.per_part_cut_cost));
    println!("eps_achieved={}", sweep::fmt_ratio(r.achieved_epsilon));
    println!("delta_achieved={}", sweep::fmt_ratio(r.achieved_delta));
    println!("comp_loads={}", list(&part.part_sums(h.comp_weights())));
    if (0..h.num_vertices()).any(|v| matches!(h.label(v), VertexLabel::Mult { .. })) {
        println!("flags={}", classify_partition(&h, &part)?);
    }
    // the schedule needs a data vertex on every net; skip it otherwise
    if let Ok(t) = simulate_parallel(&h, &part) {
        let words: Vec<u64> = (0..part.p()).map(|q| t.words(q)).collect();
        println!("schedule_steps={}", t.steps);
        println!("schedule_max_words={}", words.iter().max().copied().unwrap_or(0));
    }
    if let Some(m) = fast_memory {
        let io = simulate_sequential_blocked(&h, &part, m)?;
        println!("io_loads={}", io.loads);
        println!("io_stores={}", io.stores);
        println!("io_total={}", io.total());
    }
    Ok(())
}

fn cmd_sweep(path: &Path, output: Option<&Path>, no_timing: bool) -> CliResult<()> {
    let cfg = SweepConfig::parse(&read_file(path)?)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let csv = sweep::run_sweep(&cfg, base, !no_timing)?;
    let target = output.map(Path::to_path_buf).or_else(|| cfg.output.as_ref().map(|p| base.join(p)));
    emit(target.as_deref(), &csv)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.cmd {
        Cmd::Gen { kind, n, d, seed, output } => cmd_gen(kind, n, d, seed, output.as_deref()),
        Cmd::Build { a, b_file, b_from, model, no_data_vertices, mask, strip, output } => cmd_build(
            &a,
            b_file.as_deref(),
            b_from,
            &model,
            no_data_vertices,
            mask.as_deref(),
            strip,
            output.as_deref(),
        ),
        Cmd::Partition { hypergraph, p, epsilon, delta, seed, objective, oracle, geometric, grid, header, output } => {
            let objective: Objective = objective.parse()?;
            let mut cfg = PartitionConfig::new(p).with_epsilon(epsilon).with_seed(seed).with_objective(objective);
            cfg.delta = delta;
            let geometric = geometric.map(|s| (s, grid.expect("clap enforces --grid")));
            cmd_partition(&hypergraph, &cfg, oracle, geometric, header, output.as_deref())
        }
        Cmd::Evaluate { hypergraph, partition, fast_memory } => cmd_evaluate(&hypergraph, &partition, fast_memory),
        Cmd::Sweep { config, output, no_timing } => cmd_sweep(&config, output.as_deref(), no_timing),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
