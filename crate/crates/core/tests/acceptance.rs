//! Acceptance checks, one line per criterion. Run with
//! `cargo test -p spgemm-hg --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use spgemm_hg::hypergraph::{CoarseLabel, Partition};
use spgemm_hg::metrics::{
    comm_report, cut_sets, sequential_lb, simulate_parallel, simulate_sequential_blocked,
};
use spgemm_hg::models::{
    build_fine_grained, build_masked, build_model, build_restricted, classify_parallelization, coarsen,
    natural_map, ParallelizationFlags,
};
use spgemm_hg::partitioner::{
    geometric_partition, objective_value, partition_bruteforce, partition_multilevel, GeometricProblem,
    GeometricScheme,
};
use spgemm_hg::sparse::{amg_ap, amg_ptap, mult_triples, product_structure, MultTripleSet, Triple};
use spgemm_hg::{Error, Hypergraph, ModelKind, ModelSpec, NetLabel, NonzeroStructure, Objective, PartitionConfig, VertexLabel};

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn random_partition(n: usize, p: usize, seed: u64) -> Partition {
    let mut s = seed | 1;
    let parts = (0..n)
        .map(|_| {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s % p as u64) as usize
        })
        .collect();
    Partition::new(p, parts).unwrap()
}

fn median(mut xs: Vec<u64>) -> f64 {
    xs.sort_unstable();
    let n = xs.len();
    if n % 2 == 1 { xs[n / 2] as f64 } else { (xs[n / 2 - 1] + xs[n / 2]) as f64 / 2.0 }
}

fn criterion1() -> Check {
    let (a, b) = common::example();
    let h = build_fine_grained(&a, &b, true).map_err(|e| e.to_string())?;
    let counts = (h.num_vertices(), h.num_nets(), h.num_pins());
    ensure!(counts == (20, 14, 32), "counts {counts:?}");
    // pins as drawn: (mult triple, A net, B net, C net) plus each nonzero on its own net
    let mults = [(0, 2, 0), (0, 0, 1), (0, 2, 1), (1, 0, 1), (1, 3, 1), (2, 1, 0)];
    let mut want = BTreeSet::new();
    for &(i, k, j) in &mults {
        let v = VertexLabel::Mult { i, k, j };
        want.insert((v, NetLabel::A { i, k }));
        want.insert((v, NetLabel::B { k, j }));
        want.insert((v, NetLabel::C { i, j }));
    }
    for (i, k) in [(0, 0), (0, 2), (1, 0), (1, 3), (2, 1)] {
        want.insert((VertexLabel::NzA { i, k }, NetLabel::A { i, k }));
    }
    for (k, j) in [(0, 1), (1, 0), (2, 0), (2, 1), (3, 1)] {
        want.insert((VertexLabel::NzB { k, j }, NetLabel::B { k, j }));
    }
    for (i, j) in [(0, 0), (0, 1), (1, 1), (2, 0)] {
        want.insert((VertexLabel::NzC { i, j }, NetLabel::C { i, j }));
    }
    let hr = &h;
    let got: BTreeSet<_> =
        (0..h.num_nets()).flat_map(|n| hr.pins(n).iter().map(move |&v| (hr.label(v), hr.net_label(n)))).collect();
    ensure!(got == want, "pin lists differ from the drawn hypergraph");
    Ok("20 vertices, 14 nets, 32 pins; all pins match".into())
}

fn instances(count: usize, max_dim: usize, base: u64) -> Vec<(NonzeroStructure, NonzeroStructure)> {
    (0..count as u64).map(|s| common::instance_from(base + s, max_dim)).collect()
}

fn criterion2() -> Check {
    for (x, (a, b)) in instances(100, 12, 1000).iter().enumerate() {
        let c = product_structure(a, b).unwrap();
        let (ni, nk, nj) = (a.n_rows(), a.n_cols(), b.n_cols());
        let (sa, sb, sc) = (a.nnz(), b.nnz(), c.nnz());
        let m = common::naive_triples(a, b).len();
        let fine = build_fine_grained(a, b, true).unwrap();
        ensure!(
            (fine.num_vertices(), fine.num_nets(), fine.num_pins()) == (m + sa + sb + sc, sa + sb + sc, 3 * m + sa + sb + sc),
            "instance {x}: fine-grained counts"
        );
        let expect = [
            (ModelKind::RowWise, ni + nk, nk),
            (ModelKind::ColWise, nj + nk, nk),
            (ModelKind::OuterProduct, nk + sc, sc),
            (ModelKind::MonoA, sa + nk + sc, nk + sc),
            (ModelKind::MonoB, sb + nk + sc, nk + sc),
            (ModelKind::MonoC, sc + sa + sb, sa + sb),
        ];
        for (kind, nv, nn) in expect {
            let h = build_restricted(a, b, kind, true).unwrap();
            ensure!(
                (h.num_vertices(), h.num_nets()) == (nv, nn),
                "instance {x}, {kind}: got {:?}, want {:?}",
                (h.num_vertices(), h.num_nets()),
                (nv, nn)
            );
        }
    }
    Ok("100 instances x 7 models".into())
}

fn criterion3() -> Check {
    for (x, (a, b)) in instances(100, 12, 1000).iter().enumerate() {
        let fine = build_fine_grained(a, b, true).unwrap();
        for kind in ModelKind::RESTRICTED {
            let h = build_restricted(a, b, kind, true).unwrap();
            let c = coarsen(&fine, &natural_map(&fine, kind).unwrap()).unwrap();
            ensure!(h.equivalent(&c), "instance {x}, {kind}: not isomorphic");
        }
    }
    Ok("100 instances x 6 restricted models".into())
}

fn pattern(r: usize, c: usize, coords: &[(usize, usize)]) -> NonzeroStructure {
    NonzeroStructure::from_coords(r, c, coords.iter().copied()).unwrap()
}

fn criterion4() -> Check {
    let d = common::dense(2, 2);
    let diag = pattern(2, 2, &[(0, 0), (1, 1)]);
    let ts = |a: &NonzeroStructure, b: &NonzeroStructure| MultTripleSet::from_triples(mult_triples(a, b).unwrap().collect());
    let eqs = [
        ts(&d, &d),
        ts(&diag, &d),
        ts(&d, &diag),
        ts(&pattern(2, 4, &[(0, 0), (0, 2), (1, 1), (1, 3)]), &pattern(4, 2, &[(0, 0), (1, 0), (2, 1), (3, 1)])),
    ];
    type Key = fn(Triple) -> (usize, usize, usize);
    let f = ParallelizationFlags::from_letters;
    let table: [(usize, Key, ParallelizationFlags); 13] = [
        (0, |t| (t.i, t.k, t.j), f("")),
        (0, |t| (t.i, t.k, 0), f("A")),
        (0, |t| (t.k, t.j, 0), f("B")),
        (0, |t| (t.i, t.j, 0), f("C")),
        (0, |t| (t.j, 0, 0), f("BCL")),
        (0, |t| (t.i, 0, 0), f("ACR")),
        (0, |t| (t.k, 0, 0), f("ABU")),
        (0, |_| (0, 0, 0), f("RLUABC")),
        (1, |t| (t.i, t.k, t.j), f("BC")),
        (1, |t| (t.i, t.k, 0), f("ABCRU")),
        (2, |t| (t.i, t.k, t.j), f("AC")),
        (2, |t| (t.k, t.j, 0), f("ABCLU")),
        (3, |t| (t.i, t.k, t.j), f("ABCU")),
    ];
    for (row, (eq, key, want)) in table.iter().enumerate() {
        let m = &eqs[*eq];
        let mut keys: Vec<_> = m.iter().map(key).collect();
        keys.sort_unstable();
        keys.dedup();
        let got = classify_parallelization(m, |t| keys.binary_search(&key(t)).ok()).unwrap();
        ensure!(got == *want, "row {row}: got {got}, want {want}");
    }
    let mut seen = BTreeSet::new();
    for s in 0..1000u64 {
        let (a, b) = common::instance_from(50_000 + s, 4);
        let m = ts(&a, &b);
        let p = 1 + (s % 4) as usize;
        let part = random_partition(m.count(), p, s + 1);
        let g = classify_parallelization(&m, |t| m.index_of(t).map(|x| part.part(x))).unwrap();
        ensure!(g.u == (g.a && g.b), "partition {s}: U != A and B ({g})");
        ensure!((!g.r || (g.a && g.c)) && (!g.l || (g.b && g.c)), "partition {s}: slice inclusion broken ({g})");
        seen.insert(g.to_string());
    }
    Ok(format!("13 table rows; 1000 random partitions, {} distinct flag sets", seen.len()))
}

fn ceil_log2(p: usize) -> usize {
    (usize::BITS - (p - 1).leading_zeros()) as usize
}

fn criterion5() -> Check {
    let mut words = 0;
    for s in 0..200u64 {
        let (a, b) = common::instance_from(70_000 + s, 8);
        let h = build_fine_grained(&a, &b, true).unwrap();
        let p = 1 + (s % 8) as usize;
        let part = random_partition(h.num_vertices(), p, s + 3);
        let q = cut_sets(&h, &part).unwrap();
        let t = simulate_parallel(&h, &part).unwrap();
        for i in 0..p {
            let cost: u64 = q[i].iter().map(|&n| h.cost(n)).sum();
            ensure!(q[i].len() as u64 <= t.words(i), "case {s}, part {i}: {} words < |Q| = {}", t.words(i), q[i].len());
            ensure!(t.words(i) <= 3 * cost, "case {s}, part {i}: {} words > 3 * {cost}", t.words(i));
        }
        ensure!(t.steps <= 2 * (ceil_log2(p) + 1), "case {s}: {} steps for p = {p}", t.steps);
        words += t.expand_words + t.fold_words;
    }
    Ok(format!("200 cases, {words} words simulated"))
}

fn criterion6() -> Check {
    let mut runs = 0;
    let mut tight = 0;
    let mut max_h = 0;
    let mut s = 0u64;
    let mut count = 0;
    while count < 60 {
        s += 1;
        let (a, b) = common::instance_from(90_000 + s, 5);
        let m = common::naive_triples(&a, &b).len();
        if m > 14 {
            continue;
        }
        count += 1;
        let h = build_fine_grained(&a, &b, true).unwrap();
        for mem in [3usize, 4, 6] {
            let lb = sequential_lb(&a, &b, mem).map_err(|e| e.to_string())?;
            max_h = max_h.max(lb.h);
            let mut parts = vec![Partition::single(1, h.num_vertices())];
            for p in 2..=4 {
                parts.push(random_partition(h.num_vertices(), p, s * 31 + p as u64));
            }
            if let Ok(ml) = partition_multilevel(&h, &PartitionConfig::new(2).with_epsilon(0.5)) {
                parts.push(ml);
            }
            for part in &parts {
                let t = simulate_sequential_blocked(&h, part, mem).unwrap();
                ensure!(lb.bound <= t.total(), "instance {s}, M = {mem}: bound {} > io {}", lb.bound, t.total());
                ensure!(t.total() <= 4 * (mem as u64 / 3) * t.blocks, "instance {s}, M = {mem}: io {} over block budget", t.total());
                tight += (lb.bound == t.total()) as usize;
                runs += 1;
            }
        }
    }
    Ok(format!("{count} instances, {runs} runs, h up to {max_h}, {tight} runs attain the bound"))
}

fn criterion7() -> Check {
    let mut s = 0u64;
    let mut checked = 0;
    let mut worst: f64 = 1.0;
    while checked < 50 {
        s += 1;
        let (a, b) = common::instance_from(110_000 + s, 4);
        // alternate between models so coarse weights also appear
        let spec = match s % 3 {
            0 => ModelSpec::new(ModelKind::FineGrained).without_data_vertices(),
            1 => ModelSpec::new(ModelKind::MonoC).without_data_vertices(),
            _ => ModelSpec::new(ModelKind::OuterProduct),
        };
        let h = build_model(&a, &b, &spec).unwrap();
        if h.num_vertices() > 12 || h.num_vertices() < 2 {
            continue;
        }
        let cfg = PartitionConfig::new(2).with_objective(Objective::MaxPartCut);
        let opt = match partition_bruteforce(&h, &cfg) {
            Ok(p) => p,
            Err(Error::NoBalancedPartition) => continue,
            Err(e) => return Err(e.to_string()),
        };
        checked += 1;
        let best = objective_value(&h, &opt, Objective::MaxPartCut).unwrap();
        let ml = partition_multilevel(&h, &cfg).map_err(|e| format!("instance {s}: {e}"))?;
        let got = objective_value(&h, &ml, Objective::MaxPartCut).unwrap();
        ensure!(got <= 2 * best, "instance {s} ({}): heuristic {got} > 2 x optimum {best}", spec.kind);
        if best > 0 {
            worst = worst.max(got as f64 / best as f64);
        } else {
            ensure!(got == 0, "instance {s}: heuristic {got}, optimum 0");
        }
    }
    Ok(format!("50 hypergraphs, worst ratio {worst:.2}"))
}

struct Run {
    max_cut: Vec<u64>,
    failed: usize,
}

fn sweep(h: &Hypergraph, p: usize, seeds: &[u64]) -> Run {
    let mut run = Run { max_cut: Vec::new(), failed: 0 };
    for &seed in seeds {
        let cfg = PartitionConfig::new(p).with_seed(seed);
        match partition_multilevel(h, &cfg) {
            Ok(part) => run.max_cut.push(comm_report(h, &part).unwrap().max_cut_cost),
            Err(_) => run.failed += 1,
        }
    }
    run
}

fn criterion8() -> Check {
    let n = 12;
    let p = 8;
    let seeds = [1, 2, 3, 4, 5];
    let spec = |k| ModelSpec::new(k).without_data_vertices();
    let (pt, ap) = amg_ptap(n).unwrap();
    let outer = sweep(&build_model(&pt, &ap, &spec(ModelKind::OuterProduct)).unwrap(), p, &seeds);
    let row = sweep(&build_model(&pt, &ap, &spec(ModelKind::RowWise)).unwrap(), p, &seeds);
    let (a, pr) = amg_ap(n).unwrap();
    let row_ap = sweep(&build_model(&a, &pr, &spec(ModelKind::RowWise)).unwrap(), p, &seeds);
    let fine_ap = sweep(&build_model(&a, &pr, &spec(ModelKind::FineGrained)).unwrap(), p, &seeds);
    for (name, r) in [("PtAP outer", &outer), ("PtAP row", &row), ("AP row", &row_ap), ("AP fine", &fine_ap)] {
        ensure!(r.failed == 0, "{name}: {} of 5 seeds missed the balance constraint", r.failed);
    }
    let (mo, mr, mra, mfa) = (median(outer.max_cut), median(row.max_cut), median(row_ap.max_cut), median(fine_ap.max_cut));
    let detail = format!("PtAP outer {mo} vs row {mr}; AP row {mra} vs fine {mfa}");
    ensure!(mo <= mr, "{detail}");
    ensure!(mra <= 2.0 * mfa, "{detail}");
    Ok(detail)
}

fn criterion9() -> Check {
    let n = 6;
    let p = 8;
    let (a, pr) = amg_ap(n).unwrap();
    let h = build_model(&a, &pr, &ModelSpec::new(ModelKind::RowWise)).unwrap();
    let part = geometric_partition(&h, GeometricProblem { n, scheme: GeometricScheme::Row }, p).map_err(|e| e.to_string())?;
    let r = comm_report(&h, &part).unwrap();
    ensure!(r.achieved_epsilon == 0.0, "achieved epsilon {}", r.achieved_epsilon);
    // independent count: each fine point k is a B row; its net spans the
    // octants of its stencil neighbors plus its own, and costs the number
    // of aggregates those neighbors fall in
    let octant = |x: i64, y: i64, z: i64| ((x / 3) + 2 * (y / 3) + 4 * (z / 3)) as usize;
    let mut cut = [0u64; 8];
    for z in 0..6i64 {
        for y in 0..6i64 {
            for x in 0..6i64 {
                let mut parts = BTreeSet::new();
                let mut aggs = BTreeSet::new();
                parts.insert(octant(x, y, z));
                for dz in -1..=1 {
                    for dy in -1..=1 {
                        for dx in -1..=1 {
                            let (u, v, w) = (x + dx, y + dy, z + dz);
                            if (0..6).contains(&u) && (0..6).contains(&v) && (0..6).contains(&w) {
                                parts.insert(octant(u, v, w));
                                aggs.insert((u / 3, v / 3, w / 3));
                            }
                        }
                    }
                }
                if parts.len() > 1 {
                    for &q in &parts {
                        cut[q] += aggs.len() as u64;
                    }
                }
            }
        }
    }
    let want = cut.iter().copied().max().unwrap();
    ensure!(r.per_part_cut_cost == cut.to_vec(), "per-part cut {:?}, enumeration {:?}", r.per_part_cut_cost, cut);
    let rows = h.labels().iter().filter(|l| matches!(l, VertexLabel::Coarse(CoarseLabel::Row(_)))).count();
    Ok(format!("{rows} rows in 8 octants, max_cut {} = enumeration {want}", r.max_cut_cost))
}

fn criterion10() -> Check {
    for (x, (a, b)) in instances(50, 12, 130_000).iter().enumerate() {
        let c = product_structure(a, b).unwrap();
        for data in [true, false] {
            let m = build_masked(a, b, &c, data).unwrap();
            ensure!(m == build_fine_grained(a, b, data).unwrap(), "instance {x} (data vertices {data}) differs");
        }
    }
    Ok("50 instances, with and without data vertices".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 10] = [
        ("1 example hypergraph structure", criterion1, Duration::from_secs(1)),
        ("2 model count formulas", criterion2, Duration::from_secs(5)),
        ("3 coarsening equivalence", criterion3, Duration::from_secs(30)),
        ("4 parallelization regions", criterion4, Duration::from_secs(10)),
        ("5 parallel bound validity", criterion5, Duration::from_secs(30)),
        ("6 sequential bounds", criterion6, Duration::from_secs(60)),
        ("7 oracle quality gate", criterion7, Duration::from_secs(60)),
        ("8 AMG trends", criterion8, Duration::from_secs(600)),
        ("9 geometric baseline", criterion9, Duration::from_secs(30)),
        ("10 masked identity", criterion10, Duration::from_secs(5)),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if took <= limit => (true, d),
            Ok(d) => (false, format!("{d}; took {took:.2?}, limit {limit:?}")),
            Err(e) => (false, e),
        };
        failed += !ok as usize;
        println!("[{}] {name}: {detail} ({took:.2?})", if ok { "PASS" } else { "FAIL" });
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
