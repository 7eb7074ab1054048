mod common;

use proptest::prelude::*;
use spgemm_hg::hypergraph::{CoarseLabel, HypergraphBuilder, Partition};
use spgemm_hg::metrics::comm_report;
use spgemm_hg::models::build_fine_grained;
use spgemm_hg::partitioner::{
    is_balanced, objective_value, partition_bruteforce, partition_multilevel, refine_fm,
};
use spgemm_hg::{Error, Hypergraph, NetLabel, Objective, PartitionConfig, VertexLabel};

/// Random hypergraph with `nv` unit-weight vertices and a few small nets.
fn random_hypergraph(nv: usize, seed: u64) -> Hypergraph {
    let mut b = HypergraphBuilder::new();
    for g in 0..nv {
        b.add_vertex(VertexLabel::Coarse(CoarseLabel::Group(g)), 1 + (seed >> g & 1), 0);
    }
    let mut s = seed;
    let nn = nv + (seed % 5) as usize;
    for n in 0..nn {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let size = 2 + (s >> 60) as usize % 3;
        let mut pins: Vec<usize> = (0..size).map(|x| ((s >> (8 * x + 3)) as usize) % nv).collect();
        pins.sort_unstable();
        pins.dedup();
        b.add_net(NetLabel::Other(n), 1 + (s >> 40) % 3, pins);
    }
    b.build()
}

#[test]
fn example_finds_optimum() {
    let (a, b) = common::example();
    let h = build_fine_grained(&a, &b, true).unwrap();
    let part = partition_multilevel(&h, &PartitionConfig::new(2)).unwrap();
    assert_eq!(comm_report(&h, &part).unwrap().max_cut_cost, 1);
}

#[test]
fn oracle_guard() {
    let (a, b) = common::example();
    let h = build_fine_grained(&a, &b, true).unwrap();
    assert!(matches!(partition_bruteforce(&h, &PartitionConfig::new(2)), Err(Error::SizeGuard(_))));
}

#[test]
fn too_many_parts() {
    let h = random_hypergraph(4, 1);
    assert!(partition_multilevel(&h, &PartitionConfig::new(5)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn heuristic_within_twice_optimum(nv in 3usize..=12, seed in any::<u64>()) {
        let h = random_hypergraph(nv, seed);
        let cfg = PartitionConfig::new(2).with_objective(Objective::MaxPartCut).with_epsilon(0.2);
        let opt = match partition_bruteforce(&h, &cfg) {
            Ok(p) => p,
            Err(_) => return Ok(()),
        };
        let best = objective_value(&h, &opt, Objective::MaxPartCut).unwrap();
        let ml = match partition_multilevel(&h, &cfg) {
            Ok(p) => p,
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        };
        prop_assert!(is_balanced(&h, &ml, &cfg));
        prop_assert!(objective_value(&h, &ml, Objective::MaxPartCut).unwrap() <= 2 * best);
    }

    #[test]
    fn multilevel_balanced_and_deterministic((a, b) in common::instance(10), p in 2usize..6, seed in any::<u64>()) {
        let h = build_fine_grained(&a, &b, false).unwrap();
        prop_assume!(p <= h.num_vertices());
        let cfg = PartitionConfig::new(p).with_seed(seed).with_epsilon(0.1);
        match partition_multilevel(&h, &cfg) {
            Ok(part) => {
                prop_assert!(is_balanced(&h, &part, &cfg));
                prop_assert_eq!(partition_multilevel(&h, &cfg).unwrap(), part);
            }
            Err(Error::HeavyVertex { .. } | Error::InfeasibleBalance { .. } | Error::BalanceNotAchieved { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        }
    }

    #[test]
    fn refine_is_monotone_and_idempotent((a, b) in common::instance(8), p in 2usize..4, seed in any::<u64>(), max in any::<bool>()) {
        let h = build_fine_grained(&a, &b, true).unwrap();
        let obj = if max { Objective::MaxPartCut } else { Objective::Connectivity };
        let cfg = PartitionConfig::new(p).with_objective(obj).with_epsilon(10.0);
        let parts = (0..h.num_vertices()).map(|v| (seed.rotate_left(v as u32) as usize ^ v) % p).collect();
        let start = Partition::new(p, parts).unwrap();
        let out = refine_fm(&h, &start, &cfg).unwrap();
        prop_assert!(objective_value(&h, &out, obj).unwrap() <= objective_value(&h, &start, obj).unwrap());
        let once = refine_fm(&h, &out, &PartitionConfig { refinement_passes: 64, ..cfg.clone() }).unwrap();
        let twice = refine_fm(&h, &once, &cfg).unwrap();
        prop_assert_eq!(objective_value(&h, &twice, obj).unwrap(), objective_value(&h, &once, obj).unwrap());
    }
}
