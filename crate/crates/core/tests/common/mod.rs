#![allow(dead_code)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spgemm_hg::sparse::{strip_empty, NonzeroStructure};

/// Random pattern with every entry present with probability `density`.
pub fn random_pattern(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> NonzeroStructure {
    let coords: Vec<(usize, usize)> =
        (0..rows * cols).filter(|_| rng.gen::<f64>() < density).map(|x| (x / cols, x % cols)).collect();
    NonzeroStructure::from_coords(rows, cols, coords).unwrap()
}

/// Random `I x K` times `K x J` instance with dimensions up to `max_dim`,
/// stripped of empty lines. `None` when nothing survives the strip.
pub fn random_instance(seed: u64, max_dim: usize) -> Option<(NonzeroStructure, NonzeroStructure)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (i, k, j) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
    let density = rng.gen_range(0.05..=0.5);
    let a = random_pattern(&mut rng, i, k, density);
    let b = random_pattern(&mut rng, k, j, density);
    let st = strip_empty(&a, &b).unwrap();
    (st.a.nnz() > 0).then_some((st.a, st.b))
}

/// Instance that is guaranteed nonempty; tries successive seeds.
pub fn instance_from(seed: u64, max_dim: usize) -> (NonzeroStructure, NonzeroStructure) {
    (0..).find_map(|d| random_instance(seed.wrapping_mul(1_000_003).wrapping_add(d), max_dim)).unwrap()
}

pub fn instance(max_dim: usize) -> impl Strategy<Value = (NonzeroStructure, NonzeroStructure)> {
    any::<u64>().prop_map(move |s| instance_from(s, max_dim))
}

/// Every `(i, k, j)` with both operands stored, by a dense triple loop.
pub fn naive_triples(a: &NonzeroStructure, b: &NonzeroStructure) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..a.n_rows() {
        for k in 0..a.n_cols() {
            for j in 0..b.n_cols() {
                if a.contains(i, k) && b.contains(k, j) {
                    out.push((i, k, j));
                }
            }
        }
    }
    out
}

/// The 3x4 times 4x2 running example.
pub fn example() -> (NonzeroStructure, NonzeroStructure) {
    let a = NonzeroStructure::from_coords(3, 4, [(0, 0), (0, 2), (1, 0), (1, 3), (2, 1)]).unwrap();
    let b = NonzeroStructure::from_coords(4, 2, [(0, 1), (1, 0), (2, 0), (2, 1), (3, 1)]).unwrap();
    (a, b)
}

pub fn dense(r: usize, c: usize) -> NonzeroStructure {
    NonzeroStructure::from_coords(r, c, (0..r * c).map(|x| (x / c, x % c))).unwrap()
}
