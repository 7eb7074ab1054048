use super::NonzeroStructure;
use crate::error::{Error, Result};

/// One nontrivial multiplication `a_ik * b_kj`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub i: usize,
    pub k: usize,
    pub j: usize,
}

impl Triple {
    pub fn new(i: usize, k: usize, j: usize) -> Self {
        Self { i, k, j }
    }
}

/// All nontrivial multiplications of an instance, in `(i, k, j)` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultTripleSet {
    triples: Vec<Triple>,
}

impl MultTripleSet {
    pub fn from_triples(mut triples: Vec<Triple>) -> Self {
        triples.sort_unstable();
        triples.dedup();
        Self { triples }
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn count(&self) -> usize {
        self.triples.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        self.triples.iter().copied()
    }

    pub fn index_of(&self, t: Triple) -> Option<usize> {
        self.triples.binary_search(&t).ok()
    }
}

pub(crate) fn check_inner(a: &NonzeroStructure, b: &NonzeroStructure) -> Result<()> {
    if a.n_cols() != b.n_rows() {
        return Err(Error::Dimension(format!(
            "A is {}x{} but B is {}x{}",
            a.n_rows(),
            a.n_cols(),
            b.n_rows(),
            b.n_cols()
        )));
    }
    Ok(())
}

/// Streams the multiplication triples of `A * B` in `(i, k, j)` order
/// without materializing them.
pub fn mult_triples<'a>(
    a: &'a NonzeroStructure,
    b: &'a NonzeroStructure,
) -> Result<impl Iterator<Item = Triple> + 'a> {
    check_inner(a, b)?;
    Ok(a.iter()
        .flat_map(move |(i, k)| b.row(k).iter().map(move |&j| Triple::new(i, k, j))))
}

/// Pattern of `C = A * B` by a row-wise Gustavson pass.
pub fn product_structure(a: &NonzeroStructure, b: &NonzeroStructure) -> Result<NonzeroStructure> {
    check_inner(a, b)?;
    let mut marker = vec![usize::MAX; b.n_cols()];
    let mut rows = Vec::with_capacity(a.n_rows());
    for i in 0..a.n_rows() {
        let mut row = Vec::new();
        for &k in a.row(i) {
            for &j in b.row(k) {
                if marker[j] != i {
                    marker[j] = i;
                    row.push(j);
                }
            }
        }
        row.sort_unstable();
        rows.push(row);
    }
    Ok(NonzeroStructure::from_rows(b.n_cols(), rows))
}

/// Computes `S_C` and the full set of multiplication triples.
pub fn symbolic_multiply(
    a: &NonzeroStructure,
    b: &NonzeroStructure,
) -> Result<(NonzeroStructure, MultTripleSet)> {
    let c = product_structure(a, b)?;
    // already in (i, k, j) order
    let triples: Vec<Triple> = mult_triples(a, b)?.collect();
    Ok((c, MultTripleSet { triples }))
}

/// Result of [`strip_empty`]; each map lists the original index of every
/// surviving row/inner/column index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stripped {
    pub a: NonzeroStructure,
    pub b: NonzeroStructure,
    pub row_map: Vec<usize>,
    pub inner_map: Vec<usize>,
    pub col_map: Vec<usize>,
}

/// Removes empty rows of `A`, empty columns of `B`, and every inner index
/// `k` for which column `k` of `A` or row `k` of `B` is empty.
///
/// Removing `k` can empty further rows of `A` or columns of `B`, so the
/// procedure runs to a fixpoint. No multiplication is lost.
pub fn strip_empty(a: &NonzeroStructure, b: &NonzeroStructure) -> Result<Stripped> {
    check_inner(a, b)?;
    let mut keep_i = vec![true; a.n_rows()];
    let mut keep_k = vec![true; a.n_cols()];
    let mut keep_j = vec![true; b.n_cols()];
    loop {
        let mut changed = false;
        let mut col_a = vec![0usize; a.n_cols()];
        let mut row_a = vec![0usize; a.n_rows()];
        for (i, k) in a.iter() {
            if keep_i[i] && keep_k[k] {
                col_a[k] += 1;
                row_a[i] += 1;
            }
        }
        let mut row_b = vec![0usize; b.n_rows()];
        let mut col_b = vec![0usize; b.n_cols()];
        for (k, j) in b.iter() {
            if keep_k[k] && keep_j[j] {
                row_b[k] += 1;
                col_b[j] += 1;
            }
        }
        for k in 0..a.n_cols() {
            if keep_k[k] && (col_a[k] == 0 || row_b[k] == 0) {
                keep_k[k] = false;
                changed = true;
            }
        }
        for i in 0..a.n_rows() {
            if keep_i[i] && row_a[i] == 0 {
                keep_i[i] = false;
                changed = true;
            }
        }
        for j in 0..b.n_cols() {
            if keep_j[j] && col_b[j] == 0 {
                keep_j[j] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let idx = |keep: &[bool]| -> Vec<usize> {
        keep.iter()
            .enumerate()
            .filter_map(|(x, &k)| k.then_some(x))
            .collect()
    };
    let row_map = idx(&keep_i);
    let inner_map = idx(&keep_k);
    let col_map = idx(&keep_j);
    Ok(Stripped {
        a: a.select(&row_map, &inner_map),
        b: b.select(&inner_map, &col_map),
        row_map,
        inner_map,
        col_map,
    })
}
