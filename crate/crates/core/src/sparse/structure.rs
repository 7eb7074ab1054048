use crate::error::{Error, Result};

/// A `{0,1}` sparsity pattern stored in compressed-row form.
///
/// Column indices within each row are strictly increasing, so row-major
/// iteration visits coordinates in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NonzeroStructure {
    n_rows: usize,
    n_cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
}

impl NonzeroStructure {
    pub fn empty(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            row_ptr: vec![0; n_rows + 1],
            col_idx: Vec::new(),
        }
    }

    /// Builds a structure from arbitrary coordinates; duplicates are merged.
    pub fn from_coords(
        n_rows: usize,
        n_cols: usize,
        coords: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut coords: Vec<(usize, usize)> = coords.into_iter().collect();
        for &(i, k) in &coords {
            if i >= n_rows || k >= n_cols {
                return Err(Error::Dimension(format!(
                    "coordinate ({i}, {k}) outside {n_rows}x{n_cols}"
                )));
            }
        }
        coords.sort_unstable();
        coords.dedup();
        Ok(Self::from_sorted_unique(n_rows, n_cols, &coords))
    }

    /// `coords` must be sorted, unique and in range.
    pub(crate) fn from_sorted_unique(n_rows: usize, n_cols: usize, coords: &[(usize, usize)]) -> Self {
        let mut row_ptr = vec![0usize; n_rows + 1];
        for &(i, _) in coords {
            row_ptr[i + 1] += 1;
        }
        for i in 0..n_rows {
            row_ptr[i + 1] += row_ptr[i];
        }
        let col_idx = coords.iter().map(|&(_, k)| k).collect();
        Self {
            n_rows,
            n_cols,
            row_ptr,
            col_idx,
        }
    }

    /// `rows[i]` must be sorted and unique with entries below `n_cols`.
    pub(crate) fn from_rows(n_cols: usize, rows: Vec<Vec<usize>>) -> Self {
        let n_rows = rows.len();
        let mut row_ptr = Vec::with_capacity(n_rows + 1);
        row_ptr.push(0);
        let mut col_idx = Vec::with_capacity(rows.iter().map(Vec::len).sum());
        for row in rows {
            debug_assert!(row.windows(2).all(|w| w[0] < w[1]));
            col_idx.extend(row);
            row_ptr.push(col_idx.len());
        }
        Self {
            n_rows,
            n_cols,
            row_ptr,
            col_idx,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.col_idx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.col_idx.is_empty()
    }

    /// Column indices of row `i`, ascending.
    pub fn row(&self, i: usize) -> &[usize] {
        &self.col_idx[self.row_ptr[i]..self.row_ptr[i + 1]]
    }

    /// Row-major position of the first entry of row `i`.
    pub fn row_start(&self, i: usize) -> usize {
        self.row_ptr[i]
    }

    pub fn row_nnz(&self, i: usize) -> usize {
        self.row_ptr[i + 1] - self.row_ptr[i]
    }

    /// Position of `(i, k)` in row-major order, if stored.
    pub fn position(&self, i: usize, k: usize) -> Option<usize> {
        if i >= self.n_rows {
            return None;
        }
        self.row(i)
            .binary_search(&k)
            .ok()
            .map(|off| self.row_ptr[i] + off)
    }

    pub fn contains(&self, i: usize, k: usize) -> bool {
        self.position(i, k).is_some()
    }

    /// Row-major iteration over `(row, col)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_rows).flat_map(move |i| self.row(i).iter().map(move |&k| (i, k)))
    }

    pub fn col_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n_cols];
        for &k in &self.col_idx {
            counts[k] += 1;
        }
        counts
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![Vec::new(); self.n_cols];
        for (i, k) in self.iter() {
            rows[k].push(i);
        }
        Self::from_rows(self.n_rows, rows)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.n_rows == other.n_rows
            && self.n_cols == other.n_cols
            && self.iter().all(|(i, k)| other.contains(i, k))
    }

    /// Keeps only the listed rows and columns, renumbered in list order.
    ///
    /// Both lists must be strictly increasing.
    pub(crate) fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut new_col = vec![usize::MAX; self.n_cols];
        for (new, &old) in cols.iter().enumerate() {
            new_col[old] = new;
        }
        let rows = rows
            .iter()
            .map(|&i| {
                self.row(i)
                    .iter()
                    .filter_map(|&k| (new_col[k] != usize::MAX).then_some(new_col[k]))
                    .collect()
            })
            .collect();
        Self::from_rows(cols.len(), rows)
    }
}
