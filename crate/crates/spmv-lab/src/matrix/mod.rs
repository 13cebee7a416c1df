//! Canonical triplet representation, Matrix Market ingestion, the synthetic
//! fingerprint generator and the dense reference oracle.
//!
//! Every storage format in this crate is built from a [`TripletMatrix`], and
//! every kernel is validated against [`dense_spmv_oracle`].

mod fingerprint;
mod market;

pub use fingerprint::{gen_fingerprint_matrix, FingerprintParams};
pub use market::{load_matrix_market, write_matrix_market};

use crate::error::{Error, Result};

/// One non-zero entry, 0-based indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triplet {
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

impl Triplet {
    pub fn new(row: usize, col: usize, value: f64) -> Self {
        Triplet { row, col, value }
    }
}

/// Format-neutral sparse matrix as sorted (row, col, value) entries.
///
/// Invariants held after construction: all indices in range, entries sorted
/// by (row, col) ascending, no duplicate (row, col) pairs (duplicates are
/// summed, Matrix Market convention). Immutable afterwards and safe to share
/// read-only across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct TripletMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<Triplet>,
}

impl TripletMatrix {
    /// Normalizes `entries`: bounds-checks, sorts by (row, col) and sums
    /// duplicates.
    pub fn new(n_rows: usize, n_cols: usize, mut entries: Vec<Triplet>) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::InvalidParameter(
                "matrix dimensions must be positive".into(),
            ));
        }
        for t in &entries {
            if t.row >= n_rows || t.col >= n_cols {
                return Err(Error::IndexOutOfRange(format!(
                    "entry ({}, {}) outside {}x{} matrix",
                    t.row, t.col, n_rows, n_cols
                )));
            }
        }
        entries.sort_by(|a, b| (a.row, a.col).cmp(&(b.row, b.col)));
        // sum duplicates in place
        let mut out: Vec<Triplet> = Vec::with_capacity(entries.len());
        for t in entries {
            match out.last_mut() {
                Some(last) if last.row == t.row && last.col == t.col => last.value += t.value,
                _ => out.push(t),
            }
        }
        Ok(TripletMatrix {
            n_rows,
            n_cols,
            entries: out,
        })
    }

    /// n x n identity.
    pub fn identity(n: usize) -> Self {
        let entries = (0..n).map(|i| Triplet::new(i, i, 1.0)).collect();
        TripletMatrix::new(n, n, entries).expect("identity is always valid")
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Entries sorted by (row, col).
    pub fn entries(&self) -> &[Triplet] {
        &self.entries
    }

    /// Number of entries in each row.
    pub fn row_lengths(&self) -> Vec<usize> {
        let mut lens = vec![0usize; self.n_rows];
        for t in &self.entries {
            lens[t.row] += 1;
        }
        lens
    }

    /// True if for every entry (i, j) the entry (j, i) is also present.
    pub fn is_structurally_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let pattern: std::collections::HashSet<(usize, usize)> =
            self.entries.iter().map(|t| (t.row, t.col)).collect();
        self.entries.iter().all(|t| pattern.contains(&(t.col, t.row)))
    }

    /// The matrix in the basis permuted by `p` on rows and columns:
    /// B[i][j] = A[p(i)][p(j)].
    pub fn permuted(&self, p: &crate::formats::Permutation) -> Result<Self> {
        if !self.is_square() || p.len() != self.n_rows {
            return Err(Error::DimensionMismatch(format!(
                "permutation of length {} on {}x{} matrix",
                p.len(),
                self.n_rows,
                self.n_cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .map(|t| Triplet::new(p.inverse()[t.row], p.inverse()[t.col], t.value))
            .collect();
        TripletMatrix::new(self.n_rows, self.n_cols, entries)
    }
}

/// Reference y = A*x, accumulated per row in entry-sorted order.
///
/// This accumulation order (ascending column within each row) is the
/// normative order: the CRS kernel must match it bitwise, the JDS-family
/// kernels within relative error.
pub fn dense_spmv_oracle(a: &TripletMatrix, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != a.n_cols() {
        return Err(Error::DimensionMismatch(format!(
            "input vector length {} != {} columns",
            x.len(),
            a.n_cols()
        )));
    }
    let mut y = vec![0.0; a.n_rows()];
    for t in a.entries() {
        y[t.row] += t.value * x[t.col];
    }
    Ok(y)
}

/// Occupancy of the matrix (sub)diagonals: for each offset d = col - row with
/// at least one entry, the number of non-zeros and the capacity (total
/// positions) of that diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalProfile {
    /// Offsets with nnz > 0, ascending.
    pub offsets: Vec<i64>,
    /// Non-zero count per offset, parallel to `offsets`.
    pub nnz_per_offset: Vec<usize>,
    /// Total (zero and non-zero) positions per offset, parallel to `offsets`.
    pub capacity_per_offset: Vec<usize>,
}

impl DiagonalProfile {
    pub fn total_nnz(&self) -> usize {
        self.nnz_per_offset.iter().sum()
    }

    pub fn nnz_at(&self, offset: i64) -> usize {
        match self.offsets.binary_search(&offset) {
            Ok(i) => self.nnz_per_offset[i],
            Err(_) => 0,
        }
    }

    /// (offset, nnz, cumulative fraction) ordered by descending nnz; ties by
    /// ascending offset. The cumulative column is the distribution function
    /// of non-zeros over diagonals, heaviest first.
    pub fn cumulative_by_occupancy(&self) -> Vec<(i64, usize, f64)> {
        let mut order: Vec<usize> = (0..self.offsets.len()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(self.nnz_per_offset[i]), self.offsets[i]));
        let total = self.total_nnz() as f64;
        let mut acc = 0usize;
        order
            .into_iter()
            .map(|i| {
                acc += self.nnz_per_offset[i];
                (self.offsets[i], self.nnz_per_offset[i], acc as f64 / total)
            })
            .collect()
    }

    /// Fraction of all non-zeros held by the `k` heaviest diagonals.
    pub fn top_k_fraction(&self, k: usize) -> f64 {
        let ranked = self.cumulative_by_occupancy();
        if ranked.is_empty() {
            return 0.0;
        }
        ranked[k.min(ranked.len()) - 1].2
    }
}

/// Number of positions on diagonal `d` of an `n_rows` x `n_cols` matrix.
fn diagonal_capacity(n_rows: usize, n_cols: usize, d: i64) -> usize {
    let lo = 0.max(-d) as usize;
    let hi_row = (n_rows as i64 - 1).min(n_cols as i64 - 1 - d);
    if hi_row < lo as i64 {
        0
    } else {
        hi_row as usize - lo + 1
    }
}

/// Counts non-zeros per diagonal offset d = col - row.
pub fn diagonal_profile(a: &TripletMatrix) -> DiagonalProfile {
    let mut counts: std::collections::BTreeMap<i64, usize> = std::collections::BTreeMap::new();
    for t in a.entries() {
        *counts.entry(t.col as i64 - t.row as i64).or_insert(0) += 1;
    }
    let offsets: Vec<i64> = counts.keys().copied().collect();
    let nnz_per_offset: Vec<usize> = counts.values().copied().collect();
    let capacity_per_offset: Vec<usize> = offsets
        .iter()
        .map(|&d| diagonal_capacity(a.n_rows(), a.n_cols(), d))
        .collect();
    for (i, &d) in offsets.iter().enumerate() {
        debug_assert!(nnz_per_offset[i] <= capacity_per_offset[i], "offset {d}");
    }
    DiagonalProfile {
        offsets,
        nnz_per_offset,
        capacity_per_offset,
    }
}
