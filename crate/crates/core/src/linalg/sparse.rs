use serde::Serialize;

use super::{DenseMatrix, Int};
use num_traits::Zero;

/// Column-major sparse integer matrix; each column holds `(row, value)`
/// pairs sorted by row with no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<Vec<(usize, Int)>>,
}

/// Coordinate form used for JSON export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triplets {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, cols: vec![Vec::new(); ncols] }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[Vec<(usize, Int)>] {
        &self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, Int)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// Appends a column given as unsorted `(row, value)` pairs; duplicate rows
    /// are summed and zeros dropped.
    pub fn push_column(&mut self, entries: impl IntoIterator<Item = (usize, Int)>) {
        let mut col: Vec<(usize, Int)> = entries.into_iter().collect();
        col.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, Int)> = Vec::with_capacity(col.len());
        for (r, v) in col {
            assert!(r < self.nrows, "row {r} out of range {}", self.nrows);
            match merged.last_mut() {
                Some((lr, lv)) if *lr == r => *lv += v,
                _ => merged.push((r, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        self.cols.push(merged);
    }

    pub fn from_columns(nrows: usize, cols: impl IntoIterator<Item = Vec<(usize, Int)>>) -> Self {
        let mut m = SparseMatrix::zeros(nrows, 0);
        for c in cols {
            m.push_column(c);
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        Self::from_columns(n, (0..n).map(|i| vec![(i, Int::from(1))]))
    }

    pub fn get(&self, i: usize, j: usize) -> Int {
        match self.cols[j].binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.cols[j][k].1.clone(),
            Err(_) => Int::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<Vec<(usize, Int)>> = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                rows[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { nrows: self.ncols(), cols: rows }
    }

    /// `self · v` for a dense vector.
    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.ncols());
        let mut out = vec![Int::zero(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (i, a) in col {
                out[*i] += a * &v[j];
            }
        }
        out
    }

    /// Applies the matrix to a sparse vector.
    pub fn apply_sparse(&self, v: &[(usize, Int)]) -> Vec<(usize, Int)> {
        let mut acc: std::collections::BTreeMap<usize, Int> = Default::default();
        for (j, x) in v {
            for (i, a) in &self.cols[*j] {
                *acc.entry(*i).or_insert_with(Int::zero) += a * x;
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), rhs.nrows(), "dimension mismatch");
        SparseMatrix::from_columns(self.nrows, rhs.cols.iter().map(|c| self.apply_sparse(c)))
    }

    pub fn select_columns(&self, which: &[usize]) -> SparseMatrix {
        SparseMatrix { nrows: self.nrows, cols: which.iter().map(|&j| self.cols[j].clone()).collect() }
    }

    /// Keeps the listed rows, renumbered in the given order.
    pub fn select_rows(&self, which: &[usize]) -> SparseMatrix {
        let mut new_index = vec![usize::MAX; self.nrows];
        for (k, &r) in which.iter().enumerate() {
            new_index[r] = k;
        }
        SparseMatrix::from_columns(
            which.len(),
            self.cols.iter().map(|c| {
                c.iter()
                    .filter(|(r, _)| new_index[*r] != usize::MAX)
                    .map(|(r, v)| (new_index[*r], v.clone()))
                    .collect()
            }),
        )
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.nrows, self.ncols());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                d.set(*i, j, v.clone());
            }
        }
        d
    }

    pub fn from_dense(d: &DenseMatrix) -> SparseMatrix {
        SparseMatrix::from_columns(
            d.rows(),
            (0..d.cols()).map(|j| {
                (0..d.rows())
                    .filter(|&i| !d.get(i, j).is_zero())
                    .map(|i| (i, d.get(i, j).clone()))
                    .collect()
            }),
        )
    }

    pub fn triplets(&self) -> Triplets {
        let mut entries = Vec::with_capacity(self.nnz());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                entries.push((*i, j, v.to_string()));
            }
        }
        entries.sort();
        Triplets { rows: self.nrows, cols: self.ncols(), entries }
    }
}
