//! Row-major GF(2) matrices and Gaussian elimination.

use super::BitVec;

/// A matrix over GF(2), stored as rows of equal length.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GF2Matrix {
    rows: Vec<BitVec>,
    cols: usize,
}

/// Result of full row reduction: the reduced form, its rank and pivot columns.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    /// Nonzero rows in reduced echelon form, pivot columns strictly increasing,
    /// each pivot column zero in every other row.
    pub rows: Vec<BitVec>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl GF2Matrix {
    #[must_use]
    pub fn new(cols: usize) -> Self {
        GF2Matrix { rows: Vec::new(), cols }
    }

    /// Build from rows; all rows must share the given length.
    #[must_use]
    pub fn from_rows(rows: Vec<BitVec>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        GF2Matrix { rows, cols }
    }

    pub fn push_row(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.rows.push(row);
    }

    #[must_use]
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub fn n_cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    #[must_use]
    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    #[must_use]
    pub fn transpose(&self) -> GF2Matrix {
        let mut out = vec![BitVec::zeros(self.rows.len()); self.cols];
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones() {
                out[j].set(i);
            }
        }
        GF2Matrix::from_rows(out, self.rows.len())
    }

    /// Matrix-vector product, treating `v` as a column vector.
    #[must_use]
    pub fn apply(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = BitVec::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(i);
            }
        }
        out
    }
}

/// Reduced row echelon form with deterministic pivot choice (lowest row with
/// the leftmost remaining leading coordinate).
#[must_use]
pub fn row_reduce(m: &GF2Matrix) -> RowEchelon {
    let cols = m.n_cols();
    let mut work: Vec<BitVec> = m.rows().iter().filter(|r| !r.is_zero()).cloned().collect();
    let mut reduced: Vec<BitVec> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();

    for col in 0..cols {
        let Some(pos) = work.iter().position(|r| r.first_one() == Some(col)) else {
            continue;
        };
        let pivot_row = work.swap_remove(pos);
        for r in work.iter_mut() {
            if r.get(col) {
                r.xor_assign(&pivot_row);
            }
        }
        work.retain(|r| !r.is_zero());
        for r in reduced.iter_mut() {
            if r.get(col) {
                r.xor_assign(&pivot_row);
            }
        }
        reduced.push(pivot_row);
        pivots.push(col);
        if work.is_empty() {
            break;
        }
    }

    // Rows were pushed in pivot order already; keep them sorted by pivot.
    RowEchelon { rows: reduced, pivots, cols }
}

impl RowEchelon {
    #[must_use]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Columns that carry no pivot, in increasing order.
    #[must_use]
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Reduce `v` modulo the row space: the unique coset representative
    /// supported away from the pivot columns.
    #[must_use]
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(row);
            }
        }
        out
    }
}

/// Is `v` in the row space of `m`?
#[must_use]
pub fn in_row_space(m: &GF2Matrix, v: &BitVec) -> bool {
    row_reduce(m).reduce(v).is_zero()
}
