//! Minimum-weight search over affine subspaces (cosets) of GF(2)^n.
//!
//! A coset `rep + rowspace(B)` with `rank(B) = r` has `2^r` members. They are
//! enumerated in Gray-code order so that consecutive members differ by a
//! single basis row XOR. Enumeration cost is budgeted up front; witnesses are
//! tie-broken toward the lexicographically smallest bit pattern (coordinate 0
//! most significant), which makes results independent of chunking and thread
//! count.

use rayon::prelude::*;
use std::cmp::Ordering;
use thiserror::Error;

use super::{row_reduce, BitVec, GF2Matrix, RowEchelon};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CosetError {
    #[error("enumeration needs {needed} vectors, budget allows {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("basis rows are linearly dependent")]
    DependentRows,
    #[error("representative length {rep} does not match basis length {basis}")]
    LengthMismatch { rep: usize, basis: usize },
}

/// A coset `rep + rowspace(basis)` with an independent, row-reduced basis.
#[derive(Clone, Debug)]
pub struct CosetProblem {
    basis: RowEchelon,
    rep: BitVec,
}

impl CosetProblem {
    /// Requires the rows of `basis` to be linearly independent.
    pub fn new(basis: GF2Matrix, rep: BitVec) -> Result<Self, CosetError> {
        if rep.len() != basis.n_cols() {
            return Err(CosetError::LengthMismatch {
                rep: rep.len(),
                basis: basis.n_cols(),
            });
        }
        let n_rows = basis.n_rows();
        let ech = row_reduce(&basis);
        if ech.rank() != n_rows {
            return Err(CosetError::DependentRows);
        }
        Ok(CosetProblem { basis: ech, rep })
    }

    /// Accepts an arbitrary spanning set: row-reduces it first.
    #[must_use]
    pub fn from_span(span: &GF2Matrix, rep: BitVec) -> Self {
        assert_eq!(rep.len(), span.n_cols(), "representative length mismatch");
        CosetProblem {
            basis: row_reduce(span),
            rep,
        }
    }

    #[must_use]
    pub fn ambient_dim(&self) -> usize {
        self.rep.len()
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    #[must_use]
    pub fn representative(&self) -> &BitVec {
        &self.rep
    }

    #[must_use]
    pub fn basis(&self) -> &RowEchelon {
        &self.basis
    }
}

/// Exact minimum weight over the coset and the lexicographically smallest
/// witness attaining it. Enumerates all `2^rank` members; errors when that
/// exceeds `budget`.
pub fn coset_min_weight(p: &CosetProblem, budget: u64) -> Result<(usize, BitVec), CosetError> {
    let r = p.rank();
    check_budget(r, budget)?;
    let scanner = GrayScanner::new(p.basis.rows.clone(), p.ambient_dim());
    Ok(scanner.min_weight_parallel(&p.rep))
}

/// Fail fast when an exhaustive pass over `2^log2_count` vectors would
/// exceed `budget`.
pub fn check_budget(log2_count: usize, budget: u64) -> Result<(), CosetError> {
    let needed: u128 = 1u128 << log2_count.min(127);
    if log2_count >= 64 || needed > budget as u128 {
        return Err(CosetError::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// The canonical coset representatives of `rowspace(basis)` inside GF(2)^n:
/// exactly the vectors supported on non-pivot columns, in lexicographic order
/// (zero coset first). The stream has `2^(n - rank)` entries; callers are
/// responsible for budgeting it.
#[must_use]
pub fn enumerate_coset_reps(basis: &RowEchelon) -> CosetRepSpace {
    CosetRepSpace {
        free: basis.free_columns(),
        ambient: basis.cols,
    }
}

/// Index space of canonical coset representatives.
#[derive(Clone, Debug)]
pub struct CosetRepSpace {
    free: Vec<usize>,
    ambient: usize,
}

impl CosetRepSpace {
    /// log2 of the number of cosets.
    #[must_use]
    pub fn log2_count(&self) -> usize {
        self.free.len()
    }

    /// The `idx`-th representative in lexicographic order. Bit `t` of `idx`
    /// (t = 0 least significant) toggles free column `free[m-1-t]`, so binary
    /// counting visits bit patterns in lexicographic order.
    #[must_use]
    pub fn rep(&self, idx: u64) -> BitVec {
        let m = self.free.len();
        assert!(m >= 64 || idx < (1u64 << m), "representative index out of range");
        let mut v = BitVec::zeros(self.ambient);
        for t in 0..m.min(64) {
            if idx >> t & 1 == 1 {
                v.set(self.free[m - 1 - t]);
            }
        }
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = BitVec> + '_ {
        let count = 1u64
            .checked_shl(self.free.len() as u32)
            .expect("coset stream too large to iterate");
        (0..count).map(move |i| self.rep(i))
    }
}

/// Shared Gray-code scanning machinery over one coset.
pub(crate) struct GrayScanner {
    rows_flat: Vec<u64>,
    w: usize,
    r: usize,
    ambient: usize,
}

impl GrayScanner {
    pub(crate) fn new(rows: Vec<BitVec>, ambient: usize) -> Self {
        let w = ambient.div_ceil(64).max(1);
        let r = rows.len();
        let mut rows_flat = Vec::with_capacity(r * w);
        for row in &rows {
            assert_eq!(row.len(), ambient, "basis row length mismatch");
            rows_flat.extend_from_slice(row.words());
            debug_assert_eq!(row.words().len(), w);
        }
        GrayScanner { rows_flat, w, r, ambient }
    }

    /// Member at Gray position `idx`: `rep + sum of rows selected by gray(idx)`.
    fn seed(&self, rep: &BitVec, idx: u64) -> Vec<u64> {
        let mut cur = rep.words().to_vec();
        if cur.is_empty() {
            cur = vec![0];
        }
        let mut g = idx ^ (idx >> 1);
        while g != 0 {
            let j = g.trailing_zeros() as usize;
            let base = j * self.w;
            for (c, r) in cur.iter_mut().zip(&self.rows_flat[base..base + self.w]) {
                *c ^= r;
            }
            g &= g - 1;
        }
        cur
    }

    /// Visit members at Gray positions `[a, b)`. `visit(words, weight)`
    /// returns `false` to abort the walk early.
    pub(crate) fn scan_range<F>(&self, rep: &BitVec, a: u64, b: u64, mut visit: F)
    where
        F: FnMut(&[u64], usize) -> bool,
    {
        debug_assert!(a < b);
        let w = self.w;
        let mut cur = self.seed(rep, a);
        let mut weight: usize = cur.iter().map(|x| x.count_ones() as usize).sum();
        if !visit(&cur, weight) {
            return;
        }
        for i in a + 1..b {
            let j = i.trailing_zeros() as usize;
            let base = j * w;
            weight = 0;
            for (c, r) in cur.iter_mut().zip(&self.rows_flat[base..base + w]) {
                *c ^= r;
                weight += c.count_ones() as usize;
            }
            if !visit(&cur, weight) {
                return;
            }
        }
    }

    fn min_weight_range(&self, rep: &BitVec, a: u64, b: u64) -> (usize, BitVec) {
        let mut best_w = usize::MAX;
        let mut best: Vec<u64> = Vec::new();
        self.scan_range(rep, a, b, |cur, weight| {
            if weight < best_w {
                best_w = weight;
                best.clear();
                best.extend_from_slice(cur);
            } else if weight == best_w && lex_less_words(cur, &best) {
                best.copy_from_slice(cur);
            }
            true
        });
        (best_w, words_to_bitvec(&best, self.ambient))
    }

    /// Full scan of all `2^r` members, chunked across threads. The merge is a
    /// deterministic fold over chunk results in index order.
    pub(crate) fn min_weight_parallel(&self, rep: &BitVec) -> (usize, BitVec) {
        let total: u64 = 1 << self.r;
        const PAR_THRESHOLD: u64 = 1 << 18;
        if total < PAR_THRESHOLD {
            return self.min_weight_range(rep, 0, total);
        }
        let chunks = (rayon::current_num_threads() as u64 * 8).next_power_of_two().min(total);
        let per = total / chunks;
        let results: Vec<(usize, BitVec)> = (0..chunks)
            .into_par_iter()
            .map(|c| self.min_weight_range(rep, c * per, (c + 1) * per))
            .collect();
        results
            .into_iter()
            .reduce(merge_min)
            .expect("at least one chunk")
    }
}

fn words_to_bitvec(words: &[u64], len: usize) -> BitVec {
    let mut trimmed = words[..len.div_ceil(64).max(1).min(words.len())].to_vec();
    if len == 0 {
        return BitVec::zeros(0);
    }
    trimmed.truncate(len.div_ceil(64));
    BitVec::from_words(trimmed, len)
}

pub(crate) fn lex_less_words(a: &[u64], b: &[u64]) -> bool {
    for (x, y) in a.iter().zip(b.iter()) {
        let diff = x ^ y;
        if diff != 0 {
            let bit = diff.trailing_zeros();
            return x >> bit & 1 == 0;
        }
    }
    false
}

fn merge_min(a: (usize, BitVec), b: (usize, BitVec)) -> (usize, BitVec) {
    match a.0.cmp(&b.0) {
        Ordering::Less => a,
        Ordering::Greater => b,
        Ordering::Equal => {
            if a.1.lex_cmp(&b.1) == Ordering::Greater {
                b
            } else {
                a
            }
        }
    }
}
