//! Linear algebra over GF(2): bit vectors, matrices, row reduction and
//! budgeted minimum-weight coset search.

mod bitvec;
mod coset;
mod matrix;

pub use bitvec::{BitIter, BitVec};
pub use coset::{
    check_budget, coset_min_weight, enumerate_coset_reps, CosetError, CosetProblem, CosetRepSpace,
};
pub(crate) use coset::{lex_less_words, GrayScanner};
pub use matrix::{in_row_space, row_reduce, GF2Matrix, RowEchelon};
