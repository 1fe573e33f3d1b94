//! Lower-bound certificates that avoid exhaustive search: piercing numbers
//! of detecting cycle families, cochain-homotopy schemes, and the geometric
//! lattice construction built on atom orderings.
//!
//! Every certificate is validated, not trusted: cycle families are checked
//! to consist of cycles on which the cochain evaluates nontrivially, and
//! homotopy schemes have their filling identity verified exhaustively
//! before a bound is emitted.

mod cycles;
mod homotopy;
mod lattice;
mod piercing;

pub use cycles::{cycle_detection_bound, CycleFamily};
pub use homotopy::{homotopy_bound, HomotopyScheme};
pub use lattice::{
    group_closure, lattice_bound, orderings_from_automorphisms, LatticeScheme,
};
pub use piercing::{piercing_number, PIERCING_NODE_BUDGET};

use thiserror::Error;

/// Failure modes of certificate construction and evaluation.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    /// The exact branch-and-bound search exceeded its node budget.
    #[error("piercing search explored {explored} nodes, exceeding the budget {budget}")]
    BudgetExceeded { explored: u64, budget: u64 },
    /// A member of a purported cycle family has nonzero boundary.
    #[error("family member {index} is not a cycle")]
    NotACycle { index: usize },
    /// The certified cochain evaluates to zero on a family member, so the
    /// member detects nothing.
    #[error("the cochain evaluates to zero on cycle {index}")]
    ZeroEvaluation { index: usize },
    /// The filling identity fails for the given sample point and cell.
    #[error("filling identity violated at s={s}, cell index {sigma}")]
    FillIdentityViolated { s: usize, sigma: usize },
    /// The supplied automorphisms do not act transitively on top cells.
    #[error("automorphism orbit covers {orbit} of {total} top cells")]
    NotHomogeneous { orbit: usize, total: usize },
    /// A dimension or rank parameter is outside the valid range.
    #[error("rank {got} out of range (limit {limit})")]
    RankOutOfRange { got: usize, limit: usize },
    /// Structural problem with the certificate inputs.
    #[error("invalid certificate data: {0}")]
    InvalidScheme(String),
}
