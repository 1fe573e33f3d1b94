//! Norms, systoles/cosystoles, exact Cheeger constants, maximal cosystoles,
//! and closed-form bound evaluators.
//!
//! All values are exact rationals; square roots appearing in closed-form
//! bounds are returned as certified rational enclosures. Exhaustive searches
//! are budgeted up front and report `BudgetExceeded` instead of truncating.

mod bounds;
mod cheeger;
mod duality;
mod norms;
mod operators;

pub use bounds::{
    bound_blam, bound_prod, bound_uphk, sqrt_enclosure, verify_product_bound, DegreeBound,
    Enclosure, LambdaBounds, ProductBoundReport,
};
pub use duality::{complement_transfer, dual_pair};
pub use cheeger::{cheeger_co, cheeger_ho, max_cosystole, CosystoleResult};
pub use norms::{cohomology_dim, cosystolic_norm, is_coboundary, is_cycle, systolic_norm};
pub use operators::{Cochain, PairOperators};

use crate::gf2::CosetError;
use num_rational::Ratio;
use thiserror::Error;

/// Failure modes of the exact expansion computations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExpansionError {
    /// An exhaustive enumeration would visit more vectors than allowed.
    #[error("enumeration of {needed} vectors exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    /// Every k-cochain is a coboundary, so the minimum defining the Cheeger
    /// constant ranges over an empty set.
    #[error("every {dim}-cochain is a coboundary; the expansion minimum is over an empty set")]
    DegenerateSpace { dim: usize },
    /// Requested dimension does not exist in the complex.
    #[error("dimension {dim} out of range for a complex with {levels} levels")]
    DimensionOutOfRange { dim: usize, levels: usize },
}

impl From<CosetError> for ExpansionError {
    fn from(e: CosetError) -> Self {
        match e {
            CosetError::BudgetExceeded { needed, budget } => {
                ExpansionError::BudgetExceeded { needed, budget }
            }
            CosetError::DependentRows | CosetError::LengthMismatch { .. } => {
                unreachable!("coset problems are built from reduced spans")
            }
        }
    }
}

/// An exact expansion minimum together with the cochain attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionResult {
    /// The minimum ratio, reduced.
    pub value: Ratio<u64>,
    /// A minimizing cochain (a cosystolic form of its coset), tie-broken by
    /// smallest numerator norm and then lexicographically.
    pub witness: Cochain,
    /// Norm of the (co)boundary of the witness.
    pub numerator_norm: usize,
    /// Cosystolic (or systolic) norm of the witness; always at least 1.
    pub denominator_norm: usize,
    /// Deterministic size of the admitted enumeration:
    /// `2^(#cosets bits) + 2^(coset rank)`.
    pub budget_used: u64,
}
