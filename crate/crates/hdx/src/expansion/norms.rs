//! Cosystolic and systolic norms, and rank-based cohomology dimensions.

use super::operators::{Cochain, PairOperators};
use super::ExpansionError;
use crate::gf2::{coset_min_weight, in_row_space, row_reduce, CosetProblem};

/// Minimum weight over the coset `phi + coboundaries`, together with the
/// lexicographically smallest member attaining it (a cosystolic form of
/// `phi`). The value is 0 exactly when `phi` is itself a coboundary.
pub fn cosystolic_norm(
    ops: &PairOperators,
    phi: &Cochain,
    budget: u64,
) -> Result<(usize, Cochain), ExpansionError> {
    let k = check_dim(ops, phi)?;
    let problem = CosetProblem::from_span(ops.coboundary_space(k), phi.bits().clone());
    let (weight, bits) = coset_min_weight(&problem, budget)?;
    Ok((weight, Cochain::new(k, bits)))
}

/// Minimum weight over the coset `c + boundaries`, together with the
/// lexicographically smallest member attaining it (a systolic form of `c`).
/// The value is 0 exactly when `c` is itself a boundary.
pub fn systolic_norm(
    ops: &PairOperators,
    c: &Cochain,
    budget: u64,
) -> Result<(usize, Cochain), ExpansionError> {
    let k = check_dim(ops, c)?;
    let problem = CosetProblem::from_span(&ops.boundary_space(k), c.bits().clone());
    let (weight, bits) = coset_min_weight(&problem, budget)?;
    Ok((weight, Cochain::new(k, bits)))
}

/// Whether `phi` lies in the coboundary space of its dimension.
#[must_use]
pub fn is_coboundary(ops: &PairOperators, phi: &Cochain) -> bool {
    assert_eq!(phi.bits().len(), ops.n_free(phi.dim()), "cochain length mismatch");
    in_row_space(ops.coboundary_space(phi.dim()), phi.bits())
}

/// Whether `c` is a cycle: its boundary vanishes (in degree 0 this is the
/// augmentation parity when the augmentation is active, and always true
/// otherwise).
#[must_use]
pub fn is_cycle(ops: &PairOperators, c: &Cochain) -> bool {
    assert_eq!(c.bits().len(), ops.n_free(c.dim()), "chain length mismatch");
    ops.boundary_matrix(c.dim()).apply(c.bits()).is_zero()
}

/// Dimension of the degree-k cohomology over GF(2), computed from operator
/// ranks. Over a field this equals the homology dimension in the same degree.
#[must_use]
pub fn cohomology_dim(ops: &PairOperators, k: usize) -> usize {
    let f = ops.n_free(k);
    if f == 0 {
        return 0;
    }
    let below = row_reduce(ops.coboundary_space(k)).rank();
    let above = if k + 1 < ops.levels() {
        row_reduce(ops.boundary_matrix(k + 1)).rank()
    } else {
        0
    };
    f - below - above
}

fn check_dim(ops: &PairOperators, v: &Cochain) -> Result<usize, ExpansionError> {
    let k = v.dim();
    if k >= ops.levels() {
        return Err(ExpansionError::DimensionOutOfRange {
            dim: k,
            levels: ops.levels(),
        });
    }
    assert_eq!(v.bits().len(), ops.n_free(k), "coordinate length mismatch");
    Ok(k)
}
