//! The complement bijection between chains of a subcomplex of the solid
//! simplex and relative cochains of its dual pair.
//!
//! For a complex `x` on vertex set `0..n`, the dual consists of the faces
//! whose complement is absent from `x`, so the free cells of the pair
//! `(solid simplex, dual)` in dimension `n - k - 2` are exactly the
//! complements of the k-cells of `x`.  Transferring a chain along that
//! bijection preserves the Hamming norm and intertwines the boundary of
//! `x` with the relative coboundary of the pair, which turns systolic
//! computations on one side into cosystolic computations on the other.

use crate::complexes::{
    alexander_dual, simplex_skeleton, CellLabel, ComplexError, ComplexZ2,
};
use crate::expansion::{Cochain, PairOperators};

/// The solid simplex on `n` vertices together with the complement dual of
/// `x`.  Fails when `x` is not simplicial on vertices below `n`.
pub fn dual_pair(x: &ComplexZ2, n: u32) -> Result<(ComplexZ2, ComplexZ2), ComplexError> {
    let ambient = simplex_skeleton(n, n as usize - 1)?;
    let dual = alexander_dual(x, n)?;
    Ok((ambient, dual))
}

/// Transfers a k-chain of `x` to the relative `(n - k - 2)`-cochain of the
/// dual pair supported on the complements of its cells.  `pair_ops` must be
/// the operators of `(solid simplex on n vertices, dual of x)`.
pub fn complement_transfer(
    x: &ComplexZ2,
    n: u32,
    ambient: &ComplexZ2,
    pair_ops: &PairOperators,
    c: &Cochain,
) -> Result<Cochain, ComplexError> {
    let k = c.dim();
    let Some(out_dim) = (n as usize).checked_sub(k + 2) else {
        return Err(ComplexError::InvalidRange(format!(
            "no complementary dimension for {k}-chains on ground set of size {n}"
        )));
    };
    let free = pair_ops.free_cells(out_dim);
    let mut out = Cochain::zeros(pair_ops, out_dim);
    for i in c.support() {
        let label = x.label(k, i);
        let CellLabel::Simplex(s) = label else {
            return Err(ComplexError::NotSimplicial(format!(
                "cell {label} is not a simplex"
            )));
        };
        if s.iter().any(|&v| v >= n) {
            return Err(ComplexError::NotSimplicial(format!(
                "cell {label} uses a vertex outside 0..{n}"
            )));
        }
        let complement: Vec<u32> = (0..n).filter(|v| !s.contains(v)).collect();
        let comp_label = CellLabel::Simplex(complement);
        let amb = ambient
            .index_of(out_dim, &comp_label)
            .unwrap_or_else(|| panic!("complement {comp_label} missing from the solid simplex"));
        let pos = free
            .binary_search(&(amb as u32))
            .unwrap_or_else(|_| panic!("complement {comp_label} of a cell of x lies in the dual"));
        out.flip(pos);
    }
    Ok(out)
}
