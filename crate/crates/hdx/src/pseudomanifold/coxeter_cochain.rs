//! An explicit codimension-one cosystole on the type-A Coxeter complex.
//!
//! Top cells of the barycentric subdivision of the boundary simplex are
//! complete flags, i.e. permutations of `{1..n}` read off as nested
//! prefixes.  The cochain built here is supported on the ridges of a walk
//! through `n(n-1)/2` flags from the identity flag to the reversal flag;
//! the walk is a geodesic in the flip graph, so the cochain's weight is
//! exactly its cosystolic norm and its expansion ratio meets the
//! `2 / diameter` value of the whole complex.

use super::PseudomanifoldError;
use crate::complexes::{coxeter_an, subset_name, CellLabel, ComplexZ2};
use crate::expansion::Cochain;
use crate::gf2::BitVec;

/// The path cochain on the subdivided boundary simplex, with the flags at
/// the two ends of its coboundary.
pub struct CoxeterCochain {
    /// The subdivided boundary of the `(n-1)`-simplex.
    pub complex: ComplexZ2,
    /// The path cochain, a codimension-one cochain of weight `n(n-1)/2`.
    pub cochain: Cochain,
    /// Top cell of the identity flag `1 < 12 < ... `.
    pub first_top: usize,
    /// Top cell of the reversal flag `n < n(n-1) < ...`.
    pub last_top: usize,
}

/// Builds the weight-`n(n-1)/2` path cochain on the subdivided boundary of
/// the `(n-1)`-simplex, for `4 <= n <= 6`.
pub fn phi_n_cochain(n: u32) -> Result<CoxeterCochain, PseudomanifoldError> {
    if !(4..=6).contains(&n) {
        return Err(PseudomanifoldError::InvalidRange(format!(
            "the path cochain is built for 4 <= n <= 6; got n={n}"
        )));
    }
    let x = coxeter_an(n).expect("n is within the builder range");
    let dim = (n - 2) as usize;
    let ridge_dim = dim - 1;
    let mut bits = BitVec::zeros(x.n_cells(ridge_dim));
    for j in 1..n {
        for l in 1..=(n - j) {
            let pi = permutation(n, j, l);
            let face = chain_label(&pi, (n - l) as usize);
            let idx = x
                .index_of(ridge_dim, &face)
                .expect("dropping one prefix of a flag yields a ridge");
            debug_assert!(!bits.get(idx), "the ridges of the walk are distinct");
            bits.flip(idx);
        }
    }
    let identity: Vec<u32> = (1..=n).collect();
    let reversal: Vec<u32> = (1..=n).rev().collect();
    let first_top = x
        .index_of(dim, &chain_label(&identity, 0))
        .expect("the identity flag is a top cell");
    let last_top = x
        .index_of(dim, &chain_label(&reversal, 0))
        .expect("the reversal flag is a top cell");
    Ok(CoxeterCochain {
        cochain: Cochain::new(ridge_dim, bits),
        complex: x,
        first_top,
        last_top,
    })
}

/// The `(j, l)`-th permutation of the walk, `1 <= j <= n-1` and
/// `1 <= l <= n-j`: a descending run from `n`, an ascending run from 1,
/// the single value `n-j+1`, then the remaining ascending run.
fn permutation(n: u32, j: u32, l: u32) -> Vec<u32> {
    let mut pi = Vec::with_capacity(n as usize);
    pi.extend((n - j + 2..=n).rev());
    pi.extend(1..=n - j - l);
    pi.push(n - j + 1);
    pi.extend(n - j - l + 1..=n - j);
    debug_assert_eq!(pi.len(), n as usize);
    pi
}

/// The flag of `pi` as a chain label of nested prefixes, omitting the
/// prefix of size `skip` (0 keeps the full flag).
fn chain_label(pi: &[u32], skip: usize) -> CellLabel {
    let n = pi.len();
    let mut names = Vec::with_capacity(n - 1);
    for t in 1..n {
        if t == skip {
            continue;
        }
        let mut set: Vec<u32> = pi[..t].to_vec();
        set.sort_unstable();
        names.push(subset_name(&set));
    }
    CellLabel::Chain(names)
}

/// The walk position of the `(j, l)`-th permutation, counting from 1.
#[cfg(test)]
fn pi_index(n: u32, j: u32, l: u32) -> u32 {
    (j - 1) * n - j * (j - 1) / 2 + l
}

/// The permutation one step earlier in the walk; step 0 is the identity.
#[cfg(test)]
fn predecessor(n: u32, j: u32, l: u32) -> Vec<u32> {
    if l >= 2 {
        permutation(n, j, l - 1)
    } else if j == 1 {
        (1..=n).collect()
    } else {
        permutation(n, j - 1, n - j + 1)
    }
}
