//! Exact GF(2) expansion toolkit for small cell complexes.
//!
//! The crate computes chain/cochain Cheeger constants, systolic and
//! cosystolic norms, covering radii of coboundary spaces and several
//! families of lower-bound certificates (cycle detection, cochain
//! homotopies, lattice chain schemes), plus flip-graph methods for
//! pseudomanifolds, quadratic-character cochains and non-abelian
//! 1-cohomology. Every reported constant is an exact rational; square
//! roots appearing in closed-form bounds are returned as rational
//! enclosures. Exhaustive searches are budgeted and deterministic,
//! independent of thread count.

pub mod certificates;
pub mod complexes;
pub mod expansion;
pub mod gf2;
pub mod nonabelian;
pub mod paley;
pub mod pseudomanifold;

/// Default enumeration budget (number of vectors a single search may visit).
pub const DEFAULT_BUDGET: u64 = 1 << 28;
