//! Closed-form bound evaluators in exact rational arithmetic.
//!
//! Square roots are certified: `sqrt_enclosure` returns a rational interval
//! of width at most 10⁻¹² around the true root, and every derived bound
//! propagates the interval monotonically, so reported enclosures are sound
//! to well under the stated 10⁻⁹ precision.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

use super::cheeger::cheeger_co;
use super::operators::PairOperators;
use super::ExpansionError;
use crate::complexes::{product_with_simplex, ComplexZ2};

/// A certified rational interval containing an exactly defined real number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    #[must_use]
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    #[must_use]
    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo <= *x && *x <= self.hi
    }
}

impl std::fmt::Display for Enclosure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let lo = self.lo.to_f64().unwrap_or(f64::NAN);
        let hi = self.hi.to_f64().unwrap_or(f64::NAN);
        write!(f, "[{lo:.12}, {hi:.12}]")
    }
}

/// Certified enclosure of `sqrt(p/q)` with width `1/(q * 10^12)`.
///
/// The endpoints are `a / (q * 10^12)` and `(a+1) / (q * 10^12)` with
/// `a = floor(sqrt(p * q * 10^24))`; for rational roots the lower endpoint
/// is exact.
#[must_use]
pub fn sqrt_enclosure(p: u64, q: u64) -> Enclosure {
    assert!(q > 0, "square root of a fraction needs a positive denominator");
    let scale = BigInt::from(10u64).pow(12);
    let a = (BigInt::from(p) * BigInt::from(q) * scale.pow(2)).sqrt();
    let den = BigInt::from(q) * scale;
    Enclosure {
        lo: BigRational::new(a.clone(), den.clone()),
        hi: BigRational::new(a + BigInt::one(), den),
    }
}

/// Two-sided bounds on the maximal k-cosystole of a complex with `f_k`
/// cells of dimension k and `f_km1` of dimension k-1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaBounds {
    /// `(1 - 20 sqrt(f_{k-1}/f_k)) * f_k / 2`, as a certified enclosure.
    pub lower: Enclosure,
    /// Whether the lower bound is certainly non-positive, hence vacuous.
    pub lower_vacuous: bool,
    /// `f_k / 2`, exact.
    pub upper: Ratio<u64>,
}

/// Evaluate both sides of the maximal-cosystole estimate.
#[must_use]
pub fn bound_blam(f_k: u64, f_km1: u64) -> LambdaBounds {
    assert!(f_k > 0 && f_km1 > 0, "cell counts must be positive");
    let s = sqrt_enclosure(f_km1, f_k);
    let half = BigRational::new(BigInt::from(f_k), BigInt::from(2u64));
    let twenty = BigRational::from_integer(BigInt::from(20u64));
    let one = BigRational::one();
    // The map t -> (1 - 20 t) * f_k/2 is decreasing, so the endpoints swap.
    let lower = Enclosure {
        lo: (&one - &twenty * &s.hi) * &half,
        hi: (&one - &twenty * &s.lo) * &half,
    };
    let lower_vacuous = lower.hi <= BigRational::zero();
    LambdaBounds {
        lower,
        lower_vacuous,
        upper: Ratio::new(f_k, 2),
    }
}

/// The bounded-degree upper estimate `(1 + 50 sqrt(k+1)/sqrt(D)) * D/(k+2)`
/// for the k-th Cheeger constant of a pure (k+1)-dimensional complex each of
/// whose k-cells lies in at most D cells of dimension k+1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBound {
    /// Certified enclosure of the estimate.
    pub value: Enclosure,
    /// Whether the theorem's hypothesis `D >= 1600 (k+1)` holds; the value
    /// is still evaluated when it does not, and this flag records it.
    pub hypothesis_met: bool,
}

#[must_use]
pub fn bound_uphk(d: u64, k: usize) -> DegreeBound {
    assert!(d > 0, "degree bound must be positive");
    let s = sqrt_enclosure(k as u64 + 1, d);
    let base = BigRational::new(BigInt::from(d), BigInt::from(k as u64 + 2));
    let fifty = BigRational::from_integer(BigInt::from(50u64));
    let one = BigRational::one();
    DegreeBound {
        value: Enclosure {
            lo: (&one + &fifty * &s.lo) * &base,
            hi: (&one + &fifty * &s.hi) * &base,
        },
        hypothesis_met: d >= 1600 * (k as u64 + 1),
    }
}

/// The product estimate `min{ h, max{1, n/(k+2)} }`, exact.
#[must_use]
pub fn bound_prod(h: Ratio<u64>, n: u64, k: usize) -> Ratio<u64> {
    assert!(n > 0, "simplex factor must have vertices");
    let simplex_term = Ratio::new(n, k as u64 + 2).max(Ratio::one());
    h.min(simplex_term)
}

/// Outcome of checking the product estimate on a concrete complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductBoundReport {
    pub product_name: String,
    /// Exact degree-k Cheeger constant of `X x simplex(n)`.
    pub left: Ratio<u64>,
    /// The product estimate; when the base constant is undefined this is
    /// the simplex term `max{1, n/(k+2)}` alone.
    pub right: Ratio<u64>,
    /// Whether the base space had no admissible cochains in degree k.
    pub base_degenerate: bool,
    /// `left >= right`.
    pub holds: bool,
}

/// Compute both sides of the product estimate exactly and compare them.
pub fn verify_product_bound(
    x: &ComplexZ2,
    n: u32,
    k: usize,
    budget: u64,
) -> Result<ProductBoundReport, ExpansionError> {
    let product = product_with_simplex(x, n).expect("product parameters within range");
    let product_ops = PairOperators::absolute(&product);
    let left = cheeger_co(&product_ops, k, budget)?.value;
    let base_ops = PairOperators::absolute(x);
    let simplex_term = Ratio::new(u64::from(n), k as u64 + 2).max(Ratio::one());
    let (right, base_degenerate) = match cheeger_co(&base_ops, k, budget) {
        Ok(res) => (bound_prod(res.value, u64::from(n), k), false),
        Err(ExpansionError::DegenerateSpace { .. })
        | Err(ExpansionError::DimensionOutOfRange { .. }) => (simplex_term, true),
        Err(e) => return Err(e),
    };
    Ok(ProductBoundReport {
        product_name: product.name().to_string(),
        left,
        right,
        base_degenerate,
        holds: left >= right,
    })
}
