//! Quadratic-character cochains on simplex skeleta.
//!
//! The quadratic character of the prime field marks a k-simplex when the sum
//! of its vertices is a nonzero square.  Because translation permutes the
//! (k+1)-subsets of the field and shifts their sums transitively, the subset
//! sums are exactly equidistributed, which pins the weight of the character
//! cochain to `(p-1)/(2p) * C(p, k+1)` with no error term.
//!
//! The module also evaluates a classical bilinear character-sum bound over
//! projection-constrained boxes by direct summation (the comparison is done
//! in exact integers after raising both sides to the power `(k+1) * 2^k`),
//! and combines it into an explicit rational lower-bound enclosure for the
//! cosystolic norm of the character cochain.  At desk-scale primes that
//! enclosure is typically negative; it is reported with a vacuity flag, not
//! asserted.

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use crate::complexes::{simplex_skeleton, CellLabel, ComplexZ2};
use crate::expansion::{cosystolic_norm, Cochain, Enclosure, ExpansionError, PairOperators};
use crate::gf2::BitVec;

/// Failure modes of character-cochain computations.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PaleyError {
    #[error("p={0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0}")]
    InvalidRange(String),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((u128::from(acc) * u128::from(base)) % u128::from(m)) as u64;
        }
        base = ((u128::from(base) * u128::from(base)) % u128::from(m)) as u64;
        exp >>= 1;
    }
    acc
}

/// The quadratic-character value of `x` modulo an odd prime `p`, by the
/// Euler criterion: 0 on multiples of `p`, +1 on nonzero squares, -1
/// otherwise.
pub fn legendre(x: u64, p: u64) -> Result<i8, PaleyError> {
    if !is_odd_prime(p) {
        return Err(PaleyError::NotOddPrime(p));
    }
    let r = x % p;
    if r == 0 {
        return Ok(0);
    }
    Ok(if mod_pow(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// Precomputed quadratic-character values on `0..p`.
pub struct CharTable {
    p: u64,
    values: Vec<i8>,
}

impl CharTable {
    pub fn new(p: u64) -> Result<Self, PaleyError> {
        if !is_odd_prime(p) {
            return Err(PaleyError::NotOddPrime(p));
        }
        let mut values = vec![-1i8; p as usize];
        values[0] = 0;
        // Mark the (p-1)/2 nonzero squares directly.
        for x in 1..p {
            values[((x * x) % p) as usize] = 1;
        }
        Ok(CharTable { p, values })
    }

    #[must_use]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[must_use]
    pub fn chi(&self, x: u64) -> i8 {
        self.values[(x % self.p) as usize]
    }
}

fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The character k-cochain on the (k+1)-skeleton of the simplex with vertex
/// set `0..p`: a k-cell is in the support when the character of its vertex
/// sum is +1.  Its weight is exactly `(p-1)/(2p) * C(p, k+1)`.
pub fn paley_cochain(p: u64, k: usize) -> Result<(ComplexZ2, Cochain), PaleyError> {
    if !is_odd_prime(p) {
        return Err(PaleyError::NotOddPrime(p));
    }
    if k == 0 || (k + 1) as u64 >= p {
        return Err(PaleyError::InvalidRange(format!(
            "character cochains need 1 <= k and k+1 < p; got p={p}, k={k}"
        )));
    }
    let x = simplex_skeleton(p as u32, k + 1)
        .map_err(|e| PaleyError::InvalidRange(e.to_string()))?;
    let table = CharTable::new(p)?;
    let mut bits = BitVec::zeros(x.n_cells(k));
    for i in 0..x.n_cells(k) {
        let CellLabel::Simplex(verts) = x.label(k, i) else {
            unreachable!("simplex skeleta carry simplex labels");
        };
        let sum = verts.iter().map(|&v| u64::from(v)).sum::<u64>() % p;
        if table.chi(sum) == 1 {
            bits.set(i);
        }
    }
    Ok((x, Cochain::new(k, bits)))
}

/// Sums the character of the coordinate sum over all (k+1)-tuples whose i-th
/// projection (dropping coordinate i) lies in `rs[i]`, each `rs[i]` a
/// membership table over radix-p encoded k-tuples.
fn char_sum_over_box(table: &CharTable, k: usize, rs: &[Vec<bool>]) -> i64 {
    let p = table.p;
    assert_eq!(rs.len(), k + 1, "one projection constraint per coordinate");
    let tuples = p.pow(k as u32 + 1);
    let mut sum: i64 = 0;
    let mut x = vec![0u64; k + 1];
    for code in 0..tuples {
        let mut c = code;
        for slot in &mut x {
            *slot = c % p;
            c /= p;
        }
        let admitted = (0..=k).all(|i| {
            let mut proj = 0u64;
            for j in (0..=k).rev() {
                if j != i {
                    proj = proj * p + x[j];
                }
            }
            rs[i][proj as usize]
        });
        if admitted {
            sum += i64::from(table.chi(x.iter().sum::<u64>() % p));
        }
    }
    sum
}

/// Whether `|sum|` respects the character-sum bound
/// `2^((k-1)/2^(k-1)) * p^(1-1/2^k) * (prod |R_i|)^(1/(k+1))`,
/// compared exactly after raising both sides to the power `(k+1) * 2^k`.
fn chung_bound_holds(p: u64, k: usize, sizes: &[u64], sum: i64) -> bool {
    let kk = k as u32;
    // Raising to the power (k+1)*2^k clears every fractional exponent:
    // the factor 2 gets 2(k-1)(k+1), p gets (k+1)(2^k - 1), sizes get 2^k.
    let lhs = BigUint::from(sum.unsigned_abs()).pow((kk + 1) * (1 << kk));
    let two_exp = 2 * (kk - 1) * (kk + 1);
    let p_exp = (kk + 1) * ((1u32 << kk) - 1);
    let mut bound = BigUint::from(2u64).pow(two_exp) * BigUint::from(p).pow(p_exp);
    for &s in sizes {
        bound *= BigUint::from(s).pow(1 << kk);
    }
    lhs <= bound
}

/// Outcome of randomized character-sum checks over projection boxes.
#[derive(Debug, Clone, PartialEq)]
pub struct ChungReport {
    pub p: u64,
    pub k: usize,
    pub trials: usize,
    /// Trials where the proven bound failed; nonzero indicates a bug.
    pub violations: usize,
    /// Largest observed |sum| / bound over trials with a positive bound.
    pub max_ratio: f64,
}

/// Samples `trials` random tuples of projection constraints and verifies the
/// character-sum bound on each by direct summation.  Deterministic in
/// `(seed, trial index)` regardless of thread count.
pub fn chung_sum_check(
    p: u64,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<ChungReport, PaleyError> {
    if !is_odd_prime(p) {
        return Err(PaleyError::NotOddPrime(p));
    }
    if k == 0 || p.pow(k as u32 + 1) > 10_000_000 {
        return Err(PaleyError::InvalidRange(format!(
            "direct summation needs 1 <= k and p^(k+1) <= 10^7; got p={p}, k={k}"
        )));
    }
    let table = CharTable::new(p)?;
    let k_tuples = p.pow(k as u32) as usize;
    let (violations, max_ratio) = (0..trials)
        .into_par_iter()
        .map(|trial| {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(
                seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
            );
            let rs: Vec<Vec<bool>> = (0..=k)
                .map(|_| (0..k_tuples).map(|_| rng.random::<bool>()).collect())
                .collect();
            let sizes: Vec<u64> =
                rs.iter().map(|r| r.iter().filter(|&&b| b).count() as u64).collect();
            let sum = char_sum_over_box(&table, k, &rs);
            let ok = chung_bound_holds(p, k, &sizes, sum);
            let ratio = observed_ratio(p, k, &sizes, sum);
            (usize::from(!ok), ratio)
        })
        .reduce(|| (0, 0.0), |(v1, r1), (v2, r2)| (v1 + v2, r1.max(r2)));
    Ok(ChungReport {
        p,
        k,
        trials,
        violations,
        max_ratio,
    })
}

fn observed_ratio(p: u64, k: usize, sizes: &[u64], sum: i64) -> f64 {
    if sizes.contains(&0) || sum == 0 {
        return 0.0;
    }
    let kf = k as f64;
    let bound = 2f64.powf((kf - 1.0) / 2f64.powf(kf - 1.0))
        * (p as f64).powf(1.0 - 2f64.powf(-kf))
        * sizes.iter().map(|&s| s as f64).product::<f64>().powf(1.0 / (kf + 1.0));
    sum.unsigned_abs() as f64 / bound
}

/// Exact cosystolic norm of the character cochain next to the explicit
/// closed-form lower bound.
#[derive(Debug, Clone, PartialEq)]
pub struct PaleyExperiment {
    pub p: u64,
    pub k: usize,
    /// Weight of the character cochain, `(p-1)/(2p) * C(p,k+1)`.
    pub norm: usize,
    /// Exact cosystolic norm from the coset scan.
    pub exact_csy: usize,
    /// `exact_csy / norm`.
    pub ratio: Ratio<u64>,
    /// Certified enclosure of
    /// `(p-1)/(2p) * C(p,k+1) - 2^(k+1)/(k+1)! * p^(k+1 - 1/2^k)`.
    pub lower_bound: Enclosure,
    /// The enclosure's guaranteed endpoint is nonpositive, so the
    /// closed-form bound says nothing at this prime.
    pub vacuous: bool,
}

impl PaleyExperiment {
    /// One CSV row: `p, k, norm, exact_csy, bound, ratio`.
    #[must_use]
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.6},{:.6}",
            self.p,
            self.k,
            self.norm,
            self.exact_csy,
            self.lower_bound.lo.to_f64().unwrap_or(f64::NAN),
            self.ratio.to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// Sound enclosure of the square root of a nonnegative rational interval.
fn sqrt_interval(e: &Enclosure) -> Enclosure {
    Enclosure {
        lo: sqrt_rational_low(&e.lo),
        hi: sqrt_rational_high(&e.hi),
    }
}

fn sqrt_rational_low(x: &BigRational) -> BigRational {
    let scale = BigInt::from(10u64).pow(12);
    let a = (x.numer() * x.denom() * scale.pow(2)).sqrt();
    BigRational::new(a, x.denom() * scale)
}

fn sqrt_rational_high(x: &BigRational) -> BigRational {
    let scale = BigInt::from(10u64).pow(12);
    let a = (x.numer() * x.denom() * scale.pow(2)).sqrt();
    BigRational::new(a + BigInt::one(), x.denom() * scale)
}

/// Runs the exact cosystolic scan for the character cochain and evaluates
/// the closed-form lower bound as a certified enclosure.
pub fn paley_csy_experiment(
    p: u64,
    k: usize,
    budget: u64,
) -> Result<PaleyExperiment, PaleyError> {
    let (x, phi) = paley_cochain(p, k)?;
    let ops = PairOperators::absolute(&x);
    let (exact_csy, _) = cosystolic_norm(&ops, &phi, budget)?;
    let norm = phi.weight();
    let kk = k as u32;
    let choose = BigInt::from(binomial_u64(p, k as u64 + 1));
    let a = BigRational::new(BigInt::from(p - 1) * choose, BigInt::from(2 * p));
    let b = BigRational::new(
        BigInt::from(2u64).pow(kk + 1),
        (1..=k as u64 + 1).map(BigInt::from).product(),
    );
    // p^(k+1 - 1/2^k) = p^(k+1) / (sqrt iterated k times of p).
    let mut root = Enclosure {
        lo: BigRational::from(BigInt::from(p)),
        hi: BigRational::from(BigInt::from(p)),
    };
    for _ in 0..k {
        root = sqrt_interval(&root);
    }
    let power = BigRational::from(BigInt::from(p).pow(kk + 1));
    let sub_hi = &b * &power / &root.lo;
    let sub_lo = &b * &power / &root.hi;
    let lower_bound = Enclosure {
        lo: &a - sub_hi,
        hi: &a - sub_lo,
    };
    let vacuous = !lower_bound.lo.is_positive();
    Ok(PaleyExperiment {
        p,
        k,
        norm,
        exact_csy,
        ratio: Ratio::new(exact_csy as u64, norm as u64),
        lower_bound,
        vacuous,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::{cycle_detection_bound, CycleFamily};

    #[test]
    fn legendre_values_and_errors() {
        assert_eq!(legendre(4, 5).unwrap(), 1);
        assert_eq!(legendre(0, 7).unwrap(), 0);
        assert_eq!(legendre(2, 5).unwrap(), -1);
        for bad in [1, 2, 9, 15] {
            assert_eq!(legendre(1, bad), Err(PaleyError::NotOddPrime(bad)));
        }
    }

    #[test]
    fn character_tables_are_multiplicative_and_balanced() {
        for p in (3..=97u64).filter(|&p| is_odd_prime(p)) {
            let t = CharTable::new(p).unwrap();
            let total: i64 = (0..p).map(|x| i64::from(t.chi(x))).sum();
            assert_eq!(total, 0, "p={p}");
            let squares = (0..p).filter(|&x| t.chi(x) == 1).count() as u64;
            assert_eq!(squares, (p - 1) / 2, "p={p}");
            for x in 0..p {
                for y in 0..p {
                    assert_eq!(
                        t.chi(x) * t.chi(y),
                        t.chi(x * y % p),
                        "p={p}, x={x}, y={y}"
                    );
                }
            }
            for x in 0..p {
                assert_eq!(t.chi(x), legendre(x, p).unwrap());
            }
        }
    }

    #[test]
    fn cochain_weight_matches_the_closed_form() {
        let frozen = [(5u64, 1usize, 4usize), (7, 1, 9), (5, 2, 4)];
        for &(p, k, expected) in &frozen {
            let (_, phi) = paley_cochain(p, k).unwrap();
            assert_eq!(phi.weight(), expected, "p={p}, k={k}");
        }
        for p in [3u64, 5, 7, 11, 13] {
            for k in 1..=3usize {
                if (k + 1) as u64 >= p {
                    continue;
                }
                let (_, phi) = paley_cochain(p, k).unwrap();
                let expected = (p - 1) / 2 * (binomial_u64(p, k as u64 + 1) / p);
                assert_eq!(phi.weight() as u64, expected, "p={p}, k={k}");
            }
        }
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert_eq!(paley_cochain(9, 1).unwrap_err(), PaleyError::NotOddPrime(9));
        assert!(matches!(
            paley_cochain(5, 0),
            Err(PaleyError::InvalidRange(_))
        ));
        assert!(matches!(
            paley_cochain(5, 4),
            Err(PaleyError::InvalidRange(_))
        ));
        assert!(matches!(
            chung_sum_check(97, 3, 1, 0),
            Err(PaleyError::InvalidRange(_))
        ));
    }

    #[test]
    fn empty_and_full_boxes_sum_as_expected() {
        let t = CharTable::new(5).unwrap();
        let empty = vec![vec![false; 5], vec![false; 5]];
        assert_eq!(char_sum_over_box(&t, 1, &empty), 0);
        // Over the full grid each row of the sum table is a complete
        // character sum, so everything cancels.
        let full = vec![vec![true; 5], vec![true; 5]];
        assert_eq!(char_sum_over_box(&t, 1, &full), 0);
        assert!(chung_bound_holds(5, 1, &[5, 5], 0));
    }

    #[test]
    fn random_boxes_never_violate_the_bound() {
        let r1 = chung_sum_check(7, 1, 100, 41).unwrap();
        assert_eq!(r1.violations, 0);
        assert!(r1.max_ratio <= 1.0, "ratio {}", r1.max_ratio);
        let r2 = chung_sum_check(5, 2, 25, 42).unwrap();
        assert_eq!(r2.violations, 0);
        assert!(r2.max_ratio <= 1.0, "ratio {}", r2.max_ratio);
    }

    #[test]
    fn chung_checks_are_thread_deterministic() {
        let a = chung_sum_check(7, 1, 40, 7).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| chung_sum_check(7, 1, 40, 7).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn smallest_experiment_has_cosystolic_norm_two() {
        // With five vertices the cochain is the path 3-1-0-4-2 (weight 4).
        // Cut cochains all have even weight, so the coset keeps even weight;
        // the cut at {1,4} leaves exactly the two edges 12 and 34.
        let e = paley_csy_experiment(5, 1, 1 << 20).unwrap();
        assert_eq!(e.norm, 4);
        assert_eq!(e.exact_csy, 2);
        assert_eq!(e.ratio, Ratio::new(1, 2));
        assert!(e.vacuous);
        assert!(e.lower_bound.lo < e.lower_bound.hi);
        assert_eq!(e.csv_row().split(',').count(), 6);
    }

    #[test]
    fn odd_weight_cochains_keep_odd_cosystoles() {
        // All coboundaries of the complete graph have even weight, so a
        // weight-9 cochain has an odd cosystolic norm.
        let e7 = paley_csy_experiment(7, 1, 1 << 20).unwrap();
        assert_eq!(e7.norm, 9);
        assert!(e7.exact_csy % 2 == 1 && e7.exact_csy <= 9 && e7.exact_csy >= 1);
        let e11 = paley_csy_experiment(11, 1, 1 << 20).unwrap();
        assert_eq!(e11.norm, 25);
        assert!(e11.exact_csy % 2 == 1 && e11.exact_csy <= 25);
        assert!(e11.vacuous);
    }

    #[test]
    fn budget_overruns_surface_as_errors() {
        assert!(matches!(
            paley_csy_experiment(11, 1, 4),
            Err(PaleyError::Expansion(ExpansionError::BudgetExceeded { .. }))
        ));
    }

    #[test]
    fn detection_certificate_is_tight_at_five_vertices() {
        let (x, phi) = paley_cochain(5, 1).unwrap();
        let ops = PairOperators::absolute(&x);
        let triangles = [[0u32, 1, 2], [1, 3, 4], [2, 3, 4]];
        let members: Vec<Cochain> = triangles
            .iter()
            .map(|verts| {
                let idx = x.index_of(2, &CellLabel::simplex(verts)).unwrap();
                ops.boundary(&Cochain::from_support(&ops, 2, &[idx]))
            })
            .collect();
        let family = CycleFamily::new(&ops, 1, members).unwrap();
        let bound = cycle_detection_bound(&ops, &phi, &family).unwrap();
        assert_eq!(bound, 2, "two piercing points for the three boundaries");
        let (csy, _) = cosystolic_norm(&ops, &phi, 1 << 20).unwrap();
        assert_eq!(bound, csy, "the certificate is tight here");
    }
}
