//! Exact Cheeger constants and maximal cosystoles via budgeted coset sweeps.
//!
//! Both functionals in a Cheeger ratio are constant on cosets of the
//! quotient space (the numerator because the operators compose to zero, the
//! denominator by definition), so the sweep streams one canonical
//! representative per coset and minimizes the coset weight with a Gray-code
//! walk. A shared incumbent prunes hopeless cosets:
//!
//! * Cheeger sweeps abort a coset once even its best possible outcome is
//!   strictly worse than the incumbent ratio (on exact ties, worse on the
//!   numerator tie-break). The optimal coset can never satisfy the abort
//!   test against any incumbent, so it always completes, and every other
//!   completed candidate compares strictly greater; the result is therefore
//!   independent of thread scheduling even though pruning is opportunistic.
//! * Covering-radius sweeps abort once the running coset minimum falls
//!   strictly below the incumbent radius; every maximizing coset finishes.

use std::sync::Mutex;

use num_rational::Ratio;
use rayon::prelude::*;

use super::operators::{Cochain, PairOperators};
use super::{ExpansionError, ExpansionResult};
use crate::gf2::{
    check_budget, enumerate_coset_reps, lex_less_words, row_reduce, BitVec, GF2Matrix,
    GrayScanner, RowEchelon,
};

/// How often a coset scan refreshes its snapshot of the shared incumbent.
const REFRESH_MASK: u64 = 0xFFFF;

/// Exact cohomological Cheeger constant in degree `k`: the minimum of
/// `|coboundary| / cosystolic norm` over cosets other than the coboundary
/// space itself. Returns a zero value with a cocycle witness exactly when
/// the degree-k cohomology is nonzero.
pub fn cheeger_co(
    ops: &PairOperators,
    k: usize,
    budget: u64,
) -> Result<ExpansionResult, ExpansionError> {
    check_level(ops, k)?;
    let numerator = ops.coboundary_matrix(k);
    let quotient = row_reduce(ops.coboundary_space(k));
    ratio_sweep(&numerator, &quotient, k, budget)
}

/// Exact homological Cheeger constant in degree `k`: the minimum of
/// `|boundary| / systolic norm` over cosets other than the boundary space
/// itself.
pub fn cheeger_ho(
    ops: &PairOperators,
    k: usize,
    budget: u64,
) -> Result<ExpansionResult, ExpansionError> {
    check_level(ops, k)?;
    let numerator = ops.boundary_matrix(k);
    let quotient = row_reduce(&ops.boundary_space(k));
    ratio_sweep(numerator, &quotient, k, budget)
}

/// The covering radius of the coboundary space and a cochain realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosystoleResult {
    /// Largest cosystolic norm over all k-cochains.
    pub lambda: usize,
    /// A cosystole of maximal norm (the lexicographically smallest deepest
    /// point among the deepest cosets).
    pub witness: Cochain,
    /// Deterministic size of the admitted enumeration.
    pub budget_used: u64,
}

/// Maximal norm of a k-cosystole: the deepest coset of the coboundary space,
/// measured by its minimum weight. All cosets participate, including the
/// coboundary space itself.
pub fn max_cosystole(
    ops: &PairOperators,
    k: usize,
    budget: u64,
) -> Result<CosystoleResult, ExpansionError> {
    check_level(ops, k)?;
    let f = ops.n_free(k);
    if f == 0 {
        return Ok(CosystoleResult {
            lambda: 0,
            witness: Cochain::new(k, BitVec::zeros(0)),
            budget_used: 2,
        });
    }
    let quotient = row_reduce(ops.coboundary_space(k));
    let r = quotient.rank();
    let coset_bits = f - r;
    check_budget(coset_bits, budget)?;
    check_budget(r, budget)?;
    let budget_used = (1u64 << coset_bits).saturating_add(1u64 << r);

    let reps = enumerate_coset_reps(&quotient);
    let scanner = GrayScanner::new(quotient.rows.clone(), f);
    let best: Mutex<Option<(usize, Vec<u64>)>> = Mutex::new(None);
    (0..1u64 << coset_bits).into_par_iter().for_each(|idx| {
        let rep = reps.rep(idx);
        let mut floor = read_radius(&best);
        let mut w_cur = usize::MAX;
        let mut wit: Vec<u64> = Vec::new();
        let mut steps: u64 = 0;
        let mut completed = true;
        scanner.scan_range(&rep, 0, 1u64 << r, |cur, weight| {
            if weight < w_cur {
                w_cur = weight;
                wit.clear();
                wit.extend_from_slice(cur);
            } else if weight == w_cur && lex_less_words(cur, &wit) {
                wit.copy_from_slice(cur);
            }
            steps += 1;
            if steps & REFRESH_MASK == 0 {
                floor = read_radius(&best);
            }
            if w_cur < floor {
                completed = false;
                return false;
            }
            true
        });
        if completed {
            let mut guard = best.lock().unwrap();
            let replace = match guard.as_ref() {
                None => true,
                Some((lam, old)) => w_cur > *lam || (w_cur == *lam && lex_less_words(&wit, old)),
            };
            if replace {
                *guard = Some((w_cur, wit));
            }
        }
    });

    let (lambda, words) = best
        .into_inner()
        .unwrap()
        .expect("the deepest coset always completes");
    Ok(CosystoleResult {
        lambda,
        witness: Cochain::new(k, BitVec::from_words(words, f)),
        budget_used,
    })
}

/// A completed coset of a ratio sweep: coset-invariant numerator, exact
/// minimum weight, and the lexicographically smallest minimizer.
struct Candidate {
    num: usize,
    den: usize,
    witness: Vec<u64>,
}

/// Strict total order on candidates: smaller ratio, then smaller numerator,
/// then lexicographically smaller witness. Distinct cosets can never tie on
/// all three (equal ratio and numerator force equal denominators, and their
/// witnesses lie in disjoint cosets).
fn candidate_better(a: &Candidate, b: &Candidate) -> bool {
    let left = a.num as u128 * b.den as u128;
    let right = b.num as u128 * a.den as u128;
    if left != right {
        return left < right;
    }
    if a.num != b.num {
        return a.num < b.num;
    }
    lex_less_words(&a.witness, &b.witness)
}

fn ratio_sweep(
    numerator: &GF2Matrix,
    quotient: &RowEchelon,
    k: usize,
    budget: u64,
) -> Result<ExpansionResult, ExpansionError> {
    let f = quotient.cols;
    assert_eq!(numerator.n_cols(), f, "operator shape mismatch");
    let r = quotient.rank();
    let coset_bits = f - r;
    if coset_bits == 0 {
        return Err(ExpansionError::DegenerateSpace { dim: k });
    }
    check_budget(coset_bits, budget)?;
    check_budget(r, budget)?;
    let budget_used = (1u64 << coset_bits).saturating_add(1u64 << r);

    let reps = enumerate_coset_reps(quotient);
    let scanner = GrayScanner::new(quotient.rows.clone(), f);
    let best: Mutex<Option<Candidate>> = Mutex::new(None);
    (1..1u64 << coset_bits).into_par_iter().for_each(|idx| {
        let rep = reps.rep(idx);
        let num = numerator.apply(&rep).weight();
        let mut incumbent = read_ratio(&best);
        let mut w_cur = usize::MAX;
        let mut wit: Vec<u64> = Vec::new();
        let mut steps: u64 = 0;
        let mut completed = true;
        scanner.scan_range(&rep, 0, 1u64 << r, |cur, weight| {
            if weight < w_cur {
                w_cur = weight;
                wit.clear();
                wit.extend_from_slice(cur);
            } else if weight == w_cur && lex_less_words(cur, &wit) {
                wit.copy_from_slice(cur);
            }
            steps += 1;
            if steps & REFRESH_MASK == 0 {
                incumbent = read_ratio(&best);
            }
            if let Some((bp, bq)) = incumbent {
                // Final coset value is at least num / w_cur; prune when that
                // already loses to the incumbent (strictly, or on the
                // numerator tie-break at equality).
                let lhs = num as u128 * bq;
                let rhs = bp * w_cur as u128;
                if lhs > rhs || (lhs == rhs && num as u128 > bp) {
                    completed = false;
                    return false;
                }
            }
            true
        });
        if completed {
            let cand = Candidate { num, den: w_cur, witness: wit };
            let mut guard = best.lock().unwrap();
            let replace = guard.as_ref().is_none_or(|old| candidate_better(&cand, old));
            if replace {
                *guard = Some(cand);
            }
        }
    });

    let cand = best
        .into_inner()
        .unwrap()
        .expect("the optimal coset always completes");
    Ok(ExpansionResult {
        value: Ratio::new(cand.num as u64, cand.den as u64),
        witness: Cochain::new(k, BitVec::from_words(cand.witness, f)),
        numerator_norm: cand.num,
        denominator_norm: cand.den,
        budget_used,
    })
}

fn read_ratio(best: &Mutex<Option<Candidate>>) -> Option<(u128, u128)> {
    best.lock()
        .unwrap()
        .as_ref()
        .map(|c| (c.num as u128, c.den as u128))
}

fn read_radius(best: &Mutex<Option<(usize, Vec<u64>)>>) -> usize {
    best.lock().unwrap().as_ref().map_or(0, |(lam, _)| *lam)
}

fn check_level(ops: &PairOperators, k: usize) -> Result<(), ExpansionError> {
    if k >= ops.levels() {
        return Err(ExpansionError::DimensionOutOfRange {
            dim: k,
            levels: ops.levels(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{hypercube, simplex_skeleton, simplicial_complex};
    use crate::expansion::cosystolic_norm;
    use crate::gf2::in_row_space;
    use crate::DEFAULT_BUDGET;

    fn cycle_graph(n: u32) -> crate::complexes::ComplexZ2 {
        let edges: Vec<Vec<u32>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        simplicial_complex(format!("c{n}"), &edges).unwrap()
    }

    #[test]
    fn cheeger_of_the_eight_cycle() {
        let x = cycle_graph(8);
        let ops = PairOperators::absolute(&x);
        let res = cheeger_co(&ops, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(res.value, Ratio::new(1, 2), "arc of half the cycle, cut 2");
        assert_eq!(res.numerator_norm, 2);
        assert_eq!(res.denominator_norm, 4);
        assert_eq!(res.witness.weight(), 4);
        // Homological degree 0: the only nonzero coset is the odd-weight
        // class, whose augmentation boundary is 1 and lightest member is a
        // vertex.
        let res = cheeger_ho(&ops, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(res.value, Ratio::new(1, 1));
        assert_eq!(res.denominator_norm, 1);
    }

    #[test]
    fn square_complex_has_unit_expansion() {
        let q2 = hypercube(2).unwrap();
        let ops = PairOperators::absolute(&q2);
        for k in 0..2 {
            assert_eq!(cheeger_co(&ops, k, DEFAULT_BUDGET).unwrap().value, Ratio::new(1, 1));
            assert_eq!(cheeger_ho(&ops, k, DEFAULT_BUDGET).unwrap().value, Ratio::new(1, 1));
        }
    }

    #[test]
    fn disconnected_graph_has_zero_expansion_with_cocycle_witness() {
        let x = simplicial_complex("two_edges", &[vec![0, 1], vec![2, 3]]).unwrap();
        let ops = PairOperators::absolute(&x);
        let co = cheeger_co(&ops, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(co.value, Ratio::new(0, 1));
        assert_eq!(co.numerator_norm, 0);
        assert!(ops.coboundary(&co.witness).bits().is_zero());
        assert!(!in_row_space(ops.coboundary_space(0), co.witness.bits()));
        let ho = cheeger_ho(&ops, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(ho.value, Ratio::new(0, 1));
    }

    #[test]
    fn covering_radius_of_the_full_tetrahedron_edge_space() {
        let x = simplex_skeleton(4, 3).unwrap();
        let ops = PairOperators::absolute(&x);
        let res = max_cosystole(&ops, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(res.lambda, 2, "cut space of K4 has covering radius 2");
        let (csy, _) = cosystolic_norm(&ops, &res.witness, DEFAULT_BUDGET).unwrap();
        assert_eq!(csy, 2, "witness realizes the radius");
        assert_eq!(res.witness.weight(), 2, "witness is a cosystolic form");
    }

    #[test]
    fn covering_radius_of_a_single_edge_graph() {
        let x = simplicial_complex("edge", &[vec![0, 1]]).unwrap();
        let ops = PairOperators::absolute(&x);
        // Cosets of the all-ones line in GF(2)^2: {00,11} and {01,10};
        // both have minimum weight at most 1.
        let res = max_cosystole(&ops, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(res.lambda, 1);
    }

    #[test]
    fn degenerate_space_is_reported() {
        let x = simplicial_complex("pt", &[vec![0]]).unwrap();
        let ops = PairOperators::absolute(&x);
        assert_eq!(
            cheeger_co(&ops, 0, DEFAULT_BUDGET).unwrap_err(),
            ExpansionError::DegenerateSpace { dim: 0 },
        );
    }

    #[test]
    fn budget_is_enforced() {
        let x = cycle_graph(8);
        let ops = PairOperators::absolute(&x);
        // Degree 0 needs 2^7 coset representatives.
        let err = cheeger_co(&ops, 0, 16).unwrap_err();
        assert_eq!(
            err,
            ExpansionError::BudgetExceeded { needed: 128, budget: 16 },
        );
    }

    #[test]
    fn dimension_out_of_range_is_reported() {
        let x = cycle_graph(5);
        let ops = PairOperators::absolute(&x);
        assert_eq!(
            cheeger_co(&ops, 2, DEFAULT_BUDGET).unwrap_err(),
            ExpansionError::DimensionOutOfRange { dim: 2, levels: 2 },
        );
    }

    /// Direct oracle: minimize over every cochain outside the coboundary
    /// space, with coset minima recomputed by plain subset sums.
    #[test]
    fn sweep_matches_exhaustive_oracle_on_small_skeleton() {
        let x = simplex_skeleton(5, 2).unwrap();
        let ops = PairOperators::absolute(&x);
        let f1 = ops.n_free(1);
        let span = row_reduce(ops.coboundary_space(1));
        let basis = &span.rows;
        let mut best: Option<(usize, usize)> = None;
        for code in 1u32..1 << f1 {
            let phi = BitVec::from_indices(
                f1,
                &(0..f1).filter(|&i| code >> i & 1 == 1).collect::<Vec<_>>(),
            );
            if in_row_space(ops.coboundary_space(1), &phi) {
                continue;
            }
            let num = ops.coboundary_matrix(1).apply(&phi).weight();
            let mut den = phi.weight();
            for sel in 1u32..1 << basis.len() {
                let mut v = phi.clone();
                for (j, row) in basis.iter().enumerate() {
                    if sel >> j & 1 == 1 {
                        v.xor_assign(row);
                    }
                }
                den = den.min(v.weight());
            }
            let improves = match best {
                None => true,
                Some((p, q)) => num * q < p * den,
            };
            if improves {
                best = Some((num, den));
            }
        }
        let (p, q) = best.unwrap();
        let res = cheeger_co(&ops, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(res.value, Ratio::new(p as u64, q as u64));
    }

    #[test]
    fn results_are_identical_across_thread_counts() {
        let x = simplex_skeleton(5, 2).unwrap();
        let run = || {
            let ops = PairOperators::absolute(&x);
            (
                cheeger_co(&ops, 1, DEFAULT_BUDGET).unwrap(),
                max_cosystole(&ops, 1, DEFAULT_BUDGET).unwrap(),
            )
        };
        let solo = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(run);
        let wide = rayon::ThreadPoolBuilder::new()
            .num_threads(8)
            .build()
            .unwrap()
            .install(run);
        assert_eq!(solo, wide);
    }
}
