//! Random-complex experiments: the vanishing threshold for degree-one
//! cohomology with field coefficients, and the search for bounded-index
//! quotients of random fundamental groups through an inventory of small
//! simple coefficient groups.

use super::{h1_orbits, sorted_triples, FiniteGroup, Host, NonAbError, HOST_VERTEX_CAP};
use crate::gf2::{row_reduce, BitVec, GF2Matrix};
use crate::paley::mod_pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const TRIAL_MIX: u64 = 0x9E37_79B9_7F4A_7C15;
const SLOT_MIX: u64 = 0xA076_1D64_78BD_642F;

fn edge_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// Dimension of degree-one cohomology with prime-field coefficients for
/// the complex with complete 1-skeleton on `n` vertices and the given
/// triangles: the cycle rank of the complete graph minus the rank of the
/// triangle boundary rows over the field with `q` elements.
pub(crate) fn h1_dim_mod_prime(n: usize, triangles: &[[u32; 3]], q: u64) -> usize {
    let cols = n * (n - 1) / 2;
    let cycle_rank = cols - (n - 1);
    // Reduced rows with their pivot columns, eliminated as they arrive.
    let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
    for &[u, v, w] in triangles {
        let (u, v, w) = (u as usize, v as usize, w as usize);
        let mut row = vec![0u64; cols];
        row[edge_index(n, u, v)] = 1;
        row[edge_index(n, v, w)] = 1;
        row[edge_index(n, u, w)] = q - 1;
        for (p, basis) in &pivots {
            let factor = row[*p];
            if factor != 0 {
                for (r, b) in row.iter_mut().zip(basis) {
                    *r = (*r + (q - factor) * b) % q;
                }
            }
        }
        if let Some(p) = row.iter().position(|&x| x != 0) {
            let inv = mod_pow(row[p], q - 2, q);
            for r in &mut row {
                *r = *r * inv % q;
            }
            pivots.push((p, row));
        }
    }
    cycle_rank - pivots.len()
}

/// For each probability, the fraction of random 2-complexes (complete
/// 1-skeleton on `n` vertices, each triangle kept independently) whose
/// degree-one cohomology with two-element coefficients vanishes.  Trials
/// use independent generators derived from `(seed, probability index,
/// trial index)`, so results do not depend on thread count.
pub fn homology_threshold_sweep(
    n: usize,
    trials: u64,
    seed: u64,
    ps: &[f64],
) -> Result<Vec<(f64, f64)>, NonAbError> {
    if !(3..=HOST_VERTEX_CAP).contains(&n) {
        return Err(NonAbError::InvalidHost(format!(
            "vertex count must be in 3..={HOST_VERTEX_CAP}; got {n}"
        )));
    }
    if trials == 0 {
        return Err(NonAbError::InvalidParameter(
            "at least one trial is required".into(),
        ));
    }
    for &p in ps {
        if !(0.0..=1.0).contains(&p) {
            return Err(NonAbError::InvalidParameter(format!(
                "probability {p} is not in [0, 1]"
            )));
        }
    }
    let cols = n * (n - 1) / 2;
    let cycle_rank = cols - (n - 1);
    let triples = sorted_triples(n);
    Ok(ps
        .iter()
        .enumerate()
        .map(|(pi, &p)| {
            let vanished: u64 = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let stream = seed
                        ^ (pi as u64).wrapping_mul(SLOT_MIX)
                        ^ t.wrapping_mul(TRIAL_MIX);
                    let mut rng = ChaCha8Rng::seed_from_u64(stream);
                    let mut m = GF2Matrix::new(cols);
                    for &[u, v, w] in &triples {
                        if rng.random::<f64>() < p {
                            let mut row = BitVec::zeros(cols);
                            row.set(edge_index(n, u as usize, v as usize));
                            row.set(edge_index(n, v as usize, w as usize));
                            row.set(edge_index(n, u as usize, w as usize));
                            m.push_row(row);
                        }
                    }
                    u64::from(row_reduce(&m).rank() == cycle_rank)
                })
                .sum();
            (p, vanished as f64 / trials as f64)
        })
        .collect())
}

/// Every simple group of order at most `max_order` drawn from a fixed
/// inventory: cyclic groups of prime order up to 61, the alternating group
/// on five letters, and the simple group of order 168; sorted by order.
#[must_use]
pub fn simple_group_inventory(max_order: u64) -> Vec<FiniteGroup> {
    const PRIMES: [usize; 18] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61];
    let mut out: Vec<FiniteGroup> = PRIMES
        .iter()
        .filter(|&&p| p as u64 <= max_order)
        .map(|&p| FiniteGroup::cyclic(p).expect("small prime order"))
        .collect();
    if max_order >= 60 {
        out.push(FiniteGroup::alternating_5());
    }
    if max_order >= 168 {
        out.push(FiniteGroup::psl_2_7());
    }
    out.sort_by_key(FiniteGroup::order);
    out
}

/// Per-group tallies across the trials of a quotient experiment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupOutcome {
    /// Group name.
    pub group: String,
    /// Trials in which cohomology with these coefficients was nontrivial.
    pub nontrivial: u64,
    /// Trials in which the enumeration was skipped for exceeding the budget.
    pub skipped: u64,
}

/// Outcome of a bounded-quotient experiment on random 2-complexes.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientReport {
    pub n: usize,
    pub c: f64,
    /// Triangle probability `min(1, (6 + 7c) ln(n) / n)`.
    pub p: f64,
    pub trials: u64,
    pub groups: Vec<GroupOutcome>,
    /// Trials in which at least one group detected nontrivial cohomology.
    pub any_nontrivial: u64,
    /// Trials with no detection but at least one skipped group, so the
    /// absence of a bounded quotient could not be certified.
    pub undecided_trials: u64,
}

impl QuotientReport {
    /// One line per group: `n,p,group,trials,fraction_nontrivial,skipped`.
    #[must_use]
    pub fn csv(&self) -> String {
        let mut out = String::from("n,p,group,trials,fraction_nontrivial,skipped\n");
        for g in &self.groups {
            out.push_str(&format!(
                "{},{:.6},{},{},{:.6},{}\n",
                self.n,
                self.p,
                g.group,
                self.trials,
                g.nontrivial as f64 / self.trials as f64,
                g.skipped
            ));
        }
        out
    }
}

struct Tally {
    nontrivial: Vec<u64>,
    skipped: Vec<u64>,
    any: u64,
    undecided: u64,
}

impl Tally {
    fn zero(len: usize) -> Self {
        Tally {
            nontrivial: vec![0; len],
            skipped: vec![0; len],
            any: 0,
            undecided: 0,
        }
    }

    fn add(mut self, other: Tally) -> Self {
        for (a, b) in self.nontrivial.iter_mut().zip(&other.nontrivial) {
            *a += b;
        }
        for (a, b) in self.skipped.iter_mut().zip(&other.skipped) {
            *a += b;
        }
        self.any += other.any;
        self.undecided += other.undecided;
        self
    }
}

/// Searches random 2-complexes for bounded-index quotients of the
/// fundamental group.  With triangle probability `min(1, (6 + 7c) ln(n) /
/// n)`, a quotient of index at most `n^c` exists exactly when some simple
/// group of order at most `n^c` carries nontrivial degree-one cohomology.
/// Prime-order coefficients are decided by rank; non-abelian ones by orbit
/// enumeration under the given budget, with overruns tallied as skips
/// rather than decisions.
pub fn quotient_experiment(
    n: usize,
    c: f64,
    trials: u64,
    seed: u64,
    budget: u64,
) -> Result<QuotientReport, NonAbError> {
    if !(3..=HOST_VERTEX_CAP).contains(&n) {
        return Err(NonAbError::InvalidHost(format!(
            "vertex count must be in 3..={HOST_VERTEX_CAP}; got {n}"
        )));
    }
    if trials == 0 {
        return Err(NonAbError::InvalidParameter(
            "at least one trial is required".into(),
        ));
    }
    if !c.is_finite() || c <= 0.0 {
        return Err(NonAbError::InvalidParameter(format!(
            "the index exponent must be positive and finite; got {c}"
        )));
    }
    let p = ((6.0 + 7.0 * c) * (n as f64).ln() / n as f64).min(1.0);
    let cap_f = (n as f64).powf(c);
    let cap = if cap_f >= u64::MAX as f64 {
        u64::MAX
    } else {
        cap_f as u64
    };
    let inventory = simple_group_inventory(cap);
    let triples = sorted_triples(n);
    let total = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ t.wrapping_mul(TRIAL_MIX));
            let triangles: Vec<[u32; 3]> = triples
                .iter()
                .filter(|_| rng.random::<f64>() < p)
                .copied()
                .collect();
            let host = Host::with_triangles(n, &triangles).expect("sorted triangles");
            let mut tally = Tally::zero(inventory.len());
            let mut any = false;
            let mut skipped_any = false;
            for (gi, g) in inventory.iter().enumerate() {
                if g.is_abelian() {
                    // Prime-order coefficients: nontrivial exactly when the
                    // cohomology dimension over that prime field is positive.
                    if h1_dim_mod_prime(n, &triangles, g.order() as u64) > 0 {
                        tally.nontrivial[gi] = 1;
                        any = true;
                    }
                } else {
                    match h1_orbits(&host, g, budget) {
                        Ok(orbits) => {
                            if orbits.count > 1 {
                                tally.nontrivial[gi] = 1;
                                any = true;
                            }
                        }
                        Err(NonAbError::BudgetExceeded { .. }) => {
                            tally.skipped[gi] = 1;
                            skipped_any = true;
                        }
                        Err(e) => unreachable!("host is connected by construction: {e}"),
                    }
                }
            }
            tally.any = u64::from(any);
            tally.undecided = u64::from(!any && skipped_any);
            tally
        })
        .reduce(|| Tally::zero(inventory.len()), Tally::add);
    let groups = inventory
        .iter()
        .zip(total.nontrivial)
        .zip(total.skipped)
        .map(|((g, nontrivial), skipped)| GroupOutcome {
            group: g.name().to_string(),
            nontrivial,
            skipped,
        })
        .collect();
    Ok(QuotientReport {
        n,
        c,
        p,
        trials,
        groups,
        any_nontrivial: total.any,
        undecided_trials: total.undecided,
    })
}
