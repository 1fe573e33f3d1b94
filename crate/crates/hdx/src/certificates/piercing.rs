//! Exact piercing numbers of finite set families.
//!
//! The piercing number of a family is the least number of elements needed to
//! meet every member.  It is computed by branch and bound: branch on the
//! smallest unhit set, prune with a greedy upper bound and a disjoint-set
//! packing lower bound, and cap the explored node count so pathological
//! inputs fail loudly instead of hanging.

use super::CertificateError;
use crate::gf2::BitVec;
use std::collections::BTreeSet;

/// Hard cap on branch-and-bound nodes before giving up.
pub const PIERCING_NODE_BUDGET: u64 = 1 << 24;

/// Computes the piercing number of `family` together with a minimum hitting
/// set realising it.
///
/// Members are sets of arbitrary element ids; duplicates inside a member are
/// ignored.  The empty family has piercing number zero.  A family containing
/// an empty member cannot be pierced and is rejected.  The search is exact
/// and deterministic; it fails with [`CertificateError::BudgetExceeded`] if
/// more than [`PIERCING_NODE_BUDGET`] nodes are explored.
pub fn piercing_number(family: &[Vec<usize>]) -> Result<(usize, Vec<usize>), CertificateError> {
    if family.is_empty() {
        return Ok((0, Vec::new()));
    }
    if family.iter().any(|set| set.is_empty()) {
        return Err(CertificateError::InvalidScheme(
            "a family with an empty member cannot be pierced".into(),
        ));
    }

    // Compact the element universe, keeping ids sorted so that the search
    // order (and hence the witness) is deterministic.
    let universe: Vec<usize> = family
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let elem_index = |e: usize| universe.binary_search(&e).expect("element in universe");

    let n_sets = family.len();
    let n_elems = universe.len();

    // For each element, the set of family members containing it.
    let mut member_mask: Vec<BitVec> = vec![BitVec::zeros(n_sets); n_elems];
    let mut sets: Vec<Vec<usize>> = Vec::with_capacity(n_sets);
    for (si, set) in family.iter().enumerate() {
        let compact: BTreeSet<usize> = set.iter().map(|&e| elem_index(e)).collect();
        for &e in &compact {
            member_mask[e].set(si);
        }
        sets.push(compact.into_iter().collect());
    }

    // Drop dominated elements: if every member containing `a` also contains
    // `b`, any hitting set using `a` can use `b` instead.  Among elements
    // hitting identical members only the smallest id is kept.
    let mut dominated = vec![false; n_elems];
    for a in 0..n_elems {
        for b in 0..n_elems {
            if a == b || dominated[b] {
                continue;
            }
            if subset(&member_mask[a], &member_mask[b])
                && (member_mask[a] != member_mask[b] || b < a)
            {
                dominated[a] = true;
                break;
            }
        }
    }
    for set in &mut sets {
        set.retain(|&e| !dominated[e]);
        debug_assert!(!set.is_empty(), "domination kept at least one element per set");
    }

    let search = Search {
        sets: &sets,
        member_mask: &member_mask,
        n_sets,
        nodes: 0,
        best: greedy_cover(&member_mask, n_sets),
    };
    let (best, explored) = search.run()?;
    let witness: Vec<usize> = best.iter().map(|&e| universe[e]).collect();
    debug_assert!(explored <= PIERCING_NODE_BUDGET);
    Ok((witness.len(), witness))
}

/// Whether the support of `a` is contained in the support of `b`.
fn subset(a: &BitVec, b: &BitVec) -> bool {
    a.words().iter().zip(b.words()).all(|(&wa, &wb)| wa & !wb == 0)
}

/// Removes from `v` every index set in `mask`.
fn strike(v: &mut BitVec, mask: &BitVec) {
    for i in mask.ones() {
        v.clear(i);
    }
}

fn all_ones(len: usize) -> BitVec {
    let mut v = BitVec::zeros(len);
    for i in 0..len {
        v.set(i);
    }
    v
}

/// Greedy cover: repeatedly take the element hitting the most unhit sets.
/// Used as the initial incumbent for branch and bound.
fn greedy_cover(member_mask: &[BitVec], n_sets: usize) -> Vec<usize> {
    let mut unhit = all_ones(n_sets);
    let mut picks = Vec::new();
    while !unhit.is_zero() {
        let mut best_elem = usize::MAX;
        let mut best_gain = 0usize;
        for (e, mask) in member_mask.iter().enumerate() {
            let gain = mask
                .words()
                .iter()
                .zip(unhit.words())
                .map(|(&m, &u)| (m & u).count_ones() as usize)
                .sum();
            if gain > best_gain {
                best_gain = gain;
                best_elem = e;
            }
        }
        debug_assert!(best_gain > 0);
        strike(&mut unhit, &member_mask[best_elem]);
        picks.push(best_elem);
    }
    picks
}

struct Search<'a> {
    sets: &'a [Vec<usize>],
    member_mask: &'a [BitVec],
    n_sets: usize,
    nodes: u64,
    best: Vec<usize>,
}

impl Search<'_> {
    fn run(mut self) -> Result<(Vec<usize>, u64), CertificateError> {
        let unhit = all_ones(self.n_sets);
        let mut picks = Vec::new();
        self.recurse(&unhit, &mut picks)?;
        Ok((self.best, self.nodes))
    }

    fn recurse(&mut self, unhit: &BitVec, picks: &mut Vec<usize>) -> Result<(), CertificateError> {
        self.nodes += 1;
        if self.nodes > PIERCING_NODE_BUDGET {
            return Err(CertificateError::BudgetExceeded {
                explored: self.nodes,
                budget: PIERCING_NODE_BUDGET,
            });
        }
        if unhit.is_zero() {
            if picks.len() < self.best.len() {
                self.best = picks.clone();
            }
            return Ok(());
        }
        if picks.len() + self.packing_lower_bound(unhit) >= self.best.len() {
            return Ok(());
        }
        // Branch on the smallest unhit set; every hitting set must use one
        // of its elements.
        let branch = (0..self.n_sets)
            .filter(|&i| unhit.get(i))
            .min_by_key(|&i| (self.sets[i].len(), i))
            .expect("an unhit set exists");
        for &e in &self.sets[branch] {
            let mut next = unhit.clone();
            strike(&mut next, &self.member_mask[e]);
            picks.push(e);
            self.recurse(&next, picks)?;
            picks.pop();
        }
        Ok(())
    }

    /// Number of pairwise disjoint unhit sets, found greedily in index
    /// order.  Each needs its own piercing element, so this many more picks
    /// are unavoidable.
    fn packing_lower_bound(&self, unhit: &BitVec) -> usize {
        let mut used = BitVec::zeros(self.member_mask.len());
        let mut count = 0;
        for i in 0..self.n_sets {
            if !unhit.get(i) {
                continue;
            }
            if self.sets[i].iter().all(|&e| !used.get(e)) {
                for &e in &self.sets[i] {
                    used.set(e);
                }
                count += 1;
            }
        }
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_disjoint_singletons_need_two_piercers() {
        let (tau, witness) = piercing_number(&[vec![1], vec![2]]).unwrap();
        assert_eq!(tau, 2);
        assert_eq!(witness, vec![1, 2]);
    }

    #[test]
    fn overlapping_pair_pierced_by_common_element() {
        let (tau, witness) = piercing_number(&[vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(tau, 1);
        assert_eq!(witness, vec![2]);
    }

    #[test]
    fn disjoint_family_needs_one_per_member() {
        let family: Vec<Vec<usize>> = (0..6).map(|i| vec![3 * i, 3 * i + 1, 3 * i + 2]).collect();
        let (tau, witness) = piercing_number(&family).unwrap();
        assert_eq!(tau, 6);
        assert_eq!(witness.len(), 6);
        for (i, member) in family.iter().enumerate() {
            assert!(member.contains(&witness[i]));
        }
    }

    #[test]
    fn empty_family_is_trivially_pierced() {
        assert_eq!(piercing_number(&[]).unwrap(), (0, vec![]));
    }

    #[test]
    fn empty_member_is_rejected() {
        assert!(matches!(
            piercing_number(&[vec![1], vec![]]),
            Err(CertificateError::InvalidScheme(_))
        ));
    }

    #[test]
    fn sunflower_with_shared_core_is_pierced_once() {
        // Five sets all containing 0, with distinct petals.
        let family: Vec<Vec<usize>> = (1..=5).map(|i| vec![0, i]).collect();
        assert_eq!(piercing_number(&family).unwrap(), (1, vec![0]));
    }

    #[test]
    fn brute_force_agreement_on_random_families() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x9e3779b97f4a7c15);
        for _ in 0..40 {
            let n_sets = rng.random_range(1..=6);
            let family: Vec<Vec<usize>> = (0..n_sets)
                .map(|_| {
                    let size = rng.random_range(1..=4);
                    (0..size).map(|_| rng.random_range(0..8)).collect()
                })
                .collect();
            let (tau, witness) = piercing_number(&family).unwrap();
            // Witness really pierces.
            for member in &family {
                assert!(member.iter().any(|e| witness.contains(e)));
            }
            // No smaller subset of {0..8} pierces.
            let exact = (0..=8u32)
                .find(|&k| {
                    subsets_of_size(8, k as usize)
                        .into_iter()
                        .any(|s| family.iter().all(|m| m.iter().any(|e| s.contains(e))))
                })
                .unwrap();
            assert_eq!(tau as u32, exact);
        }
    }

    fn subsets_of_size(universe: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << universe) {
            if mask.count_ones() as usize == k {
                out.push((0..universe).filter(|&i| mask >> i & 1 == 1).collect());
            }
        }
        out
    }
}
