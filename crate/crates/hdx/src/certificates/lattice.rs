//! Filling schemes on geometric lattices from atom orderings.
//!
//! For a geometric lattice of rank `n`, every proper-part cell has a
//! canonical filling built from sums over permutations of selected atoms:
//! to a cell `[v_0 < ... < v_k]` and an atom ordering, associate the chain
//! summing flag simplices of prefix joins of the selected atoms, glued to
//! the cell's tail.  These fillings satisfy the filling identity and have
//! factorially bounded support, which turns transitivity of the
//! automorphism group on top cells into an explicit expansion bound in
//! codimension three: `f_{n-2} / (f_{n-3} * sum_{j=1}^{n-1} j!)`.

use super::{CertificateError, HomotopyScheme};
use crate::complexes::{order_complex, CellLabel, ComplexZ2, Poset};
use crate::expansion::{Cochain, PairOperators};
use crate::gf2::BitVec;
use num_rational::Ratio;
use std::collections::{HashSet, VecDeque};

/// A geometric lattice with a family of atom orderings, ready to produce
/// validated filling chains on the proper-part order complex.
pub struct LatticeScheme {
    lattice: Poset,
    rank: usize,
    orderings: Vec<Vec<usize>>,
    complex: ComplexZ2,
    ops: PairOperators,
    /// Complex vertex index of each lattice element (`usize::MAX` for the
    /// two bounds, which the proper part removes).
    vertex_of: Vec<usize>,
}

impl LatticeScheme {
    /// Validates the lattice and orderings and builds the proper-part order
    /// complex.
    ///
    /// The lattice must be bounded, graded of rank at least 3, semimodular
    /// and atomistic; each ordering must be a permutation of the atoms,
    /// listed in increasing order.
    pub fn new(lattice: Poset, orderings: Vec<Vec<usize>>) -> Result<Self, CertificateError> {
        let (_, top, rank) = validate_geometric(&lattice)?;
        if rank < 3 {
            return Err(CertificateError::InvalidScheme(format!(
                "rank {rank} lattice has no codimension-three cells to fill"
            )));
        }
        let atoms = lattice.atoms();
        if orderings.is_empty() {
            return Err(CertificateError::InvalidScheme(
                "at least one atom ordering is required".into(),
            ));
        }
        for ord in &orderings {
            let mut sorted = ord.clone();
            sorted.sort_unstable();
            if sorted != atoms {
                return Err(CertificateError::InvalidScheme(
                    "each ordering must permute the atoms".into(),
                ));
            }
        }
        let proper = lattice
            .proper_part()
            .map_err(|e| CertificateError::InvalidScheme(e.to_string()))?;
        let complex = order_complex(&proper)
            .map_err(|e| CertificateError::InvalidScheme(e.to_string()))?;
        debug_assert_eq!(complex.n_levels(), rank - 1);
        let ops = PairOperators::absolute(&complex);
        let mut vertex_of = vec![usize::MAX; lattice.len()];
        for v in 0..complex.n_cells(0) {
            let CellLabel::Chain(names) = complex.label(0, v) else {
                unreachable!("order complexes label cells by chains")
            };
            let elem = lattice
                .index_by_name(&names[0])
                .expect("proper-part names come from the lattice");
            vertex_of[elem] = v;
        }
        debug_assert_eq!(vertex_of[top], usize::MAX);
        Ok(LatticeScheme {
            lattice,
            rank,
            orderings,
            complex,
            ops,
            vertex_of,
        })
    }

    /// The proper-part order complex the fillings live on.
    #[must_use]
    pub fn complex(&self) -> &ComplexZ2 {
        &self.complex
    }

    /// Boundary operators of the order complex.
    #[must_use]
    pub fn operators(&self) -> &PairOperators {
        &self.ops
    }

    /// Rank of the lattice.
    #[must_use]
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of atom orderings.
    #[must_use]
    pub fn samples(&self) -> usize {
        self.orderings.len()
    }

    /// The filling (k+1)-chain of the k-cell `cell` under ordering `s`.
    ///
    /// Valid for `0 <= k <= rank - 3`.  The support size never exceeds
    /// `sum_{j=1}^{k+2} j!`.
    pub fn chain(&self, s: usize, k: usize, cell: usize) -> Result<Cochain, CertificateError> {
        if k + 3 > self.rank {
            return Err(CertificateError::RankOutOfRange {
                got: k,
                limit: self.rank - 3,
            });
        }
        assert!(s < self.orderings.len(), "ordering index out of range");
        assert!(cell < self.complex.n_cells(k), "cell index out of range");
        let CellLabel::Chain(names) = self.complex.label(k, cell) else {
            unreachable!("order complexes label cells by chains")
        };
        let v: Vec<usize> = names
            .iter()
            .map(|n| self.lattice.index_by_name(n).expect("cell names are lattice elements"))
            .collect();
        let ordering = &self.orderings[s];
        // Selected atoms: for each chain element its earliest atom below,
        // plus the globally earliest atom.
        let mut selected: Vec<usize> = v
            .iter()
            .map(|&vi| {
                *ordering
                    .iter()
                    .find(|&&a| self.lattice.leq(a, vi))
                    .expect("every proper element dominates an atom")
            })
            .collect();
        selected.push(ordering[0]);

        let mut bits = BitVec::zeros(self.complex.n_cells(k + 1));
        for j in 0..=k + 1 {
            self.accumulate_flags(&selected[..=j], &v[j..], &mut bits);
        }
        Ok(Cochain::new(k + 1, bits))
    }

    /// The filling of the augmentation cell: the single earliest atom of
    /// ordering `s`, as a vertex chain.
    #[must_use]
    pub fn augmentation_chain(&self, s: usize) -> Cochain {
        let atom = self.orderings[s][0];
        Cochain::from_support(&self.ops, 0, &[self.vertex_of[atom]])
    }

    /// The complete validated filling scheme in dimension `k`, uniformly
    /// weighted over the orderings.  Validation re-checks every filling
    /// identity on the order complex.
    pub fn scheme(&self, k: usize) -> Result<HomotopyScheme, CertificateError> {
        if k + 3 > self.rank {
            return Err(CertificateError::RankOutOfRange {
                got: k,
                limit: self.rank - 3,
            });
        }
        let samples = self.orderings.len();
        let mut tops = Vec::with_capacity(samples);
        let mut lows = Vec::with_capacity(samples);
        for s in 0..samples {
            let top: Result<Vec<Cochain>, _> = (0..self.complex.n_cells(k))
                .map(|c| self.chain(s, k, c))
                .collect();
            let low: Result<Vec<Cochain>, _> = if k == 0 {
                Ok(vec![self.augmentation_chain(s)])
            } else {
                (0..self.complex.n_cells(k - 1))
                    .map(|c| self.chain(s, k - 1, c))
                    .collect()
            };
            tops.push(top?);
            lows.push(low?);
        }
        HomotopyScheme::uniform(&self.complex, k, tops, lows)
    }

    /// Sum over permutations of `args` of the flag of prefix joins, glued
    /// to `tail`, toggled into `bits` (so duplicate flags cancel over
    /// GF(2)).  Degenerate flags (a repeated prefix join, or a flag top
    /// colliding with the tail) contribute nothing.
    fn accumulate_flags(&self, args: &[usize], tail: &[usize], bits: &mut BitVec) {
        let dim = args.len() + tail.len() - 1;
        let mut perm: Vec<usize> = (0..args.len()).collect();
        let mut flag: Vec<usize> = Vec::with_capacity(dim + 1);
        permute(&mut perm, 0, &mut |p| {
            flag.clear();
            let mut e = args[p[0]];
            flag.push(e);
            for &pi in &p[1..] {
                let next = self
                    .lattice
                    .join(e, args[pi])
                    .expect("joins exist in a validated lattice");
                if next == e {
                    return; // repeated prefix join: degenerate flag
                }
                e = next;
                flag.push(e);
            }
            if let Some(&first_tail) = tail.first() {
                if e == first_tail {
                    return; // flag top equals the glued cell: degenerate
                }
                debug_assert!(self.lattice.lt(e, first_tail));
            }
            flag.extend_from_slice(tail);
            let label = CellLabel::Chain(
                flag.iter().map(|&x| self.lattice.element_name(x).to_string()).collect(),
            );
            let idx = self
                .complex
                .index_of(dim, &label)
                .expect("every proper chain is a cell of the order complex");
            bits.flip(idx);
        });
    }

    /// The permutation-sum chain on `args` alone (no tail); used by tests
    /// of the boundary telescoping identity.
    #[cfg(test)]
    fn k_chain(&self, args: &[usize]) -> Cochain {
        assert!(args.len() < self.rank, "flag joins would escape the proper part");
        let dim = args.len() - 1;
        let mut bits = BitVec::zeros(self.complex.n_cells(dim));
        self.accumulate_flags(args, &[], &mut bits);
        Cochain::new(dim, bits)
    }
}

/// Runs `visit` on every permutation of `idx[start..]`, in a fixed
/// deterministic order.
fn permute(idx: &mut [usize], start: usize, visit: &mut impl FnMut(&[usize])) {
    if start == idx.len() {
        visit(idx);
        return;
    }
    for i in start..idx.len() {
        idx.swap(start, i);
        permute(idx, start + 1, visit);
        idx.swap(start, i);
    }
}

/// Checks that the poset is a bounded, graded, semimodular, atomistic
/// lattice; returns (bottom, top, rank).
fn validate_geometric(l: &Poset) -> Result<(usize, usize, usize), CertificateError> {
    let (bottom, top) = l
        .bounds()
        .ok_or_else(|| CertificateError::InvalidScheme("the poset is not bounded".into()))?;
    let ranks = l
        .rank()
        .ok_or_else(|| CertificateError::InvalidScheme("the poset is not graded".into()))?;
    let rank = ranks[top] as usize;
    let atoms = l.atoms();
    for a in 0..l.len() {
        for b in 0..a {
            let join = l.join(a, b).ok_or_else(|| {
                CertificateError::InvalidScheme("two elements lack a unique join".into())
            })?;
            let meet = l.meet(a, b).ok_or_else(|| {
                CertificateError::InvalidScheme("two elements lack a unique meet".into())
            })?;
            if ranks[a] + ranks[b] < ranks[join] + ranks[meet] {
                return Err(CertificateError::InvalidScheme(
                    "the lattice is not semimodular".into(),
                ));
            }
        }
    }
    for x in 0..l.len() {
        if x == bottom {
            continue;
        }
        let rejoin = atoms
            .iter()
            .filter(|&&a| l.leq(a, x))
            .try_fold(bottom, |acc, &a| l.join(acc, a));
        if rejoin != Some(x) {
            return Err(CertificateError::InvalidScheme(
                "the lattice is not atomistic".into(),
            ));
        }
    }
    Ok((bottom, top, rank))
}

/// Checks that `perm` is an automorphism: a bijection on elements mapping
/// covers to covers.
fn validate_automorphism(l: &Poset, perm: &[usize]) -> Result<(), CertificateError> {
    let n = l.len();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
        return Err(CertificateError::InvalidScheme(
            "an automorphism must be a permutation of the elements".into(),
        ));
    }
    let covers: HashSet<(u32, u32)> = l.covers().iter().copied().collect();
    for &(a, b) in l.covers() {
        let image = (perm[a as usize] as u32, perm[b as usize] as u32);
        if !covers.contains(&image) {
            return Err(CertificateError::InvalidScheme(
                "the permutation does not map covers to covers".into(),
            ));
        }
    }
    Ok(())
}

/// Atom orderings induced by automorphisms: an automorphism `s` pushes a
/// fixed base order forward, ranking atom `a` by the position of its
/// preimage.  Repeated orderings are kept, preserving group multiplicity.
pub fn orderings_from_automorphisms(
    l: &Poset,
    automorphisms: &[Vec<usize>],
) -> Result<Vec<Vec<usize>>, CertificateError> {
    let atoms = l.atoms();
    automorphisms
        .iter()
        .map(|perm| {
            validate_automorphism(l, perm)?;
            Ok(atoms.iter().map(|&a| perm[a]).collect())
        })
        .collect()
}

/// Closes a generator list under composition, up to `cap` permutations.
/// Returns the full group sorted lexicographically (identity included).
pub fn group_closure(
    generators: &[Vec<usize>],
    cap: usize,
) -> Result<Vec<Vec<usize>>, CertificateError> {
    let Some(first) = generators.first() else {
        return Err(CertificateError::InvalidScheme(
            "group closure needs at least one generator".into(),
        ));
    };
    let n = first.len();
    let identity: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            assert_eq!(g.len(), n, "generators act on the same set");
            let composed: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(composed.clone()) {
                if seen.len() > cap {
                    return Err(CertificateError::InvalidScheme(format!(
                        "group closure exceeded the cap of {cap}"
                    )));
                }
                queue.push_back(composed);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// The codimension-three expansion bound of a homogeneous geometric
/// lattice: `f_{n-2} / (f_{n-3} * sum_{j=1}^{n-1} j!)` over the proper
/// part.  Transitivity on top cells is verified by closing the orbit of
/// one top cell under the supplied automorphisms.
pub fn lattice_bound(
    l: &Poset,
    automorphisms: &[Vec<usize>],
) -> Result<Ratio<u64>, CertificateError> {
    let (_, _, rank) = validate_geometric(l)?;
    if rank < 3 {
        return Err(CertificateError::InvalidScheme(format!(
            "rank {rank} lattice has no codimension-three bound"
        )));
    }
    for perm in automorphisms {
        validate_automorphism(l, perm)?;
    }
    let proper = l
        .proper_part()
        .map_err(|e| CertificateError::InvalidScheme(e.to_string()))?;
    let complex = order_complex(&proper)
        .map_err(|e| CertificateError::InvalidScheme(e.to_string()))?;
    let f_top = complex.n_cells(rank - 2);
    let f_below = complex.n_cells(rank - 3);
    debug_assert!(f_top > 0 && f_below > 0);

    // Top cells as rank-sorted chains of lattice element indices.
    let ranks = l.rank().expect("validated graded");
    let chain_of = |cell: usize| -> Vec<usize> {
        let CellLabel::Chain(names) = complex.label(rank - 2, cell) else {
            unreachable!("order complexes label cells by chains")
        };
        names
            .iter()
            .map(|n| l.index_by_name(n).expect("cell names are lattice elements"))
            .collect()
    };
    let mut orbit: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = VecDeque::new();
    let start = chain_of(0);
    orbit.insert(start.clone());
    queue.push_back(start);
    while let Some(chain) = queue.pop_front() {
        for perm in automorphisms {
            let mut image: Vec<usize> = chain.iter().map(|&e| perm[e]).collect();
            image.sort_unstable_by_key(|&e| ranks[e]);
            if orbit.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    if orbit.len() != f_top {
        return Err(CertificateError::NotHomogeneous {
            orbit: orbit.len(),
            total: f_top,
        });
    }
    let mut factorial_sum = 0u64;
    let mut factorial = 1u64;
    for j in 1..rank as u64 {
        factorial *= j;
        factorial_sum += factorial;
    }
    Ok(Ratio::new(f_top as u64, f_below as u64 * factorial_sum))
}
