//! Finite posets, their order complexes, and the two lattice families used
//! by the chain-scheme certificates: Boolean lattices and subspace lattices.

use super::{CellLabel, ComplexError, ComplexZ2};
use crate::gf2::BitVec;

/// A finite poset given by covering relations; the strict order is the
/// transitive closure, computed and cached at construction.
#[derive(Clone, Debug)]
pub struct Poset {
    name: String,
    names: Vec<String>,
    /// `less[i]` is the set of elements strictly above `i`.
    less: Vec<BitVec>,
    covers: Vec<(u32, u32)>,
    rank: Option<Vec<u32>>,
}

impl Poset {
    /// `covers` lists (lower, upper) pairs. Fails on cyclic input.
    pub fn new(
        name: impl Into<String>,
        names: Vec<String>,
        covers: Vec<(u32, u32)>,
        rank: Option<Vec<u32>>,
    ) -> Result<Self, ComplexError> {
        let n = names.len();
        {
            let mut sorted = names.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), n, "poset element names must be distinct");
        }
        if let Some(r) = &rank {
            assert_eq!(r.len(), n, "rank table length mismatch");
        }
        let mut up: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(a, b) in &covers {
            assert!((a as usize) < n && (b as usize) < n, "cover index out of range");
            up[a as usize].push(b);
        }
        // Transitive closure by reverse topological order; the topological
        // sort doubles as the cycle check.
        let order = topo_order(n, &up).ok_or(ComplexError::CyclicOrder)?;
        let mut less = vec![BitVec::zeros(n); n];
        for &i in order.iter().rev() {
            let mut union = BitVec::zeros(n);
            for &j in &up[i] {
                union.set(j as usize);
                for t in less[j as usize].ones() {
                    union.set(t);
                }
            }
            less[i] = union;
        }
        Ok(Poset {
            name: name.into(),
            names,
            less,
            covers,
            rank,
        })
    }

    #[must_use]
    pub fn name(&self) -> &str {
        &self.name
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    #[must_use]
    pub fn element_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    #[must_use]
    pub fn index_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Strict order.
    #[must_use]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.less[a].get(b)
    }

    #[must_use]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    #[must_use]
    pub fn covers(&self) -> &[(u32, u32)] {
        &self.covers
    }

    #[must_use]
    pub fn rank(&self) -> Option<&[u32]> {
        self.rank.as_deref()
    }

    /// Unique bottom and top, if they exist.
    #[must_use]
    pub fn bounds(&self) -> Option<(usize, usize)> {
        let n = self.len();
        let bottom = (0..n).find(|&b| (0..n).all(|x| x == b || self.lt(b, x)))?;
        let top = (0..n).find(|&t| (0..n).all(|x| x == t || self.lt(x, t)))?;
        Some((bottom, top))
    }

    /// Elements covering the bottom.
    #[must_use]
    pub fn atoms(&self) -> Vec<usize> {
        match self.bounds() {
            None => Vec::new(),
            Some((b, _)) => self
                .covers
                .iter()
                .filter(|&&(lo, _)| lo as usize == b)
                .map(|&(_, hi)| hi as usize)
                .collect(),
        }
    }

    /// Least upper bound, when unique.
    #[must_use]
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.len();
        let uppers: Vec<usize> = (0..n)
            .filter(|&x| self.leq(a, x) && self.leq(b, x))
            .collect();
        let minimal: Vec<usize> = uppers
            .iter()
            .copied()
            .filter(|&x| uppers.iter().all(|&y| y == x || !self.lt(y, x)))
            .collect();
        match minimal.as_slice() {
            [unique] => Some(*unique),
            _ => None,
        }
    }

    /// Greatest lower bound, when unique.
    #[must_use]
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.len();
        let lowers: Vec<usize> = (0..n)
            .filter(|&x| self.leq(x, a) && self.leq(x, b))
            .collect();
        let maximal: Vec<usize> = lowers
            .iter()
            .copied()
            .filter(|&x| lowers.iter().all(|&y| y == x || !self.lt(x, y)))
            .collect();
        match maximal.as_slice() {
            [unique] => Some(*unique),
            _ => None,
        }
    }

    /// Remove the unique bottom and top of a bounded poset.
    pub fn proper_part(&self) -> Result<Poset, ComplexError> {
        let (bottom, top) = self.bounds().ok_or(ComplexError::NotBounded)?;
        let keep: Vec<usize> = (0..self.len()).filter(|&i| i != bottom && i != top).collect();
        let mut new_index = vec![usize::MAX; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            new_index[old] = new;
        }
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let covers = self
            .covers
            .iter()
            .filter(|&&(a, b)| new_index[a as usize] != usize::MAX && new_index[b as usize] != usize::MAX)
            .map(|&(a, b)| (new_index[a as usize] as u32, new_index[b as usize] as u32))
            .collect();
        let rank = self.rank.as_ref().map(|r| {
            keep.iter()
                .map(|&i| r[i] - r[bottom] - 1)
                .collect()
        });
        Poset::new(format!("{}_proper", self.name), names, covers, rank)
    }
}

fn topo_order(n: usize, up: &[Vec<u32>]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for targets in up {
        for &t in targets {
            indeg[t as usize] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(i) = stack.pop() {
        order.push(i);
        for &t in &up[i] {
            indeg[t as usize] -= 1;
            if indeg[t as usize] == 0 {
                stack.push(t as usize);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// The flag complex of a poset: k-cells are chains of k+1 comparable
/// elements, faces drop one element.
pub fn order_complex(p: &Poset) -> Result<ComplexZ2, ComplexError> {
    const CHAIN_CAP: usize = 4_000_000;
    let n = p.len();
    let mut by_dim: Vec<Vec<CellLabel>> = Vec::new();
    let mut total = 0usize;
    let mut chain: Vec<usize> = Vec::new();
    let mut stack: Vec<(usize, usize)> = Vec::new(); // (element, depth)
    for start in 0..n {
        stack.push((start, 0));
        while let Some((e, depth)) = stack.pop() {
            chain.truncate(depth);
            chain.push(e);
            total += 1;
            if total > CHAIN_CAP {
                return Err(ComplexError::InvalidRange(
                    "order complex exceeds the chain cap".into(),
                ));
            }
            let d = chain.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, Vec::new);
            }
            by_dim[d].push(CellLabel::Chain(
                chain.iter().map(|&i| p.element_name(i).to_string()).collect(),
            ));
            for next in p.less[e].ones() {
                stack.push((next, depth + 1));
            }
        }
    }
    for layer in &mut by_dim {
        layer.sort();
    }
    let mut boundary: Vec<Vec<Vec<u32>>> = Vec::with_capacity(by_dim.len());
    for (k, layer) in by_dim.iter().enumerate() {
        let mut rows = Vec::with_capacity(layer.len());
        for label in layer {
            let CellLabel::Chain(names) = label else { unreachable!() };
            let mut faces: Vec<u32> = Vec::new();
            if k > 0 {
                for drop in 0..names.len() {
                    let mut f = names.clone();
                    f.remove(drop);
                    let idx = by_dim[k - 1]
                        .binary_search(&CellLabel::Chain(f))
                        .expect("subchain must be listed");
                    faces.push(idx as u32);
                }
                faces.sort_unstable();
            }
            rows.push(faces);
        }
        boundary.push(rows);
    }
    ComplexZ2::from_parts(format!("flag_{}", p.name()), by_dim, boundary, true)
}

/// Boolean lattice of all subsets of `{1, ..., m}`, graded by cardinality.
/// Element names concatenate the member digits; the empty set is `"e"`.
pub fn boolean_lattice(m: u32) -> Result<Poset, ComplexError> {
    if m == 0 || m > 9 {
        return Err(ComplexError::InvalidRange(format!(
            "boolean lattice needs 1 <= m <= 9; got m={m}"
        )));
    }
    let mut subsets: Vec<Vec<u32>> = (0u32..1 << m)
        .map(|mask| (1..=m).filter(|&v| mask >> (v - 1) & 1 == 1).collect())
        .collect();
    subsets.sort_by_key(|s| (s.len(), s.clone()));
    let names: Vec<String> = subsets.iter().map(|s| subset_name(s)).collect();
    let mut covers = Vec::new();
    for (i, s) in subsets.iter().enumerate() {
        for (j, t) in subsets.iter().enumerate() {
            if t.len() == s.len() + 1 && s.iter().all(|v| t.contains(v)) {
                covers.push((i as u32, j as u32));
            }
        }
    }
    let rank = subsets.iter().map(|s| s.len() as u32).collect();
    Poset::new(format!("boolean_{m}"), names, covers, Some(rank))
}

/// Canonical name of a subset of `{1..9}`: concatenated digits, `"e"` if empty.
#[must_use]
pub fn subset_name(s: &[u32]) -> String {
    if s.is_empty() {
        return "e".to_string();
    }
    s.iter().map(|v| v.to_string()).collect()
}

/// All subspaces of `F_q^n` as sorted lists of their nonzero vector codes
/// (radix-q encoding), listed in lattice element order: graded by dimension,
/// lexicographic within a grade.
pub fn subspaces(q: u32, n: u32) -> Result<Vec<(u32, Vec<u16>)>, ComplexError> {
    if !(q == 2 || q == 3) || n == 0 || n > 4 {
        return Err(ComplexError::InvalidRange(format!(
            "subspace lattice supports q in {{2,3}} and 1 <= n <= 4; got q={q}, n={n}"
        )));
    }
    let size = q.pow(n) as usize;
    // Componentwise addition table on radix-q codes.
    let decode = |code: usize| -> Vec<u32> {
        let mut c = code as u32;
        (0..n)
            .map(|_| {
                let digit = c % q;
                c /= q;
                digit
            })
            .collect()
    };
    let encode = |digits: &[u32]| -> usize {
        digits.iter().rev().fold(0usize, |acc, &d| acc * q as usize + d as usize)
    };
    let mut add = vec![0u16; size * size];
    for a in 0..size {
        for b in 0..size {
            let da = decode(a);
            let db = decode(b);
            let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % q).collect();
            add[a * size + b] = encode(&sum) as u16;
        }
    }
    let mut levels: Vec<Vec<Vec<u16>>> = vec![vec![Vec::new()]]; // dim 0: {0}, stored without 0
    let mut seen: std::collections::HashSet<Vec<u16>> = std::collections::HashSet::new();
    for d in 0..n {
        let mut next: Vec<Vec<u16>> = Vec::new();
        for space in &levels[d as usize] {
            // Full member list including zero.
            let mut members: Vec<u16> = vec![0];
            members.extend_from_slice(space);
            for v in 1..size as u16 {
                if space.binary_search(&v).is_ok() {
                    continue;
                }
                // span(space + v): all m + c*v for m in members, c in 1..q.
                let mut grown: Vec<u16> = members.clone();
                for &m in &members {
                    let mut cv = v;
                    for _ in 1..q {
                        grown.push(add[m as usize * size + cv as usize]);
                        cv = add[cv as usize * size + v as usize];
                    }
                }
                grown.sort_unstable();
                grown.dedup();
                let nonzero: Vec<u16> = grown.into_iter().filter(|&x| x != 0).collect();
                if seen.insert(nonzero.clone()) {
                    next.push(nonzero);
                }
            }
        }
        next.sort();
        levels.push(next);
    }
    let mut out = Vec::new();
    for (d, level) in levels.iter().enumerate() {
        for space in level {
            out.push((d as u32, space.clone()));
        }
    }
    Ok(out)
}

/// The lattice of all subspaces of `F_q^n`, graded by dimension. Element
/// names join the nonzero vector codes with `+`; the zero space is `"o"`.
pub fn subspace_lattice(q: u32, n: u32) -> Result<Poset, ComplexError> {
    let spaces = subspaces(q, n)?;
    let names: Vec<String> = spaces
        .iter()
        .map(|(_, vecs)| {
            if vecs.is_empty() {
                "o".to_string()
            } else {
                vecs.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join("+")
            }
        })
        .collect();
    let mut covers = Vec::new();
    for (i, (di, vi)) in spaces.iter().enumerate() {
        for (j, (dj, vj)) in spaces.iter().enumerate() {
            if *dj == di + 1 && vi.iter().all(|v| vj.binary_search(v).is_ok()) {
                covers.push((i as u32, j as u32));
            }
        }
    }
    let rank = spaces.iter().map(|(d, _)| *d).collect();
    Poset::new(format!("subspaces_q{q}_n{n}"), names, covers, Some(rank))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_lattice_proper_part_flag_complex() {
        // Proper part of the Boolean lattice on 3 atoms: 6 elements, 6
        // comparable pairs; its flag complex is a hexagon.
        let b3 = boolean_lattice(3).unwrap();
        assert_eq!(b3.len(), 8);
        let proper = b3.proper_part().unwrap();
        assert_eq!(proper.len(), 6);
        let x = order_complex(&proper).unwrap();
        assert_eq!(x.f_vector(), vec![6, 6]);
    }

    #[test]
    fn bounds_and_atoms() {
        let b3 = boolean_lattice(3).unwrap();
        let (bottom, top) = b3.bounds().unwrap();
        assert_eq!(b3.element_name(bottom), "e");
        assert_eq!(b3.element_name(top), "123");
        let mut atom_names: Vec<&str> =
            b3.atoms().iter().map(|&a| b3.element_name(a)).collect();
        atom_names.sort();
        assert_eq!(atom_names, vec!["1", "2", "3"]);
    }

    #[test]
    fn join_and_meet_in_boolean_lattice() {
        let b3 = boolean_lattice(3).unwrap();
        let a = b3.index_by_name("1").unwrap();
        let b = b3.index_by_name("2").unwrap();
        let ab = b3.join(a, b).unwrap();
        assert_eq!(b3.element_name(ab), "12");
        let m = b3.meet(a, b).unwrap();
        assert_eq!(b3.element_name(m), "e");
    }

    #[test]
    fn fano_subspace_lattice() {
        // Subspaces of F_2^3: 1 + 7 + 7 + 1 elements.
        let l = subspace_lattice(2, 3).unwrap();
        assert_eq!(l.len(), 16);
        let proper = l.proper_part().unwrap();
        assert_eq!(proper.len(), 14);
        let x = order_complex(&proper).unwrap();
        // Point-plane incidence graph of the Fano plane: 14 vertices, 21 edges.
        assert_eq!(x.f_vector(), vec![14, 21]);
        for i in 0..x.n_cells(0) {
            let degree = (0..x.n_cells(1))
                .filter(|&e| x.faces(1, e).contains(&(i as u32)))
                .count();
            assert_eq!(degree, 3, "incidence graph is cubic");
        }
    }

    #[test]
    fn gaussian_counts_for_q3() {
        let l = subspace_lattice(3, 3).unwrap();
        // 1 + 13 + 13 + 1 subspaces of F_3^3.
        assert_eq!(l.len(), 28);
        let spaces = subspaces(3, 2).unwrap();
        let lines: Vec<_> = spaces.iter().filter(|(d, _)| *d == 1).collect();
        assert_eq!(lines.len(), 4, "F_3^2 has (9-1)/(3-1) = 4 lines");
    }

    #[test]
    fn cyclic_covers_rejected() {
        let err = Poset::new(
            "cyc",
            vec!["a".into(), "b".into()],
            vec![(0, 1), (1, 0)],
            None,
        )
        .unwrap_err();
        assert_eq!(err, ComplexError::CyclicOrder);
    }

    #[test]
    fn chains_of_the_full_boolean_lattice() {
        // All chains through the 4-element Boolean lattice on 2 atoms.
        let b2 = boolean_lattice(2).unwrap();
        let x = order_complex(&b2).unwrap();
        assert_eq!(x.f_vector(), vec![4, 5, 2]);
    }
}
