//! Small finite groups as explicit multiplication tables.
//!
//! Groups are either cyclic (built directly) or permutation groups closed
//! from generators by breadth-first products, so element indices are
//! deterministic.  The identity is always index 0 and identity/inverse laws
//! are asserted at construction; associativity is covered by tests.

use super::NonAbError;

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

/// Largest admitted order; keeps tables and index types comfortable.
pub const GROUP_ORDER_CAP: usize = 4096;

impl FiniteGroup {
    /// The cyclic group of order `m`.
    pub fn cyclic(m: usize) -> Result<Self, NonAbError> {
        if m == 0 || m > GROUP_ORDER_CAP {
            return Err(NonAbError::InvalidGroup(format!(
                "cyclic order must be in 1..={GROUP_ORDER_CAP}; got {m}"
            )));
        }
        let mut mul = vec![0u16; m * m];
        let mut inv = vec![0u16; m];
        for a in 0..m {
            for b in 0..m {
                mul[a * m + b] = ((a + b) % m) as u16;
            }
            inv[a] = ((m - a) % m) as u16;
        }
        Ok(FiniteGroup {
            name: format!("Z{m}"),
            order: m,
            mul,
            inv,
        })
    }

    /// The symmetric group on `n` letters, `2 <= n <= 6`.
    pub fn symmetric(n: usize) -> Result<Self, NonAbError> {
        if !(2..=6).contains(&n) {
            return Err(NonAbError::InvalidGroup(format!(
                "symmetric groups are supported for 2 <= n <= 6; got {n}"
            )));
        }
        let swap: Vec<usize> = {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(0, 1);
            p
        };
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let g = Self::from_permutations(format!("S{n}"), n, &[swap, cycle], GROUP_ORDER_CAP)?;
        debug_assert_eq!(g.order, (1..=n).product::<usize>());
        Ok(g)
    }

    /// The alternating group on five letters, of order 60.
    #[must_use]
    pub fn alternating_5() -> Self {
        let three = vec![1, 2, 0, 3, 4];
        let five = vec![1, 2, 3, 4, 0];
        let g = Self::from_permutations("A5".to_string(), 5, &[three, five], GROUP_ORDER_CAP)
            .expect("two generators on five letters close within the cap");
        assert_eq!(g.order, 60, "the alternating group has order 60");
        g
    }

    /// The simple group of order 168, realized as the invertible 3x3
    /// matrices over the two-element field permuting the 7 nonzero vectors.
    #[must_use]
    pub fn psl_2_7() -> Self {
        const CYCLE: [[u8; 3]; 3] = [[0, 1, 0], [0, 0, 1], [1, 0, 0]];
        const TRANSVECTION: [[u8; 3]; 3] = [[1, 1, 0], [0, 1, 0], [0, 0, 1]];
        let perm_of = |m: &[[u8; 3]; 3]| -> Vec<usize> {
            (1..8usize)
                .map(|v| {
                    let bits = [v & 1, (v >> 1) & 1, (v >> 2) & 1];
                    let mut out = 0usize;
                    for (i, row) in m.iter().enumerate() {
                        let y: usize =
                            row.iter().zip(&bits).map(|(&a, &b)| usize::from(a) * b).sum();
                        out |= (y % 2) << i;
                    }
                    out - 1
                })
                .collect()
        };
        let g = Self::from_permutations(
            "PSL2(7)".to_string(),
            7,
            &[perm_of(&CYCLE), perm_of(&TRANSVECTION)],
            GROUP_ORDER_CAP,
        )
        .expect("the matrix generators close within the cap");
        assert_eq!(g.order, 168, "the simple group of order 168");
        g
    }

    /// Closes a set of permutation generators under composition, indexing
    /// elements in breadth-first discovery order from the identity.
    pub fn from_permutations(
        name: String,
        degree: usize,
        generators: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self, NonAbError> {
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree || !g.iter().all(|&i| i < degree && !std::mem::replace(&mut seen[i], true)) {
                return Err(NonAbError::InvalidGroup(format!(
                    "generator {g:?} is not a permutation of 0..{degree}"
                )));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index = std::collections::HashMap::new();
        index.insert(identity, 0usize);
        let mut frontier = 0;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            frontier += 1;
            for g in generators {
                // Compose as functions: (current . g)(x) = current[g[x]].
                let product: Vec<usize> = (0..degree).map(|x| current[g[x]]).collect();
                if !index.contains_key(&product) {
                    if elements.len() >= cap {
                        return Err(NonAbError::ClosureExceeded { cap });
                    }
                    index.insert(product.clone(), elements.len());
                    elements.push(product);
                }
            }
        }
        let order = elements.len();
        let mut mul = vec![0u16; order * order];
        for (a, pa) in elements.iter().enumerate() {
            for (b, pb) in elements.iter().enumerate() {
                let product: Vec<usize> = (0..degree).map(|x| pa[pb[x]]).collect();
                mul[a * order + b] = index[&product] as u16;
            }
        }
        let mut inv = vec![0u16; order];
        for (a, pa) in elements.iter().enumerate() {
            let mut q = vec![0usize; degree];
            for (x, &y) in pa.iter().enumerate() {
                q[y] = x;
            }
            inv[a] = index[&q] as u16;
        }
        let g = FiniteGroup {
            name,
            order,
            mul,
            inv,
        };
        for a in 0..order {
            assert_eq!(g.mul(0, a), a, "left identity");
            assert_eq!(g.mul(a, 0), a, "right identity");
            assert_eq!(g.mul(a, g.inv(a)), 0, "right inverse");
            assert_eq!(g.mul(g.inv(a), a), 0, "left inverse");
        }
        Ok(g)
    }

    #[must_use]
    pub fn order(&self) -> usize {
        self.order
    }

    #[must_use]
    pub fn name(&self) -> &str {
        &self.name
    }

    #[must_use]
    pub fn identity(&self) -> usize {
        0
    }

    #[must_use]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        usize::from(self.mul[a * self.order + b])
    }

    #[must_use]
    pub fn inv(&self, a: usize) -> usize {
        usize::from(self.inv[a])
    }

    /// Conjugate `a` by `c`.
    #[must_use]
    pub fn conj(&self, c: usize, a: usize) -> usize {
        self.mul(self.mul(c, a), self.inv(c))
    }

    #[must_use]
    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}
