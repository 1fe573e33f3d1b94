//! Compressed boundary/coboundary operators of a relative pair.
//!
//! All expansion computations run in the coordinates of the *free* cells
//! (cells of the ambient complex not absorbed by the subcomplex), listed in
//! ambient order. For an absolute pair the free coordinates coincide with
//! the ambient ones. When the augmentation is active, the boundary operator
//! in degree 0 maps onto the augmentation line (every vertex bounds the
//! empty cell once), so degree-0 coboundaries contain the all-ones cochain.

use crate::complexes::RelativePair;
use crate::gf2::{BitVec, GF2Matrix};

/// One bit per free cell of a fixed dimension. The same representation
/// serves chains and cochains; over GF(2) the cell basis identifies the two,
/// and each operation documents which reading it uses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cochain {
    dim: usize,
    bits: BitVec,
}

impl Cochain {
    #[must_use]
    pub fn new(dim: usize, bits: BitVec) -> Self {
        Cochain { dim, bits }
    }

    /// Zero cochain of dimension `k` on the free cells of `ops`.
    #[must_use]
    pub fn zeros(ops: &PairOperators, k: usize) -> Self {
        Cochain {
            dim: k,
            bits: BitVec::zeros(ops.n_free(k)),
        }
    }

    /// Cochain supported on the given free-cell positions.
    #[must_use]
    pub fn from_support(ops: &PairOperators, k: usize, support: &[usize]) -> Self {
        Cochain {
            dim: k,
            bits: BitVec::from_indices(ops.n_free(k), support),
        }
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[must_use]
    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    #[must_use]
    pub fn weight(&self) -> usize {
        self.bits.weight()
    }

    #[must_use]
    pub fn support(&self) -> Vec<usize> {
        self.bits.support()
    }

    pub fn flip(&mut self, i: usize) {
        self.bits.flip(i);
    }
}

/// Boundary matrices of a relative pair, in free-cell coordinates.
#[derive(Clone, Debug)]
pub struct PairOperators {
    /// `free[k]` lists ambient indices of the free k-cells.
    free: Vec<Vec<u32>>,
    /// `bnd[k]` maps free k-chains to free (k-1)-chains; `bnd[0]` maps onto
    /// the augmentation line (one all-ones row) when the augmentation is
    /// active, and has no rows otherwise.
    bnd: Vec<GF2Matrix>,
    augmented: bool,
}

impl PairOperators {
    #[must_use]
    pub fn new(pair: &RelativePair<'_>) -> Self {
        let x = pair.ambient();
        let levels = x.n_levels();
        let augmented = pair.augmentation_active();
        let mut free: Vec<Vec<u32>> = Vec::with_capacity(levels);
        let mut pos: Vec<Vec<u32>> = Vec::with_capacity(levels);
        for k in 0..levels {
            let cells = pair.free_cells(k);
            let mut p = vec![u32::MAX; x.n_cells(k)];
            for (j, &amb) in cells.iter().enumerate() {
                p[amb] = j as u32;
            }
            free.push(cells.iter().map(|&i| i as u32).collect());
            pos.push(p);
        }
        let mut bnd: Vec<GF2Matrix> = Vec::with_capacity(levels);
        for k in 0..levels {
            let cols = free[k].len();
            let mut m = GF2Matrix::new(cols);
            if k == 0 {
                if augmented {
                    let mut ones = BitVec::zeros(cols);
                    for j in 0..cols {
                        ones.set(j);
                    }
                    m.push_row(ones);
                }
            } else {
                let mut rows = vec![BitVec::zeros(cols); free[k - 1].len()];
                for (j, &amb) in free[k].iter().enumerate() {
                    for &f in x.faces(k, amb as usize) {
                        let fp = pos[k - 1][f as usize];
                        if fp != u32::MAX {
                            rows[fp as usize].set(j);
                        }
                    }
                }
                m = GF2Matrix::from_rows(rows, cols);
            }
            bnd.push(m);
        }
        PairOperators { free, bnd, augmented }
    }

    /// Operators for the absolute complex.
    #[must_use]
    pub fn absolute(x: &crate::complexes::ComplexZ2) -> Self {
        Self::new(&RelativePair::absolute(x))
    }

    /// Number of graded levels (top dimension + 1).
    #[must_use]
    pub fn levels(&self) -> usize {
        self.free.len()
    }

    /// Number of free k-cells; 0 beyond the top dimension.
    #[must_use]
    pub fn n_free(&self, k: usize) -> usize {
        self.free.get(k).map_or(0, Vec::len)
    }

    /// Ambient indices of the free k-cells, in coordinate order.
    #[must_use]
    pub fn free_cells(&self, k: usize) -> &[u32] {
        self.free.get(k).map_or(&[], Vec::as_slice)
    }

    #[must_use]
    pub fn augmentation_active(&self) -> bool {
        self.augmented
    }

    /// The boundary matrix in degree `k` (rows index free (k-1)-cells; in
    /// degree 0 the augmentation line when active).
    #[must_use]
    pub fn boundary_matrix(&self, k: usize) -> &GF2Matrix {
        &self.bnd[k]
    }

    /// The coboundary matrix in degree `k` (rows index free (k+1)-cells);
    /// the zero map past the top dimension.
    #[must_use]
    pub fn coboundary_matrix(&self, k: usize) -> GF2Matrix {
        if k + 1 < self.bnd.len() {
            self.bnd[k + 1].transpose()
        } else {
            GF2Matrix::new(self.n_free(k))
        }
    }

    /// Spanning rows of the coboundary space `B^k` (the image of the
    /// coboundary from degree k-1, including the augmentation row at k=0
    /// when active). Row `σ` of the degree-k boundary matrix is exactly the
    /// coboundary of the dual of the (k-1)-cell `σ`.
    #[must_use]
    pub fn coboundary_space(&self, k: usize) -> &GF2Matrix {
        &self.bnd[k]
    }

    /// Spanning rows of the boundary space `B_k` (boundaries of free
    /// (k+1)-chains).
    #[must_use]
    pub fn boundary_space(&self, k: usize) -> GF2Matrix {
        self.coboundary_matrix(k)
    }

    /// Coboundary of a k-cochain, as a (k+1)-cochain.
    #[must_use]
    pub fn coboundary(&self, phi: &Cochain) -> Cochain {
        assert_eq!(phi.bits.len(), self.n_free(phi.dim), "cochain length mismatch");
        Cochain {
            dim: phi.dim + 1,
            bits: self.coboundary_matrix(phi.dim).apply(&phi.bits),
        }
    }

    /// Boundary of a k-chain for k >= 1, as a (k-1)-chain.
    #[must_use]
    pub fn boundary(&self, c: &Cochain) -> Cochain {
        assert!(c.dim >= 1, "boundary below dimension 1 is the augmentation map");
        assert_eq!(c.bits.len(), self.n_free(c.dim), "chain length mismatch");
        Cochain {
            dim: c.dim - 1,
            bits: self.bnd[c.dim].apply(&c.bits),
        }
    }

    /// `<phi, c>` over GF(2) for same-dimension inputs.
    #[must_use]
    pub fn evaluate(&self, phi: &Cochain, c: &Cochain) -> bool {
        assert_eq!(phi.dim, c.dim, "evaluation dimensions differ");
        phi.bits.dot(&c.bits)
    }
}
