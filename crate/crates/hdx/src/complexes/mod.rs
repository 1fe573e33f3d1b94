//! Finite cell complexes with GF(2) incidence, relative pairs and posets.
//!
//! A [`ComplexZ2`] is a graded list of labelled cells together with, for each
//! cell, the list of cells one dimension lower that carry odd incidence. The
//! square of the boundary map is checked to vanish at construction time.
//!
//! Complexes built on a vertex set may carry the augmentation: a virtual
//! `(-1)`-cell that every vertex bounds once and whose dual cochain maps to
//! the all-ones vertex cochain. The augmentation participates only in
//! absolute computations (an empty relative subcomplex suppresses it), which
//! keeps degree-0 Cheeger data aligned with graph-theoretic conventions and
//! makes complement duality exact in every dimension.

mod builders;
mod coxeter;
mod label;
mod poset;

pub use builders::{
    alexander_dual, hypercube, product_with_simplex, random_subcomplex_of_simplex, random_ynp,
    simplex_skeleton, simplicial_complex,
};
pub use coxeter::{coxeter_an, coxeter_bn};
pub use label::{CellLabel, CubeSym, LabelParseError};
pub use poset::{boolean_lattice, order_complex, subset_name, subspace_lattice, subspaces, Poset};

use crate::gf2::BitVec;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("parameter out of range: {0}")]
    InvalidRange(String),
    #[error("cell labels in dimension {dim} are not sorted and distinct")]
    UnsortedCells { dim: usize },
    #[error("boundary reference out of range in dimension {dim}, cell {cell}")]
    BadBoundaryRef { dim: usize, cell: usize },
    #[error("boundary of boundary is nonzero at dimension {dim}, cell {cell}")]
    BoundarySquare { dim: usize, cell: usize },
    #[error("not a subcomplex: {0}")]
    NotASubcomplex(String),
    #[error("partial order contains a cycle")]
    CyclicOrder,
    #[error("poset is not bounded (unique bottom and top required)")]
    NotBounded,
    #[error("complex is not simplicial on the expected vertex set: {0}")]
    NotSimplicial(String),
}

/// A finite graded cell complex with GF(2) boundary incidence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplexZ2 {
    name: String,
    /// `cells[k]` is the sorted list of k-cell labels.
    cells: Vec<Vec<CellLabel>>,
    /// `boundary[k][i]` lists the (k-1)-cells with odd incidence, sorted.
    boundary: Vec<Vec<Vec<u32>>>,
    /// Whether the augmentation ((-1)-cell) is active in absolute computations.
    augmented: bool,
    /// A void complex has no cells at all, not even the augmentation cell.
    void: bool,
}

impl ComplexZ2 {
    /// Validating constructor. `cells[k]` must be sorted and distinct,
    /// boundary indices must reference dimension `k-1`, and the composite
    /// boundary must vanish over GF(2).
    pub fn from_parts(
        name: impl Into<String>,
        cells: Vec<Vec<CellLabel>>,
        boundary: Vec<Vec<Vec<u32>>>,
        augmented: bool,
    ) -> Result<Self, ComplexError> {
        let mut cells = cells;
        let mut boundary = boundary;
        assert_eq!(cells.len(), boundary.len(), "cells/boundary grading mismatch");
        while cells.last().is_some_and(Vec::is_empty) {
            cells.pop();
            boundary.pop();
        }
        for (k, layer) in cells.iter().enumerate() {
            if !layer.windows(2).all(|p| p[0] < p[1]) {
                return Err(ComplexError::UnsortedCells { dim: k });
            }
            assert_eq!(layer.len(), boundary[k].len(), "cells/boundary length mismatch");
        }
        for (k, layer) in boundary.iter().enumerate() {
            for (i, faces) in layer.iter().enumerate() {
                let lower = if k == 0 { 0 } else { cells[k - 1].len() };
                let ok = faces.windows(2).all(|p| p[0] < p[1])
                    && faces.iter().all(|&f| (f as usize) < lower)
                    && (k > 0 || faces.is_empty());
                if !ok {
                    return Err(ComplexError::BadBoundaryRef { dim: k, cell: i });
                }
            }
        }
        let complex = ComplexZ2 {
            name: name.into(),
            cells,
            boundary,
            augmented,
            void: false,
        };
        complex.check_boundary_square()?;
        Ok(complex)
    }

    fn check_boundary_square(&self) -> Result<(), ComplexError> {
        for k in 2..self.cells.len() {
            let lower = self.cells[k - 2].len();
            for (i, faces) in self.boundary[k].iter().enumerate() {
                let mut acc = BitVec::zeros(lower);
                for &f in faces {
                    for &g in &self.boundary[k - 1][f as usize] {
                        acc.flip(g as usize);
                    }
                }
                if !acc.is_zero() {
                    return Err(ComplexError::BoundarySquare { dim: k, cell: i });
                }
            }
        }
        Ok(())
    }

    /// The complex with no cells at all (the Alexander dual of a full simplex).
    #[must_use]
    pub fn void_complex(name: impl Into<String>) -> Self {
        ComplexZ2 {
            name: name.into(),
            cells: Vec::new(),
            boundary: Vec::new(),
            augmented: false,
            void: true,
        }
    }

    /// The complex whose only cell is the augmentation cell.
    #[must_use]
    pub fn empty_complex(name: impl Into<String>) -> Self {
        ComplexZ2 {
            name: name.into(),
            cells: Vec::new(),
            boundary: Vec::new(),
            augmented: true,
            void: false,
        }
    }

    #[must_use]
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Same complex under a new display name.
    #[must_use]
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    #[must_use]
    pub fn is_void(&self) -> bool {
        self.void
    }

    #[must_use]
    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    pub fn set_augmented(&mut self, augmented: bool) {
        assert!(!self.void, "void complex has no augmentation");
        self.augmented = augmented;
    }

    /// Number of dimension levels (top dimension + 1); 0 for void/empty.
    #[must_use]
    pub fn n_levels(&self) -> usize {
        self.cells.len()
    }

    #[must_use]
    pub fn n_cells(&self, k: usize) -> usize {
        self.cells.get(k).map_or(0, Vec::len)
    }

    #[must_use]
    pub fn f_vector(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    #[must_use]
    pub fn label(&self, k: usize, i: usize) -> &CellLabel {
        &self.cells[k][i]
    }

    #[must_use]
    pub fn labels(&self, k: usize) -> &[CellLabel] {
        self.cells.get(k).map_or(&[], Vec::as_slice)
    }

    /// Index of a label within its dimension, by binary search.
    #[must_use]
    pub fn index_of(&self, k: usize, label: &CellLabel) -> Option<usize> {
        self.cells.get(k)?.binary_search(label).ok()
    }

    /// Faces of cell `i` in dimension `k` (odd-incidence list, sorted).
    #[must_use]
    pub fn faces(&self, k: usize, i: usize) -> &[u32] {
        &self.boundary[k][i]
    }

    /// Restrict to cells of dimension at most `k`.
    #[must_use]
    pub fn skeleton(&self, k: usize, name: impl Into<String>) -> ComplexZ2 {
        let levels = self.cells.len().min(k + 1);
        ComplexZ2 {
            name: name.into(),
            cells: self.cells[..levels].to_vec(),
            boundary: self.boundary[..levels].to_vec(),
            augmented: self.augmented,
            void: self.void,
        }
    }

    /// All cells of `sub` exist in `self` (matched by label).
    #[must_use]
    pub fn contains_complex(&self, sub: &ComplexZ2) -> bool {
        sub.cells.iter().enumerate().all(|(k, layer)| {
            layer.iter().all(|l| self.index_of(k, l).is_some())
        })
    }
}

/// A relative pair `(X, Y)`: the ambient complex with a downward-closed set
/// of masked cells. Relative (co)chains live on the unmasked cells; operators
/// are compressed accordingly.
#[derive(Clone, Debug)]
pub struct RelativePair<'a> {
    ambient: &'a ComplexZ2,
    /// `masks[k]` flags the k-cells that belong to the subcomplex.
    masks: Vec<BitVec>,
    /// Distinguishes the empty subcomplex (augmentation cell only, `true`)
    /// from the void subcomplex (`false`). Any subcomplex with cells
    /// implicitly contains the augmentation cell.
    sub_nonvoid: bool,
}

impl<'a> RelativePair<'a> {
    /// The absolute case: no cells masked, void subcomplex.
    #[must_use]
    pub fn absolute(ambient: &'a ComplexZ2) -> Self {
        let masks = ambient
            .f_vector()
            .iter()
            .map(|&n| BitVec::zeros(n))
            .collect();
        RelativePair {
            ambient,
            masks,
            sub_nonvoid: false,
        }
    }

    /// Pair `(ambient, sub)` with the subcomplex given as its own complex;
    /// cells are matched by label. A void `sub` yields the absolute case.
    pub fn new(ambient: &'a ComplexZ2, sub: &ComplexZ2) -> Result<Self, ComplexError> {
        if sub.is_void() {
            return Ok(Self::absolute(ambient));
        }
        if sub.n_levels() > ambient.n_levels() {
            return Err(ComplexError::NotASubcomplex(format!(
                "subcomplex has {} dimension levels but the ambient complex only {}",
                sub.n_levels(),
                ambient.n_levels()
            )));
        }
        let mut masks: Vec<BitVec> = ambient
            .f_vector()
            .iter()
            .map(|&n| BitVec::zeros(n))
            .collect();
        for (k, mask) in masks.iter_mut().enumerate().take(sub.n_levels()) {
            for label in sub.labels(k) {
                let Some(i) = ambient.index_of(k, label) else {
                    return Err(ComplexError::NotASubcomplex(format!(
                        "cell {label} of dimension {k} not in ambient complex"
                    )));
                };
                mask.set(i);
            }
        }
        Self::from_masks(ambient, masks, true)
    }

    /// Pair from explicit masks. Verifies downward closure: every face of a
    /// masked cell is masked.
    pub fn from_masks(
        ambient: &'a ComplexZ2,
        masks: Vec<BitVec>,
        sub_nonvoid: bool,
    ) -> Result<Self, ComplexError> {
        assert_eq!(masks.len(), ambient.n_levels(), "mask grading mismatch");
        for (k, mask) in masks.iter().enumerate() {
            assert_eq!(mask.len(), ambient.n_cells(k), "mask length mismatch");
            if k == 0 {
                continue;
            }
            for i in mask.ones() {
                for &f in ambient.faces(k, i) {
                    if !masks[k - 1].get(f as usize) {
                        return Err(ComplexError::NotASubcomplex(format!(
                            "face {} of masked cell {} (dimension {k}) is unmasked",
                            ambient.label(k - 1, f as usize),
                            ambient.label(k, i),
                        )));
                    }
                }
            }
        }
        let any_cell = masks.iter().any(|m| !m.is_zero());
        Ok(RelativePair {
            ambient,
            masks,
            sub_nonvoid: sub_nonvoid || any_cell,
        })
    }

    #[must_use]
    pub fn ambient(&self) -> &'a ComplexZ2 {
        self.ambient
    }

    #[must_use]
    pub fn mask(&self, k: usize) -> Option<&BitVec> {
        self.masks.get(k)
    }

    #[must_use]
    pub fn is_absolute(&self) -> bool {
        !self.sub_nonvoid
    }

    /// The augmentation acts only in absolute computations over an augmented
    /// ambient complex; any nonvoid subcomplex absorbs the augmentation cell.
    #[must_use]
    pub fn augmentation_active(&self) -> bool {
        self.ambient.is_augmented() && !self.sub_nonvoid
    }

    /// Indices of unmasked k-cells, in ambient order.
    #[must_use]
    pub fn free_cells(&self, k: usize) -> Vec<usize> {
        let n = self.ambient.n_cells(k);
        match self.masks.get(k) {
            None => Vec::new(),
            Some(mask) => (0..n).filter(|&i| !mask.get(i)).collect(),
        }
    }

    /// Number of unmasked k-cells (the relative chain space dimension).
    #[must_use]
    pub fn free_count(&self, k: usize) -> usize {
        let n = self.ambient.n_cells(k);
        self.masks.get(k).map_or(0, |m| n - m.weight())
    }
}

/// Convenience wrapper matching the operation vocabulary: build a relative
/// pair from an ambient complex and a subcomplex.
pub fn relative_pair<'a>(
    x: &'a ComplexZ2,
    y: &ComplexZ2,
) -> Result<RelativePair<'a>, ComplexError> {
    RelativePair::new(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_square_checked() {
        // Two vertices, one edge, then a bogus 2-cell with a single edge face:
        // its boundary-of-boundary is v0 + v1, nonzero.
        let cells = vec![
            vec![CellLabel::simplex(&[0]), CellLabel::simplex(&[1])],
            vec![CellLabel::simplex(&[0, 1])],
            vec![CellLabel::simplex(&[0, 1, 2])],
        ];
        let boundary = vec![vec![vec![], vec![]], vec![vec![0, 1]], vec![vec![0]]];
        let err = ComplexZ2::from_parts("bogus", cells, boundary, true).unwrap_err();
        assert_eq!(err, ComplexError::BoundarySquare { dim: 2, cell: 0 });
    }

    #[test]
    fn labels_must_be_sorted() {
        let cells = vec![vec![CellLabel::simplex(&[1]), CellLabel::simplex(&[0])]];
        let boundary = vec![vec![vec![], vec![]]];
        let err = ComplexZ2::from_parts("x", cells, boundary, true).unwrap_err();
        assert_eq!(err, ComplexError::UnsortedCells { dim: 0 });
    }

    #[test]
    fn relative_pair_requires_closure() {
        let x = builders::simplex_skeleton(3, 1).unwrap();
        // Mask an edge without its endpoints: not a subcomplex.
        let mut masks: Vec<BitVec> = x.f_vector().iter().map(|&n| BitVec::zeros(n)).collect();
        masks[1].set(0);
        assert!(RelativePair::from_masks(&x, masks, true).is_err());
        // Mask the edge 01 together with vertices 0 and 1: fine.
        let mut masks: Vec<BitVec> = x.f_vector().iter().map(|&n| BitVec::zeros(n)).collect();
        masks[0].set(0);
        masks[0].set(1);
        masks[1].set(0);
        let pair = RelativePair::from_masks(&x, masks, true).unwrap();
        assert!(!pair.is_absolute());
        assert!(!pair.augmentation_active());
        assert_eq!(pair.free_count(0), 1);
        assert_eq!(pair.free_count(1), 2);
    }

    #[test]
    fn absolute_pair_keeps_augmentation() {
        let x = builders::simplex_skeleton(3, 1).unwrap();
        let pair = RelativePair::absolute(&x);
        assert!(pair.is_absolute());
        assert!(pair.augmentation_active());
        // The empty (but nonvoid) subcomplex suppresses it.
        let empty = ComplexZ2::empty_complex("empty");
        let pair = RelativePair::new(&x, &empty).unwrap();
        assert!(!pair.is_absolute());
        assert!(!pair.augmentation_active());
    }

    #[test]
    fn skeleton_truncates() {
        let x = builders::simplex_skeleton(4, 3).unwrap();
        let sk = x.skeleton(1, "graph");
        assert_eq!(sk.f_vector(), vec![4, 6]);
        assert!(x.contains_complex(&sk));
    }
}
