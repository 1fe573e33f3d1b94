//! Cochain-homotopy certificates for coboundary expansion.
//!
//! A scheme assigns to each sample point `s` and each k-cell a filling
//! (k+1)-chain, and to each (k-1)-cell a filling k-chain, subject to the
//! filling identity: the boundary of a k-cell's filling equals that cell
//! plus the fillings of its faces.  Averaging over samples, the reciprocal
//! of the worst expected multiplicity with which a (k+1)-cell is used
//! lower-bounds the degree-k coboundary expansion.  Construction verifies
//! the filling identity exhaustively, so a returned bound is always sound.

use super::CertificateError;
use crate::complexes::ComplexZ2;
use crate::expansion::{Cochain, PairOperators};
use crate::gf2::BitVec;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// A validated filling scheme in a fixed dimension `k`.
pub struct HomotopyScheme {
    k: usize,
    n_above: usize,
    weights: Vec<Ratio<u64>>,
    /// `top[s][sigma]`: the (k+1)-chain filling k-cell `sigma` at sample `s`.
    top: Vec<Vec<Cochain>>,
}

impl HomotopyScheme {
    /// Validates a weighted scheme on the complex `x`.
    ///
    /// `top[s]` holds one (k+1)-chain per k-cell.  `low[s]` holds one
    /// k-chain per (k-1)-cell; in dimension zero it holds a single entry
    /// filling the augmentation cell when `x` is augmented, and must be
    /// empty otherwise.  Weights must sum to one.  Every filling identity
    /// is checked; the first violation is reported by sample and cell.
    pub fn new(
        x: &ComplexZ2,
        k: usize,
        weights: Vec<Ratio<u64>>,
        top: Vec<Vec<Cochain>>,
        low: Vec<Vec<Cochain>>,
    ) -> Result<Self, CertificateError> {
        if x.is_void() {
            return Err(CertificateError::InvalidScheme(
                "the void complex admits no filling scheme".into(),
            ));
        }
        let ops = PairOperators::absolute(x);
        let levels = ops.levels();
        if k + 1 >= levels {
            return Err(CertificateError::RankOutOfRange {
                got: k,
                limit: levels.saturating_sub(2),
            });
        }
        let samples = weights.len();
        if samples == 0 || top.len() != samples || low.len() != samples {
            return Err(CertificateError::InvalidScheme(format!(
                "sample shapes disagree: {} weights, {} top rows, {} low rows",
                samples,
                top.len(),
                low.len()
            )));
        }
        if weights.iter().sum::<Ratio<u64>>() != Ratio::one() {
            return Err(CertificateError::InvalidScheme(
                "weights must sum to one".into(),
            ));
        }
        let f_k = ops.n_free(k);
        let f_up = ops.n_free(k + 1);
        let low_len = if k == 0 {
            usize::from(ops.augmentation_active())
        } else {
            ops.n_free(k - 1)
        };
        for s in 0..samples {
            if top[s].len() != f_k || low[s].len() != low_len {
                return Err(CertificateError::InvalidScheme(format!(
                    "sample {s} has {} top chains (want {f_k}) and {} low chains (want {low_len})",
                    top[s].len(),
                    low[s].len()
                )));
            }
            for c in &top[s] {
                if c.dim() != k + 1 || c.bits().len() != f_up {
                    return Err(CertificateError::InvalidScheme(format!(
                        "sample {s} top chain of wrong shape"
                    )));
                }
            }
            for c in &low[s] {
                if c.dim() != k || c.bits().len() != f_k {
                    return Err(CertificateError::InvalidScheme(format!(
                        "sample {s} low chain of wrong shape"
                    )));
                }
            }
        }
        for (s, (tops, lows)) in top.iter().zip(&low).enumerate() {
            for (sigma, fill) in tops.iter().enumerate() {
                let lhs = ops.boundary(fill);
                let mut rhs = BitVec::singleton(f_k, sigma);
                if k == 0 {
                    if let Some(aug) = lows.first() {
                        rhs.xor_assign(aug.bits());
                    }
                } else {
                    for &face in x.faces(k, sigma) {
                        rhs.xor_assign(lows[face as usize].bits());
                    }
                }
                if *lhs.bits() != rhs {
                    return Err(CertificateError::FillIdentityViolated { s, sigma });
                }
            }
        }
        Ok(HomotopyScheme {
            k,
            n_above: f_up,
            weights,
            top,
        })
    }

    /// Uniformly weighted scheme over the given samples.
    pub fn uniform(
        x: &ComplexZ2,
        k: usize,
        top: Vec<Vec<Cochain>>,
        low: Vec<Vec<Cochain>>,
    ) -> Result<Self, CertificateError> {
        let samples = top.len();
        if samples == 0 {
            return Err(CertificateError::InvalidScheme(
                "a scheme needs at least one sample".into(),
            ));
        }
        let weights = vec![Ratio::new(1, samples as u64); samples];
        Self::new(x, k, weights, top, low)
    }

    /// The scheme's dimension.
    #[must_use]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of sample points.
    #[must_use]
    pub fn samples(&self) -> usize {
        self.weights.len()
    }

    /// Expected multiplicity with which each (k+1)-cell appears in the
    /// fillings of k-cells, in cell order.
    #[must_use]
    pub fn expected_degrees(&self) -> Vec<Ratio<u64>> {
        let mut acc = vec![Ratio::zero(); self.n_above];
        for (w, tops) in self.weights.iter().zip(&self.top) {
            for fill in tops {
                for tau in fill.bits().ones() {
                    acc[tau] += w;
                }
            }
        }
        acc
    }
}

/// The expansion lower bound certified by a scheme: the reciprocal of the
/// largest expected multiplicity over (k+1)-cells.
pub fn homotopy_bound(scheme: &HomotopyScheme) -> Result<Ratio<u64>, CertificateError> {
    let degrees = scheme.expected_degrees();
    let max = degrees.into_iter().max().unwrap_or_else(Ratio::zero);
    if max.is_zero() {
        return Err(CertificateError::InvalidScheme(
            "the scheme uses no higher cell, certifying nothing".into(),
        ));
    }
    Ok(max.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{simplex_skeleton, CellLabel};
    use crate::expansion::cheeger_co;

    /// Cone fillings at a fixed apex on a complete graph or 2-skeleton:
    /// every vertex is filled by the edge to the apex, every edge by the
    /// triangle over the apex, and the augmentation cell by the apex itself.
    fn cone_vertex_fillings(
        x: &ComplexZ2,
        ops: &PairOperators,
        apex: u32,
    ) -> (Vec<Cochain>, Vec<Cochain>) {
        let n = x.n_cells(0);
        let top = (0..n as u32)
            .map(|v| {
                if v == apex {
                    Cochain::zeros(ops, 1)
                } else {
                    let e = x.index_of(1, &CellLabel::simplex(&[apex, v])).unwrap();
                    Cochain::from_support(ops, 1, &[e])
                }
            })
            .collect();
        let low = vec![Cochain::from_support(ops, 0, &[apex as usize])];
        (top, low)
    }

    #[test]
    fn single_cone_on_triangle_certifies_one() {
        let x = simplex_skeleton(3, 2).unwrap();
        let ops = PairOperators::absolute(&x);
        let (top, low) = cone_vertex_fillings(&x, &ops, 0);
        let scheme = HomotopyScheme::uniform(&x, 0, vec![top], vec![low]).unwrap();
        assert_eq!(homotopy_bound(&scheme).unwrap(), Ratio::new(1, 1));
        // The certified value really is a lower bound.
        let exact = cheeger_co(&ops, 0, 1 << 20).unwrap();
        assert!(Ratio::new(1, 1) <= exact.value);
    }

    #[test]
    fn averaging_over_all_cones_improves_the_vertex_bound() {
        let x = simplex_skeleton(3, 1).unwrap();
        let ops = PairOperators::absolute(&x);
        let mut tops = Vec::new();
        let mut lows = Vec::new();
        for apex in 0..3 {
            let (t, l) = cone_vertex_fillings(&x, &ops, apex);
            tops.push(t);
            lows.push(l);
        }
        let scheme = HomotopyScheme::uniform(&x, 0, tops, lows).unwrap();
        // Each edge serves both of its endpoints' cones: expected degree 2/3.
        assert_eq!(homotopy_bound(&scheme).unwrap(), Ratio::new(3, 2));
    }

    #[test]
    fn edge_cones_on_the_tetrahedron_certify_four_thirds() {
        let x = simplex_skeleton(4, 2).unwrap();
        let ops = PairOperators::absolute(&x);
        let edge_of = |a: u32, b: u32| x.index_of(1, &CellLabel::simplex(&[a, b])).unwrap();
        let tri_of =
            |a: u32, b: u32, c: u32| x.index_of(2, &CellLabel::simplex(&[a, b, c])).unwrap();
        let mut tops = Vec::new();
        let mut lows = Vec::new();
        for apex in 0..4u32 {
            // Fill edge [u, v] by the triangle over the apex (zero if the
            // apex is an endpoint), and vertex v by the edge to the apex.
            let top = (0..x.n_cells(1))
                .map(|e| match x.label(1, e) {
                    CellLabel::Simplex(v) if !v.contains(&apex) => {
                        Cochain::from_support(&ops, 2, &[tri_of(apex, v[0], v[1])])
                    }
                    _ => Cochain::zeros(&ops, 2),
                })
                .collect();
            let low = (0..4u32)
                .map(|v| {
                    if v == apex {
                        Cochain::zeros(&ops, 1)
                    } else {
                        Cochain::from_support(&ops, 1, &[edge_of(apex.min(v), apex.max(v))])
                    }
                })
                .collect();
            tops.push(top);
            lows.push(low);
        }
        let scheme = HomotopyScheme::uniform(&x, 1, tops, lows).unwrap();
        let bound = homotopy_bound(&scheme).unwrap();
        // Each triangle serves the cones of its three vertices, so the
        // expected degree is 3/4 and the certificate is 4/3.
        assert_eq!(bound, Ratio::new(4, 3));
        // The swept constant is 2: every nonzero coset of the cut space of
        // the complete graph on four vertices attains ratio 2 (single-edge
        // classes give 2/1, the all-ones class 4/2), so the certificate is
        // sound but not tight.
        let exact = cheeger_co(&ops, 1, 1 << 20).unwrap();
        assert_eq!(exact.value, Ratio::new(2, 1));
        assert!(bound <= exact.value);
    }

    #[test]
    fn tampered_filling_is_rejected_with_location() {
        let x = simplex_skeleton(3, 2).unwrap();
        let ops = PairOperators::absolute(&x);
        let (mut top, low) = cone_vertex_fillings(&x, &ops, 0);
        top[1].flip(2); // corrupt the filling of vertex 1
        let err = HomotopyScheme::uniform(&x, 0, vec![top], vec![low]).err();
        assert_eq!(err, Some(CertificateError::FillIdentityViolated { s: 0, sigma: 1 }));
    }

    #[test]
    fn weights_must_sum_to_one() {
        let x = simplex_skeleton(3, 2).unwrap();
        let ops = PairOperators::absolute(&x);
        let (top, low) = cone_vertex_fillings(&x, &ops, 0);
        let err = HomotopyScheme::new(
            &x,
            0,
            vec![Ratio::new(1, 2)],
            vec![top],
            vec![low],
        )
        .err();
        assert!(matches!(err, Some(CertificateError::InvalidScheme(_))));
    }

    #[test]
    fn dimension_above_the_top_is_rejected() {
        let x = simplex_skeleton(3, 1).unwrap();
        let err = HomotopyScheme::uniform(&x, 1, vec![vec![]], vec![vec![]]).err();
        assert_eq!(err, Some(CertificateError::RankOutOfRange { got: 1, limit: 0 }));
    }
}
