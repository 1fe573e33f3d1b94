//! Coxeter complexes of types A and B, realized as order complexes.
//!
//! Type A on `n` letters is the order complex of the proper part of the
//! Boolean lattice on `{1..n}` (the barycentric subdivision of the boundary
//! of a simplex), with `n!` facets. Type B is the order complex of the poset
//! of nonempty faces of the `n`-dimensional cross-polytope, with `2^n * n!`
//! facets.

use super::poset::{boolean_lattice, order_complex, Poset};
use super::{ComplexError, ComplexZ2};

/// Barycentric subdivision of the boundary of the `(n-1)`-simplex.
pub fn coxeter_an(n: u32) -> Result<ComplexZ2, ComplexError> {
    if !(3..=8).contains(&n) {
        return Err(ComplexError::InvalidRange(format!(
            "type A needs 3 <= n <= 8; got n={n}"
        )));
    }
    let proper = boolean_lattice(n)?.proper_part()?;
    Ok(order_complex(&proper)?.renamed(format!("coxeter_a{n}")))
}

/// Order complex of the nonempty faces of the `n`-dimensional cross-polytope.
/// Faces are sign subsets: sets of signed coordinates using each coordinate
/// at most once, named like `+1-2`.
pub fn coxeter_bn(n: u32) -> Result<ComplexZ2, ComplexError> {
    if !(2..=5).contains(&n) {
        return Err(ComplexError::InvalidRange(format!(
            "type B needs 2 <= n <= 5; got n={n}"
        )));
    }
    // Encode a sign subset as (mask of used coordinates, mask of minus signs).
    let mut faces: Vec<(u32, u32)> = Vec::new();
    for used in 1u32..1 << n {
        // `plus` walks every subset of `used`, from all-plus to all-minus.
        let mut plus = used;
        loop {
            faces.push((used, used & !plus));
            if plus == 0 {
                break;
            }
            plus = (plus - 1) & used;
        }
    }
    let face_name = |&(used, minus): &(u32, u32)| -> String {
        (0..n)
            .filter(|i| used >> i & 1 == 1)
            .map(|i| {
                let sign = if minus >> i & 1 == 1 { '-' } else { '+' };
                format!("{sign}{}", i + 1)
            })
            .collect()
    };
    faces.sort_by_key(|f| (f.0.count_ones(), face_name(f)));
    let names: Vec<String> = faces.iter().map(face_name).collect();
    let mut covers = Vec::new();
    for (i, &(ui, mi)) in faces.iter().enumerate() {
        for (j, &(uj, mj)) in faces.iter().enumerate() {
            let grows_by_one = uj.count_ones() == ui.count_ones() + 1 && ui & uj == ui;
            if grows_by_one && mj & ui == mi {
                covers.push((i as u32, j as u32));
            }
        }
    }
    let rank = faces.iter().map(|(u, _)| u.count_ones() - 1).collect();
    let poset = Poset::new(format!("b{n}_faces"), names, covers, Some(rank))?;
    Ok(order_complex(&poset)?.renamed(format!("coxeter_b{n}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn facet_count(x: &ComplexZ2) -> usize {
        x.n_cells(x.n_levels() - 1)
    }

    #[test]
    fn type_a_is_a_subdivided_sphere() {
        let a3 = coxeter_an(3).unwrap();
        assert_eq!(a3.f_vector(), vec![6, 6], "hexagon");
        let a4 = coxeter_an(4).unwrap();
        assert_eq!(a4.f_vector(), vec![14, 36, 24]);
        assert_eq!(facet_count(&a4), 24);
        let a5 = coxeter_an(5).unwrap();
        assert_eq!(facet_count(&a5), 120);
        // Euler characteristic of the 3-sphere's subdivision: 0.
        let chi: i64 = a5
            .f_vector()
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum();
        assert_eq!(chi, 0);
    }

    #[test]
    fn type_b_facets_and_small_cases() {
        let b2 = coxeter_bn(2).unwrap();
        assert_eq!(b2.f_vector(), vec![8, 8], "octagon");
        let b3 = coxeter_bn(3).unwrap();
        assert_eq!(b3.f_vector()[0], 26, "6 vertices + 12 edges + 8 triangles");
        assert_eq!(facet_count(&b3), 48);
        let chi: i64 = b3
            .f_vector()
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum();
        assert_eq!(chi, 2, "2-sphere");
    }

    #[test]
    fn every_ridge_of_type_b_lies_in_two_facets() {
        let b3 = coxeter_bn(3).unwrap();
        let top = b3.n_levels() - 1;
        let mut ridge_degree = vec![0usize; b3.n_cells(top - 1)];
        for c in 0..b3.n_cells(top) {
            for &r in b3.faces(top, c) {
                ridge_degree[r as usize] += 1;
            }
        }
        assert!(ridge_degree.iter().all(|&d| d == 2));
    }
}
