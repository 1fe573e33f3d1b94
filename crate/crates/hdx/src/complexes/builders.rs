//! Builders for the standard complex families.

use super::{CellLabel, ComplexError, ComplexZ2, CubeSym};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashSet};

fn subsets_of_size(n: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::with_capacity(k);
    fn rec(n: u32, k: usize, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let remaining = k - cur.len();
        for v in start..=n.saturating_sub(remaining as u32) {
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// Simplicial complex generated by the given simplices (closed downward).
pub fn simplicial_complex(
    name: impl Into<String>,
    generators: &[Vec<u32>],
) -> Result<ComplexZ2, ComplexError> {
    let mut by_dim: Vec<BTreeSet<Vec<u32>>> = Vec::new();
    let mut stack: Vec<Vec<u32>> = Vec::new();
    for g in generators {
        let mut s = g.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() != g.len() {
            return Err(ComplexError::InvalidRange(format!(
                "generator {g:?} has repeated vertices"
            )));
        }
        if !s.is_empty() {
            stack.push(s);
        }
    }
    while let Some(s) = stack.pop() {
        let d = s.len() - 1;
        if by_dim.len() <= d {
            by_dim.resize_with(d + 1, BTreeSet::new);
        }
        if !by_dim[d].insert(s.clone()) {
            continue;
        }
        if d > 0 {
            for drop in 0..s.len() {
                let mut face = s.clone();
                face.remove(drop);
                stack.push(face);
            }
        }
    }
    let cells: Vec<Vec<CellLabel>> = by_dim
        .iter()
        .map(|set| set.iter().map(|s| CellLabel::Simplex(s.clone())).collect())
        .collect();
    let boundary = simplex_boundaries(&cells);
    ComplexZ2::from_parts(name, cells, boundary, true)
}

fn simplex_boundaries(cells: &[Vec<CellLabel>]) -> Vec<Vec<Vec<u32>>> {
    let mut boundary: Vec<Vec<Vec<u32>>> = Vec::with_capacity(cells.len());
    for (k, layer) in cells.iter().enumerate() {
        let mut rows = Vec::with_capacity(layer.len());
        for label in layer {
            let CellLabel::Simplex(s) = label else {
                unreachable!("simplicial builder produced a non-simplex label")
            };
            let mut faces: Vec<u32> = Vec::new();
            if k > 0 {
                for drop in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(drop);
                    let idx = cells[k - 1]
                        .binary_search(&CellLabel::Simplex(f))
                        .expect("face of a listed simplex must be listed");
                    faces.push(idx as u32);
                }
                faces.sort_unstable();
            }
            rows.push(faces);
        }
        boundary.push(rows);
    }
    boundary
}

/// The k-skeleton of the full simplex on `n` vertices; `k = n - 1` gives the
/// solid simplex including its top cell.
pub fn simplex_skeleton(n: u32, k: usize) -> Result<ComplexZ2, ComplexError> {
    if n == 0 || n > 24 || k >= n as usize {
        return Err(ComplexError::InvalidRange(format!(
            "simplex skeleton needs 1 <= n <= 24 and k < n; got n={n}, k={k}"
        )));
    }
    let facets = subsets_of_size(n, k + 1);
    simplicial_complex(format!("simplex_n{n}_k{k}"), &facets)
}

/// The solid cube complex: cells are words over `{-,+,*}` of length `d`, a
/// cell's dimension is its number of stars, and each star splits into the
/// `-`/`+` pair of facets.
pub fn hypercube(d: usize) -> Result<ComplexZ2, ComplexError> {
    if d == 0 || d > 10 {
        return Err(ComplexError::InvalidRange(format!(
            "hypercube needs 1 <= d <= 10; got d={d}"
        )));
    }
    let mut cells: Vec<Vec<CellLabel>> = vec![Vec::new(); d + 1];
    let mut word = vec![CubeSym::Minus; d];
    fn rec(i: usize, d: usize, word: &mut Vec<CubeSym>, cells: &mut [Vec<CellLabel>]) {
        if i == d {
            let stars = word.iter().filter(|&&s| s == CubeSym::Star).count();
            cells[stars].push(CellLabel::Cube(word.clone()));
            return;
        }
        for s in [CubeSym::Minus, CubeSym::Plus, CubeSym::Star] {
            word[i] = s;
            rec(i + 1, d, word, cells);
        }
    }
    rec(0, d, &mut word, &mut cells);
    for layer in &mut cells {
        layer.sort();
    }
    let mut boundary: Vec<Vec<Vec<u32>>> = Vec::with_capacity(d + 1);
    for (k, layer) in cells.iter().enumerate() {
        let mut rows = Vec::with_capacity(layer.len());
        for label in layer {
            let CellLabel::Cube(w) = label else { unreachable!() };
            let mut faces: Vec<u32> = Vec::new();
            if k > 0 {
                for (pos, &sym) in w.iter().enumerate() {
                    if sym != CubeSym::Star {
                        continue;
                    }
                    for replacement in [CubeSym::Minus, CubeSym::Plus] {
                        let mut f = w.clone();
                        f[pos] = replacement;
                        let idx = cells[k - 1]
                            .binary_search(&CellLabel::Cube(f))
                            .expect("cube facet must be listed");
                        faces.push(idx as u32);
                    }
                }
                faces.sort_unstable();
            }
            rows.push(faces);
        }
        boundary.push(rows);
    }
    ComplexZ2::from_parts(format!("hypercube_d{d}"), cells, boundary, true)
}

/// Product of `x` with the solid simplex on `n` vertices. Cells are pairs
/// `(alpha, beta)`; the boundary follows the Leibniz rule over GF(2).
pub fn product_with_simplex(x: &ComplexZ2, n: u32) -> Result<ComplexZ2, ComplexError> {
    if !(2..=12).contains(&n) {
        return Err(ComplexError::InvalidRange(format!(
            "product factor needs 2 <= n <= 12; got n={n}"
        )));
    }
    if x.is_void() || x.n_levels() == 0 {
        return Err(ComplexError::InvalidRange(
            "product needs a left factor with at least one cell".into(),
        ));
    }
    let top = x.n_levels() - 1 + (n as usize - 1);
    let mut cells: Vec<Vec<CellLabel>> = vec![Vec::new(); top + 1];
    for i in 0..x.n_levels() {
        for alpha in x.labels(i) {
            for j in 0..n as usize {
                for beta in subsets_of_size(n, j + 1) {
                    cells[i + j].push(CellLabel::Product(
                        Box::new(alpha.clone()),
                        Box::new(CellLabel::Simplex(beta)),
                    ));
                }
            }
        }
    }
    for layer in &mut cells {
        layer.sort();
    }
    let mut boundary: Vec<Vec<Vec<u32>>> = Vec::with_capacity(cells.len());
    for (k, layer) in cells.iter().enumerate() {
        let mut rows = Vec::with_capacity(layer.len());
        for label in layer {
            let CellLabel::Product(alpha, beta) = label else { unreachable!() };
            let CellLabel::Simplex(bverts) = beta.as_ref() else { unreachable!() };
            let mut faces: Vec<u32> = Vec::new();
            if k > 0 {
                let i = alpha.dim();
                if i > 0 {
                    let ai = x.index_of(i, alpha).expect("left factor cell must exist");
                    for &f in x.faces(i, ai) {
                        let face = CellLabel::Product(
                            Box::new(x.label(i - 1, f as usize).clone()),
                            beta.clone(),
                        );
                        faces.push(cells[k - 1].binary_search(&face).unwrap() as u32);
                    }
                }
                if bverts.len() > 1 {
                    for drop in 0..bverts.len() {
                        let mut bf = bverts.clone();
                        bf.remove(drop);
                        let face = CellLabel::Product(
                            alpha.clone(),
                            Box::new(CellLabel::Simplex(bf)),
                        );
                        faces.push(cells[k - 1].binary_search(&face).unwrap() as u32);
                    }
                }
                faces.sort_unstable();
            }
            rows.push(faces);
        }
        boundary.push(rows);
    }
    ComplexZ2::from_parts(
        format!("{}_x_simplex{n}", x.name()),
        cells,
        boundary,
        x.is_augmented(),
    )
}

/// Complement dual on the ground set `[n]`: the complex whose cells are the
/// subsets whose complement is absent from `x`. Dualizing twice returns `x`.
pub fn alexander_dual(x: &ComplexZ2, n: u32) -> Result<ComplexZ2, ComplexError> {
    if n == 0 || n > 20 {
        return Err(ComplexError::InvalidRange(format!(
            "dual ground set needs 1 <= n <= 20; got n={n}"
        )));
    }
    let mut present: HashSet<Vec<u32>> = HashSet::new();
    for k in 0..x.n_levels() {
        for label in x.labels(k) {
            let CellLabel::Simplex(s) = label else {
                return Err(ComplexError::NotSimplicial(format!(
                    "cell {label} is not a simplex"
                )));
            };
            if s.iter().any(|&v| v >= n) {
                return Err(ComplexError::NotSimplicial(format!(
                    "cell {label} uses a vertex outside 0..{n}"
                )));
            }
            present.insert(s.clone());
        }
    }
    let x_nonvoid = !x.is_void();
    let in_x = |s: &[u32]| -> bool {
        if s.is_empty() {
            x_nonvoid
        } else {
            present.contains(s)
        }
    };
    let name = format!("dual_{}", x.name());
    let mut by_dim: Vec<Vec<CellLabel>> = Vec::new();
    let mut dual_has_empty = false;
    for mask in 0u32..(1 << n) {
        let subset: Vec<u32> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let complement: Vec<u32> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
        if in_x(&complement) {
            continue;
        }
        if subset.is_empty() {
            dual_has_empty = true;
            continue;
        }
        let d = subset.len() - 1;
        if by_dim.len() <= d {
            by_dim.resize_with(d + 1, Vec::new);
        }
        by_dim[d].push(CellLabel::Simplex(subset));
    }
    if by_dim.is_empty() {
        return Ok(if dual_has_empty {
            ComplexZ2::empty_complex(name)
        } else {
            ComplexZ2::void_complex(name)
        });
    }
    debug_assert!(dual_has_empty, "a complex with cells must contain the augmentation cell");
    for layer in &mut by_dim {
        layer.sort();
    }
    let boundary = simplex_boundaries(&by_dim);
    ComplexZ2::from_parts(name, by_dim, boundary, true)
}

/// Random 2-complex with full 1-skeleton: each of the `C(n,3)` triangles is
/// kept with independent probability `p`, in lexicographic draw order.
pub fn random_ynp(n: u32, p: f64, seed: u64) -> Result<ComplexZ2, ComplexError> {
    if !(3..=60).contains(&n) || !(0.0..=1.0).contains(&p) {
        return Err(ComplexError::InvalidRange(format!(
            "random 2-complex needs 3 <= n <= 60 and p in [0,1]; got n={n}, p={p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut generators = subsets_of_size(n, 2);
    for tri in subsets_of_size(n, 3) {
        if rng.random::<f64>() < p {
            generators.push(tri);
        }
    }
    simplicial_complex(format!("ynp_n{n}_seed{seed}"), &generators)
}

/// Seeded random subcomplex of the solid simplex on `n` vertices, never
/// containing the top cell. Used as a test-bed for duality checks.
pub fn random_subcomplex_of_simplex(n: u32, seed: u64) -> Result<ComplexZ2, ComplexError> {
    if !(2..=12).contains(&n) {
        return Err(ComplexError::InvalidRange(format!(
            "random subcomplex needs 2 <= n <= 12; got n={n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut generators: Vec<Vec<u32>> = subsets_of_size(n, 1);
    for size in 2..n as usize {
        let keep = rng.random_range(0.2..0.8);
        for s in subsets_of_size(n, size) {
            if rng.random::<f64>() < keep {
                generators.push(s);
            }
        }
    }
    simplicial_complex(format!("rand_sub_n{n}_seed{seed}"), &generators)
}
