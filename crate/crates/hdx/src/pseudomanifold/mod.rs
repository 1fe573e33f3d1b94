//! Flip graphs of pure complexes and the diameter formula for
//! codimension-one expansion of pseudomanifolds.
//!
//! The flip graph has the top cells as vertices, with an edge whenever two
//! top cells share a codimension-one face (a ridge).  For a pseudomanifold
//! (every ridge in exactly two top cells, flip graph connected) whose
//! codimension-one cohomology vanishes, the top Cheeger constant equals
//! `2 / diameter` of the flip graph.
//!
//! Codimension-one cochains correspond bijectively to flip subgraphs; the
//! coboundary support is the set of odd-degree vertices.  A cochain whose
//! subgraph is a single geodesic path is a cosystole: coboundary subgraphs
//! are Eulerian, an Eulerian subgraph shares at most half of each of its
//! cycles with a geodesic, and such overlaps can only grow the weight.

mod coxeter_cochain;

pub use coxeter_cochain::{phi_n_cochain, CoxeterCochain};

use crate::complexes::ComplexZ2;
use crate::expansion::{cohomology_dim, Cochain, PairOperators};
use num_rational::Ratio;
use thiserror::Error;

/// Failure modes of flip-graph computations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PseudomanifoldError {
    /// A cell below the top dimension is not a face of any higher cell.
    #[error("not pure: cell {cell} of dimension {dim} lies in no higher cell")]
    NotPure { dim: usize, cell: usize },
    /// The diameter theorem's hypotheses do not hold.
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    /// A parameter is outside the supported range.
    #[error("{0}")]
    InvalidRange(String),
}

/// The flip graph of a pure complex: vertices are top cells, edges join top
/// cells sharing a ridge.
pub struct FlipGraph {
    n_vertices: usize,
    n_ridges: usize,
    /// Edges as (smaller top cell, larger top cell, shared ridge).
    edges: Vec<(u32, u32, u32)>,
    adj: Vec<Vec<u32>>,
    ridge_regular: bool,
    connected: bool,
}

/// Builds the flip graph, verifying that the complex is pure.
pub fn flip_graph(x: &ComplexZ2) -> Result<FlipGraph, PseudomanifoldError> {
    let levels = x.n_levels();
    if levels < 2 {
        return Err(PseudomanifoldError::HypothesisFailed(
            "flip graphs need dimension at least one".into(),
        ));
    }
    let top = levels - 1;
    for k in 0..top {
        let mut covered = vec![false; x.n_cells(k)];
        for i in 0..x.n_cells(k + 1) {
            for &f in x.faces(k + 1, i) {
                covered[f as usize] = true;
            }
        }
        if let Some(cell) = covered.iter().position(|&c| !c) {
            return Err(PseudomanifoldError::NotPure { dim: k, cell });
        }
    }
    let n_vertices = x.n_cells(top);
    let n_ridges = x.n_cells(top - 1);
    let mut ridge_tops: Vec<Vec<u32>> = vec![Vec::new(); n_ridges];
    for i in 0..n_vertices {
        for &r in x.faces(top, i) {
            ridge_tops[r as usize].push(i as u32);
        }
    }
    let ridge_regular = ridge_tops.iter().all(|t| t.len() == 2);
    let mut edges = Vec::new();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n_vertices];
    for (r, tops) in ridge_tops.iter().enumerate() {
        if let [a, b] = tops[..] {
            debug_assert_ne!(a, b, "a ridge occurs once per top cell");
            edges.push((a.min(b), a.max(b), r as u32));
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        debug_assert!(list.windows(2).all(|w| w[0] < w[1]), "simple graph");
    }
    let connected = n_vertices > 0 && {
        let mut seen = vec![false; n_vertices];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n_vertices
    };
    Ok(FlipGraph {
        n_vertices,
        n_ridges,
        edges,
        adj,
        ridge_regular,
        connected,
    })
}

impl FlipGraph {
    #[must_use]
    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Edges as (top cell, top cell, ridge) triples, sorted by ridge.
    #[must_use]
    pub fn edges(&self) -> &[(u32, u32, u32)] {
        &self.edges
    }

    /// Every ridge lies in exactly two top cells and the graph is connected.
    #[must_use]
    pub fn is_pseudomanifold(&self) -> bool {
        self.ridge_regular && self.connected
    }

    #[must_use]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    /// Breadth-first distances from `source`; `u32::MAX` marks unreachable
    /// vertices.
    #[must_use]
    pub fn distances_from(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n_vertices];
        let mut frontier = vec![source as u32];
        dist[source] = 0;
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &v in &frontier {
                for &w in &self.adj[v as usize] {
                    if dist[w as usize] == u32::MAX {
                        dist[w as usize] = d;
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    /// Exact diameter by breadth-first search from every vertex, in
    /// parallel; `None` when the graph is empty or disconnected.
    #[must_use]
    pub fn diameter(&self) -> Option<u32> {
        use rayon::prelude::*;
        if self.n_vertices == 0 || !self.connected {
            return None;
        }
        (0..self.n_vertices)
            .into_par_iter()
            .map(|v| self.distances_from(v).into_iter().max().unwrap_or(0))
            .max()
    }

    /// Edge list as text, one `top top ridge` triple per line.
    #[must_use]
    pub fn edge_list_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        for &(a, b, r) in &self.edges {
            writeln!(out, "{a} {b} {r}").expect("string write");
        }
        out
    }
}

/// The subgraph induced by a codimension-one cochain: the flip edges whose
/// shared ridge lies in the cochain's support.
pub struct FlipSubgraph {
    n_vertices: usize,
    edges: Vec<(u32, u32, u32)>,
}

/// Restricts the flip graph to the support of `phi`, which must be a
/// cochain on the ridges.
#[must_use]
pub fn cochain_flip_subgraph(g: &FlipGraph, phi: &Cochain) -> FlipSubgraph {
    assert_eq!(phi.bits().len(), g.n_ridges, "cochain does not live on the ridges");
    let edges = g
        .edges
        .iter()
        .copied()
        .filter(|&(_, _, r)| phi.bits().get(r as usize))
        .collect();
    FlipSubgraph {
        n_vertices: g.n_vertices,
        edges,
    }
}

impl FlipSubgraph {
    #[must_use]
    pub fn edges(&self) -> &[(u32, u32, u32)] {
        &self.edges
    }

    fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n_vertices];
        for &(a, b, _) in &self.edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        deg
    }

    /// Vertices of odd degree, sorted.  These are exactly the top cells in
    /// the coboundary support of the defining cochain.
    #[must_use]
    pub fn odd_vertices(&self) -> Vec<usize> {
        self.degrees()
            .into_iter()
            .enumerate()
            .filter(|&(_, d)| d % 2 == 1)
            .map(|(v, _)| v)
            .collect()
    }

    /// Whether the edge set is acyclic.
    #[must_use]
    pub fn is_forest(&self) -> bool {
        let mut parent: Vec<u32> = (0..self.n_vertices as u32).collect();
        fn find(parent: &mut [u32], v: u32) -> u32 {
            let p = parent[v as usize];
            if p == v {
                return v;
            }
            let root = find(parent, p);
            parent[v as usize] = root;
            root
        }
        for &(a, b, _) in &self.edges {
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            if ra == rb {
                return false;
            }
            parent[ra as usize] = rb;
        }
        true
    }

    /// If the edge set forms one simple path, returns its endpoints and
    /// length.
    #[must_use]
    pub fn as_single_path(&self) -> Option<(u32, u32, usize)> {
        if self.edges.is_empty() {
            return None;
        }
        let deg = self.degrees();
        let odd: Vec<u32> = (0..self.n_vertices as u32)
            .filter(|&v| deg[v as usize] % 2 == 1)
            .collect();
        let all_low = deg.iter().all(|&d| d <= 2);
        if !all_low || odd.len() != 2 || !self.is_forest() {
            return None;
        }
        // A forest with max degree 2 and two odd vertices is a single path
        // plus isolated vertices iff the edge count matches one component.
        let touched = deg.iter().filter(|&&d| d > 0).count();
        if touched != self.edges.len() + 1 {
            return None;
        }
        Some((odd[0], odd[1], self.edges.len()))
    }
}

/// Certifies that a codimension-one cochain is a cosystole because its flip
/// subgraph is a single path whose endpoints realize its length as their
/// graph distance.
///
/// Coboundary subgraphs are Eulerian, and an Eulerian subgraph meets a
/// geodesic path in at most half of each of its cycles, so adding any
/// coboundary cannot decrease the weight.  This is sufficient, not
/// necessary; `false` means the certificate does not apply.
#[must_use]
pub fn geodesic_path_certificate(g: &FlipGraph, phi: &Cochain) -> bool {
    let sub = cochain_flip_subgraph(g, phi);
    let Some((u, v, len)) = sub.as_single_path() else {
        return false;
    };
    g.distances_from(u as usize)[v as usize] as usize == len
}

/// The value of the diameter formula for the top Cheeger constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiameterCheeger {
    /// `2 / diameter`, the exact codimension-one Cheeger constant.
    pub value: Ratio<u64>,
    pub diameter: u32,
}

/// Evaluates the top Cheeger constant of a pseudomanifold as
/// `2 / diameter` of its flip graph.
///
/// Requires an augmented complex that is a pseudomanifold and has vanishing
/// codimension-one cohomology (checked by rank).  Closed manifolds with
/// nonzero codimension-one cohomology, such as a torus, are rejected.
pub fn cheeger_top_via_diameter(x: &ComplexZ2) -> Result<DiameterCheeger, PseudomanifoldError> {
    let g = flip_graph(x)?;
    if !g.ridge_regular {
        return Err(PseudomanifoldError::HypothesisFailed(
            "some ridge does not lie in exactly two top cells".into(),
        ));
    }
    if !g.connected {
        return Err(PseudomanifoldError::HypothesisFailed(
            "the flip graph is not connected".into(),
        ));
    }
    let codim = x.n_levels() - 2;
    let ops = PairOperators::absolute(x);
    let h = cohomology_dim(&ops, codim);
    if h != 0 {
        return Err(PseudomanifoldError::HypothesisFailed(format!(
            "cohomology in dimension {codim} has rank {h}"
        )));
    }
    let diameter = g.diameter().expect("connected graph has a diameter");
    debug_assert!(diameter >= 1, "a pseudomanifold has at least two top cells");
    Ok(DiameterCheeger {
        value: Ratio::new(2, u64::from(diameter)),
        diameter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{coxeter_an, coxeter_bn, simplicial_complex};
    use crate::expansion::{cheeger_co, cosystolic_norm};
    use rand::{Rng, SeedableRng};

    fn boundary_tetrahedron() -> ComplexZ2 {
        simplicial_complex(
            "boundary_tetra",
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap()
    }

    fn moebius_torus() -> ComplexZ2 {
        let mut facets = Vec::new();
        for i in 0..7u32 {
            facets.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            facets.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        simplicial_complex("torus_7", &facets).unwrap()
    }

    #[test]
    fn boundary_simplex_flip_graph_is_complete() {
        let x = boundary_tetrahedron();
        let g = flip_graph(&x).unwrap();
        assert_eq!(g.n_vertices(), 4);
        assert_eq!(g.edges().len(), 6);
        assert!(g.is_pseudomanifold());
        assert_eq!(g.diameter(), Some(1));
        let result = cheeger_top_via_diameter(&x).unwrap();
        assert_eq!(result.value, Ratio::new(2, 1));
        // Cross-check against the exact sweep.
        let ops = PairOperators::absolute(&x);
        let exact = cheeger_co(&ops, 1, 1 << 20).unwrap();
        assert_eq!(exact.value, result.value);
    }

    #[test]
    fn octagon_flip_graph_is_an_eight_cycle() {
        let x = coxeter_bn(2).unwrap();
        let g = flip_graph(&x).unwrap();
        assert_eq!(g.n_vertices(), 8);
        assert_eq!(g.edges().len(), 8);
        assert!(g.neighbors(0).len() == 2 && g.is_pseudomanifold());
        assert_eq!(g.diameter(), Some(4));
        let result = cheeger_top_via_diameter(&x).unwrap();
        assert_eq!(result.value, Ratio::new(1, 2));
        let ops = PairOperators::absolute(&x);
        let exact = cheeger_co(&ops, 0, 1 << 20).unwrap();
        assert_eq!(exact.value, result.value);
    }

    #[test]
    fn coxeter_a4_has_diameter_six() {
        let x = coxeter_an(4).unwrap();
        let g = flip_graph(&x).unwrap();
        assert_eq!(g.n_vertices(), 24);
        assert!(g.is_pseudomanifold());
        assert_eq!(g.diameter(), Some(6));
        assert_eq!(
            cheeger_top_via_diameter(&x).unwrap().value,
            Ratio::new(1, 3)
        );
    }

    #[test]
    fn impure_complexes_are_rejected() {
        let x = simplicial_complex("mixed", &[vec![0, 1, 2], vec![3, 4]]).unwrap();
        assert!(matches!(
            flip_graph(&x),
            Err(PseudomanifoldError::NotPure { dim: 1, .. })
        ));
    }

    #[test]
    fn glued_triangles_fail_ridge_regularity() {
        let x = simplicial_complex("disk", &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let g = flip_graph(&x).unwrap();
        assert!(!g.is_pseudomanifold());
        assert!(matches!(
            cheeger_top_via_diameter(&x),
            Err(PseudomanifoldError::HypothesisFailed(_))
        ));
    }

    #[test]
    fn torus_cohomology_blocks_the_diameter_formula() {
        let x = moebius_torus();
        let g = flip_graph(&x).unwrap();
        assert!(g.is_pseudomanifold());
        let err = cheeger_top_via_diameter(&x).err().unwrap();
        assert_eq!(
            err,
            PseudomanifoldError::HypothesisFailed("cohomology in dimension 1 has rank 2".into())
        );
    }

    #[test]
    fn subgraph_parity_matches_the_coboundary() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for x in [boundary_tetrahedron(), coxeter_bn(2).unwrap(), moebius_torus()] {
            let g = flip_graph(&x).unwrap();
            let ops = PairOperators::absolute(&x);
            let codim = x.n_levels() - 2;
            for _ in 0..1000 {
                let support: Vec<usize> =
                    (0..ops.n_free(codim)).filter(|_| rng.random::<bool>()).collect();
                let phi = Cochain::from_support(&ops, codim, &support);
                let sub = cochain_flip_subgraph(&g, &phi);
                assert_eq!(sub.odd_vertices(), ops.coboundary(&phi).support());
            }
        }
    }

    #[test]
    fn single_ridge_gives_one_edge_with_two_odd_ends() {
        let x = boundary_tetrahedron();
        let g = flip_graph(&x).unwrap();
        let ops = PairOperators::absolute(&x);
        let phi = Cochain::from_support(&ops, 1, &[0]);
        let sub = cochain_flip_subgraph(&g, &phi);
        assert_eq!(sub.edges().len(), 1);
        assert_eq!(sub.odd_vertices().len(), 2);
        assert_eq!(ops.coboundary(&phi).weight(), 2);
    }

    #[test]
    fn full_cochain_on_boundary_tetrahedron_is_odd_everywhere() {
        let x = boundary_tetrahedron();
        let g = flip_graph(&x).unwrap();
        let ops = PairOperators::absolute(&x);
        let all: Vec<usize> = (0..ops.n_free(1)).collect();
        let phi = Cochain::from_support(&ops, 1, &all);
        let sub = cochain_flip_subgraph(&g, &phi);
        assert_eq!(sub.edges().len(), 6);
        assert_eq!(sub.odd_vertices(), vec![0, 1, 2, 3]);
        assert_eq!(ops.coboundary(&phi).weight(), 4);
    }

    #[test]
    fn geodesic_paths_are_certified_and_match_the_exact_norm() {
        // Three consecutive ridges of the octagon form a geodesic path.
        let x = coxeter_bn(2).unwrap();
        let g = flip_graph(&x).unwrap();
        let ops = PairOperators::absolute(&x);
        // Walk the cycle to find three consecutive flip edges.
        let start = 0u32;
        let mut path_ridges = Vec::new();
        let mut prev = start;
        let mut cur = g.neighbors(0)[0];
        path_ridges.push(ridge_between(&g, start, cur));
        for _ in 0..2 {
            let next = *g
                .neighbors(cur as usize)
                .iter()
                .find(|&&w| w != prev)
                .unwrap();
            path_ridges.push(ridge_between(&g, cur, next));
            prev = cur;
            cur = next;
        }
        let phi = Cochain::from_support(&ops, 0, &path_ridges);
        assert!(geodesic_path_certificate(&g, &phi));
        let (csy, _) = cosystolic_norm(&ops, &phi, 1 << 20).unwrap();
        assert_eq!(csy, 3, "a certified path is a cosystole");
        // Five consecutive ridges exceed the diameter: no certificate, and
        // indeed not a cosystole (the complementary three ridges are closer).
        let mut five = path_ridges.clone();
        let mut p = prev;
        let mut c = cur;
        for _ in 0..2 {
            let next = *g.neighbors(c as usize).iter().find(|&&w| w != p).unwrap();
            five.push(ridge_between(&g, c, next));
            p = c;
            c = next;
        }
        let phi5 = Cochain::from_support(&ops, 0, &five);
        assert!(!geodesic_path_certificate(&g, &phi5));
        let (csy5, _) = cosystolic_norm(&ops, &phi5, 1 << 20).unwrap();
        assert_eq!(csy5, 3);
    }

    fn ridge_between(g: &FlipGraph, a: u32, b: u32) -> usize {
        g.edges()
            .iter()
            .find(|&&(x, y, _)| (x, y) == (a.min(b), a.max(b)))
            .map(|&(_, _, r)| r as usize)
            .expect("adjacent top cells share a ridge")
    }

    #[test]
    fn verified_cosystoles_have_forest_subgraphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for x in [boundary_tetrahedron(), coxeter_bn(2).unwrap()] {
            let g = flip_graph(&x).unwrap();
            let ops = PairOperators::absolute(&x);
            let codim = x.n_levels() - 2;
            for _ in 0..50 {
                let support: Vec<usize> =
                    (0..ops.n_free(codim)).filter(|_| rng.random::<bool>()).collect();
                let phi = Cochain::from_support(&ops, codim, &support);
                let (csy, _) = cosystolic_norm(&ops, &phi, 1 << 20).unwrap();
                if csy == phi.weight() && csy > 0 {
                    let sub = cochain_flip_subgraph(&g, &phi);
                    assert!(sub.is_forest(), "cosystole subgraph must be acyclic");
                }
            }
        }
    }

    #[test]
    fn edge_list_export_is_stable() {
        let x = boundary_tetrahedron();
        let g = flip_graph(&x).unwrap();
        let text = g.edge_list_text();
        assert_eq!(text.lines().count(), 6);
        assert!(text.lines().all(|l| l.split_whitespace().count() == 3));
    }
}
