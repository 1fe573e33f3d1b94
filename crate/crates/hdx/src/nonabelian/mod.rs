//! Cochains valued in a finite, possibly non-abelian group.
//!
//! A 1-cochain assigns a group element to each ordered edge, inverse under
//! orientation reversal.  Vertex maps act by `psi(u) phi(u,v) psi(v)^-1`;
//! cocycles (triangle products equal to the identity) form an invariant
//! set, and degree-one cohomology is the orbit set of cocycles under that
//! action.  After gauging a spanning tree to the identity the residual
//! action is conjugation by a single constant, which reduces orbit counting
//! to a finite, budgeted enumeration.  For complexes containing the full
//! 1-skeleton the same set is counted through a presentation of the
//! fundamental group (one generator per basepoint-avoiding edge, with
//! edge-inversion, basepoint-triangle, and triangle-product relations); the
//! two counts must agree and the agreement is tested, not assumed.

mod experiment;
mod group;

pub use experiment::{
    homology_threshold_sweep, quotient_experiment, simple_group_inventory, GroupOutcome,
    QuotientReport,
};
pub use group::{FiniteGroup, GROUP_ORDER_CAP};

use crate::complexes::{CellLabel, ComplexZ2};
use thiserror::Error;

/// Failure modes of group-valued cochain computations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum NonAbError {
    /// An exhaustive enumeration would visit more assignments than allowed.
    #[error("enumeration of {needed} assignments exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    /// The 1-skeleton does not support the requested computation.
    #[error("invalid host: {0}")]
    InvalidHost(String),
    /// A group constructor received invalid data.
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    /// An experiment parameter is out of range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// Generator closure exceeded its cap.
    #[error("group closure exceeded the cap of {cap} elements")]
    ClosureExceeded { cap: usize },
}

/// Largest admitted vertex count for hosts.
pub const HOST_VERTEX_CAP: usize = 64;

/// The 1- and 2-skeleton data a group-valued cochain lives on: a vertex
/// set, an edge list (sorted pairs), and a triangle list.
pub struct Host {
    n_vertices: usize,
    edges: Vec<(u32, u32)>,
    pair: Vec<usize>,
    triangles: Vec<[u32; 3]>,
    tri_edges: Vec<[usize; 3]>,
}

impl Host {
    /// The complete 2-skeleton on `n` vertices.
    pub fn complete(n: usize) -> Result<Host, NonAbError> {
        let triangles: Vec<[u32; 3]> = sorted_triples(n);
        Self::with_triangles(n, &triangles)
    }

    /// The complete 1-skeleton on `n` vertices together with the given
    /// triangles (each strictly sorted).
    pub fn with_triangles(n: usize, triangles: &[[u32; 3]]) -> Result<Host, NonAbError> {
        if !(2..=HOST_VERTEX_CAP).contains(&n) {
            return Err(NonAbError::InvalidHost(format!(
                "vertex count must be in 2..={HOST_VERTEX_CAP}; got {n}"
            )));
        }
        let mut edges = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        let mut sorted: Vec<[u32; 3]> = triangles.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for t in &sorted {
            if !(t[0] < t[1] && t[1] < t[2] && (t[2] as usize) < n) {
                return Err(NonAbError::InvalidHost(format!(
                    "triangle {t:?} is not a sorted triple of vertices below {n}"
                )));
            }
        }
        Ok(Self::assemble(n, edges, sorted))
    }

    /// Extracts the skeleton of a complex whose vertices are labeled by the
    /// consecutive integers starting at zero.
    pub fn from_complex(x: &ComplexZ2) -> Result<Host, NonAbError> {
        let n = x.n_cells(0);
        if !(2..=HOST_VERTEX_CAP).contains(&n) {
            return Err(NonAbError::InvalidHost(format!(
                "vertex count must be in 2..={HOST_VERTEX_CAP}; got {n}"
            )));
        }
        let vertex = |label: &CellLabel| -> Result<Vec<u32>, NonAbError> {
            if let CellLabel::Simplex(v) = label {
                Ok(v.clone())
            } else {
                Err(NonAbError::InvalidHost(
                    "hosts need simplex-labeled cells".into(),
                ))
            }
        };
        for i in 0..n {
            let v = vertex(x.label(0, i))?;
            if v.len() != 1 || v[0] as usize != i {
                return Err(NonAbError::InvalidHost(
                    "vertices must be labeled 0..n in order".into(),
                ));
            }
        }
        let mut edges = Vec::with_capacity(x.n_cells(1));
        for i in 0..x.n_cells(1) {
            let v = vertex(x.label(1, i))?;
            edges.push((v[0], v[1]));
        }
        let mut triangles = Vec::with_capacity(x.n_cells(2));
        for i in 0..x.n_cells(2) {
            let v = vertex(x.label(2, i))?;
            triangles.push([v[0], v[1], v[2]]);
        }
        Ok(Self::assemble(n, edges, triangles))
    }

    fn assemble(n: usize, edges: Vec<(u32, u32)>, triangles: Vec<[u32; 3]>) -> Host {
        let mut pair = vec![usize::MAX; n * n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            pair[u as usize * n + v as usize] = i;
            pair[v as usize * n + u as usize] = i;
        }
        let tri_edges = triangles
            .iter()
            .map(|&[u, v, w]| {
                let id = |a: u32, b: u32| pair[a as usize * n + b as usize];
                [id(u, v), id(v, w), id(u, w)]
            })
            .collect();
        Host {
            n_vertices: n,
            edges,
            pair,
            triangles,
            tri_edges,
        }
    }

    #[must_use]
    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    #[must_use]
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    #[must_use]
    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }

    fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let id = self.pair[u * self.n_vertices + v];
        (id != usize::MAX).then_some(id)
    }

    fn has_complete_skeleton(&self) -> bool {
        self.edges.len() == self.n_vertices * (self.n_vertices - 1) / 2
    }
}

fn sorted_triples(n: usize) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            for w in v + 1..n as u32 {
                out.push([u, v, w]);
            }
        }
    }
    out
}

/// A group-valued 1-cochain: one element index per host edge, stored for
/// the low-to-high orientation; the reverse orientation is the inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonAbCochain1 {
    values: Vec<u16>,
}

impl NonAbCochain1 {
    /// The constant identity cochain.
    #[must_use]
    pub fn identity(host: &Host) -> Self {
        NonAbCochain1 {
            values: vec![0; host.edges.len()],
        }
    }

    /// Builds a cochain from `(u, v, element)` triples; unspecified edges
    /// stay at the identity, and a triple with `u > v` stores the inverse.
    pub fn from_edge_values(
        host: &Host,
        g: &FiniteGroup,
        entries: &[(u32, u32, usize)],
    ) -> Result<Self, NonAbError> {
        let mut phi = Self::identity(host);
        for &(u, v, val) in entries {
            if val >= g.order() {
                return Err(NonAbError::InvalidGroup(format!(
                    "element index {val} out of range for {}",
                    g.name()
                )));
            }
            let id = host
                .edge_id(u as usize, v as usize)
                .ok_or_else(|| NonAbError::InvalidHost(format!("no edge ({u}, {v})")))?;
            phi.values[id] = if u < v { val as u16 } else { g.inv(val) as u16 };
        }
        Ok(phi)
    }

    /// The value on the ordered edge `(u, v)`.
    #[must_use]
    pub fn value(&self, host: &Host, g: &FiniteGroup, u: usize, v: usize) -> usize {
        let id = host.edge_id(u, v).expect("edge present");
        let stored = usize::from(self.values[id]);
        if u < v {
            stored
        } else {
            g.inv(stored)
        }
    }

    /// Number of edges carrying a non-identity value.
    #[must_use]
    pub fn norm(&self) -> usize {
        self.values.iter().filter(|&&v| v != 0).count()
    }
}

/// The coboundary value on each host triangle `(u, v, w)`:
/// `phi(u,v) phi(v,w) phi(w,u)`.
#[must_use]
pub fn d1(host: &Host, g: &FiniteGroup, phi: &NonAbCochain1) -> Vec<usize> {
    host.tri_edges
        .iter()
        .map(|&[uv, vw, uw]| {
            let a = usize::from(phi.values[uv]);
            let b = usize::from(phi.values[vw]);
            let c = usize::from(phi.values[uw]);
            g.mul(g.mul(a, b), g.inv(c))
        })
        .collect()
}

/// Number of triangles with a non-identity coboundary value.
#[must_use]
pub fn d1_norm(host: &Host, g: &FiniteGroup, phi: &NonAbCochain1) -> usize {
    d1(host, g, phi).into_iter().filter(|&v| v != 0).count()
}

/// Whether every triangle coboundary value is the identity.
#[must_use]
pub fn is_cocycle(host: &Host, g: &FiniteGroup, phi: &NonAbCochain1) -> bool {
    d1(host, g, phi).into_iter().all(|v| v == 0)
}

/// The action of a vertex map: `(psi.phi)(u,v) = psi(u) phi(u,v) psi(v)^-1`.
#[must_use]
pub fn act(host: &Host, g: &FiniteGroup, psi: &[usize], phi: &NonAbCochain1) -> NonAbCochain1 {
    assert_eq!(psi.len(), host.n_vertices, "one group element per vertex");
    let values = host
        .edges
        .iter()
        .zip(&phi.values)
        .map(|(&(u, v), &val)| {
            g.mul(g.mul(psi[u as usize], usize::from(val)), g.inv(psi[v as usize])) as u16
        })
        .collect();
    NonAbCochain1 { values }
}

/// A spanning tree of the host as (parent-oriented) edge ids, found by
/// breadth-first search from vertex 0; errors when the 1-skeleton is
/// disconnected.
fn spanning_tree(host: &Host) -> Result<Vec<bool>, NonAbError> {
    let n = host.n_vertices;
    let mut adjacent: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(u, v)) in host.edges.iter().enumerate() {
        adjacent[u as usize].push((v as usize, id));
        adjacent[v as usize].push((u as usize, id));
    }
    let mut in_tree = vec![false; host.edges.len()];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        for &(v, id) in &adjacent[u] {
            if !seen[v] {
                seen[v] = true;
                in_tree[id] = true;
                reached += 1;
                queue.push_back(v);
            }
        }
    }
    if reached != n {
        return Err(NonAbError::InvalidHost(
            "the 1-skeleton is disconnected".into(),
        ));
    }
    Ok(in_tree)
}

/// A vertex map sending `phi` to a cochain that is the identity on a
/// breadth-first spanning tree, by propagating values from vertex 0.
pub fn tree_gauge(
    host: &Host,
    g: &FiniteGroup,
    phi: &NonAbCochain1,
) -> Result<Vec<usize>, NonAbError> {
    let n = host.n_vertices;
    let mut adjacent: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &host.edges {
        adjacent[u as usize].push(v as usize);
        adjacent[v as usize].push(u as usize);
    }
    let mut psi = vec![usize::MAX; n];
    psi[0] = g.identity();
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &v in &adjacent[u] {
            if psi[v] == usize::MAX {
                // Choosing psi(v) = psi(u) phi(u,v) makes the gauged value
                // psi(u) phi(u,v) psi(v)^-1 collapse to the identity.
                psi[v] = g.mul(psi[u], phi.value(host, g, u, v));
                queue.push_back(v);
            }
        }
    }
    if psi.contains(&usize::MAX) {
        return Err(NonAbError::InvalidHost(
            "the 1-skeleton is disconnected".into(),
        ));
    }
    Ok(psi)
}

fn checked_power(base: usize, exp: usize, budget: u64) -> Result<u128, NonAbError> {
    let needed = (base as u128)
        .checked_pow(exp as u32)
        .unwrap_or(u128::MAX);
    if needed > u128::from(budget) {
        return Err(NonAbError::BudgetExceeded { needed, budget });
    }
    Ok(needed)
}

/// Exact cosystolic norm: the minimum support size of `psi.phi` over every
/// vertex map `psi`, enumerated as a constant times a map fixing vertex 0.
pub fn nonab_csy(
    host: &Host,
    g: &FiniteGroup,
    phi: &NonAbCochain1,
    budget: u64,
) -> Result<usize, NonAbError> {
    let n = host.n_vertices;
    checked_power(g.order(), n - 1, budget)?;
    let order = g.order();
    let mut gauge = vec![0usize; n];
    let mut best = phi.norm();
    loop {
        // Minimize over every composition of a constant with the gauged map;
        // this walks the full vertex-map space without assuming that
        // constants preserve the support.
        for c in 0..order {
            let mut weight = 0;
            for (&(u, v), &val) in host.edges.iter().zip(&phi.values) {
                let left = g.mul(c, gauge[u as usize]);
                let right = g.mul(c, gauge[v as usize]);
                if g.mul(g.mul(left, usize::from(val)), g.inv(right)) != 0 {
                    weight += 1;
                }
            }
            best = best.min(weight);
        }
        if best == 0 {
            return Ok(0);
        }
        // Odometer over the non-basepoint vertices.
        let mut pos = 1;
        while pos < n {
            gauge[pos] += 1;
            if gauge[pos] < order {
                break;
            }
            gauge[pos] = 0;
            pos += 1;
        }
        if pos == n {
            return Ok(best);
        }
    }
}

/// Slots of a triangle constraint `value(a) value(b) value(c)^-1 == 1`:
/// either an enumeration variable or a value pinned to the identity.
#[derive(Clone, Copy)]
enum Slot {
    Var(usize),
    Id,
}

/// Enumerates assignments of `n_vars` group elements satisfying all
/// triangle constraints, invoking `visit` on each solution in
/// lexicographic order.  Constraints are checked as soon as their last
/// variable is assigned, so dead branches are cut early.
fn enumerate_triangle_system(
    g: &FiniteGroup,
    n_vars: usize,
    constraints: &[[Slot; 3]],
    visit: &mut dyn FnMut(&[u16]),
) {
    let mut scheduled: Vec<Vec<usize>> = vec![Vec::new(); n_vars + 1];
    for (ci, c) in constraints.iter().enumerate() {
        let last = c
            .iter()
            .filter_map(|s| match s {
                Slot::Var(i) => Some(*i),
                Slot::Id => None,
            })
            .max();
        // Constraints whose slots are all pinned to the identity hold
        // vacuously and need no schedule entry.
        if let Some(i) = last {
            scheduled[i + 1].push(ci);
        }
    }
    let mut values = vec![0u16; n_vars];
    fn rec(
        g: &FiniteGroup,
        depth: usize,
        n_vars: usize,
        constraints: &[[Slot; 3]],
        scheduled: &[Vec<usize>],
        values: &mut Vec<u16>,
        visit: &mut dyn FnMut(&[u16]),
    ) {
        if depth == n_vars {
            visit(values);
            return;
        }
        for v in 0..g.order() as u16 {
            values[depth] = v;
            let ok = scheduled[depth + 1].iter().all(|&ci| {
                let eval = |s: Slot| match s {
                    Slot::Var(i) => usize::from(values[i]),
                    Slot::Id => 0,
                };
                let [a, b, c] = constraints[ci];
                g.mul(g.mul(eval(a), eval(b)), g.inv(eval(c))) == 0
            });
            if ok {
                rec(g, depth + 1, n_vars, constraints, scheduled, values, visit);
            }
        }
        values[depth] = 0;
    }
    rec(g, 0, n_vars, constraints, &scheduled, &mut values, visit);
}

/// Streams solutions into conjugation orbits, keeping the first
/// representative of each orbit.
fn conjugation_orbits(g: &FiniteGroup, solutions: &[Vec<u16>]) -> (usize, Vec<Vec<u16>>) {
    let mut seen: std::collections::HashSet<Vec<u16>> = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for sol in solutions {
        if seen.contains(sol) {
            continue;
        }
        reps.push(sol.clone());
        for c in 0..g.order() {
            let conj: Vec<u16> = sol.iter().map(|&v| g.conj(c, usize::from(v)) as u16).collect();
            seen.insert(conj);
        }
    }
    (reps.len(), reps)
}

/// Cohomology classes in degree one: pairwise inequivalent cocycle
/// representatives and their count.
#[derive(Debug, Clone)]
pub struct OrbitSet {
    pub representatives: Vec<NonAbCochain1>,
    pub count: usize,
}

/// Counts the orbits of cocycles under the vertex-map action by
/// enumerating cocycles that are the identity on a spanning tree; the
/// residual action is conjugation by a constant.
pub fn h1_orbits(
    host: &Host,
    g: &FiniteGroup,
    budget: u64,
) -> Result<OrbitSet, NonAbError> {
    let in_tree = spanning_tree(host)?;
    let non_tree: Vec<usize> = (0..host.edges.len()).filter(|&e| !in_tree[e]).collect();
    checked_power(g.order(), non_tree.len(), budget)?;
    let mut var_of = vec![usize::MAX; host.edges.len()];
    for (i, &e) in non_tree.iter().enumerate() {
        var_of[e] = i;
    }
    let constraints: Vec<[Slot; 3]> = host
        .tri_edges
        .iter()
        .map(|&[uv, vw, uw]| {
            let slot = |e: usize| {
                if var_of[e] == usize::MAX {
                    Slot::Id
                } else {
                    Slot::Var(var_of[e])
                }
            };
            [slot(uv), slot(vw), slot(uw)]
        })
        .collect();
    let mut solutions = Vec::new();
    enumerate_triangle_system(g, non_tree.len(), &constraints, &mut |sol| {
        solutions.push(sol.to_vec());
    });
    let (count, reps) = conjugation_orbits(g, &solutions);
    let representatives = reps
        .into_iter()
        .map(|r| {
            let mut phi = NonAbCochain1::identity(host);
            for (i, &e) in non_tree.iter().enumerate() {
                phi.values[e] = r[i];
            }
            debug_assert!(is_cocycle(host, g, &phi));
            phi
        })
        .collect();
    Ok(OrbitSet {
        representatives,
        count,
    })
}

/// Counts conjugacy classes of homomorphisms from the fundamental group,
/// presented with one generator per edge avoiding the basepoint vertex 0,
/// subject to basepoint-triangle and triangle-product relations.  Requires
/// the complete 1-skeleton; the count must agree with `h1_orbits`.
pub fn hom_pi1_orbits(host: &Host, g: &FiniteGroup, budget: u64) -> Result<usize, NonAbError> {
    if !host.has_complete_skeleton() {
        return Err(NonAbError::InvalidHost(
            "the presentation needs the complete 1-skeleton".into(),
        ));
    }
    let n = host.n_vertices;
    if n < 3 {
        return Ok(1);
    }
    // Generators are the pairs (i, j) with 1 <= i < j <= n-1.
    let mut gen_of = vec![usize::MAX; n * n];
    let mut n_gens = 0;
    for i in 1..n {
        for j in i + 1..n {
            gen_of[i * n + j] = n_gens;
            n_gens += 1;
        }
    }
    checked_power(g.order(), n_gens, budget)?;
    // Basepoint triangles pin their generator to the identity; renumber the
    // free generators so pinned ones never become enumeration variables.
    let mut pinned = vec![false; n_gens];
    for &[u, v, w] in &host.triangles {
        if u == 0 {
            pinned[gen_of[v as usize * n + w as usize]] = true;
        }
    }
    let mut var_of = vec![usize::MAX; n_gens];
    let mut n_vars = 0;
    for (gen, &p) in pinned.iter().enumerate() {
        if !p {
            var_of[gen] = n_vars;
            n_vars += 1;
        }
    }
    let constraints: Vec<[Slot; 3]> = host
        .triangles
        .iter()
        .filter(|t| t[0] != 0)
        .map(|&[u, v, w]| {
            let slot = |a: u32, b: u32| {
                let gen = gen_of[a as usize * n + b as usize];
                if pinned[gen] {
                    Slot::Id
                } else {
                    Slot::Var(var_of[gen])
                }
            };
            // e_uv e_vw e_uw^-1 = 1 mirrors the triangle product relation.
            [slot(u, v), slot(v, w), slot(u, w)]
        })
        .collect();
    let mut solutions = Vec::new();
    enumerate_triangle_system(g, n_vars, &constraints, &mut |sol| {
        solutions.push(sol.to_vec());
    });
    let (count, _) = conjugation_orbits(g, &solutions);
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::simplex_skeleton;
    use crate::expansion::{Cochain, PairOperators};
    use rand::{Rng, SeedableRng};

    fn random_cochain(
        host: &Host,
        g: &FiniteGroup,
        rng: &mut rand_chacha::ChaCha8Rng,
    ) -> NonAbCochain1 {
        let values = (0..host.edges().len())
            .map(|_| rng.random_range(0..g.order()) as u16)
            .collect();
        NonAbCochain1 { values }
    }

    #[test]
    fn identity_cochain_is_a_cocycle_with_zero_norm() {
        let host = Host::complete(5).unwrap();
        for g in [FiniteGroup::cyclic(3).unwrap(), FiniteGroup::symmetric(3).unwrap()] {
            let one = NonAbCochain1::identity(&host);
            assert!(is_cocycle(&host, &g, &one));
            assert_eq!(one.norm(), 0);
            assert_eq!(d1_norm(&host, &g, &one), 0);
        }
    }

    #[test]
    fn one_marked_edge_breaks_exactly_its_triangles() {
        let host = Host::complete(3).unwrap();
        let g = FiniteGroup::symmetric(3).unwrap();
        let phi = NonAbCochain1::from_edge_values(&host, &g, &[(1, 2, 3)]).unwrap();
        assert_eq!(phi.norm(), 1);
        let values = d1(&host, &g, &phi);
        assert_eq!(values.len(), 1);
        assert_ne!(values[0], 0);
        assert_eq!(d1_norm(&host, &g, &phi), 1);
    }

    #[test]
    fn orientation_reversal_inverts_the_value() {
        let host = Host::complete(4).unwrap();
        let g = FiniteGroup::symmetric(3).unwrap();
        let phi = NonAbCochain1::from_edge_values(&host, &g, &[(2, 1, 4)]).unwrap();
        assert_eq!(phi.value(&host, &g, 2, 1), 4);
        assert_eq!(phi.value(&host, &g, 1, 2), g.inv(4));
    }

    #[test]
    fn mod_two_coboundary_support_matches_the_bit_oracle() {
        let x = simplex_skeleton(5, 2).unwrap();
        let host = Host::from_complex(&x).unwrap();
        let g = FiniteGroup::cyclic(2).unwrap();
        let ops = PairOperators::absolute(&x);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let phi = random_cochain(&host, &g, &mut rng);
            let support: Vec<usize> = phi
                .values
                .iter()
                .enumerate()
                .filter(|&(_, &v)| v != 0)
                .map(|(i, _)| i)
                .collect();
            let bits = Cochain::from_support(&ops, 1, &support);
            let abelian = ops.coboundary(&bits).support();
            let ours: Vec<usize> = d1(&host, &g, &phi)
                .into_iter()
                .enumerate()
                .filter(|&(_, v)| v != 0)
                .map(|(i, _)| i)
                .collect();
            assert_eq!(ours, abelian);
        }
    }

    #[test]
    fn the_action_is_a_group_action_preserving_cocycles() {
        let host = Host::complete(4).unwrap();
        let g = FiniteGroup::symmetric(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(22);
        for _ in 0..50 {
            let phi = random_cochain(&host, &g, &mut rng);
            let psi1: Vec<usize> = (0..4).map(|_| rng.random_range(0..6)).collect();
            let psi2: Vec<usize> = (0..4).map(|_| rng.random_range(0..6)).collect();
            let product: Vec<usize> =
                psi1.iter().zip(&psi2).map(|(&a, &b)| g.mul(a, b)).collect();
            assert_eq!(
                act(&host, &g, &product, &phi),
                act(&host, &g, &psi1, &act(&host, &g, &psi2, &phi))
            );
        }
        // Cocycles stay cocycles; constant maps also preserve the support.
        let orbits = h1_orbits(&Host::with_triangles(4, &[[0, 1, 2]]).unwrap(), &g, 1 << 24)
            .unwrap();
        let host2 = Host::with_triangles(4, &[[0, 1, 2]]).unwrap();
        for rep in &orbits.representatives {
            for _ in 0..10 {
                let psi: Vec<usize> = (0..4).map(|_| rng.random_range(0..6)).collect();
                assert!(is_cocycle(&host2, &g, &act(&host2, &g, &psi, rep)));
            }
            for c in 0..g.order() {
                let constant = vec![c; 4];
                assert_eq!(act(&host2, &g, &constant, rep).norm(), rep.norm());
            }
        }
    }

    #[test]
    fn tree_gauge_clears_a_spanning_tree() {
        let host = Host::complete(6).unwrap();
        let g = FiniteGroup::symmetric(4).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let in_tree = spanning_tree(&host).unwrap();
        for _ in 0..20 {
            let phi = random_cochain(&host, &g, &mut rng);
            let psi = tree_gauge(&host, &g, &phi).unwrap();
            let gauged = act(&host, &g, &psi, &phi);
            for (e, &(u, v)) in host.edges().iter().enumerate() {
                if in_tree[e] {
                    assert_eq!(
                        gauged.value(&host, &g, u as usize, v as usize),
                        0,
                        "tree edge ({u},{v}) must be gauged away"
                    );
                }
            }
        }
    }

    #[test]
    fn full_two_skeleta_have_one_class() {
        for n in [4, 5] {
            let host = Host::complete(n).unwrap();
            for g in [
                FiniteGroup::cyclic(2).unwrap(),
                FiniteGroup::cyclic(3).unwrap(),
                FiniteGroup::symmetric(3).unwrap(),
            ] {
                assert_eq!(h1_orbits(&host, &g, 1 << 30).unwrap().count, 1);
                assert_eq!(hom_pi1_orbits(&host, &g, 1 << 30).unwrap(), 1);
            }
        }
    }

    #[test]
    fn a_bare_triangle_counts_conjugacy_classes() {
        let host = Host::with_triangles(3, &[]).unwrap();
        let cases = [
            (FiniteGroup::cyclic(2).unwrap(), 2),
            (FiniteGroup::cyclic(3).unwrap(), 3),
            (FiniteGroup::symmetric(3).unwrap(), 3),
            (FiniteGroup::alternating_5(), 5),
            (FiniteGroup::psl_2_7(), 6),
        ];
        for (g, classes) in cases {
            let orbits = h1_orbits(&host, &g, 1 << 24).unwrap();
            assert_eq!(orbits.count, classes, "group {}", g.name());
            assert_eq!(hom_pi1_orbits(&host, &g, 1 << 24).unwrap(), classes);
        }
    }

    #[test]
    fn representatives_are_pairwise_inequivalent() {
        let host = Host::with_triangles(3, &[]).unwrap();
        let g = FiniteGroup::symmetric(3).unwrap();
        let orbits = h1_orbits(&host, &g, 1 << 24).unwrap();
        assert_eq!(orbits.count, orbits.representatives.len());
        // Exhaust all vertex maps to show no two representatives meet.
        for a in 0..orbits.count {
            for b in a + 1..orbits.count {
                let target = &orbits.representatives[b];
                let mut related = false;
                for code in 0..6usize.pow(3) {
                    let psi = [code % 6, code / 6 % 6, code / 36];
                    if &act(&host, &g, &psi, &orbits.representatives[a]) == target {
                        related = true;
                    }
                }
                assert!(!related, "representatives {a} and {b} are equivalent");
            }
        }
    }

    #[test]
    fn presentation_and_orbit_counts_agree_on_small_complexes() {
        let groups = [
            FiniteGroup::cyclic(2).unwrap(),
            FiniteGroup::cyclic(3).unwrap(),
            FiniteGroup::symmetric(3).unwrap(),
        ];
        // Every triangle subset on four vertices.
        let all4 = sorted_triples(4);
        for mask in 0..1u32 << all4.len() {
            let chosen: Vec<[u32; 3]> = all4
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &t)| t)
                .collect();
            let host = Host::with_triangles(4, &chosen).unwrap();
            for g in &groups {
                assert_eq!(
                    h1_orbits(&host, g, 1 << 30).unwrap().count,
                    hom_pi1_orbits(&host, g, 1 << 30).unwrap(),
                    "mask {mask} group {}",
                    g.name()
                );
            }
        }
        // A random sample of triangle subsets on five vertices.
        let all5 = sorted_triples(5);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(24);
        for _ in 0..12 {
            let chosen: Vec<[u32; 3]> = all5
                .iter()
                .filter(|_| rng.random::<bool>())
                .copied()
                .collect();
            let host = Host::with_triangles(5, &chosen).unwrap();
            for g in &groups {
                assert_eq!(
                    h1_orbits(&host, g, 1 << 30).unwrap().count,
                    hom_pi1_orbits(&host, g, 1 << 30).unwrap(),
                    "group {}",
                    g.name()
                );
            }
        }
    }

    #[test]
    fn cosystolic_norm_examples() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let host = Host::complete(3).unwrap();
        // A gauged identity has norm zero.
        let one = NonAbCochain1::identity(&host);
        let psi = vec![2, 5, 1];
        let moved = act(&host, &g, &psi, &one);
        assert_eq!(nonab_csy(&host, &g, &moved, 1 << 20).unwrap(), 0);
        // One marked edge on the triangle: cosystolic norm 1 and the
        // degree bound n * csy / 3 = 1 is met with equality.
        let phi = NonAbCochain1::from_edge_values(&host, &g, &[(1, 2, 3)]).unwrap();
        assert_eq!(nonab_csy(&host, &g, &phi, 1 << 20).unwrap(), 1);
        assert_eq!(d1_norm(&host, &g, &phi), 1);
    }

    #[test]
    fn degree_bound_holds_on_random_cochains() {
        // 3 * |d1 phi| >= n * csy on the full 2-skeleton.
        let host = Host::complete(5).unwrap();
        let g = FiniteGroup::cyclic(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(25);
        for _ in 0..500 {
            let phi = random_cochain(&host, &g, &mut rng);
            let csy = nonab_csy(&host, &g, &phi, 1 << 20).unwrap();
            assert!(3 * d1_norm(&host, &g, &phi) >= 5 * csy);
        }
    }

    #[test]
    fn budgets_are_enforced() {
        let host = Host::complete(5).unwrap();
        let g = FiniteGroup::symmetric(3).unwrap();
        let phi = NonAbCochain1::identity(&host);
        assert!(matches!(
            nonab_csy(&host, &g, &phi, 10),
            Err(NonAbError::BudgetExceeded { needed: 1296, .. })
        ));
        assert!(matches!(
            h1_orbits(&host, &g, 10),
            Err(NonAbError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            hom_pi1_orbits(&host, &g, 10),
            Err(NonAbError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn incomplete_skeleta_are_rejected_by_the_presentation() {
        let x = crate::complexes::simplicial_complex("path", &[vec![0, 1], vec![1, 2]]).unwrap();
        let host = Host::from_complex(&x).unwrap();
        assert!(matches!(
            hom_pi1_orbits(&host, &FiniteGroup::cyclic(2).unwrap(), 1 << 20),
            Err(NonAbError::InvalidHost(_))
        ));
        // The orbit count itself is fine on a tree: a single class.
        assert_eq!(
            h1_orbits(&host, &FiniteGroup::cyclic(2).unwrap(), 1 << 20)
                .unwrap()
                .count,
            1
        );
    }
}
