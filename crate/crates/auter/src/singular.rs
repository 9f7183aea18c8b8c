//! Classification of the symmetric vertex classes of the rank `2p - 1`
//! singular locus into the six symmetry families.
//!
//! Graph classes are produced by the orbit/quotient enumerator at desk
//! scale (bounded fixed part; every family of interest has a small
//! quotient), then tagged by structural tests: the p-part of the
//! automorphism order fixes the Sylow shape, and existence searches for
//! intertwining automorphisms determine how the normalizer acts on it.

use crate::canon;
use crate::graph::PointedGraph;
use crate::symmetry::{perm_compose, perm_identity, perm_pow, OrbitBounds};
use serde::Serialize;
use std::collections::BTreeMap;

/// The symmetry families of singular vertex classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SymmetryFamily {
    /// Dihedral only.
    D2p,
    /// Dihedral times a full symmetric factor.
    D2pTimesSp,
    Sp,
    SpTimesSp,
    /// The swap-extended product.
    SpTimesSpByZ2,
    S2p,
    /// A class matching no listed family; must not occur.
    Counterexample(String),
}

impl std::fmt::Display for SymmetryFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SymmetryFamily::D2p => write!(f, "D_2p"),
            SymmetryFamily::D2pTimesSp => write!(f, "D_2p x S_p"),
            SymmetryFamily::Sp => write!(f, "S_p"),
            SymmetryFamily::SpTimesSp => write!(f, "S_p x S_p"),
            SymmetryFamily::SpTimesSpByZ2 => write!(f, "(S_p x S_p) : Z/2"),
            SymmetryFamily::S2p => write!(f, "S_2p"),
            SymmetryFamily::Counterexample(why) => write!(f, "counterexample: {why}"),
        }
    }
}

/// One tagged singular vertex class.
#[derive(Debug, Clone)]
pub struct SingularClass {
    pub graph: PointedGraph,
    pub generator: Vec<u32>,
    pub aut_order: u128,
    /// `ν_p` of the automorphism order.
    pub p_rank: u32,
    pub family: SymmetryFamily,
}

/// Desk-scale scope of the singular enumerator: all quotient structures
/// with at most this many fixed vertices, free vertex orbits and fixed
/// edges.  The families of the rank `2p - 1` locus all have quotients
/// within these bounds.
pub fn singular_bounds() -> OrbitBounds {
    OrbitBounds {
        max_fixed_vertices: Some(6),
        max_free_vertex_orbits: Some(2),
        max_fixed_edges: Some(4),
    }
}

/// Enumerates pointed-isomorphism classes of rank `2p - 1` graphs that
/// admit a rotation of order `p`, each with one witnessing generator.
pub fn enumerate_singular(p: u32) -> Vec<(PointedGraph, Vec<u32>)> {
    let rank = 2 * p - 1;
    let mut by_code: BTreeMap<Vec<u8>, (PointedGraph, Vec<u32>)> = BTreeMap::new();
    crate::symmetry::enumerate_cyclic_raw(rank, p, singular_bounds(), &mut |graph, gen| {
        let code = canon::canonical_code(graph);
        by_code
            .entry(code)
            .or_insert_with(|| (graph.clone(), gen.to_vec()));
    });
    by_code.into_values().collect()
}

/// Existence search for a pointed automorphism `g` with
/// `g · src_i = dst_i · g` for every listed relation; the search
/// propagates along pairing and the relations.
pub fn find_intertwiner(
    graph: &PointedGraph,
    relations: &[(Vec<u32>, Vec<u32>)],
) -> Option<Vec<u32>> {
    let mut found = None;
    search_intertwiners(graph, relations, &mut |g| {
        found = Some(g.to_vec());
        true
    });
    found
}

/// Backtracking search over intertwiners; `accept` sees each solution and
/// returns whether to stop.
fn search_intertwiners(
    graph: &PointedGraph,
    relations: &[(Vec<u32>, Vec<u32>)],
    accept: &mut dyn FnMut(&[u32]) -> bool,
) {
    let n = graph.n_half_edges();
    let mut g: Vec<Option<u32>> = vec![None; n];
    let mut used = vec![false; n];
    let mut vmap: Vec<Option<u32>> = vec![None; graph.n_vertices as usize];
    let mut vused = vec![false; graph.n_vertices as usize];
    vmap[graph.basepoint as usize] = Some(graph.basepoint);
    vused[graph.basepoint as usize] = true;
    if let Some(a) = graph.aux_point {
        if a != graph.basepoint {
            vmap[a as usize] = Some(a);
            vused[a as usize] = true;
        }
    }
    rec(
        graph, relations, &mut g, &mut used, &mut vmap, &mut vused, accept,
    );

    #[allow(clippy::too_many_arguments)]
    fn rec(
        graph: &PointedGraph,
        relations: &[(Vec<u32>, Vec<u32>)],
        g: &mut Vec<Option<u32>>,
        used: &mut Vec<bool>,
        vmap: &mut Vec<Option<u32>>,
        vused: &mut Vec<bool>,
        accept: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        let Some(h) = g.iter().position(|x| x.is_none()) else {
            let solution: Vec<u32> = g.iter().map(|x| x.unwrap()).collect();
            return accept(&solution);
        };
        for candidate in 0..graph.n_half_edges() as u32 {
            if used[candidate as usize] {
                continue;
            }
            // Propagate the assignment closure, recording a trail for
            // rollback.
            let mut trail_g: Vec<usize> = Vec::new();
            let mut trail_v: Vec<usize> = Vec::new();
            let mut pending = vec![(h as u32, candidate)];
            let mut ok = true;
            while let Some((a, b)) = pending.pop() {
                match g[a as usize] {
                    Some(existing) => {
                        if existing != b {
                            ok = false;
                            break;
                        }
                    }
                    None => {
                        if used[b as usize] {
                            ok = false;
                            break;
                        }
                        g[a as usize] = Some(b);
                        used[b as usize] = true;
                        trail_g.push(a as usize);
                        // Vertex consistency.
                        let va = graph.endpoint[a as usize] as usize;
                        let vb = graph.endpoint[b as usize];
                        match vmap[va] {
                            Some(existing) => {
                                if existing != vb {
                                    ok = false;
                                    break;
                                }
                            }
                            None => {
                                if vused[vb as usize] {
                                    ok = false;
                                    break;
                                }
                                vmap[va] = Some(vb);
                                vused[vb as usize] = true;
                                trail_v.push(va);
                            }
                        }
                        pending.push((graph.pairing[a as usize], graph.pairing[b as usize]));
                        for (src, dst) in relations {
                            pending.push((src[a as usize], dst[b as usize]));
                        }
                    }
                }
            }
            let mut stop = false;
            if ok {
                stop = rec(graph, relations, g, used, vmap, vused, accept);
            }
            for a in trail_g {
                let b = g[a].take().unwrap();
                used[b as usize] = false;
            }
            for v in trail_v {
                let w = vmap[v].take().unwrap();
                vused[w as usize] = false;
            }
            if stop {
                return true;
            }
        }
        false
    }
}

/// Finds an order-`p` automorphism commuting with `sigma` and independent
/// from it, when one exists.
pub fn find_commuting_p_element(graph: &PointedGraph, sigma: &[u32], p: u32) -> Option<Vec<u32>> {
    let id = perm_identity(graph.n_half_edges());
    let powers: Vec<Vec<u32>> = (0..p).map(|k| perm_pow(sigma, k)).collect();
    let mut found = None;
    search_intertwiners(graph, &[(sigma.to_vec(), sigma.to_vec())], &mut |tau| {
        if tau != id && !powers.iter().any(|x| x == tau) && perm_pow(tau, p) == id {
            found = Some(tau.to_vec());
            true
        } else {
            false
        }
    });
    found
}

/// Classifies the normalizer image `W ≤ GL_2(F_p)` by hunting for a pair
/// of lines that every element preserves or swaps: in that eigenbasis the
/// multiplier projections decide the family.
fn classify_w(p: u32, w: &[[u32; 4]], aut_order: u128) -> SymmetryFamily {
    // Projective lines of F_p^2: spanned by (1, m) or (0, 1).
    let mut lines: Vec<(u32, u32)> = (0..p).map(|m| (1, m)).collect();
    lines.push((0, 1));
    let apply = |m: &[u32; 4], v: (u32, u32)| -> (u32, u32) {
        ((m[0] * v.0 + m[1] * v.1) % p, (m[2] * v.0 + m[3] * v.1) % p)
    };
    let line_of = |v: (u32, u32)| -> Option<usize> {
        if v == (0, 0) {
            return None;
        }
        lines.iter().position(|&(a, b)| {
            // Same line iff the determinant vanishes.
            (a * v.1 + p * p - b * v.0).is_multiple_of(p)
        })
    };
    let full = (p - 1) as usize;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            // Multipliers on each line for the elements fixing both, and
            // a swap witness.
            let mut fix_mult: Vec<(u32, u32)> = Vec::new();
            let mut swap = false;
            let mut invariant = true;
            for m in w {
                let li = line_of(apply(m, lines[i])).expect("invertible");
                let lj = line_of(apply(m, lines[j])).expect("invertible");
                if li == i && lj == j {
                    let mi = multiplier(p, m, lines[i]);
                    let mj = multiplier(p, m, lines[j]);
                    fix_mult.push((mi, mj));
                } else if li == j && lj == i {
                    swap = true;
                } else {
                    invariant = false;
                    break;
                }
            }
            if !invariant {
                continue;
            }
            let proj1: std::collections::BTreeSet<u32> = fix_mult.iter().map(|&(a, _)| a).collect();
            let proj2: std::collections::BTreeSet<u32> = fix_mult.iter().map(|&(_, b)| b).collect();
            let product = fix_mult.len() == proj1.len() * proj2.len();
            if swap && product && proj1.len() == full && proj2.len() == full {
                return if aut_order == factorial(2 * p as u64) {
                    SymmetryFamily::S2p
                } else {
                    SymmetryFamily::SpTimesSpByZ2
                };
            }
            if !swap && product && proj1.len() == full && proj2.len() == full {
                return SymmetryFamily::SpTimesSp;
            }
            if !swap
                && product
                && ((proj1.len() == 2 && proj2.len() == full)
                    || (proj1.len() == full && proj2.len() == 2))
            {
                return SymmetryFamily::D2pTimesSp;
            }
        }
    }
    SymmetryFamily::Counterexample(format!(
        "normalizer image of order {} matches no listed family",
        w.len()
    ))
}

/// The scalar by which a line-preserving matrix acts on a line.
fn multiplier(p: u32, m: &[u32; 4], v: (u32, u32)) -> u32 {
    let image = ((m[0] * v.0 + m[1] * v.1) % p, (m[2] * v.0 + m[3] * v.1) % p);
    if v.0 != 0 {
        // image.0 = λ v.0 mod p
        (0..p).find(|&l| l * v.0 % p == image.0).unwrap()
    } else {
        (0..p).find(|&l| l * v.1 % p == image.1).unwrap()
    }
}

fn nu_p(mut order: u128, p: u32) -> u32 {
    let mut nu = 0;
    while order.is_multiple_of(p as u128) {
        order /= p as u128;
        nu += 1;
    }
    nu
}

fn factorial(n: u64) -> u128 {
    (2..=n as u128).product::<u128>().max(1)
}

/// Tags one class by Sylow shape and normalizer action.
fn tag_class(
    graph: &PointedGraph,
    sigma: &[u32],
    p: u32,
    aut_order: u128,
) -> (u32, SymmetryFamily) {
    let nu = nu_p(aut_order, p);
    match nu {
        0 => (0, SymmetryFamily::Counterexample("no p-symmetry".into())),
        1 => {
            // The multiplier set: exponents k with σ conjugate to σ^k.
            let mut d = 0;
            for k in 1..p {
                let target = perm_pow(sigma, k);
                if find_intertwiner(graph, &[(sigma.to_vec(), target)]).is_some() {
                    d += 1;
                }
            }
            let family = if d == p - 1 {
                SymmetryFamily::Sp
            } else if d == 2 {
                SymmetryFamily::D2p
            } else if d == 1 {
                SymmetryFamily::Counterexample("exactly Z/p symmetry".into())
            } else {
                SymmetryFamily::Counterexample(format!("multiplier group of order {d}"))
            };
            (nu, family)
        }
        2 => {
            let Some(tau) = find_commuting_p_element(graph, sigma, p) else {
                return (
                    nu,
                    SymmetryFamily::Counterexample("no independent commuting rotation".into()),
                );
            };
            // The normalizer image W on the Sylow, as matrices over F_p in
            // the (σ, τ) basis: column one is the image of σ, column two
            // the image of τ.
            let mut w_matrices: Vec<[u32; 4]> = Vec::new();
            let element = |x: u32, y: u32| perm_compose(&perm_pow(sigma, x), &perm_pow(&tau, y));
            for a in 0..p {
                for c in 0..p {
                    for b in 0..p {
                        for d in 0..p {
                            if (a * d + p * p - b * c).is_multiple_of(p) {
                                continue;
                            }
                            let rel = [
                                (sigma.to_vec(), element(a, c)),
                                (tau.clone(), element(b, d)),
                            ];
                            if find_intertwiner(graph, &rel).is_some() {
                                w_matrices.push([a, b, c, d]);
                            }
                        }
                    }
                }
            }
            (nu, classify_w(p, &w_matrices, aut_order))
        }
        _ => (
            nu,
            SymmetryFamily::Counterexample(format!("p-part of order p^{nu}")),
        ),
    }
}

/// Enumerates and tags every singular vertex class of rank `2p - 1`
/// produced by the orbit-construction enumerator.
pub fn classify_singular_vertices(p: u32) -> Vec<SingularClass> {
    enumerate_singular(p)
        .into_iter()
        .map(|(graph, generator)| {
            let aut_order = canon::automorphism_group(&graph, None).order;
            let (p_rank, family) = tag_class(&graph, &generator, p, aut_order);
            SingularClass {
                graph,
                generator,
                aut_order,
                p_rank,
                family,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    /// The wedge of a `p`-edge theta (at the basepoint) with the cone
    /// skeleton whose apex is the far theta vertex.
    fn theta_wedge_xi(p: u32) -> PointedGraph {
        let mut edges: Vec<(u32, u32)> = (0..p).map(|_| (0, 1)).collect();
        for i in 0..p {
            edges.push((2 + i, 2 + (i + 1) % p));
        }
        for i in 0..p {
            edges.push((2 + i, 1));
        }
        PointedGraph::from_edges(2 + p, 0, None, &edges)
    }

    fn block_rotation(g: &PointedGraph, blocks: &[u32], p: u32) -> Vec<u32> {
        let mut sigma = perm_identity(g.n_half_edges());
        for &block in blocks {
            for i in 0..p {
                let e = block + i;
                let f = block + (i + 1) % p;
                sigma[2 * e as usize] = 2 * f;
                sigma[2 * e as usize + 1] = 2 * f + 1;
            }
        }
        sigma
    }

    #[test]
    fn big_theta_is_the_full_symmetric_family() {
        let theta = zoo::theta(10);
        let aut = canon::automorphism_group(&theta, None);
        assert_eq!(aut.order, factorial(10));
        let sigma = block_rotation(&theta, &[0], 5);
        let (nu, family) = tag_class(&theta, &sigma, 5, aut.order);
        assert_eq!(nu, 2);
        assert_eq!(family, SymmetryFamily::S2p);
    }

    #[test]
    fn upsilon_is_dihedral() {
        let upsilon = zoo::upsilon(5);
        let aut = canon::automorphism_group(&upsilon, None);
        assert_eq!(aut.order, 10, "gon symmetries only");
        let sigma = block_rotation(&upsilon, &[0, 5, 10], 5);
        let (nu, family) = tag_class(&upsilon, &sigma, 5, aut.order);
        assert_eq!(nu, 1);
        assert_eq!(family, SymmetryFamily::D2p);
    }

    #[test]
    fn theta_wedge_xi_is_dihedral_times_symmetric() {
        let g = theta_wedge_xi(5);
        assert_eq!(g.rank(), 9);
        let aut = canon::automorphism_group(&g, None);
        // A full symmetric factor on the theta edges, dihedral on the
        // cone part.
        assert_eq!(aut.order, 1200);
        let sigma = block_rotation(&g, &[0, 5, 10], 5);
        let (nu, family) = tag_class(&g, &sigma, 5, aut.order);
        assert_eq!(nu, 2);
        assert_eq!(family, SymmetryFamily::D2pTimesSp);
    }

    #[test]
    fn rose_wedge_theta_is_product_family() {
        // Five petals at the basepoint plus a five-edge theta: two
        // independent full symmetric factors.
        let mut edges: Vec<(u32, u32)> = (0..5).map(|_| (0, 0)).collect();
        edges.extend((0..5).map(|_| (0, 1)));
        let g = PointedGraph::from_edges(2, 0, None, &edges);
        assert_eq!(g.rank(), 9);
        let aut = canon::automorphism_group(&g, None);
        let sigma = block_rotation(&g, &[0, 5], 5);
        let (nu, family) = tag_class(&g, &sigma, 5, aut.order);
        assert_eq!(nu, 2);
        assert_eq!(family, SymmetryFamily::SpTimesSp);
    }

    #[test]
    fn small_scale_enumerator_contains_known_classes() {
        // The p = 3 version (rank 5) as a smoke test: every class admits
        // the rotation it was built with.
        let classes = enumerate_singular(3);
        assert!(!classes.is_empty());
        for (graph, gen) in classes.iter().take(20) {
            assert!(canon::is_automorphism(graph, None, gen));
            assert_eq!(graph.rank(), 5);
        }
    }
}
