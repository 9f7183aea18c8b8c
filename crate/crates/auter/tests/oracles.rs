//! Independent oracles for the values the library reports: exhaustive
//! low-level generation, brute-force isomorphism, and subset scans that
//! share no code with the implementation paths they check.

use auter::canon;
use auter::complex::build_quotient_complex;
use auter::enumerate::{enumerate_graphs, Pointing};
use auter::graph::PointedGraph;
use auter::homology::{homology, Coefficients};
use auter::snf::smith_normal_form;
use auter::symmetry::psi_diagonal;
use std::collections::BTreeSet;

/// Brute-force pointed isomorphism: try every vertex bijection
/// preserving the distinguished points and compare edge multisets.
fn brute_force_isomorphic(a: &PointedGraph, b: &PointedGraph) -> bool {
    if a.n_vertices != b.n_vertices || a.n_edges() != b.n_edges() {
        return false;
    }
    let n = a.n_vertices as usize;
    let mut perm: Vec<u32> = (0..n as u32).collect();
    let edge_multiset = |g: &PointedGraph, relabel: Option<&[u32]>| -> Vec<(u32, u32)> {
        let mut edges: Vec<(u32, u32)> = (0..g.n_edges() as u32)
            .map(|e| {
                let (u, v) = g.edge_ends(e);
                let (u, v) = match relabel {
                    Some(r) => (r[u as usize], r[v as usize]),
                    None => (u, v),
                };
                (u.min(v), u.max(v))
            })
            .collect();
        edges.sort();
        edges
    };
    let target = edge_multiset(b, None);
    // Heap's-algorithm-free permutation scan via sorted permutations.
    fn scan(
        perm: &mut Vec<u32>,
        k: usize,
        a: &PointedGraph,
        b: &PointedGraph,
        target: &[(u32, u32)],
        edge_multiset: &dyn Fn(&PointedGraph, Option<&[u32]>) -> Vec<(u32, u32)>,
    ) -> bool {
        let n = perm.len();
        if k == n {
            let ok = perm[a.basepoint as usize] == b.basepoint
                && match (a.aux_point, b.aux_point) {
                    (None, None) => true,
                    (Some(x), Some(y)) => perm[x as usize] == y,
                    _ => false,
                };
            return ok && edge_multiset(a, Some(perm)) == target;
        }
        for i in k..n {
            perm.swap(k, i);
            if scan(perm, k + 1, a, b, target, edge_multiset) {
                perm.swap(k, i);
                return true;
            }
            perm.swap(k, i);
        }
        false
    }
    scan(&mut perm, 0, a, b, &target, &edge_multiset)
}

/// Exhaustive generation of rank-2 single-pointed graphs straight from
/// endpoint assignments, with brute-force isomorph rejection.
fn rank2_classes_by_exhaustion() -> Vec<PointedGraph> {
    let mut representatives: Vec<PointedGraph> = Vec::new();
    for v in 1..=3u32 {
        let n_edges = 2 + v - 1;
        // Every endpoint assignment of the 2E half-edges.
        let slots = (2 * n_edges) as usize;
        let mut assignment = vec![0u32; slots];
        loop {
            let edges: Vec<(u32, u32)> = (0..n_edges as usize)
                .map(|e| (assignment[2 * e], assignment[2 * e + 1]))
                .collect();
            let g = PointedGraph::from_edges(v, 0, None, &edges);
            if g.is_connected()
                && g.validate_admissible().is_ok()
                && !representatives
                    .iter()
                    .any(|r| brute_force_isomorphic(r, &g))
            {
                representatives.push(g);
            }
            // Odometer step.
            let mut i = 0;
            loop {
                if i == slots {
                    break;
                }
                assignment[i] += 1;
                if assignment[i] < v {
                    break;
                }
                assignment[i] = 0;
                i += 1;
            }
            if i == slots {
                break;
            }
        }
    }
    representatives
}

#[test]
fn rank_two_has_seven_classes_by_independent_exhaustion() {
    let oracle = rank2_classes_by_exhaustion();
    assert_eq!(oracle.len(), 7);
    let fast = enumerate_graphs(2, Pointing::Single, None);
    assert_eq!(fast.len(), 7);
    // Every oracle class matches exactly one enumerated class.
    for rep in &oracle {
        let matches = fast
            .iter()
            .filter(|c| brute_force_isomorphic(rep, &c.graph))
            .count();
        assert_eq!(matches, 1);
    }
}

#[test]
fn canonical_codes_agree_with_brute_force_on_all_pairs() {
    let pool = rank2_classes_by_exhaustion();
    // Also some doubled-pointed and colored variants via relabeling.
    for (i, a) in pool.iter().enumerate() {
        for (j, b) in pool.iter().enumerate() {
            let same_code = canon::canonical_code(a) == canon::canonical_code(b);
            let iso = brute_force_isomorphic(a, b);
            assert_eq!(same_code, iso, "codes and brute force disagree at {i},{j}");
        }
    }
}

/// Independent forest scan: every edge subset, acyclicity by DFS.
fn acyclic_by_dfs(g: &PointedGraph, edges: &BTreeSet<u32>) -> bool {
    // A subset is a forest iff it has no cycle: DFS over the subgraph,
    // tracking the multigraph edge used to enter each vertex.
    let mut visited = vec![false; g.n_vertices as usize];
    for start in 0..g.n_vertices {
        if visited[start as usize] {
            continue;
        }
        let mut stack = vec![(start, u32::MAX)];
        visited[start as usize] = true;
        while let Some((v, via)) = stack.pop() {
            for &e in edges.iter() {
                if e == via {
                    continue;
                }
                let (a, b) = g.edge_ends(e);
                let next = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if a == b {
                    return false; // loop edge
                }
                if visited[next as usize] {
                    return false;
                }
                visited[next as usize] = true;
                stack.push((next, e));
            }
        }
    }
    true
}

#[test]
fn phi_invariant_maximal_forests_by_subset_scan() {
    let gg = psi_sibling_phi();
    let g = &gg.graph;
    let orbit_of = |e: u32| -> BTreeSet<u32> {
        gg.elements()
            .iter()
            .map(|el| el[2 * e as usize] / 2)
            .collect()
    };
    let mut invariant_forests: Vec<BTreeSet<u32>> = Vec::new();
    for mask in 1u32..(1 << g.n_edges()) {
        let subset: BTreeSet<u32> = (0..g.n_edges() as u32)
            .filter(|&e| mask >> e & 1 == 1)
            .collect();
        let invariant = subset.iter().all(|&e| orbit_of(e).is_subset(&subset));
        if invariant && acyclic_by_dfs(g, &subset) {
            invariant_forests.push(subset);
        }
    }
    let maximal: Vec<&BTreeSet<u32>> = invariant_forests
        .iter()
        .filter(|s| !invariant_forests.iter().any(|t| *s != t && s.is_subset(t)))
        .collect();
    assert_eq!(invariant_forests.len(), 3);
    assert_eq!(maximal.len(), 3);
    // The three orbits: the a, b and c families.
    let expected: Vec<BTreeSet<u32>> = vec![(0..3).collect(), (3..6).collect(), (6..9).collect()];
    for f in &expected {
        assert!(invariant_forests.contains(f));
    }
    // The library agrees.
    let from_library = gg.invariant_forests(true);
    assert_eq!(from_library.len(), 3);
}

fn psi_sibling_phi() -> auter::symmetry::GroupGraph {
    auter::symmetry::phi_rotation(3)
}

#[test]
fn complex_dimensions_match_the_degree_bound() {
    for m in 1..=3u32 {
        let single = build_quotient_complex(m, Pointing::Single, None);
        assert_eq!(single.dimension() as u32, 2 * m - 2, "single rank {m}");
        let double = build_quotient_complex(m, Pointing::Double, None);
        assert_eq!(double.dimension() as u32, 2 * m - 1, "double rank {m}");
    }
}

#[test]
fn sphere_homology_by_integral_route_only() {
    // The ∂_2 Smith normal form of the degree-capped double-pointed
    // complex must leave no cokernel in degree one and a rank-one kernel
    // quotient in degree two.
    let cx = build_quotient_complex(2, Pointing::Double, Some(2));
    let d1 = cx.boundary_matrix(1).unwrap();
    let d2 = cx.boundary_matrix(2).unwrap();
    let r1 = smith_normal_form(&d1, false).rank();
    let snf2 = smith_normal_form(&d2, false);
    let r2 = snf2.rank();
    let n0 = cx.n_cells(0);
    let n1 = cx.n_cells(1);
    let n2 = cx.n_cells(2);
    assert_eq!(n0 - r1, 1, "connected");
    assert_eq!(n1 - r1 - r2, 0, "H_1 vanishes");
    assert_eq!(n2 - r2, 1, "the sphere class");
    assert!(snf2.nontrivial_factors().is_empty(), "no torsion from ∂_2");
}

#[test]
fn rank_four_enumeration_contains_the_rotation_families() {
    let classes = enumerate_graphs(4, Pointing::Single, None);
    assert_eq!(classes.len(), 771, "frozen by this exhaustive run");
    let symmetric: Vec<_> = classes.iter().filter(|c| c.aut_order % 3 == 0).collect();
    assert_eq!(symmetric.len(), 143, "frozen by this exhaustive run");
    use auter::zoo;
    for family in [
        zoo::rose(4),
        zoo::theta_with_roses(3, 0, 2),
        zoo::theta_with_roses(3, 1, 1),
        zoo::theta_with_roses(3, 2, 0),
        zoo::phi(3),
        zoo::psi(3),
        zoo::omega(3),
    ] {
        let code = canon::canonical_code(&family);
        assert!(
            symmetric.iter().any(|c| c.code == code),
            "rotation family missing from the 3-symmetric classes"
        );
    }
}

#[test]
fn euler_characteristic_equals_betti_sum_on_truncated_double() {
    let cx = build_quotient_complex(2, Pointing::Double, Some(3));
    let h = homology(&cx, Coefficients::Rational).unwrap();
    let alt: i64 = h
        .betti_q()
        .iter()
        .enumerate()
        .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    assert_eq!(alt, cx.euler_characteristic());
}

#[test]
fn degree_examples_from_first_principles() {
    // Theta with basepoint at a vertex: 2 * rank - valence = 4 - 3 = 1.
    let theta = auter::zoo::theta(3);
    assert_eq!(theta.degree(), 1);
    // Double-pointed theta with the aux point opposite: one extra germ.
    let mut double = auter::zoo::theta(3);
    double.aux_point = Some(1);
    assert_eq!(double.degree(), 2);
    // Triple check against the raw definition: sum of (valence - 2).
    let by_hand: i64 = (0..double.n_vertices)
        .filter(|&v| v != double.basepoint)
        .map(|v| {
            let mut val = double.valence(v) as i64;
            if double.aux_point == Some(v) {
                val += 1;
            }
            val - 2
        })
        .sum();
    assert_eq!(double.degree(), by_hand);
}

#[test]
fn psi_diagonal_blowup_count_matches_claimed_component() {
    // Rank-four check that the diagonal component has exactly the three
    // classes: brute blowup scan around psi and omega finds only the
    // tripod.
    let cx = auter::fixed::build_fixed_quotient_complex(
        4,
        auter::symmetry::GroupKind::Cyclic { p: 3 },
        &psi_diagonal(3),
        true,
    )
    .unwrap();
    assert_eq!(cx.n_cells(0), 3);
    assert_eq!(cx.n_cells(1), 2);
}

/// The rank-2 single-pointed quotient, built by hand.
///
/// 0-cells: 0 rose at its vertex, 1 rose with the basepoint mid-petal,
/// 2 theta at a vertex, 3 theta with the basepoint mid-edge, 4 dumbbell
/// at a loop vertex, 5 dumbbell mid-bar, 6 dumbbell mid-loop.
///
/// 1-cells are (graph, forest) classes, 2-cells (graph, nested chain)
/// classes; the boundary of a chain cell is the alternating sum of the
/// two chain truncations and the collapse of its smallest forest.
fn hand_built_q2() -> auter::complex::QuotientComplex {
    let d1: Vec<Vec<(usize, i64)>> = vec![
        vec![(1, 1), (0, -1)], // rose mid-petal, split petal half
        vec![(2, 1), (0, -1)], // theta, one edge
        vec![(3, 1), (1, -1)], // theta mid-edge, a long edge
        vec![(3, 1), (2, -1)], // theta mid-edge, a basepoint half
        vec![(3, 1), (0, -1)], // theta mid-edge, edge + half
        vec![(3, 1), (0, -1)], // theta mid-edge, both halves
        vec![(4, 1), (0, -1)], // dumbbell, bar
        vec![(5, 1), (4, -1)], // dumbbell mid-bar, one half
        vec![(5, 1), (0, -1)], // dumbbell mid-bar, both halves
        vec![(6, 1), (4, -1)], // dumbbell mid-loop, split-loop half
        vec![(6, 1), (1, -1)], // dumbbell mid-loop, bar
        vec![(6, 1), (0, -1)], // dumbbell mid-loop, half + bar
    ];
    let d2: Vec<Vec<(usize, i64)>> = vec![
        vec![(4, -1), (2, 1), (0, 1)],   // {edge} in {edge, half}
        vec![(4, -1), (3, 1), (1, 1)],   // {half} in {edge, half}
        vec![(5, -1), (3, 1), (1, 1)],   // {half} in {both halves}
        vec![(8, -1), (7, 1), (6, 1)],   // mid-bar chain
        vec![(11, -1), (9, 1), (6, 1)],  // mid-loop {half} chain
        vec![(11, -1), (10, 1), (0, 1)], // mid-loop {bar} chain
    ];
    auter::complex::QuotientComplex::from_counts(
        "hand-built-q2",
        &[7, 12, 6],
        vec![vec![Vec::new(); 7], d1, d2],
    )
}

#[test]
fn machine_built_q2_matches_the_hand_built_model() {
    let hand = hand_built_q2();
    auter::homology::verify_complex(&hand).unwrap();
    let machine = build_quotient_complex(2, Pointing::Single, None);
    // Same cell counts in every dimension.
    for d in 0..=2 {
        assert_eq!(hand.n_cells(d), machine.n_cells(d), "dimension {d}");
    }
    // Same homology over Z and F_3.
    let h_hand = homology(&hand, Coefficients::ModP(3)).unwrap();
    let h_machine = homology(&machine, Coefficients::ModP(3)).unwrap();
    assert_eq!(h_hand.betti_q(), h_machine.betti_q());
    assert_eq!(h_hand.betti_fp(), h_machine.betti_fp());
    assert_eq!(h_hand.betti_q(), vec![1, 0, 0]);
    let torsion_free =
        |h: &auter::homology::HomologySummary| h.degrees.iter().all(|d| d.torsion.is_empty());
    assert!(torsion_free(&h_hand) && torsion_free(&h_machine));
}

/// Random relabelings of a graph must not change its canonical code:
/// permute edge ids, swap half-edge orientations, and permute non-special
/// vertex ids.
#[test]
fn canonical_code_is_relabeling_invariant() {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xC0DE);
    let pool: Vec<PointedGraph> = enumerate_graphs(2, Pointing::Double, None)
        .into_iter()
        .map(|c| c.graph)
        .chain(
            enumerate_graphs(2, Pointing::Single, None)
                .into_iter()
                .map(|c| c.graph),
        )
        .collect();
    for g in &pool {
        let base = canon::canonical_code(g);
        for _ in 0..20 {
            // Permute edges, flip orientations.
            let mut edge_order: Vec<u32> = (0..g.n_edges() as u32).collect();
            edge_order.shuffle(&mut rng);
            // Permute vertices, keeping the distinguished ones tracked.
            let mut vertex_perm: Vec<u32> = (0..g.n_vertices).collect();
            vertex_perm.shuffle(&mut rng);
            let edges: Vec<(u32, u32)> = edge_order
                .iter()
                .map(|&e| {
                    let (u, v) = g.edge_ends(e);
                    let (u, v) = (vertex_perm[u as usize], vertex_perm[v as usize]);
                    if rng.gen_bool(0.5) {
                        (v, u)
                    } else {
                        (u, v)
                    }
                })
                .collect();
            let relabeled = PointedGraph::from_edges(
                g.n_vertices,
                vertex_perm[g.basepoint as usize],
                g.aux_point.map(|a| vertex_perm[a as usize]),
                &edges,
            );
            assert_eq!(canon::canonical_code(&relabeled), base);
        }
    }
}

/// Equivariant codes must absorb conjugation by graph automorphisms and
/// generator twists.
#[test]
fn equivariant_code_is_conjugation_invariant() {
    use auter::symmetry::{
        equivariant_code, perm_compose, perm_pow, psi_diagonal, rose_rotation, theta_rotation,
        GroupGraph,
    };
    for gg in [theta_rotation(3), psi_diagonal(3), rose_rotation(4, 3)] {
        let base = equivariant_code(&gg, None);
        let autos = canon::all_automorphisms(&gg.graph, None, 100_000).unwrap();
        for a in autos.iter().take(40) {
            let mut inv = vec![0u32; a.len()];
            for (h, &img) in a.iter().enumerate() {
                inv[img as usize] = h as u32;
            }
            for power in 1..3u32 {
                let twisted = perm_pow(&gg.generators[0], power);
                let conjugated = perm_compose(a, &perm_compose(&twisted, &inv));
                let other = GroupGraph::new(gg.graph.clone(), gg.kind, vec![conjugated]).unwrap();
                assert_eq!(equivariant_code(&other, None), base);
            }
        }
    }
}
