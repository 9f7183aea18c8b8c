//! Nielsen transformations on group graphs and the Nielsen-equivalence
//! bookkeeping for subgroup classes.
//!
//! An admissible transformation `<e, f>` re-terminates the orbit of an
//! oriented edge `e` along another oriented edge `f` with the same
//! terminal vertex, a different orbit, and `stab(e) ⊆ stab(f)`.  The
//! result keeps the vertex and edge sets and stays a valid group graph,
//! though it may fail to be reduced; closures reduce after each move.

use crate::graph::PointedGraph;
use crate::symmetry::{equivariant_code, GroupGraph, GroupKind};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// Element indices (into `gg.elements()`) stabilizing an oriented edge.
fn half_edge_stabilizer(gg: &GroupGraph, h: u32) -> BTreeSet<usize> {
    gg.elements()
        .iter()
        .enumerate()
        .filter(|(_, el)| el[h as usize] == h)
        .map(|(i, _)| i)
        .collect()
}

/// Oriented-edge orbit of `h` together with the orbit of its reverse.
fn oriented_orbit_with_reverses(gg: &GroupGraph, h: u32) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    let hbar = gg.graph.pairing[h as usize];
    for el in gg.elements() {
        out.insert(el[h as usize]);
        out.insert(el[hbar as usize]);
    }
    out
}

/// Applies the admissible Nielsen transformation `<e, f>`; `e` and `f`
/// are oriented edges named by their terminal half-edges.
pub fn nielsen_transform(gg: &GroupGraph, e: u32, f: u32) -> Result<GroupGraph> {
    let graph = &gg.graph;
    let n = graph.n_half_edges() as u32;
    if e >= n || f >= n {
        return Err(Error::NielsenPrecondition("edge out of range"));
    }
    if oriented_orbit_with_reverses(gg, e).contains(&f) {
        return Err(Error::NielsenPrecondition("same orbit"));
    }
    if graph.endpoint[e as usize] != graph.endpoint[f as usize] {
        return Err(Error::NielsenPrecondition("terminal vertices differ"));
    }
    let stab_e = half_edge_stabilizer(gg, e);
    let stab_f = half_edge_stabilizer(gg, f);
    if !stab_e.is_subset(&stab_f) {
        return Err(Error::NielsenPrecondition(
            "stab(e) not contained in stab(f)",
        ));
    }
    // Re-terminate: τ'(ge) = ι(gf) for every group element g.
    let mut endpoint = graph.endpoint.clone();
    for el in gg.elements() {
        let ge = el[e as usize] as usize;
        let gf = el[f as usize] as usize;
        endpoint[ge] = graph.endpoint[graph.pairing[gf] as usize];
    }
    let new_graph = PointedGraph {
        pairing: graph.pairing.clone(),
        endpoint,
        n_vertices: graph.n_vertices,
        basepoint: graph.basepoint,
        aux_point: graph.aux_point,
    };
    if !new_graph.is_connected() {
        return Err(Error::NielsenPrecondition("result disconnected"));
    }
    GroupGraph::new(new_graph, gg.kind, gg.generators.clone())
}

/// All admissible `(e, f)` pairs of oriented edges.
pub fn admissible_moves(gg: &GroupGraph) -> Vec<(u32, u32)> {
    let n = gg.graph.n_half_edges() as u32;
    let mut out = Vec::new();
    for e in 0..n {
        let orbit = oriented_orbit_with_reverses(gg, e);
        let stab_e = half_edge_stabilizer(gg, e);
        for f in 0..n {
            if orbit.contains(&f) {
                continue;
            }
            if gg.graph.endpoint[e as usize] != gg.graph.endpoint[f as usize] {
                continue;
            }
            if stab_e.is_subset(&half_edge_stabilizer(gg, f)) {
                out.push((e, f));
            }
        }
    }
    out
}

/// Breadth-first closure of a reduced seed under all admissible Nielsen
/// transformations, reducing after each move; returns the reduced
/// equivariant classes reached, sorted by code.
pub fn nielsen_closure(seed: &GroupGraph) -> Result<Vec<GroupGraph>> {
    if !seed.is_reduced() {
        return Err(Error::NotReduced);
    }
    let mut classes: BTreeMap<Vec<u8>, GroupGraph> = BTreeMap::new();
    classes.insert(equivariant_code(seed, None), seed.clone());
    let mut frontier = vec![seed.clone()];
    while let Some(gg) = frontier.pop() {
        for (e, f) in admissible_moves(&gg) {
            let moved = nielsen_transform(&gg, e, f)?;
            for reduced in moved.reduce_all() {
                let code = equivariant_code(&reduced, None);
                if let std::collections::btree_map::Entry::Vacant(e) = classes.entry(code) {
                    e.insert(reduced.clone());
                    frontier.push(reduced);
                }
            }
        }
    }
    Ok(classes.into_values().collect())
}

/// Labeled Nielsen-equivalence family of reduced classes.
#[derive(Debug, Clone)]
pub struct Family {
    pub name: String,
    pub kind: GroupKind,
    pub members: Vec<GroupGraph>,
    pub member_codes: Vec<Vec<u8>>,
}

/// The partition of reduced group-graph classes into Nielsen families,
/// with containments between cyclic and bicyclic families.
#[derive(Debug, Clone)]
pub struct SubgroupClassification {
    pub families: Vec<Family>,
    /// `(cyclic family, bicyclic family)` meaning the first is realized by
    /// restricting the second.
    pub containments: Vec<(String, String)>,
}

/// Partitions the reduced classes of the given kind into closures.
fn families_of(rank: u32, kind: GroupKind) -> Result<Vec<Family>> {
    let classes = crate::symmetry::enumerate_group_graphs(rank, kind, true);
    let mut remaining: BTreeMap<Vec<u8>, GroupGraph> =
        classes.into_iter().map(|c| (c.eq_code, c.gg)).collect();
    let mut families = Vec::new();
    while let Some(rep) = remaining.values().next().cloned() {
        let closure = nielsen_closure(&rep)?;
        let mut member_codes = Vec::new();
        let mut members = Vec::new();
        for gg in closure {
            let code = equivariant_code(&gg, None);
            remaining.remove(&code);
            member_codes.push(code);
            members.push(gg);
        }
        families.push(Family {
            name: String::new(),
            kind,
            members,
            member_codes,
        });
    }
    Ok(families)
}

/// Classifies elementary abelian subgroup families at rank `2(p-1)`:
/// Nielsen families of reduced cyclic and bicyclic classes, named after
/// their standard representatives, plus the containment relations found
/// by restricting each bicyclic action to its `p + 1` cyclic subgroups.
pub fn classify_subgroup_classes(rank: u32, p: u32) -> Result<SubgroupClassification> {
    let mut cyclic = families_of(rank, GroupKind::Cyclic { p })?;
    let mut bicyclic = families_of(rank, GroupKind::Bicyclic { p })?;
    // Standard names for the families that contain known representatives.
    let named: Vec<(String, GroupGraph)> = {
        let mut v = Vec::new();
        if rank >= p {
            v.push(("A".to_string(), crate::symmetry::rose_rotation(rank, p)));
        }
        if rank == 2 * (p - 1) {
            for k in 0..=p - 1 {
                v.push((format!("B{k}"), crate::symmetry::b_graph_action(p, k)));
            }
            v.push(("C".to_string(), crate::symmetry::psi_diagonal(p)));
            v.push(("D".to_string(), crate::symmetry::omega_bicyclic(p)));
            v.push(("E".to_string(), crate::symmetry::psi_bicyclic(p)));
        }
        v
    };
    let mut fallback = 0usize;
    for family in cyclic.iter_mut().chain(bicyclic.iter_mut()) {
        for (name, rep) in &named {
            if rep.kind == family.kind {
                let code = equivariant_code(rep, None);
                if family.member_codes.contains(&code) {
                    family.name = name.clone();
                    break;
                }
            }
        }
        if family.name.is_empty() {
            family.name = format!("F{fallback}");
            fallback += 1;
        }
    }
    // Containments.
    let mut containments: BTreeSet<(String, String)> = BTreeSet::new();
    for bic in &bicyclic {
        let rep = &bic.members[0];
        let mut subgroups: Vec<(u32, u32)> = vec![(1, 0), (0, 1)];
        for b in 1..p {
            subgroups.push((1, b));
        }
        for (a, b) in subgroups {
            let restricted = crate::symmetry::restrict_bicyclic(rep, a, b)?;
            for reduced in restricted.reduce_all() {
                let code = equivariant_code(&reduced, None);
                for cyc in &cyclic {
                    if cyc.member_codes.contains(&code) {
                        containments.insert((cyc.name.clone(), bic.name.clone()));
                    }
                }
            }
        }
    }
    let mut families = cyclic;
    families.extend(bicyclic);
    families.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(SubgroupClassification {
        families,
        containments: containments.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::{
        b_graph_action, omega_diagonal, psi_diagonal, rose_rotation, theta_rotation,
    };

    #[test]
    fn psi_to_omega_by_one_move() {
        let psi = psi_diagonal(3);
        // Edge 0 is a `b` edge oriented into the basepoint (half-edge 1 is
        // its head there); edge 3 is a `c` edge with head 7 at the
        // basepoint.
        let head_b = 1u32;
        let head_c = 7u32;
        assert_eq!(psi.graph.endpoint[head_b as usize], psi.graph.basepoint);
        assert_eq!(psi.graph.endpoint[head_c as usize], psi.graph.basepoint);
        let moved = nielsen_transform(&psi, head_b, head_c).unwrap();
        assert_eq!(
            equivariant_code(&moved, None),
            equivariant_code(&omega_diagonal(3), None)
        );
    }

    #[test]
    fn same_orbit_is_rejected() {
        let theta = theta_rotation(3);
        // All edges are one orbit.
        let err = nielsen_transform(&theta, 1, 3).unwrap_err();
        assert!(matches!(err, Error::NielsenPrecondition("same orbit")));
    }

    #[test]
    fn stabilizer_containment_is_checked() {
        // In the rose with rotated petals, pulling a fixed petal along a
        // rotated one fails the stabilizer condition.
        let rose = rose_rotation(4, 3);
        // Half-edge 7 belongs to fixed petal 3; half-edge 1 to a rotated
        // petal.  Both terminate at the basepoint.
        let err = nielsen_transform(&rose, 7, 1).unwrap_err();
        assert!(matches!(
            err,
            Error::NielsenPrecondition("stab(e) not contained in stab(f)")
        ));
    }

    #[test]
    fn closure_of_psi_is_psi_and_omega() {
        let closure = nielsen_closure(&psi_diagonal(3)).unwrap();
        let codes: BTreeSet<Vec<u8>> = closure.iter().map(|g| equivariant_code(g, None)).collect();
        assert_eq!(codes.len(), 2);
        assert!(codes.contains(&equivariant_code(&psi_diagonal(3), None)));
        assert!(codes.contains(&equivariant_code(&omega_diagonal(3), None)));
    }

    #[test]
    fn closure_of_rotated_rose_is_itself() {
        let closure = nielsen_closure(&rose_rotation(4, 3)).unwrap();
        assert_eq!(closure.len(), 1);
    }

    #[test]
    fn closure_of_theta_is_itself() {
        let closure = nielsen_closure(&theta_rotation(3)).unwrap();
        assert_eq!(closure.len(), 1);
    }

    #[test]
    fn closure_requires_reduced_seed() {
        let phi = crate::symmetry::phi_rotation(3);
        assert!(matches!(nielsen_closure(&phi), Err(Error::NotReduced)));
    }

    #[test]
    fn trivial_group_move_on_rose_keeps_the_graph() {
        use crate::symmetry::{GroupGraph, GroupKind};
        let rose = GroupGraph::new(crate::zoo::rose(2), GroupKind::Trivial, vec![]).unwrap();
        for (e, f) in admissible_moves(&rose) {
            let moved = nielsen_transform(&rose, e, f).unwrap();
            assert_eq!(
                equivariant_code(&moved, None),
                equivariant_code(&rose, None),
                "the unmarked rose is unchanged"
            );
        }
    }

    #[test]
    fn inverse_move_returns_the_class() {
        let psi = psi_diagonal(3);
        for (e, f) in admissible_moves(&psi) {
            let moved = nielsen_transform(&psi, e, f).unwrap();
            let back = nielsen_transform(&moved, e, moved.graph.pairing[f as usize]).unwrap();
            assert_eq!(
                equivariant_code(&back, None),
                equivariant_code(&psi, None),
                "<e, f-bar> undoes <e, f>"
            );
        }
    }

    #[test]
    fn seven_families_at_p3() {
        let classification = classify_subgroup_classes(4, 3).unwrap();
        let names: Vec<&str> = classification
            .families
            .iter()
            .map(|f| f.name.as_str())
            .collect();
        assert_eq!(names, vec!["A", "B0", "B1", "B2", "C", "D", "E"]);
        // The C family holds both reduced diagonal classes.
        let c = classification
            .families
            .iter()
            .find(|f| f.name == "C")
            .unwrap();
        assert_eq!(c.members.len(), 2);
        assert_eq!(
            classification.containments,
            vec![
                ("B0".to_string(), "D".to_string()),
                ("B2".to_string(), "D".to_string()),
                ("B2".to_string(), "E".to_string()),
                ("C".to_string(), "D".to_string()),
                ("C".to_string(), "E".to_string()),
            ]
        );
    }

    #[test]
    fn b_graph_closures_are_singletons() {
        for k in 0..=2 {
            let closure = nielsen_closure(&b_graph_action(3, k)).unwrap();
            assert_eq!(closure.len(), 1, "B{k} family should be a singleton");
        }
    }
}
