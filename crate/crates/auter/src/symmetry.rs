//! Graphs with a faithful action of a finite cyclic or bicyclic group by
//! basepoint-preserving automorphisms.
//!
//! Enumeration of group graphs goes through quotient data: candidate
//! orbit structures (fixed edges, free p-orbits of several shapes over
//! fixed vertices and free vertex orbits) are listed as small labeled
//! quotient multigraphs and lifted; isomorph rejection uses an
//! equivariant canonical code that absorbs graph automorphisms and
//! automorphisms of the acting group.

use crate::canon;
use crate::graph::{forests_from_units, Forest, PointedGraph};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// The acting group: `Z/p` (with `p = 2` allowed) or `Z/p × Z/p` for odd
/// prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupKind {
    /// The trivial group; used by the Whitehead-move machinery where
    /// classical (non-equivariant) moves are a base case.
    Trivial,
    Cyclic {
        p: u32,
    },
    Bicyclic {
        p: u32,
    },
}

impl GroupKind {
    pub fn order(&self) -> u32 {
        match self {
            GroupKind::Trivial => 1,
            GroupKind::Cyclic { p } => *p,
            GroupKind::Bicyclic { p } => p * p,
        }
    }

    pub fn p(&self) -> u32 {
        match self {
            GroupKind::Trivial => 1,
            GroupKind::Cyclic { p } | GroupKind::Bicyclic { p } => *p,
        }
    }

    pub fn n_generators(&self) -> usize {
        match self {
            GroupKind::Trivial => 0,
            GroupKind::Cyclic { .. } => 1,
            GroupKind::Bicyclic { .. } => 2,
        }
    }

    /// Tag used in the JSON format.
    pub fn json_tag(&self) -> &'static str {
        match self {
            GroupKind::Trivial => "Z1",
            GroupKind::Cyclic { p: 2 } => "Z2",
            GroupKind::Cyclic { .. } => "Zp",
            GroupKind::Bicyclic { .. } => "ZpxZp",
        }
    }
}

/// A pointed graph with a faithful group action given by half-edge
/// permutations of the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupGraph {
    pub graph: PointedGraph,
    pub kind: GroupKind,
    pub generators: Vec<Vec<u32>>,
}

pub fn perm_identity(n: usize) -> Vec<u32> {
    (0..n as u32).collect()
}

/// `(a ∘ b)[h] = a[b[h]]`.
pub fn perm_compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    b.iter().map(|&h| a[h as usize]).collect()
}

pub fn perm_pow(p: &[u32], k: u32) -> Vec<u32> {
    let mut out = perm_identity(p.len());
    for _ in 0..k {
        out = perm_compose(p, &out);
    }
    out
}

impl GroupGraph {
    pub fn new(graph: PointedGraph, kind: GroupKind, generators: Vec<Vec<u32>>) -> Result<Self> {
        let gg = GroupGraph {
            graph,
            kind,
            generators,
        };
        gg.validate()?;
        Ok(gg)
    }

    /// Checks the action: generators are basepoint-preserving half-edge
    /// automorphisms without edge inversions, of exact order `p`,
    /// commuting and jointly faithful in the bicyclic case.
    pub fn validate(&self) -> Result<()> {
        self.graph
            .validate_structural()
            .map_err(|e| Error::InvalidAction(format!("underlying graph: {e}")))?;
        if self.generators.len() != self.kind.n_generators() {
            return Err(Error::InvalidAction("wrong generator count".into()));
        }
        let p = self.kind.p();
        let n = self.graph.n_half_edges();
        let id = perm_identity(n);
        for gen in &self.generators {
            if !canon::is_automorphism(&self.graph, None, gen) {
                return Err(Error::InvalidAction(
                    "generator is not a pointed automorphism".into(),
                ));
            }
            for h in 0..n {
                if gen[h] == self.graph.pairing[h] {
                    return Err(Error::InvalidAction(format!(
                        "generator inverts the edge of half-edge {h}"
                    )));
                }
            }
            if *gen == id {
                return Err(Error::InvalidAction("generator is trivial".into()));
            }
            if perm_pow(gen, p) != id {
                return Err(Error::InvalidAction(format!(
                    "generator order does not divide {p}"
                )));
            }
        }
        if let GroupKind::Bicyclic { .. } = self.kind {
            let (a, b) = (&self.generators[0], &self.generators[1]);
            if perm_compose(a, b) != perm_compose(b, a) {
                return Err(Error::InvalidAction("generators do not commute".into()));
            }
            // Faithful: σ^i τ^j = id only for i = j = 0.
            for i in 0..p {
                for j in 0..p {
                    if (i, j) != (0, 0) && perm_compose(&perm_pow(a, i), &perm_pow(b, j)) == id {
                        return Err(Error::InvalidAction("action is not faithful".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// All group elements as half-edge permutations, identity first.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let p = self.kind.p();
        match self.kind {
            GroupKind::Trivial => vec![perm_identity(self.graph.n_half_edges())],
            GroupKind::Cyclic { .. } => (0..p).map(|k| perm_pow(&self.generators[0], k)).collect(),
            GroupKind::Bicyclic { .. } => {
                let mut out = Vec::with_capacity((p * p) as usize);
                for i in 0..p {
                    for j in 0..p {
                        out.push(perm_compose(
                            &perm_pow(&self.generators[0], i),
                            &perm_pow(&self.generators[1], j),
                        ));
                    }
                }
                out
            }
        }
    }

    /// Edge-level permutation induced by a half-edge permutation.
    pub fn edge_perm(&self, he_perm: &[u32]) -> Vec<u32> {
        (0..self.graph.n_edges() as u32)
            .map(|e| he_perm[2 * e as usize] / 2)
            .collect()
    }

    /// Orbits of edges under the whole group, each sorted, listed by
    /// smallest member.
    pub fn edge_orbits(&self) -> Vec<Vec<u32>> {
        let perms: Vec<Vec<u32>> = self
            .elements()
            .iter()
            .map(|el| self.edge_perm(el))
            .collect();
        let n = self.graph.n_edges() as u32;
        let mut seen = vec![false; n as usize];
        let mut orbits = Vec::new();
        for e in 0..n {
            if seen[e as usize] {
                continue;
            }
            let mut orbit: BTreeSet<u32> = BTreeSet::new();
            for perm in &perms {
                orbit.insert(perm[e as usize]);
            }
            for &x in &orbit {
                seen[x as usize] = true;
            }
            orbits.push(orbit.into_iter().collect());
        }
        orbits
    }

    /// Nonempty invariant forests (unions of edge orbits that are
    /// acyclic); `maximal_only` filters to inclusion-maximal ones.
    pub fn invariant_forests(&self, maximal_only: bool) -> Vec<Forest> {
        forests_from_units(&self.graph, &self.edge_orbits(), maximal_only)
    }

    /// Reduced means no nonempty invariant forest exists.
    pub fn is_reduced(&self) -> bool {
        self.invariant_forests(false).is_empty()
    }

    /// Edges contained in every maximal invariant forest; empty when the
    /// graph is reduced.
    pub fn inessential_edges(&self) -> BTreeSet<u32> {
        let maximal = self.invariant_forests(true);
        let Some(first) = maximal.first() else {
            return BTreeSet::new();
        };
        let mut inter = first.edges.clone();
        for f in &maximal[1..] {
            inter = inter.intersection(&f.edges).copied().collect();
        }
        inter
    }

    pub fn is_essential(&self) -> bool {
        self.inessential_edges().is_empty()
    }

    /// Collapses an invariant forest, transporting the action.
    pub fn collapse_invariant(&self, forest: &Forest) -> Result<GroupGraph> {
        let orbits = self.edge_orbits();
        for orbit in &orbits {
            let inside = orbit.iter().filter(|e| forest.edges.contains(e)).count();
            if inside != 0 && inside != orbit.len() {
                return Err(Error::InvalidAction(
                    "forest is not invariant under the action".into(),
                ));
            }
        }
        let collapse = self.graph.collapse(forest)?;
        let mut generators = Vec::new();
        for gen in &self.generators {
            let mut new_gen = perm_identity(collapse.graph.n_half_edges());
            for h in 0..self.graph.n_half_edges() {
                if let Some(nh) = collapse.half_edge_map[h] {
                    let img = collapse.half_edge_map[gen[h] as usize]
                        .expect("action permutes surviving edges");
                    new_gen[nh as usize] = img;
                }
            }
            generators.push(new_gen);
        }
        GroupGraph::new(collapse.graph, self.kind, generators)
    }

    /// Collapses inessential edges until none remain.
    pub fn essential_reduction(&self) -> Result<GroupGraph> {
        let mut current = self.clone();
        loop {
            let inessential = current.inessential_edges();
            if inessential.is_empty() {
                return Ok(current);
            }
            let forest = Forest::new(&current.graph, inessential)?;
            current = current.collapse_invariant(&forest)?;
        }
    }

    /// Collapses maximal invariant forests repeatedly, collecting every
    /// reduced graph reachable this way.
    pub fn reduce_all(&self) -> Vec<GroupGraph> {
        let mut out: BTreeMap<Vec<u8>, GroupGraph> = BTreeMap::new();
        let mut stack = vec![self.clone()];
        let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
        while let Some(gg) = stack.pop() {
            if !seen.insert(equivariant_code(&gg, None)) {
                continue;
            }
            let maximal = gg.invariant_forests(true);
            if maximal.is_empty() {
                out.insert(equivariant_code(&gg, None), gg);
                continue;
            }
            for f in maximal {
                let collapsed = gg.collapse_invariant(&f).expect("invariant forest");
                stack.push(collapsed);
            }
        }
        out.into_values().collect()
    }
}

/// Group automorphism twists of the generator tuple: exponent maps for a
/// cyclic group, `GL_2(F_p)` substitutions for a bicyclic one.
fn generator_twists(kind: GroupKind, generators: &[Vec<u32>]) -> Vec<Vec<Vec<u32>>> {
    let p = kind.p();
    match kind {
        GroupKind::Trivial => Vec::new(),
        GroupKind::Cyclic { .. } => (1..p).map(|k| vec![perm_pow(&generators[0], k)]).collect(),
        GroupKind::Bicyclic { .. } => {
            let mut out = Vec::new();
            for a in 0..p {
                for b in 0..p {
                    for c in 0..p {
                        for d in 0..p {
                            if (a * d + p * p - b * c).is_multiple_of(p) {
                                continue;
                            }
                            let g1 = perm_compose(
                                &perm_pow(&generators[0], a),
                                &perm_pow(&generators[1], c),
                            );
                            let g2 = perm_compose(
                                &perm_pow(&generators[0], b),
                                &perm_pow(&generators[1], d),
                            );
                            out.push(vec![g1, g2]);
                        }
                    }
                }
            }
            out
        }
    }
}

/// Cap on the automorphism closures used during equivariant
/// canonicalization; the graphs normalized this way are desk scale.
const AUT_CLOSURE_CAP: usize = 200_000;

/// Canonical byte code of a group graph up to equivariant isomorphism
/// (basepoint-preserving graph isomorphism intertwining the actions up to
/// an automorphism of the group).  Optional edge colors restrict the
/// isomorphisms, which is how invariant forest chains are canonicalized.
pub fn equivariant_code(gg: &GroupGraph, colors: Option<&[u32]>) -> Vec<u8> {
    let (target, phi) = canon::map_to_canonical_instance(&gg.graph, colors);
    let target_colors = canon::decode(&canon::canonical_form(&gg.graph, colors).code).1;
    let transported: Vec<Vec<u32>> = gg
        .generators
        .iter()
        .map(|gen| {
            let mut out = vec![0u32; gen.len()];
            for h in 0..gen.len() {
                out[phi[h] as usize] = phi[gen[h] as usize];
            }
            out
        })
        .collect();
    let auts = canon::all_automorphisms(&target, Some(&target_colors), AUT_CLOSURE_CAP)
        .expect("equivariant canonicalization needs a desk-scale automorphism group");
    let mut best: Option<Vec<u32>> = None;
    let mut twists = generator_twists(gg.kind, &transported);
    twists.push(transported.clone());
    for twist in &twists {
        for a in &auts {
            let mut inv = vec![0u32; a.len()];
            for h in 0..a.len() {
                inv[a[h] as usize] = h as u32;
            }
            let mut encoded: Vec<u32> = Vec::with_capacity(twist.len() * a.len());
            for gen in twist {
                for h in 0..a.len() {
                    encoded.push(a[gen[inv[h] as usize] as usize]);
                }
            }
            if best.as_ref().is_none_or(|b| encoded < *b) {
                best = Some(encoded);
            }
        }
    }
    let mut code = canon::canonical_form(&gg.graph, colors).code;
    code.push(match gg.kind {
        GroupKind::Trivial => 0,
        GroupKind::Cyclic { .. } => 1,
        GroupKind::Bicyclic { .. } => 2,
    });
    code.push(gg.kind.p() as u8);
    for w in best.expect("at least the identity automorphism") {
        code.extend_from_slice(&w.to_le_bytes());
    }
    code
}

/// One equivariant isomorphism class.
#[derive(Debug, Clone)]
pub struct GroupGraphClass {
    pub gg: GroupGraph,
    pub eq_code: Vec<u8>,
    pub plain_code: Vec<u8>,
}

/// Bounds for the orbit-construction enumerator.  `None` components mean
/// the full range implied by the rank.
#[derive(Debug, Clone, Copy, Default)]
pub struct OrbitBounds {
    pub max_fixed_vertices: Option<u32>,
    pub max_free_vertex_orbits: Option<u32>,
    pub max_fixed_edges: Option<u32>,
}

/// Free-edge-orbit shapes of the quotient data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum OrbitDescriptor {
    /// `p` loops at a fixed vertex.
    LoopAtFixed(u32),
    /// `p` parallel edges between two distinct fixed vertices.
    ParallelFixed(u32, u32),
    /// One edge from a fixed vertex to each vertex of a free orbit.
    ToFree(u32, u32),
    /// Edges inside one free orbit with a twist: `w_i – w_(i+t)`.
    FreeSelf(u32, u32),
    /// Edges between two distinct free orbits with a twist.
    FreeFree(u32, u32, u32),
}

/// Runs the quotient-data enumeration and emits every lifted admissible
/// connected candidate with its rotation generator, without any isomorph
/// rejection.
pub fn enumerate_cyclic_raw(
    rank: u32,
    p: u32,
    bounds: OrbitBounds,
    emit: &mut dyn FnMut(&PointedGraph, &[u32]),
) {
    let vmax = 2 * rank - 1;
    let fv_cap = bounds.max_fixed_vertices.unwrap_or(vmax).min(vmax);
    let ov_cap = bounds
        .max_free_vertex_orbits
        .unwrap_or(vmax / p)
        .min(vmax / p);
    for fv in 1..=fv_cap {
        for ov in 0..=ov_cap {
            let v = fv + p * ov;
            if v > vmax {
                continue;
            }
            let n_edges = rank + v - 1;
            for oe in 1..=n_edges / p {
                let fe = n_edges - p * oe;
                if let Some(cap) = bounds.max_fixed_edges {
                    if fe > cap {
                        continue;
                    }
                }
                enumerate_quotient_data(fv, ov, fe, oe, p, &mut |graph, generator| {
                    if graph.is_connected() && graph.validate_admissible().is_ok() {
                        emit(graph, generator);
                    }
                });
            }
        }
    }
}

/// Enumerates equivariant isomorphism classes of cyclic group graphs of
/// the given rank by lifting quotient data.
pub fn enumerate_cyclic(rank: u32, p: u32, bounds: OrbitBounds) -> Vec<GroupGraphClass> {
    let mut by_code: BTreeMap<Vec<u8>, GroupGraph> = BTreeMap::new();
    enumerate_cyclic_raw(rank, p, bounds, &mut |graph, generator| {
        let gg = GroupGraph {
            graph: graph.clone(),
            kind: GroupKind::Cyclic { p },
            generators: vec![generator.to_vec()],
        };
        debug_assert!(gg.validate().is_ok());
        let code = equivariant_code(&gg, None);
        by_code.entry(code).or_insert(gg);
    });
    by_code
        .into_iter()
        .map(|(eq_code, gg)| {
            let plain_code = canon::canonical_code(&gg.graph);
            GroupGraphClass {
                gg,
                eq_code,
                plain_code,
            }
        })
        .collect()
}

/// Enumerates descriptor multisets and fixed multigraphs for one shape
/// `(fv, ov, fe, oe)`, emitting every lifted graph with its generator.
fn enumerate_quotient_data(
    fv: u32,
    ov: u32,
    fe: u32,
    oe: u32,
    p: u32,
    emit: &mut dyn FnMut(&PointedGraph, &[u32]),
) {
    // Descriptor universe in canonical order.
    let mut universe: Vec<OrbitDescriptor> = Vec::new();
    for u in 0..fv {
        universe.push(OrbitDescriptor::LoopAtFixed(u));
    }
    for u in 0..fv {
        for v in u + 1..fv {
            universe.push(OrbitDescriptor::ParallelFixed(u, v));
        }
    }
    for u in 0..fv {
        for w in 0..ov {
            universe.push(OrbitDescriptor::ToFree(u, w));
        }
    }
    for w in 0..ov {
        for t in 0..p {
            universe.push(OrbitDescriptor::FreeSelf(w, t));
        }
    }
    for w in 0..ov {
        for x in w + 1..ov {
            for t in 0..p {
                universe.push(OrbitDescriptor::FreeFree(w, x, t));
            }
        }
    }
    let mut chosen: Vec<usize> = Vec::new();
    rec_descriptors(&universe, 0, oe as usize, fv, ov, fe, p, &mut chosen, emit);
}

#[allow(clippy::too_many_arguments)]
fn rec_descriptors(
    universe: &[OrbitDescriptor],
    start: usize,
    remaining: usize,
    fv: u32,
    ov: u32,
    fe: u32,
    p: u32,
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&PointedGraph, &[u32]),
) {
    if remaining == 0 {
        finish_spec(universe, chosen, fv, ov, fe, p, emit);
        return;
    }
    for i in start..universe.len() {
        chosen.push(i);
        rec_descriptors(universe, i, remaining - 1, fv, ov, fe, p, chosen, emit);
        chosen.pop();
    }
}

fn finish_spec(
    universe: &[OrbitDescriptor],
    chosen: &[usize],
    fv: u32,
    ov: u32,
    fe: u32,
    p: u32,
    emit: &mut dyn FnMut(&PointedGraph, &[u32]),
) {
    // Free-orbit valence contributions at fixed vertices and free orbits.
    let mut free_val_fixed = vec![0u32; fv as usize];
    let mut free_val_orbit = vec![0u32; ov as usize];
    for &i in chosen {
        match universe[i] {
            OrbitDescriptor::LoopAtFixed(u) => free_val_fixed[u as usize] += 2 * p,
            OrbitDescriptor::ParallelFixed(u, v) => {
                free_val_fixed[u as usize] += p;
                free_val_fixed[v as usize] += p;
            }
            OrbitDescriptor::ToFree(u, w) => {
                free_val_fixed[u as usize] += p;
                free_val_orbit[w as usize] += 1;
            }
            OrbitDescriptor::FreeSelf(w, _) => free_val_orbit[w as usize] += 2,
            OrbitDescriptor::FreeFree(w, x, _) => {
                free_val_orbit[w as usize] += 1;
                free_val_orbit[x as usize] += 1;
            }
        }
    }
    // Every free orbit needs some incident edges; fixed vertices need
    // enough fixed valence to reach admissibility.
    if free_val_orbit.contains(&0) {
        return;
    }
    let min_fixed_degree: Vec<u32> = (0..fv)
        .map(|u| {
            let need: u32 = if u == 0 { 2 } else { 3 };
            need.saturating_sub(free_val_fixed[u as usize])
        })
        .collect();
    if min_fixed_degree.iter().sum::<u32>() > 2 * fe {
        return;
    }
    // Enumerate the fixed multigraphs: multisets of `fe` vertex pairs
    // meeting the minimum degrees.
    let pairs: Vec<(u32, u32)> = (0..fv).flat_map(|u| (u..fv).map(move |v| (u, v))).collect();
    let mut counts = vec![0u32; pairs.len()];
    let mut deg = vec![0u32; fv as usize];
    rec_fixed(
        &pairs,
        0,
        fe,
        &min_fixed_degree,
        &mut deg,
        &mut counts,
        &mut |counts| {
            let mut fixed_edges = Vec::new();
            for (i, &(u, v)) in pairs.iter().enumerate() {
                for _ in 0..counts[i] {
                    fixed_edges.push((u, v));
                }
            }
            lift(&fixed_edges, universe, chosen, fv, ov, p, emit);
        },
    );
}

#[allow(clippy::too_many_arguments)]
fn rec_fixed(
    pairs: &[(u32, u32)],
    i: usize,
    remaining: u32,
    min_degree: &[u32],
    deg: &mut Vec<u32>,
    counts: &mut Vec<u32>,
    emit: &mut dyn FnMut(&[u32]),
) {
    // Remaining edges supply at most two half-edges toward the missing
    // minimum degrees.
    let missing: u32 = deg
        .iter()
        .zip(min_degree.iter())
        .map(|(d, m)| m.saturating_sub(*d))
        .sum();
    if missing > 2 * remaining {
        return;
    }
    if i == pairs.len() {
        if remaining == 0 && missing == 0 {
            emit(counts);
        }
        return;
    }
    let (u, v) = pairs[i];
    for m in 0..=remaining {
        counts[i] = m;
        deg[u as usize] += m;
        deg[v as usize] += m;
        rec_fixed(pairs, i + 1, remaining - m, min_degree, deg, counts, emit);
        deg[u as usize] -= m;
        deg[v as usize] -= m;
    }
    counts[i] = 0;
}

/// Builds the lifted graph and its rotation generator.
fn lift(
    fixed_edges: &[(u32, u32)],
    universe: &[OrbitDescriptor],
    chosen: &[usize],
    fv: u32,
    ov: u32,
    p: u32,
    emit: &mut dyn FnMut(&PointedGraph, &[u32]),
) {
    let _ = ov;
    let free_vertex = |w: u32, i: u32| fv + w * p + (i % p);
    let mut edges: Vec<(u32, u32)> = fixed_edges.to_vec();
    // Record for each free edge its orbit successor.
    let mut blocks: Vec<(usize, usize)> = Vec::new(); // (first edge id, p)
    for &d in chosen {
        let first = edges.len();
        match universe[d] {
            OrbitDescriptor::LoopAtFixed(u) => {
                for _ in 0..p {
                    edges.push((u, u));
                }
            }
            OrbitDescriptor::ParallelFixed(u, v) => {
                for _ in 0..p {
                    edges.push((u, v));
                }
            }
            OrbitDescriptor::ToFree(u, w) => {
                for i in 0..p {
                    edges.push((u, free_vertex(w, i)));
                }
            }
            OrbitDescriptor::FreeSelf(w, t) => {
                for i in 0..p {
                    edges.push((free_vertex(w, i), free_vertex(w, i + t)));
                }
            }
            OrbitDescriptor::FreeFree(w, x, t) => {
                for i in 0..p {
                    edges.push((free_vertex(w, i), free_vertex(x, i + t)));
                }
            }
        }
        blocks.push((first, p as usize));
    }
    let n_vertices = fv + ov * p;
    let graph = PointedGraph::from_edges(n_vertices, 0, None, &edges);
    let mut generator = perm_identity(graph.n_half_edges());
    for &(first, len) in &blocks {
        for i in 0..len {
            let e = (first + i) as u32;
            let f = (first + (i + 1) % len) as u32;
            generator[2 * e as usize] = 2 * f;
            generator[2 * e as usize + 1] = 2 * f + 1;
        }
    }
    emit(&graph, &generator);
}

/// Enumerates bicyclic classes by extending each cyclic class with a
/// commuting second rotation.
pub fn enumerate_bicyclic(rank: u32, p: u32) -> Vec<GroupGraphClass> {
    let cyclic = enumerate_cyclic(rank, p, OrbitBounds::default());
    let mut by_code: BTreeMap<Vec<u8>, GroupGraph> = BTreeMap::new();
    for class in &cyclic {
        let g = &class.gg.graph;
        let sigma = &class.gg.generators[0];
        let all = canon::all_automorphisms(g, None, AUT_CLOSURE_CAP)
            .expect("bicyclic extension search needs a desk-scale automorphism group");
        let id = perm_identity(g.n_half_edges());
        let powers: Vec<Vec<u32>> = (0..p).map(|k| perm_pow(sigma, k)).collect();
        for tau in &all {
            if *tau == id || powers.contains(tau) {
                continue;
            }
            if perm_pow(tau, p) != id {
                continue;
            }
            if perm_compose(sigma, tau) != perm_compose(tau, sigma) {
                continue;
            }
            if tau.iter().enumerate().any(|(h, &x)| x == g.pairing[h]) {
                continue;
            }
            let candidate = GroupGraph {
                graph: g.clone(),
                kind: GroupKind::Bicyclic { p },
                generators: vec![sigma.clone(), tau.clone()],
            };
            if candidate.validate().is_err() {
                continue;
            }
            let code = equivariant_code(&candidate, None);
            by_code.entry(code).or_insert(candidate);
        }
    }
    by_code
        .into_iter()
        .map(|(eq_code, gg)| {
            let plain_code = canon::canonical_code(&gg.graph);
            GroupGraphClass {
                gg,
                eq_code,
                plain_code,
            }
        })
        .collect()
}

/// Equivariant isomorphism classes of group graphs of the given rank.
/// `reduced_only` keeps classes with no nonempty invariant forest.
pub fn enumerate_group_graphs(
    rank: u32,
    kind: GroupKind,
    reduced_only: bool,
) -> Vec<GroupGraphClass> {
    let mut classes = match kind {
        GroupKind::Trivial => panic!("enumeration needs a nontrivial group"),
        GroupKind::Cyclic { p } => enumerate_cyclic(rank, p, OrbitBounds::default()),
        GroupKind::Bicyclic { p } => enumerate_bicyclic(rank, p),
    };
    if reduced_only {
        classes.retain(|c| c.gg.is_reduced());
    }
    classes
}

/// Restriction of a bicyclic action to the cyclic subgroup generated by
/// `σ^a τ^b`.
pub fn restrict_bicyclic(gg: &GroupGraph, a: u32, b: u32) -> Result<GroupGraph> {
    let GroupKind::Bicyclic { p } = gg.kind else {
        return Err(Error::InvalidAction("not a bicyclic action".into()));
    };
    if (a % p, b % p) == (0, 0) {
        return Err(Error::InvalidAction("trivial subgroup".into()));
    }
    let gen = perm_compose(
        &perm_pow(&gg.generators[0], a % p),
        &perm_pow(&gg.generators[1], b % p),
    );
    GroupGraph::new(gg.graph.clone(), GroupKind::Cyclic { p }, vec![gen])
}

// ---------------------------------------------------------------------
// Standard actions.
// ---------------------------------------------------------------------

/// The rose of rank `n` with `Z/p` rotating its first `p` petals.
pub fn rose_rotation(n: u32, p: u32) -> GroupGraph {
    assert!(n >= p);
    let graph = crate::zoo::rose(n);
    let mut gen = perm_identity(graph.n_half_edges());
    for i in 0..p {
        let e = i;
        let f = (i + 1) % p;
        gen[2 * e as usize] = 2 * f;
        gen[2 * e as usize + 1] = 2 * f + 1;
    }
    GroupGraph::new(graph, GroupKind::Cyclic { p }, vec![gen]).unwrap()
}

/// The theta graph with `p` edges rotated cyclically.
pub fn theta_rotation(p: u32) -> GroupGraph {
    let graph = crate::zoo::theta(p);
    let mut gen = perm_identity(graph.n_half_edges());
    for i in 0..p {
        let f = (i + 1) % p;
        gen[2 * i as usize] = 2 * f;
        gen[2 * i as usize + 1] = 2 * f + 1;
    }
    GroupGraph::new(graph, GroupKind::Cyclic { p }, vec![gen]).unwrap()
}

/// `R_k ∨ Θ ∨ R_(p-1-k)` with the theta edges rotated.
pub fn b_graph_action(p: u32, k: u32) -> GroupGraph {
    assert!(k < p);
    let graph = crate::zoo::theta_with_roses(p, k, p - 1 - k);
    let mut gen = perm_identity(graph.n_half_edges());
    for i in 0..p {
        let f = (i + 1) % p;
        gen[2 * i as usize] = 2 * f;
        gen[2 * i as usize + 1] = 2 * f + 1;
    }
    GroupGraph::new(graph, GroupKind::Cyclic { p }, vec![gen]).unwrap()
}

fn rotate_block(gen: &mut [u32], first_edge: u32, p: u32) {
    for i in 0..p {
        let e = first_edge + i;
        let f = first_edge + (i + 1) % p;
        gen[2 * e as usize] = 2 * f;
        gen[2 * e as usize + 1] = 2 * f + 1;
    }
}

/// The tripod graph with the diagonal rotation of all three edge families.
pub fn phi_rotation(p: u32) -> GroupGraph {
    let graph = crate::zoo::phi(p);
    let n = graph.n_half_edges();
    let mut gen = perm_identity(n);
    rotate_block(&mut gen, 0, p);
    rotate_block(&mut gen, p, p);
    rotate_block(&mut gen, 2 * p, p);
    GroupGraph::new(graph, GroupKind::Cyclic { p }, vec![gen]).unwrap()
}

/// Wedge of two thetas at the basepoint, diagonal rotation.
pub fn psi_diagonal(p: u32) -> GroupGraph {
    let graph = crate::zoo::psi(p);
    let mut gen = perm_identity(graph.n_half_edges());
    rotate_block(&mut gen, 0, p);
    rotate_block(&mut gen, p, p);
    GroupGraph::new(graph, GroupKind::Cyclic { p }, vec![gen]).unwrap()
}

/// Chain of two thetas with the basepoint at one end, diagonal rotation.
pub fn omega_diagonal(p: u32) -> GroupGraph {
    let graph = crate::zoo::omega(p);
    let mut gen = perm_identity(graph.n_half_edges());
    rotate_block(&mut gen, 0, p);
    rotate_block(&mut gen, p, p);
    GroupGraph::new(graph, GroupKind::Cyclic { p }, vec![gen]).unwrap()
}

/// Wedge of two thetas at the basepoint with independent rotations.
pub fn psi_bicyclic(p: u32) -> GroupGraph {
    let graph = crate::zoo::psi(p);
    let mut g1 = perm_identity(graph.n_half_edges());
    rotate_block(&mut g1, 0, p);
    let mut g2 = perm_identity(graph.n_half_edges());
    rotate_block(&mut g2, p, p);
    GroupGraph::new(graph, GroupKind::Bicyclic { p }, vec![g1, g2]).unwrap()
}

/// Chain of two thetas with independent rotations.
pub fn omega_bicyclic(p: u32) -> GroupGraph {
    let graph = crate::zoo::omega(p);
    let mut g1 = perm_identity(graph.n_half_edges());
    rotate_block(&mut g1, 0, p);
    let mut g2 = perm_identity(graph.n_half_edges());
    rotate_block(&mut g2, p, p);
    GroupGraph::new(graph, GroupKind::Bicyclic { p }, vec![g1, g2]).unwrap()
}

/// The rose of rank `n` with `Z/2` swapping its first two petals.
pub fn swap_rose(n: u32) -> GroupGraph {
    assert!(n >= 2);
    let graph = crate::zoo::rose(n);
    let mut gen = perm_identity(graph.n_half_edges());
    gen[0] = 2;
    gen[1] = 3;
    gen[2] = 0;
    gen[3] = 1;
    GroupGraph::new(graph, GroupKind::Cyclic { p: 2 }, vec![gen]).unwrap()
}

// ---------------------------------------------------------------------
// JSON format.
// ---------------------------------------------------------------------

/// Serialization of a group graph: the graph fields plus the group tag
/// and generator permutations.
#[derive(Debug, Serialize, Deserialize)]
pub struct GroupGraphJson {
    #[serde(flatten)]
    pub graph: PointedGraph,
    pub group: String,
    pub p: u32,
    pub generators: Vec<Vec<u32>>,
}

impl GroupGraph {
    pub fn to_json(&self) -> GroupGraphJson {
        GroupGraphJson {
            graph: self.graph.clone(),
            group: self.kind.json_tag().to_string(),
            p: self.kind.p(),
            generators: self.generators.clone(),
        }
    }

    pub fn from_json(json: GroupGraphJson) -> Result<GroupGraph> {
        let kind = match json.group.as_str() {
            "Z1" => GroupKind::Trivial,
            "Zp" | "Z2" => GroupKind::Cyclic { p: json.p },
            "ZpxZp" => GroupKind::Bicyclic { p: json.p },
            other => return Err(Error::InvalidAction(format!("unknown group tag {other}"))),
        };
        GroupGraph::new(json.graph, kind, json.generators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_rotation_is_reduced() {
        let gg = theta_rotation(3);
        assert!(gg.validate().is_ok());
        assert!(gg.is_reduced());
        assert!(gg.inessential_edges().is_empty());
        assert!(gg.invariant_forests(false).is_empty());
    }

    #[test]
    fn phi_invariant_forests_are_the_three_orbits() {
        let gg = phi_rotation(3);
        let forests = gg.invariant_forests(false);
        assert_eq!(forests.len(), 3);
        let maximal = gg.invariant_forests(true);
        assert_eq!(maximal.len(), 3);
        assert!(maximal.iter().all(|f| f.len() == 3));
        // Their intersection is empty: phi is essential but not reduced.
        assert!(gg.is_essential());
        assert!(!gg.is_reduced());
    }

    #[test]
    fn collapsing_phi_orbits_gives_psi_and_omega() {
        let gg = phi_rotation(3);
        let psi = psi_diagonal(3);
        let omega = omega_diagonal(3);
        let mut seen = BTreeSet::new();
        for f in gg.invariant_forests(true) {
            let collapsed = gg.collapse_invariant(&f).unwrap();
            seen.insert(equivariant_code(&collapsed, None));
        }
        assert_eq!(seen.len(), 2);
        assert!(seen.contains(&equivariant_code(&psi, None)));
        assert!(seen.contains(&equivariant_code(&omega, None)));
    }

    #[test]
    fn diagonal_actions_on_psi_are_equivalent_up_to_group_twist() {
        // Rotating the second theta by the square of the rotation gives
        // the same equivariant class as the plain diagonal.
        let graph = crate::zoo::psi(3);
        let mut skew = perm_identity(graph.n_half_edges());
        rotate_block(&mut skew, 0, 3);
        for i in 0..3u32 {
            let e = 3 + i;
            let f = 3 + (i + 2) % 3;
            skew[2 * e as usize] = 2 * f;
            skew[2 * e as usize + 1] = 2 * f + 1;
        }
        let a = GroupGraph::new(graph, GroupKind::Cyclic { p: 3 }, vec![skew]).unwrap();
        assert_eq!(
            equivariant_code(&a, None),
            equivariant_code(&psi_diagonal(3), None)
        );
    }

    #[test]
    fn rank_two_reduced_is_theta_only() {
        let classes = enumerate_group_graphs(2, GroupKind::Cyclic { p: 3 }, true);
        assert_eq!(classes.len(), 1);
        assert_eq!(
            classes[0].eq_code,
            equivariant_code(&theta_rotation(3), None)
        );
    }

    #[test]
    fn rank_four_reduced_cyclic_classes() {
        let classes = enumerate_group_graphs(4, GroupKind::Cyclic { p: 3 }, true);
        let codes: BTreeSet<Vec<u8>> = classes.iter().map(|c| c.eq_code.clone()).collect();
        assert_eq!(classes.len(), 6, "expected R, three B graphs, psi, omega");
        for expected in [
            rose_rotation(4, 3),
            b_graph_action(3, 0),
            b_graph_action(3, 1),
            b_graph_action(3, 2),
            psi_diagonal(3),
            omega_diagonal(3),
        ] {
            assert!(codes.contains(&equivariant_code(&expected, None)));
        }
    }

    #[test]
    fn rank_four_reduced_bicyclic_classes() {
        let classes = enumerate_group_graphs(4, GroupKind::Bicyclic { p: 3 }, true);
        let codes: BTreeSet<Vec<u8>> = classes.iter().map(|c| c.eq_code.clone()).collect();
        assert_eq!(classes.len(), 2);
        assert!(codes.contains(&equivariant_code(&psi_bicyclic(3), None)));
        assert!(codes.contains(&equivariant_code(&omega_bicyclic(3), None)));
    }

    #[test]
    fn swap_rose_validates() {
        let gg = swap_rose(3);
        assert!(gg.validate().is_ok());
        assert!(gg.is_reduced());
    }

    #[test]
    fn essential_reduction_of_theta_loop_graph() {
        // Theta with a loop hanging from a subdivision point of one extra
        // fixed edge: the two subdivision halves are inessential.
        // Vertices: 0 = *, 1 = far theta vertex, 2 = subdivision point.
        let mut edges: Vec<(u32, u32)> = (0..3).map(|_| (0, 1)).collect();
        edges.push((0, 2)); // edge 3
        edges.push((2, 1)); // edge 4
        edges.push((2, 2)); // loop, edge 5
        let graph = PointedGraph::from_edges(3, 0, None, &edges);
        let mut gen = perm_identity(graph.n_half_edges());
        rotate_block(&mut gen, 0, 3);
        let gg = GroupGraph::new(graph, GroupKind::Cyclic { p: 3 }, vec![gen]).unwrap();
        let inessential = gg.inessential_edges();
        assert_eq!(inessential, [3u32, 4].into_iter().collect());
        let reduced = gg.essential_reduction().unwrap();
        // Collapsing both halves merges everything into the rose R_4 with
        // three rotated petals and the loop.
        assert_eq!(
            equivariant_code(&reduced, None),
            equivariant_code(&rose_rotation(4, 3), None)
        );
    }

    #[test]
    fn theta_with_wye_reduces_to_big_theta() {
        // Three rotated edges between u and v, plus a wye whose two top
        // arms land on u and whose bottom arm lands on v: the bottom arm
        // lies in every maximal invariant forest.
        let mut edges: Vec<(u32, u32)> = (0..3).map(|_| (0, 1)).collect();
        edges.push((2, 0)); // arm, edge 3
        edges.push((2, 0)); // arm, edge 4
        edges.push((2, 1)); // bottom, edge 5
        let graph = PointedGraph::from_edges(3, 0, None, &edges);
        let mut gen = perm_identity(graph.n_half_edges());
        rotate_block(&mut gen, 0, 3);
        let gg = GroupGraph::new(graph, GroupKind::Cyclic { p: 3 }, vec![gen]).unwrap();
        assert_eq!(gg.inessential_edges(), [5u32].into_iter().collect());
        let reduced = gg.essential_reduction().unwrap();
        // Five parallel edges, three of them rotated.
        assert_eq!(reduced.graph.n_vertices, 2);
        assert_eq!(reduced.graph.n_edges(), 5);
        let ends = |e: u32| {
            let (u, v) = reduced.graph.edge_ends(e);
            (u.min(v), u.max(v))
        };
        assert!(
            (0..5).all(|e| ends(e) == ends(0)),
            "all five edges parallel"
        );
    }

    #[test]
    fn equivariant_classes_refine_plain_classes() {
        let plain_codes: BTreeSet<Vec<u8>> =
            crate::enumerate::enumerate_graphs(4, crate::enumerate::Pointing::Single, None)
                .into_iter()
                .map(|c| c.code)
                .collect();
        for class in enumerate_group_graphs(4, GroupKind::Cyclic { p: 3 }, false) {
            assert!(
                plain_codes.contains(&class.plain_code),
                "forgetting the action must land in an enumerated class"
            );
        }
    }

    #[test]
    fn json_round_trip() {
        let gg = psi_bicyclic(3);
        let json = gg.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let parsed: GroupGraphJson = serde_json::from_str(&text).unwrap();
        let back = GroupGraph::from_json(parsed).unwrap();
        assert_eq!(equivariant_code(&back, None), equivariant_code(&gg, None));
    }
}
