//! Pointed multigraphs in half-edge form.
//!
//! A graph is a set of half-edges with a fixed-point-free involution
//! (`pairing`) and an attachment map (`endpoint`).  Half-edges `2e` and
//! `2e + 1` always form edge `e`.  An *oriented* edge is named by the
//! half-edge at its terminal vertex, so the oriented edge `h` runs from
//! `endpoint(pair(h))` to `endpoint(h)`.
//!
//! Every graph carries a basepoint `*` and, for double-pointed graphs, an
//! extra distinguished vertex `∘` which may coincide with `*`.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A finite connected pointed multigraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct PointedGraph {
    /// `pairing[h]` is the partner half-edge of `h`.
    pub pairing: Vec<u32>,
    /// `endpoint[h]` is the vertex that half-edge `h` is attached to.
    pub endpoint: Vec<u32>,
    /// Number of vertices.
    pub n_vertices: u32,
    /// The basepoint `*`.
    pub basepoint: u32,
    /// The second distinguished vertex `∘`, when present.  May equal the
    /// basepoint.
    pub aux_point: Option<u32>,
}

/// Wire format: half-edge ids listed explicitly, maps as arrays indexed
/// by id.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphRepr {
    pub half_edges: Vec<u32>,
    pub pairing: Vec<u32>,
    pub endpoint: Vec<u32>,
    pub vertices: Vec<u32>,
    pub basepoint: u32,
    pub aux_point: Option<u32>,
}

impl From<PointedGraph> for GraphRepr {
    fn from(g: PointedGraph) -> GraphRepr {
        GraphRepr {
            half_edges: (0..g.n_half_edges() as u32).collect(),
            pairing: g.pairing,
            endpoint: g.endpoint,
            vertices: (0..g.n_vertices).collect(),
            basepoint: g.basepoint,
            aux_point: g.aux_point,
        }
    }
}

impl TryFrom<GraphRepr> for PointedGraph {
    type Error = Error;
    fn try_from(repr: GraphRepr) -> Result<PointedGraph> {
        if repr.half_edges != (0..repr.half_edges.len() as u32).collect::<Vec<u32>>() {
            return Err(Error::Malformed("half-edge ids must be 0..2E".into()));
        }
        if repr.vertices != (0..repr.vertices.len() as u32).collect::<Vec<u32>>() {
            return Err(Error::Malformed("vertex ids must be 0..V".into()));
        }
        let g = PointedGraph {
            pairing: repr.pairing,
            endpoint: repr.endpoint,
            n_vertices: repr.vertices.len() as u32,
            basepoint: repr.basepoint,
            aux_point: repr.aux_point,
        };
        g.validate_structural()?;
        Ok(g)
    }
}

/// A subset of edges of a parent graph, asserted acyclic on construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Forest {
    pub edges: BTreeSet<u32>,
}

/// One admissibility violation, named for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotConnected,
    /// A vertex of valence at most one: the graph has a free edge.
    FreeEdge(u32),
    /// A vertex other than `*` and `∘` of valence two.
    LowValence(u32),
    /// The basepoint has valence below two.
    BasepointValence(u32),
    /// `∘` (distinct from `*`) has valence below two.
    AuxValence(u32),
    RankZero,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NotConnected => write!(f, "not connected"),
            Violation::FreeEdge(v) => write!(f, "free edge at vertex {v}"),
            Violation::LowValence(v) => write!(f, "vertex {v} has valence 2"),
            Violation::BasepointValence(v) => write!(f, "basepoint valence {v} < 2"),
            Violation::AuxValence(v) => write!(f, "aux point valence {v} < 2"),
            Violation::RankZero => write!(f, "rank is zero"),
        }
    }
}

/// Result of collapsing a forest: the quotient graph together with the
/// correspondence maps, total on surviving edges.
#[derive(Debug, Clone)]
pub struct Collapse {
    pub graph: PointedGraph,
    /// Old vertex id to new vertex id.
    pub vertex_map: Vec<u32>,
    /// Old edge id to surviving new edge id, `None` for collapsed edges.
    pub edge_map: Vec<Option<u32>>,
    /// Old half-edge id to new half-edge id.
    pub half_edge_map: Vec<Option<u32>>,
}

impl PointedGraph {
    /// Builds a graph from an edge list `(u, v)`.  Edge `e` receives
    /// half-edges `2e` (at `u`) and `2e + 1` (at `v`).
    pub fn from_edges(
        n_vertices: u32,
        basepoint: u32,
        aux_point: Option<u32>,
        edges: &[(u32, u32)],
    ) -> Self {
        let mut pairing = Vec::with_capacity(edges.len() * 2);
        let mut endpoint = Vec::with_capacity(edges.len() * 2);
        for (e, &(u, v)) in edges.iter().enumerate() {
            let h = (2 * e) as u32;
            pairing.push(h + 1);
            pairing.push(h);
            endpoint.push(u);
            endpoint.push(v);
        }
        PointedGraph {
            pairing,
            endpoint,
            n_vertices,
            basepoint,
            aux_point,
        }
    }

    pub fn n_half_edges(&self) -> usize {
        self.pairing.len()
    }

    pub fn n_edges(&self) -> usize {
        self.pairing.len() / 2
    }

    /// Vertices of edge `e` as `(endpoint(2e), endpoint(2e+1))`.
    pub fn edge_ends(&self, e: u32) -> (u32, u32) {
        (
            self.endpoint[2 * e as usize],
            self.endpoint[2 * e as usize + 1],
        )
    }

    /// The edge a half-edge belongs to.
    pub fn edge_of(&self, h: u32) -> u32 {
        h / 2
    }

    pub fn is_loop(&self, e: u32) -> bool {
        let (u, v) = self.edge_ends(e);
        u == v
    }

    pub fn valence(&self, v: u32) -> usize {
        self.endpoint.iter().filter(|&&x| x == v).count()
    }

    /// Half-edges attached to `v`, in id order.
    pub fn half_edges_at(&self, v: u32) -> Vec<u32> {
        (0..self.n_half_edges() as u32)
            .filter(|&h| self.endpoint[h as usize] == v)
            .collect()
    }

    /// Checks the structural invariants: pairing is a fixed-point-free
    /// involution matching the `2e/2e+1` layout, endpoints are in range.
    pub fn validate_structural(&self) -> Result<()> {
        if self.pairing.len() != self.endpoint.len() {
            return Err(Error::Malformed("pairing/endpoint length mismatch".into()));
        }
        if !self.pairing.len().is_multiple_of(2) {
            return Err(Error::Malformed("odd number of half-edges".into()));
        }
        for h in 0..self.pairing.len() {
            let p = self.pairing[h] as usize;
            if p >= self.pairing.len() {
                return Err(Error::Malformed(format!("pairing out of range at {h}")));
            }
            if p == h {
                return Err(Error::Malformed(format!("pairing fixes half-edge {h}")));
            }
            if self.pairing[p] as usize != h {
                return Err(Error::Malformed(format!("pairing not involutive at {h}")));
            }
            if self.pairing[h] != (h as u32) ^ 1 {
                return Err(Error::Malformed(format!(
                    "half-edge {h} not paired with its layout partner"
                )));
            }
            if self.endpoint[h] >= self.n_vertices {
                return Err(Error::Malformed(format!("endpoint out of range at {h}")));
            }
        }
        if self.basepoint >= self.n_vertices {
            return Err(Error::Malformed("basepoint out of range".into()));
        }
        if let Some(a) = self.aux_point {
            if a >= self.n_vertices {
                return Err(Error::Malformed("aux point out of range".into()));
            }
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        if self.n_vertices == 0 {
            return false;
        }
        if self.n_vertices == 1 {
            return true;
        }
        let mut seen = vec![false; self.n_vertices as usize];
        let mut stack = vec![self.basepoint];
        seen[self.basepoint as usize] = true;
        let mut count = 1u32;
        while let Some(v) = stack.pop() {
            for h in 0..self.n_half_edges() {
                if self.endpoint[h] == v {
                    let w = self.endpoint[self.pairing[h] as usize];
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
        }
        count == self.n_vertices
    }

    /// First Betti number `#edges - #vertices + 1` of a connected graph.
    pub fn rank(&self) -> i64 {
        self.n_edges() as i64 - self.n_vertices as i64 + 1
    }

    /// Admissibility report: `Ok` means all pointed-graph invariants hold,
    /// otherwise every violated invariant is named.
    pub fn validate_admissible(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        if !self.is_connected() {
            violations.push(Violation::NotConnected);
        }
        for v in 0..self.n_vertices {
            let val = self.valence(v);
            let is_base = v == self.basepoint;
            let is_aux = self.aux_point == Some(v);
            if val <= 1 {
                violations.push(Violation::FreeEdge(v));
            } else if val == 2 && !is_base && !is_aux {
                violations.push(Violation::LowValence(v));
            }
            if is_base && val < 2 {
                violations.push(Violation::BasepointValence(val as u32));
            }
            if is_aux && !is_base && val < 2 {
                violations.push(Violation::AuxValence(val as u32));
            }
        }
        if self.rank() < 1 {
            violations.push(Violation::RankZero);
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    /// Degree: sum over vertices `v != *` of `valence(v) - 2`, where the
    /// valence of `∘` (when present and distinct from `*`) counts one extra
    /// for the germ of an edge entering it.
    pub fn degree(&self) -> i64 {
        let mut deg = 0i64;
        for v in 0..self.n_vertices {
            if v == self.basepoint {
                continue;
            }
            let mut val = self.valence(v) as i64;
            if self.aux_point == Some(v) {
                val += 1;
            }
            deg += val - 2;
        }
        deg
    }

    /// Collapses each tree of a forest to a point.  Rank and connectedness
    /// are preserved; `*` and `∘` are tracked through the quotient.
    pub fn collapse(&self, forest: &Forest) -> Result<Collapse> {
        if !self.is_forest(&forest.edges) {
            return Err(Error::NotAForest);
        }
        let n = self.n_vertices as usize;
        let mut uf: Vec<u32> = (0..n as u32).collect();
        fn find(uf: &mut Vec<u32>, x: u32) -> u32 {
            let mut r = x;
            while uf[r as usize] != r {
                r = uf[r as usize];
            }
            let mut c = x;
            while uf[c as usize] != r {
                let next = uf[c as usize];
                uf[c as usize] = r;
                c = next;
            }
            r
        }
        for &e in &forest.edges {
            let (u, v) = self.edge_ends(e);
            let (ru, rv) = (find(&mut uf, u), find(&mut uf, v));
            let (lo, hi) = (ru.min(rv), ru.max(rv));
            uf[hi as usize] = lo;
        }
        // New ids in order of smallest old member.
        let mut new_id = vec![u32::MAX; n];
        let mut next = 0u32;
        for v in 0..n as u32 {
            let r = find(&mut uf, v);
            if new_id[r as usize] == u32::MAX {
                new_id[r as usize] = next;
                next += 1;
            }
            new_id[v as usize] = new_id[r as usize];
        }
        let mut edges = Vec::new();
        let mut edge_map = vec![None; self.n_edges()];
        let mut half_edge_map = vec![None; self.n_half_edges()];
        for e in 0..self.n_edges() as u32 {
            if forest.edges.contains(&e) {
                continue;
            }
            let (u, v) = self.edge_ends(e);
            let ne = edges.len() as u32;
            edges.push((new_id[u as usize], new_id[v as usize]));
            edge_map[e as usize] = Some(ne);
            half_edge_map[2 * e as usize] = Some(2 * ne);
            half_edge_map[2 * e as usize + 1] = Some(2 * ne + 1);
        }
        let graph = PointedGraph::from_edges(
            next,
            new_id[self.basepoint as usize],
            self.aux_point.map(|a| new_id[a as usize]),
            &edges,
        );
        Ok(Collapse {
            graph,
            vertex_map: new_id,
            edge_map,
            half_edge_map,
        })
    }

    /// Whether an edge subset is acyclic.
    pub fn is_forest(&self, edges: &BTreeSet<u32>) -> bool {
        let mut uf: Vec<u32> = (0..self.n_vertices).collect();
        fn find(uf: &mut Vec<u32>, x: u32) -> u32 {
            let mut r = x;
            while uf[r as usize] != r {
                r = uf[r as usize];
            }
            uf[x as usize] = r;
            r
        }
        for &e in edges {
            let (u, v) = self.edge_ends(e);
            let (ru, rv) = (find(&mut uf, u), find(&mut uf, v));
            if ru == rv {
                return false;
            }
            uf[ru.max(rv) as usize] = ru.min(rv);
        }
        true
    }

    /// Edge ids of a breadth-first spanning tree rooted at the basepoint.
    pub fn spanning_tree(&self) -> BTreeSet<u32> {
        let mut tree = BTreeSet::new();
        let mut seen = vec![false; self.n_vertices as usize];
        seen[self.basepoint as usize] = true;
        let mut queue = std::collections::VecDeque::from([self.basepoint]);
        while let Some(v) = queue.pop_front() {
            for h in 0..self.n_half_edges() as u32 {
                if self.endpoint[h as usize] == v {
                    let w = self.endpoint[self.pairing[h as usize] as usize];
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        tree.insert(self.edge_of(h));
                        queue.push_back(w);
                    }
                }
            }
        }
        tree
    }
}

impl Forest {
    /// Builds a forest after checking acyclicity in its parent graph.
    pub fn new(graph: &PointedGraph, edges: BTreeSet<u32>) -> Result<Self> {
        if !graph.is_forest(&edges) {
            return Err(Error::NotAForest);
        }
        Ok(Forest { edges })
    }

    pub fn from_slice(graph: &PointedGraph, edges: &[u32]) -> Result<Self> {
        Self::new(graph, edges.iter().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Enumerates nonempty forests built from the given atomic `units` of edges
/// (singletons for plain forests, edge orbits for invariant ones).  With
/// `maximal_only` the list is filtered to inclusion-maximal forests.
pub fn forests_from_units(
    graph: &PointedGraph,
    units: &[Vec<u32>],
    maximal_only: bool,
) -> Vec<Forest> {
    let mut out: Vec<BTreeSet<u32>> = Vec::new();
    let mut current: BTreeSet<u32> = BTreeSet::new();
    fn rec(
        graph: &PointedGraph,
        units: &[Vec<u32>],
        start: usize,
        current: &mut BTreeSet<u32>,
        out: &mut Vec<BTreeSet<u32>>,
    ) {
        for i in start..units.len() {
            let mut next = current.clone();
            next.extend(units[i].iter().copied());
            if graph.is_forest(&next) {
                out.push(next.clone());
                let saved = std::mem::replace(current, next);
                rec(graph, units, i + 1, current, out);
                *current = saved;
            }
        }
    }
    rec(graph, units, 0, &mut current, &mut out);
    if maximal_only {
        out.retain(|s| {
            units.iter().all(|u| {
                if u.iter().all(|e| s.contains(e)) {
                    return true;
                }
                let mut bigger = s.clone();
                bigger.extend(u.iter().copied());
                !graph.is_forest(&bigger)
            })
        });
    }
    out.sort();
    out.dedup();
    out.into_iter().map(|edges| Forest { edges }).collect()
}

/// All nonempty forests of a graph; `maximal_only` keeps the
/// inclusion-maximal ones.  For forests invariant under a group action
/// see [`crate::symmetry::GroupGraph::invariant_forests`], which feeds
/// the edge orbits through [`forests_from_units`].
pub fn enumerate_forests(graph: &PointedGraph, maximal_only: bool) -> Vec<Forest> {
    let units: Vec<Vec<u32>> = (0..graph.n_edges() as u32)
        .filter(|&e| !graph.is_loop(e))
        .map(|e| vec![e])
        .collect();
    forests_from_units(graph, &units, maximal_only)
}
