//! Exhaustive enumeration of isomorphism classes of admissible pointed
//! graphs by rank, pointing and degree cap.
//!
//! Graphs are generated by vertex count: for `V` vertices a rank-`m` graph
//! has `m + V - 1` edges.  For each admissible degree sequence the
//! multigraphs realizing it are built by backtracking over vertex-pair
//! multiplicities; isomorph rejection goes through canonical codes.

use crate::canon;
use crate::graph::PointedGraph;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Whether graphs carry just `*` or also the second distinguished point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pointing {
    Single,
    Double,
}

impl std::fmt::Display for Pointing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Pointing::Single => write!(f, "single"),
            Pointing::Double => write!(f, "double"),
        }
    }
}

/// One isomorphism class of admissible pointed graphs.
#[derive(Debug, Clone)]
pub struct GraphClass {
    pub graph: PointedGraph,
    pub code: Vec<u8>,
    pub degree: i64,
    pub aut_order: u128,
}

/// Largest possible vertex count for the given rank and pointing.
pub fn max_vertices(rank: u32, pointing: Pointing) -> u32 {
    match pointing {
        Pointing::Single => 2 * rank - 1,
        Pointing::Double => 2 * rank,
    }
}

/// Exactly one representative per pointed-isomorphism class of admissible
/// graphs with the given rank and degree at most `deg_max`, in
/// deterministic (canonical code) order.
pub fn enumerate_graphs(rank: u32, pointing: Pointing, deg_max: Option<i64>) -> Vec<GraphClass> {
    assert!(rank >= 1, "rank must be at least 1");
    let mut by_code: BTreeMap<Vec<u8>, PointedGraph> = BTreeMap::new();
    let vmax = max_vertices(rank, pointing);
    for v in 1..=vmax {
        let n_edges = rank + v - 1;
        // Aux placements: none (single), at the basepoint, or at vertex 1.
        let aux_options: Vec<Option<u32>> = match pointing {
            Pointing::Single => vec![None],
            Pointing::Double => {
                if v == 1 {
                    vec![Some(0)]
                } else {
                    vec![Some(0), Some(1)]
                }
            }
        };
        for aux in aux_options {
            if aux == Some(0) && v > 2 * rank - 1 {
                // With ∘ = * the single-pointed vertex bound applies.
                continue;
            }
            for graph in graphs_with(v, n_edges, aux) {
                if let Some(cap) = deg_max {
                    if graph.degree() > cap {
                        continue;
                    }
                }
                let code = canon::canonical_code(&graph);
                by_code.entry(code).or_insert(graph);
            }
        }
    }
    by_code
        .into_iter()
        .map(|(code, graph)| {
            let degree = graph.degree();
            let aut_order = canon::automorphism_group(&graph, None).order;
            GraphClass {
                graph,
                code,
                degree,
                aut_order,
            }
        })
        .collect()
}

/// Admissible connected multigraphs on `v` labeled vertices with vertex 0
/// the basepoint and the given aux placement.  Returns labeled graphs;
/// the caller dedupes by canonical code.
fn graphs_with(v: u32, n_edges: u32, aux: Option<u32>) -> Vec<PointedGraph> {
    let min_valence: Vec<usize> = (0..v)
        .map(|x| if x == 0 || aux == Some(x) { 2 } else { 3 })
        .collect();
    let mut out = Vec::new();
    let plain_start = match aux {
        Some(a) if a != 0 => 2,
        _ => 1,
    };
    for degrees in degree_sequences(v as usize, 2 * n_edges as usize, &min_valence, plain_start) {
        realize_degree_sequence(v as usize, &degrees, &mut |edges| {
            let g = PointedGraph::from_edges(v, 0, aux, edges);
            if g.is_connected() && g.validate_admissible().is_ok() {
                out.push(g);
            }
        });
    }
    out
}

/// Valence vectors summing to `total`, each entry at least its minimum.
/// Entries for the interchangeable plain vertices (index `plain_start`
/// onward) are non-increasing, which cuts labeled duplicates without
/// losing classes.
fn degree_sequences(
    v: usize,
    total: usize,
    min_valence: &[usize],
    plain_start: usize,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; v];
    fn rec(
        i: usize,
        v: usize,
        remaining: usize,
        min_valence: &[usize],
        plain_start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == v {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        let later_min: usize = min_valence[i + 1..].iter().sum();
        let lo = min_valence[i];
        let mut hi = remaining.saturating_sub(later_min);
        if i > plain_start {
            hi = hi.min(current[i - 1]);
        }
        for d in lo..=hi {
            current[i] = d;
            rec(
                i + 1,
                v,
                remaining - d,
                min_valence,
                plain_start,
                current,
                out,
            );
        }
        current[i] = 0;
    }
    rec(
        0,
        v,
        total,
        min_valence,
        plain_start,
        &mut current,
        &mut out,
    );
    out
}

/// Backtracks over vertex-pair multiplicities realizing an exact valence
/// vector, emitting each labeled multigraph once.
fn realize_degree_sequence(v: usize, degrees: &[usize], emit: &mut dyn FnMut(&[(u32, u32)])) {
    let mut residual: Vec<usize> = degrees.to_vec();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    rec(0, v, &mut residual, &mut edges, emit);

    fn rec(
        u: usize,
        v: usize,
        residual: &mut Vec<usize>,
        edges: &mut Vec<(u32, u32)>,
        emit: &mut dyn FnMut(&[(u32, u32)]),
    ) {
        if u == v {
            if residual.iter().all(|&r| r == 0) {
                emit(edges);
            }
            return;
        }
        distribute(u, u, v, residual, edges, emit);
    }

    fn distribute(
        u: usize,
        w: usize,
        v: usize,
        residual: &mut Vec<usize>,
        edges: &mut Vec<(u32, u32)>,
        emit: &mut dyn FnMut(&[(u32, u32)]),
    ) {
        if residual[u] == 0 {
            rec(u + 1, v, residual, edges, emit);
            return;
        }
        if w >= v {
            return;
        }
        let max_mult = if w == u {
            residual[u] / 2
        } else {
            residual[u].min(residual[w])
        };
        for m in 0..=max_mult {
            let used_u = if w == u { 2 * m } else { m };
            residual[u] -= used_u;
            if w != u {
                residual[w] -= m;
            }
            for _ in 0..m {
                edges.push((u as u32, w as u32));
            }
            // Feasibility: what is left at u must fit on later partners.
            let later: usize = residual[w + 1..].iter().sum();
            if residual[u] <= later {
                distribute(u, w + 1, v, residual, edges, emit);
            }
            for _ in 0..m {
                edges.pop();
            }
            residual[u] += used_u;
            if w != u {
                residual[w] += m;
            }
        }
    }
}
