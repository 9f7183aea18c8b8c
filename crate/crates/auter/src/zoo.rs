//! Constructors for the standard graphs used throughout the crate.
//!
//! Conventions: vertex 0 is always the basepoint unless noted; edges are
//! listed so tests can refer to ids directly.

use crate::graph::PointedGraph;

/// Rose with `n` loops at the basepoint.
pub fn rose(n: u32) -> PointedGraph {
    let edges: Vec<(u32, u32)> = (0..n).map(|_| (0, 0)).collect();
    PointedGraph::from_edges(1, 0, None, &edges)
}

/// Theta graph with `k` parallel edges between the basepoint (vertex 0)
/// and vertex 1.  Rank `k - 1`.
pub fn theta(k: u32) -> PointedGraph {
    let edges: Vec<(u32, u32)> = (0..k).map(|_| (0, 1)).collect();
    PointedGraph::from_edges(2, 0, None, &edges)
}

/// Theta graph with `k` parallel edges whose basepoint subdivides one extra
/// edge, i.e. `k` edges between vertices 1 and 2 plus a path 1 - 0 - 2
/// through the basepoint.  Rank `k`.
pub fn theta_base_mid_edge(k: u32) -> PointedGraph {
    let mut edges: Vec<(u32, u32)> = (0..k).map(|_| (1, 2)).collect();
    edges.push((1, 0));
    edges.push((0, 2));
    PointedGraph::from_edges(3, 0, None, &edges)
}

/// Double-pointed theta: `k` edges between `*` (vertex 0) and vertex 1,
/// with `∘` subdividing an extra edge between them (vertex 2 of valence 2).
pub fn theta_subdivided_aux(k: u32) -> PointedGraph {
    let mut edges: Vec<(u32, u32)> = (0..k).map(|_| (0, 1)).collect();
    edges.push((0, 2));
    edges.push((2, 1));
    PointedGraph::from_edges(3, 0, Some(2), &edges)
}

/// Two loops joined by a bar; basepoint on the left loop vertex.
/// Edges: 0 = left loop, 1 = bar, 2 = right loop.
pub fn dumbbell() -> PointedGraph {
    PointedGraph::from_edges(2, 0, None, &[(0, 0), (0, 1), (1, 1)])
}

/// `R_k ∨ Θ_(p edges) ∨ R_(m)`: a theta with `p` parallel edges from the
/// basepoint (vertex 0) to vertex 1, `k` loops at the basepoint and `m`
/// loops at vertex 1.  Edge ids: theta edges `0..p`, basepoint loops
/// `p..p+k`, far loops `p+k..p+k+m`.
pub fn theta_with_roses(p: u32, k: u32, m: u32) -> PointedGraph {
    let mut edges: Vec<(u32, u32)> = (0..p).map(|_| (0, 1)).collect();
    edges.extend((0..k).map(|_| (0, 0)));
    edges.extend((0..m).map(|_| (1, 1)));
    PointedGraph::from_edges(2, 0, None, &edges)
}

/// The tripod-of-thetas graph: vertices `x = 0` (basepoint), `y = 1`,
/// `z = 2` and middle vertices `v_i = 3..3+p`; edges `a_i = (x, v_i)`,
/// `b_i = (y, v_i)`, `c_i = (z, v_i)` with ids `a_i = i`, `b_i = p + i`,
/// `c_i = 2p + i`.  Rank `2(p - 1)`.
pub fn phi(p: u32) -> PointedGraph {
    let mut edges = Vec::new();
    for i in 0..p {
        edges.push((0, 3 + i));
    }
    for i in 0..p {
        edges.push((1, 3 + i));
    }
    for i in 0..p {
        edges.push((2, 3 + i));
    }
    PointedGraph::from_edges(3 + p, 0, None, &edges)
}

/// Wedge of two `p`-edge thetas at the basepoint (collapse of the `a`
/// edges of [`phi`]): edges `b_i = (1, 0)` then `c_i = (2, 0)`.
pub fn psi(p: u32) -> PointedGraph {
    let mut edges = Vec::new();
    for _ in 0..p {
        edges.push((1, 0));
    }
    for _ in 0..p {
        edges.push((2, 0));
    }
    PointedGraph::from_edges(3, 0, None, &edges)
}

/// Chain of two `p`-edge thetas with the basepoint at one end (collapse of
/// the `b` edges of [`phi`]): edges `a_i = (0, 1)` then `c_i = (2, 1)`.
pub fn omega(p: u32) -> PointedGraph {
    let mut edges = Vec::new();
    for _ in 0..p {
        edges.push((0, 1));
    }
    for _ in 0..p {
        edges.push((2, 1));
    }
    PointedGraph::from_edges(3, 0, None, &edges)
}

/// One-skeleton of the cone over a `p`-gon, wedged to nothing: vertices
/// `0..p` form the cycle, vertex `p` is the cone point.  Gon edge `i` joins
/// `i` and `(i + 1) mod p`; spoke `p + i` joins `i` and the cone point.
/// The basepoint is the cone point.
pub fn xi(p: u32) -> PointedGraph {
    let mut edges = Vec::new();
    for i in 0..p {
        edges.push((i, (i + 1) % p));
    }
    for i in 0..p {
        edges.push((i, p));
    }
    PointedGraph::from_edges(p + 1, p, None, &edges)
}

/// One-skeleton of the suspension of a `p`-gon: cycle vertices `0..p`,
/// poles `p` (basepoint) and `p + 1`.  Gon edge `i` joins `i` and
/// `(i + 1) mod p`; spokes `p + i` join `i` to pole `p`; spokes `2p + i`
/// join `i` to pole `p + 1`.
pub fn upsilon(p: u32) -> PointedGraph {
    let mut edges = Vec::new();
    for i in 0..p {
        edges.push((i, (i + 1) % p));
    }
    for i in 0..p {
        edges.push((i, p));
    }
    for i in 0..p {
        edges.push((i, p + 1));
    }
    PointedGraph::from_edges(p + 2, p, None, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_graphs_are_admissible() {
        for g in [
            rose(2),
            theta(3),
            theta_base_mid_edge(3),
            theta_subdivided_aux(3),
            dumbbell(),
            theta_with_roses(3, 1, 1),
            phi(3),
            psi(3),
            omega(3),
            xi(5),
            upsilon(5),
        ] {
            assert!(g.validate_structural().is_ok());
            assert!(g.validate_admissible().is_ok(), "{g:?}");
        }
    }

    #[test]
    fn collapsing_phi_a_edges_gives_psi() {
        use crate::graph::Forest;
        let g = phi(3);
        let f = Forest::from_slice(&g, &[0, 1, 2]).unwrap();
        let c = g.collapse(&f).unwrap();
        // Same vertex count, edge count and basepoint valence as psi.
        let p = psi(3);
        assert_eq!(c.graph.n_vertices, p.n_vertices);
        assert_eq!(c.graph.n_edges(), p.n_edges());
        assert_eq!(c.graph.valence(c.graph.basepoint), p.valence(p.basepoint));
    }

    #[test]
    fn ranks() {
        assert_eq!(theta_base_mid_edge(3).rank(), 3);
        assert_eq!(theta_with_roses(3, 1, 1).rank(), 4);
        assert_eq!(psi(3).rank(), 4);
        assert_eq!(omega(3).rank(), 4);
        assert_eq!(xi(5).rank(), 5);
        assert_eq!(upsilon(5).rank(), 9);
    }
}
