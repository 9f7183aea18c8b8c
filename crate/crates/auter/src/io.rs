//! Export formats: DOT for graphs and complexes, CSV tables, sparse
//! triplet matrices.

use crate::complex::QuotientComplex;
use crate::graph::PointedGraph;
use crate::homology::HomologySummary;
use crate::snf::IntMat;
use num_traits::Zero;
use std::fmt::Write as _;

/// DOT rendering: the basepoint is a doubled circle, the second
/// distinguished point an open circle, plain vertices filled points.
pub fn dot_graph(name: &str, g: &PointedGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{name}\" {{");
    let _ = writeln!(out, "  node [shape=point, width=0.12];");
    for v in 0..g.n_vertices {
        if v == g.basepoint {
            let _ = writeln!(out, "  v{v} [shape=doublecircle, width=0.25, label=\"\"];");
        } else if g.aux_point == Some(v) {
            let _ = writeln!(
                out,
                "  v{v} [shape=circle, style=\"\", width=0.2, label=\"\"];"
            );
        }
    }
    for e in 0..g.n_edges() as u32 {
        let (u, v) = g.edge_ends(e);
        let _ = writeln!(out, "  v{u} -- v{v} [label=\"{e}\"];");
    }
    let _ = writeln!(out, "}}");
    out
}

/// DOT rendering of the face-incidence digraph of a complex: one node
/// per cell, one arc per signed incidence.
pub fn dot_complex(cx: &QuotientComplex) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", cx.meta.label);
    let _ = writeln!(out, "  rankdir=BT;");
    for d in 0..cx.cells.len() {
        for j in 0..cx.n_cells(d) {
            let _ = writeln!(out, "  c{d}_{j} [label=\"{d}:{j}\"];");
        }
    }
    for d in 1..cx.cells.len() {
        for (j, faces) in cx.boundaries[d].iter().enumerate() {
            for &(i, c) in faces {
                let _ = writeln!(out, "  c{}_{} -> c{d}_{j} [label=\"{c}\"];", d - 1, i);
            }
        }
    }
    let _ = writeln!(out, "}}");
    out
}

/// Cell counts per dimension as CSV.
pub fn csv_cell_counts(cx: &QuotientComplex) -> String {
    let mut out = String::from("dimension,cells\n");
    for (d, cells) in cx.cells.iter().enumerate() {
        let _ = writeln!(out, "{d},{}", cells.len());
    }
    out
}

/// Betti/torsion table as CSV.
pub fn csv_homology(summary: &HomologySummary) -> String {
    let mut out = String::from("degree,betti_q,torsion,betti_fp\n");
    for d in &summary.degrees {
        let torsion = d
            .torsion
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let fp = d.betti_fp.map(|b| b.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{}", d.degree, d.betti_q, torsion, fp);
    }
    out
}

/// Sparse triplet text: one `row col value` line per nonzero entry.
pub fn sparse_triplets(m: &IntMat) -> String {
    let mut out = String::new();
    for i in 0..m.rows {
        for j in 0..m.cols {
            if !m[(i, j)].is_zero() {
                let _ = writeln!(out, "{i} {j} {}", m[(i, j)]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn dot_marks_distinguished_points() {
        let dot = dot_graph("theta", &zoo::theta_subdivided_aux(3));
        assert!(dot.contains("doublecircle"));
        assert!(dot.contains("shape=circle"));
    }

    #[test]
    fn triplets_skip_zeros() {
        let m = IntMat::from_i64(2, 2, &[1, 0, 0, -2]);
        let text = sparse_triplets(&m);
        assert_eq!(text, "0 0 1\n1 1 -2\n");
    }
}
