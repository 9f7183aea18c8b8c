//! Quotient cell complexes assembled from flags of forest collapses.
//!
//! A cell is an isomorphism class of a graph together with a strictly
//! nested chain of nonempty forests; the chain of collapses realizes a
//! descending chain of quotient graphs.  Vertices of the underlying
//! simplex are ordered most-collapsed first, and the boundary is the
//! alternating sum of vertex deletions with every face canonicalized.
//! When two faces of one flag are isomorphic their contributions add,
//! possibly to `0` or `±2`.

use crate::canon;
use crate::enumerate::{enumerate_graphs, Pointing};
use crate::graph::{enumerate_forests, Forest, PointedGraph};
use crate::snf::IntMat;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A graph together with a strictly increasing chain of nonempty forests.
/// The flag is a cell of dimension `chain.len()`.
#[derive(Debug, Clone)]
pub struct FlagCell {
    pub graph: PointedGraph,
    pub chain: Vec<Forest>,
}

impl FlagCell {
    pub fn new(graph: PointedGraph, chain: Vec<Forest>) -> Result<Self> {
        for f in &chain {
            if f.is_empty() {
                return Err(Error::Other("empty forest in chain".into()));
            }
            if !graph.is_forest(&f.edges) {
                return Err(Error::NotAForest);
            }
        }
        for w in chain.windows(2) {
            if !(w[0].edges.is_subset(&w[1].edges) && w[0].edges != w[1].edges) {
                return Err(Error::Other("chain inclusions must be strict".into()));
            }
        }
        Ok(FlagCell { graph, chain })
    }

    pub fn dimension(&self) -> usize {
        self.chain.len()
    }

    /// Edge coloring that encodes the chain: an edge first appearing in
    /// `F^(i)` gets color `r + 1 - i`, edges in no forest get `0`.
    pub fn colors(&self) -> Vec<u32> {
        let r = self.chain.len() as u32;
        let mut colors = vec![0u32; self.graph.n_edges()];
        for (i, f) in self.chain.iter().enumerate() {
            for &e in &f.edges {
                if colors[e as usize] == 0 {
                    colors[e as usize] = r - i as u32;
                }
            }
        }
        colors
    }

    /// Canonical code of the flag (the colored canonical form).
    pub fn code(&self) -> Vec<u8> {
        canon::canonical_form(&self.graph, Some(&self.colors())).code
    }

    /// The `r + 1` signed faces of the flag, most-collapsed vertex first:
    /// deleting vertex `j < r` removes forest `F^(r - j)` with sign
    /// `(-1)^j`; deleting the top vertex collapses `F^(1)` with sign
    /// `(-1)^r`.
    pub fn faces(&self) -> Result<Vec<(FlagCell, i64)>> {
        let r = self.chain.len();
        assert!(r >= 1);
        let mut out = Vec::with_capacity(r + 1);
        for i in 1..=r {
            let mut chain = self.chain.clone();
            chain.remove(i - 1);
            let sign = if (r - i).is_multiple_of(2) { 1 } else { -1 };
            out.push((FlagCell::new(self.graph.clone(), chain)?, sign));
        }
        let collapse = self.graph.collapse(&self.chain[0])?;
        let mut chain = Vec::with_capacity(r - 1);
        for f in &self.chain[1..] {
            let edges = f
                .edges
                .iter()
                .filter_map(|&e| collapse.edge_map[e as usize])
                .collect();
            chain.push(Forest::new(&collapse.graph, edges)?);
        }
        let sign = if r.is_multiple_of(2) { 1 } else { -1 };
        out.push((FlagCell::new(collapse.graph, chain)?, sign));
        Ok(out)
    }
}

/// Metadata describing how a complex was built.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexMeta {
    pub label: String,
    pub rank: Option<u32>,
    pub pointing: Option<Pointing>,
    pub deg_max: Option<i64>,
}

/// Per-dimension cell lists with signed integer boundary incidences.
#[derive(Debug, Clone)]
pub struct QuotientComplex {
    /// Canonical cell codes per dimension.
    pub cells: Vec<Vec<Vec<u8>>>,
    /// `boundaries[d][j]` lists `(face index in dimension d - 1, coeff)`;
    /// dimension 0 has empty lists.
    pub boundaries: Vec<Vec<Vec<(usize, i64)>>>,
    pub meta: ComplexMeta,
}

/// Incremental assembler shared by the plain and equivariant builders.
pub(crate) struct Assembler {
    index: Vec<BTreeMap<Vec<u8>, usize>>,
    boundaries: Vec<Vec<Vec<(usize, i64)>>>,
}

impl Assembler {
    pub(crate) fn new() -> Self {
        Assembler {
            index: Vec::new(),
            boundaries: Vec::new(),
        }
    }

    pub(crate) fn ensure_dim(&mut self, d: usize) {
        while self.index.len() <= d {
            self.index.push(BTreeMap::new());
            self.boundaries.push(Vec::new());
        }
    }

    pub(crate) fn add_cell(&mut self, d: usize, code: Vec<u8>) -> usize {
        self.ensure_dim(d);
        let next = self.index[d].len();
        let id = *self.index[d].entry(code).or_insert(next);
        if id == next {
            self.boundaries[d].push(Vec::new());
        }
        id
    }

    pub(crate) fn contains(&self, d: usize, code: &[u8]) -> Option<usize> {
        self.index.get(d).and_then(|m| m.get(code).copied())
    }

    pub(crate) fn set_boundary(&mut self, d: usize, cell: usize, faces: Vec<(usize, i64)>) {
        self.boundaries[d][cell] = faces;
    }

    /// Finalizes into a complex with cells sorted by code in every
    /// dimension.
    pub(crate) fn finish(self, meta: ComplexMeta) -> QuotientComplex {
        let mut cells = Vec::with_capacity(self.index.len());
        let mut boundaries = Vec::with_capacity(self.index.len());
        let mut remap: Vec<Vec<usize>> = Vec::new();
        for dim_index in &self.index {
            let mut sorted: Vec<(&Vec<u8>, usize)> =
                dim_index.iter().map(|(c, &i)| (c, i)).collect();
            sorted.sort();
            let mut map = vec![0usize; sorted.len()];
            let mut codes = Vec::with_capacity(sorted.len());
            for (new_id, (code, old_id)) in sorted.into_iter().enumerate() {
                map[old_id] = new_id;
                codes.push(code.clone());
            }
            remap.push(map);
            cells.push(codes);
        }
        for (d, dim_boundaries) in self.boundaries.into_iter().enumerate() {
            let mut rows = vec![Vec::new(); dim_boundaries.len()];
            for (old_id, faces) in dim_boundaries.into_iter().enumerate() {
                let faces = if d == 0 {
                    Vec::new()
                } else {
                    faces
                        .into_iter()
                        .map(|(f, c)| (remap[d - 1][f], c))
                        .collect()
                };
                rows[remap[d][old_id]] = faces;
            }
            boundaries.push(rows);
        }
        QuotientComplex {
            cells,
            boundaries,
            meta,
        }
    }
}

/// Builds the quotient complex of the degree-capped spine: cells are
/// isomorphism classes of flags whose top graph has rank `rank`, the given
/// pointing and degree at most `deg_max` (degree is monotone under
/// collapse, so capping the top graph caps the whole flag).
pub fn build_quotient_complex(
    rank: u32,
    pointing: Pointing,
    deg_max: Option<i64>,
) -> QuotientComplex {
    let classes = enumerate_graphs(rank, pointing, deg_max);
    let mut assembler = Assembler::new();
    assembler.ensure_dim(0);
    let mut flags: Vec<FlagCell> = Vec::new();
    for class in &classes {
        assembler.add_cell(0, class.code.clone());
        let forests = enumerate_forests(&class.graph, false);
        let mut chain: Vec<usize> = Vec::new();
        collect_chains(&forests, &mut chain, &mut |chain_ix| {
            let chain: Vec<Forest> = chain_ix.iter().map(|&i| forests[i].clone()).collect();
            let flag = FlagCell::new(class.graph.clone(), chain).expect("valid chain");
            let code = flag.code();
            let d = flag.dimension();
            if assembler.contains(d, &code).is_none() {
                assembler.add_cell(d, code);
                flags.push(flag);
            }
        });
    }
    for flag in &flags {
        let d = flag.dimension();
        let code = flag.code();
        let cell = assembler.contains(d, &code).expect("cell registered");
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for (face, sign) in flag.faces().expect("faces of valid flag") {
            let face_code = face.code();
            let face_id = assembler
                .contains(d - 1, &face_code)
                .expect("face closure: every face is an enumerated cell");
            *acc.entry(face_id).or_insert(0) += sign;
        }
        // Zero coefficients are kept: they record face incidences whose
        // signed contributions cancelled, which components() still needs.
        let faces: Vec<(usize, i64)> = acc.into_iter().collect();
        assembler.set_boundary(d, cell, faces);
    }
    assembler.finish(ComplexMeta {
        label: format!(
            "rank{rank}-{pointing}{}",
            deg_max.map_or(String::new(), |k| format!("-deg{k}"))
        ),
        rank: Some(rank),
        pointing: Some(pointing),
        deg_max,
    })
}

/// Enumerates strictly increasing chains of forest indices (by inclusion).
pub(crate) fn collect_chains(
    forests: &[Forest],
    chain: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    for i in 0..forests.len() {
        let extends = match chain.last() {
            None => true,
            Some(&last) => {
                forests[last].edges.is_subset(&forests[i].edges)
                    && forests[last].edges != forests[i].edges
            }
        };
        if !extends {
            continue;
        }
        chain.push(i);
        emit(chain);
        collect_chains(forests, chain, emit);
        chain.pop();
    }
}

impl QuotientComplex {
    /// Top dimension with at least one cell.
    pub fn dimension(&self) -> usize {
        self.cells
            .iter()
            .enumerate()
            .rev()
            .find(|(_, c)| !c.is_empty())
            .map_or(0, |(d, _)| d)
    }

    pub fn n_cells(&self, d: usize) -> usize {
        self.cells.get(d).map_or(0, |c| c.len())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, c)| {
                let n = c.len() as i64;
                if d % 2 == 0 {
                    n
                } else {
                    -n
                }
            })
            .sum()
    }

    /// Signed incidence matrix of `∂_dim`; rows index `(dim-1)`-cells and
    /// columns index `dim`-cells.
    pub fn boundary_matrix(&self, dim: usize) -> Result<IntMat> {
        if dim == 0 || dim > self.dimension() {
            return Err(Error::DimOutOfRange(dim));
        }
        let rows = self.n_cells(dim - 1);
        let cols = self.n_cells(dim);
        let mut m = IntMat::zero(rows, cols);
        for (j, faces) in self.boundaries[dim].iter().enumerate() {
            for &(i, c) in faces {
                m[(i, j)] += num_bigint::BigInt::from(c);
            }
        }
        Ok(m)
    }

    /// Partition of the 0-cells into path components of the face-incidence
    /// graph, together with the induced subcomplexes.
    pub fn components(&self) -> Vec<(Vec<usize>, QuotientComplex)> {
        let n0 = self.n_cells(0);
        let mut uf: Vec<usize> = (0..n0).collect();
        fn find(uf: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            uf[x] = r;
            r
        }
        if self.boundaries.len() > 1 {
            for faces in &self.boundaries[1] {
                let ids: Vec<usize> = faces.iter().map(|&(i, _)| i).collect();
                // Also incidences whose coefficients cancelled still glue;
                // use the raw face ids of nonzero entries plus pairs from
                // the stored list.
                for w in ids.windows(2) {
                    let (a, b) = (find(&mut uf, w[0]), find(&mut uf, w[1]));
                    if a != b {
                        uf[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut roots: Vec<usize> = Vec::new();
        let mut component_of = vec![0usize; n0];
        for v in 0..n0 {
            let r = find(&mut uf, v);
            let idx = match roots.iter().position(|&x| x == r) {
                Some(i) => i,
                None => {
                    roots.push(r);
                    roots.len() - 1
                }
            };
            component_of[v] = idx;
        }
        // Assign higher cells to components through iterated faces.
        let mut cell_component: Vec<Vec<usize>> = vec![component_of.clone()];
        for d in 1..self.cells.len() {
            let mut assignment = vec![usize::MAX; self.n_cells(d)];
            for (j, faces) in self.boundaries[d].iter().enumerate() {
                if let Some(&(i, _)) = faces.first() {
                    assignment[j] = cell_component[d - 1][i];
                }
            }
            cell_component.push(assignment);
        }
        (0..roots.len())
            .map(|comp| {
                let zero_cells: Vec<usize> = (0..n0).filter(|&v| component_of[v] == comp).collect();
                let mut assembler = Assembler::new();
                assembler.ensure_dim(0);
                let mut keep: Vec<Vec<Option<usize>>> = Vec::new();
                for d in 0..self.cells.len() {
                    assembler.ensure_dim(d);
                    let mut dim_keep = vec![None; self.n_cells(d)];
                    for j in 0..self.n_cells(d) {
                        if cell_component[d][j] == comp {
                            let id = assembler.add_cell(d, self.cells[d][j].clone());
                            dim_keep[j] = Some(id);
                        }
                    }
                    keep.push(dim_keep);
                }
                for d in 1..self.cells.len() {
                    for j in 0..self.n_cells(d) {
                        if let Some(new_id) = keep[d][j] {
                            let faces = self.boundaries[d][j]
                                .iter()
                                .map(|&(i, c)| (keep[d - 1][i].expect("face in component"), c))
                                .collect();
                            assembler.set_boundary(d, new_id, faces);
                        }
                    }
                }
                let sub = assembler.finish(ComplexMeta {
                    label: format!("{}-component{}", self.meta.label, comp),
                    rank: self.meta.rank,
                    pointing: self.meta.pointing,
                    deg_max: self.meta.deg_max,
                });
                (zero_cells, sub)
            })
            .collect()
    }

    /// Builds a complex from explicit cell counts and boundary lists; used
    /// for hand-built test complexes.
    pub fn from_counts(
        label: &str,
        counts: &[usize],
        boundaries: Vec<Vec<Vec<(usize, i64)>>>,
    ) -> QuotientComplex {
        assert_eq!(counts.len(), boundaries.len());
        let cells: Vec<Vec<Vec<u8>>> = counts
            .iter()
            .enumerate()
            .map(|(d, &n)| {
                (0..n)
                    .map(|i| format!("{label}:{d}:{i}").into_bytes())
                    .collect()
            })
            .collect();
        QuotientComplex {
            cells,
            boundaries,
            meta: ComplexMeta {
                label: label.to_string(),
                rank: None,
                pointing: None,
                deg_max: None,
            },
        }
    }
}

/// Serialization form: cells get global ids (dimension by dimension) and
/// the boundary is a list of `[cell, face, coeff]` triples.
#[derive(Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    pub meta: ComplexMeta,
    pub dims: Vec<usize>,
    pub cells: Vec<Vec<String>>,
    pub boundary: Vec<(usize, usize, i64)>,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn unhex(s: &str) -> Result<Vec<u8>> {
    if !s.len().is_multiple_of(2) {
        return Err(Error::Other("odd hex length".into()));
    }
    (0..s.len() / 2)
        .map(|i| {
            u8::from_str_radix(&s[2 * i..2 * i + 2], 16)
                .map_err(|e| Error::Other(format!("bad hex: {e}")))
        })
        .collect()
}

impl QuotientComplex {
    pub fn to_json(&self) -> ComplexJson {
        let mut offsets = vec![0usize];
        for c in &self.cells {
            offsets.push(offsets.last().unwrap() + c.len());
        }
        let mut boundary = Vec::new();
        for d in 1..self.cells.len() {
            for (j, faces) in self.boundaries[d].iter().enumerate() {
                for &(i, c) in faces {
                    boundary.push((offsets[d] + j, offsets[d - 1] + i, c));
                }
            }
        }
        ComplexJson {
            meta: self.meta.clone(),
            dims: self.cells.iter().map(|c| c.len()).collect(),
            cells: self
                .cells
                .iter()
                .map(|dim| dim.iter().map(|c| hex(c)).collect())
                .collect(),
            boundary,
        }
    }

    pub fn from_json(json: &ComplexJson) -> Result<QuotientComplex> {
        let mut cells = Vec::new();
        for dim in &json.cells {
            let mut codes = Vec::new();
            for c in dim {
                codes.push(unhex(c)?);
            }
            cells.push(codes);
        }
        let mut offsets = vec![0usize];
        for c in &cells {
            offsets.push(offsets.last().unwrap() + c.len());
        }
        let mut boundaries: Vec<Vec<Vec<(usize, i64)>>> =
            cells.iter().map(|c| vec![Vec::new(); c.len()]).collect();
        for &(cell, face, coeff) in &json.boundary {
            let d = offsets
                .iter()
                .position(|&o| cell < o)
                .ok_or_else(|| Error::Other("cell id out of range".into()))?
                - 1;
            if d == 0 {
                return Err(Error::Other("boundary on a 0-cell".into()));
            }
            if face < offsets[d - 1] || face >= offsets[d] {
                return Err(Error::Other(format!(
                    "face {face} is not one dimension below cell {cell}"
                )));
            }
            boundaries[d][cell - offsets[d]].push((face - offsets[d - 1], coeff));
        }
        Ok(QuotientComplex {
            cells,
            boundaries,
            meta: json.meta.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> QuotientComplex {
        QuotientComplex::from_counts("circle", &[1, 1], vec![vec![vec![]], vec![vec![]]])
    }

    #[test]
    fn circle_boundary_is_zero() {
        let cx = circle();
        let m = cx.boundary_matrix(1).unwrap();
        assert!(m.is_zero());
        assert_eq!(cx.euler_characteristic(), 0);
    }

    #[test]
    fn rank_one_single_complex_is_a_point() {
        let cx = build_quotient_complex(1, Pointing::Single, None);
        assert_eq!(cx.n_cells(0), 1);
        assert_eq!(cx.dimension(), 0);
        assert_eq!(cx.euler_characteristic(), 1);
        assert_eq!(cx.components().len(), 1);
    }

    #[test]
    fn rank_two_single_has_dimension_two_and_chi_one() {
        let cx = build_quotient_complex(2, Pointing::Single, Some(2));
        assert_eq!(cx.dimension(), 2);
        assert_eq!(cx.euler_characteristic(), 1);
    }

    #[test]
    fn boundary_squares_to_zero() {
        for cx in [
            build_quotient_complex(2, Pointing::Single, None),
            build_quotient_complex(2, Pointing::Double, Some(2)),
        ] {
            for d in 2..=cx.dimension() {
                let a = cx.boundary_matrix(d - 1).unwrap();
                let b = cx.boundary_matrix(d).unwrap();
                assert!(a.mul(&b).is_zero(), "∂∂ ≠ 0 at dimension {d}");
            }
        }
    }

    #[test]
    fn single_pointed_dimension_matches_2m_minus_2() {
        for m in 1..=2u32 {
            let cx = build_quotient_complex(m, Pointing::Single, None);
            assert_eq!(cx.dimension() as i64, (2 * m - 2) as i64);
        }
    }

    #[test]
    fn double_pointed_dimension_matches_2m_minus_1() {
        for m in 1..=2u32 {
            let cx = build_quotient_complex(m, Pointing::Double, None);
            assert_eq!(cx.dimension() as i64, (2 * m - 1) as i64);
        }
    }

    #[test]
    fn capped_complex_is_a_subcomplex() {
        let full = build_quotient_complex(2, Pointing::Double, None);
        let capped = build_quotient_complex(2, Pointing::Double, Some(2));
        for d in 0..capped.cells.len() {
            for code in &capped.cells[d] {
                assert!(full.cells[d].contains(code), "capped cell missing in full");
            }
        }
        // The inclusion commutes with the boundary: the faces of a capped
        // cell have the same coefficients in the full complex.
        for d in 1..capped.cells.len() {
            for (j, faces) in capped.boundaries[d].iter().enumerate() {
                let full_j = full.cells[d]
                    .iter()
                    .position(|c| c == &capped.cells[d][j])
                    .unwrap();
                let mapped: Vec<(Vec<u8>, i64)> = faces
                    .iter()
                    .map(|&(i, c)| (capped.cells[d - 1][i].clone(), c))
                    .collect();
                let in_full: Vec<(Vec<u8>, i64)> = full.boundaries[d][full_j]
                    .iter()
                    .map(|&(i, c)| (full.cells[d - 1][i].clone(), c))
                    .collect();
                assert_eq!(mapped, in_full);
            }
        }
    }

    #[test]
    fn chains_of_collapses_are_realizable() {
        // Collapsing the first forest, then the image of the second,
        // reproduces the face graph of collapsing the second directly.
        use crate::graph::{enumerate_forests, Forest};
        let g = crate::zoo::phi(3);
        let forests = enumerate_forests(&g, false);
        for f1 in &forests {
            for f2 in &forests {
                if !(f1.edges.is_subset(&f2.edges) && f1.edges != f2.edges) {
                    continue;
                }
                let step1 = g.collapse(f1).unwrap();
                let image: std::collections::BTreeSet<u32> = f2
                    .edges
                    .iter()
                    .filter_map(|&e| step1.edge_map[e as usize])
                    .collect();
                let step2 = step1
                    .graph
                    .collapse(&Forest::new(&step1.graph, image).unwrap())
                    .unwrap();
                let direct = g.collapse(f2).unwrap();
                assert_eq!(
                    crate::canon::canonical_code(&step2.graph),
                    crate::canon::canonical_code(&direct.graph)
                );
            }
        }
    }

    #[test]
    fn components_split_disjoint_pieces() {
        // A circle next to a segment.
        let cx = QuotientComplex::from_counts(
            "two-pieces",
            &[3, 2],
            vec![vec![vec![]; 3], vec![vec![(0, 0)], vec![(1, 1), (2, -1)]]],
        );
        let components = cx.components();
        assert_eq!(components.len(), 2);
        let sizes: Vec<usize> = components.iter().map(|(zeros, _)| zeros.len()).collect();
        assert_eq!(sizes, vec![1, 2]);
        let chis: Vec<i64> = components
            .iter()
            .map(|(_, sub)| sub.euler_characteristic())
            .collect();
        assert_eq!(chis, vec![0, 1]);
    }

    #[test]
    fn json_round_trip() {
        let cx = build_quotient_complex(2, Pointing::Single, None);
        let json = cx.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let parsed: ComplexJson = serde_json::from_str(&text).unwrap();
        let back = QuotientComplex::from_json(&parsed).unwrap();
        assert_eq!(back.cells, cx.cells);
        assert_eq!(back.boundaries, cx.boundaries);
    }

    #[test]
    fn dim_out_of_range_errors() {
        let cx = build_quotient_complex(1, Pointing::Single, None);
        assert!(cx.boundary_matrix(0).is_err());
        assert!(cx.boundary_matrix(5).is_err());
    }
}
