//! Quotient complexes of fixed-point subcomplexes.
//!
//! Cells are equivariant isomorphism classes of pairs (group graph,
//! strictly nested chain of nonempty invariant forests) lying in the
//! collapse component of a reduced seed.  With the `essential` flag the
//! complex is the deformation retract obtained by discarding graphs with
//! inessential edges: a flag survives only if the top graph and every
//! collapse stage along its chain are essential.

use crate::complex::{collect_chains, Assembler, ComplexMeta, QuotientComplex};
use crate::graph::Forest;
use crate::symmetry::{enumerate_group_graphs, equivariant_code, GroupGraph, GroupKind};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// A group graph with a chain of invariant forests.
#[derive(Debug, Clone)]
struct EquivariantFlag {
    gg: GroupGraph,
    chain: Vec<Forest>,
}

impl EquivariantFlag {
    fn colors(&self) -> Vec<u32> {
        let r = self.chain.len() as u32;
        let mut colors = vec![0u32; self.gg.graph.n_edges()];
        for (i, f) in self.chain.iter().enumerate() {
            for &e in &f.edges {
                if colors[e as usize] == 0 {
                    colors[e as usize] = r - i as u32;
                }
            }
        }
        colors
    }

    fn code(&self) -> Vec<u8> {
        equivariant_code(&self.gg, Some(&self.colors()))
    }

    /// Collapse stages `Γ/F^(i)` for `i = 1..=r`.
    fn stages(&self) -> Result<Vec<GroupGraph>> {
        self.chain
            .iter()
            .map(|f| self.gg.collapse_invariant(f))
            .collect()
    }

    fn faces(&self) -> Result<Vec<(EquivariantFlag, i64)>> {
        let r = self.chain.len();
        let mut out = Vec::with_capacity(r + 1);
        for i in 1..=r {
            let mut chain = self.chain.clone();
            chain.remove(i - 1);
            let sign = if (r - i).is_multiple_of(2) { 1 } else { -1 };
            out.push((
                EquivariantFlag {
                    gg: self.gg.clone(),
                    chain,
                },
                sign,
            ));
        }
        let collapse = self.gg.graph.collapse(&self.chain[0])?;
        let collapsed = self.gg.collapse_invariant(&self.chain[0])?;
        let mut chain = Vec::with_capacity(r - 1);
        for f in &self.chain[1..] {
            let edges = f
                .edges
                .iter()
                .filter_map(|&e| collapse.edge_map[e as usize])
                .collect();
            chain.push(Forest::new(&collapsed.graph, edges)?);
        }
        let sign = if r.is_multiple_of(2) { 1 } else { -1 };
        out.push((
            EquivariantFlag {
                gg: collapsed,
                chain,
            },
            sign,
        ));
        Ok(out)
    }
}

/// Builds the quotient complex of the fixed-point subcomplex determined
/// by a reduced seed: equivariant classes of invariant-forest flags in
/// the collapse component of the seed.
pub fn build_fixed_quotient_complex(
    rank: u32,
    kind: GroupKind,
    seed: &GroupGraph,
    essential: bool,
) -> Result<QuotientComplex> {
    seed.validate()?;
    if !seed.is_reduced() {
        return Err(Error::NotReduced);
    }
    let classes = enumerate_group_graphs(rank, kind, false);
    let codes: Vec<Vec<u8>> = classes.iter().map(|c| c.eq_code.clone()).collect();
    let index_of: BTreeMap<Vec<u8>, usize> = codes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    let seed_code = equivariant_code(seed, None);
    let seed_index = *index_of
        .get(&seed_code)
        .ok_or_else(|| Error::Other("seed not found among enumerated classes".into()))?;
    // Collapse adjacency and component of the seed.
    let mut uf: Vec<usize> = (0..classes.len()).collect();
    fn find(uf: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        uf[x] = r;
        r
    }
    for (i, class) in classes.iter().enumerate() {
        for forest in class.gg.invariant_forests(false) {
            let collapsed = class.gg.collapse_invariant(&forest)?;
            let code = equivariant_code(&collapsed, None);
            let j = *index_of
                .get(&code)
                .ok_or_else(|| Error::Other("collapse leaves the enumerated family".into()))?;
            let (a, b) = (find(&mut uf, i), find(&mut uf, j));
            if a != b {
                uf[a.max(b)] = a.min(b);
            }
        }
    }
    let seed_root = find(&mut uf, seed_index);
    let mut kept: Vec<&GroupGraph> = Vec::new();
    for (i, class) in classes.iter().enumerate() {
        if find(&mut uf, i) == seed_root && (!essential || class.gg.is_essential()) {
            kept.push(&class.gg);
        }
    }
    // Assemble flags.
    let mut assembler = Assembler::new();
    assembler.ensure_dim(0);
    let mut flags: Vec<EquivariantFlag> = Vec::new();
    let mut essential_codes: BTreeSet<Vec<u8>> = BTreeSet::new();
    if essential {
        for gg in &kept {
            essential_codes.insert(equivariant_code(gg, None));
        }
    }
    for gg in &kept {
        assembler.add_cell(0, equivariant_code(gg, None));
        let forests = gg.invariant_forests(false);
        let mut chain: Vec<usize> = Vec::new();
        collect_chains(&forests, &mut chain, &mut |chain_ix| {
            let flag = EquivariantFlag {
                gg: (*gg).clone(),
                chain: chain_ix.iter().map(|&i| forests[i].clone()).collect(),
            };
            if essential {
                let stages = flag.stages().expect("invariant chain collapses");
                if !stages.iter().all(|s| s.is_essential()) {
                    return;
                }
            }
            let code = flag.code();
            let d = flag.chain.len();
            if assembler.contains(d, &code).is_none() {
                assembler.add_cell(d, code);
                flags.push(flag);
            }
        });
    }
    for flag in &flags {
        let d = flag.chain.len();
        let cell = assembler
            .contains(d, &flag.code())
            .expect("cell registered");
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for (face, sign) in flag.faces()? {
            let face_code = face.code();
            let face_id = assembler
                .contains(d - 1, &face_code)
                .ok_or_else(|| Error::Other("face closure violated in fixed complex".into()))?;
            *acc.entry(face_id).or_insert(0) += sign;
        }
        assembler.set_boundary(d, cell, acc.into_iter().collect());
    }
    Ok(assembler.finish(ComplexMeta {
        label: format!(
            "fixed-rank{rank}-p{}-{}{}",
            kind.p(),
            match kind {
                GroupKind::Trivial => "trivial",
                GroupKind::Cyclic { .. } => "cyclic",
                GroupKind::Bicyclic { .. } => "bicyclic",
            },
            if essential { "-essential" } else { "" }
        ),
        rank: Some(rank),
        pointing: None,
        deg_max: None,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{homology, verify_complex, Coefficients};
    use crate::symmetry::{psi_diagonal, swap_rose, theta_rotation};

    #[test]
    fn c_complex_has_three_vertices_and_two_edges() {
        // The essential retract: the raw fixed complex also carries
        // bridge-type blowups of the two theta chains, but their bridges
        // lie in every maximal invariant forest and are collapsed away.
        let cx =
            build_fixed_quotient_complex(4, GroupKind::Cyclic { p: 3 }, &psi_diagonal(3), true)
                .unwrap();
        assert_eq!(cx.n_cells(0), 3);
        assert_eq!(cx.n_cells(1), 2);
        assert_eq!(cx.dimension(), 1);
        verify_complex(&cx).unwrap();
        // A tree: contractible.
        let h = homology(&cx, Coefficients::ModP(3)).unwrap();
        assert_eq!(h.betti_fp(), vec![1, 0]);
    }

    #[test]
    fn theta_seed_gives_single_vertex() {
        let cx =
            build_fixed_quotient_complex(2, GroupKind::Cyclic { p: 3 }, &theta_rotation(3), false)
                .unwrap();
        assert_eq!(cx.n_cells(0), 1);
        assert_eq!(cx.dimension(), 0);
    }

    #[test]
    fn swap_rose_essential_complex() {
        let cx = build_fixed_quotient_complex(3, GroupKind::Cyclic { p: 2 }, &swap_rose(3), true)
            .unwrap();
        assert_eq!(cx.n_cells(0), 4, "four essential vertex classes");
        assert_eq!(cx.dimension(), 2);
        verify_complex(&cx).unwrap();
        let h = homology(&cx, Coefficients::ModP(3)).unwrap();
        assert_eq!(h.betti_fp()[0], 1);
        assert_eq!(h.betti_fp()[1], 0);
        assert_eq!(h.betti_fp()[2], 0);
    }

    #[test]
    fn unreduced_seed_is_rejected() {
        let err = build_fixed_quotient_complex(
            4,
            GroupKind::Cyclic { p: 3 },
            &crate::symmetry::phi_rotation(3),
            false,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotReduced));
    }
}
