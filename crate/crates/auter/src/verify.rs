//! Named verification suites: one per acceptance criterion, runnable
//! individually or all together (`auter verify all`).

use crate::complex::build_quotient_complex;
use crate::enumerate::Pointing;
use crate::farrell::{self, QuotientInput};
use crate::fixed::build_fixed_quotient_complex;
use crate::homology::{cohomology_dims_mod_p, homology, verify_complex, Coefficients};
use crate::nielsen;
use crate::symmetry::{self, equivariant_code, GroupKind};
use crate::whitehead::{
    abs_aut, abs_out, aut_norm, ideal_edges, orbit_index, out_norm, whitehead_move,
    MarkedGroupGraph, NormContext,
};
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Result of one verification case.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub criterion: u32,
    /// What the case asserts.
    pub expected: String,
    pub passed: bool,
    pub millis: u128,
    pub budget_millis: u128,
    /// Whether exceeding the budget fails the case (the long
    /// classification run only warns).
    pub budget_is_hard: bool,
    pub details: String,
}

struct Suite {
    name: &'static str,
    criterion: u32,
    expected: &'static str,
    budget_millis: u128,
    budget_is_hard: bool,
    run: fn() -> Result<String>,
}

fn suites() -> Vec<Suite> {
    vec![
        Suite {
            name: "q2-contractible",
            expected: "rank-2 single-pointed quotient: dimension 2, chi 1, reduced homology 0 over Z, Q, F_3",
            criterion: 1,
            budget_millis: 5_000,
            budget_is_hard: true,
            run: suite_q2,
        },
        Suite {
            name: "sphere-p3",
            expected: "degree-2 double-pointed truncation: H_1(F_3) = 0 and H_2(F_3) = F_3",
            criterion: 2,
            budget_millis: 10_000,
            budget_is_hard: true,
            run: suite_sphere,
        },
        Suite {
            name: "truncation-p3",
            expected: "degree-3 double-pointed truncation: H_2(F_3) = 0",
            criterion: 3,
            budget_millis: 30_000,
            budget_is_hard: true,
            run: suite_truncation,
        },
        Suite {
            name: "tilde-q2",
            expected: "full double-pointed rank-2 quotient: H_1 = H_2 = H_3 = 0 over F_3",
            criterion: 4,
            budget_millis: 60_000,
            budget_is_hard: true,
            run: suite_tilde_q2,
        },
        Suite {
            name: "classification-p3",
            expected: "six reduced cyclic classes, two bicyclic, seven families with the stated containments",
            criterion: 5,
            budget_millis: 60_000,
            budget_is_hard: true,
            run: suite_classification,
        },
        Suite {
            name: "nielsen-c",
            expected: "closure of the diagonal theta wedge is {wedge, chain}; fixed quotient has 3 vertices and 2 edges",
            criterion: 6,
            budget_millis: 10_000,
            budget_is_hard: true,
            run: suite_nielsen,
        },
        Suite {
            name: "q3-omega",
            expected: "essential swap-rose complex: dimension 2, four vertex classes, H^1 = H^2 = 0 over F_3",
            criterion: 7,
            budget_millis: 30_000,
            budget_is_hard: true,
            run: suite_q3_omega,
        },
        Suite {
            name: "tables-p3",
            expected: "assembled graded table equals the closed form on [-12, 12]; Euler identities hold",
            criterion: 8,
            budget_millis: 65_000,
            budget_is_hard: true,
            run: suite_tables,
        },
        Suite {
            name: "whitehead-norms",
            expected: "norm identity holds entry-wise for 200 randomized moves at truncations 16 and 64",
            criterion: 9,
            budget_millis: 60_000,
            budget_is_hard: true,
            run: suite_whitehead,
        },
        Suite {
            name: "integrity",
            expected: "boundary squares to zero, Euler and universal-coefficient checks on every built complex",
            criterion: 10,
            budget_millis: 120_000,
            budget_is_hard: true,
            run: suite_integrity,
        },
        Suite {
            name: "singular-families-p5",
            expected: "every rank-9 singular vertex class lands in one of the six symmetry families",
            criterion: 11,
            budget_millis: 1_800_000,
            budget_is_hard: false,
            run: suite_singular_families,
        },
    ]
}

pub fn suite_names() -> Vec<&'static str> {
    suites().iter().map(|s| s.name).collect()
}

fn run_one(suite: &Suite) -> SuiteOutcome {
    let start = std::time::Instant::now();
    let result = (suite.run)();
    let millis = start.elapsed().as_millis();
    let (mut passed, mut details) = match result {
        Ok(details) => (true, details),
        Err(e) => (false, e.to_string()),
    };
    if millis > suite.budget_millis {
        if suite.budget_is_hard {
            passed = false;
            details = format!("{details}; exceeded {} ms budget", suite.budget_millis);
        } else {
            details = format!(
                "{details}; runtime budget exceeded (documented limitation, not a failure)"
            );
        }
    }
    SuiteOutcome {
        name: suite.name.to_string(),
        criterion: suite.criterion,
        expected: suite.expected.to_string(),
        passed,
        millis,
        budget_millis: suite.budget_millis,
        budget_is_hard: suite.budget_is_hard,
        details,
    }
}

/// Runs one named suite.
pub fn run_suite(name: &str) -> Result<SuiteOutcome> {
    let suites = suites();
    let suite = suites
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::Other(format!("unknown suite {name}")))?;
    Ok(run_one(suite))
}

/// Runs every suite in criterion order.
pub fn run_all() -> Vec<SuiteOutcome> {
    suites().iter().map(run_one).collect()
}

fn check(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Other(format!("expected {what}")))
    }
}

fn suite_q2() -> Result<String> {
    let cx = build_quotient_complex(2, Pointing::Single, None);
    // The degree cap at 2 is no restriction at rank 2.
    let capped = build_quotient_complex(2, Pointing::Single, Some(2));
    check(
        capped.cells == cx.cells,
        "degree-2 cap equals the full complex",
    )?;
    check(cx.dimension() == 2, "dimension 2")?;
    check(cx.euler_characteristic() == 1, "Euler characteristic 1")?;
    verify_complex(&cx)?;
    let h = homology(&cx, Coefficients::ModP(3))?;
    check(h.betti_q() == vec![1, 0, 0], "rational homology of a point")?;
    check(
        h.degrees.iter().all(|d| d.torsion.is_empty()),
        "no integral torsion",
    )?;
    check(h.betti_fp() == vec![1, 0, 0], "mod-3 homology of a point")?;
    Ok(format!(
        "cells {:?}, dim 2, chi 1, reduced homology trivial over Z, Q, F_3",
        (0..=2).map(|d| cx.n_cells(d)).collect::<Vec<_>>()
    ))
}

fn suite_sphere() -> Result<String> {
    let cx = build_quotient_complex(2, Pointing::Double, Some(2));
    verify_complex(&cx)?;
    let h = homology(&cx, Coefficients::ModP(3))?;
    check(h.betti_fp()[1] == 0, "H_1 = 0 over F_3")?;
    check(h.betti_fp()[2] == 1, "H_2 = F_3")?;
    Ok(format!(
        "degree-2 truncation carries the sphere class: mod-3 Betti {:?}",
        h.betti_fp()
    ))
}

fn suite_truncation() -> Result<String> {
    let cx = build_quotient_complex(2, Pointing::Double, Some(3));
    verify_complex(&cx)?;
    let h = homology(&cx, Coefficients::ModP(3))?;
    check(h.betti_fp()[2] == 0, "H_2 = 0 over F_3 at degree cap 3")?;
    Ok(format!(
        "degree-3 truncation kills the sphere: mod-3 Betti {:?}",
        h.betti_fp()
    ))
}

fn suite_tilde_q2() -> Result<String> {
    let cx = build_quotient_complex(2, Pointing::Double, None);
    check(cx.dimension() == 3, "dimension 3")?;
    verify_complex(&cx)?;
    let h = homology(&cx, Coefficients::ModP(3))?;
    check(
        h.betti_fp() == vec![1, 0, 0, 0],
        "H_1 = H_2 = H_3 = 0 over F_3",
    )?;
    Ok(format!("mod-3 Betti {:?}", h.betti_fp()))
}

fn suite_classification() -> Result<String> {
    let cyclic = symmetry::enumerate_group_graphs(4, GroupKind::Cyclic { p: 3 }, true);
    check(cyclic.len() == 6, "six reduced cyclic classes")?;
    let codes: Vec<Vec<u8>> = cyclic.iter().map(|c| c.eq_code.clone()).collect();
    for expected in [
        symmetry::rose_rotation(4, 3),
        symmetry::b_graph_action(3, 0),
        symmetry::b_graph_action(3, 1),
        symmetry::b_graph_action(3, 2),
        symmetry::psi_diagonal(3),
        symmetry::omega_diagonal(3),
    ] {
        check(
            codes.contains(&equivariant_code(&expected, None)),
            "listed reduced class present",
        )?;
    }
    let bicyclic = symmetry::enumerate_group_graphs(4, GroupKind::Bicyclic { p: 3 }, true);
    check(bicyclic.len() == 2, "two reduced bicyclic classes")?;
    let bcodes: Vec<Vec<u8>> = bicyclic.iter().map(|c| c.eq_code.clone()).collect();
    check(
        bcodes.contains(&equivariant_code(&symmetry::psi_bicyclic(3), None))
            && bcodes.contains(&equivariant_code(&symmetry::omega_bicyclic(3), None)),
        "bicyclic classes are the two theta pairs",
    )?;
    let classification = nielsen::classify_subgroup_classes(4, 3)?;
    let names: Vec<&str> = classification
        .families
        .iter()
        .map(|f| f.name.as_str())
        .collect();
    check(
        names == vec!["A", "B0", "B1", "B2", "C", "D", "E"],
        "exactly the seven families",
    )?;
    let expected_containments = vec![
        ("B0".to_string(), "D".to_string()),
        ("B2".to_string(), "D".to_string()),
        ("B2".to_string(), "E".to_string()),
        ("C".to_string(), "D".to_string()),
        ("C".to_string(), "E".to_string()),
    ];
    check(
        classification.containments == expected_containments,
        "containment diagram",
    )?;
    Ok("6 cyclic + 2 bicyclic reduced classes; families A, B0, B1, B2, C, D, E; containments B0,B2,C < D and B2,C < E".to_string())
}

fn suite_nielsen() -> Result<String> {
    let closure = nielsen::nielsen_closure(&symmetry::psi_diagonal(3))?;
    check(closure.len() == 2, "closure of size two")?;
    let codes: Vec<Vec<u8>> = closure.iter().map(|g| equivariant_code(g, None)).collect();
    check(
        codes.contains(&equivariant_code(&symmetry::psi_diagonal(3), None))
            && codes.contains(&equivariant_code(&symmetry::omega_diagonal(3), None)),
        "closure is the two theta chains",
    )?;
    let cx = build_fixed_quotient_complex(
        4,
        GroupKind::Cyclic { p: 3 },
        &symmetry::psi_diagonal(3),
        true,
    )?;
    check(cx.n_cells(0) == 3, "three vertices")?;
    check(cx.n_cells(1) == 2, "two edges")?;
    check(cx.dimension() == 1, "dimension one")?;
    verify_complex(&cx)?;
    Ok("Nielsen closure {psi, omega}; fixed quotient has 3 vertices and 2 edges".to_string())
}

fn q3_omega_complex() -> Result<crate::complex::QuotientComplex> {
    build_fixed_quotient_complex(3, GroupKind::Cyclic { p: 2 }, &symmetry::swap_rose(3), true)
}

fn suite_q3_omega() -> Result<String> {
    let cx = q3_omega_complex()?;
    check(cx.dimension() == 2, "dimension 2")?;
    check(cx.n_cells(0) == 4, "four vertex classes")?;
    verify_complex(&cx)?;
    let coh = cohomology_dims_mod_p(&cx, 3)?;
    check(coh[1] == 0, "H^1 = 0 over F_3")?;
    check(coh[2] == 0, "H^2 = 0 over F_3")?;
    Ok(format!(
        "4 vertex classes, dimension 2, mod-3 cohomology dims {coh:?}"
    ))
}

/// Mod-3 cohomology dimension vectors of every space feeding the
/// assembled table, computed from the built complexes.
pub fn computed_quotient_inputs() -> Result<QuotientInput> {
    fn dims(cx: &crate::complex::QuotientComplex) -> Result<Vec<u64>> {
        Ok(cohomology_dims_mod_p(cx, 3)?
            .into_iter()
            .map(|d| d as u64)
            .collect())
    }
    let q_omega = dims(&q3_omega_complex()?)?;
    let tilde1 = dims(&build_quotient_complex(1, Pointing::Double, None))?;
    let tilde2 = dims(&build_quotient_complex(2, Pointing::Double, None))?;
    let plain1 = dims(&build_quotient_complex(1, Pointing::Single, None))?;
    let plain2 = dims(&build_quotient_complex(2, Pointing::Single, None))?;
    Ok(QuotientInput {
        q_omega,
        // Rank-zero spaces are points by convention.
        tilde: vec![vec![1], tilde1, tilde2],
        plain: vec![vec![1], plain1, plain2],
    })
}

fn suite_tables() -> Result<String> {
    let inputs = computed_quotient_inputs()?;
    for t in -12..=12 {
        let assembled = farrell::aut_hat(3, t, &inputs)?;
        let closed = farrell::closed_form_p3(t);
        if assembled != closed {
            return Err(Error::Other(format!(
                "t = {t}: assembled {} but closed form {}",
                assembled.display(3),
                closed.display(3)
            )));
        }
    }
    // The Euler-consistency identities on the lattice rows.
    for k in 1..=10i64 {
        for s in [4 * k, -4 * k, 4 * k - 1, -4 * k + 1] {
            let report = farrell::euler_consistency(3, s, &inputs)?;
            if !report.ok {
                return Err(Error::Other(format!("Euler identity fails at s = {s}")));
            }
        }
    }
    Ok("assembled table equals the closed form for t in [-12, 12]; Euler identities hold for k <= 10".to_string())
}

/// One random admissible move on a random marked graph; returns whether
/// a move was available.
fn random_move_checked(
    rng: &mut ChaCha8Rng,
    mgg: &MarkedGroupGraph,
    contexts: &[NormContext],
) -> Result<Option<MarkedGroupGraph>> {
    let candidates: Vec<(crate::whitehead::IdealEdge, u32)> = ideal_edges(&mgg.gg)
        .into_iter()
        .flat_map(|alpha| {
            let ds = alpha.d_set(&mgg.gg);
            ds.into_iter()
                .map(move |a| (alpha.clone(), a))
                .collect::<Vec<_>>()
        })
        .collect();
    let Some((alpha, a)) = candidates.choose(rng).cloned() else {
        return Ok(None);
    };
    let index = orbit_index(&mgg.gg, &alpha) as i64;
    let moved = whitehead_move(mgg, &alpha, a)?;
    for ctx in contexts {
        let before_aut = aut_norm(mgg, ctx)?;
        let after_aut = aut_norm(&moved, ctx)?;
        let before_out = out_norm(mgg, ctx)?;
        let after_out = out_norm(&moved, ctx)?;
        let alpha_aut = abs_aut(mgg, ctx, &alpha.members)?;
        let a_aut = abs_aut(mgg, ctx, &[a].into_iter().collect())?;
        let alpha_out = abs_out(mgg, ctx, &alpha.members)?;
        let a_out = abs_out(mgg, ctx, &[a].into_iter().collect())?;
        for i in 0..ctx.words.len() {
            let expected =
                before_aut.0[i] as i64 + index * (alpha_aut.0[i] as i64 - a_aut.0[i] as i64);
            if after_aut.0[i] as i64 != expected {
                return Err(Error::Other(format!(
                    "aut-norm identity fails at entry {i}: {} vs {expected}",
                    after_aut.0[i]
                )));
            }
            let expected =
                before_out.0[i] as i64 + index * (alpha_out.0[i] as i64 - a_out.0[i] as i64);
            if after_out.0[i] as i64 != expected {
                return Err(Error::Other(format!(
                    "out-norm identity fails at entry {i}: {} vs {expected}",
                    after_out.0[i]
                )));
            }
        }
        // The tot norm is the (out, aut) pair; check it literally as well.
        let before_tot = crate::whitehead::tot_norm(mgg, ctx)?;
        let after_tot = crate::whitehead::tot_norm(&moved, ctx)?;
        let deltas_out: Vec<i64> = (0..ctx.cyclic_words.len())
            .map(|i| index * (alpha_out.0[i] as i64 - a_out.0[i] as i64))
            .collect();
        let deltas_aut: Vec<i64> = (0..ctx.words.len())
            .map(|i| index * (alpha_aut.0[i] as i64 - a_aut.0[i] as i64))
            .collect();
        let predicted = crate::whitehead::TotNorm {
            out: before_tot.out.add_signed(&deltas_out),
            aut: before_tot.aut.add_signed(&deltas_aut),
        };
        if after_tot != predicted {
            return Err(Error::Other("tot-norm identity fails".into()));
        }
    }
    Ok(Some(moved))
}

fn whitehead_seeds() -> Result<Vec<MarkedGroupGraph>> {
    let mut seeds = Vec::new();
    for rank in 1..=3u32 {
        let gg =
            crate::symmetry::GroupGraph::new(crate::zoo::rose(rank), GroupKind::Trivial, vec![])?;
        seeds.push(MarkedGroupGraph::standard(gg)?);
    }
    seeds.push(MarkedGroupGraph::standard(symmetry::swap_rose(2))?);
    seeds.push(MarkedGroupGraph::standard(symmetry::swap_rose(3))?);
    seeds.push(MarkedGroupGraph::standard(symmetry::theta_rotation(3))?);
    // A rank-3 graph with rotation: theta with an extra petal.
    let theta_loop = crate::zoo::theta_with_roses(3, 1, 0);
    let mut gen = crate::symmetry::perm_identity(theta_loop.n_half_edges());
    for i in 0..3u32 {
        let f = (i + 1) % 3;
        gen[2 * i as usize] = 2 * f;
        gen[2 * i as usize + 1] = 2 * f + 1;
    }
    let gg = crate::symmetry::GroupGraph::new(theta_loop, GroupKind::Cyclic { p: 3 }, vec![gen])?;
    seeds.push(MarkedGroupGraph::standard(gg)?);
    Ok(seeds)
}

fn suite_whitehead() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_CAFE);
    let seeds = whitehead_seeds()?;
    let mut moves = 0usize;
    let mut walks = 0usize;
    while moves < 200 {
        let mut current = seeds[rng.gen_range(0..seeds.len())].clone();
        let n_generators = current.marking.len();
        let contexts = [
            NormContext::new(n_generators, 16),
            NormContext::new(n_generators, 64),
        ];
        walks += 1;
        for _ in 0..6 {
            match random_move_checked(&mut rng, &current, &contexts)? {
                Some(next) => {
                    moves += 1;
                    current = next;
                }
                None => break,
            }
            if moves >= 200 {
                break;
            }
        }
    }
    Ok(format!(
        "norm identity held entry-wise for {moves} randomized moves over {walks} walks at truncations 16 and 64"
    ))
}

fn suite_integrity() -> Result<String> {
    let complexes = vec![
        build_quotient_complex(2, Pointing::Single, None),
        build_quotient_complex(2, Pointing::Double, Some(2)),
        build_quotient_complex(2, Pointing::Double, Some(3)),
        build_quotient_complex(2, Pointing::Double, None),
        build_quotient_complex(1, Pointing::Single, None),
        build_quotient_complex(1, Pointing::Double, None),
        build_fixed_quotient_complex(
            4,
            GroupKind::Cyclic { p: 3 },
            &symmetry::psi_diagonal(3),
            true,
        )?,
        q3_omega_complex()?,
    ];
    let mut cells = 0usize;
    for cx in &complexes {
        verify_complex(cx)?;
        // The mod-p run asserts universal coefficients internally.
        homology(cx, Coefficients::ModP(3))?;
        cells += (0..=cx.dimension()).map(|d| cx.n_cells(d)).sum::<usize>();
    }
    Ok(format!(
        "∂∂ = 0, Euler and universal-coefficient checks hold on {} complexes ({cells} cells)",
        complexes.len()
    ))
}

fn suite_singular_families() -> Result<String> {
    let classes = crate::singular::classify_singular_vertices(5);
    let mut counts: std::collections::BTreeMap<String, usize> = std::collections::BTreeMap::new();
    for class in &classes {
        if let crate::singular::SymmetryFamily::Counterexample(why) = &class.family {
            return Err(Error::Other(format!(
                "class with automorphism order {} is a counterexample: {why}",
                class.aut_order
            )));
        }
        *counts.entry(class.family.to_string()).or_insert(0) += 1;
    }
    Ok(format!(
        "{} singular vertex classes tagged with no counterexample: {:?}",
        classes.len(),
        counts
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_are_stable() {
        assert_eq!(
            suite_names(),
            vec![
                "q2-contractible",
                "sphere-p3",
                "truncation-p3",
                "tilde-q2",
                "classification-p3",
                "nielsen-c",
                "q3-omega",
                "tables-p3",
                "whitehead-norms",
                "integrity",
                "singular-families-p5",
            ]
        );
    }

    #[test]
    fn unknown_suite_errors() {
        assert!(run_suite("nope").is_err());
    }

    #[test]
    fn computed_inputs_match_the_closed_form_dimensions() {
        let inputs = computed_quotient_inputs().unwrap();
        assert_eq!(inputs.q_omega, vec![1, 0, 0]);
        assert_eq!(inputs.tilde[1], vec![1, 0]);
        assert_eq!(inputs.tilde[2], vec![1, 0, 0, 0]);
        assert_eq!(inputs.plain[2], vec![1, 0, 0]);
    }
}
