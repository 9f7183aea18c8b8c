//! Homology of a quotient complex over `Z`, `Q` and `F_p`.
//!
//! The integral computation goes through Smith normal form; the mod-p
//! Betti numbers are computed independently by Gaussian elimination over
//! `F_p` and cross-checked against the universal-coefficient prediction
//! from the integral answer.

use crate::complex::QuotientComplex;
use crate::snf::{smith_normal_form, IntMat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Requested coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    Integral,
    Rational,
    ModP(u64),
}

/// Per-degree homology data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSummary {
    pub degree: usize,
    pub betti_q: usize,
    /// Multiset of prime powers of the torsion subgroup.
    pub torsion: Vec<u64>,
    /// `dim_{F_p} H_d` for the requested prime, when one was requested.
    pub betti_fp: Option<usize>,
}

/// Homology of a complex, one entry per degree `0..=dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub prime: Option<u64>,
    pub degrees: Vec<DegreeSummary>,
}

impl HomologySummary {
    pub fn betti_q(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti_q).collect()
    }

    pub fn betti_fp(&self) -> Vec<usize> {
        self.degrees
            .iter()
            .map(|d| d.betti_fp.unwrap_or(d.betti_q))
            .collect()
    }

    /// Count of torsion summands of `H_d` whose order is a power of `p`.
    pub fn p_torsion_count(&self, d: usize, p: u64) -> usize {
        self.degrees.get(d).map_or(0, |s| {
            s.torsion
                .iter()
                .filter(|&&t| {
                    let mut t = t;
                    while t % p == 0 {
                        t /= p;
                    }
                    t == 1
                })
                .count()
        })
    }
}

/// Rank of a matrix over `F_p` by Gaussian elimination.  The modulus must
/// stay below `2^32` so products fit in `u64`.
pub fn rank_mod_p(m: &IntMat, p: u64) -> usize {
    assert!(p > 1 && p < (1 << 32), "modulus out of range");
    let p_big = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = (0..m.rows)
        .map(|i| {
            (0..m.cols)
                .map(|j| {
                    let r = ((&m[(i, j)] % &p_big) + &p_big) % &p_big;
                    r.to_u64().expect("residue fits")
                })
                .collect()
        })
        .collect();
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..m.cols {
        let Some(pivot) = (row..m.rows).find(|&i| !a[i][col].is_multiple_of(p)) else {
            continue;
        };
        a.swap(row, pivot);
        let inv = mod_inverse(a[row][col] % p, p);
        for j in col..m.cols {
            a[row][j] = a[row][j] % p * inv % p;
        }
        for i in 0..m.rows {
            if i != row && !a[i][col].is_multiple_of(p) {
                let factor = a[i][col] % p;
                for j in col..m.cols {
                    let sub = factor * a[row][j] % p;
                    a[i][j] = (a[i][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
        row += 1;
        if row == m.rows {
            break;
        }
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: p is prime in every caller.
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

fn factor_prime_powers(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut power = 1u64;
            while n.is_multiple_of(d) {
                power *= d;
                n /= d;
            }
            out.push(power);
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out.sort();
    out
}

/// Checks `∂∂ = 0` in every degree and that the Euler characteristic
/// equals the alternating Betti sum over `Q`.  Reports the first failing
/// degree and cell.
pub fn verify_complex(cx: &QuotientComplex) -> Result<()> {
    for d in 2..=cx.dimension() {
        let a = cx.boundary_matrix(d - 1)?;
        let b = cx.boundary_matrix(d)?;
        let prod = a.mul(&b);
        if !prod.is_zero() {
            let cell = (0..prod.cols)
                .find(|&j| (0..prod.rows).any(|i| !prod[(i, j)].is_zero()))
                .unwrap_or(0);
            return Err(Error::Integrity(format!(
                "∂∂ ≠ 0 at dimension {d}, cell {cell}"
            )));
        }
    }
    for d in 1..=cx.dimension() {
        for (j, faces) in cx.boundaries[d].iter().enumerate() {
            for &(i, _) in faces {
                if i >= cx.n_cells(d - 1) {
                    return Err(Error::Integrity(format!(
                        "face {i} of cell {j} in dimension {d} out of range"
                    )));
                }
            }
        }
    }
    let summary = homology(cx, Coefficients::Rational)?;
    let alt: i64 = summary
        .degrees
        .iter()
        .map(|s| {
            let b = s.betti_q as i64;
            if s.degree % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .sum();
    if alt != cx.euler_characteristic() {
        return Err(Error::Integrity(format!(
            "Euler characteristic {} does not match Betti sum {alt}",
            cx.euler_characteristic()
        )));
    }
    Ok(())
}

/// Homology `H_d = ker ∂_d / im ∂_{d+1}` in the requested coefficients.
/// The integral data (Betti numbers over `Q` plus torsion) is always
/// computed; for `ModP(p)` the mod-p Betti numbers are added from an
/// independent elimination and checked against universal coefficients.
pub fn homology(cx: &QuotientComplex, coefficients: Coefficients) -> Result<HomologySummary> {
    // Integrity first.
    for d in 2..=cx.dimension() {
        let a = cx.boundary_matrix(d - 1)?;
        let b = cx.boundary_matrix(d)?;
        if !a.mul(&b).is_zero() {
            return Err(Error::Integrity(format!("∂∂ ≠ 0 at dimension {d}")));
        }
    }
    let dim = cx.dimension();
    let matrices: Vec<IntMat> = (1..=dim)
        .map(|d| cx.boundary_matrix(d))
        .collect::<Result<_>>()?;
    let snfs: Vec<_> = matrices
        .iter()
        .map(|m| smith_normal_form(m, false))
        .collect();
    let rank_of = |d: usize| -> usize {
        if d == 0 || d > dim {
            0
        } else {
            snfs[d - 1].rank()
        }
    };
    let mut degrees = Vec::with_capacity(dim + 1);
    let prime = match coefficients {
        Coefficients::ModP(p) => {
            if p < 2 || p >= (1 << 32) {
                return Err(Error::Other(format!("modulus {p} out of range")));
            }
            Some(p)
        }
        _ => None,
    };
    for d in 0..=dim {
        let n = cx.n_cells(d);
        let betti_q = n - rank_of(d) - rank_of(d + 1);
        let torsion: Vec<u64> = if d < dim {
            snfs[d]
                .nontrivial_factors()
                .iter()
                .flat_map(|f| factor_prime_powers(f.to_u64().expect("torsion fits in u64")))
                .collect()
        } else {
            Vec::new()
        };
        let betti_fp = prime.map(|p| {
            let rank_p = |dd: usize| -> usize {
                if dd == 0 || dd > dim {
                    0
                } else {
                    rank_mod_p(&matrices[dd - 1], p)
                }
            };
            n - rank_p(d) - rank_p(d + 1)
        });
        degrees.push(DegreeSummary {
            degree: d,
            betti_q,
            torsion,
            betti_fp,
        });
    }
    let summary = HomologySummary { prime, degrees };
    if let Some(p) = prime {
        // Universal coefficients: dim H_d(F_p) = b_d + t_p(d) + t_p(d-1).
        for d in 0..=dim {
            let expected = summary.degrees[d].betti_q
                + summary.p_torsion_count(d, p)
                + if d > 0 {
                    summary.p_torsion_count(d - 1, p)
                } else {
                    0
                };
            let got = summary.degrees[d].betti_fp.unwrap();
            if got != expected {
                return Err(Error::Integrity(format!(
                    "universal coefficients mismatch in degree {d}: F_{p} gives {got}, Z predicts {expected}"
                )));
            }
        }
    }
    Ok(summary)
}

/// Cohomology over a field has the same dimensions as homology; this
/// computes `dim H^d(cx; F_p)` for `d = 0..=dim` via transposed matrices,
/// as an independent route used in cross-checks.
pub fn cohomology_dims_mod_p(cx: &QuotientComplex, p: u64) -> Result<Vec<usize>> {
    let dim = cx.dimension();
    let matrices: Vec<IntMat> = (1..=dim)
        .map(|d| cx.boundary_matrix(d).map(|m| m.transpose()))
        .collect::<Result<_>>()?;
    let rank_p = |d: usize| -> usize {
        if d == 0 || d > dim {
            0
        } else {
            rank_mod_p(&matrices[d - 1], p)
        }
    };
    Ok((0..=dim)
        .map(|d| cx.n_cells(d) - rank_p(d) - rank_p(d + 1))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_quotient_complex, QuotientComplex};
    use crate::enumerate::Pointing;

    fn circle() -> QuotientComplex {
        QuotientComplex::from_counts("circle", &[1, 1], vec![vec![vec![]], vec![vec![]]])
    }

    #[test]
    fn circle_homology() {
        let h = homology(&circle(), Coefficients::Integral).unwrap();
        assert_eq!(h.betti_q(), vec![1, 1]);
        assert!(h.degrees.iter().all(|d| d.torsion.is_empty()));
    }

    #[test]
    fn sphere_from_two_cells() {
        // Two 2-cells glued along a circle: S^2 as a CW complex.
        let cx = QuotientComplex::from_counts(
            "sphere",
            &[1, 1, 2],
            vec![
                vec![vec![]],
                vec![vec![]],
                vec![vec![(0, 1)], vec![(0, -1)]],
            ],
        );
        let h = homology(&cx, Coefficients::ModP(3)).unwrap();
        assert_eq!(h.betti_q(), vec![1, 0, 1]);
        assert_eq!(h.betti_fp(), vec![1, 0, 1]);
    }

    #[test]
    fn projective_plane_torsion() {
        // RP^2: one cell in each dimension, ∂2 = multiplication by 2.
        let cx = QuotientComplex::from_counts(
            "rp2",
            &[1, 1, 1],
            vec![vec![vec![]], vec![vec![]], vec![vec![(0, 2)]]],
        );
        let h = homology(&cx, Coefficients::ModP(2)).unwrap();
        assert_eq!(h.betti_q(), vec![1, 0, 0]);
        assert_eq!(h.degrees[1].torsion, vec![2]);
        // Universal coefficients force F_2 Betti numbers (1, 1, 1).
        assert_eq!(h.betti_fp(), vec![1, 1, 1]);
        // Over F_3 nothing survives.
        let h3 = homology(&cx, Coefficients::ModP(3)).unwrap();
        assert_eq!(h3.betti_fp(), vec![1, 0, 0]);
    }

    #[test]
    fn q2_is_acyclic() {
        let cx = build_quotient_complex(2, Pointing::Single, None);
        verify_complex(&cx).unwrap();
        let h = homology(&cx, Coefficients::ModP(3)).unwrap();
        assert_eq!(h.betti_q(), vec![1, 0, 0]);
        assert_eq!(h.betti_fp(), vec![1, 0, 0]);
    }

    #[test]
    fn fault_injection_is_detected() {
        let mut cx = build_quotient_complex(2, Pointing::Single, None);
        // Perturb one boundary coefficient.
        'outer: for d in (1..=cx.dimension()).rev() {
            for faces in cx.boundaries[d].iter_mut() {
                if let Some(entry) = faces.first_mut() {
                    entry.1 += 1;
                    break 'outer;
                }
            }
        }
        assert!(verify_complex(&cx).is_err());
    }

    #[test]
    fn mod_p_rank_matches_snf_for_random_prime() {
        let m = IntMat::from_i64(3, 4, &[2, 4, 6, 8, 1, 3, 5, 7, 0, 0, 2, 2]);
        let over_q = smith_normal_form(&m, false).rank();
        assert_eq!(rank_mod_p(&m, 1_000_003), over_q);
    }
}
