//! Smith normal form over the integers with arbitrary-precision entries.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IntMat {
            rows,
            cols,
            data: entries.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form: the nonzero diagonal entries form a divisibility
/// chain `d_1 | d_2 | ...`; when requested, unimodular `U`, `V` with
/// `U * M * V = D` are returned.
#[derive(Debug, Clone)]
pub struct Snf {
    pub diagonal: Vec<BigInt>,
    pub u: Option<IntMat>,
    pub v: Option<IntMat>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors larger than one, i.e. the torsion the matrix
    /// presents as a cokernel relation.
    pub fn nontrivial_factors(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| d.magnitude() > &1u32.into())
            .cloned()
            .collect()
    }
}

/// Computes the Smith normal form with minimal-absolute-value pivoting.
pub fn smith_normal_form(m: &IntMat, with_transforms: bool) -> Snf {
    let mut a = m.clone();
    let mut u = with_transforms.then(|| IntMat::identity(m.rows));
    let mut v = with_transforms.then(|| IntMat::identity(m.cols));
    let t = m.rows.min(m.cols);
    let mut k = 0;
    while k < t {
        let Some((pi, pj)) = min_abs_pivot(&a, k) else {
            break;
        };
        swap_rows(&mut a, u.as_mut(), k, pi);
        swap_cols(&mut a, v.as_mut(), k, pj);
        loop {
            let mut clean = true;
            for i in k + 1..a.rows {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let q = div_round(&a[(i, k)], &a[(k, k)]);
                row_op(&mut a, u.as_mut(), i, k, &q);
                if !a[(i, k)].is_zero() {
                    // Remainder smaller than the pivot: promote it.
                    swap_rows(&mut a, u.as_mut(), k, i);
                    clean = false;
                }
            }
            for j in k + 1..a.cols {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let q = div_round(&a[(k, j)], &a[(k, k)]);
                col_op(&mut a, v.as_mut(), j, k, &q);
                if !a[(k, j)].is_zero() {
                    swap_cols(&mut a, v.as_mut(), k, j);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: the pivot must divide the rest of the block.
            let mut offender = None;
            'scan: for i in k + 1..a.rows {
                for j in k + 1..a.cols {
                    if !(&a[(i, j)] % &a[(k, k)]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    add_row(&mut a, u.as_mut(), k, i);
                }
                None => break,
            }
        }
        if a[(k, k)].is_negative() {
            negate_row(&mut a, u.as_mut(), k);
        }
        k += 1;
    }
    let mut diagonal = Vec::new();
    for i in 0..t {
        if !a[(i, i)].is_zero() {
            diagonal.push(a[(i, i)].clone());
        }
    }
    Snf { diagonal, u, v }
}

/// Rank of the matrix over the rationals.
pub fn rank_q(m: &IntMat) -> usize {
    smith_normal_form(m, false).rank()
}

fn min_abs_pivot(a: &IntMat, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..a.rows {
        for j in k..a.cols {
            if a[(i, j)].is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if a[(i, j)].abs() < a[(bi, bj)].abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// Rounded division keeps remainders at most half the divisor.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = num_integer::Integer::div_rem(a, b);
    if r.abs() * 2u32 > b.abs() {
        if (r.is_negative() && b.is_negative()) || (!r.is_negative() && !b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn swap_rows(a: &mut IntMat, u: Option<&mut IntMat>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols {
        a.data.swap(i * a.cols + c, j * a.cols + c);
    }
    if let Some(u) = u {
        for c in 0..u.cols {
            u.data.swap(i * u.cols + c, j * u.cols + c);
        }
    }
}

fn swap_cols(a: &mut IntMat, v: Option<&mut IntMat>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..a.rows {
        a.data.swap(r * a.cols + i, r * a.cols + j);
    }
    if let Some(v) = v {
        for r in 0..v.rows {
            v.data.swap(r * v.cols + i, r * v.cols + j);
        }
    }
}

/// `row_i -= q * row_k`.
fn row_op(a: &mut IntMat, u: Option<&mut IntMat>, i: usize, k: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for c in 0..a.cols {
        let sub = q * &a[(k, c)];
        a[(i, c)] -= sub;
    }
    if let Some(u) = u {
        for c in 0..u.cols {
            let sub = q * &u[(k, c)];
            u[(i, c)] -= sub;
        }
    }
}

/// `col_j -= q * col_k`.
fn col_op(a: &mut IntMat, v: Option<&mut IntMat>, j: usize, k: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for r in 0..a.rows {
        let sub = q * &a[(r, k)];
        a[(r, j)] -= sub;
    }
    if let Some(v) = v {
        for r in 0..v.rows {
            let sub = q * &v[(r, k)];
            v[(r, j)] -= sub;
        }
    }
}

/// `row_k += row_i`.
fn add_row(a: &mut IntMat, u: Option<&mut IntMat>, k: usize, i: usize) {
    for c in 0..a.cols {
        let add = a[(i, c)].clone();
        a[(k, c)] += add;
    }
    if let Some(u) = u {
        for c in 0..u.cols {
            let add = u[(i, c)].clone();
            u[(k, c)] += add;
        }
    }
}

fn negate_row(a: &mut IntMat, u: Option<&mut IntMat>, k: usize) {
    for c in 0..a.cols {
        let neg = -a[(k, c)].clone();
        a[(k, c)] = neg;
    }
    if let Some(u) = u {
        for c in 0..u.cols {
            let neg = -u[(k, c)].clone();
            u[(k, c)] = neg;
        }
    }
}

/// Determinant by fraction-free elimination; used to check the transforms
/// are unimodular on test-sized matrices.
pub fn determinant(m: &IntMat) -> BigInt {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            for c in 0..n {
                a.data.swap(k * n + c, swap * n + c);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = num / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * a[(n - 1, n - 1)].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_of_diag_2_3() {
        let m = IntMat::from_i64(2, 2, &[2, 0, 0, 3]);
        let snf = smith_normal_form(&m, false);
        let d: Vec<i64> = snf.diagonal.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(d, vec![1, 6]);
    }

    #[test]
    fn snf_of_zero_matrix() {
        let m = IntMat::zero(3, 2);
        let snf = smith_normal_form(&m, false);
        assert!(snf.diagonal.is_empty());
        assert_eq!(snf.rank(), 0);
    }

    #[test]
    fn divisibility_chain_holds() {
        let m = IntMat::from_i64(3, 3, &[2, 4, 4, -6, 6, 12, 10, 4, 16]);
        let snf = smith_normal_form(&m, false);
        for w in snf.diagonal.windows(2) {
            assert!(
                (&w[1] % &w[0]).is_zero(),
                "chain broken: {:?}",
                snf.diagonal
            );
        }
    }

    #[test]
    fn transforms_are_unimodular() {
        let m = IntMat::from_i64(3, 4, &[3, 1, -4, 2, 0, 5, 2, -2, 6, 1, 0, 7]);
        let snf = smith_normal_form(&m, true);
        let u = snf.u.clone().unwrap();
        let v = snf.v.clone().unwrap();
        assert_eq!(determinant(&u).abs(), BigInt::from(1));
        assert_eq!(determinant(&v).abs(), BigInt::from(1));
        let d = u.mul(&m).mul(&v);
        for i in 0..d.rows {
            for j in 0..d.cols {
                if i != j {
                    assert!(d[(i, j)].is_zero());
                } else if i < snf.diagonal.len() {
                    assert_eq!(d[(i, i)], snf.diagonal[i]);
                } else {
                    assert!(d[(i, i)].is_zero());
                }
            }
        }
    }

    #[test]
    fn rank_invariant_under_permutation() {
        let m = IntMat::from_i64(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]);
        let mut p = m.clone();
        // Swap two rows and two columns.
        for c in 0..3 {
            p.data.swap(c, 3 + c);
        }
        for r in 0..3 {
            p.data.swap(r * 3, r * 3 + 2);
        }
        let a = smith_normal_form(&m, false).diagonal;
        let b = smith_normal_form(&p, false).diagonal;
        assert_eq!(a, b);
    }
}
