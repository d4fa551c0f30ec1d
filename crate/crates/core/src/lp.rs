//! Exact linear feasibility: find `x ≥ 0` with `A·x = b`.
//!
//! Phase one of the tableau simplex method with one artificial variable per
//! row, Bland's smallest-index rule against cycling, and arithmetic over
//! [`Scalar`] throughout.

use crate::exactgeom::Scalar;
use crate::linalg::Matrix;

/// A nonnegative solution of `a · x = b`, or `None` when none exists.
pub fn feasible_nonnegative(a: &Matrix<Scalar>, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let (m, k) = (a.rows(), a.cols());
    assert_eq!(b.len(), m, "right-hand side length");
    let width = k + m + 1;
    let rhs = k + m;

    // rows with b ≥ 0, artificial j = k + row
    let mut t = Matrix::<Scalar>::zeros(m + 1, width);
    for r in 0..m {
        let flip = b[r].is_negative();
        for c in 0..k {
            t[(r, c)] = if flip { -a[(r, c)].clone() } else { a[(r, c)].clone() };
        }
        t[(r, k + r)] = Scalar::one();
        t[(r, rhs)] = b[r].abs();
    }
    // objective row: minimise the sum of artificials
    for c in 0..k {
        let col_sum: Scalar = (0..m).map(|r| &t[(r, c)]).sum();
        t[(m, c)] = -col_sum;
    }
    let rhs_sum: Scalar = (0..m).map(|r| &t[(r, rhs)]).sum();
    t[(m, rhs)] = -rhs_sum;
    let mut basis: Vec<usize> = (k..k + m).collect();

    while let Some(enter) = (0..k).find(|&c| t[(m, c)].is_negative()) {
        let mut leave: Option<(usize, Scalar)> = None;
        for r in 0..m {
            if !t[(r, enter)].is_positive() {
                continue;
            }
            let ratio = t[(r, rhs)].clone() / t[(r, enter)].clone();
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        // phase one is bounded below by zero
        let (pr, _) = leave.expect("bounded objective");
        pivot(&mut t, pr, enter);
        basis[pr] = enter;
    }

    if !t[(m, rhs)].is_zero() {
        return None;
    }
    let mut x = vec![Scalar::zero(); k];
    for (r, &v) in basis.iter().enumerate() {
        if v < k {
            x[v] = t[(r, rhs)].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut Matrix<Scalar>, pr: usize, pc: usize) {
    let inv = t[(pr, pc)].inverse().expect("positive pivot");
    for c in 0..t.cols() {
        if !t[(pr, c)].is_zero() {
            let v = t[(pr, c)].clone() * &inv;
            t[(pr, c)] = v;
        }
    }
    for r in 0..t.rows() {
        if r == pr || t[(r, pc)].is_zero() {
            continue;
        }
        let factor = t[(r, pc)].clone();
        for c in 0..t.cols() {
            if t[(pr, c)].is_zero() {
                continue;
            }
            let v = t[(r, c)].clone() - &(factor.clone() * &t[(pr, c)]);
            t[(r, c)] = v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Scalar> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn finds_nonnegative_solution() {
        let a = mat(&[&[1, 1, 0], &[0, 1, 1]]);
        let x = feasible_nonnegative(&a, &[q(2), q(3)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![q(2), q(3)]);
        assert!(x.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn detects_infeasibility() {
        // x1 - x2 = -1 and x1 + x2 = 0 forces x2 = 1/2, x1 = -1/2
        let a = mat(&[&[1, -1], &[1, 1]]);
        assert!(feasible_nonnegative(&a, &[q(-1), q(0)]).is_none());
    }

    #[test]
    fn zero_target() {
        let a = mat(&[&[1, 2], &[3, 4]]);
        assert_eq!(feasible_nonnegative(&a, &[q(0), q(0)]).unwrap(), vec![q(0), q(0)]);
    }

    #[test]
    fn degenerate_redundant_rows() {
        let a = mat(&[&[1, 1], &[2, 2], &[1, 1]]);
        let x = feasible_nonnegative(&a, &[q(1), q(2), q(1)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![q(1), q(2), q(1)]);
    }
}
