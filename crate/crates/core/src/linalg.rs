//! Dense exact linear algebra over ℚ(√3) and its Gaussian extension.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactgeom::{CNum, Rational, Scalar};

/// Exact field element usable by the elimination routines.
pub trait FieldElement:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inverse(&self) -> Option<Self>;
    /// All rational coordinates of the element over ℚ.
    fn rational_parts(&self) -> Vec<&Rational>;
    /// Applies `f` to every rational coordinate.
    fn map_rational(&self, f: &dyn Fn(&Rational) -> Rational) -> Self;
}

impl FieldElement for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn inverse(&self) -> Option<Self> {
        Scalar::inverse(self)
    }
    fn rational_parts(&self) -> Vec<&Rational> {
        vec![self.a(), self.b()]
    }
    fn map_rational(&self, f: &dyn Fn(&Rational) -> Rational) -> Self {
        Scalar::new(f(self.a()), f(self.b()))
    }
}

impl FieldElement for CNum {
    fn zero() -> Self {
        CNum::zero()
    }
    fn one() -> Self {
        CNum::one()
    }
    fn is_zero(&self) -> bool {
        CNum::is_zero(self)
    }
    fn inverse(&self) -> Option<Self> {
        CNum::inverse(self)
    }
    fn rational_parts(&self) -> Vec<&Rational> {
        vec![self.re.a(), self.re.b(), self.im.a(), self.im.b()]
    }
    fn map_rational(&self, f: &dyn Fn(&Rational) -> Rational) -> Self {
        CNum::new(self.re.map_rational(f), self.im.map_rational(f))
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: FieldElement> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    /// Sub-matrix made of the listed columns.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let rows = (0..self.rows).map(|r| cols.iter().map(|&c| self[(r, c)].clone()).collect()).collect();
        Self::from_rows(rows)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b)
            })
            .collect()
    }

    pub fn map<U: FieldElement>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.cols).map(|c| self.column(c)).collect();
        Self::from_rows(rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// In-place reduced row echelon form. Pivots are taken at the first
    /// nonzero entry scanning columns left to right; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(found) = (prow..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(found, prow);
            let inv = self[(prow, col)].inverse().expect("nonzero pivot");
            for c in col..self.cols {
                let v = self[(prow, c)].clone() * &inv;
                self[(prow, c)] = v;
            }
            for r in 0..self.rows {
                if r == prow || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for c in col..self.cols {
                    if self[(prow, c)].is_zero() {
                        continue;
                    }
                    let v = self[(r, c)].clone() - &(factor.clone() * &self[(prow, c)]);
                    self[(r, c)] = v;
                }
            }
            pivots.push(col);
            prow += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel: one vector per free column, carrying 1 at
    /// that column and 0 at the other free columns.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![T::zero(); self.cols];
                v[free] = T::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[(row, free)].clone();
                }
                v
            })
            .collect()
    }

    /// Free (non-pivot) columns of the reduced form.
    pub fn free_columns(&self) -> Vec<usize> {
        let pivots = self.clone().rref();
        (0..self.cols).filter(|c| !pivots.contains(c)).collect()
    }

    /// Determinant by Gaussian elimination with exact pivots.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return T::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            let inv = pivot.inverse().expect("nonzero pivot");
            det = det * &pivot;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone() * &inv;
                for c in col..n {
                    let v = m[(r, c)].clone() - &(factor.clone() * &m[(col, c)]);
                    m[(r, c)] = v;
                }
            }
        }
        det
    }

    /// One solution of `self · x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let rows = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let mut aug = Matrix::from_rows(rows);
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(row, self.cols)].clone();
        }
        Some(x)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Scales `v` so that its first nonzero entry becomes positive and all
/// rational coordinates become coprime integers. Zero vectors are returned
/// unchanged.
pub fn normalize_primitive<T: FieldElement>(v: &[T]) -> Vec<T> {
    let Some(first) = v.iter().find(|x| !x.is_zero()) else {
        return v.to_vec();
    };
    let inv = first.inverse().expect("nonzero");
    let scaled: Vec<T> = v.iter().map(|x| x.clone() * &inv).collect();
    let lcm = scaled
        .iter()
        .flat_map(|x| x.rational_parts().into_iter().map(|r| r.denom().clone()).collect::<Vec<_>>())
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let lcm = Rational::from_integer(lcm);
    let ints: Vec<T> = scaled.iter().map(|x| x.map_rational(&|r| r * &lcm)).collect();
    let gcd = ints
        .iter()
        .flat_map(|x| x.rational_parts().into_iter().map(|r| r.numer().clone()).collect::<Vec<_>>())
        .fold(BigInt::zero(), |acc, n| acc.gcd(&n));
    if gcd.is_zero() || gcd.is_one() {
        return ints;
    }
    let gcd = Rational::from_integer(gcd);
    ints.iter().map(|x| x.map_rational(&|r| r / &gcd)).collect()
}

/// True when `u` and `v` are linearly dependent (all 2×2 minors vanish).
pub fn parallel<T: FieldElement>(u: &[T], v: &[T]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            let cross = u[i].clone() * &v[j] - &(u[j].clone() * &v[i]);
            if !cross.is_zero() {
                return false;
            }
        }
    }
    true
}
