use std::fmt;

use super::complex::CNum;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Ordered configuration `z₀, …, z_n` of pairwise distinct points.
///
/// Collinearity of triples is computed once at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct PointSet {
    field: Field,
    points: Vec<CNum>,
    nondegenerate: bool,
}

impl PointSet {
    /// Builds a configuration of at least three points over `field`.
    pub fn new(field: Field, points: Vec<CNum>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::TooFewPoints { needed: 3, got: points.len() });
        }
        for p in &points {
            for c in [&p.re, &p.im] {
                if !field.contains(c) {
                    return Err(Error::FieldMismatch { field: field.name(), value: c.to_string() });
                }
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(Error::DuplicatePoint(i, j));
                }
            }
        }
        let mut set = PointSet { field, points, nondegenerate: true };
        set.nondegenerate = !set.has_collinear_triple();
        Ok(set)
    }

    /// Rational configuration from integer coordinates.
    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(Field::Rational, coords.iter().map(|&(x, y)| CNum::from_ints(x, y)).collect())
    }

    fn has_collinear_triple(&self) -> bool {
        let m = self.points.len();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    if orient(&self.points[i], &self.points[j], &self.points[k]).is_zero() {
                        return true;
                    }
                }
            }
        }
        false
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn points(&self) -> &[CNum] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &CNum {
        &self.points[i]
    }

    /// Number of points, `n + 1`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The largest index `n`.
    pub fn n(&self) -> usize {
        self.points.len() - 1
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.points.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, len: self.points.len() })
        }
    }

    /// Basis triangles `Δ₀ᵢⱼ`, `1 ≤ i < j ≤ n`, in lexicographic order.
    pub fn basis_triangles(&self) -> Vec<TriangleRef> {
        let n = self.n();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(TriangleRef { i: 0, j: i, k: j });
            }
        }
        out
    }

    /// Every triangle on three points of the set, lexicographic.
    pub fn all_triangles(&self) -> Vec<TriangleRef> {
        let m = self.len();
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    out.push(TriangleRef { i, j, k });
                }
            }
        }
        out
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PointSet")
            .field("field", &self.field)
            .field("points", &self.points)
            .field("nondegenerate", &self.nondegenerate)
            .finish()
    }
}

/// Indices `i < j < k` of a triangle with nodes in a [`PointSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriangleRef {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl TriangleRef {
    /// Sorts the three indices; they must be distinct.
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        let mut v = [a, b, c];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return Err(Error::RepeatedIndex(a, b, c));
        }
        Ok(TriangleRef { i: v[0], j: v[1], k: v[2] })
    }

    /// Basis triangle `Δ₀ᵢⱼ`.
    pub fn basis(i: usize, j: usize) -> Result<Self> {
        let t = Self::new(0, i, j)?;
        Ok(t)
    }

    pub fn indices(&self) -> [usize; 3] {
        [self.i, self.j, self.k]
    }

    pub fn contains_index(&self, v: usize) -> bool {
        self.i == v || self.j == v || self.k == v
    }

    pub fn is_basis(&self) -> bool {
        self.i == 0
    }

    pub fn check(&self, s: &PointSet) -> Result<()> {
        s.check_index(self.k)
    }
}

impl fmt::Display for TriangleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

/// Twice the signed area of `(a, b, c)`; positive when counterclockwise.
pub fn orient(a: &CNum, b: &CNum, c: &CNum) -> Scalar {
    (&b.re - &a.re) * (&c.im - &a.im) - (&c.re - &a.re) * (&b.im - &a.im)
}
