//! The cone `K(S)` of nonnegative combinations of triangle measures on `S`.
//!
//! Two polygonal measures on `S` are equal iff their densities agree on
//! every chamber, so membership in a finitely generated subcone is a linear
//! feasibility problem in chamber coordinates.

use std::sync::Arc;

use itertools::Itertools;

use crate::chambers::{triangle_sum_densities, Arrangement};
use crate::error::{Error, Result};
use crate::exactgeom::{convex_hull_points, locate_in_triangle, CNum, Location, PointSet, Scalar, TriangleRef};
use crate::linalg::Matrix;
use crate::lp::feasible_nonnegative;
use crate::measure::TriangleSum;

/// A triangle spans an extreme ray of `K(S)` iff no other point of `S` lies
/// in the closed triangle.
pub fn is_extreme_ray(s: &PointSet, t: TriangleRef) -> Result<bool> {
    t.check(s)?;
    let (a, b, c) = (s.point(t.i), s.point(t.j), s.point(t.k));
    for p in (0..s.len()).filter(|&p| !t.contains_index(p)) {
        match locate_in_triangle(s.point(p), a, b, c) {
            None => return Err(Error::DegenerateTriangle(t.i, t.j, t.k)),
            Some(Location::Outside) => {}
            Some(_) => return Ok(false),
        }
    }
    Ok(true)
}

/// Chamber sample points of one point set, reused across membership queries.
#[derive(Clone, Debug)]
pub struct ConeOracle {
    base: Arc<PointSet>,
    points: Vec<CNum>,
}

impl ConeOracle {
    pub fn new(base: Arc<PointSet>) -> Result<Self> {
        let points = Arrangement::new(&base)?.representatives();
        Ok(ConeOracle { base, points })
    }

    pub fn base(&self) -> &Arc<PointSet> {
        &self.base
    }

    /// Chamber densities of a triangle combination.
    pub fn densities(&self, sum: &TriangleSum) -> Vec<Scalar> {
        triangle_sum_densities(sum, &self.points)
    }

    /// Nonnegative `c` with `Σ c_g · μ_g = target`, if one exists.
    pub fn membership(&self, target: &TriangleSum, generators: &[TriangleRef]) -> Result<Option<Vec<Scalar>>> {
        if !Arc::ptr_eq(target.base(), &self.base) && **target.base() != *self.base {
            return Err(Error::Mismatch("target lives on a different point set".into()));
        }
        let mut columns = Vec::with_capacity(generators.len());
        for g in generators {
            let single = TriangleSum::from_terms(self.base.clone(), [(*g, Scalar::one())])?;
            columns.push(self.densities(&single));
        }
        let rows = (0..self.points.len()).map(|r| columns.iter().map(|col| col[r].clone()).collect()).collect();
        let a = Matrix::from_rows(rows);
        Ok(feasible_nonnegative(&a, &self.densities(target)))
    }
}

/// One-shot form of [`ConeOracle::membership`].
pub fn cone_membership(target: &TriangleSum, generators: &[TriangleRef]) -> Result<Option<Vec<Scalar>>> {
    ConeOracle::new(target.base().clone())?.membership(target, generators)
}

/// Two triangles sharing a side whose union is a convex quadrilateral,
/// together with the two triangles on the other diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipPair {
    pub pair: [TriangleRef; 2],
    pub flipped: [TriangleRef; 2],
}

impl FlipPair {
    /// `μ(pair) − μ(flipped)` as a combination of triangles.
    pub fn difference(&self, base: &Arc<PointSet>) -> Result<TriangleSum> {
        let one = Scalar::one;
        TriangleSum::from_terms(
            base.clone(),
            [(self.pair[0], one()), (self.pair[1], one()), (self.flipped[0], -one()), (self.flipped[1], -one())],
        )
    }
}

/// Every flip among triangles with nodes in `S`, one per 4-subset in convex
/// position. `pair` uses the diagonal through the smallest index. The flip
/// identity is checked in chamber densities before returning.
pub fn flips(s: &Arc<PointSet>) -> Result<Vec<FlipPair>> {
    let mut out = Vec::new();
    for quad in (0..s.len()).combinations(4) {
        let pts: Vec<CNum> = quad.iter().map(|&i| s.point(i).clone()).collect();
        let Some(hull) = convex_hull_points(&pts) else {
            continue;
        };
        if hull.len() != 4 {
            continue;
        }
        // rotate so the cycle starts at the smallest index, quad[0]
        let start = hull.iter().position(|&h| h == 0).expect("all four on hull");
        let cyc: Vec<usize> = (0..4).map(|r| quad[hull[(start + r) % 4]]).collect();
        let tri = |a: usize, b: usize, c: usize| TriangleRef::new(a, b, c);
        out.push(FlipPair {
            pair: [tri(cyc[0], cyc[1], cyc[2])?, tri(cyc[0], cyc[2], cyc[3])?],
            flipped: [tri(cyc[0], cyc[1], cyc[3])?, tri(cyc[1], cyc[2], cyc[3])?],
        });
    }
    if !out.is_empty() {
        let oracle = ConeOracle::new(s.clone())?;
        for f in &out {
            if oracle.densities(&f.difference(s)?).iter().any(|d| !d.is_zero()) {
                return Err(Error::Mismatch(format!("flip identity fails for {f:?}")));
            }
        }
    }
    Ok(out)
}

/// The three triangles `(a,b,p)`, `(b,c,p)`, `(c,a,p)` splitting `t` at a
/// point `p` strictly inside it.
pub fn split_at(s: &PointSet, t: TriangleRef, p: usize) -> Result<[TriangleRef; 3]> {
    t.check(s)?;
    s.check_index(p)?;
    let loc = locate_in_triangle(s.point(p), s.point(t.i), s.point(t.j), s.point(t.k));
    if loc != Some(Location::Inside) {
        return Err(Error::Mismatch(format!("point {p} is not interior to {t}")));
    }
    Ok([TriangleRef::new(t.i, t.j, p)?, TriangleRef::new(t.j, t.k, p)?, TriangleRef::new(t.i, t.k, p)?])
}
