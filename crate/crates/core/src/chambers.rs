//! Chambers of `conv(S)` cut by the lines through pairs of points of `S`.
//!
//! The construction shears the plane so that no line is vertical, cuts the
//! hull into vertical strips at every critical abscissa (points of `S` and
//! pairwise line intersections) and, inside each strip, takes the
//! trapezoids between consecutive lines. Trapezoids with identical sign
//! vectors belong to the same (convex) chamber.
//!
//! A polygonal measure on `S` is constant on every chamber. It is in fact
//! constant on the coarser cells cut out by the *segments* `[zᵢ, zⱼ]`, which
//! [`Arrangement::segment_cells`] recovers by joining chambers across line
//! pieces that no segment covers.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactgeom::{
    convex_hull, convex_hull_points, locate_in_triangle, strictly_inside_convex, CNum, Location, PointSet, Rational,
    Scalar, TriangleRef,
};
use crate::measure::{Density, PolygonalMeasure, TriangleSum};

/// `a·x + b·y + c = 0`, scaled so the first nonzero coefficient is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ArrLine {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    /// Index pairs `(i, j)` of `S` spanning this line.
    pub generators: Vec<(usize, usize)>,
    /// Indices of the points of `S` on the line, ascending.
    pub points: Vec<usize>,
}

impl ArrLine {
    pub fn eval(&self, p: &CNum) -> Scalar {
        &self.a * &p.re + &self.b * &p.im + &self.c
    }

    fn through(p: &CNum, q: &CNum) -> (Scalar, Scalar, Scalar) {
        let a = &q.im - &p.im;
        let b = &p.re - &q.re;
        let c = -(&a * &p.re + &b * &p.im);
        let lead = if !a.is_zero() { a.clone() } else { b.clone() };
        let inv = lead.inverse().expect("distinct points");
        (&a * &inv, &b * &inv, &c * &inv)
    }
}

/// All distinct lines through two points of `S`, ordered by their first
/// generating pair.
pub fn arrangement_lines(s: &PointSet) -> Vec<ArrLine> {
    let mut index: BTreeMap<(Scalar, Scalar, Scalar), usize> = BTreeMap::new();
    let mut lines: Vec<ArrLine> = Vec::new();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            let key = ArrLine::through(s.point(i), s.point(j));
            if let Some(&l) = index.get(&key) {
                lines[l].generators.push((i, j));
                continue;
            }
            let (a, b, c) = key.clone();
            let mut line = ArrLine { a, b, c, generators: vec![(i, j)], points: Vec::new() };
            line.points = (0..s.len()).filter(|&k| line.eval(s.point(k)).is_zero()).collect();
            index.insert(key, lines.len());
            lines.push(line);
        }
    }
    lines
}

/// One strip piece of a chamber: vertices lower-left, lower-right,
/// upper-right, upper-left (sheared back to the original plane).
#[derive(Clone, Debug, PartialEq)]
pub struct Trapezoid {
    pub vertices: [CNum; 4],
    pub area: Scalar,
    pub centroid: CNum,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Chamber {
    /// `sign(a·x + b·y + c)` at the chamber, one entry per arrangement line.
    pub sign_vector: Vec<i8>,
    /// Vertex centroid of the first trapezoid piece in sweep order.
    pub representative: CNum,
    pub area: Scalar,
    pub pieces: Vec<Trapezoid>,
}

impl Chamber {
    /// Chamber boundary, counterclockwise without repeated or collinear
    /// vertices.
    pub fn polygon(&self) -> Vec<CNum> {
        let verts: Vec<CNum> = self.pieces.iter().flat_map(|p| p.vertices.iter().cloned()).collect();
        let hull = convex_hull_points(&verts).expect("pieces have positive area");
        hull.into_iter().map(|i| verts[i].clone()).collect()
    }

    /// Mean of the polygon vertices, a second interior point chosen
    /// independently of the sweep.
    pub fn alternate_representative(&self) -> CNum {
        let poly = self.polygon();
        let k = Scalar::from_int(poly.len() as i64).inverse().expect("nonempty");
        poly.iter().cloned().sum::<CNum>().scale(&k)
    }
}

/// A connected component of `conv(S)` minus the segments between points of
/// `S`; a union of chambers.
#[derive(Clone, Debug, PartialEq)]
pub struct SegmentCell {
    /// Indices of the member chambers, ascending.
    pub chambers: Vec<usize>,
    pub representative: CNum,
    pub area: Scalar,
}

/// Two chambers meeting along a piece of a line inside some strip.
#[derive(Clone, Debug, PartialEq)]
pub struct Adjacency {
    pub below: usize,
    pub above: usize,
    pub line: usize,
    /// Whether that piece lies on a segment between two points of `S`.
    pub covered: bool,
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    /// The shear `x' = x + ε·y` used by the sweep.
    pub shear: Rational,
    pub lines: Vec<ArrLine>,
    pub chambers: Vec<Chamber>,
    pub adjacencies: Vec<Adjacency>,
}

fn shear_for(lines: &[ArrLine]) -> Rational {
    let mut k: i64 = 0;
    loop {
        let eps = if k == 0 { Rational::from_integer(0.into()) } else { Rational::new(1.into(), k.into()) };
        let e = Scalar::from_rational(eps.clone());
        if lines.iter().all(|l| !(&l.b - &(&e * &l.a)).is_zero()) {
            return eps;
        }
        k += 1;
    }
}

/// `y = slope·x' + intercept` in sheared coordinates.
struct SweepLine {
    slope: Scalar,
    intercept: Scalar,
}

impl SweepLine {
    fn at(&self, x: &Scalar) -> Scalar {
        &self.slope * x + &self.intercept
    }
}

struct StripPiece {
    signs: Vec<i8>,
    piece: Trapezoid,
}

struct StripResult {
    pieces: Vec<StripPiece>,
    /// `(lower piece, upper piece, line, covered)` with strip-local indices.
    adjacent: Vec<(usize, usize, usize, bool)>,
}

impl Arrangement {
    pub fn new(s: &PointSet) -> Result<Self> {
        let hull_idx = convex_hull(s)?;
        let hull: Vec<CNum> = hull_idx.iter().map(|&i| s.point(i).clone()).collect();
        let lines = arrangement_lines(s);
        let shear = shear_for(&lines);
        let eps = Scalar::from_rational(shear.clone());
        let sweep: Vec<SweepLine> = lines
            .iter()
            .map(|l| {
                let inv = (&l.b - &(&eps * &l.a)).inverse().expect("non-vertical");
                SweepLine { slope: -(&l.a * &inv), intercept: -(&l.c * &inv) }
            })
            .collect();
        let sheared_x = |p: &CNum| &p.re + &(&eps * &p.im);
        let unshear = |x: &Scalar, y: &Scalar| CNum::new(x - &(&eps * y), y.clone());

        let point_x: Vec<Scalar> = s.points().iter().map(sheared_x).collect();
        let xmin = point_x.iter().min().expect("nonempty").clone();
        let xmax = point_x.iter().max().expect("nonempty").clone();
        let mut critical: Vec<Scalar> = point_x.clone();
        for (p, q) in sweep.iter().tuple_combinations() {
            let ds = &p.slope - &q.slope;
            if let Some(inv) = ds.inverse() {
                let x = (&q.intercept - &p.intercept) * inv;
                if x > xmin && x < xmax {
                    critical.push(x);
                }
            }
        }
        critical.sort();
        critical.dedup();

        // span of the points of S on each line, in sheared abscissa
        let spans: Vec<(Scalar, Scalar)> = lines
            .iter()
            .map(|l| {
                let xs = l.points.iter().map(|&k| &point_x[k]);
                let (lo, hi) = xs.minmax().into_option().expect("line has two points");
                (lo.clone(), hi.clone())
            })
            .collect();

        let strips: Vec<StripResult> = critical
            .par_windows(2)
            .map(|w| {
                let (xl, xr) = (&w[0], &w[1]);
                let xm = (xl + xr).halve();
                let mut order: Vec<usize> = (0..sweep.len()).collect();
                let ys: Vec<Scalar> = sweep.iter().map(|l| l.at(&xm)).collect();
                order.sort_by(|&a, &b| ys[a].cmp(&ys[b]));
                let mut pieces = Vec::new();
                let mut adjacent = Vec::new();
                let mut prev: Option<usize> = None;
                for t in 0..order.len().saturating_sub(1) {
                    let (lo, hi) = (order[t], order[t + 1]);
                    let ym = (&ys[lo] + &ys[hi]).halve();
                    let rep = unshear(&xm, &ym);
                    if !strictly_inside_convex(&rep, &hull) {
                        prev = None;
                        continue;
                    }
                    let corners = [
                        unshear(xl, &sweep[lo].at(xl)),
                        unshear(xr, &sweep[lo].at(xr)),
                        unshear(xr, &sweep[hi].at(xr)),
                        unshear(xl, &sweep[hi].at(xl)),
                    ];
                    let heights = (&sweep[hi].at(xl) - &sweep[lo].at(xl)) + (&sweep[hi].at(xr) - &sweep[lo].at(xr));
                    let area = ((xr - xl) * heights).halve();
                    let signs = lines
                        .iter()
                        .map(|l| {
                            let v = l.eval(&rep).signum();
                            debug_assert!(v != 0, "representative on a line");
                            v as i8
                        })
                        .collect();
                    if let Some(p) = prev {
                        let covered = spans[lo].0 < xm && xm < spans[lo].1;
                        adjacent.push((p, pieces.len(), lo, covered));
                    }
                    prev = Some(pieces.len());
                    pieces.push(StripPiece { signs, piece: Trapezoid { vertices: corners, area, centroid: rep } });
                }
                StripResult { pieces, adjacent }
            })
            .collect();

        // merge by sign vector; BTreeMap order gives the chamber order
        let mut by_sign: BTreeMap<Vec<i8>, Vec<Trapezoid>> = BTreeMap::new();
        let mut piece_keys: Vec<Vec<Vec<i8>>> = Vec::new();
        for strip in &strips {
            piece_keys.push(strip.pieces.iter().map(|p| p.signs.clone()).collect());
            for p in &strip.pieces {
                by_sign.entry(p.signs.clone()).or_default().push(p.piece.clone());
            }
        }
        let position: BTreeMap<&Vec<i8>, usize> = by_sign.keys().enumerate().map(|(i, k)| (k, i)).collect();
        let mut adjacencies = Vec::new();
        for (strip, keys) in strips.iter().zip(&piece_keys) {
            for &(lo, hi, line, covered) in &strip.adjacent {
                adjacencies.push(Adjacency { below: position[&keys[lo]], above: position[&keys[hi]], line, covered });
            }
        }
        let chambers = by_sign
            .into_iter()
            .map(|(sign_vector, pieces)| Chamber {
                sign_vector,
                representative: pieces[0].centroid.clone(),
                area: pieces.iter().map(|p| &p.area).sum(),
                pieces,
            })
            .collect();
        Ok(Arrangement { shear, lines, chambers, adjacencies })
    }

    pub fn representatives(&self) -> Vec<CNum> {
        self.chambers.iter().map(|c| c.representative.clone()).collect()
    }

    /// Cells of `conv(S)` minus the segments `[zᵢ, zⱼ]`, ordered by their
    /// first chamber.
    pub fn segment_cells(&self) -> Vec<SegmentCell> {
        let mut parent: Vec<usize> = (0..self.chambers.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for adj in self.adjacencies.iter().filter(|a| !a.covered) {
            let (a, b) = (find(&mut parent, adj.below), find(&mut parent, adj.above));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for c in 0..self.chambers.len() {
            let r = find(&mut parent, c);
            groups.entry(r).or_default().push(c);
        }
        groups
            .into_values()
            .map(|chambers| SegmentCell {
                representative: self.chambers[chambers[0]].representative.clone(),
                area: chambers.iter().map(|&c| &self.chambers[c].area).sum(),
                chambers,
            })
            .collect()
    }
}

/// Chambers of the full line arrangement inside `conv(S)`.
pub fn chambers(s: &PointSet) -> Result<Vec<Chamber>> {
    Ok(Arrangement::new(s)?.chambers)
}

/// Area of `conv(S)` by the shoelace formula.
pub fn hull_area(s: &PointSet) -> Result<Scalar> {
    let hull = convex_hull(s)?;
    let mut twice = Scalar::zero();
    for (a, b) in hull.iter().circular_tuple_windows() {
        let (p, q) = (s.point(*a), s.point(*b));
        twice += &p.re * &q.im - &q.re * &p.im;
    }
    Ok(twice.halve())
}

fn covers(s: &PointSet, t: TriangleRef, p: &CNum) -> bool {
    let loc = locate_in_triangle(p, s.point(t.i), s.point(t.j), s.point(t.k));
    debug_assert!(loc != Some(Location::Boundary), "chamber point on a triangle edge");
    loc == Some(Location::Inside)
}

/// Basis triangles versus chambers: entry `1` when the chamber point lies
/// inside the triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub rows: Vec<TriangleRef>,
    /// `entries[r][c]` for triangle `r` and chamber `c`.
    pub entries: Vec<Vec<u8>>,
}

impl Incidence {
    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        self.entries.iter().map(|r| r[c]).collect()
    }

    /// Equality up to permuting rows and columns, by trying every row
    /// order; intended for the handful of rows of small configurations.
    pub fn equivalent_to(&self, other: &[Vec<u8>]) -> bool {
        let rows = self.entries.len();
        if rows != other.len() || other.iter().any(|r| r.len() != self.cols()) {
            return false;
        }
        let target = sorted_columns(other, (0..rows).collect());
        (0..rows).permutations(rows).any(|perm| sorted_columns(&self.entries, perm) == target)
    }
}

fn sorted_columns(m: &[Vec<u8>], row_order: Vec<usize>) -> Vec<Vec<u8>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out: Vec<Vec<u8>> = (0..cols).map(|c| row_order.iter().map(|&r| m[r][c]).collect()).collect();
    out.sort();
    out
}

/// Incidence of the basis triangles with the given chamber points.
pub fn incidence_at(s: &PointSet, points: &[CNum]) -> Incidence {
    let rows = s.basis_triangles();
    let entries = rows.iter().map(|t| points.iter().map(|p| u8::from(covers(s, *t, p))).collect()).collect();
    Incidence { rows, entries }
}

/// Incidence matrix over the line-arrangement chambers.
pub fn incidence(s: &PointSet) -> Result<Incidence> {
    Ok(incidence_at(s, &Arrangement::new(s)?.representatives()))
}

/// Density of `μ` at each point (sum of the densities of the basis
/// triangles containing it).
pub fn chamber_densities<W: Density>(mu: &PolygonalMeasure<W>, points: &[CNum]) -> Vec<W> {
    let s = mu.base();
    points
        .iter()
        .map(|p| mu.densities().filter(|(t, _)| covers(s, **t, p)).fold(W::zero(), |acc, (_, d)| acc + d.clone()))
        .collect()
}

/// Same for a combination of arbitrary triangles.
pub fn triangle_sum_densities(sum: &TriangleSum, points: &[CNum]) -> Vec<Scalar> {
    let s = sum.base();
    points.iter().map(|p| sum.terms().filter(|(t, _)| covers(s, **t, p)).map(|(_, c)| c.clone()).sum()).collect()
}

/// `Σ density(c)·area(c)`.
pub fn chamber_mass<W: Density>(densities: &[W], chambers: &[Chamber]) -> W {
    densities.iter().zip(chambers).fold(W::zero(), |acc, (d, c)| acc + d.clone() * &W::from_scalar(c.area.clone()))
}

/// Fails with [`Error::Mismatch`] unless every line chamber lies in
/// `conv(S)` and the areas add up to the hull area.
pub fn audit_partition(s: &PointSet, arr: &Arrangement) -> Result<()> {
    let total: Scalar = arr.chambers.iter().map(|c| &c.area).sum();
    let hull = hull_area(s)?;
    if total != hull {
        return Err(Error::Mismatch(format!("chamber areas sum to {total}, hull area is {hull}")));
    }
    Ok(())
}
