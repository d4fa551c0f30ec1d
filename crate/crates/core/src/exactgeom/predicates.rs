use super::complex::CNum;
use super::pointset::{orient, PointSet, TriangleRef};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// `det[[1,1,1],[xᵢ,xⱼ,x_k],[yᵢ,yⱼ,y_k]]`, twice the signed area of the
/// triangle on points `i, j, k`.
pub fn bracket(s: &PointSet, i: usize, j: usize, k: usize) -> Result<Scalar> {
    s.check_index(i)?;
    s.check_index(j)?;
    s.check_index(k)?;
    Ok(orient(s.point(i), s.point(j), s.point(k)))
}

/// Unsigned area of a triangle.
pub fn area(s: &PointSet, t: TriangleRef) -> Result<Scalar> {
    Ok(bracket(s, t.i, t.j, t.k)?.abs().halve())
}

/// Where a point sits relative to a closed triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Exact classification of `p` against the triangle `t` by three orientation
/// tests.
pub fn point_in_triangle(p: &CNum, s: &PointSet, t: TriangleRef) -> Result<Location> {
    t.check(s)?;
    let (a, b, c) = (s.point(t.i), s.point(t.j), s.point(t.k));
    locate_in_triangle(p, a, b, c).ok_or(Error::DegenerateTriangle(t.i, t.j, t.k))
}

/// Same as [`point_in_triangle`] for free vertices; `None` if degenerate.
pub fn locate_in_triangle(p: &CNum, a: &CNum, b: &CNum, c: &CNum) -> Option<Location> {
    let o = orient(a, b, c).signum();
    if o == 0 {
        return None;
    }
    let signs = [orient(a, b, p).signum() * o, orient(b, c, p).signum() * o, orient(c, a, p).signum() * o];
    Some(if signs.iter().any(|&x| x < 0) {
        Location::Outside
    } else if signs.contains(&0) {
        Location::Boundary
    } else {
        Location::Inside
    })
}

/// Counterclockwise hull vertices (indices into `s`); points lying on hull
/// edges are not reported as vertices.
pub fn convex_hull(s: &PointSet) -> Result<Vec<usize>> {
    convex_hull_points(s.points()).ok_or(Error::Collinear)
}

/// Andrew's monotone chain over exact coordinates. Returns `None` when the
/// points do not span the plane.
pub fn convex_hull_points(points: &[CNum]) -> Option<Vec<usize>> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| (&points[a].re, &points[a].im).cmp(&(&points[b].re, &points[b].im)));
    idx.dedup_by(|a, b| points[*a] == points[*b]);
    if idx.len() < 3 {
        return None;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &p in &idx {
        while lower.len() >= 2
            && !orient(&points[lower[lower.len() - 2]], &points[lower[lower.len() - 1]], &points[p]).is_positive()
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &p in idx.iter().rev() {
        while upper.len() >= 2
            && !orient(&points[upper[upper.len() - 2]], &points[upper[upper.len() - 1]], &points[p]).is_positive()
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return None;
    }
    Some(lower)
}

/// Strict interior test against a counterclockwise convex polygon.
pub fn strictly_inside_convex(p: &CNum, polygon: &[CNum]) -> bool {
    (0..polygon.len()).all(|e| orient(&polygon[e], &polygon[(e + 1) % polygon.len()], p).is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::Field;

    fn fig2() -> PointSet {
        PointSet::from_ints(&[(0, 0), (2, 0), (3, 1), (1, 3), (0, 2)]).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let unit = PointSet::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(bracket(&unit, 0, 1, 2).unwrap(), Scalar::one());
        let line = PointSet::from_ints(&[(0, 0), (1, 1), (2, 2)]).unwrap();
        assert!(bracket(&line, 0, 1, 2).unwrap().is_zero());
        assert!(!line.is_nondegenerate());
        assert_eq!(bracket(&fig2(), 0, 1, 2).unwrap(), Scalar::from_int(2));
        assert!(matches!(bracket(&unit, 0, 1, 3), Err(Error::IndexOutOfRange { index: 3, .. })));
    }

    #[test]
    fn area_examples() {
        let unit = PointSet::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        let t = TriangleRef::new(0, 1, 2).unwrap();
        assert_eq!(area(&unit, t).unwrap(), Scalar::from_frac(1, 2));
        let line = PointSet::from_ints(&[(0, 0), (1, 1), (2, 2)]).unwrap();
        assert!(area(&line, t).unwrap().is_zero());
        assert_eq!(area(&fig2(), t).unwrap(), Scalar::one());
    }

    #[test]
    fn point_in_triangle_examples() {
        let unit = PointSet::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        let t = TriangleRef::new(0, 1, 2).unwrap();
        let centroid = CNum::new(Scalar::from_frac(1, 3), Scalar::from_frac(1, 3));
        assert_eq!(point_in_triangle(&centroid, &unit, t).unwrap(), Location::Inside);
        let edge = CNum::new(Scalar::from_frac(1, 2), Scalar::zero());
        assert_eq!(point_in_triangle(&edge, &unit, t).unwrap(), Location::Boundary);
        assert_eq!(point_in_triangle(&CNum::from_ints(5, 5), &unit, t).unwrap(), Location::Outside);
        let line = PointSet::from_ints(&[(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(point_in_triangle(&centroid, &line, t), Err(Error::DegenerateTriangle(0, 1, 2)));
    }

    #[test]
    fn hull_examples() {
        let square = PointSet::from_ints(&[(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)]).unwrap();
        assert_eq!(convex_hull(&square).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(convex_hull(&fig2()).unwrap(), vec![0, 1, 2, 3, 4]);
        let tri = PointSet::from_ints(&[(0, 0), (4, 0), (0, 4), (1, 1), (1, 2)]).unwrap();
        assert_eq!(convex_hull(&tri).unwrap(), vec![0, 1, 2]);
        let line = PointSet::from_ints(&[(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(convex_hull(&line), Err(Error::Collinear));
        // a point in the middle of an edge is not a vertex
        let mid = PointSet::from_ints(&[(0, 0), (2, 0), (1, 0), (0, 2)]).unwrap();
        assert_eq!(convex_hull(&mid).unwrap(), vec![0, 1, 3]);
    }

    #[test]
    fn field_mismatch_rejected() {
        let p = CNum::new(Scalar::sqrt3(), Scalar::zero());
        let err = PointSet::new(Field::Rational, vec![p, CNum::from_ints(0, 0), CNum::from_ints(0, 1)]);
        assert!(matches!(err, Err(Error::FieldMismatch { .. })));
    }
}
