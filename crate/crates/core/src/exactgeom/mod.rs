//! Exact scalars over ℚ and ℚ(√3), complex numbers over them, and the
//! orientation-based predicates everything else is built on.

mod complex;
mod pointset;
mod predicates;
mod scalar;

pub use complex::CNum;
pub use pointset::{orient, PointSet, TriangleRef};
pub use predicates::{
    area, bracket, convex_hull, convex_hull_points, locate_in_triangle, point_in_triangle, strictly_inside_convex,
    Location,
};
pub use scalar::{Field, Rational, Scalar};
