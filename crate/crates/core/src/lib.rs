//! Exact construction and analysis of polygonal measures (signed sums of
//! constant-density triangles) whose harmonic moments all vanish.

pub mod chambers;
pub mod cone;
pub mod equipot;
pub mod error;
pub mod exactgeom;
pub mod linalg;
pub mod lp;
pub mod measure;
pub mod moments;
pub mod nullspace;
pub mod sample;

pub use error::{Error, Result};
pub use exactgeom::{CNum, Field, PointSet, Rational, Scalar, TriangleRef};
pub use measure::{PolygonalMeasure, TriangleSum};
