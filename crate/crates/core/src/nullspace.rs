//! Moment matrices of a point set and their exact kernels.
//!
//! With `m_{ij} = d₀ᵢⱼ · Area Δ₀ᵢⱼ`, the generating function of a measure on
//! the `z₀` basis is `P(u) / ((1-z₀u) Π_{i≥1}(1-zᵢu))`, where the
//! coefficients of `P` are `M^C · m`. Column `(i, j)` of `M^C` holds the
//! coefficients of `g_{ij}(u) = Π_{k∉{i,j}, k≥1} (1 - z_k u)`. All moments
//! vanish exactly when `P = 0`, so null measures are the kernel of `M^C`
//! (complex densities) or of its real/imaginary split `M^R` (real densities).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactgeom::{area, bracket, CNum, PointSet, Scalar, TriangleRef};
use crate::linalg::{normalize_primitive, FieldElement, Matrix};
use crate::measure::{Density, PolygonalMeasure};

/// Column labels `(i, j)`, `1 ≤ i < j ≤ n`, lexicographic.
pub fn column_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push((i, j));
        }
    }
    out
}

/// `(n-1) × C(n,2)` complex moment matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentMatrixC {
    pub n: usize,
    pub columns: Vec<(usize, usize)>,
    pub matrix: Matrix<CNum>,
}

/// `(2n-3) × C(n,2)` real moment matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentMatrixR {
    pub n: usize,
    pub columns: Vec<(usize, usize)>,
    pub matrix: Matrix<Scalar>,
}

/// Coefficients of `Π (1 - z u)` over the given roots.
fn poly_from_roots<'a>(roots: impl Iterator<Item = &'a CNum>) -> Vec<CNum> {
    let mut coeffs = vec![CNum::one()];
    for z in roots {
        let mut next = coeffs.clone();
        next.push(CNum::zero());
        for (d, c) in coeffs.iter().enumerate() {
            next[d + 1] -= &(z.clone() * c);
        }
        coeffs = next;
    }
    coeffs
}

/// `M^C` from the nodes `z₁, …, zₙ` alone (`z₀` does not enter). Nodes may
/// repeat, which is how the determinant identities degenerate.
pub fn complex_matrix_from_nodes(nodes: &[CNum]) -> Matrix<CNum> {
    let n = nodes.len();
    let columns = column_pairs(n);
    let mut matrix = Matrix::zeros(n.saturating_sub(1).max(1), columns.len());
    for (c, &(i, j)) in columns.iter().enumerate() {
        let roots = (1..=n).filter(|&k| k != i && k != j).map(|k| &nodes[k - 1]);
        for (r, coeff) in poly_from_roots(roots).into_iter().enumerate() {
            matrix[(r, c)] = coeff;
        }
    }
    matrix
}

/// `M^R` from the nodes: a row of ones, then the real and imaginary parts
/// of the remaining rows of `M^C`.
pub fn real_matrix_from_nodes(nodes: &[CNum]) -> Matrix<Scalar> {
    let complex = complex_matrix_from_nodes(nodes);
    let cols = complex.cols();
    let mut rows = vec![(0..cols).map(|c| complex[(0, c)].re.clone()).collect::<Vec<_>>()];
    for k in 1..complex.rows() {
        rows.push((0..cols).map(|c| complex[(k, c)].re.clone()).collect());
        rows.push((0..cols).map(|c| complex[(k, c)].im.clone()).collect());
    }
    Matrix::from_rows(rows)
}

fn nodes(s: &PointSet) -> &[CNum] {
    &s.points()[1..]
}

pub fn build_matrix_complex(s: &PointSet) -> MomentMatrixC {
    MomentMatrixC { n: s.n(), columns: column_pairs(s.n()), matrix: complex_matrix_from_nodes(nodes(s)) }
}

pub fn build_matrix_real(s: &PointSet) -> MomentMatrixR {
    MomentMatrixR { n: s.n(), columns: column_pairs(s.n()), matrix: real_matrix_from_nodes(nodes(s)) }
}

/// Normalized basis of a right kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelBasis<T> {
    pub vectors: Vec<Vec<T>>,
}

impl<T: FieldElement> KernelBasis<T> {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }
}

/// Exact kernel basis. Each vector is scaled so that its first nonzero
/// entry is positive and its rational coordinates are coprime integers.
pub fn kernel<T: FieldElement>(m: &Matrix<T>) -> KernelBasis<T> {
    KernelBasis { vectors: m.kernel().iter().map(|v| normalize_primitive(v)).collect() }
}

/// Null measures of a point set together with the kernel they came from.
#[derive(Clone, Debug)]
pub struct NullSpace<W: Density> {
    /// Kernel of the moment matrix in mass coordinates `m_{ij}`.
    pub kernel: KernelBasis<W>,
    /// One measure per kernel vector, densities scaled to coprime integers.
    pub measures: Vec<PolygonalMeasure<W>>,
    /// False when three points of the set are collinear; the dimension
    /// formulas are then not guaranteed.
    pub nondegenerate: bool,
    /// Basis columns whose triangle has zero area (degenerate sets only);
    /// their mass is forced to zero.
    pub dropped_columns: Vec<(usize, usize)>,
}

impl<W: Density> NullSpace<W> {
    pub fn dimension(&self) -> usize {
        self.measures.len()
    }
}

fn null_space_of<W: Density>(s: &Arc<PointSet>, matrix: &Matrix<W>) -> NullSpace<W> {
    let pairs = column_pairs(s.n());
    let live: Vec<usize> = (0..pairs.len())
        .filter(|&c| !area(s, TriangleRef { i: 0, j: pairs[c].0, k: pairs[c].1 }).unwrap().is_zero())
        .collect();
    let dropped_columns = (0..pairs.len()).filter(|c| !live.contains(c)).map(|c| pairs[c]).collect();
    let reduced = matrix.select_columns(&live);
    let mut vectors = Vec::new();
    let mut measures = Vec::new();
    for v in reduced.kernel() {
        let mut full = vec![W::zero(); pairs.len()];
        for (slot, x) in live.iter().zip(v) {
            full[*slot] = x;
        }
        let full = normalize_primitive(&full);
        let mu = PolygonalMeasure::from_mass_vector(s.clone(), &full).expect("live columns only");
        let dens = normalize_primitive(&mu.density_vector());
        measures.push(PolygonalMeasure::from_density_vector(s.clone(), &dens).expect("sized"));
        vectors.push(full);
    }
    NullSpace { kernel: KernelBasis { vectors }, measures, nondegenerate: s.is_nondegenerate(), dropped_columns }
}

/// Real measures on the `z₀` basis with all harmonic moments zero.
pub fn null_measures_real(s: &Arc<PointSet>) -> NullSpace<Scalar> {
    null_space_of(s, &build_matrix_real(s).matrix)
}

/// Complex measures on the `z₀` basis with all harmonic moments zero.
pub fn null_measures_complex(s: &Arc<PointSet>) -> NullSpace<CNum> {
    null_space_of(s, &build_matrix_complex(s).matrix)
}

/// Real null space in density coordinates, as produced by elimination:
/// returns the free columns and, for each, the null measure whose density is
/// 1 on that basis triangle and 0 on the other free ones.
pub fn real_density_basis(s: &Arc<PointSet>) -> Result<(Vec<usize>, Vec<PolygonalMeasure<Scalar>>)> {
    let basis = s.basis_triangles();
    let areas: Vec<Scalar> = basis.iter().map(|t| area(s, *t)).collect::<Result<_>>()?;
    if areas.iter().any(Scalar::is_zero) {
        return Err(Error::DegenerateConfiguration);
    }
    let m = build_matrix_real(s).matrix;
    let mut scaled = m.clone();
    for r in 0..m.rows() {
        for (c, a) in areas.iter().enumerate() {
            scaled[(r, c)] = m[(r, c)].clone() * a;
        }
    }
    let free = scaled.free_columns();
    let measures =
        scaled.kernel().iter().map(|v| PolygonalMeasure::from_density_vector(s.clone(), v)).collect::<Result<_>>()?;
    Ok((free, measures))
}

/// The explicit spanning measure of the real null space of a non-degenerate
/// five-point set:
///
/// `d₀ᵢⱼ = |zᵢ - zⱼ|² · [i k l] · [j k l] / |[0 i j]|`,
///
/// where `{k < l}` is the complement of `{i, j}` in `{1, 2, 3, 4}` and the
/// brackets keep that index order. Written with ascending brackets the
/// signs come out as `(+, -, +, +, -, +)` on `(12, 13, 14, 23, 24, 34)`.
pub fn five_point_density(s: &Arc<PointSet>) -> Result<PolygonalMeasure<Scalar>> {
    if s.len() != 5 {
        return Err(Error::WrongPointCount { expected: 5, got: s.len() });
    }
    if !s.is_nondegenerate() {
        return Err(Error::DegenerateConfiguration);
    }
    let mut entries = Vec::new();
    for (i, j) in column_pairs(4) {
        let rest: Vec<usize> = (1..=4).filter(|&x| x != i && x != j).collect();
        let (k, l) = (rest[0], rest[1]);
        let dist = (s.point(i) - s.point(j)).norm_sqr();
        let num = dist * bracket(s, i, k, l)? * bracket(s, j, k, l)?;
        let den = bracket(s, 0, i, j)?.abs();
        entries.push((TriangleRef::basis(i, j)?, num / den));
    }
    PolygonalMeasure::from_densities(s.clone(), entries)
}

/// Determinant of the first `n-1` columns (`m₁₂, …, m₁ₙ`) of `M^C`.
pub fn minor_det_complex(s: &PointSet) -> Result<CNum> {
    if s.n() < 3 {
        return Err(Error::TooFewPoints { needed: 4, got: s.len() });
    }
    Ok(minor_det_complex_nodes(nodes(s)))
}

/// [`minor_det_complex`] on raw nodes `z₁, …, zₙ`, `n ≥ 3`.
pub fn minor_det_complex_nodes(nodes: &[CNum]) -> CNum {
    let cols: Vec<usize> = (0..nodes.len() - 1).collect();
    complex_matrix_from_nodes(nodes).select_columns(&cols).determinant()
}

/// Sign `ε_n` in `det Min^C_n = ε_n · Π_{2≤i<j≤n} (zᵢ - zⱼ)`.
///
/// Fixed by the `n = 3` case, where the minor is `[[1, 1], [-z₃, -z₂]]`
/// with determinant `z₃ - z₂`; the general value is `(-1)^{C(n-1, 2)}`.
pub fn minor_sign_complex(n: usize) -> i32 {
    let pairs = (n - 1) * (n - 2) / 2;
    if pairs.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `Π_{2≤i<j≤n} (zᵢ - zⱼ)`.
pub fn vandermonde_product(s: &PointSet) -> CNum {
    let n = s.n();
    let mut acc = CNum::one();
    for i in 2..=n {
        for j in i + 1..=n {
            acc = acc * (s.point(i) - s.point(j));
        }
    }
    acc
}

/// Determinant of the first `2n-3` columns (`m₁₂, …, m₁ₙ, m₂₃, …, m₂ₙ`) of
/// `M^R`.
pub fn minor_det_real(s: &PointSet) -> Result<Scalar> {
    if s.n() < 4 {
        return Err(Error::TooFewPoints { needed: 5, got: s.len() });
    }
    Ok(minor_det_real_nodes(nodes(s)))
}

/// [`minor_det_real`] on raw nodes `z₁, …, zₙ`, `n ≥ 4`.
pub fn minor_det_real_nodes(nodes: &[CNum]) -> Scalar {
    let cols: Vec<usize> = (0..2 * nodes.len() - 3).collect();
    real_matrix_from_nodes(nodes).select_columns(&cols).determinant()
}

/// `[123][124]⋯[12n] · Π_{3≤i<j≤n} |zᵢ - zⱼ|²`, the polynomial the real
/// minor is proportional to.
pub fn real_minor_reference(s: &PointSet) -> Result<Scalar> {
    let n = s.n();
    let mut acc = Scalar::one();
    for k in 3..=n {
        acc = acc * bracket(s, 1, 2, k)?;
    }
    for i in 3..=n {
        for j in i + 1..=n {
            acc = acc * (s.point(i) - s.point(j)).norm_sqr();
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::measure_moments;

    fn pentagon() -> Arc<PointSet> {
        Arc::new(PointSet::from_ints(&[(0, 0), (2, 0), (3, 1), (1, 3), (0, 2)]).unwrap())
    }

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn smallest_matrix_is_one_by_one() {
        let s = PointSet::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        let m = build_matrix_complex(&s);
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (1, 1));
        assert_eq!(m.matrix[(0, 0)], CNum::one());
    }

    #[test]
    fn four_point_matrix_layout() {
        let s = pentagon();
        let c = build_matrix_complex(&s);
        assert_eq!(c.columns, vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        // row 1, column (1,2) = -z3 - z4
        assert_eq!(c.matrix[(1, 0)], -(s.point(3) + s.point(4)));
        // row 2, column (1,2) = z3 z4
        assert_eq!(c.matrix[(2, 0)], s.point(3) * s.point(4));
        let r = build_matrix_real(&s);
        assert_eq!(r.matrix.rows(), 5);
        assert!(r.matrix.row(0).iter().all(|x| *x == Scalar::one()));
        // -x3 - x4 = -(1) - (0)
        assert_eq!(r.matrix[(1, 0)], q(-1));
        assert_eq!(r.matrix.rank(), 5);
    }

    #[test]
    fn pentagon_real_kernel() {
        let s = pentagon();
        let k = kernel(&build_matrix_real(&s).matrix);
        assert_eq!(k.vectors, vec![vec![q(1), q(-5), q(4), q(4), q(-5), q(1)]]);
        let ns = null_measures_real(&s);
        assert_eq!(ns.measures[0].density_vector(), vec![q(3), q(-5), q(6), q(3), q(-5), q(3)]);
        assert!(measure_moments(&ns.measures[0], 20).all_zero());
    }

    #[test]
    fn three_point_examples() {
        let s = Arc::new(PointSet::from_ints(&[(0, 0), (3, 1), (1, 2), (-1, 1)]).unwrap());
        assert_eq!(null_measures_real(&s).dimension(), 0);
        let c = null_measures_complex(&s);
        assert_eq!(c.dimension(), 1);
        // densities ∝ ((z1-z2)/|[012]|, (z3-z1)/|[013]|, (z2-z3)/|[023]|)
        let z = |i: usize| s.point(i).clone();
        let b = |i, j, k| CNum::real(bracket(&s, i, j, k).unwrap().abs());
        let expected = vec![(z(1) - z(2)) / b(0, 1, 2), (z(3) - z(1)) / b(0, 1, 3), (z(2) - z(3)) / b(0, 2, 3)];
        assert!(crate::linalg::parallel(&expected, &c.measures[0].density_vector()));
        assert!(measure_moments(&c.measures[0], 12).all_zero());
    }

    #[test]
    fn five_point_formula_on_pentagon() {
        let s = pentagon();
        let d = five_point_density(&s).unwrap();
        let dens = d.density_vector();
        let signs: Vec<i32> = dens.iter().map(Scalar::signum).collect();
        assert_eq!(signs, vec![1, -1, 1, 1, -1, 1]);
        assert!(crate::linalg::parallel(&dens, &[q(3), q(-5), q(6), q(3), q(-5), q(3)]));
    }

    #[test]
    fn five_point_rejects_bad_input() {
        let four = Arc::new(PointSet::from_ints(&[(0, 0), (1, 0), (0, 1), (3, 3)]).unwrap());
        assert!(matches!(five_point_density(&four), Err(Error::WrongPointCount { .. })));
        let degenerate = Arc::new(PointSet::from_ints(&[(0, 0), (1, 0), (2, 0), (0, 1), (5, 3)]).unwrap());
        assert_eq!(five_point_density(&degenerate).unwrap_err(), Error::DegenerateConfiguration);
    }

    #[test]
    fn complex_minor_small_case() {
        // z2 = 0, z3 = 1: minor [[1,1],[-1,0]] has determinant 1
        let s = PointSet::from_ints(&[(5, 5), (7, 2), (0, 0), (1, 0)]).unwrap();
        let det = minor_det_complex(&s).unwrap();
        assert_eq!(det, CNum::one());
        assert_eq!(det, vandermonde_product(&s).scale(&q(minor_sign_complex(3) as i64)));
        let repeated = PointSet::from_ints(&[(5, 5), (7, 2), (0, 0), (1, 0), (3, 3)]).unwrap();
        assert!(minor_det_complex(&repeated).is_ok());
    }

    #[test]
    fn real_minor_vanishes_on_collinear_124() {
        // z1, z2, z4 on the x-axis
        let s = PointSet::from_ints(&[(0, 3), (0, 0), (2, 0), (1, 4), (5, 0)]).unwrap();
        assert!(minor_det_real(&s).unwrap().is_zero());
    }
}
