//! Harmonic moments `m_j(μ) = ∫ zʲ dμ` of triangles and polygonal measures.
//!
//! For the standard measure of a triangle with vertices `a, b, c`,
//! `Σ_j C(j+2,2)·m_j·uʲ = Area / ((1-au)(1-bu)(1-cu))`, so
//! `m_j = Area · h_j(a,b,c) / C(j+2,2)` with `h_j` the complete homogeneous
//! symmetric polynomial.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Result;
use crate::exactgeom::{orient, CNum, PointSet, Rational, Scalar, TriangleRef};
use crate::measure::{Density, PolygonalMeasure, TriangleSum};

/// Moments `m_0, …, m_J` of a measure.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence {
    pub values: Vec<CNum>,
}

impl MomentSequence {
    pub fn all_zero(&self) -> bool {
        self.values.iter().all(CNum::is_zero)
    }

    /// Index of the first nonvanishing moment.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.values.iter().position(|v| !v.is_zero())
    }
}

fn binom2(j: usize) -> Rational {
    // C(j+2, 2)
    let j = BigInt::from(j);
    Rational::from_integer((&j + 2u32) * (&j + 1u32) / 2u32)
}

/// `h_0, …, h_J` of the given variables, adding one variable at a time:
/// multiplying a series by `1/(1 - z·u)` is `s[j] += z·s[j-1]`.
pub fn complete_homogeneous(vars: &[&CNum], max_degree: usize) -> Vec<CNum> {
    let mut h = vec![CNum::zero(); max_degree + 1];
    h[0] = CNum::one();
    for z in vars {
        for j in 1..=max_degree {
            let carry = (*z).clone() * &h[j - 1];
            h[j] += carry;
        }
    }
    h
}

/// Moments `m_0..=m_J` of the standard measure of the triangle `a, b, c`.
/// Degenerate triangles give zeros.
pub fn vertex_triangle_moments(a: &CNum, b: &CNum, c: &CNum, max_degree: usize) -> Vec<CNum> {
    let area = orient(a, b, c).abs().halve();
    if area.is_zero() {
        return vec![CNum::zero(); max_degree + 1];
    }
    complete_homogeneous(&[a, b, c], max_degree)
        .into_iter()
        .enumerate()
        .map(|(j, h)| h.scale(&area.scale(&binom2(j).recip())))
        .collect()
}

/// `m_0..=m_J` of a triangle of `s`.
pub fn triangle_moments(s: &PointSet, t: TriangleRef, max_degree: usize) -> Result<Vec<CNum>> {
    t.check(s)?;
    Ok(vertex_triangle_moments(s.point(t.i), s.point(t.j), s.point(t.k), max_degree))
}

/// `m_j` of a single triangle.
pub fn triangle_moment(s: &PointSet, t: TriangleRef, j: usize) -> Result<CNum> {
    Ok(triangle_moments(s, t, j)?.pop().expect("non-empty"))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Independent evaluation of `∫_Δ zʲ dx dy`.
///
/// Substitutes `z = a + s(b-a) + t(c-a)`, expands the power multinomially and
/// integrates monomials over the unit simplex with
/// `∫ sᵖ tᵠ = p!·q!/(p+q+2)!`; the Jacobian is `|[abc]|`. Cost grows
/// quadratically in `j` per moment, so this is meant for verification.
pub fn triangle_moment_oracle(s: &PointSet, t: TriangleRef, j: usize) -> Result<CNum> {
    t.check(s)?;
    let (a, b, c) = (s.point(t.i), s.point(t.j), s.point(t.k));
    let jac = orient(a, b, c).abs();
    let u = b - a;
    let v = c - a;
    let mut total = CNum::zero();
    for p in 0..=j {
        for q in 0..=(j - p) {
            let r = j - p - q;
            let multinomial = factorial(j) / (factorial(p) * factorial(q) * factorial(r));
            let simplex = Rational::new(factorial(p) * factorial(q), factorial(p + q + 2));
            let coeff = Scalar::from_rational(simplex * Rational::from_integer(multinomial));
            let term = a.pow(r as u32) * u.pow(p as u32) * v.pow(q as u32);
            total += term.scale(&coeff);
        }
    }
    Ok(total.scale(&jac))
}

/// Moments `m_0..=m_J` of a polygonal measure, by linearity.
pub fn measure_moments<W: Density>(mu: &PolygonalMeasure<W>, max_degree: usize) -> MomentSequence {
    let s = mu.base();
    let mut values = vec![CNum::zero(); max_degree + 1];
    for (t, d) in mu.densities() {
        let d = d.to_cnum();
        let tm = triangle_moments(s, *t, max_degree).expect("triangle in range");
        for (acc, m) in values.iter_mut().zip(tm) {
            *acc += d.clone() * m;
        }
    }
    MomentSequence { values }
}

/// Moments of a combination of arbitrary triangles, without changing basis.
pub fn triangle_sum_moments(sum: &TriangleSum, max_degree: usize) -> MomentSequence {
    let s = sum.base();
    let mut values = vec![CNum::zero(); max_degree + 1];
    for (t, c) in sum.terms() {
        let tm = triangle_moments(s, *t, max_degree).expect("triangle in range");
        for (acc, m) in values.iter_mut().zip(tm) {
            *acc += m.scale(c);
        }
    }
    MomentSequence { values }
}

/// Taylor coefficients of `Ψ_μ(u) = Σ C(j+2,2)·m_j(μ)·uʲ`, up to degree `J`.
pub fn psi_coefficients<W: Density>(mu: &PolygonalMeasure<W>, max_degree: usize) -> Vec<CNum> {
    measure_moments(mu, max_degree)
        .values
        .into_iter()
        .enumerate()
        .map(|(j, m)| m.scale(&Scalar::from_rational(binom2(j))))
        .collect()
}
