//! Unit-density null measures and the equipotential polygon pairs they
//! encode.
//!
//! A real null measure whose chamber densities lie in `{0, ±1}` is the
//! difference of the standard measures of `conv(S) ∖ D₊₁` and
//! `conv(S) ∖ D₋₁`, two polygons with the same logarithmic potential near
//! infinity.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::chambers::{chamber_densities, Arrangement};
use crate::error::{Error, Result};
use crate::exactgeom::{CNum, Field, PointSet, Scalar, TriangleRef};
use crate::linalg::Matrix;
use crate::measure::{PolygonalMeasure, TriangleSum};
use crate::moments::{measure_moments, triangle_sum_moments};
use crate::nullspace::{null_measures_real, real_density_basis};

/// Largest enumeration window accepted by [`unit_density_search`].
pub const SEARCH_LIMIT: u128 = 50_000_000;

/// A null measure with chamber densities in `{0, ±1}`. Chamber indices
/// refer to `Arrangement::new(measure.base())`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitDensityCertificate {
    pub measure: PolygonalMeasure<Scalar>,
    pub plus_chambers: Vec<usize>,
    pub minus_chambers: Vec<usize>,
    pub zero_chambers: Vec<usize>,
    pub moment_check_order: usize,
}

/// The factor turning a density list into one with values in `{0, ±1}`:
/// `1/a` when every nonzero entry has absolute value `a`.
pub fn unit_scaling(densities: &[Scalar]) -> Option<Scalar> {
    let mut common: Option<Scalar> = None;
    for d in densities.iter().filter(|d| !d.is_zero()) {
        let a = d.abs();
        match &common {
            None => common = Some(a),
            Some(c) if *c != a => return None,
            Some(_) => {}
        }
    }
    common.and_then(|c| c.inverse())
}

fn is_unit(d: &Scalar) -> bool {
    d.is_zero() || d.abs() == Scalar::one()
}

/// Certificate for `mu` if it qualifies: densities in `{0, ±1}`, not all
/// zero, balanced areas and vanishing moments up to `order`.
pub fn certify(mu: &PolygonalMeasure<Scalar>, arr: &Arrangement, order: usize) -> Option<UnitDensityCertificate> {
    let dens = chamber_densities(mu, &arr.representatives());
    if !dens.iter().all(is_unit) || dens.iter().all(Scalar::is_zero) {
        return None;
    }
    let pick = |sign: i32| -> Vec<usize> { (0..dens.len()).filter(|&c| dens[c].signum() == sign).collect() };
    let (plus, minus, zero) = (pick(1), pick(-1), pick(0));
    let area = |set: &[usize]| -> Scalar { set.iter().map(|&c| &arr.chambers[c].area).sum() };
    if area(&plus) != area(&minus) || !measure_moments(mu, order).all_zero() {
        return None;
    }
    Some(UnitDensityCertificate {
        measure: mu.clone(),
        plus_chambers: plus,
        minus_chambers: minus,
        zero_chambers: zero,
        moment_check_order: order,
    })
}

fn default_order(s: &PointSet) -> usize {
    2 * s.n() + 5
}

/// Exact decision for five points: the real null space is a line, so some
/// multiple of its generator has unit densities iff all nonzero chamber
/// densities share one absolute value.
pub fn unit_density_decide_1d(s: &Arc<PointSet>) -> Result<Option<UnitDensityCertificate>> {
    if s.len() != 5 {
        return Err(Error::WrongPointCount { expected: 5, got: s.len() });
    }
    if !s.is_nondegenerate() {
        return Err(Error::DegenerateConfiguration);
    }
    let ns = null_measures_real(s);
    if ns.dimension() != 1 {
        return Err(Error::Mismatch(format!("real null space has dimension {}", ns.dimension())));
    }
    let arr = Arrangement::new(s)?;
    let mu = &ns.measures[0];
    let Some(lambda) = unit_scaling(&chamber_densities(mu, &arr.representatives())) else {
        return Ok(None);
    };
    Ok(certify(&mu.scale(&lambda), &arr, default_order(s)))
}

fn candidate(index: u128, dim: usize, bound: i64) -> Option<Vec<i64>> {
    let base = (2 * bound + 1) as u128;
    let mut rest = index;
    let mut alpha = Vec::with_capacity(dim);
    for _ in 0..dim {
        alpha.push((rest % base) as i64 - bound);
        rest /= base;
    }
    alpha.reverse();
    let first = alpha.iter().find(|&&a| a != 0)?;
    if *first < 0 {
        return None;
    }
    let g = alpha.iter().fold(BigInt::zero(), |g, &a| g.gcd(&BigInt::from(a)));
    g.is_one().then_some(alpha)
}

/// Bounded search for unit-density null measures.
///
/// Enumerates integer vectors `α` with `|αᵢ| ≤ bound` (first nonzero entry
/// positive, entries coprime) over the elimination basis of the real null
/// space in density coordinates, where basis vector `i` has density 1 on its
/// own free basis triangle and 0 on the other free ones. A combination is
/// kept when its nonzero densities share one absolute value and the rescaled
/// measure certifies. Exhaustive when the null space is a line; a heuristic
/// otherwise. Results are ordered by enumeration index.
pub fn unit_density_search(s: &Arc<PointSet>, bound: u32) -> Result<Vec<UnitDensityCertificate>> {
    if !s.is_nondegenerate() {
        return Err(Error::DegenerateConfiguration);
    }
    let (_, basis) = real_density_basis(s)?;
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let bound = i64::from(bound.max(1));
    let dim = basis.len();
    let total = ((2 * bound + 1) as u128).checked_pow(dim as u32).filter(|t| *t <= SEARCH_LIMIT);
    let total = total.ok_or(Error::SearchTooLarge(((2 * bound + 1) as f64).powi(dim as i32) as u128))?;

    let arr = Arrangement::new(s)?;
    let cell_points: Vec<CNum> = arr.segment_cells().into_iter().map(|c| c.representative).collect();
    let cell_dens: Vec<Vec<Scalar>> = basis.iter().map(|b| chamber_densities(b, &cell_points)).collect();
    let order = default_order(s);

    let hits: Vec<Vec<i64>> = (0..total)
        .into_par_iter()
        .filter_map(|idx| candidate(idx, dim, bound))
        .filter(|alpha| {
            let mut common: Option<Scalar> = None;
            for c in 0..cell_points.len() {
                let d: Scalar = alpha
                    .iter()
                    .zip(&cell_dens)
                    .filter(|(a, _)| **a != 0)
                    .map(|(a, col)| col[c].clone() * Scalar::from_int(*a))
                    .sum();
                if d.is_zero() {
                    continue;
                }
                let a = d.abs();
                match &common {
                    None => common = Some(a),
                    Some(x) if *x != a => return false,
                    Some(_) => {}
                }
            }
            common.is_some()
        })
        .collect();

    let mut out = Vec::new();
    for alpha in hits {
        let mut mu = PolygonalMeasure::zero(s.clone());
        for (a, b) in alpha.iter().zip(&basis) {
            mu = mu.add_scaled(b, &Scalar::from_int(*a))?;
        }
        let lambda = unit_scaling(&chamber_densities(&mu, &cell_points)).expect("checked above");
        if let Some(cert) = certify(&mu.scale(&lambda), &arr, order) {
            out.push(cert);
        }
    }
    Ok(out)
}

/// `conv(S) ∖ D₊₁` and `conv(S) ∖ D₋₁` as chamber sets, with the difference
/// of their standard measures rewritten in the triangle basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonPair {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    /// `μ_first − μ_second` in the triangle basis; `None` when that
    /// difference is not a polygonal measure on `S`.
    pub difference: Option<PolygonalMeasure<Scalar>>,
    /// Whether the difference exists and its moments vanish up to the
    /// certificate's order.
    pub verified: bool,
}

pub fn extract_polygon_pair(cert: &UnitDensityCertificate) -> Result<PolygonPair> {
    let s = cert.measure.base();
    let arr = Arrangement::new(s)?;
    let count = arr.chambers.len();
    let first: Vec<usize> = (0..count).filter(|c| !cert.plus_chambers.contains(c)).collect();
    let second: Vec<usize> = (0..count).filter(|c| !cert.minus_chambers.contains(c)).collect();
    let target: Vec<Scalar> =
        (0..count).map(|c| Scalar::from_int(i64::from(first.contains(&c)) - i64::from(second.contains(&c)))).collect();

    // chamber densities of each basis triangle, as columns
    let reps = arr.representatives();
    let basis = s.basis_triangles();
    let columns: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|t| {
            let single = PolygonalMeasure::from_densities(s.clone(), [(*t, Scalar::one())])?;
            Ok(chamber_densities(&single, &reps))
        })
        .collect::<Result<_>>()?;
    let a = Matrix::from_rows((0..count).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect());
    let difference = match a.solve(&target) {
        Some(x) => Some(PolygonalMeasure::from_density_vector(s.clone(), &x)?),
        None => None,
    };
    let verified = difference.as_ref().is_some_and(|d| measure_moments(d, cert.moment_check_order).all_zero());
    Ok(PolygonPair { first, second, difference, verified })
}

/// The checks of [`verify_equipotential`], in evaluation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Moments,
    NonTrivial,
    UnitDensity,
    AreaBalance,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Moments => "moments",
            Check::NonTrivial => "non-trivial",
            Check::UnitDensity => "unit-density",
            Check::AreaBalance => "area-balance",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquipotReport {
    pub order: usize,
    pub results: Vec<(Check, bool)>,
    pub first_failure: Option<Check>,
}

impl EquipotReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

pub fn verify_equipotential(mu: &PolygonalMeasure<Scalar>, order: usize) -> Result<EquipotReport> {
    let arr = Arrangement::new(mu.base())?;
    let dens = chamber_densities(mu, &arr.representatives());
    let signed_area = |sign: i32| -> Scalar {
        dens.iter().zip(&arr.chambers).filter(|(d, _)| d.signum() == sign).map(|(_, c)| &c.area).sum()
    };
    let results = vec![
        (Check::Moments, measure_moments(mu, order).all_zero()),
        (Check::NonTrivial, !mu.is_zero()),
        (Check::UnitDensity, dens.iter().all(is_unit)),
        (Check::AreaBalance, signed_area(1) == signed_area(-1)),
    ];
    let first_failure = results.iter().find(|(_, ok)| !ok).map(|(c, _)| *c);
    Ok(EquipotReport { order, results, first_failure })
}

fn r3() -> Scalar {
    Scalar::sqrt3()
}

/// Rotation by `π/3`.
fn omega() -> CNum {
    CNum::new(Scalar::from_frac(1, 2), r3().halve())
}

fn rotate(z: &CNum, steps: usize) -> CNum {
    omega().pow(steps as u32) * z
}

/// `T = {±√3 ± I, ±2I}` counterclockwise from `2I`:
/// `2I, −√3+I, −√3−I, −2I, √3−I, √3+I`.
pub fn hexagram_points() -> Vec<CNum> {
    (0..6).map(|k| rotate(&CNum::new(Scalar::zero(), Scalar::from_int(2)), k)).collect()
}

/// Points of `T` and the star triangles' inner hexagon.
pub fn inner_hexagon_points() -> Vec<CNum> {
    // vertex on the positive real axis at distance 2/√3
    let v = CNum::real(r3().scale(&crate::exactgeom::Rational::new(2.into(), 3.into())));
    (0..6).map(|k| rotate(&v, k)).collect()
}

/// The star-minus-annulus measure on `T`: both star triangles minus the
/// hexagon `conv(T)`, written in the triangle basis through `2I`.
///
/// Density is `+1` on the inner hexagon, `−1` on the six notches between
/// the star's tips and `0` on the tips.
pub fn hexagram_example() -> (Arc<PointSet>, PolygonalMeasure<Scalar>) {
    let s = Arc::new(PointSet::new(Field::Sqrt3, hexagram_points()).expect("distinct points"));
    let t = |a, b, c| TriangleRef::new(a, b, c).expect("distinct");
    let one = Scalar::one;
    let terms = [
        (t(0, 2, 4), one()),
        (t(1, 3, 5), one()),
        (t(0, 1, 2), -one()),
        (t(0, 2, 3), -one()),
        (t(0, 3, 4), -one()),
        (t(0, 4, 5), -one()),
    ];
    let mu = TriangleSum::from_terms(s.clone(), terms).and_then(|x| x.to_basis()).expect("valid triangles");
    (s, mu)
}

/// One transcription of the hexagram example, audited.
#[derive(Clone, Debug, PartialEq)]
pub struct HexagramReading {
    pub label: &'static str,
    /// `m₀` of the measure the reading describes.
    pub mass: Scalar,
    /// First nonvanishing moment up to the audit order.
    pub first_nonzero_moment: Option<usize>,
}

impl HexagramReading {
    pub fn passes(&self) -> bool {
        self.first_nonzero_moment.is_none()
    }
}

fn audit(label: &'static str, sum: &TriangleSum, order: usize) -> HexagramReading {
    let m = triangle_sum_moments(sum, order);
    HexagramReading { label, mass: m.values[0].re.clone(), first_nonzero_moment: m.first_nonzero() }
}

/// `conv(T)` minus the six rotated triangles `(√3+I, √3−I, v)`, compared
/// with `conv(T)` minus the hexagon through `v`'s orbit.
fn hexagon_reading(label: &'static str, v: CNum, order: usize) -> Result<HexagramReading> {
    let outer = hexagram_points();
    let inner: Vec<CNum> = (0..6).map(|k| rotate(&v, k)).collect();
    let mut pts = outer.clone();
    pts.extend(inner.iter().cloned());
    let s = Arc::new(PointSet::new(Field::Sqrt3, pts.clone())?);
    let idx = |z: &CNum| pts.iter().position(|p| p == z).expect("orbit stays in the set");
    let mut terms = Vec::new();
    // μ_F − μ_F′ = μ(inner hexagon) − Σ notches
    for k in 1..5 {
        terms.push((TriangleRef::new(6, 6 + k, 7 + k)?, Scalar::one()));
    }
    let (a, b) = (&outer[5], &outer[4]);
    for k in 0..6 {
        let tri = TriangleRef::new(idx(&rotate(a, k)), idx(&rotate(b, k)), idx(&rotate(&v, k)))?;
        terms.push((tri, -Scalar::one()));
    }
    Ok(audit(label, &TriangleSum::from_terms(s, terms)?, order))
}

/// Audits of the three transcriptions of the example: unit-modulus inner
/// hexagon, the doubled-measure identity, and the inner hexagon at modulus
/// `2/√3` where the star triangles cross.
pub fn hexagram_readings(order: usize) -> Result<Vec<HexagramReading>> {
    let unit = hexagon_reading("inner hexagon at modulus 1", CNum::one(), order)?;

    let t = hexagram_points();
    let s = Arc::new(PointSet::new(Field::Sqrt3, t.clone())?);
    let idx = |z: &CNum| t.iter().position(|p| p == z).expect("orbit stays in T");
    let (a, b, c) = (&t[5], &t[4], &t[3]);
    let mut terms = Vec::new();
    for k in 0..6 {
        terms.push((TriangleRef::new(idx(&rotate(a, k)), idx(&rotate(b, k)), idx(&rotate(c, k)))?, Scalar::one()));
    }
    // (√3+I, √3−I, −√3+I) and its mirror (√3−I, √3+I, −√3−I)
    terms.push((TriangleRef::new(5, 4, 1)?, -Scalar::one()));
    terms.push((TriangleRef::new(4, 5, 2)?, -Scalar::one()));
    let doubled = audit("doubled-measure identity", &TriangleSum::from_terms(s, terms)?, order);

    let crossing = inner_hexagon_points()[0].clone();
    let corrected = hexagon_reading("inner hexagon at modulus 2/sqrt3", crossing, order)?;
    Ok(vec![unit, doubled, corrected])
}
