//! Polygonal measures on a point set, stored in the basis of triangles
//! through `z₀`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactgeom::{area, bracket, CNum, PointSet, Scalar, TriangleRef};
use crate::linalg::FieldElement;

/// Coefficient type of a measure: real ([`Scalar`]) or complex ([`CNum`]).
pub trait Density: FieldElement {
    fn to_cnum(&self) -> CNum;
    fn from_scalar(s: Scalar) -> Self;
}

impl Density for Scalar {
    fn to_cnum(&self) -> CNum {
        CNum::real(self.clone())
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
}

impl Density for CNum {
    fn to_cnum(&self) -> CNum {
        self.clone()
    }
    fn from_scalar(s: Scalar) -> Self {
        CNum::real(s)
    }
}

/// `μ = Σ d₀ᵢⱼ · μ_{Δ₀ᵢⱼ}`; absent keys carry density zero.
#[derive(Clone, PartialEq)]
pub struct PolygonalMeasure<W = Scalar> {
    base: Arc<PointSet>,
    densities: BTreeMap<TriangleRef, W>,
}

impl<W: Density> PolygonalMeasure<W> {
    pub fn zero(base: Arc<PointSet>) -> Self {
        PolygonalMeasure { base, densities: BTreeMap::new() }
    }

    /// Builds a measure from basis-triangle densities. Repeated keys add up.
    pub fn from_densities(base: Arc<PointSet>, entries: impl IntoIterator<Item = (TriangleRef, W)>) -> Result<Self> {
        let mut m = Self::zero(base);
        for (t, d) in entries {
            t.check(&m.base)?;
            if !t.is_basis() {
                return Err(Error::NotBasisTriangle(t.i, t.j, t.k));
            }
            let cur = m.densities.remove(&t).unwrap_or_else(W::zero);
            let sum = cur + d;
            if !sum.is_zero() {
                m.densities.insert(t, sum);
            }
        }
        Ok(m)
    }

    /// Densities listed in lexicographic basis order.
    pub fn from_density_vector(base: Arc<PointSet>, values: &[W]) -> Result<Self> {
        let basis = base.basis_triangles();
        if values.len() != basis.len() {
            return Err(Error::Mismatch(format!("expected {} densities, got {}", basis.len(), values.len())));
        }
        Self::from_densities(base, basis.into_iter().zip(values.iter().cloned()))
    }

    /// Inverse of [`Self::mass_vector`]: `d₀ᵢⱼ = m_{ij} / Area Δ₀ᵢⱼ`.
    /// Zero-area basis triangles must carry zero mass.
    pub fn from_mass_vector(base: Arc<PointSet>, masses: &[W]) -> Result<Self> {
        let basis = base.basis_triangles();
        if masses.len() != basis.len() {
            return Err(Error::Mismatch(format!("expected {} masses, got {}", basis.len(), masses.len())));
        }
        let mut entries = Vec::new();
        for (t, m) in basis.into_iter().zip(masses) {
            let a = area(&base, t)?;
            if a.is_zero() {
                if !m.is_zero() {
                    return Err(Error::DegenerateTriangle(t.i, t.j, t.k));
                }
                continue;
            }
            let inv = W::from_scalar(a.inverse().expect("nonzero area"));
            entries.push((t, m.clone() * &inv));
        }
        Self::from_densities(base, entries)
    }

    pub fn base(&self) -> &Arc<PointSet> {
        &self.base
    }

    pub fn density(&self, t: &TriangleRef) -> W {
        self.densities.get(t).cloned().unwrap_or_else(W::zero)
    }

    /// Nonzero densities in lexicographic basis order.
    pub fn densities(&self) -> impl Iterator<Item = (&TriangleRef, &W)> {
        self.densities.iter()
    }

    pub fn density_vector(&self) -> Vec<W> {
        self.base.basis_triangles().iter().map(|t| self.density(t)).collect()
    }

    /// Mass coefficients `m_{ij} = d₀ᵢⱼ · Area Δ₀ᵢⱼ`, lexicographic in `(i, j)`.
    pub fn mass_vector(&self) -> Vec<W> {
        self.base
            .basis_triangles()
            .iter()
            .map(|t| {
                let a = area(&self.base, *t).expect("basis triangle in range");
                self.density(t) * &W::from_scalar(a)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.densities.is_empty()
    }

    pub fn scale(&self, c: &W) -> Self {
        let densities = self.densities.iter().map(|(t, d)| (*t, d.clone() * c)).filter(|(_, d)| !d.is_zero()).collect();
        PolygonalMeasure { base: self.base.clone(), densities }
    }

    /// `self + c·other`; both must live on the same point set.
    pub fn add_scaled(&self, other: &Self, c: &W) -> Result<Self> {
        if self.base != other.base {
            return Err(Error::Mismatch("measures on different point sets".into()));
        }
        let entries = self
            .densities
            .iter()
            .map(|(t, d)| (*t, d.clone()))
            .chain(other.densities.iter().map(|(t, d)| (*t, d.clone() * c)));
        Self::from_densities(self.base.clone(), entries)
    }
}

impl PolygonalMeasure<Scalar> {
    pub fn to_complex(&self) -> PolygonalMeasure<CNum> {
        PolygonalMeasure {
            base: self.base.clone(),
            densities: self.densities.iter().map(|(t, d)| (*t, CNum::real(d.clone()))).collect(),
        }
    }

    /// A single standard triangle measure (any three nodes), rewritten in
    /// the basis through `z₀`.
    pub fn triangle(base: Arc<PointSet>, t: TriangleRef) -> Result<Self> {
        TriangleSum::from_terms(base, [(t, Scalar::one())])?.to_basis()
    }
}

impl PolygonalMeasure<CNum> {
    /// The real measure, if every density has zero imaginary part.
    pub fn to_real(&self) -> Result<PolygonalMeasure<Scalar>> {
        let mut densities = BTreeMap::new();
        for (t, d) in &self.densities {
            if !d.is_real() {
                return Err(Error::ComplexMeasure);
            }
            densities.insert(*t, d.re.clone());
        }
        Ok(PolygonalMeasure { base: self.base.clone(), densities })
    }
}

impl<W: Density> std::fmt::Debug for PolygonalMeasure<W> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.densities.iter().map(|(t, d)| (t.to_string(), d))).finish()
    }
}

/// Real combination of standard measures of arbitrary triangles on a point
/// set (not restricted to the `z₀` basis).
#[derive(Clone, PartialEq)]
pub struct TriangleSum {
    base: Arc<PointSet>,
    terms: BTreeMap<TriangleRef, Scalar>,
}

impl TriangleSum {
    pub fn from_terms(base: Arc<PointSet>, terms: impl IntoIterator<Item = (TriangleRef, Scalar)>) -> Result<Self> {
        let mut map: BTreeMap<TriangleRef, Scalar> = BTreeMap::new();
        for (t, c) in terms {
            t.check(&base)?;
            *map.entry(t).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(TriangleSum { base, terms: map })
    }

    /// The basis expansion of a real measure, as a combination.
    pub fn from_measure(mu: &PolygonalMeasure<Scalar>) -> Self {
        TriangleSum { base: mu.base.clone(), terms: mu.densities.clone() }
    }

    pub fn base(&self) -> &Arc<PointSet> {
        &self.base
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TriangleRef, &Scalar)> {
        self.terms.iter()
    }

    /// Rewrites the combination in the basis through `z₀`.
    ///
    /// Uses the winding-number identity
    /// `sgn[abc]·χ_abc = sgn[0ab]·χ_0ab + sgn[0bc]·χ_0bc + sgn[0ca]·χ_0ca`
    /// (almost everywhere), so degenerate triangles contribute nothing.
    pub fn to_basis(&self) -> Result<PolygonalMeasure<Scalar>> {
        let s = &self.base;
        let mut entries = Vec::new();
        for (t, c) in &self.terms {
            if t.is_basis() {
                entries.push((*t, c.clone()));
                continue;
            }
            let sign = bracket(s, t.i, t.j, t.k)?.signum();
            if sign == 0 {
                continue;
            }
            for (a, b) in [(t.i, t.j), (t.j, t.k), (t.k, t.i)] {
                let edge_sign = bracket(s, 0, a, b)?.signum();
                if edge_sign == 0 {
                    continue;
                }
                let coeff = if sign * edge_sign > 0 { c.clone() } else { -c };
                entries.push((TriangleRef::new(0, a, b)?, coeff));
            }
        }
        PolygonalMeasure::from_densities(s.clone(), entries)
    }
}

impl std::fmt::Debug for TriangleSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(t, d)| (t.to_string(), d))).finish()
    }
}
