use std::collections::BTreeSet;
use std::sync::Arc;

use polymeasure::chambers::{audit_partition, chamber_densities, chamber_mass, hull_area, incidence_at, Arrangement};
use polymeasure::equipot::hexagram_example;
use polymeasure::exactgeom::{locate_in_triangle, Location};
use polymeasure::moments::measure_moments;
use polymeasure::nullspace::null_measures_real;
use polymeasure::sample::{random_nondegenerate, rng};
use polymeasure::{PointSet, PolygonalMeasure, Scalar};

fn check_arrangement(s: &PointSet) {
    let arr = Arrangement::new(s).unwrap();
    audit_partition(s, &arr).unwrap();
    let signs: BTreeSet<&Vec<i8>> = arr.chambers.iter().map(|c| &c.sign_vector).collect();
    assert_eq!(signs.len(), arr.chambers.len());
    let hull: Vec<_> = polymeasure::exactgeom::convex_hull(s).unwrap().iter().map(|&i| s.point(i).clone()).collect();
    for c in &arr.chambers {
        assert!(c.area.is_positive());
        for p in [c.representative.clone(), c.alternate_representative()] {
            assert!(arr.lines.iter().all(|l| !l.eval(&p).is_zero()));
            assert!(polymeasure::exactgeom::strictly_inside_convex(&p, &hull));
        }
    }
    let alt: Vec<_> = arr.chambers.iter().map(|c| c.alternate_representative()).collect();
    assert_eq!(incidence_at(s, &arr.representatives()), incidence_at(s, &alt));
    let cells = arr.segment_cells();
    let cell_area: Scalar = cells.iter().map(|c| &c.area).sum();
    assert_eq!(cell_area, hull_area(s).unwrap());
}

#[test]
fn random_arrangements_partition_the_hull() {
    let mut r = rng(31);
    for count in [3, 4, 5, 6] {
        for _ in 0..3 {
            check_arrangement(&random_nondegenerate(&mut r, count, 12));
        }
    }
}

#[test]
fn degenerate_and_quadratic_arrangements() {
    check_arrangement(&PointSet::from_ints(&[(0, 0), (4, 0), (2, 0), (0, 4), (2, 2), (1, 3)]).unwrap());
    let (s, _) = hexagram_example();
    check_arrangement(&s);
}

#[test]
fn mass_audit_matches_zeroth_moment() {
    let mut r = rng(41);
    for _ in 0..4 {
        let s = Arc::new(random_nondegenerate(&mut r, 6, 12));
        let arr = Arrangement::new(&s).unwrap();
        let d: Vec<Scalar> = (0..10).map(|k| Scalar::from_frac(k - 4, 3)).collect();
        let mu = PolygonalMeasure::from_density_vector(s.clone(), &d).unwrap();
        let dens = chamber_densities(&mu, &arr.representatives());
        assert_eq!(chamber_mass(&dens, &arr.chambers), measure_moments(&mu, 0).values[0].re);
        for nu in null_measures_real(&s).measures {
            let dens = chamber_densities(&nu, &arr.representatives());
            assert!(chamber_mass(&dens, &arr.chambers).is_zero());
        }
    }
}

#[test]
fn single_basis_triangle_indicator() {
    let s = Arc::new(random_nondegenerate(&mut rng(2), 5, 12));
    let arr = Arrangement::new(&s).unwrap();
    for t in s.basis_triangles() {
        let mu = PolygonalMeasure::from_densities(s.clone(), [(t, Scalar::one())]).unwrap();
        for (c, d) in arr.chambers.iter().zip(chamber_densities(&mu, &arr.representatives())) {
            let inside = locate_in_triangle(&c.representative, s.point(t.i), s.point(t.j), s.point(t.k))
                == Some(Location::Inside);
            assert_eq!(d, if inside { Scalar::one() } else { Scalar::zero() });
        }
    }
}

#[test]
fn pentagon_reference_densities() {
    let s = Arc::new(PointSet::from_ints(&[(0, 0), (2, 0), (3, 1), (1, 3), (0, 2)]).unwrap());
    let arr = Arrangement::new(&s).unwrap();
    assert_eq!(arr.chambers.len(), 11);
    let mu = &null_measures_real(&s).measures[0];
    let mut dens: Vec<Scalar> = chamber_densities(mu, &arr.representatives());
    dens.sort();
    let expected: Vec<Scalar> = [-7, -2, -2, -2, -2, -1, 3, 3, 3, 4, 4].iter().map(|&k| Scalar::from_int(k)).collect();
    assert_eq!(dens, expected);
}
