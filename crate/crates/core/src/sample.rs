//! Seeded random configurations for property checks and audits.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactgeom::{CNum, Field, PointSet, Rational, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ bound` and `1 ≤ q ≤ bound`.
pub fn random_rational(rng: &mut impl Rng, bound: i64) -> Scalar {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound);
    Scalar::from_rational(Rational::new(BigInt::from(p), BigInt::from(q)))
}

pub fn random_point(rng: &mut impl Rng, bound: i64) -> CNum {
    CNum::new(random_rational(rng, bound), random_rational(rng, bound))
}

/// `count` distinct points with no three collinear, coordinates drawn by
/// [`random_rational`]. Draws are rejected and repeated until the set is
/// non-degenerate.
pub fn random_nondegenerate(rng: &mut impl Rng, count: usize, bound: i64) -> PointSet {
    loop {
        let pts: Vec<CNum> = (0..count).map(|_| random_point(rng, bound)).collect();
        if let Ok(s) = PointSet::new(Field::Rational, pts) {
            if s.is_nondegenerate() {
                return s;
            }
        }
    }
}

/// `count` points in convex position: distinct integer abscissae on the
/// parabola `y = x²`, shuffled.
pub fn random_convex(rng: &mut impl Rng, count: usize, spread: i64) -> PointSet {
    assert!(spread as usize * 2 + 1 >= count, "not enough abscissae");
    let mut xs: Vec<i64> = Vec::new();
    while xs.len() < count {
        let x = rng.gen_range(-spread..=spread);
        if !xs.contains(&x) {
            xs.push(x);
        }
    }
    let pts: Vec<(i64, i64)> = xs.iter().map(|&x| (x, x * x)).collect();
    PointSet::from_ints(&pts).expect("distinct points")
}
