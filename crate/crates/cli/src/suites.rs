//! Seeded property drivers behind `polymeasure audit`.
//!
//! Each suite draws its configurations from one ChaCha stream seeded by the
//! caller, so the emitted document is a pure function of suite, seed and
//! sample count.

use std::sync::Arc;

use polymeasure::cone::{flips, is_extreme_ray, split_at, ConeOracle};
use polymeasure::equipot::unit_density_decide_1d;
use polymeasure::exactgeom::{locate_in_triangle, Location};
use polymeasure::linalg::parallel;
use polymeasure::measure::TriangleSum;
use polymeasure::moments::{measure_moments, triangle_moment, triangle_moment_oracle};
use polymeasure::nullspace::{
    five_point_density, minor_det_complex, minor_det_real, minor_det_real_nodes, minor_sign_complex,
    null_measures_complex, null_measures_real, real_minor_reference, vandermonde_product,
};
use polymeasure::sample::{random_convex, random_nondegenerate, random_point, random_rational, rng};
use polymeasure::{CNum, PointSet, Scalar, TriangleRef};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::docs::{exact, point, ResultDocument};
use crate::error::{CliError, CliResult};

pub struct Suite {
    pub name: &'static str,
    pub default_samples: usize,
    pub description: &'static str,
    run: fn(&mut ChaCha8Rng, usize) -> CliResult<Vec<Value>>,
}

pub const SUITES: &[Suite] = &[
    Suite {
        name: "dimensions",
        default_samples: 20,
        description: "null-space dimensions for n = 3..7 and moment vanishing to 2n+5",
        run: dimensions,
    },
    Suite {
        name: "oracle",
        default_samples: 50,
        description: "closed-form triangle moments against simplex integration, j <= 10",
        run: oracle,
    },
    Suite {
        name: "complex-minor",
        default_samples: 20,
        description: "complex minor against the Vandermonde product, n = 3..6",
        run: complex_minor,
    },
    Suite {
        name: "real-minor",
        default_samples: 20,
        description: "real minor ratio and forced degeneracies, n = 4, 5",
        run: real_minor,
    },
    Suite {
        name: "five-point",
        default_samples: 50,
        description: "explicit five-point density against the real kernel",
        run: five_point,
    },
    Suite {
        name: "unit-five",
        default_samples: 200,
        description: "no five-point unit-density null measure",
        run: unit_five,
    },
    Suite {
        name: "cone",
        default_samples: 12,
        description: "extreme rays against the cone oracle, convex sets, interior splits",
        run: cone,
    },
    Suite {
        name: "flips",
        default_samples: 12,
        description: "flip identities in chamber densities",
        run: flip_identities,
    },
];

pub fn find(name: &str) -> CliResult<&'static Suite> {
    SUITES.iter().find(|s| s.name == name).ok_or_else(|| {
        let names: Vec<&str> = SUITES.iter().map(|s| s.name).collect();
        CliError::Input(format!("unknown suite `{name}`; expected one of {}", names.join(", ")))
    })
}

/// Runs one suite; the document passes when every record has `"ok": true`.
pub fn run(name: &str, seed: u64, samples: Option<usize>) -> CliResult<ResultDocument> {
    let suite = find(name)?;
    let samples = samples.unwrap_or(suite.default_samples);
    let records = (suite.run)(&mut rng(seed), samples)?;
    let failures = records.iter().filter(|r| r["ok"] != json!(true)).count();
    let payload = json!({
        "suite": suite.name,
        "description": suite.description,
        "seed": seed,
        "samples": samples,
        "records": records.len(),
        "failures": failures,
        "results": records,
    });
    let args = vec![("suite", suite.name.to_owned()), ("seed", seed.to_string()), ("samples", samples.to_string())];
    Ok(ResultDocument::new("audit", args, &[], failures == 0, payload))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn points(s: &PointSet) -> Vec<[String; 2]> {
    s.points().iter().map(point).collect()
}

fn complex(z: &CNum) -> [String; 2] {
    [exact(&z.re), exact(&z.im)]
}

fn dimensions(r: &mut ChaCha8Rng, samples: usize) -> CliResult<Vec<Value>> {
    let mut out = Vec::new();
    for n in 3..=7 {
        for _ in 0..samples {
            let s = Arc::new(random_nondegenerate(r, n + 1, 20));
            let order = 2 * n + 5;
            let real = null_measures_real(&s);
            let cplx = null_measures_complex(&s);
            let real_vanish = real.measures.iter().all(|m| measure_moments(m, order).all_zero());
            let cplx_vanish = cplx.measures.iter().all(|m| measure_moments(m, order).all_zero());
            let (ec, er) = (binomial(n - 1, 2), binomial(n - 2, 2));
            out.push(json!({
                "n": n,
                "points": points(&s),
                "complex_dimension": cplx.dimension(),
                "real_dimension": real.dimension(),
                "expected": [ec, er],
                "moment_order": order,
                "moments_vanish": real_vanish && cplx_vanish,
                "ok": cplx.dimension() == ec && real.dimension() == er && real_vanish && cplx_vanish,
            }));
        }
    }
    Ok(out)
}

fn oracle(r: &mut ChaCha8Rng, samples: usize) -> CliResult<Vec<Value>> {
    let t = TriangleRef::new(0, 1, 2)?;
    (0..samples)
        .map(|_| {
            let s = random_nondegenerate(r, 3, 30);
            let mut agree = true;
            for j in 0..=10 {
                agree &= triangle_moment(&s, t, j)? == triangle_moment_oracle(&s, t, j)?;
            }
            Ok(json!({ "points": points(&s), "max_degree": 10, "ok": agree }))
        })
        .collect()
}

fn complex_minor(r: &mut ChaCha8Rng, samples: usize) -> CliResult<Vec<Value>> {
    let mut out = Vec::new();
    for n in 3..=6 {
        let sign = Scalar::from_int(minor_sign_complex(n) as i64);
        for _ in 0..samples {
            let s = random_nondegenerate(r, n + 1, 20);
            let det = minor_det_complex(&s)?;
            let vdm = vandermonde_product(&s);
            out.push(json!({
                "n": n,
                "points": points(&s),
                "determinant": complex(&det),
                "vandermonde": complex(&vdm),
                "sign": minor_sign_complex(n),
                "ok": det == vdm.scale(&sign),
            }));
        }
    }
    Ok(out)
}

fn nodes(s: &PointSet) -> Vec<CNum> {
    s.points()[1..].to_vec()
}

fn rational_avoiding(r: &mut ChaCha8Rng, avoid: &[Scalar]) -> Scalar {
    loop {
        let t = random_rational(r, 9);
        if !avoid.contains(&t) {
            return t;
        }
    }
}

fn real_minor(r: &mut ChaCha8Rng, samples: usize) -> CliResult<Vec<Value>> {
    let mut out = Vec::new();
    for n in [4usize, 5] {
        let mut constant: Option<Scalar> = None;
        for _ in 0..samples {
            let s = random_nondegenerate(r, n + 1, 20);
            let reference = real_minor_reference(&s)?;
            let ratio = minor_det_real(&s)? / reference;
            let same = constant.get_or_insert_with(|| ratio.clone()) == &ratio;
            out.push(json!({ "n": n, "check": "ratio", "points": points(&s), "ratio": exact(&ratio), "ok": same }));

            let base = nodes(&s);
            // [1 2 k] = 0: z_k on the line through z_1, z_2
            for k in 3..=n {
                let t = rational_avoiding(r, &[Scalar::zero(), Scalar::one()]);
                let mut z = base.clone();
                z[k - 1] = &base[0] + &(&base[1] - &base[0]).scale(&t);
                let det = minor_det_real_nodes(&z);
                out.push(json!({ "n": n, "check": format!("[1 2 {k}] = 0"), "ok": det.is_zero() }));
            }
            // z_i = z_j for 3 <= i < j <= n
            for i in 3..=n {
                for j in i + 1..=n {
                    let mut z = base.clone();
                    z[j - 1] = z[i - 1].clone();
                    let det = minor_det_real_nodes(&z);
                    out.push(json!({ "n": n, "check": format!("z{i} = z{j}"), "ok": det.is_zero() }));
                }
            }
        }
    }
    Ok(out)
}

fn five_point(r: &mut ChaCha8Rng, samples: usize) -> CliResult<Vec<Value>> {
    (0..samples)
        .map(|_| {
            let s = Arc::new(random_nondegenerate(r, 5, 20));
            let explicit = five_point_density(&s)?;
            let ns = null_measures_real(&s);
            let ok = ns.dimension() == 1 && parallel(&explicit.mass_vector(), &ns.kernel.vectors[0]);
            Ok(json!({
                "points": points(&s),
                "explicit_densities": explicit.density_vector().iter().map(exact).collect::<Vec<_>>(),
                "kernel": ns.kernel.vectors.first().map(|v| v.iter().map(exact).collect::<Vec<_>>()),
                "ok": ok,
            }))
        })
        .collect()
}

fn unit_five(r: &mut ChaCha8Rng, samples: usize) -> CliResult<Vec<Value>> {
    (0..samples)
        .map(|_| {
            let s = Arc::new(random_nondegenerate(r, 5, 20));
            let found = unit_density_decide_1d(&s)?;
            Ok(json!({ "points": points(&s), "certificate_found": found.is_some(), "ok": found.is_none() }))
        })
        .collect()
}

fn cone_record(s: &Arc<PointSet>, kind: &str) -> CliResult<Value> {
    let oracle = ConeOracle::new(s.clone())?;
    let all = s.all_triangles();
    let mut agree = true;
    let mut extreme_count = 0;
    for t in &all {
        let extreme = is_extreme_ray(s, *t)?;
        extreme_count += usize::from(extreme);
        let others: Vec<TriangleRef> = all.iter().copied().filter(|g| g != t).collect();
        let target = TriangleSum::from_terms(s.clone(), [(*t, Scalar::one())])?;
        agree &= oracle.membership(&target, &others)?.is_none() == extreme;
    }
    let mut splits = 0;
    let mut splits_ok = true;
    for t in &all {
        for p in 0..s.len() {
            if locate_in_triangle(s.point(p), s.point(t.i), s.point(t.j), s.point(t.k)) != Some(Location::Inside) {
                continue;
            }
            let parts = split_at(s, *t, p)?;
            let target = TriangleSum::from_terms(s.clone(), [(*t, Scalar::one())])?;
            splits += 1;
            splits_ok &= oracle.membership(&target, &parts)? == Some(vec![Scalar::one(); 3]);
        }
    }
    let convex_ok = kind != "convex" || extreme_count == all.len();
    Ok(json!({
        "kind": kind,
        "points": points(s),
        "triangles": all.len(),
        "extreme": extreme_count,
        "oracle_agrees": agree,
        "interior_splits": splits,
        "splits_ok": splits_ok,
        "ok": agree && splits_ok && convex_ok,
    }))
}

fn cone(r: &mut ChaCha8Rng, samples: usize) -> CliResult<Vec<Value>> {
    let mut out = Vec::new();
    for i in 0..samples {
        let count = 4 + i % 3;
        out.push(cone_record(&Arc::new(random_nondegenerate(r, count, 10)), "random")?);
        out.push(cone_record(&Arc::new(random_convex(r, count, 8)), "convex")?);
    }
    Ok(out)
}

/// `count - 1` points in convex position plus one more, no three collinear.
fn convex_with_extra_point(r: &mut ChaCha8Rng, count: usize) -> PointSet {
    loop {
        let mut pts = random_convex(r, count - 1, 6).points().to_vec();
        pts.push(random_point(r, 6));
        if let Ok(s) = PointSet::new(polymeasure::Field::Rational, pts) {
            if s.is_nondegenerate() {
                return s;
            }
        }
    }
}

fn flip_identities(r: &mut ChaCha8Rng, samples: usize) -> CliResult<Vec<Value>> {
    let mut out = Vec::new();
    for i in 0..samples {
        let count = 4 + i % 4;
        let s = if i % 2 == 0 {
            Arc::new(random_nondegenerate(r, count, 10))
        } else {
            Arc::new(convex_with_extra_point(r, count))
        };
        let oracle = ConeOracle::new(s.clone())?;
        let pairs = flips(&s)?;
        let mut holds = true;
        for f in &pairs {
            holds &= oracle.densities(&f.difference(&s)?).iter().all(Scalar::is_zero);
        }
        out.push(json!({
            "points": points(&s),
            "flips": pairs.len(),
            "pairs": pairs.iter().map(|f| [f.pair.map(|t| t.indices()), f.flipped.map(|t| t.indices())]).collect::<Vec<_>>(),
            "ok": holds,
        }));
    }
    Ok(out)
}
