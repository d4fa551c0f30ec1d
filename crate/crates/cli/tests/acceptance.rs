//! Acceptance criteria 1-13, one `[PASS]`/`[FAIL]` line each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use polymeasure::chambers::Incidence;
use polymeasure::cone::{cone_membership, flips, is_extreme_ray};
use polymeasure::measure::TriangleSum;
use polymeasure::moments::measure_moments;
use polymeasure::nullspace::{minor_det_complex, minor_sign_complex};
use polymeasure::{PointSet, Scalar, TriangleRef};
use polymeasure_cli::commands::{self, MeasureSource};
use polymeasure_cli::docs::to_text;
use polymeasure_cli::{suites, ConfigDocument, MeasureDocument, ResultDocument};
use serde_json::Value;

const SEED: u64 = 17;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn config(coords: &[(i64, i64)]) -> ConfigDocument {
    ConfigDocument::from_point_set(&PointSet::from_ints(coords).unwrap())
}

fn records(doc: &ResultDocument) -> &Vec<Value> {
    doc.payload["results"].as_array().expect("suite results")
}

/// Runs a suite in-process and requires every record to pass.
fn suite(name: &str, samples: usize) -> Result<ResultDocument, String> {
    let doc = suites::run(name, SEED, Some(samples)).map_err(|e| e.to_string())?;
    let failures = doc.payload["failures"].as_u64().unwrap_or(u64::MAX);
    ensure(doc.passed() && failures == 0, format!("suite {name}: {failures} failing records"))?;
    Ok(doc)
}

/// Shared by criteria 1 and 2.
fn dimensions() -> Result<&'static ResultDocument, String> {
    static DOC: OnceLock<Result<ResultDocument, String>> = OnceLock::new();
    DOC.get_or_init(|| suite("dimensions", 20)).as_ref().map_err(Clone::clone)
}

fn criterion_1() -> Outcome {
    let doc = dimensions()?;
    let recs = records(doc);
    ensure(recs.len() == 100, format!("expected 100 configurations, got {}", recs.len()))?;
    for r in recs {
        let expected = &r["expected"];
        ensure(
            r["complex_dimension"] == expected[0] && r["real_dimension"] == expected[1],
            format!(
                "n = {}: dimensions {} / {} against {}",
                r["n"], r["complex_dimension"], r["real_dimension"], expected
            ),
        )?;
    }
    Ok("20 configurations for each n = 3..7; complex C(n-1,2), real C(n-2,2)".into())
}

fn criterion_2() -> Outcome {
    let doc = dimensions()?;
    let mut measures = 0;
    for r in records(doc) {
        ensure(r["moments_vanish"] == Value::Bool(true), format!("nonvanishing moment for n = {}", r["n"]))?;
        let n = r["n"].as_u64().unwrap() as usize;
        measures += (n - 1) * (n - 2) / 2 + (n - 2) * (n - 3) / 2;
    }
    Ok(format!("{measures} real and complex kernel measures vanish for j = 0..2n+5"))
}

fn criterion_3() -> Outcome {
    let doc = suite("oracle", 50)?;
    ensure(records(&doc).len() == 50, "expected 50 triangles")?;
    Ok("50 triangles agree with simplex integration for j = 0..10".into())
}

fn criterion_4() -> Outcome {
    let doc = suite("complex-minor", 20)?;
    ensure(records(&doc).len() == 80, "expected 80 configurations")?;
    // n = 3: the minor is z3 - z2
    let s = PointSet::from_ints(&[(0, 0), (1, 0), (3, 1), (1, 2)]).unwrap();
    let det = minor_det_complex(&s).map_err(|e| e.to_string())?;
    ensure(det == s.point(3) - s.point(2), format!("n = 3 minor {det} differs from z3 - z2"))?;
    let signs: Vec<i32> = (3..=6).map(minor_sign_complex).collect();
    Ok(format!("det = sign * Vandermonde on 20 sets for each n = 3..6; sign for n = 3..6: {signs:?}"))
}

fn criterion_5() -> Outcome {
    let doc = suite("real-minor", 20)?;
    let recs = records(&doc);
    let ratio = |n: u64| -> Vec<String> {
        let mut v: Vec<String> = recs
            .iter()
            .filter(|r| r["n"] == n && r["check"] == "ratio")
            .map(|r| r["ratio"].as_str().unwrap().to_owned())
            .collect();
        v.dedup();
        v
    };
    let (r4, r5) = (ratio(4), ratio(5));
    ensure(r4.len() == 1 && r5.len() == 1, format!("ratios not constant: {r4:?} {r5:?}"))?;
    let degeneracies = recs.iter().filter(|r| r["check"] != "ratio").count();
    Ok(format!(
        "constant ratio {} (n = 4) and {} (n = 5) over 20 sets each; {degeneracies} forced degeneracies vanish",
        r4[0], r5[0]
    ))
}

fn criterion_6() -> Outcome {
    let doc = suite("five-point", 50)?;
    ensure(records(&doc).len() == 50, "expected 50 tuples")?;
    Ok("explicit density parallel to the real kernel on 50 five-point sets".into())
}

fn pentagon() -> ConfigDocument {
    config(&[(0, 0), (2, 0), (3, 1), (1, 3), (0, 2)])
}

fn criterion_7() -> Outcome {
    let run = commands::chambers(&pentagon(), MeasureSource::Kernel(0), false, false).map_err(|e| e.to_string())?;
    let summary = &run.document.payload["summary"];
    ensure(summary["chambers"] == 11, format!("{} chambers", summary["chambers"]))?;
    let mut got: Vec<i64> = summary["density_multiset"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d.as_str().unwrap().parse::<i64>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let mut expected = vec![4, 4, 3, 3, 3, -1, -2, -2, -2, -2, -7];
    expected.sort();
    got.sort();
    let mut flipped: Vec<i64> = got.iter().map(|d| -d).collect();
    flipped.sort();
    ensure(got == expected || flipped == expected, format!("density multiset {got:?}"))?;
    Ok(format!("11 chambers, densities {got:?}"))
}

fn incidence_matrix(rows: &[&str]) -> Vec<Vec<u8>> {
    rows.iter().map(|r| r.bytes().map(|b| b - b'0').collect()).collect()
}

fn criterion_8() -> Outcome {
    let catalog = [
        (
            "pentagon",
            pentagon(),
            incidence_matrix(&[
                "11100000000",
                "11000100011",
                "10000000110",
                "00011100011",
                "00010001111",
                "00000011100",
            ]),
        ),
        (
            "quadrilateral",
            config(&[(0, 0), (100, 0), (100, 100), (0, 100), (50, 24)]),
            incidence_matrix(&["111100011", "110001111", "100000000", "000011100", "000100011", "000000110"]),
        ),
        (
            "triangle",
            config(&[(0, 0), (4, 0), (0, 4), (1, 1), (1, 2)]),
            incidence_matrix(&["1111111", "1100000", "1000010", "0001111", "0000100", "0000011"]),
        ),
    ];
    let mut counts = Vec::new();
    for (name, cfg, expected) in catalog {
        let doc = commands::incidence(&cfg, true).map_err(|e| e.to_string())?;
        let rows: Vec<TriangleRef> = doc.payload["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| {
                TriangleRef::new(
                    r[0].as_u64().unwrap() as usize,
                    r[1].as_u64().unwrap() as usize,
                    r[2].as_u64().unwrap() as usize,
                )
                .unwrap()
            })
            .collect();
        let entries: Vec<&str> =
            doc.payload["matrix"].as_array().unwrap().iter().map(|r| r.as_str().unwrap()).collect();
        let inc = Incidence { rows, entries: incidence_matrix(&entries) };
        ensure(
            inc.cols() == expected[0].len(),
            format!("{name}: {} cells, expected {}", inc.cols(), expected[0].len()),
        )?;
        ensure(inc.equivalent_to(&expected), format!("{name}: incidence differs from the catalog"))?;
        counts.push(inc.cols());
    }
    Ok(format!("pentagon/quadrilateral/triangle match up to relabeling with {counts:?} cells"))
}

fn criterion_9() -> Outcome {
    let doc = suite("unit-five", 200)?;
    ensure(records(&doc).len() == 200, "expected 200 tuples")?;
    Ok("no unit-density null measure on 200 five-point sets".into())
}

fn criterion_10() -> Outcome {
    let run = commands::hexagram(20).map_err(|e| e.to_string())?;
    let p = &run.document.payload;
    ensure(run.document.passed(), "hexagram document failed")?;
    let mu =
        MeasureDocument::from_value(p["measure"].clone(), 0).and_then(|m| m.to_real()).map_err(|e| e.to_string())?;
    let m = measure_moments(&mu, 20);
    ensure(m.values[0].is_zero(), "total mass is not zero")?;
    ensure(m.all_zero(), format!("moment {:?} is nonzero", m.first_nonzero()))?;
    for check in p["report"]["checks"].as_array().unwrap() {
        ensure(check["passed"] == true, format!("check {} failed", check["check"]))?;
    }
    let cert = &p["certificate"];
    ensure(!cert["plus_chambers"].as_array().unwrap().is_empty(), "no +1 chambers")?;
    ensure(!cert["minus_chambers"].as_array().unwrap().is_empty(), "no -1 chambers")?;
    ensure(cert["plus_area"] == cert["minus_area"], "plus and minus areas differ")?;
    ensure(cert["pair"]["verified"] == true, "polygon pair not verified")?;
    let diff = MeasureDocument::from_value(cert["pair"]["difference"].clone(), 0).map_err(|e| e.to_string())?;
    let verdict = commands::verify(&diff, 20).map_err(|e| e.to_string())?;
    ensure(verdict.passed(), "extracted pair fails verification")?;
    let readings = p["readings"].as_array().unwrap();
    let mut report = Vec::new();
    for r in readings {
        let mass = r["mass"].as_str().unwrap();
        ensure(r["passes"] == (mass == "0" && r["first_nonzero_moment"].is_null()), "reading verdict inconsistent")?;
        report.push(format!("{}: mass {mass}", r["reading"].as_str().unwrap()));
    }
    ensure(
        p["accepted_readings"] == serde_json::json!(["inner hexagon at modulus 2/sqrt3"]),
        "unexpected accepted reading",
    )?;
    Ok(format!("mass 0, m_j = 0 for j <= 20, densities in {{0,+1,-1}}, pair verified; readings: {}", report.join("; ")))
}

fn criterion_11() -> Outcome {
    let doc = suite("cone", 12)?;
    let recs = records(&doc);
    let triangles: u64 = recs.iter().map(|r| r["triangles"].as_u64().unwrap()).sum();
    let splits: u64 = recs.iter().map(|r| r["interior_splits"].as_u64().unwrap()).sum();
    let s = Arc::new(PointSet::from_ints(&[(0, 0), (6, 0), (0, 6), (1, 1)]).unwrap());
    let t = |a, b, c| TriangleRef::new(a, b, c).unwrap();
    let target = TriangleSum::from_terms(s.clone(), [(t(0, 1, 2), Scalar::one())]).unwrap();
    let coeffs = cone_membership(&target, &[t(0, 1, 3), t(1, 2, 3), t(0, 2, 3)]).map_err(|e| e.to_string())?;
    ensure(coeffs == Some(vec![Scalar::one(); 3]), format!("Case b) coefficients {coeffs:?}"))?;
    ensure(!is_extreme_ray(&s, t(0, 1, 2)).map_err(|e| e.to_string())?, "Case b) triangle reported extreme")?;
    Ok(format!(
        "{triangles} triangle verdicts agree with the oracle over {} sets; {splits} splits give (1,1,1)",
        recs.len()
    ))
}

fn criterion_12() -> Outcome {
    let doc = suite("flips", 12)?;
    let count: u64 = records(&doc).iter().map(|r| r["flips"].as_u64().unwrap()).sum();
    let convex = Arc::new(PointSet::from_ints(&[(0, 0), (4, 0), (5, 3), (1, 4)]).unwrap());
    let interior = Arc::new(PointSet::from_ints(&[(0, 0), (6, 0), (0, 6), (1, 1)]).unwrap());
    let triangle = Arc::new(PointSet::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap());
    let sizes: Vec<usize> = [convex, interior, triangle]
        .iter()
        .map(|s| flips(s).map(|f| f.len()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(sizes == [1, 0, 0], format!("flip counts {sizes:?}"))?;
    Ok(format!("{count} flips over 12 sets, every identity exact; convex 4-gon 1, interior point 0, triangle 0"))
}

fn binary(args: &[&str], dir: &Path) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_polymeasure"))
        .args(args)
        .current_dir(dir)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(
        out.status.code() == Some(0),
        format!("`polymeasure {}` exited with {:?}", args.join(" "), out.status.code()),
    )?;
    Ok(out.stdout)
}

fn criterion_13() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let seed = SEED.to_string();
    for s in suites::SUITES {
        let args = ["audit", "--suite", s.name, "--seed", &seed];
        let (a, b) = (binary(&args, dir.path())?, binary(&args, dir.path())?);
        ensure(a == b, format!("suite {} differs between runs", s.name))?;
        let in_process = suites::run(s.name, SEED, None).map_err(|e| e.to_string())?;
        ensure(a == to_text(&in_process).into_bytes(), format!("suite {} differs from the library", s.name))?;
    }
    let other = binary(&["audit", "--suite", "five-point", "--seed", "18"], dir.path())?;
    let same = binary(&["audit", "--suite", "five-point", "--seed", &seed], dir.path())?;
    ensure(other != same, "different seeds gave identical documents")?;

    let cfg = binary(&["sample", "--seed", &seed, "--points", "6"], dir.path())?;
    std::fs::write(dir.path().join("s.json"), &cfg).map_err(|e| e.to_string())?;
    let commands: [&[&str]; 6] = [
        &["nullspace", "s.json", "--real"],
        &["nullspace", "s.json", "--complex"],
        &["chambers", "s.json", "--kernel", "0", "--segments", "--svg", "s.svg"],
        &["search-unit", "s.json", "--bound", "1"],
        &["extreme-rays", "s.json", "--oracle"],
        &["hexagram"],
    ];
    for args in commands {
        ensure(
            binary(args, dir.path())? == binary(args, dir.path())?,
            format!("`{}` differs between runs", args.join(" ")),
        )?;
    }
    Ok(format!("{} suites and {} commands byte-identical across runs", suites::SUITES.len(), commands.len()))
}

fn main() {
    let criteria: [Criterion; 13] = [
        (1, "null-space dimensions", criterion_1),
        (2, "moment vanishing", criterion_2),
        (3, "oracle equivalence", criterion_3),
        (4, "complex minor", criterion_4),
        (5, "real minor", criterion_5),
        (6, "explicit five-point solution", criterion_6),
        (7, "pentagon reference densities", criterion_7),
        (8, "incidence catalog", criterion_8),
        (9, "no five-point unit densities", criterion_9),
        (10, "hexagram", criterion_10),
        (11, "extreme rays", criterion_11),
        (12, "flip identities", criterion_12),
        (13, "determinism", criterion_13),
    ];
    let mut failed = 0;
    for (id, title, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {id:>2} {title}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {id:>2} {title}: {detail} ({secs:.1}s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 13 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
