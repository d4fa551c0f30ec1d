use std::path::Path;
use std::process::{Command, Output};

use polymeasure_cli::docs::to_text;
use polymeasure_cli::{ConfigDocument, MeasureDocument, ResultDocument};
use serde_json::Value;

const PENTAGON: &str =
    r#"{"format":"polymeasure-config/1","field":"Q","points":[["0","0"],["2","0"],["3","1"],["1","3"],["0","2"]]}"#;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polymeasure")).args(args).current_dir(dir).output().unwrap()
}

fn result(out: &Output) -> ResultDocument {
    ResultDocument::parse(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("pentagon.json"), PENTAGON).unwrap();
    dir
}

#[test]
fn config_normalizes_and_round_trips() {
    let text =
        r#"{"format":"polymeasure-config/1","field":"Q(r3)","points":[["4/2","0"],["0","1+0*r3"],["-r3","2/3"]]}"#;
    let doc = ConfigDocument::parse(text).unwrap().normalized().unwrap();
    assert_eq!(
        doc.points,
        vec![["2".to_owned(), "0".to_owned()], ["0".into(), "1".into()], ["-r3".into(), "2/3".into()]]
    );
    let again = ConfigDocument::parse(&to_text(&doc)).unwrap().normalized().unwrap();
    assert_eq!(to_text(&again), to_text(&doc));
}

#[test]
fn measure_documents_accept_arbitrary_triangles() {
    let doc: MeasureDocument = serde_json::from_value(serde_json::json!({
        "format": "polymeasure-measure/1",
        "config": serde_json::from_str::<Value>(PENTAGON).unwrap(),
        "densities": [{ "triangle": [1, 2, 3], "density": "1" }],
    }))
    .unwrap();
    let mu = doc.to_real().unwrap();
    assert!(mu.densities().all(|(t, _)| t.is_basis()));
    let back = MeasureDocument::from_real(&mu);
    assert_eq!(back.to_real().unwrap(), mu);
}

#[test]
fn nullspace_result_feeds_verify() {
    let dir = setup();
    let out = run(dir.path(), &["nullspace", "pentagon.json", "--real", "-o", "ns.json"]);
    assert_eq!(out.status.code(), Some(0));
    let ns = ResultDocument::parse(&std::fs::read_to_string(dir.path().join("ns.json")).unwrap()).unwrap();
    assert_eq!(ns.payload["dimension"], 1);
    assert_eq!(ns.payload["kernel"][0], serde_json::json!(["1", "-5", "4", "4", "-5", "1"]));
    // unit-density check fails: exit 1
    let out = run(dir.path(), &["verify", "ns.json", "--config", "pentagon.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(result(&out).payload["first_failure"], "unit-density");
}

#[test]
fn four_points_null_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = run(dir.path(), &["sample", "--seed", "3", "--points", "4"]);
    std::fs::write(dir.path().join("s.json"), &cfg.stdout).unwrap();
    let real = result(&run(dir.path(), &["nullspace", "s.json", "--real"]));
    let complex = result(&run(dir.path(), &["nullspace", "s.json", "--complex"]));
    assert_eq!(real.payload["dimension"], 0);
    assert_eq!(complex.payload["dimension"], 1);
    assert!(real.passed() && complex.passed());
}

#[test]
fn hexagram_writes_config_and_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let out =
        run(dir.path(), &["hexagram", "--config-out", "hex.json", "--certificate-out", "cert.json", "-o", "res.json"]);
    assert_eq!(out.status.code(), Some(0));
    let cfg = ConfigDocument::parse(&std::fs::read_to_string(dir.path().join("hex.json")).unwrap()).unwrap();
    assert_eq!(cfg.field, "Q(r3)");
    let cert: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("cert.json")).unwrap()).unwrap();
    assert_eq!(cert["pair"]["verified"], true);
    assert_eq!(run(dir.path(), &["verify", "res.json"]).status.code(), Some(0));
    assert_eq!(run(dir.path(), &["verify", "cert.json"]).status.code(), Some(0));
    assert_eq!(run(dir.path(), &["verify", "res.json", "--config", "hex.json"]).status.code(), Some(0));
    let search = result(&run(dir.path(), &["search-unit", "hex.json", "--bound", "1"]));
    assert_eq!(search.payload["certificates"].as_array().unwrap().len(), 1);
}

#[test]
fn chambers_svg_and_mismatch() {
    let dir = setup();
    let out = run(dir.path(), &["chambers", "pentagon.json", "--kernel", "0", "--svg", "pentagon.svg"]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(dir.path().join("pentagon.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.matches("<polygon").count() == 11);
    assert!(svg.contains(">-7</text>"));
    let hex = run(dir.path(), &["hexagram", "-o", "hex.json"]);
    assert_eq!(hex.status.code(), Some(0));
    let out = run(dir.path(), &["chambers", "pentagon.json", "--measure", "hex.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("different points"));
}

#[test]
fn five_point_search_is_empty() {
    let dir = setup();
    let out = result(&run(dir.path(), &["search-unit", "pentagon.json"]));
    assert_eq!(out.payload["certificates"], serde_json::json!([]));
    assert_eq!(out.payload["decide_1d"], Value::Null);
    assert_eq!(out.payload["exhaustive"], true);
}

#[test]
fn convex_extreme_rays() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = run(dir.path(), &["sample", "--seed", "9", "--points", "6", "--convex", "--bound", "7"]);
    std::fs::write(dir.path().join("c.json"), &cfg.stdout).unwrap();
    let out = result(&run(dir.path(), &["extreme-rays", "c.json", "--oracle"]));
    assert_eq!(out.payload["extreme"], 20);
    assert_eq!(out.payload["oracle_agrees"], true);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = setup();
    std::fs::write(
        dir.path().join("bad.json"),
        r#"{"format":"polymeasure-config/1","field":"Q","points":[["0","0"],["1","x"],["2","2"]]}"#,
    )
    .unwrap();
    std::fs::write(
        dir.path().join("two.json"),
        r#"{"format":"polymeasure-config/1","field":"Q","points":[["0","0"],["1","1"]]}"#,
    )
    .unwrap();
    std::fs::write(
        dir.path().join("mixed.json"),
        r#"{"format":"polymeasure-config/1","field":"Q","points":[["0","0"],["r3","1"],["2","5"]]}"#,
    )
    .unwrap();
    for args in [
        &["nullspace", "bad.json"][..],
        &["nullspace", "two.json"],
        &["nullspace", "mixed.json"],
        &["nullspace", "missing.json"],
        &["chambers", "pentagon.json", "--kernel", "3"],
        &["audit", "--suite", "nope"],
        &["nullspace", "pentagon.json", "--real", "--complex"],
    ] {
        assert_eq!(run(dir.path(), args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn moments_of_basis_triangles_and_measures() {
    let dir = setup();
    let table = result(&run(dir.path(), &["moments", "pentagon.json", "--order", "3"]));
    assert_eq!(table.payload["triangles"].as_array().unwrap().len(), 6);
    // area of (0, 2, 3+I) is 1
    assert_eq!(table.payload["triangles"][0]["moments"]["values"][0], serde_json::json!({ "re": "1", "im": "0" }));
    run(dir.path(), &["nullspace", "pentagon.json", "--complex", "-o", "ns.json"]);
    let m = result(&run(dir.path(), &["moments", "pentagon.json", "--measure", "ns.json", "--order", "15"]));
    assert_eq!(m.payload["measure"]["all_zero"], true);
}
