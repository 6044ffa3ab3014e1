use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pole_recovery::samples::{sample, SampleSet, TestFunction};
use pole_recovery::Complex64;
use serde_json::Value;

fn bin(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pole-recovery"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("spawn")
}

fn json(path: PathBuf) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn schema_check(doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/estimate.schema.json");
    let schema: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    let v = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

fn csv_rows(path: PathBuf) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    r.records()
        .map(|x| x.unwrap().iter().map(String::from).collect())
        .collect()
}

#[test]
fn analyze_f2_finds_the_pole() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(&["analyze", "--function", "f2"], dir.path());
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    for f in [
        "estimate.json",
        "pole_trace.csv",
        "residue_trace.csv",
        "mhat_sums.csv",
        "reconstruction.json",
    ] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let doc = json(dir.path().join("estimate.json"));
    schema_check(&doc);
    assert_eq!(doc["status"], "ok");
    let z = Complex64::new(
        doc["z_p"][0].as_f64().unwrap(),
        doc["z_p"][1].as_f64().unwrap(),
    );
    assert!((z - Complex64::new(6.2, 0.15)).norm() <= 1e-3, "{z}");
    assert_eq!(doc["config"]["n0"], 60);
}

#[test]
fn analyze_analytic_input_reports_no_pole() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(&["analyze", "--function", "f1", "--q", "5"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let doc = json(dir.path().join("estimate.json"));
    schema_check(&doc);
    assert_eq!(doc["status"], "no_pole");
    assert!(doc.get("z_p").is_none());
    assert_eq!(doc["analyticity"]["verdict"], "LikelyAnalytic");
}

#[test]
fn sampled_file_analyzes_like_the_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(&["sample", "--function", "f3"], &dir.path().join("s"));
    assert_eq!(o.status.code(), Some(0));
    let input = dir.path().join("s/samples.csv");
    let from_file = bin(
        &["analyze", "--input", input.to_str().unwrap()],
        &dir.path().join("a"),
    );
    let from_catalog = bin(&["analyze", "--function", "f3"], &dir.path().join("b"));
    assert_eq!(from_file.status.code(), Some(0));
    let (a, b) = (
        json(dir.path().join("a/estimate.json")),
        json(dir.path().join("b/estimate.json")),
    );
    assert_eq!(a["z_p"], b["z_p"]);
    assert_eq!(a["r_p"], b["r_p"]);
}

#[test]
fn sample_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(
        &["sample", "--function", "f5", "--epsilon", "1e-2"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("samples.csv")).unwrap();
    assert!(text.starts_with("N,re,im\n"));
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().count(), 62);

    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    bin(&["sample", "--function", "f2"], &a);
    bin(&["sample", "--function", "f2"], &b);
    let first = fs::read(a.join("samples.csv")).unwrap();
    assert_eq!(first, fs::read(b.join("samples.csv")).unwrap());
    let s = SampleSet::load(&a.join("samples.csv")).unwrap();
    let f = TestFunction::f2();
    assert_eq!(s.values()[0], f.eval(Complex64::new(0.5, 0.0)));
    assert_eq!(s.values(), sample(&f, 60).unwrap().values());
}

#[test]
fn malformed_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "N,re,im\n0,1.0,oops\n").unwrap();
    let o = bin(
        &["analyze", "--input", bad.to_str().unwrap()],
        &dir.path().join("o"),
    );
    assert_eq!(o.status.code(), Some(1));
    let o = bin(&["analyze", "--function", "f9"], &dir.path().join("o"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reproduce_table_and_noise_ranges() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        bin(&["reproduce", "table1"], dir.path()).status.code(),
        Some(0)
    );
    let rows = csv_rows(dir.path().join("table1.csv"));
    assert_eq!(rows.len(), 4);
    let starts: Vec<usize> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    assert!(starts.windows(2).all(|w| w[1] >= w[0]), "{starts:?}");

    assert_eq!(
        bin(&["reproduce", "fig8"], dir.path()).status.code(),
        Some(0)
    );
    let lengths: Vec<usize> = csv_rows(dir.path().join("fig8a_ranges.csv"))
        .iter()
        .filter_map(|r| r[2].parse().ok())
        .collect();
    assert!(lengths.len() >= 4);
    assert!(lengths.windows(2).all(|w| w[1] <= w[0]), "{lengths:?}");
    let summary = json(dir.path().join("summary.json"));
    assert_eq!(summary["target"], "fig8");
    assert!(summary["config"].is_object());
}

#[test]
fn reproduce_error_against_n0() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        bin(&["reproduce", "fig5d"], dir.path()).status.code(),
        Some(0)
    );
    assert_eq!(csv_rows(dir.path().join("fig5d_error_vs_n0.csv")).len(), 6);
}
