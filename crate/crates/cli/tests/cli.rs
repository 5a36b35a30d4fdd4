use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn polygap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polygap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn polygon_file(body: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("valid JSON on stdout")
}

const SQUARE: &str = r#"{"vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}"#;
const EXACT_SQUARE: &str = r#"{"vertices": [["0", "0"], ["2", "0"], ["2", "2"], ["0", "2"]]}"#;

#[test]
fn square_triangle_ratio_is_half() {
    let f = polygon_file(SQUARE);
    let out = polygap(&["--format", "json", "inscribe", "--polygon", f.path().to_str().unwrap(), "--m", "3"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["manifest"]["subcommand"], "inscribe");
    assert_eq!(doc["manifest"]["tool"], "polygap");
    assert_eq!(doc["result"]["ratio_f64"], 0.5);
}

#[test]
fn exact_polygons_give_exact_ratios() {
    let f = polygon_file(EXACT_SQUARE);
    let path = f.path().to_str().unwrap();
    for method in ["dp", "bruteforce"] {
        let out = polygap(&["--format", "json", "inscribe", "--polygon", path, "--m", "3", "--method", method]);
        assert!(out.status.success(), "{method}");
        let doc = json(&out);
        assert_eq!(doc["result"]["exact"], true);
        assert_eq!(doc["result"]["ratio"], "1/2");
        assert_eq!(doc["result"]["area"], "2");
    }
}

#[test]
fn csv_output_leads_with_a_manifest_line() {
    let f = polygon_file(SQUARE);
    let out = polygap(&["ears", "--polygon", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let manifest = lines.next().unwrap().strip_prefix("# manifest: ").expect("manifest comment");
    let manifest: Value = serde_json::from_str(manifest).unwrap();
    assert_eq!(manifest["subcommand"], "ears");
    assert_eq!(lines.next(), Some("k,ear,ratio,is_min"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn identities_verify() {
    let out = polygap(&["--format", "json", "verify-identities"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("f6(5)"));
    assert!(text.contains("f6(4) case 5(iv)"));
}

#[test]
fn estimate_g_hexagon_matches_known_value() {
    let out = polygap(&["--format", "json", "estimate-g", "--n", "6", "--restarts", "16"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["manifest"]["seed"], 42);
    let text = doc["result"].to_string();
    assert!(text.contains("\"known\""), "{text}");
    let out = polygap(&["estimate-g", "--n", "6", "--restarts", "16"]);
    let text = stdout(&out);
    let mut lines = text.lines().skip(1);
    assert_eq!(lines.next(), Some("n,m,estimate,known_value,abs_error,restarts,seed,converged"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let estimate: f64 = row[2].parse().unwrap();
    assert!((estimate - 1.0 / 6.0).abs() < 2e-3);
    assert_eq!(row[1], "");
    assert_eq!(row[6], "42");
}

#[test]
fn identical_runs_differ_only_in_timing() {
    let args = ["--format", "json", "estimate-f", "--n", "5", "--m", "4", "--restarts", "4"];
    let (mut a, mut b) = (json(&polygap(&args)), json(&polygap(&args)));
    a["manifest"]["duration_ms"] = Value::Null;
    b["manifest"]["duration_ms"] = Value::Null;
    assert_eq!(a, b);
}

#[test]
fn family_reports_closed_forms() {
    let out = polygap(&["--format", "json", "family", "pentagon", "--a", "1", "--b", "1", "--c", "3/4", "--d", "3/4"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    // a + b + c + d + ab = 9/2
    assert!(text.contains("\"9/2\""), "{text}");
}

#[test]
fn degenerate_family_members_are_rejected() {
    // c + d = 1 flattens the ear at E.
    let out = polygap(&["family", "pentagon", "--a", "1", "--b", "1", "--c", "1/2", "--d", "1/2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    let f = polygon_file(SQUARE);
    let path = f.path().to_str().unwrap();
    for args in [
        vec!["no-such-command"],
        vec!["inscribe", "--polygon", path, "--m", "7"],
        vec!["inscribe", "--polygon", "/nonexistent/polygon.json", "--m", "3"],
        vec!["estimate-f", "--n", "5", "--m", "5"],
        vec!["family", "pentagon", "--a", "-1", "--b", "1", "--c", "1", "--d", "1"],
    ] {
        let out = polygap(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn malformed_polygons_are_rejected() {
    for body in [
        r#"{"vertices": [[0, 0], [1, 1], [2, 2], [0, 1]]}"#,
        r#"{"vertices": [[0, 0], ["1", "0"], [1, 1]]}"#,
        r#"{"points": []}"#,
        "not json",
    ] {
        let f = polygon_file(body);
        let out = polygap(&["ears", "--polygon", f.path().to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{body}");
    }
}

#[test]
fn bound_sweep_passes_for_small_runs() {
    let out = polygap(&["--format", "json", "verify-bounds", "--n-min", "4", "--n-max", "7", "--samples", "500"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["manifest"]["subcommand"], "verify-bounds");
}
