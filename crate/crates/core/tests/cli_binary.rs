use std::process::Command;

use serde_json::Value;

fn twistlab(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_twistlab")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn strip_timing(text: &str) -> Value {
    let mut v: Value = serde_json::from_str(text).unwrap();
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn passing_command_exits_zero() {
    let (code, out, _) = twistlab(&["check-coassoc"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["pass"], true);
    assert_eq!(v["residuals"]["residual_terms"]["value"], 0.0);
}

#[test]
fn module_error_exits_nonzero_with_error_field() {
    let (code, out, _) = twistlab(&["witness", "--x", "0", "--y", "0.2"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], false);
    assert!(v["error"].as_str().unwrap().contains("positive"));
}

#[test]
fn unwritable_output_reports_on_stderr() {
    let (code, out, err) = twistlab(&["witness", "--x", "0.1", "--y", "0.2", "--output", "/nonexistent/dir/r.json"]);
    assert_ne!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&err).unwrap();
    assert!(v["error"].as_str().unwrap().contains("could not write report"));
}

#[test]
fn unknown_flags_are_rejected() {
    let (code, _, err) = twistlab(&["spectrum", "--x", "0.1", "--colour", "red"]);
    assert_eq!(code, 2);
    assert!(err.contains("--colour"));
}

#[test]
fn output_files_are_identical_up_to_timing() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let (code, _, _) = twistlab(&["cocycle", "--x", "0.4", "--samples", "500", "--output", path.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    let ta = std::fs::read_to_string(&a).unwrap();
    let tb = std::fs::read_to_string(&b).unwrap();
    assert_eq!(strip_timing(&ta), strip_timing(&tb));
    let drop_timing = |t: &str| t.lines().filter(|l| !l.contains("timing_ms")).collect::<Vec<_>>().join("\n");
    assert_eq!(drop_timing(&ta), drop_timing(&tb));
}

#[test]
fn seed_is_recorded_and_changes_samples() {
    let (_, out, _) = twistlab(&["cocycle", "--x", "0.4", "--samples", "50", "--seed", "7"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seed"], 7);
}

#[test]
fn spectrum_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let (code, _, _) = twistlab(&["spectrum", "--x", "0.1", "--trunc", "4", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(csv).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "mode,eigenvalue");
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[5], "0,1e0");
}

#[test]
fn fintwist_accepts_group_exchange_json() {
    use twistlab::grouplab::{FinGroup, FiniteBichar, GroupExchange};
    let g = FinGroup::new(5).unwrap();
    let psi = FiniteBichar::power(&g, 4).unwrap();
    let ex = GroupExchange::from_group(&g, Some(psi.table()));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(&path, serde_json::to_string(&ex).unwrap()).unwrap();
    let (code, out, _) = twistlab(&["fintwist", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    for name in ["omega_unitarity", "cocycle", "coassoc", "haar_left", "haar_right", "pentagon", "pentagon_twisted"] {
        assert!(v["residuals"][name]["value"].is_number(), "{name}");
    }

    // a table that is not a bicharacter is refused
    let mut bad = ex.clone();
    bad.bicharacter.as_mut().unwrap()[1][1] = [-1.0, 0.0];
    std::fs::write(&path, serde_json::to_string(&bad).unwrap()).unwrap();
    let (code, out, _) = twistlab(&["fintwist", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("bicharacter"));
}
